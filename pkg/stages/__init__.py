# Weak-monitoring scaling toolkit - stages
"""
  stage_1  simulate  monitored-chain trajectories → series CSV + manifest
  stage_2  analyze   series CSV → F-test report (volume law vs. ln L)
  stage_3  report    series + reports → figure data, SVG panels, P-value summary
"""
__version__ = "0.3.0"
