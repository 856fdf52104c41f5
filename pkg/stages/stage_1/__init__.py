"""
Stage 1: Simulate monitored spin chains.

Quantum trajectories of a generalized Heisenberg chain under continuous
homodyne monitoring of single-site or bond Pauli operators:

  model        couplings, presets, monitor sets, setup catalog
  state        dense state vectors, local kernels, half-chain entropy
  trotter      second-order Trotter step
  monitoring   homodyne measurement layers and counter-based noise
  trajectory   one trajectory / one ensemble → ScalingPoint
  pipeline     size sweep with checkpoints → series CSV + manifest.json

Downstream:
  Stage 2 fits the series against L and ln L and computes the F-test P-value
  Stage 3 writes figure data and SVG panels
"""