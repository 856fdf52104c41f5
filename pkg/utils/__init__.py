# Weak-monitoring scaling toolkit - shared helpers
