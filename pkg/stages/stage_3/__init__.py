"""
Stage 3: Report.

Given series CSVs (Stage 1) and their F-test reports (Stage 2), write
figure-ready panel data with both fitted curves, optional SVG renderings,
and a P-value summary when several setups are reported together.
"""
from .pipeline import build_report
from .cli import main

__all__ = ["build_report", "main"]
