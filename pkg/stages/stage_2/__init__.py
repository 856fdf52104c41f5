"""
Stage 2: Analyze a size sweep.

Fits S(L/2) linearly in L and in ln L, forms F = sse_L / sse_lnL and its
P-value, and writes <stem>.ftest.json next to the series CSV.
"""
from .pipeline import analyze_series, load_reports
from .cli import main

__all__ = ["analyze_series", "load_reports", "main"]
