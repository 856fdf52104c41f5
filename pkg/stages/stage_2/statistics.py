"""
Competing scaling laws for S(L/2): a straight line in L (volume law) against
a straight line in ln L.

    F = sse_L / sse_lnL,   P = Pr[F' ≥ F],  F' ~ F(n-2, n-2)

A small F means the L fit explains the data better. P → 1 favors the volume
law, P → 0 the logarithmic one.

The F distribution is evaluated through the regularized incomplete beta
function, computed here by continued fraction (modified Lentz) with a
log-gamma prefactor from scipy.special.
"""
import math

import numpy as np
from scipy.special import gammaln

from config import VERDICT_THRESHOLD
from stages.stage_1.schema import ScalingSeries
from .schema import FTestReport, LinearFit

MIN_POINTS = 4
# 1 - R² below this counts as an exact fit
RESIDUAL_FLOOR = 1e-20
ROUNDING_FLOOR = 1e-28

_CF_EPS = 1e-15
_CF_TINY = 1e-300
_CF_MAXIT = 10_000

VOLUME_LAW = "volume-law favored"
NON_VOLUME_LAW = "non-volume-law favored"


def linear_fit(xs, ys, weights=None) -> LinearFit:
    """Least-squares line; ordinary unless `weights` (e.g. 1/σ²) is given."""
    x = np.asarray(xs, dtype=float)
    y = np.asarray(ys, dtype=float)
    if x.shape != y.shape or x.ndim != 1:
        raise ValueError("xs and ys must be 1-D and the same length")
    if x.size < 3:
        raise ValueError(f"a line fit needs ≥ 3 points (got {x.size})")
    if not (np.all(np.isfinite(x)) and np.all(np.isfinite(y))):
        raise ValueError("fit data must be finite")
    w = np.ones_like(x) if weights is None else np.asarray(weights, dtype=float)
    if w.shape != x.shape or np.any(w <= 0) or not np.all(np.isfinite(w)):
        raise ValueError("weights must be finite and > 0, one per point")

    x_bar = np.sum(w * x) / np.sum(w)
    y_bar = np.sum(w * y) / np.sum(w)
    dx = x - x_bar
    sxx = float(np.sum(w * dx * dx))
    if sxx <= 1e-14 * max(1.0, float(np.sum(w * x * x))):
        raise ValueError("degenerate fit: all xs are equal")
    slope = float(np.sum(w * dx * (y - y_bar)) / sxx)
    intercept = float(y_bar - slope * x_bar)
    residuals = y - (slope * x + intercept)
    sse = float(np.sum(w * residuals ** 2))
    sst = float(np.sum(w * (y - y_bar) ** 2))
    # exact up to rounding, relative to the spread or to the size of the data
    if sse <= RESIDUAL_FLOOR * sst or sse <= ROUNDING_FLOOR * float(np.sum(w * y * y)):
        sse = 0.0
    return LinearFit(slope=slope, intercept=intercept, sse=sse)


def _check_series(series: ScalingSeries) -> None:
    n = len(series.points)
    if n < MIN_POINTS:
        raise ValueError(f"the F-test needs ≥ {MIN_POINTS} sizes (got {n})")
    if any(L <= 0 for L in series.sizes):
        raise ValueError("sizes must be positive")


def f_statistic(series: ScalingSeries, *, weighted: bool = False) -> FTestReport:
    """Both fits and F; P is left unset."""
    _check_series(series)
    sizes = np.array(series.sizes, dtype=float)
    entropies = np.array(series.entropies, dtype=float)
    weights = None
    if weighted:
        stderr = np.array(series.stderrs, dtype=float)
        if np.any(stderr <= 0):
            raise ValueError("weighted fits need every S_stderr > 0")
        weights = 1.0 / stderr ** 2

    fit_L = linear_fit(sizes, entropies, weights)
    fit_lnL = linear_fit(np.log(sizes), entropies, weights)
    if fit_lnL.sse > 0:
        F = fit_L.sse / fit_lnL.sse
    elif fit_L.sse > 0:
        F = math.inf
    else:
        F = 1.0

    n = len(series.points)
    return FTestReport(
        model=series.model,
        monitor=series.monitor,
        gamma=series.gamma,
        dt=series.dt,
        sizes=series.sizes,
        fit_L=fit_L,
        fit_lnL=fit_lnL,
        F=F,
        dof=(n - 2, n - 2),
        weighted=weighted,
    )


def _beta_continued_fraction(x: float, a: float, b: float) -> float:
    qab, qap, qam = a + b, a + 1.0, a - 1.0
    c = 1.0
    d = 1.0 - qab * x / qap
    if abs(d) < _CF_TINY:
        d = _CF_TINY
    d = 1.0 / d
    h = d
    for m in range(1, _CF_MAXIT + 1):
        m2 = 2 * m
        # even step
        aa = m * (b - m) * x / ((qam + m2) * (a + m2))
        d = 1.0 + aa * d
        if abs(d) < _CF_TINY:
            d = _CF_TINY
        c = 1.0 + aa / c
        if abs(c) < _CF_TINY:
            c = _CF_TINY
        d = 1.0 / d
        h *= d * c
        # odd step
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2))
        d = 1.0 + aa * d
        if abs(d) < _CF_TINY:
            d = _CF_TINY
        c = 1.0 + aa / c
        if abs(c) < _CF_TINY:
            c = _CF_TINY
        d = 1.0 / d
        delta = d * c
        h *= delta
        if abs(delta - 1.0) < _CF_EPS:
            return h
    raise RuntimeError(f"incomplete beta did not converge for a={a}, b={b}, x={x}")


def regularized_incomplete_beta(x: float, a: float, b: float) -> float:
    """I_x(a, b) for 0 ≤ x ≤ 1, a, b > 0."""
    if not (a > 0 and b > 0) or not (math.isfinite(a) and math.isfinite(b)):
        raise ValueError(f"incomplete beta needs a, b > 0 (got a={a}, b={b})")
    if not 0.0 <= x <= 1.0:
        raise ValueError(f"incomplete beta needs 0 ≤ x ≤ 1 (got {x})")
    if x == 0.0:
        return 0.0
    if x == 1.0:
        return 1.0
    log_front = (
        gammaln(a + b) - gammaln(a) - gammaln(b)
        + a * math.log(x) + b * math.log1p(-x)
    )
    front = math.exp(log_front)
    # the fraction converges fast only below the mean; use the symmetry above it
    if x < (a + 1.0) / (a + b + 2.0):
        value = front * _beta_continued_fraction(x, a, b) / a
    else:
        value = 1.0 - front * _beta_continued_fraction(1.0 - x, b, a) / b
    return min(1.0, max(0.0, value))


def _check_dof(nu1: float, nu2: float) -> None:
    if not (nu1 > 0 and nu2 > 0):
        raise ValueError(f"degrees of freedom must be > 0 (got {nu1}, {nu2})")


def f_cdf(x: float, nu1: float, nu2: float) -> float:
    """CDF of the F(ν1, ν2) distribution."""
    _check_dof(nu1, nu2)
    if math.isnan(x) or x < 0:
        raise ValueError(f"F-distribution CDF needs x ≥ 0 (got {x})")
    if math.isinf(x):
        return 1.0
    return regularized_incomplete_beta(nu1 * x / (nu1 * x + nu2), nu1 / 2.0, nu2 / 2.0)


def f_survival(x: float, nu1: float, nu2: float) -> float:
    """1 - f_cdf(x), evaluated directly so large x keeps its precision."""
    _check_dof(nu1, nu2)
    if math.isnan(x) or x < 0:
        raise ValueError(f"F-distribution tail needs x ≥ 0 (got {x})")
    if math.isinf(x):
        return 0.0
    return regularized_incomplete_beta(nu2 / (nu1 * x + nu2), nu2 / 2.0, nu1 / 2.0)


def p_value(report: FTestReport) -> float:
    """Probability of an F at least as large as the observed one."""
    if math.isinf(report.F):
        return 0.0
    if report.F == 0.0:
        return 1.0
    return f_survival(report.F, *report.dof)


def verdict(P: float, threshold: float = VERDICT_THRESHOLD) -> str:
    return VOLUME_LAW if P >= threshold else NON_VOLUME_LAW


def f_test(
    series: ScalingSeries,
    *,
    weighted: bool = False,
    threshold: float = VERDICT_THRESHOLD,
) -> FTestReport:
    """f_statistic, p_value and verdict in one call."""
    if not 0.0 <= threshold <= 1.0:
        raise ValueError(f"verdict threshold must lie in [0, 1] (got {threshold})")
    report = f_statistic(series, weighted=weighted)
    report.P = p_value(report)
    report.threshold = threshold
    report.verdict = verdict(report.P, threshold)
    return report
