import math

import numpy as np
import pytest
from scipy import integrate, special, stats

from stages.stage_1.schema import ScalingPoint, ScalingSeries
from stages.stage_2.schema import FTestReport
from stages.stage_2.statistics import (
    NON_VOLUME_LAW,
    VOLUME_LAW,
    f_cdf,
    f_statistic,
    f_survival,
    f_test,
    linear_fit,
    p_value,
    regularized_incomplete_beta,
)


def _series(sizes, entropies, stderrs=None, model="XXZ", monitor="z"):
    stderrs = stderrs if stderrs is not None else [0.01] * len(sizes)
    points = [ScalingPoint(L, S, e, 100) for L, S, e in zip(sizes, entropies, stderrs)]
    return ScalingSeries(model=model, monitor=monitor, gamma=0.1, dt=0.05, n_traj=100, points=points)


SIZES = [8, 10, 12, 14, 16]


# ─── Fits ──────────────────────────────────────────────────────────────────

def test_exact_line_is_recovered():
    xs = np.array([1.0, 2.0, 5.0, 7.0])
    fit = linear_fit(xs, 2 * xs + 1)
    assert fit.slope == pytest.approx(2.0, rel=1e-12)
    assert fit.intercept == pytest.approx(1.0, rel=1e-12)
    assert fit.sse == 0.0


def test_constant_data():
    fit = linear_fit([1, 2, 3, 4], [0.7] * 4)
    assert fit.slope == pytest.approx(0.0, abs=1e-15)
    assert fit.sse == 0.0


def test_three_point_fit_by_hand():
    # normal equations: slope = 3/2, intercept = 7/3 - 3 = -2/3
    fit = linear_fit([1, 2, 3], [1, 2, 4])
    assert fit.slope == pytest.approx(1.5)
    assert fit.intercept == pytest.approx(-2 / 3)
    assert fit.sse == pytest.approx(1 / 6)


def test_degenerate_fits_are_rejected():
    with pytest.raises(ValueError, match="equal"):
        linear_fit([2, 2, 2], [1, 2, 3])
    with pytest.raises(ValueError, match="≥ 3"):
        linear_fit([1, 2], [1, 2])
    with pytest.raises(ValueError, match="weights"):
        linear_fit([1, 2, 3], [1, 2, 3], weights=[1, 0, 1])


def test_uniform_weights_match_ordinary_fit():
    xs, ys = [1, 2, 3, 5], [0.9, 2.2, 2.8, 5.3]
    plain = linear_fit(xs, ys)
    weighted = linear_fit(xs, ys, weights=[4.0] * 4)
    assert weighted.slope == pytest.approx(plain.slope)
    assert weighted.intercept == pytest.approx(plain.intercept)
    assert weighted.sse == pytest.approx(4.0 * plain.sse)


# ─── F statistic and P-value ───────────────────────────────────────────────

def test_linear_in_size_gives_zero_f_and_p_one():
    report = f_test(_series(SIZES, [0.25 * L for L in SIZES]))
    assert report.F < 1e-6
    assert report.P == 1.0
    assert report.verdict == VOLUME_LAW
    assert report.dof == (3, 3)


def test_linear_in_log_size_gives_infinite_f_and_p_zero():
    report = f_test(_series(SIZES, [0.8 * math.log(L) + 0.1 for L in SIZES]))
    assert math.isinf(report.F)
    assert report.P == 0.0
    assert report.verdict == NON_VOLUME_LAW


def test_noisy_volume_law_matches_direct_recomputation():
    sizes = [12, 16, 20, 24, 28]
    rng = np.random.default_rng(0)
    entropies = [0.3 * L + rng.normal(0, 1e-3) for L in sizes]
    report = f_statistic(_series(sizes, entropies))

    def sse(xs):
        coeffs = np.polyfit(xs, entropies, 1)
        return float(np.sum((np.polyval(coeffs, xs) - entropies) ** 2))

    expected = sse(np.array(sizes, float)) / sse(np.log(sizes))
    assert report.F == pytest.approx(expected, rel=1e-6)
    assert report.F < 1e-3
    assert report.P is None


def test_both_fits_exact_gives_unit_f():
    report = f_statistic(_series(SIZES, [1.0] * 5))
    assert report.F == 1.0
    assert p_value(report) == pytest.approx(0.5, abs=1e-10)


def test_too_few_sizes():
    with pytest.raises(ValueError, match="≥ 4"):
        f_statistic(_series([8, 10, 12], [1.0, 1.2, 1.3]))


def test_weighted_fit_needs_positive_errors():
    series = _series(SIZES, [1.0, 1.3, 1.5, 1.8, 1.9], stderrs=[0.01, 0.0, 0.01, 0.01, 0.01])
    with pytest.raises(ValueError, match="S_stderr"):
        f_statistic(series, weighted=True)
    ok = f_test(_series(SIZES, [1.0, 1.3, 1.5, 1.8, 1.9]), weighted=True)
    assert ok.weighted and 0.0 <= ok.P <= 1.0


def test_p_value_is_invariant_under_affine_rescaling():
    entropies = np.array([1.02, 1.31, 1.49, 1.81, 1.93])
    base = f_test(_series(SIZES, entropies))
    scaled = f_test(_series(SIZES, 3.7 * entropies - 0.4))
    assert scaled.F == pytest.approx(base.F, rel=1e-9)
    assert scaled.P == pytest.approx(base.P, abs=1e-12)


def test_swapping_hypotheses_inverts_f_and_complements_p():
    report = f_test(_series(SIZES, [1.02, 1.31, 1.49, 1.81, 1.93]))
    swapped_F = report.fit_lnL.sse / report.fit_L.sse
    assert swapped_F == pytest.approx(1.0 / report.F)
    assert f_survival(swapped_F, *report.dof) == pytest.approx(1.0 - report.P, abs=1e-9)


def test_threshold_is_configurable():
    series = _series(SIZES, [1.02, 1.31, 1.49, 1.81, 1.93])
    P = f_test(series).P
    assert f_test(series, threshold=P).verdict == VOLUME_LAW
    assert f_test(series, threshold=min(1.0, P + 1e-6)).verdict == NON_VOLUME_LAW
    with pytest.raises(ValueError):
        f_test(series, threshold=1.5)


def test_report_json_keeps_infinite_f():
    report = f_test(_series(SIZES, [0.8 * math.log(L) for L in SIZES]))
    data = report.to_dict()
    assert data["F"] == "inf"
    restored = FTestReport.from_dict(data)
    assert math.isinf(restored.F)
    assert restored.fit_L == report.fit_L


# ─── Incomplete beta and F distribution ────────────────────────────────────

@pytest.mark.parametrize("a, b", [(0.5, 0.5), (1.0, 3.0), (7.5, 2.0)])
def test_incomplete_beta_endpoints(a, b):
    assert regularized_incomplete_beta(0.0, a, b) == 0.0
    assert regularized_incomplete_beta(1.0, a, b) == 1.0


@pytest.mark.parametrize("a", [0.5, 1.0, 3.7, 20.0])
def test_incomplete_beta_midpoint_symmetry(a):
    assert regularized_incomplete_beta(0.5, a, a) == pytest.approx(0.5, abs=1e-12)


@pytest.mark.parametrize("x", [0.25, 0.7])
def test_incomplete_beta_uniform_case(x):
    assert regularized_incomplete_beta(x, 1.0, 1.0) == pytest.approx(x, abs=1e-12)


def test_incomplete_beta_matches_numerical_integration():
    rng = np.random.default_rng(2024)
    for _ in range(25):
        a, b = rng.uniform(0.5, 20.0, size=2)
        x = rng.uniform(0.01, 0.99)
        density = lambda t: np.exp((a - 1) * np.log(t) + (b - 1) * np.log1p(-t) - special.betaln(a, b))
        oracle, _ = integrate.quad(density, 0.0, x, epsabs=1e-13, epsrel=1e-12, limit=200)
        assert regularized_incomplete_beta(x, a, b) == pytest.approx(oracle, abs=1e-8)
        assert regularized_incomplete_beta(x, a, b) == pytest.approx(special.betainc(a, b, x), abs=1e-10)


def test_incomplete_beta_domain():
    with pytest.raises(ValueError):
        regularized_incomplete_beta(1.2, 1.0, 1.0)
    with pytest.raises(ValueError):
        regularized_incomplete_beta(0.5, 0.0, 1.0)


@pytest.mark.parametrize("d", [3, 6, 10])
def test_f_cdf_equal_dof_median_is_one(d):
    assert f_cdf(1.0, d, d) == pytest.approx(0.5, abs=1e-10)


@pytest.mark.parametrize("x", [0.1, 1.0, 3.0, 25.0])
def test_f_cdf_one_one_closed_form(x):
    assert f_cdf(x, 1, 1) == pytest.approx(2 / math.pi * math.atan(math.sqrt(x)), abs=1e-9)
    density = lambda t: stats.f.pdf(t, 1, 1)
    integral, _ = integrate.quad(density, 0.0, x, limit=200)
    assert f_cdf(x, 1, 1) == pytest.approx(integral, abs=1e-7)


def test_f_cdf_known_points_and_monotonicity():
    assert f_cdf(1.0, 1, 1) == pytest.approx(0.5, abs=1e-12)
    assert f_cdf(3.0, 1, 1) == pytest.approx(2 / 3, abs=1e-9)
    assert f_cdf(0.0, 4, 7) == 0.0
    grid = np.linspace(0.0, 20.0, 201)
    values = [f_cdf(x, 3, 3) for x in grid]
    assert all(b >= a for a, b in zip(values, values[1:]))
    for x in (0.3, 2.0, 9.0):
        assert f_cdf(x, 4, 7) == pytest.approx(stats.f.cdf(x, 4, 7), abs=1e-10)
        assert f_survival(x, 4, 7) == pytest.approx(1.0 - f_cdf(x, 4, 7), abs=1e-12)
    with pytest.raises(ValueError):
        f_cdf(-1.0, 2, 2)
    with pytest.raises(ValueError):
        f_cdf(1.0, 0, 2)
