import mpmath
import pytest
from hypothesis import given
from hypothesis import strategies as st

from kawashima.config import EvalConfig
from kawashima.extrapolate import extrapolate, partial_sums_at, points_needed, sample_points


@given(N=st.integers(1, 5000), count=st.integers(1, 40))
def test_sample_points_distinct_and_in_range(N, count):
    pts = sample_points(N, count)
    assert len(pts) == min(count, N)
    assert len(set(pts)) == len(pts)
    assert all(1 <= p <= N for p in pts)
    assert N in pts


def _zeta_terms(s, N):
    return [mpmath.mpf(0)] + [mpmath.mpf(n) ** -s for n in range(1, N + 1)]


@pytest.mark.parametrize("s", [2, 3, 4])
def test_single_zeta_tail(s):
    cfg = EvalConfig(terms=1024)
    sums = partial_sums_at(_zeta_terms(s, cfg.terms), points_needed(cfg, 0))
    value, err = extrapolate(sums, s - 1, 0, cfg)
    assert abs(value - mpmath.zeta(s)) <= err < 1e-12


def test_log_tail():
    # sum log(n)/n^2 has a log-weighted tail
    cfg = EvalConfig(terms=2048)
    N = cfg.terms
    terms = [mpmath.mpf(0)] + [mpmath.log(n) / mpmath.mpf(n) ** 2 for n in range(1, N + 1)]
    sums = partial_sums_at(terms, points_needed(cfg, 1))
    value, err = extrapolate(sums, 1, 1, cfg)
    exact = -mpmath.zeta(2, derivative=1)
    assert abs(value - exact) <= err < 1e-12


def test_error_estimate_covers_truncation_without_extrapolation():
    cfg = EvalConfig(terms=512, extrapolation="none")
    sums = partial_sums_at(_zeta_terms(2, 512), points_needed(cfg, 0))
    value, err = extrapolate(sums, 1, 0, cfg)
    assert abs(value - mpmath.zeta(2)) <= err
    assert abs(value - mpmath.zeta(2)) > 1e-4

