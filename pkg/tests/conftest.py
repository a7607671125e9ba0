from fractions import Fraction
from itertools import product

import mpmath
import pytest
from hypothesis import strategies as st

from kawashima import EvalConfig, IndexVector


def nonempty_indices(max_weight=8, max_depth=None):
    """Compositions drawn part by part; total weight capped."""

    @st.composite
    def build(draw):
        parts, left = [], max_weight
        while left > 0 and (max_depth is None or len(parts) < max_depth):
            parts.append(draw(st.integers(1, min(left, 4))))
            left -= parts[-1]
            if parts and draw(st.booleans()):
                break
        return tuple(parts)

    return build()


def index_vectors(max_weight=5, max_depth=3, max_terms=3, allow_empty=False):
    keys = nonempty_indices(max_weight, max_depth)
    if allow_empty:
        keys = st.one_of(st.just(()), keys)
    coefs = st.fractions(min_value=-3, max_value=3, max_denominator=4)
    return st.dictionaries(keys, coefs, min_size=1, max_size=max_terms).map(IndexVector)


def brute_chain_sum(exponents, N, strict, top_fixed):
    """Enumerate every chain ``m_1 <(=) ... <(=) m_r`` with ``m_r = N`` or ``<= N``."""
    total = Fraction(0)
    r = len(exponents)
    for ms in product(range(1, N + 1), repeat=r):
        if top_fixed and ms[-1] != N:
            continue
        if all((a < b) if strict else (a <= b) for a, b in zip(ms, ms[1:])):
            term = Fraction(1)
            for m, e in zip(ms, exponents):
                term /= m**e
            total += term
    return total


@pytest.fixture(scope="session")
def cfg():
    return EvalConfig()


@pytest.fixture(autouse=True)
def _high_precision_scope():
    with mpmath.workprec(128):
        yield


def pytest_terminal_summary(terminalreporter):
    from . import test_acceptance

    if test_acceptance.RESULTS:
        terminalreporter.section("acceptance criteria")
        for n in sorted(test_acceptance.RESULTS):
            terminalreporter.write_line(test_acceptance.RESULTS[n])
