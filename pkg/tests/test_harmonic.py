from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from kawashima.errors import DomainError
from kawashima.harmonic import (
    S,
    S_linear,
    S_star,
    S_star_linear,
    binomial,
    s,
    s_linear,
    s_star,
    sum_table,
)
from kawashima.indices import IndexVector, harmonic_bar_product, harmonic_product, star_expand

from .conftest import brute_chain_sum, index_vectors, nonempty_indices


@pytest.mark.parametrize(
    "fn, k, N, expected",
    [
        (s_star, (2,), 5, Fraction(1, 25)),
        (S_star, (1,), 3, Fraction(11, 6)),
        (S, (1, 2), 3, Fraction(5, 12)),
        (S_star, (1, 2), 4, Fraction(2953, 1728)),
        (S_star, (1, 1), 2, Fraction(7, 4)),
        (s, (1, 1), 1, Fraction(0)),
        (S, (3,), 0, Fraction(0)),
    ],
)
def test_hand_values(fn, k, N, expected):
    assert fn(k, N) == expected


def test_linear_examples():
    assert s_linear(IndexVector({(1, 1): 2, (2,): 1}), 2) == Fraction(5, 4)
    assert S_star_linear((), 7) == 1
    assert S_linear(IndexVector({(): 3, (1,): 1}), 2) == Fraction(9, 2)


def test_s_rejects_empty():
    with pytest.raises(DomainError):
        s_linear((), 3)
    with pytest.raises(DomainError):
        s((), 3)


def test_negative_N_rejected():
    with pytest.raises(DomainError):
        S((1,), -1)


@settings(max_examples=60, deadline=None)
@given(k=nonempty_indices(6, max_depth=3), N=st.integers(0, 7))
def test_dp_matches_enumeration(k, N):
    assert S(k, N) == brute_chain_sum(k, N, strict=True, top_fixed=False)
    assert S_star(k, N) == brute_chain_sum(k, N, strict=False, top_fixed=False)
    if N >= 1:
        assert s(k, N) == brute_chain_sum(k, N, strict=True, top_fixed=True)
        assert s_star(k, N) == brute_chain_sum(k, N, strict=False, top_fixed=True)


@given(k=nonempty_indices(7), N=st.integers(1, 20))
def test_star_sums_are_star_expansions(k, N):
    assert S_star(k, N) == S_linear(star_expand(k), N)
    assert s_star(k, N) == s_linear(star_expand(k), N)


@given(k=nonempty_indices(7), N=st.integers(0, 25))
def test_table_columns(k, N):
    t = sum_table(k, N)
    assert t.S[N] == S(k, N) and t.S_star[N] == S_star(k, N)
    assert all(0 <= a <= b for a, b in zip(t.S, t.S_star))
    # cumulative columns are nondecreasing in N
    assert all(a <= b for a, b in zip(t.S_star, t.S_star[1:]))
    assert [r[0] for r in t.rows()] == list(range(N + 1))


@settings(max_examples=40, deadline=None)
@given(v=index_vectors(4, 2, 2, allow_empty=True), w=index_vectors(4, 2, 2, allow_empty=True), N=st.integers(0, 12))
def test_products_are_homomorphisms(v, w, N):
    assert S_linear(harmonic_product(v, w), N) == S_linear(v, N) * S_linear(w, N)
    assert S_star_linear(harmonic_bar_product(v, w), N) == S_star_linear(v, N) * S_star_linear(w, N)


def test_star_square_example():
    assert S_star((1,), 2) ** 2 == Fraction(9, 4)
    assert S_star_linear(harmonic_bar_product((1,), (1,)), 2) == Fraction(9, 4)


@pytest.mark.parametrize("N", range(0, 12))
def test_binomial(N):
    from math import comb

    assert [binomial(N, n) for n in range(N + 1)] == [comb(N, n) for n in range(N + 1)]
