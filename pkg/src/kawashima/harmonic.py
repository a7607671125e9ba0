"""Exact multiple harmonic sums ``s, s*, S, S*`` and the nested-chain DP behind them.

Every constrained nested sum in the package (harmonic sums, the constrained
zeta sums, the G-series) goes through :func:`chain_columns`.
"""

from __future__ import annotations

from collections.abc import Callable, Sequence
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .errors import DomainError
from .indices import Index, IndexVector, as_index

__all__ = [
    "SumTable", "chain_columns", "sum_table", "binomial",
    "s", "s_star", "S", "S_star",
    "s_linear", "s_star_linear", "S_linear", "S_star_linear",
]


def chain_columns(factors: Sequence[Callable], weak: Sequence[bool], N: int, zero=0) -> list:
    """Top-level terms of a constrained chain sum, for every bound ``n = 0..N``.

    Returns ``out`` with ``out[n] = sum f_1(n_1) ... f_d(n_d)`` over chains
    ``0 < n_1 ? n_2 ? ... ? n_d = n`` where step ``j`` is ``<=`` when
    ``weak[j]`` and ``<`` otherwise. ``out[0] = zero``. Cost is
    ``O(N * len(factors))``.
    """
    d = len(factors)
    if len(weak) != d - 1:
        raise ValueError("need one step flag between consecutive factors")
    prefix = [zero] * d
    out = [zero]
    for n in range(1, N + 1):
        terms = [factors[0](n)]
        for j in range(1, d):
            acc = prefix[j - 1] + terms[j - 1] if weak[j - 1] else prefix[j - 1]
            terms.append(factors[j](n) * acc if acc else zero)
        for j in range(d):
            prefix[j] += terms[j]
        out.append(terms[-1])
    return out


def _power_factor(e: int):
    return lambda n: Fraction(1, n**e)


@lru_cache(maxsize=4096)
def _columns(k: Index, N: int, star: bool) -> tuple[Fraction, ...]:
    factors = [_power_factor(e) for e in k]
    return tuple(chain_columns(factors, [star] * (len(k) - 1), N, Fraction(0)))


def _cumulative(col) -> list[Fraction]:
    out, acc = [], Fraction(0)
    for x in col:
        acc += x
        out.append(acc)
    return out


@dataclass(frozen=True)
class SumTable:
    """Columns ``s, s*, S, S*`` of an index for ``n = 0..N`` (position ``n``)."""

    index: Index
    N: int
    s: tuple[Fraction, ...]
    s_star: tuple[Fraction, ...]
    S: tuple[Fraction, ...]
    S_star: tuple[Fraction, ...]

    def rows(self):
        for n in range(self.N + 1):
            yield n, self.s[n], self.s_star[n], self.S[n], self.S_star[n]


def _check(k, N) -> Index:
    k = as_index(k)
    if not k:
        raise DomainError("harmonic sums need a nonempty index")
    if N < 0:
        raise DomainError(f"N must be nonnegative, got {N}")
    return k


def sum_table(k: Index, N: int) -> SumTable:
    k = _check(k, N)
    col, col_star = _columns(k, N, False), _columns(k, N, True)
    return SumTable(k, N, col, col_star, tuple(_cumulative(col)), tuple(_cumulative(col_star)))


def s(k: Index, N: int) -> Fraction:
    k = _check(k, N)
    return _columns(k, N, False)[N]


def s_star(k: Index, N: int) -> Fraction:
    k = _check(k, N)
    return _columns(k, N, True)[N]


def S(k: Index, N: int) -> Fraction:
    k = _check(k, N)
    return sum(_columns(k, N, False), Fraction(0))


def S_star(k: Index, N: int) -> Fraction:
    k = _check(k, N)
    return sum(_columns(k, N, True), Fraction(0))


def _linear(single, empty_value):
    def evaluate(v, N: int) -> Fraction:
        if N < 0:
            raise DomainError(f"N must be nonnegative, got {N}")
        total = Fraction(0)
        for k, c in IndexVector.of(v).items():
            if not k:
                if empty_value is None:
                    raise DomainError("s and s* are not defined on the empty index")
                total += c * empty_value
            else:
                total += c * single(k, N)
        return total

    return evaluate


s_linear = _linear(s, None)
s_star_linear = _linear(s_star, None)
S_linear = _linear(S, Fraction(1))
S_star_linear = _linear(S_star, Fraction(1))


def binomial(N: int, n: int) -> int:
    """``C(N, n)`` for integers via the multiplicative recurrence; 0 outside ``0..N``."""
    if n < 0 or N < 0 or n > N:
        return 0
    c = 1
    for i in range(1, n + 1):
        c = c * (N - i + 1) // i
    return c
