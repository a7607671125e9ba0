"""Numerical multiple zeta values by truncated nested sums plus tail extrapolation."""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

import mpmath

from .config import DEFAULT_CONFIG, EvalConfig, EvalResult, combine
from .errors import DivergenceError, DomainError
from .extrapolate import extrapolate, partial_sums_at, points_needed
from .harmonic import chain_columns
from .indices import Index, IndexVector, as_index, is_admissible, star_expand, weak_steps, weight

__all__ = ["mzv", "mzsv", "zeta_k_constrained", "c_m", "chain_limit", "c_m_compositions"]


def _power_table(exponents, N):
    inv = [mpmath.mpf(0)] + [mpmath.mpf(1) / n for n in range(1, N + 1)]
    tables = {}
    for e in set(exponents):
        tables[e] = inv if e == 1 else [x**e for x in inv]
    return tables


@lru_cache(maxsize=1024)
def chain_limit(exponents: tuple[int, ...], weak: tuple[bool, ...], cfg: EvalConfig, method: str) -> EvalResult:
    """Limit of ``sum 1/(n_1^e_1 ... n_d^e_d)`` over chains constrained by ``weak``."""
    if exponents[-1] < 2:
        raise DivergenceError(f"divergent term: last exponent of {exponents} is 1")
    cfg.check_weight(sum(exponents))
    N = cfg.terms
    with mpmath.workprec(cfg.precision):
        tables = _power_table(exponents, N)
        factors = [tables[e].__getitem__ for e in exponents]
        top = chain_columns(factors, weak, N, mpmath.mpf(0))
        sums = partial_sums_at(top, points_needed(cfg, len(exponents) - 1))
        value, err = extrapolate(sums, exponents[-1] - 1, len(exponents) - 1, cfg)
        return EvalResult(+value, +err, method, N, cfg.precision)


def _exact_one(method, cfg):
    return EvalResult(mpmath.mpf(1), mpmath.mpf(0), method, 0, cfg.precision)


def _mzv_index(k: Index, cfg: EvalConfig) -> EvalResult:
    if not k:
        return _exact_one("mzv", cfg)
    if not is_admissible(k):
        raise DivergenceError(f"divergent term: zeta{k} is not admissible")
    return chain_limit(k, (False,) * (len(k) - 1), cfg, "mzv")


def mzv(v, cfg: EvalConfig = DEFAULT_CONFIG) -> EvalResult:
    """``zeta(v)`` for an admissible index or a combination of admissible indices."""
    v = IndexVector.of(v)
    for k in v:
        if not is_admissible(k):
            raise DivergenceError(f"divergent term: zeta{k} is not admissible")
    results = [_mzv_index(k, cfg) for k in v]
    if not results:
        return EvalResult(mpmath.mpf(0), mpmath.mpf(0), "mzv", 0, cfg.precision)
    return combine(results, v.values(), "mzv")


def mzsv(v, cfg: EvalConfig = DEFAULT_CONFIG) -> EvalResult:
    """``zeta*(v) = zeta(v*)``; admissibility is required of ``v`` itself."""
    v = IndexVector.of(v)
    for k in v:
        if not is_admissible(k):
            raise DivergenceError(f"divergent term: zeta*{k} is not admissible")
    empty = v.get((), Fraction(0))
    rest = IndexVector({k: c for k, c in v.items() if k})
    expanded = star_expand(rest) + IndexVector({(): empty})
    r = mzv(expanded, cfg)
    return EvalResult(r.value, r.error_estimate, "mzsv", r.terms_used, r.precision)


def zeta_k_constrained(k, l, cfg: EvalConfig = DEFAULT_CONFIG) -> EvalResult:
    """``zeta_k(l)``: sum of ``1/(n_1^l_1 ... n_w^l_w)`` with steps weak exactly on ``A(k)``."""
    k, l = as_index(k), as_index(l)
    if not k:
        raise DomainError("zeta_k needs a nonempty k")
    if len(l) != weight(k):
        raise DomainError(f"depth of l ({len(l)}) must equal wt(k) ({weight(k)})")
    if l[-1] < 2:
        raise DivergenceError("zeta_k(l) diverges when the last exponent is 1")
    return chain_limit(l, weak_steps(k), cfg, "zeta_k")


def c_m_compositions(k: Index, m: int):
    """Exponent vectors summed in ``C_m(k)``: block ``i`` is ``1^(k_i - 1), l_i + 1``."""
    r = len(k)

    def comps(total, slots):
        if slots == 1:
            yield (total,)
            return
        for first in range(total + 1):
            for rest in comps(total - first, slots - 1):
                yield (first,) + rest

    for ls in comps(m, r):
        if ls[-1] < 1:
            continue
        expo = []
        for part, li in zip(k, ls):
            expo.extend([1] * (part - 1))
            expo.append(li + 1)
        yield tuple(expo)


def c_m(k, m: int, cfg: EvalConfig = DEFAULT_CONFIG) -> EvalResult:
    k = as_index(k)
    if not k:
        raise DomainError("C_m needs a nonempty index")
    if m < 1:
        raise DomainError("C_m needs m >= 1")
    results = [zeta_k_constrained(k, l, cfg) for l in c_m_compositions(k, m)]
    return combine(results, [1] * len(results), "c_m")

