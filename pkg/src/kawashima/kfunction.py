"""The Kawashima function ``F_k(z)`` by three independent series, plus its Taylor data.

* Newton series: ``sum_n (-1)^(n-1) s*(k_dual, n) C(z, n)``.
* Inductive fraction series: ``sum_n (s*(k, n) - F_{k_-}(n+z) / (n+z)^k_r)``.
* G-series: the constrained nested sum ``G_{rev(k_dual)}(z)``, the primary evaluator.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import mpmath

from .config import DEFAULT_CONFIG, EvalConfig, EvalResult, combine
from .errors import DomainError
from .extrapolate import extrapolate, partial_sums_at, points_needed
from .harmonic import S_star, binomial, chain_columns, s_star
from .indices import (
    Index,
    IndexVector,
    a_set,
    as_index,
    circled_star_product,
    hoffman_dual,
    ones,
    reverse,
    star_expand,
    weak_steps,
    weight,
)
from .mzv import c_m, mzv

METHODS = ("g", "newton", "inductive")


def _coerce_z(z, prec: int = 128):
    with mpmath.workprec(prec):
        z = mpmath.mpmathify(z)
    if isinstance(z, mpmath.mpc) and z.imag == 0:
        z = z.real
    return z


def _as_nonneg_int(z):
    if isinstance(z, mpmath.mpf) and z >= 0 and z == int(z):
        return int(z)
    return None


@lru_cache(maxsize=256)
def _star_column(k: Index, N: int, prec: int) -> tuple:
    """``s*(k, n)`` for ``n = 0..N`` in floating point at ``prec`` bits."""
    with mpmath.workprec(prec):
        inv = [mpmath.mpf(0)] + [mpmath.mpf(1) / n for n in range(1, N + 1)]
        factors = [(lambda n, e=e: inv[n] ** e) for e in k]
        return tuple(chain_columns(factors, [True] * (len(k) - 1), N, mpmath.mpf(0)))


@dataclass(frozen=True)
class GSeriesSpec:
    """Layout of ``G_m(z)``: one factor kind per summation variable.

    Kinds are ``"n"`` for ``1/n``, ``"shift"`` for ``1/(n+z)`` closing a
    ``P`` block, and ``"tilde"`` for ``z/(n(n+z))`` closing the final block.
    """

    index: Index
    weak: tuple[bool, ...]
    kinds: tuple[str, ...]

    @classmethod
    def from_index(cls, m: Index) -> GSeriesSpec:
        m = as_index(m)
        cuts = a_set(m)
        w = weight(m)
        kinds = tuple(
            "tilde" if j == w else "shift" if j in cuts else "n" for j in range(1, w + 1)
        )
        return cls(m, weak_steps(m), kinds)

    def describe(self) -> str:
        """Human-readable summation range, e.g. ``0<n1<=n2<n3<n4``."""
        out = "0<n1"
        for j, weak in enumerate(self.weak, start=2):
            out += ("<=" if weak else "<") + f"n{j}"
        return out


class KawashimaEvaluator:
    """Evaluator for one index; holds the dual, the G-subscript and ``rho``."""

    def __init__(self, k):
        k = as_index(k)
        if not k:
            raise DomainError("F is the constant 1 on the empty index; no evaluator needed")
        self.index = k
        self.dual = hoffman_dual(k)
        self.g_index = reverse(self.dual)
        self.rho = self.dual[-1]
        self.g_spec = GSeriesSpec.from_index(self.g_index)

    def __repr__(self):
        return f"KawashimaEvaluator({self.index}, rho={self.rho})"

    # exact values -------------------------------------------------------

    def newton_at_integer(self, N: int) -> Fraction:
        """The Newton series at ``z = N``; finite since ``C(N, n) = 0`` for ``n > N``."""
        return sum(
            ((-1) ** (n - 1) * s_star(self.dual, n) * binomial(N, n) for n in range(1, N + 1)),
            Fraction(0),
        )

    def at_integer(self, N: int) -> Fraction:
        if N < 0:
            raise DomainError("exact evaluation needs N >= 0")
        direct = S_star(self.index, N)
        newton = self.newton_at_integer(N)
        if direct != newton:
            raise ArithmeticError(f"F_{self.index}({N}): S* = {direct} but Newton sum = {newton}")
        return direct

    # numeric evaluators -------------------------------------------------

    def _check_half_plane(self, z, bound, cfg):
        if mpmath.re(z) <= -bound + cfg.margin:
            raise DomainError(
                f"z = {z} is outside Re(z) > -{bound} + {cfg.margin} "
                f"(rho = {self.rho} for k = {self.index})"
            )

    def _exact_result(self, N, method, cfg):
        q = self.at_integer(N)
        with mpmath.workprec(cfg.precision):
            value = mpmath.mpf(q.numerator) / q.denominator
        return EvalResult(value, mpmath.mpf(0), method, N, cfg.precision)

    def newton(self, z, cfg: EvalConfig = DEFAULT_CONFIG) -> EvalResult:
        z = _coerce_z(z, cfg.precision)
        self._check_half_plane(z, self.rho, cfg)
        cfg.check_weight(weight(self.index))
        N = _as_nonneg_int(z)
        if N is not None and N <= cfg.terms:
            return self._exact_result(N, "newton", cfg)
        terms_n = cfg.terms
        with mpmath.workprec(cfg.precision):
            col = _star_column(self.dual, terms_n, cfg.precision)
            terms, c = [0], mpmath.mpf(1)
            for n in range(1, terms_n + 1):
                c = c * (z - n + 1) / n
                t = col[n] * c
                terms.append(t if n % 2 else -t)
            d = len(self.dual) - 1
            sums = partial_sums_at(terms, points_needed(cfg, d))
            value, err = extrapolate(sums, z + self.rho, d, cfg)
            return EvalResult(+value, +err, "newton", terms_n, cfg.precision)

    def g_series(self, z, cfg: EvalConfig = DEFAULT_CONFIG) -> EvalResult:
        z = _coerce_z(z, cfg.precision)
        self._check_half_plane(z, self.rho, cfg)
        cfg.check_weight(weight(self.index))
        N = cfg.terms
        spec = self.g_spec
        with mpmath.workprec(cfg.precision):
            inv = [mpmath.mpf(0)] + [mpmath.mpf(1) / n for n in range(1, N + 1)]
            shift = [mpmath.mpf(0)]
            for n in range(1, N + 1):
                if n + z == 0:
                    raise DomainError(f"G-series term 1/(n+z) is singular at n = {n}; use newton")
                shift.append(1 / (n + z))
            tilde = [z * a * b for a, b in zip(inv, shift)]
            table = {"n": inv, "shift": shift, "tilde": tilde}
            factors = [table[kind].__getitem__ for kind in spec.kinds]
            top = chain_columns(factors, spec.weak, N, mpmath.mpf(0))
            d = len(spec.kinds) - 1
            sums = partial_sums_at(top, points_needed(cfg, d))
            value, err = extrapolate(sums, 1, d, cfg)
            return EvalResult(+value, +err, "g", N, cfg.precision)

    def inductive(self, z, cfg: EvalConfig = DEFAULT_CONFIG) -> EvalResult:
        z = _coerce_z(z, cfg.precision)
        self._check_half_plane(z, 1, cfg)
        cfg.check_weight(weight(self.index))
        with mpmath.workprec(cfg.precision):
            column, err = _inductive_column(self.index, z, cfg)
            return EvalResult(+column[0], +err, "inductive", cfg.terms, cfg.precision)

    def evaluate(self, z, cfg: EvalConfig = DEFAULT_CONFIG, method: str = "g") -> EvalResult:
        if method not in METHODS:
            raise DomainError(f"unknown method {method!r}; choose from {METHODS}")
        return getattr(self, {"g": "g_series"}.get(method, method))(z, cfg)

    # Taylor coefficients at z = 0 ----------------------------------------

    def taylor_argument(self, m: int) -> IndexVector:
        """``(1,...,1)_m (*) (k_dual)*``; its zeta value is the ``z^m`` coefficient up to sign."""
        if m < 1:
            raise DomainError("Taylor order must be >= 1")
        return circled_star_product(ones(m), star_expand(self.dual))

    def taylor_m1(self, m_max: int, cfg: EvalConfig = DEFAULT_CONFIG):
        return [(self.taylor_argument(m), mzv(self.taylor_argument(m), cfg)) for m in range(1, m_max + 1)]

    def taylor_m3(self, m_max: int, cfg: EvalConfig = DEFAULT_CONFIG):
        if m_max < 1:
            raise DomainError("Taylor order must be >= 1")
        return [c_m(self.g_index, m, cfg) for m in range(1, m_max + 1)]


def _inductive_column(k: Index, z, cfg: EvalConfig):
    """``[F_k(z + n) for n = 0..N]`` and an error bound shared by every entry.

    ``F_k(z)`` is the extrapolated inductive series. Shifted values follow by
    reindexing the same series: ``F_k(z+n) = F_k(z) + sum_{j<=n} F_{k_-}(z+j)/(z+j)^k_r``.
    """
    N = cfg.terms
    if not k:
        return [mpmath.mpf(1)] * (N + 1), mpmath.mpf(0)
    inner, inner_err = _inductive_column(k[:-1], z, cfg)
    e = k[-1]
    star = _star_column(k, N, cfg.precision)
    g = [0]
    weight_sum = mpmath.mpf(0)
    for n in range(1, N + 1):
        p = (n + z) ** e
        g.append(inner[n] / p)
        weight_sum += 1 / abs(p)
    terms = [0] + [star[n] - g[n] for n in range(1, N + 1)]
    d = len(k) - 1
    sums = partial_sums_at(terms, points_needed(cfg, d))
    value, err = extrapolate(sums, e, d, cfg)
    err += inner_err * weight_sum
    column, acc = [value], value
    for n in range(1, N + 1):
        acc += g[n]
        column.append(acc)
    return column, err


@lru_cache(maxsize=512)
def evaluator(k: Index) -> KawashimaEvaluator:
    return KawashimaEvaluator(k)


def eval_newton(k, z, cfg: EvalConfig = DEFAULT_CONFIG) -> EvalResult:
    return evaluator(as_index(k)).newton(z, cfg)


def eval_g_series(k, z, cfg: EvalConfig = DEFAULT_CONFIG) -> EvalResult:
    return evaluator(as_index(k)).g_series(z, cfg)


def eval_fraction_inductive(k, z, cfg: EvalConfig = DEFAULT_CONFIG) -> EvalResult:
    return evaluator(as_index(k)).inductive(z, cfg)


def eval_at_integer(k, N: int) -> Fraction:
    k = as_index(k)
    if not k:
        return Fraction(1)
    return evaluator(k).at_integer(N)


def kawashima(k, z, cfg: EvalConfig = DEFAULT_CONFIG, method: str = "g") -> EvalResult:
    """``F_k(z)`` for an index or a rational combination of indices; ``F_() = 1``."""
    v = IndexVector.of(k)
    results = []
    for idx in v:
        if idx:
            results.append(evaluator(idx).evaluate(z, cfg, method))
        else:
            results.append(EvalResult(mpmath.mpf(1), mpmath.mpf(0), method, 0, cfg.precision))
    return combine(results, v.values(), method)


def kawashima_at_integer(v, N: int) -> Fraction:
    return sum((c * eval_at_integer(k, N) for k, c in IndexVector.of(v).items()), Fraction(0))


def taylor_coeffs_m1(k, m_max: int, cfg: EvalConfig = DEFAULT_CONFIG):
    """Per order ``m``: the exact argument ``1^m (*) (k_dual)*`` and its zeta value."""
    return evaluator(as_index(k)).taylor_m1(m_max, cfg)


def taylor_coeffs_m3(k, m_max: int, cfg: EvalConfig = DEFAULT_CONFIG):
    """Per order ``m``: ``C_m(rev(k_dual))``."""
    return evaluator(as_index(k)).taylor_m3(m_max, cfg)


# --- polygamma oracle ------------------------------------------------------


def polygamma_reference(m: int, x, cfg: EvalConfig = DEFAULT_CONFIG) -> EvalResult:
    """``psi^(m)(x)`` for real ``x > 0``: upward recurrence, then the Stirling-type series."""
    if m < 0:
        raise DomainError("polygamma order must be nonnegative")
    with mpmath.workprec(cfg.precision + 16):
        x = mpmath.mpf(x)
        if x <= 0:
            raise DomainError("polygamma_reference needs x > 0")
        target = max(20, cfg.precision // 4)
        shift = max(0, math.ceil(target - x))
        sign = -1 if m % 2 else 1  # (-1)^m
        fact_m = math.factorial(m)
        correction = mpmath.mpf(0)
        for i in range(shift):
            correction += sign * fact_m / (x + i) ** (m + 1)
        y = x + shift
        if m == 0:
            total = mpmath.log(y) - 1 / (2 * y)
        else:
            total = mpmath.mpf(math.factorial(m - 1)) / y**m + mpmath.mpf(fact_m) / (2 * y ** (m + 1))
        eps = mpmath.mpf(2) ** (-cfg.precision - 8)
        last = mpmath.mpf(0)
        for j in range(1, 200):
            b = mpmath.bernoulli(2 * j)
            if m == 0:
                term = -b / (2 * j * y ** (2 * j))
            else:
                term = b * mpmath.mpf(math.factorial(2 * j + m - 1)) / (math.factorial(2 * j) * y ** (2 * j + m))
            total += term
            last = abs(term)
            if last < eps * abs(total):
                break
        if m > 0 and m % 2 == 0:
            total = -total  # leading sign (-1)^(m+1)
        value = total - correction
        err = last + abs(value) * mpmath.mpf(2) ** (-cfg.precision)
    with mpmath.workprec(cfg.precision):
        return EvalResult(+value, +err, "polygamma", shift, cfg.precision)


def euler_gamma(cfg: EvalConfig = DEFAULT_CONFIG) -> EvalResult:
    """``gamma = -psi(1)`` from :func:`polygamma_reference`."""
    r = polygamma_reference(0, 1, cfg)
    return EvalResult(-r.value, r.error_estimate, "gamma", r.terms_used, r.precision)
