"""Batch verification of the identities around ``F_k``: exact over Q, numeric against bounds."""

from __future__ import annotations

import random
from collections.abc import Iterator
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

import mpmath

from .config import DEFAULT_CONFIG, EvalConfig, EvalResult, format_number
from .errors import DomainError
from .harmonic import binomial, sum_table
from .indices import (
    Index,
    abscissa_rho,
    rho_closed_form,
    IndexVector,
    as_index,
    circled_star_product,
    compositions,
    dual_vector,
    harmonic_bar_product,
    harmonic_product,
    hoffman_dual,
    indices_up_to,
    ones,
    render_index,
    star_expand,
)
from .kfunction import (
    euler_gamma,
    eval_at_integer,
    evaluator,
    kawashima,
    kawashima_at_integer,
    polygamma_reference,
)
from .mzv import mzv


@dataclass
class CheckReport:
    name: str
    params: dict
    kind: str
    lhs: object
    rhs: object
    residual: object
    bound: object = None
    passed: bool = field(init=False)
    precision: int = 128

    def __post_init__(self):
        if self.kind == "exact":
            self.passed = self.residual == 0
        elif self.kind == "numeric":
            self.passed = bool(abs(self.residual) < self.bound)
        else:
            raise ValueError(f"unknown check kind {self.kind!r}")

    @property
    def verdict(self) -> str:
        return "pass" if self.passed else "fail"

    def _fmt(self, x):
        if x is None:
            return None
        if isinstance(x, Fraction):
            return f"{x.numerator}/{x.denominator}"
        if isinstance(x, tuple):
            return render_index(x)
        return format_number(x, self.precision)

    def to_json(self) -> dict:
        params = {
            key: render_index(val) if isinstance(val, tuple) else val
            for key, val in self.params.items()
        }
        return {
            "check": self.name,
            "params": params,
            "kind": self.kind,
            "lhs": self._fmt(self.lhs),
            "rhs": self._fmt(self.rhs),
            "residual": self._fmt(self.residual),
            "bound": None if self.bound is None else mpmath.nstr(mpmath.mpf(self.bound), 6),
            "verdict": self.verdict,
        }


def exact_report(name, params, lhs: Fraction, rhs: Fraction) -> CheckReport:
    return CheckReport(name, params, "exact", lhs, rhs, lhs - rhs)


def numeric_report(name, params, lhs: EvalResult, rhs: EvalResult, cfg: EvalConfig) -> CheckReport:
    """Residual ``lhs - rhs`` against ``max(tolerance, 4 * (err_lhs + err_rhs))``."""
    with mpmath.workprec(cfg.precision):
        residual = lhs.value - rhs.value
        bound = max(mpmath.mpf(cfg.tolerance), 4 * (lhs.error_estimate + rhs.error_estimate))
    return CheckReport(name, params, "numeric", lhs.value, rhs.value, residual, bound, cfg.precision)


def _const(x, cfg, method="const", err=0):
    return EvalResult(mpmath.mpf(x) if not isinstance(x, Fraction) else mpmath.mpf(x.numerator) / x.denominator,
                      mpmath.mpf(err), method, 0, cfg.precision)


def _product(a: EvalResult, b: EvalResult, method: str) -> EvalResult:
    with mpmath.workprec(max(a.precision, b.precision)):
        value = a.value * b.value
        err = abs(a.value) * b.error_estimate + abs(b.value) * a.error_estimate + a.error_estimate * b.error_estimate
    return EvalResult(value, err, method, max(a.terms_used, b.terms_used), max(a.precision, b.precision))


# --- exact suites ------------------------------------------------------------


@lru_cache(maxsize=None)
def _table(k: Index, N: int):
    return sum_table(k, N)


def iter_hoffman_duality(max_weight: int, max_N: int) -> Iterator[CheckReport]:
    """Both duality identities for every nonempty index up to ``max_weight`` and ``N <= max_N``."""
    if max_weight < 1 or max_N < 1:
        raise DomainError("bounds must be >= 1")
    for k in indices_up_to(max_weight):
        kd = hoffman_dual(k)
        tk, td = _table(k, max_N), _table(kd, max_N)
        for N in range(1, max_N + 1):
            rhs_s = sum(
                ((-1) ** (n - 1) * td.s_star[n] * binomial(N - 1, n - 1) for n in range(1, N + 1)),
                Fraction(0),
            )
            rhs_S = sum(
                ((-1) ** (n - 1) * td.s_star[n] * binomial(N, n) for n in range(1, N + 1)),
                Fraction(0),
            )
            yield exact_report("hoffman_s_star", {"k": k, "N": N}, tk.s_star[N], rhs_s)
            yield exact_report("hoffman_S_star", {"k": k, "N": N}, tk.S_star[N], rhs_S)


def check_hoffman_duality(max_weight: int, max_N: int) -> list[CheckReport]:
    return list(iter_hoffman_duality(max_weight, max_N))


def iter_interpolation(max_weight: int, max_N: int) -> Iterator[CheckReport]:
    for k in indices_up_to(max_weight):
        ev = evaluator(k)
        tk = _table(k, max_N)
        for N in range(0, max_N + 1):
            yield exact_report("interpolation", {"k": k, "N": N}, ev.newton_at_integer(N), tk.S_star[N])


def check_interpolation(max_weight: int, max_N: int) -> list[CheckReport]:
    return list(iter_interpolation(max_weight, max_N))


def random_vector(rng: random.Random, max_weight: int, max_terms: int = 2) -> IndexVector:
    """Random combination of nonempty indices of weight <= ``max_weight``."""
    pool = indices_up_to(max_weight)
    terms = {}
    for _ in range(rng.randint(1, max_terms)):
        k = rng.choice(pool)
        terms[k] = Fraction(rng.choice([-3, -2, -1, 1, 2, 3]), rng.choice([1, 1, 2, 3]))
    v = IndexVector(terms)
    return v if v else IndexVector.of(rng.choice(pool))


def _vector_column(v: IndexVector, N: int, column: str) -> list[Fraction]:
    out = [Fraction(0)] * (N + 1)
    for k, c in v.items():
        if not k:
            if column in ("s", "s_star"):
                raise DomainError("s and s* are not defined on the empty index")
            for n in range(N + 1):
                out[n] += c
            continue
        col = getattr(_table(k, N), column)
        for n in range(N + 1):
            out[n] += c * col[n]
    return out


def iter_product_rules(pairs: int = 50, max_weight: int = 5, max_N: int = 30, seed: int = 0):
    """``s(v)s(w) = s(v (*) w)``, ``S(v)S(w) = S(v*w)``, ``S*(v)S*(w) = S*(v *bar w)`` at every ``N <= max_N``."""
    rng = random.Random(seed)
    rules = (
        ("product_s", "s", circled_star_product),
        ("product_S", "S", harmonic_product),
        ("product_S_star", "S_star", harmonic_bar_product),
    )
    for i in range(pairs):
        v, w = random_vector(rng, max_weight), random_vector(rng, max_weight)
        for name, column, prod in rules:
            cv, cw = _vector_column(v, max_N, column), _vector_column(w, max_N, column)
            cp = _vector_column(prod(v, w), max_N, column)
            for N in range(1, max_N + 1):
                params = {"pair": i, "v": str(v), "w": str(w), "N": N}
                yield exact_report(name, params, cv[N] * cw[N], cp[N])


def check_product_rules(pairs: int = 50, max_weight: int = 5, max_N: int = 30, seed: int = 0):
    return list(iter_product_rules(pairs, max_weight, max_N, seed))


def iter_involution_rho(max_weight: int) -> Iterator[CheckReport]:
    for k in indices_up_to(max_weight):
        twice = hoffman_dual(hoffman_dual(k))
        yield CheckReport("dual_involution", {"k": k}, "exact", twice, k, Fraction(twice != k))
        a, b = abscissa_rho(k), rho_closed_form(k)
        yield exact_report("rho_closed_form", {"k": k}, Fraction(a), Fraction(b))


# --- numeric checks ----------------------------------------------------------


def check_cross_method(k, z, cfg: EvalConfig = DEFAULT_CONFIG, pair=("g", "newton")) -> CheckReport:
    ev = evaluator(as_index(k))
    a, b = (ev.evaluate(z, cfg, m) for m in pair)
    return numeric_report(f"cross_{pair[0]}_{pair[1]}", {"k": ev.index, "z": str(z)}, a, b, cfg)


def check_harmonic_relation(k, l, z, cfg: EvalConfig = DEFAULT_CONFIG, method: str = "g") -> CheckReport:
    """``F_k(z) F_l(z)`` against ``F_{k *bar l}(z)``."""
    k, l = as_index(k), as_index(l)
    lhs = _product(kawashima(k, z, cfg, method), kawashima(l, z, cfg, method), method)
    rhs = kawashima(harmonic_bar_product(k, l), z, cfg, method)
    return numeric_report("harmonic_relation", {"k": k, "l": l, "z": str(z)}, lhs, rhs, cfg)


def check_harmonic_relation_exact(k, l, N: int) -> CheckReport:
    k, l = as_index(k), as_index(l)
    lhs = eval_at_integer(k, N) * eval_at_integer(l, N)
    rhs = kawashima_at_integer(harmonic_bar_product(k, l), N)
    return exact_report("harmonic_relation_exact", {"k": k, "l": l, "N": N}, lhs, rhs)


def taylor_argument(v, m: int) -> IndexVector:
    """``(1,...,1)_m (*) (v_dual)*`` for an index or combination of nonempty indices."""
    return circled_star_product(ones(m), star_expand(dual_vector(v)))


def kawashima_relation_sides(k, l, m: int):
    """Symbolic sides: ``[(arg_p(k), arg_q(l)) for p + q = m]`` and the right-hand argument.

    The relation reads ``sum_{p+q=m} zeta(arg_p(k)) zeta(arg_q(l)) = -zeta(arg_m(k *bar l))``.
    """
    k, l = as_index(k), as_index(l)
    if not k or not l:
        raise DomainError("Kawashima's relation needs nonempty k and l")
    if m < 1:
        raise DomainError("m must be >= 1")
    left = [(taylor_argument(k, p), taylor_argument(l, m - p)) for p in range(1, m)]
    right = taylor_argument(harmonic_bar_product(k, l), m)
    return left, right


def check_kawashima_relation(k, l, m: int, cfg: EvalConfig = DEFAULT_CONFIG) -> CheckReport:
    left, right = kawashima_relation_sides(k, l, m)
    lhs = _const(0, cfg, "mzv")
    for a, b in left:
        term = _product(mzv(a, cfg), mzv(b, cfg), "mzv")
        with mpmath.workprec(cfg.precision):
            lhs = EvalResult(lhs.value + term.value, lhs.error_estimate + term.error_estimate,
                             "mzv", term.terms_used, cfg.precision)
    r = mzv(right, cfg)
    with mpmath.workprec(cfg.precision):
        rhs = EvalResult(-r.value, r.error_estimate, "mzv", r.terms_used, cfg.precision)
    return numeric_report("kawashima_relation", {"k": as_index(k), "l": as_index(l), "m": m}, lhs, rhs, cfg)


def check_taylor_identity(k, m: int, cfg: EvalConfig = DEFAULT_CONFIG) -> CheckReport:
    """Taylor coefficient of order ``m`` by the zeta-argument route and by ``C_m``."""
    ev = evaluator(as_index(k))
    (_, lhs), rhs = ev.taylor_m1(m, cfg)[-1], ev.taylor_m3(m, cfg)[-1]
    return numeric_report("taylor_identity", {"k": ev.index, "m": m}, lhs, rhs, cfg)


def check_duality_special(m: int, cfg: EvalConfig = DEFAULT_CONFIG) -> CheckReport:
    """``zeta(1,...,1,2) = zeta(m+1)`` with ``m-1`` ones."""
    if m < 1:
        raise DomainError("m must be >= 1")
    lhs, rhs = mzv(ones(m - 1) + (2,), cfg), mzv((m + 1,), cfg)
    return numeric_report("duality_special", {"m": m}, lhs, rhs, cfg)


def check_difference_equation(k, z, cfg: EvalConfig = DEFAULT_CONFIG, method: str = "g") -> CheckReport:
    """``F_k(z) - F_k(z-1)`` against ``F_{k_-}(z) / z^k_r``."""
    k = as_index(k)
    if not k:
        raise DomainError("the difference equation needs a nonempty index")
    with mpmath.workprec(cfg.precision):
        zz = mpmath.mpmathify(z)
    if zz == 0:
        raise DomainError("z = 0 is a pole of the right-hand side")
    if mpmath.re(zz) <= 0:
        raise DomainError("the difference equation check needs Re(z) > 0")
    a, b = kawashima(k, zz, cfg, method), kawashima(k, zz - 1, cfg, method)
    inner = kawashima(IndexVector.of(k[:-1]), zz, cfg, method)
    with mpmath.workprec(cfg.precision):
        lhs = EvalResult(a.value - b.value, a.error_estimate + b.error_estimate, method, cfg.terms, cfg.precision)
        scale = abs(zz) ** k[-1]
        rhs = EvalResult(inner.value / zz ** k[-1], inner.error_estimate / scale, method, cfg.terms, cfg.precision)
    return numeric_report("difference_equation", {"k": k, "z": str(z)}, lhs, rhs, cfg)


def check_difference_equation_exact(k, N: int) -> CheckReport:
    k = as_index(k)
    if N < 1:
        raise DomainError("exact difference check needs N >= 1")
    lhs = eval_at_integer(k, N) - eval_at_integer(k, N - 1)
    rhs = eval_at_integer(k[:-1], N) / Fraction(N) ** k[-1]
    return exact_report("difference_equation_exact", {"k": k, "N": N}, lhs, rhs)


def check_polygamma(m: int, z, cfg: EvalConfig = DEFAULT_CONFIG) -> CheckReport:
    """``F_(m+1)(z)`` against ``(-1)^m/m! psi^(m)(z+1) + zeta(m+1)``, with ``gamma`` for ``zeta(1)``."""
    if m < 0:
        raise DomainError("m must be >= 0")
    lhs = kawashima((m + 1,), z, cfg, "g")
    with mpmath.workprec(cfg.precision):
        shifted = mpmath.mpmathify(z) + 1
    psi = polygamma_reference(m, shifted, cfg)
    const = euler_gamma(cfg) if m == 0 else mpzeta(m + 1, cfg)
    with mpmath.workprec(cfg.precision):
        scale = mpmath.mpf(1) / mpmath.factorial(m)
        value = (-1) ** m * scale * psi.value + const.value
        rhs = EvalResult(value, scale * psi.error_estimate + const.error_estimate, "polygamma", 0, cfg.precision)
    return numeric_report("polygamma", {"m": m, "z": str(z)}, lhs, rhs, cfg)


def mpzeta(s: int, cfg: EvalConfig) -> EvalResult:
    return mzv((s,), cfg)


# --- profiles ----------------------------------------------------------------

PROFILES = ("quick", "desk")

CROSS_INDICES = [(1,), (2,), (1, 1), (1, 2), (2, 1)]


def _small_pairs(max_total: int):
    pool = [k for w in range(1, max_total) for k in compositions(w)]
    return [(k, l) for k in pool for l in pool if sum(k) + sum(l) <= max_total]


def run_profile(name: str, cfg: EvalConfig = DEFAULT_CONFIG) -> Iterator[CheckReport]:
    """Stream every check of a named parameter grid in canonical order."""
    if name not in PROFILES:
        raise DomainError(f"unknown profile {name!r}; choose from {PROFILES}")
    desk = name == "desk"
    yield from iter_hoffman_duality(6 if desk else 4, 20 if desk else 8)
    yield from iter_interpolation(6 if desk else 4, 20 if desk else 8)
    yield from iter_product_rules(50 if desk else 5, 5 if desk else 3, 30 if desk else 10)
    yield from iter_involution_rho(10 if desk else 6)
    zs = ("0.25", "0.5", "1.5") if desk else ("0.5",)
    for k in CROSS_INDICES:
        for z in zs:
            for pair in (("g", "newton"), ("g", "inductive"), ("newton", "inductive")):
                yield check_cross_method(k, z, cfg, pair)
    for k in CROSS_INDICES:
        for z in ("1.5", "2.5"):
            yield check_difference_equation(k, z, cfg)
        for N in range(1, 4):
            yield check_difference_equation_exact(k, N)
    for k in [(1,), (2,), (1, 1)]:
        for m in range(1, 4):
            yield check_taylor_identity(k, m, cfg)
    for m in range(1, 5):
        yield check_duality_special(m, cfg)
    for k, l in [((1,), (1,)), ((1,), (2,)), ((1, 1), (1,))]:
        for z in ("0.5", "1.5"):
            yield check_harmonic_relation(k, l, z, cfg)
        for N in (1, 2, 3):
            yield check_harmonic_relation_exact(k, l, N)
    for k, l in _small_pairs(3 if desk else 2):
        for m in range(1, 4 if desk else 3):
            yield check_kawashima_relation(k, l, m, cfg)
    for m in range(3):
        for z in ("0.5", "1"):
            yield check_polygamma(m, z, cfg)

