from __future__ import annotations

from dataclasses import dataclass, field, replace

import mpmath

from .errors import DomainError

MAX_WEIGHT = 12
MAX_TERMS = 10**7


@dataclass(frozen=True)
class EvalConfig:
    """Truncation and extrapolation settings shared by every numeric evaluator.

    ``points`` and ``log_degree`` default to ``None``: each evaluator then picks
    the log degree its tail needs and uses ``1 + 5 * (log_degree + 1)`` points.
    """

    terms: int = 2048
    extrapolation: str = "richardson"
    points: int | None = None
    log_degree: int | None = None
    precision: int = 128
    tolerance: float = 1e-10
    margin: float = 0.05
    allow_large: bool = False

    def __post_init__(self):
        if self.terms < 2:
            raise DomainError("terms must be at least 2")
        if self.extrapolation not in ("none", "richardson"):
            raise DomainError(f"unknown extrapolation {self.extrapolation!r}")
        if self.points is not None and self.points < 2:
            raise DomainError("richardson needs at least 2 points")
        if self.log_degree is not None and self.log_degree < 0:
            raise DomainError("log degree must be nonnegative")
        if self.precision < 64:
            raise DomainError("precision must be at least 64 bits")
        if self.tolerance <= 0 or self.margin < 0:
            raise DomainError("tolerance must be positive and margin nonnegative")
        if self.terms > MAX_TERMS and not self.allow_large:
            raise DomainError(f"terms > {MAX_TERMS} needs allow_large")

    def with_(self, **changes) -> EvalConfig:
        return replace(self, **changes)

    def check_weight(self, w: int) -> None:
        if w > MAX_WEIGHT and not self.allow_large:
            raise DomainError(f"weight {w} exceeds {MAX_WEIGHT}; set allow_large to override")


DEFAULT_CONFIG = EvalConfig()


def format_number(x, precision: int) -> str:
    """Decimal string that round-trips at ``precision`` bits."""
    dps = mpmath.libmp.repr_dps(precision)
    x = mpmath.mpmathify(x)
    if isinstance(x, mpmath.mpc):
        if x.imag == 0:
            x = x.real
        else:
            re, im = mpmath.nstr(x.real, dps), mpmath.nstr(abs(x.imag), dps)
            return f"{re}{'-' if x.imag < 0 else '+'}{im}j"
    return mpmath.nstr(x, dps)


@dataclass(frozen=True)
class EvalResult:
    value: object
    error_estimate: object
    method: str
    terms_used: int
    precision: int = field(default=128, compare=False)

    def __post_init__(self):
        if not mpmath.isfinite(self.error_estimate):
            raise ValueError("error estimate must be finite")

    def __float__(self):
        return float(mpmath.re(self.value))

    def to_json(self) -> dict:
        return {
            "value": format_number(self.value, self.precision),
            "error_estimate": mpmath.nstr(mpmath.mpf(self.error_estimate), 6),
            "method": self.method,
            "terms_used": self.terms_used,
        }


def combine(results, coefs, method: str) -> EvalResult:
    """Coefficient-weighted sum of results, errors added in absolute value."""
    results = list(results)
    prec = max((r.precision for r in results), default=128)
    with mpmath.workprec(prec):
        value, err, used = mpmath.mpf(0), mpmath.mpf(0), 0
        for r, c in zip(results, coefs):
            c = mpmath.mpf(c.numerator) / c.denominator if hasattr(c, "denominator") else mpmath.mpf(c)
            value += c * r.value
            err += abs(c) * r.error_estimate
            used = max(used, r.terms_used)
    return EvalResult(value, err, method, used, prec)
