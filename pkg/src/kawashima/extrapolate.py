"""Tail extrapolation for partial sums with ``N^-(a+j) log^i N`` asymptotics.

A convergent nested series whose partial sums behave like

    T(N) = L + sum_{j>=0} sum_{i<=d} c_ij N^-(a+j) (log N)^i

is extrapolated by solving for ``L`` and the leading ``c_ij`` on partial sums
at geometrically spaced bounds. The error estimate is four times the change in
``L`` when the highest power ``j`` is dropped.
"""

from __future__ import annotations

import mpmath

from .config import EvalConfig

DEFAULT_POWERS = 5
SPAN = 32  # smallest sample bound is about N / SPAN


def sample_points(N: int, count: int) -> list[int]:
    """``count`` distinct bounds in ``[1, N]``, geometric between ``N/SPAN`` and ``N``."""
    count = min(count, N)
    lo = max(1.0, N / SPAN)
    if count == 1:
        return [N]
    pts = set()
    for i in range(count):
        pts.add(int(round(N * (lo / N) ** (i / (count - 1)))))
    pts = sorted(pts)
    # rounding collisions: fill with the largest unused bounds
    cand = N
    while len(pts) < count:
        if cand not in pts:
            pts.append(cand)
        cand -= 1
    return sorted(pts)


def plan(cfg: EvalConfig, log_degree: int) -> tuple[int, int]:
    """Resolve ``(powers, log_degree)`` for a tail from the config."""
    d = cfg.log_degree if cfg.log_degree is not None else log_degree
    if cfg.points is None:
        powers = DEFAULT_POWERS
    else:
        powers = max(1, (cfg.points - 1) // (d + 1))
    powers = max(1, min(powers, (cfg.terms - 1) // (d + 1)))
    return powers, d


def fit_limit(sums: dict[int, object], exponent, log_degree: int, powers: int):
    """Limit of the model fitted exactly through the largest ``1 + powers*(d+1)`` bounds."""
    need = 1 + powers * (log_degree + 1)
    pts = sorted(sums)[-need:]
    rows = []
    for M in pts:
        logM = mpmath.log(M)
        row = [1]
        for j in range(powers):
            base = mpmath.power(M, -(exponent + j))
            row.extend(base * logM**i for i in range(log_degree + 1))
        rows.append(row)
    with mpmath.workprec(2 * mpmath.mp.prec):
        sol = mpmath.lu_solve(mpmath.matrix(rows), mpmath.matrix([sums[M] for M in pts]))
    return sol[0]


def points_needed(cfg: EvalConfig, log_degree: int) -> list[int]:
    if cfg.extrapolation == "none":
        return sorted({cfg.terms, max(1, cfg.terms // 2)})
    powers, d = plan(cfg, log_degree)
    return sample_points(cfg.terms, 1 + powers * (d + 1))


def partial_sums_at(terms, points) -> dict[int, object]:
    """Cumulative sums of ``terms[1..]`` recorded at each bound in ``points``."""
    wanted = set(points)
    out, acc = {}, 0
    for n in range(1, max(points) + 1):
        acc += terms[n]
        if n in wanted:
            out[n] = acc
    return out


def extrapolate(sums: dict[int, object], exponent, log_degree: int, cfg: EvalConfig):
    """Return ``(value, error_estimate)`` for the limit of the partial sums."""
    N = max(sums)
    if cfg.extrapolation == "none":
        value = sums[N]
        half = max(M for M in sums if M <= max(1, N // 2)) if len(sums) > 1 else N
        return value, 4 * abs(sums[N] - sums[half])
    powers, d = plan(cfg, log_degree)
    powers = min(powers, (len(sums) - 1) // (d + 1))
    if powers < 1:
        return sums[N], mpmath.inf
    value = fit_limit(sums, exponent, d, powers)
    if powers >= 2:
        coarse = fit_limit(sums, exponent, d, powers - 1)
    else:
        coarse = sums[N]
    err = 4 * abs(value - coarse)
    # rounding floor of the working precision
    err = max(err, abs(value) * mpmath.mpf(2) ** (-mpmath.mp.prec + 8))
    return value, err


__all__ = ["extrapolate", "fit_limit", "partial_sums_at", "points_needed", "sample_points", "plan"]
