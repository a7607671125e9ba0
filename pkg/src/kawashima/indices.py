"""Exact combinatorics of indices and formal linear combinations of indices.

An index is a plain tuple of positive integers, ``()`` being the empty index.
Formal rational combinations of indices are :class:`IndexVector` instances.
"""

from __future__ import annotations

import json
from collections.abc import Iterable, Iterator, Mapping
from dataclasses import dataclass
from fractions import Fraction
from itertools import product as _cartesian

from .errors import DomainError

Index = tuple[int, ...]

EMPTY: Index = ()


def as_index(parts: Iterable[int]) -> Index:
    """Validate ``parts`` and return them as an index tuple."""
    k = tuple(parts)
    for pos, part in enumerate(k):
        if isinstance(part, bool) or not isinstance(part, int):
            raise DomainError(f"index part {pos} is not an integer: {part!r}")
        if part < 1:
            raise DomainError(f"index part {pos} must be positive, got {part}")
    return k


def weight(k: Index) -> int:
    return sum(k)


def depth(k: Index) -> int:
    return len(k)


def _require_nonempty(k: Index, what: str) -> None:
    if not k:
        raise DomainError(f"{what} is undefined for the empty index")


def render_index(k: Index) -> str:
    return ",".join(str(p) for p in k)


def ones(m: int) -> Index:
    return (1,) * m


def compositions(w: int) -> Iterator[Index]:
    """All indices of weight ``w`` in lexicographic order."""
    if w == 0:
        yield ()
        return
    for first in range(1, w + 1):
        for rest in compositions(w - first):
            yield (first,) + rest


def indices_up_to(max_weight: int) -> list[Index]:
    """Nonempty indices of weight at most ``max_weight``, canonically sorted."""
    out = [k for w in range(1, max_weight + 1) for k in compositions(w)]
    return sorted(out)


# --- A-sets, duality -------------------------------------------------------


def a_set(k: Index) -> frozenset[int]:
    """Proper partial sums ``{k1, k1+k2, ..., k1+...+k_{r-1}}``."""
    _require_nonempty(k, "A(k)")
    acc, out = 0, []
    for part in k[:-1]:
        acc += part
        out.append(acc)
    return frozenset(out)


def from_a_set(cuts: Iterable[int], total: int) -> Index:
    """Inverse of :func:`a_set` for a given weight."""
    bounds = [0, *sorted(cuts), total]
    parts = tuple(b - a for a, b in zip(bounds, bounds[1:]))
    return as_index(parts)


def weak_steps(k: Index) -> tuple[bool, ...]:
    """Summation constraint keyed off ``A(k)``.

    Entry ``j-1`` describes the step between ``n_j`` and ``n_{j+1}`` for
    ``j = 1..wt(k)-1``: ``True`` means ``n_j <= n_{j+1}`` (``j`` in ``A(k)``),
    ``False`` means ``n_j < n_{j+1}``. Shared by every constrained nested sum
    in the package.
    """
    cuts = a_set(k)
    return tuple(j in cuts for j in range(1, weight(k)))


def hoffman_dual(k: Index) -> Index:
    _require_nonempty(k, "the Hoffman dual")
    w = weight(k)
    complement = set(range(1, w)) - a_set(k)
    return from_a_set(complement, w)


def reverse(k: Index) -> Index:
    return tuple(reversed(k))


def is_admissible(k: Index) -> bool:
    return not k or k[-1] > 1


def abscissa_rho(k: Index) -> int:
    """``rho`` such that the Newton series of ``F_k`` converges for ``Re z > -rho``."""
    _require_nonempty(k, "rho")
    return hoffman_dual(k)[-1]


def rho_closed_form(k: Index) -> int:
    """``rho`` from the trailing run of ones; ``l+1`` if a part > 1 precedes it, else ``l``."""
    _require_nonempty(k, "rho")
    trailing = 0
    for part in reversed(k):
        if part != 1:
            break
        trailing += 1
    return trailing if trailing == len(k) else trailing + 1


@dataclass(frozen=True)
class IndexWord:
    """Bit-word ``delta(1..k-1)`` of an index of weight ``k``; ``delta(j) = 1`` iff ``j`` in ``A(k)``."""

    deltas: tuple[int, ...]
    weight: int

    def __post_init__(self):
        if self.weight < 1 or len(self.deltas) != self.weight - 1:
            raise DomainError("word length must equal weight - 1")
        if any(d not in (0, 1) for d in self.deltas):
            raise DomainError("word letters must be 0 or 1")

    @classmethod
    def from_index(cls, k: Index) -> IndexWord:
        return cls(tuple(int(w) for w in weak_steps(k)), weight(k))

    def to_index(self) -> Index:
        cuts = [j for j, d in enumerate(self.deltas, start=1) if d]
        return from_a_set(cuts, self.weight)

    def dual(self) -> IndexWord:
        return IndexWord(tuple(1 - d for d in self.deltas), self.weight)


# --- formal linear combinations --------------------------------------------


def _coerce_coef(c) -> Fraction:
    if isinstance(c, Fraction):
        return c
    if isinstance(c, (int, str)):
        return Fraction(c)
    raise TypeError(f"coefficients must be rational, got {type(c).__name__}")


class IndexVector(Mapping):
    """Finite rational combination of indices; zero coefficients are never stored.

    Iteration follows the canonical (lexicographic) order of indices, so equal
    vectors serialize identically.
    """

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping | Iterable | None = None):
        acc: dict[Index, Fraction] = {}
        items = terms.items() if isinstance(terms, Mapping) else (terms or ())
        for k, c in items:
            k = as_index(k)
            acc[k] = acc.get(k, Fraction(0)) + _coerce_coef(c)
        self._terms = {k: acc[k] for k in sorted(acc) if acc[k] != 0}

    @classmethod
    def of(cls, x) -> IndexVector:
        """Coerce an index (tuple/list) or an existing vector."""
        if isinstance(x, IndexVector):
            return x
        return cls({as_index(x): 1})

    def __getitem__(self, k):
        return self._terms[tuple(k)]

    def __iter__(self):
        return iter(self._terms)

    def __len__(self):
        return len(self._terms)

    def __eq__(self, other):
        if isinstance(other, IndexVector):
            return self._terms == other._terms
        if isinstance(other, Mapping):
            return self == IndexVector(other)
        if other == 0:
            return not self._terms
        return NotImplemented

    def __hash__(self):
        return hash(tuple(self._terms.items()))

    def __add__(self, other):
        other = IndexVector.of(other)
        merged = dict(self._terms)
        for k, c in other._terms.items():
            merged[k] = merged.get(k, Fraction(0)) + c
        return IndexVector(merged)

    __radd__ = __add__

    def __neg__(self):
        return IndexVector({k: -c for k, c in self._terms.items()})

    def __sub__(self, other):
        return self + (-IndexVector.of(other))

    def __rsub__(self, other):
        return IndexVector.of(other) - self

    def __mul__(self, scalar):
        if isinstance(scalar, (IndexVector, tuple, list)):
            return NotImplemented
        s = _coerce_coef(scalar)
        return IndexVector({k: s * c for k, c in self._terms.items()})

    __rmul__ = __mul__

    def weights(self) -> set[int]:
        return {weight(k) for k in self._terms}

    def __repr__(self):
        return f"IndexVector({self})"

    def __str__(self):
        if not self._terms:
            return "0"
        chunks = []
        for i, (k, c) in enumerate(self._terms.items()):
            sign = "-" if c < 0 else "+"
            mag = abs(c)
            body = f"({render_index(k)})"
            if mag != 1:
                body = f"{mag}{body}"
            if i == 0:
                chunks.append(body if sign == "+" else f"-{body}")
            else:
                chunks.append(f" {sign} {body}")
        return "".join(chunks)

    def to_json(self) -> list[dict]:
        return [
            {"coef": f"{c.numerator}/{c.denominator}", "index": list(k)}
            for k, c in self._terms.items()
        ]

    def dumps(self) -> str:
        return json.dumps(self.to_json(), separators=(",", ":"))

    @classmethod
    def from_json(cls, data) -> IndexVector:
        if isinstance(data, str):
            data = json.loads(data)
        return cls((tuple(t["index"]), Fraction(t["coef"])) for t in data)


def linear_map(v, f) -> IndexVector:
    """Extend ``f: Index -> IndexVector`` linearly to ``v``."""
    out: dict[Index, Fraction] = {}
    for k, c in IndexVector.of(v).items():
        for kk, cc in IndexVector.of(f(k)).items():
            out[kk] = out.get(kk, Fraction(0)) + c * cc
    return IndexVector(out)


def dual_vector(v) -> IndexVector:
    return linear_map(v, hoffman_dual)


def _star_single(k: Index) -> IndexVector:
    _require_nonempty(k, "the star operator")
    r = len(k)
    out: dict[Index, int] = {}
    for cuts in _cartesian((False, True), repeat=r - 1):
        parts, acc = [], k[0]
        for cut, part in zip(cuts, k[1:]):
            if cut:
                parts.append(acc)
                acc = part
            else:
                acc += part
        parts.append(acc)
        key = tuple(parts)
        out[key] = out.get(key, 0) + 1
    return IndexVector(out)


def star_expand(v) -> IndexVector:
    """Linear star operator: sum over all groupings of adjacent parts."""
    return linear_map(v, _star_single)


# --- harmonic products -----------------------------------------------------


def _stuffle(k: Index, l: Index, sign: int, memo: dict) -> dict[Index, int]:
    if not k:
        return {l: 1}
    if not l:
        return {k: 1}
    key = (k, l)
    if key in memo:
        return memo[key]
    out: dict[Index, int] = {}

    def put(terms, last, scale):
        for t, c in terms.items():
            kk = t + (last,)
            out[kk] = out.get(kk, 0) + scale * c

    put(_stuffle(k[:-1], l, sign, memo), k[-1], 1)
    put(_stuffle(k, l[:-1], sign, memo), l[-1], 1)
    put(_stuffle(k[:-1], l[:-1], sign, memo), k[-1] + l[-1], sign)
    out = {t: c for t, c in out.items() if c}
    memo[key] = out
    return out


def _bilinear(v, w, single) -> IndexVector:
    out: dict[Index, Fraction] = {}
    for k, a in IndexVector.of(v).items():
        for l, b in IndexVector.of(w).items():
            for t, c in single(k, l).items():
                out[t] = out.get(t, Fraction(0)) + a * b * c
    return IndexVector(out)


def harmonic_product(v, w) -> IndexVector:
    """The harmonic (stuffle) product ``*``; the fused term enters with ``+``."""
    memo: dict = {}
    return _bilinear(v, w, lambda k, l: _stuffle(k, l, 1, memo))


def harmonic_bar_product(v, w) -> IndexVector:
    """The product ``*bar``: same recursion as ``*`` with the fused term negated."""
    memo: dict = {}
    return _bilinear(v, w, lambda k, l: _stuffle(k, l, -1, memo))


def circled_star_product(v, w) -> IndexVector:
    """``k (*) l = (k_- * l_-, k_r + l_s)`` extended bilinearly; nonempty indices only."""
    memo: dict = {}

    def single(k, l):
        _require_nonempty(k, "the circled-star product")
        _require_nonempty(l, "the circled-star product")
        fused = k[-1] + l[-1]
        return {t + (fused,): c for t, c in _stuffle(k[:-1], l[:-1], 1, memo).items()}

    return _bilinear(v, w, single)
