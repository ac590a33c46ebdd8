"""Unitary-equivalence classes of projections and their monoid under direct sum.

Three families of representatives, in the notation ``I~`` for the unit of
``(K + K)^+``, ``I~_n`` for its ``n x n`` identity and ``P_m`` for the rank-``m``
coordinate projection:

* ``RankZero(m, l)``   ``P_m + P_l``
* ``Positive(n, j)``   ``I~_n (+) (P_j + 0)``
* ``Deficient(n, k)``  ``I~_{n-1} (+) (I~ - (P_k + 0))``, ``k >= 1``

The product tables differ between the quantum projective line and the Podles
sphere only in how a rank-zero class acts.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import List, Optional, Union

from .algebra import UNIT, cofinite_block, finite_block
from .matrices import ElementMatrix


class Geometry(enum.Enum):
    PROJLINE = "projline"
    PODLES = "podles"

    @classmethod
    def parse(cls, s: Union[str, "Geometry"]) -> "Geometry":
        if isinstance(s, Geometry):
            return s
        try:
            return cls(str(s).lower())
        except ValueError:
            raise ValueError(f"unknown geometry {s!r}; expected 'projline' or 'podles'") from None


def _nonneg(name, v, low=0):
    if not isinstance(v, int) or isinstance(v, bool) or v < low:
        raise ValueError(f"{name} must be an integer >= {low}, got {v!r}")


@dataclass(frozen=True)
class RankZero:
    m: int
    l: int

    def __post_init__(self):
        _nonneg("m", self.m)
        _nonneg("l", self.l)


@dataclass(frozen=True)
class Positive:
    n: int
    j: int

    def __post_init__(self):
        _nonneg("n", self.n, 1)
        _nonneg("j", self.j)


@dataclass(frozen=True)
class Deficient:
    """``I~_{n-1} (+) (I~ - (P_k + 0))``. ``Deficient(n, 0)`` evaluates to ``Positive(n, 0)``."""

    n: int
    k: int

    def __new__(cls, n, k):
        if k == 0 and not isinstance(k, bool):
            return Positive(n, 0)
        return super().__new__(cls)

    def __post_init__(self):
        _nonneg("n", self.n, 1)
        _nonneg("k", self.k, 1)


ProjClass = Union[RankZero, Positive, Deficient]

IDENTITY = RankZero(0, 0)


def rank(c: ProjClass) -> int:
    return 0 if isinstance(c, RankZero) else c.n


def class_of_rank(n: int, d: int) -> ProjClass:
    """The rank-``n`` class (``n >= 1``) whose ``[e11 + 0]`` coordinate in ``K_0`` is ``d``."""
    return Positive(n, d) if d >= 0 else Deficient(n, -d)


def _rank0_times_positive(a: RankZero, b: Positive, g: Geometry) -> ProjClass:
    m, l, n, j = a.m, a.l, b.n, b.j
    if g is Geometry.PROJLINE:
        return Positive(n, m + l + j)
    if m + j >= l:
        return Positive(n, m + j - l)
    return Deficient(n, l - m - j)


def _positive_times_deficient(a: Positive, b: Deficient) -> ProjClass:
    n, j, n2, k = a.n, a.j, b.n, b.k
    if j >= k:
        return Positive(n + n2, j - k)
    return Deficient(n + n2, k - j)


def _rank0_times_deficient(a: RankZero, b: Deficient, g: Geometry) -> ProjClass:
    m, l, n, k = a.m, a.l, b.n, b.k
    if g is Geometry.PROJLINE:
        if m + l >= k:
            return Positive(n, m + l - k)
        return Deficient(n, k - m - l)
    if m >= k + l:
        return Positive(n, m - k - l)
    return Deficient(n, k + l - m)


def monoid_mul(a: ProjClass, b: ProjClass, g: Geometry = Geometry.PROJLINE) -> ProjClass:
    """Class of the direct sum ``a (+) b``."""
    g = Geometry.parse(g)
    if type(a) is type(b):
        if isinstance(a, RankZero):
            return RankZero(a.m + b.m, a.l + b.l)
        if isinstance(a, Positive):
            return Positive(a.n + b.n, a.j + b.j)
        return Deficient(a.n + b.n, a.k + b.k)
    # order the pair as RankZero < Positive < Deficient
    order = {RankZero: 0, Positive: 1, Deficient: 2}
    if order[type(a)] > order[type(b)]:
        a, b = b, a
    if isinstance(a, RankZero) and isinstance(b, Positive):
        return _rank0_times_positive(a, b, g)
    if isinstance(a, Positive):
        return _positive_times_deficient(a, b)
    return _rank0_times_deficient(a, b, g)


def monoid_product(classes, g: Geometry = Geometry.PROJLINE) -> ProjClass:
    out: ProjClass = IDENTITY
    for c in classes:
        out = monoid_mul(out, c, g)
    return out


def line_bundle_class(k: int) -> ProjClass:
    """Class of the degree-``k`` line bundle over the quantum projective line."""
    if k > 0:
        return Deficient(1, k)
    return Positive(1, -k)


def enumerate_rank_one(bound: int) -> List[ProjClass]:
    _nonneg("bound", bound)
    return [Positive(1, j) for j in range(bound + 1)] + [Deficient(1, k) for k in range(1, bound + 1)]


def line_bundle_degree(c: ProjClass) -> Optional[int]:
    """Inverse of :func:`line_bundle_class` on rank-one classes; ``None`` otherwise."""
    if isinstance(c, Positive) and c.n == 1:
        return -c.j
    if isinstance(c, Deficient) and c.n == 1:
        return c.k
    return None


@dataclass(frozen=True)
class CancellationResult:
    cancels: bool
    product: Optional[ProjClass] = None  # the shared product when cancellation fails

    def __str__(self):
        return "Cancels" if self.cancels else f"FailsWithWitness({self.product})"


def cancellation_check(a: ProjClass, b: ProjClass, c: ProjClass,
                       g: Geometry = Geometry.PROJLINE) -> CancellationResult:
    """Does ``a (+) c == b (+) c`` force ``a == b`` for this triple?"""
    ac = monoid_mul(a, c, g)
    if a == b or ac != monoid_mul(b, c, g):
        return CancellationResult(True)
    return CancellationResult(False, ac)


def representative_matrix(c: ProjClass) -> ElementMatrix:
    """Explicit diagonal projection over the algebra realising ``c``."""
    if isinstance(c, RankZero):
        return ElementMatrix.diag([finite_block(c.m, c.l)])
    if isinstance(c, Positive):
        tail = [finite_block(c.j, 0)] if c.j else []
        return ElementMatrix.diag([UNIT] * c.n + tail)
    return ElementMatrix.diag([UNIT] * (c.n - 1) + [cofinite_block(c.k, 0)])


def to_json(c: ProjClass) -> dict:
    if isinstance(c, RankZero):
        return {"type": "rank0", "m": c.m, "l": c.l}
    if isinstance(c, Positive):
        return {"type": "positive", "n": c.n, "j": c.j}
    return {"type": "deficient", "n": c.n, "k": c.k}


def from_json(obj) -> ProjClass:
    try:
        kind = obj["type"]
        if kind == "rank0":
            return RankZero(obj["m"], obj["l"])
        if kind == "positive":
            return Positive(obj["n"], obj["j"])
        if kind == "deficient":
            return Deficient(obj["n"], obj["k"])
    except (KeyError, TypeError) as exc:
        raise ValueError(f"malformed class JSON {obj!r}") from exc
    raise ValueError(f"unknown class type {obj.get('type')!r}")


def parse_compact(text: str) -> ProjClass:
    """Parse ``rank0(1,2)``, ``positive(1,3)`` or ``deficient(2,1)``."""
    s = text.strip().replace(" ", "")
    for name, cls in (("rank0", RankZero), ("positive", Positive), ("deficient", Deficient)):
        if s.startswith(name + "(") and s.endswith(")"):
            try:
                x, y = (int(t) for t in s[len(name) + 1:-1].split(","))
            except ValueError:
                break
            return cls(x, y)
    raise ValueError(f"cannot parse class {text!r}")


def format_compact(c: ProjClass) -> str:
    d = to_json(c)
    args = [v for k, v in d.items() if k != "type"]
    return f"{d['type']}({args[0]},{args[1]})"
