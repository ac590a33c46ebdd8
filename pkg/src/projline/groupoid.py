"""The groupoid ``(Z^2 x| Zbar^2)`` restricted to the boundary of the positive cone.

Units are pairs ``(p, q)`` of extended naturals with at least one coordinate
equal to :data:`INF`. An arrow ``(m, l)`` at source ``(p, q)`` has range
``(p + m, q + l)``; ``INF`` absorbs every integer.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Union

from .errors import InvalidArrow, NotComposable


class Infinity:
    """The point at infinity of ``Zbar``. Use the singleton :data:`INF`."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "INF"

    def __add__(self, other):
        if isinstance(other, int):
            return self
        return NotImplemented

    __radd__ = __add__

    def __reduce__(self):
        return (Infinity, ())


INF = Infinity()

ExtendedNat = Union[int, Infinity]


def ext_add(x: ExtendedNat, m: int) -> ExtendedNat:
    return x if x is INF else x + m


def is_extended_nat(x) -> bool:
    return x is INF or (isinstance(x, int) and not isinstance(x, bool) and x >= 0)


def ext_to_json(x: ExtendedNat):
    return "inf" if x is INF else x


def ext_from_json(obj) -> ExtendedNat:
    if obj == "inf":
        return INF
    if isinstance(obj, int) and not isinstance(obj, bool) and obj >= 0:
        return obj
    raise ValueError(f"not an extended natural: {obj!r}")


@dataclass(frozen=True)
class UnitPoint:
    p: ExtendedNat
    q: ExtendedNat

    def __post_init__(self):
        if not (is_extended_nat(self.p) and is_extended_nat(self.q)):
            raise InvalidArrow(f"coordinates must be in Zbar_>=: ({self.p}, {self.q})")
        if self.p is not INF and self.q is not INF:
            raise InvalidArrow(f"({self.p}, {self.q}) lies in Z_>=^2, not in the unit space")

    @property
    def axis(self) -> str:
        """``"axis1"`` for ``(p, INF)``, ``"axis2"`` for ``(INF, q)``, else ``"corner"``."""
        if self.p is INF and self.q is INF:
            return "corner"
        return "axis1" if self.q is INF else "axis2"


def in_unit_space(p: ExtendedNat, q: ExtendedNat) -> bool:
    return is_extended_nat(p) and is_extended_nat(q) and (p is INF or q is INF)


@dataclass(frozen=True)
class Arrow:
    m: int
    l: int
    source: UnitPoint

    @property
    def range(self) -> UnitPoint:
        return UnitPoint(ext_add(self.source.p, self.m), ext_add(self.source.q, self.l))

    @property
    def degree(self) -> int:
        return self.m + self.l

    def to_json(self) -> dict:
        return {
            "m": self.m,
            "l": self.l,
            "p": ext_to_json(self.source.p),
            "q": ext_to_json(self.source.q),
        }

    @classmethod
    def from_json(cls, obj) -> "Arrow":
        try:
            return validate_arrow(
                int(obj["m"]), int(obj["l"]),
                UnitPoint(ext_from_json(obj["p"]), ext_from_json(obj["q"])),
            )
        except (KeyError, TypeError) as exc:
            raise ValueError(f"bad arrow {obj!r}") from exc


def validate_arrow(m: int, l: int, source: UnitPoint) -> Arrow:
    """Build the arrow ``(m, l)`` at ``source``, checking its range is a unit."""
    p, q = ext_add(source.p, m), ext_add(source.q, l)
    if not in_unit_space(p, q):
        raise InvalidArrow(f"range ({p}, {q}) of ({m}, {l}) at {source} is not a unit")
    return Arrow(m, l, source)


def unit_arrow(x: UnitPoint) -> Arrow:
    return Arrow(0, 0, x)


def compose(second: Arrow, first: Arrow) -> Arrow:
    """``second o first``; requires ``source(second) == range(first)``."""
    if second.source != first.range:
        raise NotComposable(f"range {first.range} of first != source {second.source} of second")
    return Arrow(first.m + second.m, first.l + second.l, first.source)


def inverse(a: Arrow) -> Arrow:
    return Arrow(-a.m, -a.l, a.range)


@dataclass(frozen=True)
class DegreeSlice:
    """Arrows with ``m + l == k``."""

    k: int

    def contains(self, m: int, l: int) -> bool:
        return m + l == self.k


@dataclass(frozen=True)
class Diagonal:
    """Arrows with ``m == l``: the groupoid behind the Podles sphere."""

    def contains(self, m: int, l: int) -> bool:
        return m == l


SubgroupoidSelector = Union[DegreeSlice, Diagonal]


def in_subgroupoid(a: Arrow, s: SubgroupoidSelector) -> bool:
    return s.contains(a.m, a.l)
