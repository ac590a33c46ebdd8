"""Exact convolution *-algebra of compactly supported functions on the groupoid.

An element is a finite map from group parts ``(m, l)`` to :class:`SliceFn`.
A slice function records the values on the two axes of the unit space,
``(p, INF)`` and ``(INF, q)``, as finite sequences followed by a constant
tail, plus the value at the corner ``(INF, INF)``. Continuity at the corner
forces both tails to equal the corner value, so only the corner is stored.

Axis-1 values of slice ``(m, l)`` are indexed from ``p = max(0, -m)``, the
first source whose range stays in ``Z_>=``; axis-2 values from
``q = max(0, -l)``.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Dict, Iterable, Mapping, Tuple

from . import scalars
from .errors import BadParameter, DomainError, NotDegreeGraded
from .groupoid import INF, Arrow
from .scalars import Scalar, conj

GroupPart = Tuple[int, int]


def start(m: int) -> int:
    """First admissible source coordinate for a slice with group coordinate ``m``."""
    return -m if m < 0 else 0


def _trim(values: Iterable[Scalar], tail: Scalar) -> tuple:
    vals = list(values)
    while vals and vals[-1] == tail:
        vals.pop()
    return tuple(vals)


class SliceFn:
    """Eventually-constant function on the source set of one group slice."""

    __slots__ = ("axis1", "axis2", "corner", "_hash")

    def __init__(self, axis1=(), axis2=(), corner: Scalar = 0):
        corner = scalars.as_scalar(corner)
        self.axis1 = _trim((scalars.as_scalar(v) for v in axis1), corner)
        self.axis2 = _trim((scalars.as_scalar(v) for v in axis2), corner)
        self.corner = corner
        self._hash = None

    @classmethod
    def _raw(cls, axis1: tuple, axis2: tuple, corner: Scalar) -> "SliceFn":
        # caller guarantees trimmed tuples of exact scalars
        obj = object.__new__(cls)
        obj.axis1 = axis1
        obj.axis2 = axis2
        obj.corner = corner
        obj._hash = None
        return obj

    def is_zero(self) -> bool:
        return self.corner == 0 and not self.axis1 and not self.axis2

    def at1(self, index: int) -> Scalar:
        """Axis-1 value at ``index`` positions past the domain start."""
        return self.axis1[index] if index < len(self.axis1) else self.corner

    def at2(self, index: int) -> Scalar:
        return self.axis2[index] if index < len(self.axis2) else self.corner

    def scale(self, c: Scalar) -> "SliceFn":
        return SliceFn._raw(
            _trim((c * v for v in self.axis1), c * self.corner),
            _trim((c * v for v in self.axis2), c * self.corner),
            c * self.corner,
        )

    def conjugate(self) -> "SliceFn":
        return SliceFn._raw(
            tuple(conj(v) for v in self.axis1),
            tuple(conj(v) for v in self.axis2),
            conj(self.corner),
        )

    def __add__(self, other: "SliceFn") -> "SliceFn":
        corner = self.corner + other.corner
        return SliceFn._raw(
            _add_axis(self.axis1, self.corner, other.axis1, other.corner, corner),
            _add_axis(self.axis2, self.corner, other.axis2, other.corner, corner),
            corner,
        )

    def __eq__(self, other):
        if not isinstance(other, SliceFn):
            return NotImplemented
        return (self.corner == other.corner and self.axis1 == other.axis1
                and self.axis2 == other.axis2)

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.axis1, self.axis2, self.corner))
        return self._hash

    def __repr__(self):
        return f"SliceFn(axis1={list(self.axis1)}, axis2={list(self.axis2)}, corner={self.corner})"


def _add_axis(v1: tuple, t1: Scalar, v2: tuple, t2: Scalar, tail: Scalar) -> tuple:
    n = max(len(v1), len(v2))
    out = [
        (v1[i] if i < len(v1) else t1) + (v2[i] if i < len(v2) else t2)
        for i in range(n)
    ]
    return _trim(out, tail)


class AlgebraElement:
    """Finite sum of slice functions; immutable, hashable, zero slices pruned."""

    __slots__ = ("slices", "_hash")

    def __init__(self, slices: Mapping[GroupPart, SliceFn] = None):
        clean: Dict[GroupPart, SliceFn] = {}
        for key, fn in (slices or {}).items():
            if not fn.is_zero():
                clean[(int(key[0]), int(key[1]))] = fn
        self.slices = clean
        self._hash = None

    def is_zero(self) -> bool:
        return not self.slices

    def support(self) -> list:
        return sorted(self.slices)

    def degrees(self) -> set:
        return {m + l for m, l in self.slices}

    def slice(self, m: int, l: int) -> SliceFn:
        return self.slices.get((m, l), _ZERO_SLICE)

    def value(self, arrow: Arrow) -> Scalar:
        """Evaluate at an arrow of the groupoid."""
        fn = self.slice(arrow.m, arrow.l)
        p, q = arrow.source.p, arrow.source.q
        if p is INF and q is INF:
            return fn.corner
        if q is INF:
            return fn.at1(p - start(arrow.m))
        return fn.at2(q - start(arrow.l))

    def value_at(self, m: int, l: int, p, q) -> Scalar:
        """Evaluate at ``(m, l)`` over source ``(p, q)``; below-domain sources raise."""
        if p is not INF and p < start(m):
            raise DomainError(f"p={p} below domain start {start(m)} of slice ({m}, {l})")
        if q is not INF and q < start(l):
            raise DomainError(f"q={q} below domain start {start(l)} of slice ({m}, {l})")
        fn = self.slice(m, l)
        if p is INF and q is INF:
            return fn.corner
        if q is INF:
            return fn.at1(p - start(m))
        return fn.at2(q - start(l))

    def extent(self) -> int:
        """Largest group coordinate or value-sequence length; bounds truncation effects."""
        e = 0
        for (m, l), fn in self.slices.items():
            e = max(e, abs(m), abs(l), start(m) + len(fn.axis1), start(l) + len(fn.axis2))
        return e

    def __eq__(self, other):
        if not isinstance(other, AlgebraElement):
            return NotImplemented
        return self.slices == other.slices

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self.slices.items()))
        return self._hash

    def __repr__(self):
        if not self.slices:
            return "AlgebraElement(0)"
        parts = ", ".join(f"{k}: {v!r}" for k, v in sorted(self.slices.items()))
        return f"AlgebraElement({{{parts}}})"

    # operator sugar over the module-level functions
    def __add__(self, other):
        return linear_combine(1, self, 1, other)

    def __sub__(self, other):
        return linear_combine(1, self, -1, other)

    def __neg__(self):
        return scale(-1, self)

    def __mul__(self, other):
        if isinstance(other, AlgebraElement):
            return convolve(self, other)
        return NotImplemented

    def __rmul__(self, c):
        return scale(scalars.as_scalar(c), self)

    @property
    def dagger(self) -> "AlgebraElement":
        return involute(self)


_ZERO_SLICE = SliceFn._raw((), (), 0)
ZERO = AlgebraElement()


def _axis_product(fv: tuple, fc: Scalar, a: int, gv: tuple, gc: Scalar, b: int):
    """One axis of ``f_a * g_b`` on slice ``a + b`` (one group coordinate).

    At source ``x`` the only factorisation is ``g`` at ``x`` followed by ``f`` at
    ``x + b``; it exists when ``x >= start(b)``. Past the point where both factors
    sit in their tails the product is the constant ``fc * gc``, so the returned
    sequence stops there.
    """
    c0 = start(a + b)
    sb = start(b)
    lo = c0 if c0 > sb else sb
    shift = b - start(a)  # f index = x + shift
    end = max(lo, sb + len(gv), len(fv) - shift)
    out = [0] * (lo - c0)
    nf, ng = len(fv), len(gv)
    for x in range(lo, end):
        i = x + shift
        j = x - sb
        out.append((fv[i] if i < nf else fc) * (gv[j] if j < ng else gc))
    return out


@lru_cache(maxsize=1 << 16)
def _convolve_cached(f: AlgebraElement, g: AlgebraElement) -> AlgebraElement:
    acc: Dict[GroupPart, list] = {}
    for (am, al), fa in f.slices.items():
        for (bm, bl), gb in g.slices.items():
            key = (am + bm, al + bl)
            v1 = _axis_product(fa.axis1, fa.corner, am, gb.axis1, gb.corner, bm)
            v2 = _axis_product(fa.axis2, fa.corner, al, gb.axis2, gb.corner, bl)
            corner = fa.corner * gb.corner
            prev = acc.get(key)
            if prev is None:
                acc[key] = [v1, v2, corner]
            else:
                pv1, pv2, pc = prev
                prev[0] = _sum_lists(pv1, pc, v1, corner)
                prev[1] = _sum_lists(pv2, pc, v2, corner)
                prev[2] = pc + corner
    return AlgebraElement({
        key: SliceFn._raw(_trim(v1, c), _trim(v2, c), c) for key, (v1, v2, c) in acc.items()
    })


def _sum_lists(v1: list, t1: Scalar, v2: list, t2: Scalar) -> list:
    n = max(len(v1), len(v2))
    return [
        (v1[i] if i < len(v1) else t1) + (v2[i] if i < len(v2) else t2)
        for i in range(n)
    ]


def convolve(f: AlgebraElement, g: AlgebraElement) -> AlgebraElement:
    """Groupoid convolution ``(f*g)(x) = sum over x = y z of f(y) g(z)``."""
    if not f.slices or not g.slices:
        return ZERO
    if f is UNIT:
        return g
    if g is UNIT:
        return f
    return _convolve_cached(f, g)


def involute(f: AlgebraElement) -> AlgebraElement:
    """``f*(x) = conj(f(x^-1))``.

    Inverting ``(m, l)`` at source ``s`` gives ``(-m, -l)`` at ``s + (m, l)``; the
    domain starts line up so the value sequences carry over unchanged.
    """
    if f is UNIT:
        return UNIT
    return AlgebraElement({(-m, -l): fn.conjugate() for (m, l), fn in f.slices.items()})


def scale(c: Scalar, f: AlgebraElement) -> AlgebraElement:
    if c == 0:
        return ZERO
    return AlgebraElement({k: fn.scale(c) for k, fn in f.slices.items()})


def linear_combine(a: Scalar, f: AlgebraElement, b: Scalar, g: AlgebraElement) -> AlgebraElement:
    """Pointwise ``a*f + b*g``."""
    a = scalars.as_scalar(a)
    b = scalars.as_scalar(b)
    out: Dict[GroupPart, SliceFn] = {}
    if a != 0:
        for k, fn in f.slices.items():
            out[k] = fn if a == 1 else fn.scale(a)
    if b != 0:
        for k, fn in g.slices.items():
            term = fn if b == 1 else fn.scale(b)
            out[k] = out[k] + term if k in out else term
    return AlgebraElement(out)


def add(*terms: AlgebraElement) -> AlgebraElement:
    out: Dict[GroupPart, SliceFn] = {}
    for t in terms:
        for k, fn in t.slices.items():
            out[k] = out[k] + fn if k in out else fn
    return AlgebraElement(out)


def power(f: AlgebraElement, t: int) -> AlgebraElement:
    if t < 0:
        raise BadParameter("negative power")
    result = UNIT
    for _ in range(t):
        result = convolve(result, f)
    return result


# -- distinguished elements -------------------------------------------------

UNIT = AlgebraElement({(0, 0): SliceFn._raw((), (), 1)})


def unit() -> AlgebraElement:
    return UNIT


def _check_k(k: int):
    if not isinstance(k, int) or isinstance(k, bool) or k <= 0:
        raise BadParameter(f"k must be a positive integer, got {k!r}")


def chi_a(k: int) -> AlgebraElement:
    """Characteristic function of ``{(k, 0, p, q)}``: an isometry of degree ``k``."""
    _check_k(k)
    return AlgebraElement({(k, 0): SliceFn._raw((), (), 1)})


def chi_b(k: int) -> AlgebraElement:
    """Characteristic function of the units with ``p >= k``, i.e. ``I~ - (P_k + 0)``."""
    _check_k(k)
    return AlgebraElement({(0, 0): SliceFn._raw((0,) * k, (), 1)})


def chi_w() -> AlgebraElement:
    """Lift of the circle generator: forward shift on leg 1, backward shift on leg 2."""
    return AlgebraElement({(1, -1): SliceFn._raw((), (), 1)})


def chi_w_podles() -> AlgebraElement:
    """Lift of the circle generator in the diagonal subgroupoid: forward shift on both legs."""
    return AlgebraElement({(1, 1): SliceFn._raw((), (), 1)})


def e11_leg1() -> AlgebraElement:
    return AlgebraElement({(0, 0): SliceFn._raw((1,), (), 0)})


def e11_leg2() -> AlgebraElement:
    return AlgebraElement({(0, 0): SliceFn._raw((), (1,), 0)})


def generator(i: int) -> AlgebraElement:
    """The sphere generator ``w_i``, supported on the slice ``e_i``."""
    if i == 1:
        return AlgebraElement({(1, 0): SliceFn._raw((), (), 1)})
    if i == 2:
        return AlgebraElement({(0, 1): SliceFn._raw((), (), 1)})
    raise BadParameter(f"generator index must be 1 or 2, got {i!r}")


STANDARD_NAMES = (
    "Unit", "ChiA", "ChiB", "ChiW", "ChiWPodles", "E11Leg1", "E11Leg2", "Generator",
)


def standard_element(name: str, k: int = None) -> AlgebraElement:
    """Look up a distinguished element by name; ``k`` parametrises ChiA/ChiB/Generator."""
    table = {
        "Unit": lambda: UNIT,
        "ChiW": chi_w,
        "ChiWPodles": chi_w_podles,
        "E11Leg1": e11_leg1,
        "E11Leg2": e11_leg2,
    }
    if name in table:
        return table[name]()
    if name == "ChiA":
        return chi_a(k)
    if name == "ChiB":
        return chi_b(k)
    if name == "Generator":
        return generator(k)
    raise BadParameter(f"unknown standard element {name!r}")


def matrix_unit(leg: int, i: int, j: int) -> AlgebraElement:
    """Rank-one ``e_ij`` on one leg of ``l2(Z_>=) + l2(Z_>=)``: sends ``delta_j`` to ``delta_i``."""
    if i < 0 or j < 0:
        raise BadParameter("matrix unit indices must be nonnegative")
    if leg == 1:
        n = i - j
        vals = [0] * (j - start(n)) + [1]
        return AlgebraElement({(n, -n): SliceFn._raw(tuple(vals), (), 0)})
    if leg == 2:
        n = j - i
        vals = [0] * (j - start(-n)) + [1]
        return AlgebraElement({(n, -n): SliceFn._raw((), tuple(vals), 0)})
    raise BadParameter(f"leg must be 1 or 2, got {leg!r}")


def diagonal_element(ones1: Iterable[int], ones2: Iterable[int], cofinite: bool = False) -> AlgebraElement:
    """Diagonal 0/1 element of ``(K + K)^+``.

    With ``cofinite=False`` the given positions carry 1 and everything else 0;
    with ``cofinite=True`` they carry 0 and everything else (corner included) 1.
    """
    on, off = (0, 1) if cofinite else (1, 0)
    s1, s2 = set(ones1), set(ones2)
    v1 = tuple(on if i in s1 else off for i in range(max(s1, default=-1) + 1))
    v2 = tuple(on if i in s2 else off for i in range(max(s2, default=-1) + 1))
    return AlgebraElement({(0, 0): SliceFn(v1, v2, off)})


def finite_block(m: int, l: int) -> AlgebraElement:
    """``P_m + P_l``."""
    return diagonal_element(range(m), range(l))


def cofinite_block(m: int, l: int) -> AlgebraElement:
    """``I~ - (P_m + P_l)``."""
    return diagonal_element(range(m), range(l), cofinite=True)


# -- grading, gauge action, symbol --------------------------------------------

def degree_project(f: AlgebraElement, k: int) -> AlgebraElement:
    return AlgebraElement({key: fn for key, fn in f.slices.items() if key[0] + key[1] == k})


_UNIT_SCALARS = (1, -1, scalars.I, -scalars.I)


def gauge_act(f: AlgebraElement, zeta: Scalar) -> AlgebraElement:
    """Multiply slice ``(m, l)`` by ``zeta**(m + l)``; ``zeta`` must be one of ``1, -1, i, -i``."""
    zeta = scalars.as_scalar(zeta)
    if zeta not in _UNIT_SCALARS:
        raise BadParameter(f"gauge parameter must be a fourth root of unity, got {zeta}")
    out = {}
    for (m, l), fn in f.slices.items():
        c = zeta ** ((m + l) % 4)  # zeta**4 == 1; keeps exponents nonnegative
        out[(m, l)] = fn if c == 1 else fn.scale(scalars.as_scalar(c))
    return AlgebraElement(out)


class LaurentPoly:
    """Finite Laurent polynomial in ``z`` over exact scalars."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Mapping[int, Scalar] = None):
        self.coeffs = {int(n): scalars.as_scalar(c) for n, c in (coeffs or {}).items() if c != 0}

    @classmethod
    def z(cls, n: int = 1) -> "LaurentPoly":
        return cls({n: 1})

    def __eq__(self, other):
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(frozenset(self.coeffs.items()))

    def __add__(self, other):
        out = dict(self.coeffs)
        for n, c in other.coeffs.items():
            out[n] = out.get(n, 0) + c
        return LaurentPoly(out)

    def __mul__(self, other):
        out: Dict[int, Scalar] = {}
        for n1, c1 in self.coeffs.items():
            for n2, c2 in other.coeffs.items():
                out[n1 + n2] = out.get(n1 + n2, 0) + c1 * c2
        return LaurentPoly(out)

    def conj_reflect(self) -> "LaurentPoly":
        """Image under the involution of ``C(T)``: ``z**n -> z**-n`` with conjugated coefficients."""
        return LaurentPoly({-n: conj(c) for n, c in self.coeffs.items()})

    def __repr__(self):
        if not self.coeffs:
            return "0"
        return " + ".join(f"({c})z^{n}" for n, c in sorted(self.coeffs.items()))


def symbol_sigma(f: AlgebraElement) -> LaurentPoly:
    """Restriction to the isotropy group at the corner, as a Laurent polynomial.

    The coefficient of ``z**n`` is the corner value of slice ``(n, -n)``.
    """
    for m, l in f.slices:
        if m + l != 0:
            raise NotDegreeGraded(f"slice ({m}, {l}) has degree {m + l}, expected 0")
    return LaurentPoly({m: fn.corner for (m, l), fn in f.slices.items()})


def symbol_sigma_diagonal(f: AlgebraElement) -> LaurentPoly:
    """Corner symbol on the diagonal subgroupoid: coefficient of ``z**n`` from slice ``(n, n)``."""
    for m, l in f.slices:
        if m != l:
            raise NotDegreeGraded(f"slice ({m}, {l}) is off the diagonal")
    return LaurentPoly({m: fn.corner for (m, l), fn in f.slices.items()})


# -- JSON ----------------------------------------------------------------------

def to_json(f: AlgebraElement) -> dict:
    out = []
    for (m, l), fn in sorted(f.slices.items()):
        tail = scalars.to_json(fn.corner)
        out.append({
            "m": m,
            "l": l,
            "axis1": {"values": [scalars.to_json(v) for v in fn.axis1], "tail": tail},
            "axis2": {"values": [scalars.to_json(v) for v in fn.axis2], "tail": tail},
            "corner": tail,
        })
    return {"slices": out}


def from_json(obj) -> AlgebraElement:
    """Decode an element; tails must agree with the corner value."""
    try:
        items = obj["slices"]
        out: Dict[GroupPart, SliceFn] = {}
        for s in items:
            m, l = s["m"], s["l"]
            if not (isinstance(m, int) and isinstance(l, int)) or isinstance(m, bool) or isinstance(l, bool):
                raise ValueError(f"bad group part ({m!r}, {l!r})")
            corner = scalars.from_json(s["corner"])
            axes = []
            for name in ("axis1", "axis2"):
                ax = s.get(name, {"values": [], "tail": s["corner"]})
                tail = scalars.from_json(ax.get("tail", s["corner"]))
                if tail != corner:
                    raise ValueError(f"{name} tail {tail} differs from corner {corner}")
                axes.append([scalars.from_json(v) for v in ax.get("values", [])])
            fn = SliceFn(axes[0], axes[1], corner)
            key = (m, l)
            out[key] = out[key] + fn if key in out else fn
        return AlgebraElement(out)
    except (KeyError, TypeError) as exc:
        raise ValueError(f"malformed element JSON: {exc}") from exc
