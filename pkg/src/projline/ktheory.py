"""K_0 bookkeeping in the fixed basis ``{[e11 + 0], [I~]}``.

The index map is not tabulated: it is read off the exact defect projections of
the partial isometry lifting the circle generator.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from typing import Tuple

from .algebra import AlgebraElement, chi_w, chi_w_podles
from .errors import BadParameter
from .monoid import Deficient, Geometry, Positive, ProjClass, RankZero
from .toeplitz import defect_projections

BASIS = ("e11+0", "Itilde")


@dataclass(frozen=True, order=True)
class K0Class:
    """``a [e11 + 0] + b [I~]``."""

    a: int
    b: int

    def __add__(self, other: "K0Class") -> "K0Class":
        return K0Class(self.a + other.a, self.b + other.b)

    def __neg__(self) -> "K0Class":
        return K0Class(-self.a, -self.b)

    def to_json(self) -> dict:
        return {"a": self.a, "b": self.b, "basis": list(BASIS)}


@dataclass(frozen=True)
class K1Class:
    """The only element of the trivial group ``K_1``."""

    def to_json(self) -> dict:
        return {"trivial": True}


ZERO_K0 = K0Class(0, 0)


def rank_zero_coordinate(m: int, l: int, g: Geometry) -> int:
    """``[e11 + 0]``-coordinate of ``P_m + P_l``: ``m + l`` on the line, ``m - l`` on the sphere."""
    return m + l if g is Geometry.PROJLINE else m - l


def k0_of_class(c: ProjClass, g: Geometry = Geometry.PROJLINE) -> K0Class:
    g = Geometry.parse(g)
    if isinstance(c, RankZero):
        return K0Class(rank_zero_coordinate(c.m, c.l, g), 0)
    if isinstance(c, Positive):
        return K0Class(c.j, c.n)
    if isinstance(c, Deficient):
        return K0Class(-c.k, c.n)
    raise TypeError(f"not a projection class: {c!r}")


def k0_iota(m: int, l: int, g: Geometry = Geometry.PROJLINE) -> K0Class:
    """Image of ``m[e11] + l[e11]`` in ``K_0(K + K)`` under the inclusion of the ideal."""
    return K0Class(rank_zero_coordinate(m, l, Geometry.parse(g)), 0)


def in_positive_cone(x: K0Class, g: Geometry = Geometry.PROJLINE) -> bool:
    g = Geometry.parse(g)
    if x.b >= 1:
        return True
    if x.b < 0:
        return False
    return g is Geometry.PODLES or x.a >= 0


def stably_equivalent(c1: ProjClass, c2: ProjClass, g: Geometry = Geometry.PROJLINE) -> bool:
    return k0_of_class(c1, g) == k0_of_class(c2, g)


def lifting_element(g: Geometry) -> AlgebraElement:
    return chi_w() if Geometry.parse(g) is Geometry.PROJLINE else chi_w_podles()


def leg_ranks(p: AlgebraElement) -> Tuple[int, int]:
    """Ranks on the two legs of a finite-rank projection in the ideal ``K + K``.

    The rank is the trace: the sum of the diagonal (slice ``(0, 0)``) values.
    """
    diag = p.slice(0, 0)
    if diag.corner != 0:
        raise BadParameter("projection is not of finite rank")
    r1, r2 = sum(diag.axis1), sum(diag.axis2)
    if r1 != int(r1) or r2 != int(r2):
        raise BadParameter("trace is not an integer; not a projection")
    return int(r1), int(r2)


def index_eta(g: Geometry = Geometry.PROJLINE, sign_flip: bool = False) -> Tuple[int, int]:
    """Index of the circle generator: leg ranks of kernel minus those of cokernel."""
    kernel, cokernel = defect_projections(lifting_element(g))
    k1, k2 = leg_ranks(kernel)
    c1, c2 = leg_ranks(cokernel)
    out = (k1 - c1, k2 - c2)
    return (-out[0], -out[1]) if sign_flip else out


def kernel_generator(alpha: int, beta: int) -> Tuple[int, int]:
    """A generator of ``{(m, l) in Z^2 : alpha m + beta l == 0}`` (assumes not both zero)."""
    g = gcd(alpha, beta)
    if g == 0:
        raise BadParameter("the zero functional has kernel Z^2")
    return (beta // g, -alpha // g)


def same_cyclic_subgroup(u: Tuple[int, int], v: Tuple[int, int]) -> bool:
    return tuple(u) == tuple(v) or tuple(u) == (-v[0], -v[1])


@dataclass(frozen=True)
class KGroups:
    """Outcome of the six-term sequence computation for one geometry."""

    eta: Tuple[int, int]
    iota_kernel: Tuple[int, int]
    exact_at_ideal: bool
    k0_rank: int
    k0_torsion: int
    k1: K1Class
    basis: Tuple[str, str] = BASIS


def k_groups(g: Geometry = Geometry.PROJLINE, sign_flip: bool = False) -> KGroups:
    """Assemble ``K_0`` and ``K_1`` from the index map.

    ``K_0(K + K) = Z^2`` modulo the image of the index map injects into ``K_0``;
    adding the free rank contributed by ``K_0(C(T)) = Z`` gives the rank of
    ``K_0``. ``K_1`` is the kernel of the index map on ``K_1(C(T)) = Z``, which is
    trivial as soon as the index is nonzero.
    """
    g = Geometry.parse(g)
    eta = index_eta(g, sign_flip)
    alpha = k0_iota(1, 0, g).a
    beta = k0_iota(0, 1, g).a
    ker = kernel_generator(alpha, beta)
    exact = same_cyclic_subgroup(ker, eta)
    content = gcd(*eta)
    coker_rank = 2 - (1 if content else 0)
    k0_rank = coker_rank + 1
    k1 = K1Class() if content else None
    return KGroups(eta, ker, exact, k0_rank, content if content > 1 else 0, k1)
