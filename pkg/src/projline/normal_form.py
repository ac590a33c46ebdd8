"""Reduction of block-diagonal projections to canonical class representatives.

Input is a direct sum of blocks, each ``P_m + P_l`` (finite) or
``I~ - (P_m + P_l)`` (cofinite). Two independent routes produce its class:

* :func:`classify` -- closed form from the ``K_0`` coordinate and the rank;
* :func:`reduce` -- replays the unitary moves of the classification argument
  on a symbolic model of the diagonal, and records them as a
  :class:`Certificate`.

:func:`verify_certificate` rebuilds every move as an exact unitary matrix over
the convolution algebra, conjugates the input, and compares the result with the
representative of the claimed class.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import List, Sequence, Tuple, Union

from . import algebra
from .algebra import UNIT, cofinite_block, finite_block, involute, matrix_unit
from .errors import BadCertificate
from .ktheory import lifting_element, rank_zero_coordinate
from .matrices import ElementMatrix, embed, equal_up_to_padding, is_unitary, mat_adjoint, mat_convolve
from .monoid import Geometry, Positive, ProjClass, RankZero, class_of_rank, representative_matrix


# -- block specs ----------------------------------------------------------------------

def _check_index(name: str, v):
    if not isinstance(v, int) or isinstance(v, bool) or v < 0:
        raise ValueError(f"{name} must be a nonnegative integer, got {v!r}")


@dataclass(frozen=True)
class FiniteBlock:
    """``P_m + P_l``."""

    m: int
    l: int

    def __post_init__(self):
        _check_index("m", self.m)
        _check_index("l", self.l)

    def element(self) -> algebra.AlgebraElement:
        return finite_block(self.m, self.l)


@dataclass(frozen=True)
class CofiniteBlock:
    """``I~ - (P_m + P_l)``; ``CofiniteBlock(0, 0)`` is ``I~``."""

    m: int
    l: int

    def __post_init__(self):
        _check_index("m", self.m)
        _check_index("l", self.l)

    def element(self) -> algebra.AlgebraElement:
        return cofinite_block(self.m, self.l)


Block = Union[FiniteBlock, CofiniteBlock]


@dataclass(frozen=True)
class BlockSpec:
    entries: Tuple[Block, ...] = ()

    def __init__(self, entries: Sequence[Block] = ()):
        object.__setattr__(self, "entries", tuple(entries))

    def __add__(self, other: "BlockSpec") -> "BlockSpec":
        return BlockSpec(self.entries + other.entries)

    def matrix(self, dim: int = None) -> ElementMatrix:
        m = ElementMatrix.diag([b.element() for b in self.entries])
        return m if dim is None else m.padded(dim)


def rank_of_spec(spec: BlockSpec) -> int:
    return sum(isinstance(b, CofiniteBlock) for b in spec.entries)


def representative_spec(c: ProjClass) -> BlockSpec:
    """Block form of the canonical representative of ``c``."""
    if isinstance(c, RankZero):
        return BlockSpec([FiniteBlock(c.m, c.l)])
    if isinstance(c, Positive):
        tail = [FiniteBlock(c.j, 0)] if c.j else []
        return BlockSpec([CofiniteBlock(0, 0)] * c.n + tail)
    return BlockSpec([CofiniteBlock(0, 0)] * (c.n - 1) + [CofiniteBlock(c.k, 0)])


def classify(spec: BlockSpec, g: Geometry = Geometry.PROJLINE) -> ProjClass:
    """Closed-form class of a block-diagonal projection."""
    g = Geometry.parse(g)
    n = rank_of_spec(spec)
    if n == 0:
        return RankZero(sum(b.m for b in spec.entries), sum(b.l for b in spec.entries))
    d = 0
    for b in spec.entries:
        s = rank_zero_coordinate(b.m, b.l, g)
        d += s if isinstance(b, FiniteBlock) else -s
    return class_of_rank(n, d)


# -- moves and certificates -----------------------------------------------------

@dataclass(frozen=True)
class Permute:
    """Reorder entries: position ``k`` receives the old entry ``perm[k]``."""

    perm: Tuple[int, ...]

    def __init__(self, perm: Sequence[int]):
        object.__setattr__(self, "perm", tuple(perm))


@dataclass(frozen=True)
class BlockSwap:
    """Exchange basis vectors ``offset_a + s`` of entry ``a`` with ``offset_b + s`` of entry ``b``.

    ``s`` runs over ``range(size)``. The legs must agree: the two legs lie in
    different orbits, so no partial isometry of the algebra connects them.
    """

    entry_a: int
    leg_a: int
    offset_a: int
    entry_b: int
    leg_b: int
    offset_b: int
    size: int


FORWARD = "forward"
ADJOINT = "adjoint"


@dataclass(frozen=True)
class ShiftConjugate:
    """Conjugate entries ``(i, j)`` by the 2x2 unitary built from the ``power``-th shift.

    With ``v`` the lift of the circle generator and ``t = power`` the unitary is
    ``[[v^t, 1 - v^t v*^t], [1 - v*^t v^t, v*^t]]``; ``orientation`` selects it
    (``"forward"``) or its adjoint (``"adjoint"``).
    """

    entries: Tuple[int, int]
    power: int
    orientation: str = FORWARD

    def __init__(self, entries: Sequence[int], power: int, orientation: str = FORWARD):
        object.__setattr__(self, "entries", tuple(entries))
        object.__setattr__(self, "power", power)
        object.__setattr__(self, "orientation", orientation)


Move = Union[Permute, BlockSwap, ShiftConjugate]


@dataclass(frozen=True)
class Certificate:
    """Moves acting on the input padded with zero entries to ``dim x dim``."""

    dim: int
    moves: Tuple[Move, ...] = ()

    def __init__(self, dim: int, moves: Sequence[Move] = ()):
        object.__setattr__(self, "dim", dim)
        object.__setattr__(self, "moves", tuple(moves))


# -- symbolic model of a diagonal 0/1 projection ---------------------------------

class _Leg:
    """Diagonal 0/1 operator on one leg: ones at ``marks`` (finite) or zeros at ``marks`` (cofinite)."""

    __slots__ = ("cofinite", "marks")

    def __init__(self, cofinite: bool, marks):
        self.cofinite = cofinite
        self.marks = set(marks)

    def value(self, i: int) -> int:
        return int((i in self.marks) != self.cofinite)

    def set(self, i: int, v: int):
        if (v == 1) != self.cofinite:
            self.marks.add(i)
        else:
            self.marks.discard(i)

    def shift_up(self, t: int) -> "_Leg":
        moved = {x + t for x in self.marks}
        return _Leg(self.cofinite, moved | set(range(t)) if self.cofinite else moved)

    def shift_down(self, t: int) -> "_Leg":
        return _Leg(self.cofinite, {x - t for x in self.marks if x >= t})

    def ones_below(self, t: int) -> set:
        return {i for i in range(t) if self.value(i)}

    def with_ones(self, ones: set) -> "_Leg":
        if self.cofinite:
            return _Leg(True, self.marks - ones)
        return _Leg(False, self.marks | ones)

    def count(self) -> int:
        return len(self.marks)

    def canonical(self) -> bool:
        return self.marks == set(range(len(self.marks)))


class _Reducer:
    def __init__(self, entries: Sequence[Block], g: Geometry):
        self.g = g
        self.state: List[List[_Leg]] = [
            [_Leg(isinstance(b, CofiniteBlock), range(b.m)),
             _Leg(isinstance(b, CofiniteBlock), range(b.l))]
            for b in entries
        ]
        self.moves: List[Move] = []

    @property
    def dim(self) -> int:
        return len(self.state)

    def permute(self, perm: Sequence[int]):
        if list(perm) != list(range(len(perm))):
            self.moves.append(Permute(perm))
            self.state = [self.state[k] for k in perm]

    def pad(self):
        self.state.append([_Leg(False, ()), _Leg(False, ())])

    def swap(self, a: int, leg: int, oa: int, b: int, ob: int, size: int):
        if size <= 0:
            return
        self.moves.append(BlockSwap(a, leg, oa, b, leg, ob, size))
        la, lb = self.state[a][leg - 1], self.state[b][leg - 1]
        for s in range(size):
            x, y = oa + s, ob + s
            vx, vy = la.value(x), lb.value(y)
            la.set(x, vy)
            lb.set(y, vx)

    def transfer(self, src: int, dst: int, leg: int):
        """Move the whole marked block of ``src`` past the marked block of ``dst``.

        Both entries must be canonical and of the same kind; zeros travel
        between cofinite entries, ones between finite entries.
        """
        a = self.state[src][leg - 1].count()
        b = self.state[dst][leg - 1].count()
        self.swap(src, leg, 0, dst, b, a)

    def merge(self, c: int, f: int, leg: int):
        """Cancel zeros of cofinite entry ``c`` against ones of finite entry ``f``."""
        z = self.state[c][leg - 1].count()
        o = self.state[f][leg - 1].count()
        t = min(z, o)
        self.swap(c, leg, z - t, f, o - t, t)

    def shift(self, c: int, f: int, power: int, orientation: str):
        self.moves.append(ShiftConjugate((c, f), power, orientation))
        forward_legs = (True, self.g is Geometry.PODLES)  # legs where the lift acts as S
        for leg in (0, 1):
            x, y = self.state[c][leg], self.state[f][leg]
            first_type = forward_legs[leg] == (orientation == FORWARD)
            if first_type:
                new_c = x.shift_up(power).with_ones(y.ones_below(power))
                new_f = y.shift_down(power)
            else:
                new_c = x.shift_down(power)
                new_f = y.shift_up(power).with_ones(x.ones_below(power))
            self.state[c][leg], self.state[f][leg] = new_c, new_f

    def normalize(self, e: int, leg: int):
        """Intra-entry swaps moving the marked positions to the front."""
        marks = self.state[e][leg - 1].marks
        k = len(marks)
        stray = sorted(x for x in marks if x >= k)
        holes = sorted(i for i in range(k) if i not in marks)
        runs = []
        for x, h in zip(stray, holes):
            if runs and runs[-1][0] + runs[-1][2] == x and runs[-1][1] + runs[-1][2] == h:
                runs[-1][2] += 1
            else:
                runs.append([x, h, 1])
        for x, h, size in runs:
            self.swap(e, leg, x, e, h, size)

    def read_class(self, n: int) -> ProjClass:
        st = self.state
        for e in range(n - 1):
            assert all(leg.cofinite and not leg.marks for leg in st[e]), "leading entries must be I~"
        c, f = n - 1, n
        assert st[c][0].cofinite and st[c][0].canonical() and not st[c][1].marks
        j = st[c][0].count()
        k = 0
        if f < self.dim:
            assert not st[f][0].cofinite and st[f][0].canonical() and not st[f][1].marks
            k = st[f][0].count()
        for e in range(n + 1, self.dim):
            assert all(not leg.cofinite and not leg.marks for leg in st[e]), "trailing entries must be 0"
        assert j == 0 or k == 0
        return class_of_rank(n, k - j)


def reduce(spec: BlockSpec, g: Geometry = Geometry.PROJLINE) -> Tuple[ProjClass, Certificate]:
    """Bring ``spec`` to canonical form, recording each unitary move."""
    g = Geometry.parse(g)
    entries = list(spec.entries)
    r = _Reducer(entries, g)
    cof = [i for i, b in enumerate(entries) if isinstance(b, CofiniteBlock)]
    fin = [i for i, b in enumerate(entries) if isinstance(b, FiniteBlock)]
    r.permute(cof + fin)
    n = len(cof)

    if n == 0:
        if r.dim == 0:
            return RankZero(0, 0), Certificate(0, r.moves)
        for i in range(1, r.dim):
            for leg in (1, 2):
                r.transfer(i, 0, leg)
        st = r.state[0]
        return RankZero(st[0].count(), st[1].count()), Certificate(r.dim, r.moves)

    c, f = n - 1, n
    # gather zeros into the last cofinite entry
    for i in range(n - 1):
        for leg in (1, 2):
            r.transfer(i, c, leg)
    if r.dim == n:
        if not r.state[c][1].marks:
            return r.read_class(n), Certificate(r.dim, r.moves)
        r.pad()
    # gather ones into the first finite entry
    for i in range(n + 1, r.dim):
        for leg in (1, 2):
            r.transfer(i, f, leg)
    r.merge(c, f, 2)
    deficit = r.state[c][1].count()
    surplus = r.state[f][1].count()
    if deficit or surplus:
        # the lift clears leg-2 zeros of c with its adjoint side there, leg-2 ones of f with the other
        clear_zeros = ADJOINT if g is Geometry.PODLES else FORWARD
        clear_ones = FORWARD if g is Geometry.PODLES else ADJOINT
        r.shift(c, f, deficit or surplus, clear_zeros if deficit else clear_ones)
        for e in (c, f):
            for leg in (1, 2):
                r.normalize(e, leg)
    r.merge(c, f, 1)
    return r.read_class(n), Certificate(r.dim, r.moves)


# -- exact verification ----------------------------------------------------------

def _leg_swap_element(leg: int, xs: Sequence[int], ys: Sequence[int], same_entry: bool):
    """Entries of the swap unitary restricted to the two affected diagonal/off-diagonal slots."""
    diag_a = [matrix_unit(leg, x, x) for x in xs]
    diag_b = [matrix_unit(leg, y, y) for y in ys]
    ba = [matrix_unit(leg, y, x) for x, y in zip(xs, ys)]
    ab = [matrix_unit(leg, x, y) for x, y in zip(xs, ys)]
    if same_entry:
        pi = algebra.add(*ba, *ab)
        return algebra.add(UNIT, algebra.scale(-1, algebra.add(*diag_a, *diag_b)), pi)
    return (
        algebra.add(UNIT, algebra.scale(-1, algebra.add(*diag_a))),
        algebra.add(UNIT, algebra.scale(-1, algebra.add(*diag_b))),
        algebra.add(*ba),
        algebra.add(*ab),
    )


def shift_unitary(g: Geometry, power: int) -> ElementMatrix:
    """The 2x2 unitary ``[[v^t, 1 - v^t v*^t], [1 - v*^t v^t, v*^t]]`` for the lift ``v``."""
    vt = algebra.power(lifting_element(g), power)
    vts = involute(vt)
    return ElementMatrix.from_rows([
        [vt, UNIT - algebra.convolve(vt, vts)],
        [UNIT - algebra.convolve(vts, vt), vts],
    ])


def move_unitary(move: Move, dim: int, g: Geometry) -> ElementMatrix:
    """Exact unitary implementing ``move`` on ``dim x dim`` matrices.

    Raises ``ValueError`` when the move is malformed.
    """
    if isinstance(move, Permute):
        perm = list(move.perm)
        if sorted(perm) != list(range(dim)):
            raise ValueError(f"{perm} is not a permutation of range({dim})")
        return ElementMatrix(dim, {(k, p): UNIT for k, p in enumerate(perm)})
    if isinstance(move, BlockSwap):
        a, b, leg = move.entry_a, move.entry_b, move.leg_a
        if move.leg_a != move.leg_b:
            raise ValueError("cross-leg swap: the legs are different orbits")
        if leg not in (1, 2):
            raise ValueError(f"leg must be 1 or 2, got {leg}")
        if not (0 <= a < dim and 0 <= b < dim):
            raise ValueError(f"entries ({a}, {b}) outside dimension {dim}")
        if move.size < 1 or move.offset_a < 0 or move.offset_b < 0:
            raise ValueError("swap needs positive size and nonnegative offsets")
        xs = range(move.offset_a, move.offset_a + move.size)
        ys = range(move.offset_b, move.offset_b + move.size)
        entries = {(i, i): UNIT for i in range(dim)}
        if a == b:
            if set(xs) & set(ys):
                raise ValueError("overlapping ranges within one entry")
            entries[(a, a)] = _leg_swap_element(leg, xs, ys, True)
        else:
            daa, dbb, eba, eab = _leg_swap_element(leg, xs, ys, False)
            entries.update({(a, a): daa, (b, b): dbb, (b, a): eba, (a, b): eab})
        return ElementMatrix(dim, entries)
    if isinstance(move, ShiftConjugate):
        i, j = move.entries
        if not (0 <= i < dim and 0 <= j < dim) or i == j:
            raise ValueError(f"bad entry pair {move.entries} for dimension {dim}")
        if move.power < 1:
            raise ValueError("shift power must be positive")
        if move.orientation not in (FORWARD, ADJOINT):
            raise ValueError(f"unknown orientation {move.orientation!r}")
        u = shift_unitary(g, move.power)
        if move.orientation == ADJOINT:
            u = mat_adjoint(u)
        return embed(u, [i, j], dim)
    raise ValueError(f"unknown move {move!r}")


@lru_cache(maxsize=4096)
def _checked_unitary(move: Move, dim: int, g: Geometry):
    """Build and exactly check a move's unitary; memoised since moves recur across inputs."""
    try:
        u = move_unitary(move, dim, g)
    except ValueError as exc:
        return None, None, str(exc)
    if not is_unitary(u):
        return None, None, "move matrix is not unitary"
    return u, mat_adjoint(u), ""


def verify_certificate(spec: BlockSpec, cert: Certificate, claimed: ProjClass,
                       g: Geometry = Geometry.PROJLINE) -> bool:
    """Replay ``cert`` exactly on ``spec``; raises :class:`BadCertificate` on failure."""
    g = Geometry.parse(g)
    if cert.dim < len(spec.entries):
        raise BadCertificate(0, f"dimension {cert.dim} smaller than spec length {len(spec.entries)}")
    current = spec.matrix(cert.dim)
    for idx, move in enumerate(cert.moves):
        u, u_adj, reason = _checked_unitary(move, cert.dim, g)
        if u is None:
            raise BadCertificate(idx, reason)
        current = mat_convolve(mat_convolve(u, current), u_adj)
    target = representative_matrix(claimed)
    if not equal_up_to_padding(current, target):
        raise BadCertificate(len(cert.moves), f"end state does not match representative of {claimed}")
    return True


# -- JSON ------------------------------------------------------------------------

def spec_to_json(spec: BlockSpec) -> dict:
    return {"entries": [
        {"kind": "finite" if isinstance(b, FiniteBlock) else "cofinite", "m": b.m, "l": b.l}
        for b in spec.entries
    ]}


def spec_from_json(obj) -> BlockSpec:
    try:
        out = []
        for e in obj["entries"]:
            kind = e["kind"]
            if kind == "finite":
                out.append(FiniteBlock(e["m"], e["l"]))
            elif kind == "cofinite":
                out.append(CofiniteBlock(e["m"], e["l"]))
            else:
                raise ValueError(f"unknown block kind {kind!r}")
        return BlockSpec(out)
    except (KeyError, TypeError) as exc:
        raise ValueError(f"malformed spec JSON: {exc}") from exc


def parse_compact_spec(text: str) -> BlockSpec:
    """Parse ``cofinite(1,2)+finite(3,1)``; the empty string is the empty spec."""
    s = text.replace(" ", "")
    if not s or s == "empty":
        return BlockSpec()
    out = []
    for term in s.split("+"):
        for name, cls in (("finite", FiniteBlock), ("cofinite", CofiniteBlock)):
            if term.startswith(name + "(") and term.endswith(")"):
                try:
                    m, l = (int(t) for t in term[len(name) + 1:-1].split(","))
                except ValueError:
                    raise ValueError(f"cannot parse block {term!r}") from None
                out.append(cls(m, l))
                break
        else:
            raise ValueError(f"cannot parse block {term!r}")
    return BlockSpec(out)


def move_to_json(move: Move) -> dict:
    if isinstance(move, Permute):
        return {"op": "permute", "perm": list(move.perm)}
    if isinstance(move, BlockSwap):
        return {"op": "swap", "entry_a": move.entry_a, "leg_a": move.leg_a, "offset_a": move.offset_a,
                "entry_b": move.entry_b, "leg_b": move.leg_b, "offset_b": move.offset_b,
                "size": move.size}
    return {"op": "shift", "entries": list(move.entries), "power": move.power,
            "orientation": move.orientation}


def move_from_json(obj) -> Move:
    try:
        op = obj["op"]
        if op == "permute":
            return Permute(obj["perm"])
        if op == "swap":
            return BlockSwap(obj["entry_a"], obj["leg_a"], obj["offset_a"],
                             obj["entry_b"], obj["leg_b"], obj["offset_b"], obj["size"])
        if op == "shift":
            return ShiftConjugate(obj["entries"], obj["power"], obj.get("orientation", FORWARD))
    except (KeyError, TypeError) as exc:
        raise ValueError(f"malformed move JSON {obj!r}") from exc
    raise ValueError(f"unknown move op {obj.get('op')!r}")


def certificate_to_json(cert: Certificate) -> dict:
    return {"dim": cert.dim, "moves": [move_to_json(m) for m in cert.moves]}


def certificate_from_json(obj) -> Certificate:
    try:
        return Certificate(obj["dim"], [move_from_json(m) for m in obj["moves"]])
    except (KeyError, TypeError) as exc:
        raise ValueError(f"malformed certificate JSON: {exc}") from exc
