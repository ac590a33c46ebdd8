"""Square matrices over the convolution algebra.

Storage is sparse: only nonzero entries are kept. Matrices of different sizes
compare equal when they agree after padding with zero rows and columns, which
is the identification ``x ~ x (+) 0`` used for projections in ``M_inf``.
"""

from __future__ import annotations

from typing import Dict, Iterable, Sequence, Tuple

from . import algebra
from .algebra import UNIT, ZERO, AlgebraElement, convolve, involute
from .errors import SizeMismatch

Index = Tuple[int, int]


class ElementMatrix:
    __slots__ = ("n", "entries", "_hash")

    def __init__(self, n: int, entries: Dict[Index, AlgebraElement] = None):
        if n < 0:
            raise SizeMismatch(f"negative size {n}")
        self.n = n
        clean = {}
        for (i, j), e in (entries or {}).items():
            if not (0 <= i < n and 0 <= j < n):
                raise SizeMismatch(f"entry ({i}, {j}) outside {n}x{n}")
            if not e.is_zero():
                clean[(i, j)] = e
        self.entries = clean
        self._hash = None

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[AlgebraElement]]) -> "ElementMatrix":
        n = len(rows)
        if any(len(r) != n for r in rows):
            raise SizeMismatch("rows must form a square array")
        return cls(n, {(i, j): e for i, r in enumerate(rows) for j, e in enumerate(r)})

    @classmethod
    def diag(cls, items: Iterable[AlgebraElement]) -> "ElementMatrix":
        items = list(items)
        return cls(len(items), {(i, i): e for i, e in enumerate(items)})

    @classmethod
    def identity(cls, n: int) -> "ElementMatrix":
        return cls.diag([UNIT] * n)

    @classmethod
    def zero(cls, n: int) -> "ElementMatrix":
        return cls(n)

    def __getitem__(self, ij: Index) -> AlgebraElement:
        return self.entries.get(ij, ZERO)

    def rows(self) -> list:
        return [[self[i, j] for j in range(self.n)] for i in range(self.n)]

    def padded(self, n: int) -> "ElementMatrix":
        if n < self.n:
            raise SizeMismatch(f"cannot pad {self.n}x{self.n} down to {n}")
        return ElementMatrix(n, self.entries)

    def __eq__(self, other):
        if not isinstance(other, ElementMatrix):
            return NotImplemented
        return self.entries == other.entries

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self.entries.items()))
        return self._hash

    def __repr__(self):
        return f"ElementMatrix({self.n}, {self.entries!r})"

    def __matmul__(self, other):
        return mat_convolve(self, other)

    def __add__(self, other):
        return mat_add(self, other)

    def __sub__(self, other):
        return mat_add(self, mat_scale(-1, other))

    @property
    def dagger(self) -> "ElementMatrix":
        return mat_adjoint(self)


def _check_sizes(a: ElementMatrix, b: ElementMatrix):
    if a.n != b.n:
        raise SizeMismatch(f"{a.n}x{a.n} vs {b.n}x{b.n}")


def mat_convolve(a: ElementMatrix, b: ElementMatrix) -> ElementMatrix:
    _check_sizes(a, b)
    by_row: Dict[int, list] = {}
    for (k, j), e in b.entries.items():
        by_row.setdefault(k, []).append((j, e))
    acc: Dict[Index, list] = {}
    for (i, k), x in a.entries.items():
        for j, y in by_row.get(k, ()):
            acc.setdefault((i, j), []).append(convolve(x, y))
    return ElementMatrix(a.n, {ij: terms[0] if len(terms) == 1 else algebra.add(*terms)
                               for ij, terms in acc.items()})


def mat_adjoint(a: ElementMatrix) -> ElementMatrix:
    return ElementMatrix(a.n, {(j, i): involute(e) for (i, j), e in a.entries.items()})


def mat_add(a: ElementMatrix, b: ElementMatrix) -> ElementMatrix:
    _check_sizes(a, b)
    out = dict(a.entries)
    for ij, e in b.entries.items():
        out[ij] = out[ij] + e if ij in out else e
    return ElementMatrix(a.n, out)


def mat_scale(c, a: ElementMatrix) -> ElementMatrix:
    return ElementMatrix(a.n, {ij: algebra.scale(c, e) for ij, e in a.entries.items()})


def conjugate_by(u: ElementMatrix, x: ElementMatrix) -> ElementMatrix:
    """``u x u*``."""
    return mat_convolve(mat_convolve(u, x), mat_adjoint(u))


def embed(block: ElementMatrix, at: Sequence[int], n: int) -> ElementMatrix:
    """Place ``block`` on rows/columns ``at`` of an ``n x n`` identity."""
    if len(at) != block.n or len(set(at)) != len(at):
        raise SizeMismatch("embedding indices must be distinct and match the block size")
    entries = {(i, i): UNIT for i in range(n) if i not in at}
    for (r, c), e in block.entries.items():
        entries[(at[r], at[c])] = e
    return ElementMatrix(n, entries)


def is_projection(a: ElementMatrix) -> bool:
    """Exact test ``a*a == a == a^dagger``."""
    return mat_adjoint(a) == a and mat_convolve(a, a) == a


def is_unitary(a: ElementMatrix) -> bool:
    """Exact test ``a a^dagger == a^dagger a == I``; the empty matrix does not count."""
    if a.n == 0:
        return False
    eye = ElementMatrix.identity(a.n)
    adj = mat_adjoint(a)
    return mat_convolve(a, adj) == eye and mat_convolve(adj, a) == eye


def equal_up_to_padding(a: ElementMatrix, b: ElementMatrix) -> bool:
    return a.entries == b.entries


def to_json(a: ElementMatrix) -> dict:
    return {
        "n": a.n,
        "entries": [
            {"i": i, "j": j, "element": algebra.to_json(e)}
            for (i, j), e in sorted(a.entries.items())
        ],
    }
