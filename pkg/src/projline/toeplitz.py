"""Finite compressions of the faithful representation on ``l2(Z_>=) + l2(Z_>=)``.

The arrow ``(n, -n)`` over ``(p, INF)`` sends ``delta_p`` on leg 1 to
``delta_{p+n}``; over ``(INF, q)`` it sends ``delta_q`` on leg 2 to
``delta_{q-n}``. Truncation keeps basis vectors with index ``< N`` on each leg,
ordered leg 1 first.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np

from . import scalars
from .algebra import UNIT, AlgebraElement, convolve, involute, linear_combine, start
from .errors import BadParameter, NotDegreeGraded, NotPartialIsometry
from .matrices import ElementMatrix, is_projection

DEFAULT_TOLERANCE = 1e-12


@dataclass(frozen=True)
class TruncatedOperator:
    N: int
    matrix: np.ndarray

    def leg_block(self, a: int, b: int) -> np.ndarray:
        """Block mapping leg ``b`` into leg ``a`` (legs numbered 1 and 2)."""
        N = self.N
        return self.matrix[(a - 1) * N:a * N, (b - 1) * N:b * N]

    def to_json(self) -> list:
        """Row-major ``[re, im]`` pairs."""
        return [[[float(z.real), float(z.imag)] for z in row] for row in self.matrix]

    def dumps(self) -> str:
        return json.dumps(self.to_json())


def represent(f: AlgebraElement, N: int) -> TruncatedOperator:
    """Compress ``pi(f)`` to the first ``N`` basis vectors of each leg."""
    if N < 1:
        raise BadParameter(f"truncation size must be positive, got {N}")
    mat = np.zeros((2 * N, 2 * N), dtype=complex)
    for (n, l), fn in f.slices.items():
        if n + l != 0:
            raise NotDegreeGraded(f"slice ({n}, {l}) is not in the degree-0 subgroupoid")
        p0 = start(n)
        for p in range(p0, N):
            target = p + n
            if target < N:
                v = fn.at1(p - p0)
                if v != 0:
                    mat[target, p] += scalars.to_complex(v)
        q0 = start(l)
        for q in range(q0, N):
            target = q + l
            if target < N:
                v = fn.at2(q - q0)
                if v != 0:
                    mat[N + target, N + q] += scalars.to_complex(v)
    return TruncatedOperator(N, mat)


def _window(N: int, margin: int) -> np.ndarray:
    inner = np.arange(margin, N - margin)
    return np.concatenate([inner, N + inner])


def compression_consistency(f: AlgebraElement, g: AlgebraElement, N: int, margin: int) -> float:
    """Largest entrywise gap between ``pi_N(f*g)`` and ``pi_N(f) pi_N(g)`` away from the cut.

    Only rows and columns with index in ``[margin, N - margin)`` on each leg are
    compared; truncation artifacts live within one slice extent of index ``N``.
    """
    if margin < 0 or margin >= N or N - 2 * margin <= 0:
        raise BadParameter(f"margin {margin} leaves no interior window at N={N}")
    lhs = represent(convolve(f, g), N).matrix
    rhs = represent(f, N).matrix @ represent(g, N).matrix
    idx = _window(N, margin)
    diff = np.abs(lhs[np.ix_(idx, idx)] - rhs[np.ix_(idx, idx)])
    return float(diff.max()) if diff.size else 0.0


def defect_projections(v: AlgebraElement):
    """Kernel and cokernel projections ``(1 - v*v, 1 - vv*)`` of a partial isometry."""
    vs = involute(v)
    src = convolve(vs, v)
    rng = convolve(v, vs)
    if not (is_projection(ElementMatrix.diag([src])) and is_projection(ElementMatrix.diag([rng]))):
        raise NotPartialIsometry("v*v and vv* must both be projections")
    return linear_combine(1, UNIT, -1, src), linear_combine(1, UNIT, -1, rng)


def shift_matrices(N: int):
    """Compressed forward shift ``S`` and backward shift ``S*`` as integer arrays."""
    s = np.zeros((N, N), dtype=int)
    for i in range(N - 1):
        s[i + 1, i] = 1
    return s, s.T.copy()
