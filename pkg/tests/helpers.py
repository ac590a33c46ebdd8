"""Strategies and independent oracles shared by the test modules."""

from __future__ import annotations

from fractions import Fraction

from hypothesis import strategies as st

from projline import scalars
from projline.algebra import AlgebraElement, SliceFn
from projline.errors import InvalidArrow
from projline.groupoid import INF, UnitPoint, validate_arrow
from projline.monoid import Deficient, Positive, RankZero
from projline.normal_form import BlockSpec, CofiniteBlock, FiniteBlock

small_ints = st.integers(-3, 3)

exact_scalars = st.one_of(
    small_ints,
    st.builds(Fraction, small_ints, st.integers(1, 3)),
    st.builds(scalars.make, small_ints, small_ints),
)


@st.composite
def slice_fns(draw, max_len=3, values=exact_scalars):
    corner = draw(st.one_of(st.just(0), values))
    return SliceFn(draw(st.lists(values, max_size=max_len)),
                   draw(st.lists(values, max_size=max_len)), corner)


@st.composite
def elements(draw, coord=2, max_len=3, max_slices=2, degree0=False, values=exact_scalars):
    keys = st.integers(-coord, coord).map(lambda n: (n, -n)) if degree0 else \
        st.tuples(st.integers(-coord, coord), st.integers(-coord, coord))
    parts = draw(st.dictionaries(keys, slice_fns(max_len, values), max_size=max_slices))
    return AlgebraElement(parts)


indices = st.integers(0, 6)
classes = st.one_of(
    st.builds(RankZero, indices, indices),
    st.builds(Positive, st.integers(1, 4), indices),
    st.builds(Deficient, st.integers(1, 4), st.integers(1, 6)),
)
blocks = st.one_of(st.builds(FiniteBlock, st.integers(0, 4), st.integers(0, 4)),
                   st.builds(CofiniteBlock, st.integers(0, 4), st.integers(0, 4)))
specs = st.lists(blocks, max_size=4).map(BlockSpec)


def brute_convolve_value(f: AlgebraElement, g: AlgebraElement, m: int, l: int, source: UnitPoint,
                         reach: int):
    """``(f * g)(m, l; source)`` by summing ``f(alpha) g(beta)`` over every factorisation.

    ``beta`` ranges over all group parts in ``[-reach, reach]^2`` whose arrow at
    ``source`` exists; no knowledge of the supports of ``f`` or ``g`` is used.
    """
    total = 0
    for b1 in range(-reach, reach + 1):
        for b2 in range(-reach, reach + 1):
            try:
                beta = validate_arrow(b1, b2, source)
                alpha = validate_arrow(m - b1, l - b2, beta.range)
            except InvalidArrow:
                continue
            total += f.value(alpha) * g.value(beta)
    return total


def sample_sources(limit: int):
    """Finite points on both axes up to ``limit`` plus the corner."""
    pts = [UnitPoint(p, INF) for p in range(limit + 1)]
    pts += [UnitPoint(INF, q) for q in range(limit + 1)]
    pts.append(UnitPoint(INF, INF))
    return pts
