from __future__ import annotations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from projline.errors import InvalidArrow, NotComposable
from projline.groupoid import (INF, Arrow, DegreeSlice, Diagonal, UnitPoint, compose, ext_add,
                               in_subgroupoid, in_unit_space, inverse, unit_arrow, validate_arrow)


def test_infinity_absorbs_shifts():
    assert ext_add(INF, -7) is INF
    assert ext_add(3, -3) == 0


def test_validate_examples():
    assert validate_arrow(1, -1, UnitPoint(0, INF)).range == UnitPoint(1, INF)
    with pytest.raises(InvalidArrow):
        validate_arrow(-1, 0, UnitPoint(0, INF))
    assert validate_arrow(5, -3, UnitPoint(INF, 3)).range == UnitPoint(INF, 0)


def test_unit_space_excludes_the_open_quadrant():
    assert in_unit_space(INF, 4) and in_unit_space(INF, INF)
    assert not in_unit_space(2, 3)
    with pytest.raises(InvalidArrow):
        UnitPoint(2, 3)


def test_compose_examples():
    a = validate_arrow(1, -1, UnitPoint(0, INF))
    b = validate_arrow(2, -2, UnitPoint(1, INF))
    assert compose(b, a) == Arrow(3, -3, UnitPoint(0, INF))
    assert compose(inverse(a), a) == unit_arrow(UnitPoint(0, INF))
    with pytest.raises(NotComposable):
        compose(validate_arrow(1, 1, UnitPoint(0, INF)), a)


def test_inverse_examples():
    assert inverse(validate_arrow(1, -1, UnitPoint(2, INF))) == Arrow(-1, 1, UnitPoint(3, INF))
    u = unit_arrow(UnitPoint(INF, 5))
    assert inverse(u) == u
    assert inverse(validate_arrow(0, 5, UnitPoint(3, INF))) == Arrow(0, -5, UnitPoint(3, INF))


def test_subgroupoid_membership():
    a = validate_arrow(2, -2, UnitPoint(0, INF))
    assert in_subgroupoid(a, DegreeSlice(0))
    assert not in_subgroupoid(a, Diagonal())
    assert in_subgroupoid(validate_arrow(3, 1, UnitPoint(INF, 0)), DegreeSlice(4))


sources = st.one_of(
    st.builds(UnitPoint, st.integers(0, 6), st.just(INF)),
    st.builds(UnitPoint, st.just(INF), st.integers(0, 6)),
    st.just(UnitPoint(INF, INF)),
)


@st.composite
def arrows(draw):
    x = draw(sources)
    m, l = draw(st.integers(-4, 4)), draw(st.integers(-4, 4))
    try:
        return validate_arrow(m, l, x)
    except InvalidArrow:
        return unit_arrow(x)


@given(arrows())
def test_inverse_laws(a):
    assert inverse(inverse(a)) == a
    assert compose(inverse(a), a) == unit_arrow(a.source)
    assert compose(a, inverse(a)) == unit_arrow(a.range)
    assert Arrow.from_json(a.to_json()) == a


@given(arrows(), st.integers(-4, 4), st.integers(-4, 4), st.integers(-4, 4), st.integers(-4, 4))
def test_composition_is_associative(a, m1, l1, m2, l2):
    try:
        b = validate_arrow(m1, l1, a.range)
        c = validate_arrow(m2, l2, b.range)
    except InvalidArrow:
        return
    assert compose(c, compose(b, a)) == compose(compose(c, b), a)
    assert compose(c, compose(b, a)).degree == a.degree + b.degree + c.degree
