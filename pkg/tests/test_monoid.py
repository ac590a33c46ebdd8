from __future__ import annotations

import pytest
from hypothesis import given

from projline import monoid
from projline.algebra import UNIT, chi_b, symbol_sigma
from projline.matrices import ElementMatrix, is_projection
from projline.monoid import (IDENTITY, Deficient, Geometry, Positive, RankZero, cancellation_check,
                             enumerate_rank_one, line_bundle_class, line_bundle_degree, monoid_mul, rank,
                             representative_matrix)
from projline.normal_form import classify, representative_spec

from helpers import classes

geometries = pytest.mark.parametrize("g", list(Geometry))


def test_product_examples():
    assert monoid_mul(RankZero(1, 2), Positive(1, 3), Geometry.PROJLINE) == Positive(1, 6)
    assert monoid_mul(Positive(1, 1), Deficient(1, 3), Geometry.PROJLINE) == Deficient(2, 2)
    assert monoid_mul(RankZero(0, 2), Positive(1, 1), Geometry.PODLES) == Deficient(1, 1)


def test_deficient_with_no_deficit_is_positive():
    assert Deficient(2, 0) == Positive(2, 0)
    with pytest.raises(ValueError):
        Deficient(0, 1)
    with pytest.raises(ValueError):
        Positive(1, -1)


@geometries
@given(a=classes, b=classes, c=classes)
def test_monoid_laws(g, a, b, c):
    assert monoid_mul(a, IDENTITY, g) == a
    assert monoid_mul(a, b, g) == monoid_mul(b, a, g)
    assert monoid_mul(monoid_mul(a, b, g), c, g) == monoid_mul(a, monoid_mul(b, c, g), g)
    assert rank(monoid_mul(a, b, g)) == rank(a) + rank(b)


@geometries
@given(a=classes, b=classes)
def test_product_matches_block_classifier(g, a, b):
    spec = representative_spec(a) + representative_spec(b)
    assert monoid_mul(a, b, g) == classify(spec, g)


def test_rank_examples():
    assert rank(Deficient(1, 5)) == 1
    assert rank(RankZero(7, 3)) == 0
    assert rank(monoid_mul(Positive(2, 0), Deficient(1, 1))) == 3


def test_line_bundles():
    assert line_bundle_class(2) == Deficient(1, 2)
    assert line_bundle_class(0) == Positive(1, 0)
    assert line_bundle_class(-3) == Positive(1, 3)
    assert set(enumerate_rank_one(1)) == {Positive(1, 0), Positive(1, 1), Deficient(1, 1)}
    assert enumerate_rank_one(0) == [Positive(1, 0)]
    three = enumerate_rank_one(3)
    assert len(three) == 7 and set(three) == {line_bundle_class(k) for k in range(-3, 4)}
    assert all(line_bundle_degree(line_bundle_class(k)) == k for k in range(-5, 6))
    assert line_bundle_degree(Positive(2, 0)) is None


def test_cancellation_examples():
    res = cancellation_check(RankZero(1, 0), RankZero(0, 1), Positive(1, 0), Geometry.PROJLINE)
    assert not res.cancels and res.product == Positive(1, 1)
    assert str(res) == "FailsWithWitness(Positive(n=1, j=1))"
    assert cancellation_check(Positive(1, 2), Positive(1, 2), Deficient(1, 1)).cancels


@geometries
@given(a=classes, b=classes, c=classes)
def test_cancellation_at_positive_rank(g, a, b, c):
    if rank(a) >= 1 and rank(b) >= 1:
        assert cancellation_check(a, b, c, g).cancels


def test_representative_examples():
    assert representative_matrix(Deficient(1, 3)) == ElementMatrix.diag([chi_b(3)])
    assert representative_matrix(RankZero(0, 0)) == ElementMatrix.zero(1)
    rep = representative_matrix(Positive(2, 1))
    assert rep.n == 3 and rep[0, 0] == UNIT and rep[1, 1] == UNIT
    assert is_projection(rep) and classify(representative_spec(Positive(2, 1))) == Positive(2, 1)


@given(classes)
def test_representatives_are_projections_with_identity_symbol(c):
    rep = representative_matrix(c)
    assert is_projection(rep)
    symbols = [symbol_sigma(rep[i, i]) for i in range(rep.n)]
    ones = sum(s == symbol_sigma(UNIT) for s in symbols)
    assert ones == rank(c) and all(s == symbol_sigma(UNIT) or not s.coeffs for s in symbols)


@given(classes)
def test_serialisation_roundtrips(c):
    assert monoid.from_json(monoid.to_json(c)) == c
    assert monoid.parse_compact(monoid.format_compact(c)) == c


def test_bad_serialisations():
    with pytest.raises(ValueError):
        monoid.parse_compact("positive(1)")
    with pytest.raises(ValueError):
        monoid.from_json({"type": "negative", "n": 1})
    with pytest.raises(ValueError):
        Geometry.parse("torus")
