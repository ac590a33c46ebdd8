from __future__ import annotations

import pytest
from hypothesis import given

from projline.ktheory import (K0Class, in_positive_cone, index_eta, k0_iota, k0_of_class, k_groups,
                              kernel_generator, leg_ranks, stably_equivalent)
from projline.algebra import chi_b, e11_leg1, finite_block
from projline.errors import BadParameter
from projline.monoid import Deficient, Geometry, Positive, RankZero, monoid_mul

from helpers import classes


def test_k0_examples():
    assert k0_of_class(Positive(2, 3), Geometry.PROJLINE) == K0Class(3, 2)
    assert k0_of_class(RankZero(5, 5), Geometry.PODLES) == K0Class(0, 0)
    for g in Geometry:
        assert k0_of_class(Deficient(1, 1), g) == K0Class(-1, 1)


@pytest.mark.parametrize("g", list(Geometry))
@given(a=classes, b=classes)
def test_k0_is_additive(g, a, b):
    assert k0_of_class(monoid_mul(a, b, g), g) == k0_of_class(a, g) + k0_of_class(b, g)
    assert in_positive_cone(k0_of_class(a, g), g)


def test_iota_examples():
    assert k0_iota(2, 3, Geometry.PROJLINE) == K0Class(5, 0)
    assert k0_iota(2, 3, Geometry.PODLES) == K0Class(-1, 0)
    assert k0_iota(0, 0) == K0Class(0, 0)


def test_cone_examples():
    assert not in_positive_cone(K0Class(-1, 0), Geometry.PROJLINE)
    assert in_positive_cone(K0Class(-1, 0), Geometry.PODLES)
    for g in Geometry:
        assert in_positive_cone(K0Class(-100, 1), g)
        assert in_positive_cone(K0Class(0, 0), g)
        assert not in_positive_cone(K0Class(3, -1), g)


def test_stable_equivalence():
    assert stably_equivalent(RankZero(1, 0), RankZero(0, 1))
    assert not stably_equivalent(Positive(1, 2), Deficient(1, 2))
    assert stably_equivalent(Deficient(2, 3), Deficient(2, 3))


def test_index_map_from_defects():
    assert index_eta(Geometry.PROJLINE) == (-1, 1)
    assert index_eta(Geometry.PODLES) == (-1, -1)
    assert index_eta(Geometry.PROJLINE, sign_flip=True) == (1, -1)


def test_leg_ranks():
    assert leg_ranks(finite_block(3, 2)) == (3, 2)
    assert leg_ranks(e11_leg1()) == (1, 0)
    with pytest.raises(BadParameter):
        leg_ranks(chi_b(1))


@pytest.mark.parametrize("g", list(Geometry))
@pytest.mark.parametrize("flip", [False, True])
def test_k_groups(g, flip):
    kg = k_groups(g, flip)
    assert kg.exact_at_ideal
    assert kg.k0_rank == 2 and kg.k0_torsion == 0
    assert kg.k1 is not None
    assert kg.basis == ("e11+0", "Itilde")


def test_kernel_generator():
    assert kernel_generator(1, 1) == (1, -1)
    assert kernel_generator(1, -1) == (-1, -1)
    with pytest.raises(BadParameter):
        kernel_generator(0, 0)
