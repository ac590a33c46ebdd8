from __future__ import annotations

import random

import numpy as np
import pytest
from hypothesis import given, settings

from projline.algebra import (UNIT, ZERO, chi_a, chi_b, chi_w, chi_w_podles, convolve, e11_leg1,
                              e11_leg2, involute)
from projline.errors import BadParameter, NotDegreeGraded, NotPartialIsometry
from projline.selftest import random_degree0_element
from projline.toeplitz import compression_consistency, defect_projections, represent, shift_matrices

from helpers import elements


def test_line_generator_is_shift_plus_coshift():
    s, st = shift_matrices(16)
    rep = represent(chi_w(), 16)
    assert np.array_equal(rep.leg_block(1, 1), s)
    assert np.array_equal(rep.leg_block(2, 2), st)
    assert not rep.leg_block(1, 2).any() and not rep.leg_block(2, 1).any()


def test_unit_and_range_projections():
    assert np.array_equal(represent(UNIT, 10).matrix, np.eye(20))
    k, N = 3, 10
    expected = np.diag([0] * k + [1] * (N - k) + [1] * N)
    assert np.array_equal(represent(chi_b(k), N).matrix, expected)


def test_only_degree_zero_is_represented():
    with pytest.raises(NotDegreeGraded):
        represent(chi_a(1), 8)
    with pytest.raises(NotDegreeGraded):
        represent(chi_w_podles(), 8)
    with pytest.raises(BadParameter):
        represent(UNIT, 0)


def test_consistency_examples():
    assert compression_consistency(chi_w(), chi_w(), 16, 2) == 0.0
    assert compression_consistency(UNIT, chi_w(), 16, 0) == 0.0
    w = chi_w()
    assert compression_consistency(w, convolve(w, w), 32, 8) == 0.0
    with pytest.raises(BadParameter):
        compression_consistency(UNIT, UNIT, 8, 4)


def test_truncation_artifact_sits_at_the_cut():
    # S* S = I exactly, but its compression loses the last basis vector
    w = chi_w()
    assert compression_consistency(involute(w), w, 8, 0) > 0
    assert compression_consistency(involute(w), w, 8, 1) == 0.0


@settings(max_examples=40)
@given(elements(coord=4, max_len=12, degree0=True), elements(coord=4, max_len=12, degree0=True))
def test_representation_is_multiplicative_below_the_cut(f, g):
    # truncation only loses paths through indices >= N, so the low window is exact
    N, margin = 32, 8
    lhs = represent(convolve(f, g), N).matrix
    rhs = represent(f, N).matrix @ represent(g, N).matrix
    idx = np.r_[0:N - margin, N:2 * N - margin]
    assert np.abs(lhs[np.ix_(idx, idx)] - rhs[np.ix_(idx, idx)]).max() <= 1e-12


def test_low_window_detects_order():
    # the low window is sensitive to noncommutativity, so the test above has teeth
    f, g = chi_w(), e11_leg1()
    N = 16
    lhs = represent(convolve(f, g), N).matrix
    rev = represent(g, N).matrix @ represent(f, N).matrix
    assert np.abs(lhs[:N - 4, :N - 4] - rev[:N - 4, :N - 4]).max() > 0.5


def test_random_identities_in_interior_window():
    rng = random.Random(7)
    for _ in range(20):
        f, g = random_degree0_element(rng), random_degree0_element(rng)
        assert compression_consistency(f, g, 32, 8) <= 1e-12


def test_defect_projections():
    assert defect_projections(chi_w()) == (e11_leg2(), e11_leg1())
    kernel, cokernel = defect_projections(chi_a(1))
    assert kernel == ZERO and cokernel == UNIT - chi_b(1)
    assert defect_projections(UNIT) == (ZERO, ZERO)
    with pytest.raises(NotPartialIsometry):
        defect_projections(UNIT + UNIT)


def test_json_shape():
    op = represent(chi_w(), 2)
    data = op.to_json()
    assert len(data) == 4 and data[1][0] == [1.0, 0.0]
