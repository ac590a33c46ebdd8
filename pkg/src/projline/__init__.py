"""Exact groupoid models of the quantum projective line and the Podles sphere.

Projections over the convolution algebras are classified up to unitary
equivalence, with checkable certificates, and K-theory is computed from the
index map of the circle generator.
"""

from __future__ import annotations

from .algebra import UNIT, ZERO, AlgebraElement, SliceFn, convolve, involute
from .errors import BadCertificate, ProjlineError
from .ktheory import K0Class, in_positive_cone, index_eta, k0_of_class, k_groups
from .monoid import (Deficient, Geometry, Positive, RankZero, line_bundle_class, monoid_mul,
                     representative_matrix)
from .normal_form import BlockSpec, CofiniteBlock, FiniteBlock, classify, reduce, verify_certificate

__all__ = [
    "UNIT", "ZERO", "AlgebraElement", "SliceFn", "convolve", "involute",
    "BadCertificate", "ProjlineError",
    "K0Class", "in_positive_cone", "index_eta", "k0_of_class", "k_groups",
    "Deficient", "Geometry", "Positive", "RankZero", "line_bundle_class", "monoid_mul",
    "representative_matrix",
    "BlockSpec", "CofiniteBlock", "FiniteBlock", "classify", "reduce", "verify_certificate",
]
