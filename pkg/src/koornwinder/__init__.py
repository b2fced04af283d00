"""Exact construction and verification of Koornwinder and Macdonald polynomials.

The commuting q-difference operators of the BC and A type Calogero-Sutherland
systems are built with rational-function coefficients in the variables
``z_j = exp(i alpha x_j)``; their joint polynomial eigenfunctions come from
a triangular solve, and every spectral claim is checked exactly.
"""

from .combinatorics import Flavor, dominance_leq, expand_w_invariant, monomial, order_ideal, w_orbit
from .diagonalize import EigenvalueCollision, OrthoPolynomial, SpectralSystem, TriangularityViolation
from .kernel import IMPLEMENTATION as KERNEL
from .laurent import LaurentPoly, NonzeroRemainder
from .operators import build_H, build_U, build_V, potential_v, potential_w
from .params import AdditiveParams, ModelParams, eigenvalue_a, eigenvalue_bc, from_additive
from .ratfunc import RatFunc

__all__ = [
    "Flavor",
    "dominance_leq",
    "expand_w_invariant",
    "monomial",
    "order_ideal",
    "w_orbit",
    "EigenvalueCollision",
    "OrthoPolynomial",
    "SpectralSystem",
    "TriangularityViolation",
    "KERNEL",
    "LaurentPoly",
    "NonzeroRemainder",
    "build_H",
    "build_U",
    "build_V",
    "potential_v",
    "potential_w",
    "AdditiveParams",
    "ModelParams",
    "eigenvalue_a",
    "eigenvalue_bc",
    "from_additive",
    "RatFunc",
]
