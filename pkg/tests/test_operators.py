import cmath
import itertools
from fractions import Fraction

import numpy as np
import pytest

from conftest import generic
from koornwinder.combinatorics import monomial, order_ideal, partitions_up_to
from koornwinder.laurent import LaurentPoly, NonzeroRemainder
from koornwinder.operators import (
    ArgSpec,
    DiffOperator,
    build_H,
    build_U,
    build_V,
    expected_term_count,
    potential_v,
    potential_w,
)
from koornwinder.params import AdditiveParams, ModelParams, eigenvalue_a, eigenvalue_bc, from_additive
from koornwinder.ratfunc import RatFunc

F = Fraction
BETA = 0.3
COUPLINGS = AdditiveParams(1.0, BETA, 0.7, 0.3, 0.4, 0.2, 0.5)


def sin_ratio(g, u):
    return cmath.sin((1j * BETA * g + u) / 2) / cmath.sin(u / 2)


def cos_ratio(g, u):
    return cmath.cos((1j * BETA * g + u) / 2) / cmath.cos(u / 2)


def exact_params(n):
    # float couplings read as exact binary fractions
    p = from_additive(COUPLINGS, n)
    return ModelParams(n, *(F(x) for x in (p.qh, p.th, p.k0, p.k1, p.k0p, p.k1p)))


ANGLES = np.array([[0.37, 1.91], [2.4, -0.8], [-1.3, 0.55]])


def test_pair_potential_matches_trigonometric_form():
    p = exact_params(2)
    for x in ANGLES:
        for s, off in itertools.product((1, -1), (-1, 0, 1)):
            v = potential_v(ArgSpec(((0, 1), (1, s)), off), p).evaluate_angles(x)
            u = x[0] + s * x[1] + 1j * BETA * off
            assert v == pytest.approx(sin_ratio(COUPLINGS.g, u), rel=1e-12)


def test_field_potential_matches_trigonometric_form():
    p = exact_params(2)
    c = COUPLINGS
    for x in ANGLES:
        for sign in (1, -1):
            u = sign * x[1]
            h = u + 1j * BETA / 2
            expect = sin_ratio(c.g0, u) * cos_ratio(c.g1, u) * sin_ratio(c.g0p, h) * cos_ratio(c.g1p, h)
            assert potential_w(sign, 1, p).evaluate_angles(x) == pytest.approx(expect, rel=1e-12)


def test_potential_examples():
    free = ModelParams(2, "1/3")
    assert potential_v(ArgSpec(((0, 1), (1, -1))), free) == 1
    assert potential_w(1, 0, free) == 1
    p = ModelParams(1, "1/2", "1/1", "1/2", "1/1", "1/1", "1/1")  # only a = 1/4 active
    z = LaurentPoly(1, {(1,): 1})
    one = LaurentPoly.constant(1)
    assert potential_w(1, 0, p) == RatFunc(one * 2 - z * F(1, 2), one - z)
    with pytest.raises(ValueError):
        potential_v(ArgSpec(((0, 1),), half=True), free)
    with pytest.raises(ValueError):
        ArgSpec(((0, 1), (1, 1), (2, 1)))


@pytest.mark.parametrize("which", range(3))
def test_field_potential_sign_is_inversion(which):
    p = generic(2, which)
    for j in (0, 1):
        assert potential_w(-1, j, p) == potential_w(1, j, p).invert_vars()


def test_V_examples():
    p = generic(2, 0)
    assert build_V({0: 1}, (), p) == potential_w(1, 0, p)
    free = ModelParams(3, "1/3")
    assert build_V({0: 1, 2: -1}, (1,), free) == 1
    with pytest.raises(ValueError):
        build_V({0: 1}, (0, 1), p)


@pytest.mark.parametrize("which", range(3))
def test_V_global_sign_flip_is_inversion(which):
    p = generic(3, which)
    for J, K in [((0,), (1, 2)), ((0, 2), (1,))]:
        for eps in itertools.product((1, -1), repeat=len(J)):
            plus = dict(zip(J, eps))
            minus = {j: -e for j, e in plus.items()}
            assert build_V(minus, K, p) == build_V(plus, K, p).invert_vars()


def test_U_examples():
    p = generic(2, 1)
    assert build_U((0, 1), 0, p) == 1
    expect = -(potential_w(1, 0, p) + potential_w(-1, 0, p))
    assert build_U((0,), 1, p) == expect
    assert build_U((0,), 1, p, "alt") == expect
    with pytest.raises(ValueError):
        build_U((0,), 2, p)
    with pytest.raises(ValueError):
        build_U((0,), 1, p, "other")


@pytest.mark.parametrize("which", range(3))
def test_U_is_inversion_invariant(which):
    p = generic(3, which)
    for K, m in [((0, 1), 1), ((0, 1), 2), ((0, 1, 2), 2)]:
        U = build_U(K, m, p)
        assert U.invert_vars() == U


def test_free_U_values():
    # with trivial couplings every potential is 1, so U counts signed subsets
    free = ModelParams(3, "1/2")
    assert build_U((0, 1, 2), 1, free) == -6
    assert build_U((0, 1), 2, free) == 4


@pytest.mark.parametrize("flavor,n", [("bc", 1), ("bc", 2), ("bc", 3), ("a", 2), ("a", 3)])
def test_term_counts(flavor, n):
    p = generic(n, 0)
    for r in range(1, n + 1):
        H = build_H(flavor, r, p)
        assert len(H) == expected_term_count(flavor, n, r)
        assert len({t.shift for t in H.terms}) == len(H)


def test_term_count_values():
    assert expected_term_count("bc", 2, 1) == 5
    assert expected_term_count("bc", 3, 2) == 1 + 6 + 12
    assert expected_term_count("a", 4, 2) == 6


def test_free_n1_operator_terms():
    H = build_H("bc", 1, ModelParams(1, "1/2"))
    coeffs = {t.shift: t.coeff for t in H.terms}
    assert coeffs == {(0,): -2, (1,): 1, (-1,): 1}


def test_apply_free_monomial():
    p = ModelParams(1, "1/2")  # q = 1/4
    H = build_H("bc", 1, p)
    assert H.apply(monomial((1,))) == monomial((1,)) * F(9, 4)


@pytest.mark.parametrize("n", [1, 2, 3])
def test_constants_are_annihilated(n):
    p = generic(n, 1)
    for r in range(1, n + 1):
        assert build_H("bc", r, p).apply(LaurentPoly.constant(n)).is_zero()


@pytest.mark.parametrize("n", [2, 3])
def test_free_operators_are_diagonal_on_monomials(n):
    p = ModelParams(n, "2/5")
    for r in range(1, n + 1):
        H = build_H("bc", r, p)
        for lam in partitions_up_to(n, 3):
            assert H.apply(monomial(lam)) == monomial(lam) * eigenvalue_bc(p, r, lam)


def test_a_top_order_is_pure_shift():
    p = generic(3, 2)
    H = build_H("a", 3, p)
    assert len(H) == 1 and H.terms[0].shift == (1, 1, 1) and H.terms[0].coeff == 1
    for lam in [(2, 1, 0), (1, 0, -1)]:
        m = monomial(lam, "a")
        assert H.apply(m) == m * p.q ** sum(lam)


def test_a_minimal_monomial_is_eigen():
    p = generic(2, 0)
    m = monomial((1, 0), "a")
    assert order_ideal((1, 0), "a") == [(1, 0)]
    assert build_H("a", 1, p).apply(m) == m * eigenvalue_a(p, 1, (1, 0))


def test_apply_rejects_wrong_dimension():
    H = build_H("bc", 1, generic(2, 0))
    with pytest.raises(ValueError):
        H.apply(LaurentPoly.constant(3))


def test_single_term_with_pole_raises():
    p = generic(1, 0)
    H = build_H("bc", 1, p)
    # one shift term alone leaves a pole behind
    lone = DiffOperator([t for t in H.terms if t.shift == (1,)], "bc", 1, p)
    with pytest.raises(NonzeroRemainder):
        lone.apply(monomial((1,)))


def test_scaled_operator():
    p = generic(2, 2)
    H = build_H("bc", 1, p)
    f = monomial((1, 0))
    assert H.scaled(3).apply(f) == H.apply(f) * 3


def test_build_H_range():
    with pytest.raises(ValueError):
        build_H("bc", 3, generic(2, 0))
    with pytest.raises(ValueError):
        build_H("bc", 0, generic(2, 0))
