import itertools
import random
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from koornwinder.combinatorics import (
    Flavor,
    NotWInvariant,
    as_partition,
    dominance_leq,
    expand_w_invariant,
    from_expansion,
    monomial,
    order_ideal,
    partitions_up_to,
    w_orbit,
)
from koornwinder.laurent import LaurentPoly


def all_partitions(n, top, flavor="bc"):
    lo = 0 if flavor == "bc" else -top
    return [p for p in itertools.product(range(lo, top + 1), repeat=n) if list(p) == sorted(p, reverse=True)]


def test_dominance_examples():
    assert dominance_leq((1, 1), (2, 0))
    assert not dominance_leq((2, 2), (3, 0)) and not dominance_leq((3, 0), (2, 2))
    assert dominance_leq((1, 0), (1, 1), "bc")
    assert not dominance_leq((1, 0), (1, 1), "a")


def test_dominance_length_mismatch():
    with pytest.raises(ValueError):
        dominance_leq((1,), (1, 0))


@pytest.mark.parametrize("n", [1, 2, 3])
@pytest.mark.parametrize("flavor", ["bc", "a"])
def test_dominance_is_a_partial_order(n, flavor):
    parts = all_partitions(n, 4 if flavor == "bc" else 2, flavor)
    leq = {(a, b): dominance_leq(a, b, flavor) for a in parts for b in parts}
    for a in parts:
        assert leq[a, a]
    for a, b in itertools.product(parts, repeat=2):
        if a != b and leq[a, b]:
            assert not leq[b, a]
    for a, b, c in itertools.product(parts, repeat=3):
        if leq[a, b] and leq[b, c]:
            assert leq[a, c]


@pytest.mark.parametrize("n", [2, 3])
def test_dominance_matches_pairing_with_decreasing_vectors(n):
    rng = random.Random(7)
    ys = [tuple(range(n, 0, -1))]
    for _ in range(40):
        v = sorted((Fraction(rng.randint(1, 300), rng.randint(1, 30)) for _ in range(n)), reverse=True)
        if len(set(v)) == n:
            ys.append(tuple(v))
    # weakly decreasing positive vectors that pick out single partial sums
    ys += [tuple([1] * m + [Fraction(1, 1000)] * (n - m)) for m in range(1, n + 1)]
    parts = all_partitions(n, 4)
    for mu, lam in itertools.product(parts, repeat=2):
        pair = all(sum(a * y for a, y in zip(mu, v)) <= sum(b * y for b, y in zip(lam, v)) for v in ys)
        if dominance_leq(mu, lam):
            assert pair
        else:
            assert not pair, (mu, lam)


def brute_ideal(lam, flavor):
    n = len(lam)
    lo = 0 if flavor == "bc" else min(lam)
    cands = itertools.product(range(lo, lam[0] + 1), repeat=n)
    return {mu for mu in cands if list(mu) == sorted(mu, reverse=True) and dominance_leq(mu, lam, flavor)}


def test_order_ideal_examples():
    assert order_ideal((1, 1)) == [(0, 0), (1, 0), (1, 1)]
    assert order_ideal((0, 0, 0)) == [(0, 0, 0)]
    assert order_ideal((2, 0)) == [(0, 0), (1, 0), (1, 1), (2, 0)]


@pytest.mark.parametrize("lam", [(3, 1), (2, 2, 1), (4, 0), (2, 1, 1), (3, 2, 0)])
def test_order_ideal_is_complete_and_downward_closed(lam):
    ideal = order_ideal(lam)
    assert set(ideal) == brute_ideal(lam, "bc")
    for i, mu in enumerate(ideal):
        for nu in ideal[:i]:
            assert not (dominance_leq(mu, nu) and mu != nu), "linear extension violated"
        for nu in all_partitions(len(lam), lam[0]):
            if dominance_leq(nu, mu):
                assert nu in ideal


@pytest.mark.parametrize("lam", [(2, 0), (3, 0, -1), (2, 1, -1), (1, 1, -2)])
def test_order_ideal_a_flavor(lam):
    ideal = order_ideal(lam, "a")
    assert set(ideal) == brute_ideal(lam, "a")
    assert all(sum(mu) == sum(lam) for mu in ideal)
    assert ideal[-1] == lam


def test_w_orbit_examples():
    assert set(w_orbit((1, 0))) == {(1, 0), (-1, 0), (0, 1), (0, -1)}
    assert set(w_orbit((1, 1))) == {(1, 1), (1, -1), (-1, 1), (-1, -1)}
    assert set(w_orbit((2, 1), "a")) == {(2, 1), (1, 2)}


def test_orbit_size_is_group_order_over_stabilizer():
    assert len(w_orbit((2, 1, 0))) == 24
    assert len(w_orbit((1, 1, 1))) == 8
    assert len(w_orbit((2, 2, 0))) == 12


def test_monomial_examples():
    assert monomial((0, 0)) == 1
    m10 = LaurentPoly(2, {(1, 0): 1, (-1, 0): 1, (0, 1): 1, (0, -1): 1})
    assert monomial((1, 0)) == m10
    m11 = LaurentPoly(2, {(1, 1): 1, (1, -1): 1, (-1, 1): 1, (-1, -1): 1})
    assert monomial((1, 1)) == m11


def test_expand_examples():
    f = monomial((1, 0)) + monomial((0, 0)) * 3
    assert expand_w_invariant(f) == {(0, 0): 3, (1, 0): 1}
    with pytest.raises(NotWInvariant):
        expand_w_invariant(LaurentPoly(2, {(1, 0): 1}))


def test_expand_product_against_orbit_count():
    # brute force: coefficient of z**mu in m_11 m_10 counts orbit pairs summing to mu
    a, b = w_orbit((1, 1)), w_orbit((1, 0))
    counts = {}
    for x, y in itertools.product(a, b):
        s = (x[0] + y[0], x[1] + y[1])
        counts[s] = counts.get(s, 0) + 1
    expect = {mu: c for mu, c in counts.items() if mu[0] >= mu[1] >= 0}
    got = expand_w_invariant(monomial((1, 1)) * monomial((1, 0)))
    assert got == expect == {(1, 0): 2, (2, 1): 1}


@given(st.integers(0, 4), st.integers(0, 4), st.integers(0, 4))
def test_expand_monomial_is_delta(a, b, c):
    lam = tuple(sorted((a, b, c), reverse=True))
    assert expand_w_invariant(monomial(lam)) == {lam: 1}


@pytest.mark.parametrize("flavor", ["bc", "a"])
def test_expansion_roundtrip(flavor):
    coeffs = {(2, 0): Fraction(3, 4), (1, 1): -2, (0, 0): 5} if flavor == "bc" else {(2, 0): 1, (1, 1): Fraction(-1, 3)}
    f = from_expansion(coeffs, 2, flavor)
    assert expand_w_invariant(f, flavor) == {k: Fraction(v) for k, v in coeffs.items()}


def test_a_flavor_invariance_excludes_sign_flips():
    f = monomial((1, 0), "a")
    assert expand_w_invariant(f, "a") == {(1, 0): 1}
    with pytest.raises(NotWInvariant):
        expand_w_invariant(f, "bc")


def test_partition_validation():
    with pytest.raises(ValueError):
        as_partition((1, 2))
    with pytest.raises(ValueError):
        as_partition((1, -1), "bc")
    assert as_partition((1, -1), "a") == (1, -1)
    with pytest.raises(ValueError):
        Flavor.parse("c")


def test_partitions_up_to_is_ordered():
    ps = partitions_up_to(2, 3)
    assert ps == [(0, 0), (1, 0), (1, 1), (2, 0), (2, 1), (3, 0)]
