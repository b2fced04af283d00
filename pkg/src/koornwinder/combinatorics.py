"""Partitions, dominance orders, Weyl-group orbits and monomial bases.

Two flavors are supported. ``BC``: the hyperoctahedral group (permutations
and sign flips) acting on weakly decreasing nonnegative labels. ``A``: the
symmetric group acting on weakly decreasing integer labels, negative parts
allowed, with dominance additionally fixing the total sum.

Partitions are plain tuples of ints.
"""

import enum
import itertools
from fractions import Fraction

from .laurent import LaurentPoly, pack

__all__ = [
    "Flavor",
    "NotWInvariant",
    "as_partition",
    "dominance_leq",
    "order_ideal",
    "w_orbit",
    "monomial",
    "expand_w_invariant",
    "from_expansion",
    "partitions_up_to",
]


class Flavor(str, enum.Enum):
    A = "a"
    BC = "bc"

    @classmethod
    def parse(cls, value):
        if isinstance(value, cls):
            return value
        try:
            return cls(str(value).lower())
        except ValueError:
            raise ValueError(f"unknown flavor {value!r}; expected 'a' or 'bc'") from None


class NotWInvariant(ValueError):
    """A polynomial is not invariant under a generator of the Weyl group."""


def as_partition(parts, flavor=Flavor.BC):
    """Validate and return ``parts`` as a tuple."""
    flavor = Flavor.parse(flavor)
    lam = tuple(int(x) for x in parts)
    if not lam:
        raise ValueError("partition must have at least one part")
    if any(a < b for a, b in zip(lam, lam[1:])):
        raise ValueError(f"{lam} is not weakly decreasing")
    if flavor is Flavor.BC and lam[-1] < 0:
        raise ValueError(f"{lam} has a negative part; not allowed for flavor BC")
    return lam


def dominance_leq(mu, lam, flavor=Flavor.BC):
    """True iff ``mu <= lam`` in the dominance order of the flavor."""
    flavor = Flavor.parse(flavor)
    if len(mu) != len(lam):
        raise ValueError(f"length mismatch: {len(mu)} vs {len(lam)}")
    sm = sl = 0
    for a, b in zip(mu, lam):
        sm += a
        sl += b
        if sm > sl:
            return False
    return flavor is Flavor.BC or sm == sl


def _decreasing(n, top, total=None, bottom=0):
    """Weakly decreasing n-tuples with entries in [bottom, top]."""
    for combo in itertools.combinations_with_replacement(range(top, bottom - 1, -1), n):
        if total is None or sum(combo) == total:
            yield combo


def order_ideal(lam, flavor=Flavor.BC):
    """All ``mu <= lam``, ordered by total weight and then lexicographically.

    Both keys are monotone along dominance, so the list is a linear extension:
    every ``mu`` appears after everything it dominates.
    """
    flavor = Flavor.parse(flavor)
    lam = as_partition(lam, flavor)
    n = len(lam)
    w = sum(lam)
    if flavor is Flavor.BC:
        cands = (mu for mu in _decreasing(n, lam[0]) if sum(mu) <= w)
    else:
        cands = _decreasing(n, lam[0], total=w, bottom=lam[-1])
    ideal = [mu for mu in cands if dominance_leq(mu, lam, flavor)]
    ideal.sort(key=lambda mu: (sum(mu), mu))
    return ideal


def partitions_up_to(n, max_weight):
    """Nonnegative partitions of length n with total weight <= max_weight, in ideal order."""
    out = [mu for mu in _decreasing(n, max_weight) if sum(mu) <= max_weight]
    out.sort(key=lambda mu: (sum(mu), mu))
    return out


def w_orbit(lam, flavor=Flavor.BC):
    """Distinct images of ``lam`` under W, sorted."""
    flavor = Flavor.parse(flavor)
    perms = set(itertools.permutations(lam))
    if flavor is Flavor.A:
        return sorted(perms)
    out = set()
    for p in perms:
        choices = [(x,) if x == 0 else (x, -x) for x in p]
        out.update(itertools.product(*choices))
    return sorted(out)


def monomial(lam, flavor=Flavor.BC):
    """The orbit sum ``m_lam``; every coefficient is 1."""
    orbit = w_orbit(lam, flavor)
    n = len(lam)
    return LaurentPoly._raw(n, {pack(e): 1 for e in orbit}, 1, True)


def _generators(n, flavor):
    gens = []
    for j in range(n - 1):
        perm = list(range(n))
        perm[j], perm[j + 1] = perm[j + 1], perm[j]
        gens.append(("transpose", perm))
    if flavor is Flavor.BC:
        gens.append(("flip", n - 1))
    return gens


def check_w_invariant(f, flavor=Flavor.BC):
    """Raise :class:`NotWInvariant` unless ``f`` is fixed by every generator of W."""
    flavor = Flavor.parse(flavor)
    for kind, g in _generators(f.nvars, flavor):
        image = f.permute(g) if kind == "transpose" else f.flip(g)
        if image != f:
            raise NotWInvariant(f"not invariant under {kind} {g}")


def _is_dominant(e, flavor):
    if any(a < b for a, b in zip(e, e[1:])):
        return False
    return flavor is Flavor.A or e[-1] >= 0


def expand_w_invariant(f, flavor=Flavor.BC, check=True):
    """Coefficients ``c_mu`` with ``f = sum c_mu m_mu``.

    Each ``m_mu`` has coefficient 1 on ``z**mu`` and no other dominant
    exponent, so for invariant ``f`` the coefficient of ``m_mu`` is the
    coefficient of the dominant monomial ``z**mu``.
    """
    flavor = Flavor.parse(flavor)
    if check:
        check_w_invariant(f, flavor)
    out = {}
    for e, c in f.items():
        if _is_dominant(e, flavor):
            out[e] = c
    return dict(sorted(out.items(), key=lambda kv: (sum(kv[0]), kv[0])))


def from_expansion(coeffs, n, flavor=Flavor.BC):
    """Rebuild ``sum c_mu m_mu`` from a coefficient map."""
    total = LaurentPoly.zero(n)
    for mu, c in coeffs.items():
        if c:
            total = total + monomial(mu, flavor) * Fraction(c)
    return total
