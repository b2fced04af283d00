"""Commuting difference operators in multiplicative variables.

With ``z_j = exp(i alpha x_j)`` and ``q = exp(-alpha beta)`` the shift
``x_j -> x_j + i beta`` is ``z_j -> q z_j``, and the trigonometric ratios

    sin(alpha/2 (i beta g + u)) / sin(alpha u / 2) = k**-1 (1 - k**2 Z) / (1 - Z)
    cos(alpha/2 (i beta g + u)) / cos(alpha u / 2) = k**-1 (1 + k**2 Z) / (1 + Z)

(``k = q**(g/2)``, ``Z = exp(i alpha u)``) make every coefficient a rational
function over the rationals. The BC operators are built in their
conjugated form, where no square roots occur:

    H_r = sum_{|J| <= r, eps} U_{J^c, r-|J|} V_{eps J; J^c} T_{eps J}.

The unconjugated operators are ``Delta**(1/2) H_r Delta**(-1/2)``; they are
never formed because ``V**(1/2)`` is not rational.
"""

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction

from . import kernel
from .combinatorics import Flavor
from .laurent import LaurentPoly, NonzeroRemainder, pack
from .ratfunc import RatFunc, _divide_by_factor, _times_factor

__all__ = [
    "ArgSpec",
    "OpTerm",
    "DiffOperator",
    "potential_v",
    "potential_w",
    "build_V",
    "build_U",
    "build_H",
    "apply",
    "expected_term_count",
]


@dataclass(frozen=True)
class ArgSpec:
    """Argument ``sum sign_j x_j + offset i beta (+ i beta / 2 if half)``.

    ``vars`` is a tuple of ``(index, sign)`` pairs, at most two of them.
    """

    vars: tuple
    offset: int = 0
    half: bool = False

    def __post_init__(self):
        if not 1 <= len(self.vars) <= 2:
            raise ValueError("an argument involves one or two variables")
        if self.offset not in (-1, 0, 1):
            raise ValueError("offset must be -1, 0 or 1 (multiples of i beta)")
        if any(s not in (-1, 1) for _, s in self.vars):
            raise ValueError("signs must be +1 or -1")

    def exponents(self, n):
        e = [0] * n
        for j, s in self.vars:
            e[j] += s
        return tuple(e)

    def prefactor(self, params):
        """The constant multiplying ``z**mu`` in ``exp(i alpha u)``."""
        c = params.q**self.offset
        return c * params.qh if self.half else c


def _ratio(params, spec, k, kind):
    """``k**-1 (1 -+ k**2 Z) / (1 -+ Z)`` with ``Z = prefactor * z**mu``."""
    n = params.n
    mu = spec.exponents(n)
    c = spec.prefactor(params)
    sign = -1 if kind == "sin" else 1
    num = LaurentPoly(n, {(0,) * n: 1 / Fraction(k), mu: sign * Fraction(k) * c})
    den = LaurentPoly(n, {(0,) * n: 1, mu: sign * c})
    return RatFunc.from_factors(num, [(den, 1)])


def potential_v(spec, params):
    """Pair potential ``th**-1 (1 - t Z) / (1 - Z)``."""
    if spec.half:
        raise ValueError("the pair potential takes no half-step offset")
    return _ratio(params, spec, params.th, "sin")


def potential_w(sign, j, params):
    """External-field potential at ``sign * x_j``.

    Equals ``kappa**-1 (1-aZ)(1-bZ)(1-cZ)(1-dZ) / ((1-Z**2)(1-qZ**2))`` with
    ``Z = z_j**sign``; the denominator is kept split into four binomials.
    """
    base = ((j, sign),)
    out = _ratio(params, ArgSpec(base), params.k0, "sin")
    out = out * _ratio(params, ArgSpec(base), params.k1, "cos")
    out = out * _ratio(params, ArgSpec(base, half=True), params.k0p, "sin")
    out = out * _ratio(params, ArgSpec(base, half=True), params.k1p, "cos")
    return out


def _pair(params, j, ej, jp, ejp, offset=0):
    return potential_v(ArgSpec(((j, ej), (jp, ejp)), offset), params)


def build_V(epsJ, K, params):
    """``V_{eps J; K}``.

    ``epsJ`` maps index -> sign (or is a sequence of ``(index, sign)``).
    """
    epsJ = dict(epsJ)
    K = tuple(sorted(K))
    if set(epsJ) & set(K):
        raise ValueError("J and K must be disjoint")
    out = RatFunc.constant(params.n, 1)
    J = sorted(epsJ)
    for j in J:
        out = out * potential_w(epsJ[j], j, params)
    for j, jp in itertools.combinations(J, 2):
        out = out * _pair(params, j, epsJ[j], jp, epsJ[jp])
        out = out * _pair(params, j, epsJ[j], jp, epsJ[jp], 1)
    for j in J:
        for k in K:
            out = out * _pair(params, j, epsJ[j], k, 1)
            out = out * _pair(params, j, epsJ[j], k, -1)
    return out


def _signs(L):
    for eps in itertools.product((1, -1), repeat=len(L)):
        yield dict(zip(L, eps))


def _u_main(K, m, params):
    total = RatFunc.constant(params.n, 0)
    for L in itertools.combinations(K, m):
        rest = [k for k in K if k not in L]
        for eps in _signs(L):
            term = RatFunc.constant(params.n, 1)
            for l in L:
                term = term * potential_w(eps[l], l, params)
            for l, lp in itertools.combinations(L, 2):
                term = term * _pair(params, l, eps[l], lp, eps[lp])
                term = term * _pair(params, l, -eps[l], lp, -eps[lp], -1)
            for l in L:
                for k in rest:
                    term = term * _pair(params, l, eps[l], k, 1)
                    term = term * _pair(params, l, eps[l], k, -1)
            total = total + term
    return total if m % 2 == 0 else -total


def _ordered_set_partitions(items):
    items = list(items)
    if not items:
        yield []
        return
    n = len(items)
    for size in range(1, n + 1):
        for first in itertools.combinations(items, size):
            rest = [x for x in items if x not in first]
            for tail in _ordered_set_partitions(rest):
                yield [first] + tail


def _u_alt(K, m, params, vcache):
    total = RatFunc.constant(params.n, 0)
    Kset = set(K)
    for L in itertools.combinations(K, m):
        for eps in _signs(L):
            for blocks in _ordered_set_partitions(L):
                used = set()
                term = RatFunc.constant(params.n, 1)
                for block in blocks:
                    used |= set(block)
                    key = (tuple((l, eps[l]) for l in block), tuple(sorted(Kset - used)))
                    V = vcache.get(key)
                    if V is None:
                        V = vcache[key] = build_V(key[0], key[1], params)
                    term = term * V
                total = total + (term if len(blocks) % 2 == 0 else -term)
    return total


def build_U(K, m, params, variant="main"):
    """``U_{K, m}``; ``variant`` is ``"main"`` (signed subset sum) or ``"alt"`` (nested chains)."""
    K = tuple(sorted(K))
    if not 0 <= m <= len(K):
        raise ValueError(f"m = {m} out of range for |K| = {len(K)}")
    if m == 0:
        return RatFunc.constant(params.n, 1)
    if variant == "main":
        return _u_main(K, m, params).reduce()
    if variant == "alt":
        return _u_alt(K, m, params, {}).reduce()
    raise ValueError(f"unknown variant {variant!r}")


@dataclass(frozen=True)
class OpTerm:
    coeff: RatFunc
    shift: tuple


def expected_term_count(flavor, n, r):
    if Flavor.parse(flavor) is Flavor.A:
        return math.comb(n, r)
    return sum(2**s * math.comb(n, s) for s in range(r + 1))


class DiffOperator:
    """Finite sum of rational-function coefficients times q-shifts.

    Application puts all terms over one common denominator (the union of
    the coefficients' binomial factors), accumulates the integer numerator
    with the kernel, then divides the factors back out exactly. The first
    application precomputes each coefficient's numerator lifted to the
    common denominator.
    """

    def __init__(self, terms, flavor, order, params):
        self.terms = tuple(terms)
        self.flavor = Flavor.parse(flavor)
        self.order = order
        self.params = params
        self.nvars = params.n
        self._plan = None

    def __len__(self):
        return len(self.terms)

    def scaled(self, c):
        c = Fraction(c)
        return DiffOperator(
            [OpTerm(t.coeff * c, t.shift) for t in self.terms], self.flavor, self.order, self.params
        )

    def common_denominator(self):
        D = {}
        for term in self.terms:
            for F, m in term.coeff.factors:
                if D.get(F, 0) < m:
                    D[F] = m
        return sorted(D.items(), key=lambda fm: sorted(fm[0]._c.items()))

    def _build_plan(self):
        D = self.common_denominator()
        plan = []
        for term in self.terms:
            own = dict(term.coeff.factors)
            c = term.coeff.num._c
            for F, m in D:
                extra = m - own.get(F, 0)
                if extra:
                    c = _times_factor(c, F, extra)
            plan.append((c, term.coeff.num._den, term.shift))
        self._plan = (plan, D)
        return self._plan

    def apply(self, f):
        """Exact image of the Laurent polynomial ``f``.

        Raises :class:`NonzeroRemainder` if the sum is not a polynomial.
        """
        if f.nvars != self.nvars:
            raise ValueError(f"dimension mismatch: operator on {self.nvars}, input {f.nvars}")
        plan, D = self._plan or self._build_plan()
        q = self.params.q
        parts = []
        L = 1
        for c, den, shift in plan:
            g = f.shift(shift, q)
            if not g._c:
                continue
            b = den * g._den
            parts.append((c, g._c, b))
            L = L * b // math.gcd(L, b)
        acc = {}
        for c, gc, b in parts:
            kernel.addmul(acc, c, gc, L // b)
        acc = kernel.prune(acc)
        for F, m in D:
            for _ in range(m):
                acc = _divide_by_factor(acc, F)
                if acc is None:
                    raise NonzeroRemainder(
                        f"operator image is not polynomial: factor {F!r} does not divide"
                    )
        return LaurentPoly._raw(self.nvars, acc, L)

    __call__ = apply

    def to_json(self):
        return [
            {"shift": list(t.shift), "num": t.coeff.num.to_json(), "den": t.coeff.den.to_json()}
            for t in self.terms
        ]


def build_H(flavor, r, params):
    """Order-``r`` operator of the given flavor."""
    flavor = Flavor.parse(flavor)
    n = params.n
    if not 1 <= r <= n:
        raise ValueError(f"r must lie in 1..{n}")
    terms = []
    if flavor is Flavor.A:
        for J in itertools.combinations(range(n), r):
            coeff = RatFunc.constant(n, 1)
            for j in J:
                for k in range(n):
                    if k not in J:
                        coeff = coeff * _pair(params, j, 1, k, -1)
            shift = tuple(1 if j in J else 0 for j in range(n))
            terms.append(OpTerm(coeff.reduce(), shift))
        return DiffOperator(terms, flavor, r, params)
    ucache = {}
    for s in range(r + 1):
        for J in itertools.combinations(range(n), s):
            K = tuple(k for k in range(n) if k not in J)
            key = (K, r - s)
            U = ucache.get(key)
            if U is None:
                U = ucache[key] = build_U(K, r - s, params)
            for eps in _signs(J):
                coeff = (U * build_V(eps, K, params)).reduce()
                shift = tuple(eps.get(j, 0) for j in range(n))
                terms.append(OpTerm(coeff, shift))
    return DiffOperator(terms, flavor, r, params)


def apply(op, f):
    return op.apply(f)
