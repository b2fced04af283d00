"""Multivariate Laurent polynomials over the rationals.

A :class:`LaurentPoly` stores integer coefficients on packed exponent keys
together with one positive common denominator. The packing is linear,

    key(e) = sum_j e_j * 2**(16 j),

so monomial products are key sums and the integer order of keys is the
lexicographic order with the last variable most significant. That order is
the fixed monomial order used for every canonical form in the package.
"""

import heapq
import math
from fractions import Fraction

import numpy as np

from . import kernel
from .scalar import format_scalar, to_scalar

from ._kernel_py import BITS, HALF

BASE = 1 << BITS
MAX_EXPONENT = HALF - 1


class NonzeroRemainder(ArithmeticError):
    """An exact division left a remainder."""


def pack(exps):
    key = 0
    for j, e in enumerate(exps):
        if not -MAX_EXPONENT <= e <= MAX_EXPONENT:
            raise OverflowError(f"exponent {e} outside the packable range")
        key += e << (BITS * j)
    return key


def unpack(key, n):
    out = []
    for _ in range(n):
        d = ((key + HALF) & (BASE - 1)) - HALF
        out.append(d)
        key = (key - d) >> BITS
    return tuple(out)


def _normalize(c, den):
    if not c:
        return c, 1
    if den < 0:
        c = {k: -a for k, a in c.items()}
        den = -den
    g = math.gcd(den, *c.values())
    if g != 1:
        c = {k: a // g for k, a in c.items()}
        den //= g
    return c, den


class LaurentPoly:
    """Laurent polynomial in ``nvars`` variables with rational coefficients.

    Construct from a mapping ``{exponent tuple: coefficient}``; coefficients
    may be ints, Fractions or ``"p/q"`` strings. Values are immutable.
    """

    __slots__ = ("nvars", "_c", "_den", "_hash")

    def __init__(self, nvars, terms=None):
        if nvars < 1:
            raise ValueError("nvars must be positive")
        self.nvars = nvars
        acc = {}
        den = 1
        pairs = terms.items() if hasattr(terms, "items") else (terms or ())
        fracs = []
        for exps, coeff in pairs:
            exps = tuple(exps)
            if len(exps) != nvars:
                raise ValueError(f"exponent {exps} has length {len(exps)}, expected {nvars}")
            coeff = to_scalar(coeff)
            if coeff:
                fracs.append((pack(exps), coeff))
                den = den * coeff.denominator // math.gcd(den, coeff.denominator)
        for k, coeff in fracs:
            acc[k] = acc.get(k, 0) + coeff.numerator * (den // coeff.denominator)
        acc = {k: a for k, a in acc.items() if a}
        self._c, self._den = _normalize(acc, den)
        self._hash = None

    @classmethod
    def _raw(cls, nvars, c, den=1, normalized=False):
        self = object.__new__(cls)
        self.nvars = nvars
        if normalized:
            self._c, self._den = c, den
        else:
            self._c, self._den = _normalize(c, den)
        self._hash = None
        return self

    # -- constructors -------------------------------------------------
    @classmethod
    def constant(cls, nvars, c=1):
        c = to_scalar(c)
        if not c:
            return cls._raw(nvars, {}, 1, True)
        return cls._raw(nvars, {0: c.numerator}, c.denominator, True)

    @classmethod
    def zero(cls, nvars):
        return cls._raw(nvars, {}, 1, True)

    @classmethod
    def monomial(cls, nvars, exps, c=1):
        if len(exps) != nvars:
            raise ValueError("exponent length mismatch")
        c = to_scalar(c)
        if not c:
            return cls.zero(nvars)
        return cls._raw(nvars, {pack(exps): c.numerator}, c.denominator, True)

    @classmethod
    def variable(cls, nvars, j, power=1):
        exps = [0] * nvars
        exps[j] = power
        return cls.monomial(nvars, exps)

    # -- inspection -----------------------------------------------------
    @property
    def terms(self):
        return {unpack(k, self.nvars): Fraction(a, self._den) for k, a in self._c.items()}

    def items(self):
        """Terms as ``(exponents, Fraction)`` pairs in increasing monomial order."""
        return [(unpack(k, self.nvars), Fraction(self._c[k], self._den)) for k in sorted(self._c)]

    def coeff(self, exps):
        return Fraction(self._c.get(pack(exps), 0), self._den)

    def exponents(self):
        return [unpack(k, self.nvars) for k in sorted(self._c)]

    def __len__(self):
        return len(self._c)

    def __bool__(self):
        return bool(self._c)

    def is_zero(self):
        return not self._c

    def is_constant(self):
        return not self._c or (len(self._c) == 1 and 0 in self._c)

    def exponent_bounds(self):
        """Per-variable (min, max) exponents; ``None`` for the zero polynomial."""
        if not self._c:
            return None
        exps = [unpack(k, self.nvars) for k in self._c]
        return [(min(e[j] for e in exps), max(e[j] for e in exps)) for j in range(self.nvars)]

    def __eq__(self, other):
        if isinstance(other, LaurentPoly):
            return self.nvars == other.nvars and self._den == other._den and self._c == other._c
        try:
            other = to_scalar(other)
        except TypeError:
            return NotImplemented
        return self == LaurentPoly.constant(self.nvars, other)

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.nvars, self._den, frozenset(self._c.items())))
        return self._hash

    # -- arithmetic -------------------------------------------------------
    def _coerce(self, other):
        if isinstance(other, LaurentPoly):
            if other.nvars != self.nvars:
                raise ValueError(f"dimension mismatch: {self.nvars} vs {other.nvars}")
            return other
        return LaurentPoly.constant(self.nvars, other)

    def __add__(self, other):
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        if not other._c:
            return self
        if not self._c:
            return other
        da, db = self._den, other._den
        g = math.gcd(da, db)
        L = da // g * db
        fa, fb = L // da, L // db
        acc = {k: a * fa for k, a in self._c.items()} if fa != 1 else dict(self._c)
        kernel.add_into(acc, other._c, fb)
        return LaurentPoly._raw(self.nvars, acc, L)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly._raw(self.nvars, {k: -a for k, a in self._c.items()}, self._den, True)

    def __sub__(self, other):
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, LaurentPoly):
            if other.nvars != self.nvars:
                raise ValueError(f"dimension mismatch: {self.nvars} vs {other.nvars}")
            return LaurentPoly._raw(self.nvars, kernel.mul(self._c, other._c), self._den * other._den)
        try:
            c = to_scalar(other)
        except TypeError:
            return NotImplemented
        if not c:
            return LaurentPoly.zero(self.nvars)
        return LaurentPoly._raw(
            self.nvars, {k: a * c.numerator for k, a in self._c.items()}, self._den * c.denominator
        )

    __rmul__ = __mul__

    def __truediv__(self, other):
        c = to_scalar(other)
        if not c:
            raise ZeroDivisionError("division of a Laurent polynomial by zero")
        return self * (1 / c)

    def __pow__(self, k):
        if not isinstance(k, int) or k < 0:
            raise ValueError("only nonnegative integer powers")
        out = LaurentPoly.constant(self.nvars, 1)
        base = self
        while k:
            if k & 1:
                out = out * base
            k >>= 1
            if k:
                base = base * base
        return out

    def mul_monomial(self, exps, c=1):
        """Multiply by ``c * z**exps``."""
        c = to_scalar(c)
        s = pack(exps)
        return LaurentPoly._raw(
            self.nvars, {k + s: a * c.numerator for k, a in self._c.items()}, self._den * c.denominator
        )

    # -- substitutions ------------------------------------------------------
    def qshift(self, j, e, q):
        """Substitute ``z_j -> q**e z_j``: each ``c z**mu`` becomes ``c q**(e mu_j) z**mu``."""
        if not 0 <= j < self.nvars:
            raise IndexError(f"variable index {j} out of range")
        shift = [0] * self.nvars
        shift[j] = e
        return self.shift(shift, q)

    def shift(self, svec, q):
        """Substitute ``z_j -> q**svec[j] z_j`` for every j at once."""
        if len(svec) != self.nvars:
            raise ValueError("shift vector length mismatch")
        if not any(svec) or not self._c:
            return self
        q = to_scalar(q)
        if not q:
            raise ZeroDivisionError("q must be nonzero")
        n = self.nvars
        powers = {k: sum(s * m for s, m in zip(svec, unpack(k, n))) for k in self._c}
        emin = min(powers.values())
        emax = max(powers.values())
        qn, qd = q.numerator, q.denominator
        emin = min(emin, 0)
        emax = max(emax, 0)
        cache = {}
        out = {}
        for k, a in self._c.items():
            e = powers[k]
            f = cache.get(e)
            if f is None:
                f = cache[e] = qn ** (e - emin) * qd ** (emax - e)
            out[k] = a * f
        den = self._den * qd**emax * qn ** (-emin)
        return LaurentPoly._raw(n, out, den)

    def invert_vars(self):
        """Substitute ``z_j -> 1/z_j`` for all j (complex conjugation on the torus)."""
        return LaurentPoly._raw(self.nvars, {-k: a for k, a in self._c.items()}, self._den, True)

    def transform_exponents(self, fn):
        """Apply ``fn`` to every exponent tuple; ``fn`` must be injective."""
        n = self.nvars
        out = {pack(fn(unpack(k, n))): a for k, a in self._c.items()}
        if len(out) != len(self._c):
            raise ValueError("exponent map is not injective")
        return LaurentPoly._raw(n, out, self._den, True)

    def permute(self, perm):
        """Rename variables: z_j -> z_{perm[j]}."""
        n = self.nvars

        def fn(e):
            out = [0] * n
            for j, pj in enumerate(perm):
                out[pj] = e[j]
            return tuple(out)

        return self.transform_exponents(fn)

    def flip(self, j):
        """Substitute ``z_j -> 1/z_j``."""
        return self.transform_exponents(lambda e: e[:j] + (-e[j],) + e[j + 1 :])

    # -- evaluation -----------------------------------------------------------
    def evaluate(self, point):
        """Exact value at a point of nonzero rationals."""
        point = [to_scalar(x) for x in point]
        total = Fraction(0)
        for exps, c in self.items():
            term = c
            for x, e in zip(point, exps):
                term *= x**e
            total += term
        return total

    def evaluate_angles(self, theta):
        """Numeric value at ``z_j = exp(i theta_j)``; ``theta`` has shape (..., nvars)."""
        theta = np.asarray(theta, dtype=float)
        if not self._c:
            return np.zeros(theta.shape[:-1], dtype=complex)
        items = self.items()
        E = np.array([e for e, _ in items], dtype=float)
        C = np.array([float(c) for _, c in items])
        phase = theta @ E.T
        return np.exp(1j * phase) @ C

    # -- serialization --------------------------------------------------------
    def to_json(self):
        return [{"exponents": list(e), "coeff": format_scalar(c)} for e, c in self.items()]

    @classmethod
    def from_json(cls, nvars, data):
        return cls(nvars, {tuple(t["exponents"]): t["coeff"] for t in data})

    def __repr__(self):
        if not self._c:
            return "0"
        parts = []
        for exps, c in self.items():
            mono = "*".join(
                f"z{j + 1}" if e == 1 else f"z{j + 1}^{e}" for j, e in enumerate(exps) if e
            )
            if not mono:
                parts.append(str(c))
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append("-" + mono)
            else:
                parts.append(f"{c}*{mono}")
        return " + ".join(parts).replace("+ -", "- ")


def divide_exact(num, den, nvars):
    """Exact quotient of integer polynomial dicts, or ``None``.

    Long division by the leading term in the packed monomial order. The
    quotient of an exact division has per-variable exponent ranges
    [min_num - min_den, max_num - max_den]; leaving that box proves a
    remainder, which also guarantees termination.
    """
    if not num:
        return {}
    if len(den) == 2:
        (k1, a1), (k2, a2) = den.items()
        if math.gcd(a1, a2) == 1:
            return kernel.div_binomial(num, a1, k1, a2, k2)
    if len(den) == 1:
        (kd, ad), = den.items()
        out = {}
        for k, a in num.items():
            qa, r = divmod(a, ad)
            if r:
                return None
            out[k - kd] = qa
        return out
    ne = [unpack(k, nvars) for k in num]
    de = [unpack(k, nvars) for k in den]
    lo = [min(e[j] for e in ne) - min(e[j] for e in de) for j in range(nvars)]
    hi = [max(e[j] for e in ne) - max(e[j] for e in de) for j in range(nvars)]
    if any(a > b for a, b in zip(lo, hi)):
        return None
    lead = max(den)
    cd = den[lead]
    rem = dict(num)
    heap = [-k for k in rem]
    heapq.heapify(heap)
    out = {}
    while rem:
        k = -heapq.heappop(heap)
        a = rem.get(k)
        if not a:
            continue
        qk = k - lead
        e = unpack(qk, nvars)
        if any(x < l or x > h for x, l, h in zip(e, lo, hi)):
            return None
        qa, r = divmod(a, cd)
        if r:
            return None
        out[qk] = qa
        for kd, b in den.items():
            kk = qk + kd
            if kk not in rem:
                heapq.heappush(heap, -kk)
            s = rem.get(kk, 0) - qa * b
            if s:
                rem[kk] = s
            else:
                rem.pop(kk, None)
    return out
