"""Rational functions with factored denominators.

The denominator of a :class:`RatFunc` is kept as a multiset of canonical
polynomial factors rather than one expanded polynomial. Every coefficient in
the difference operators has denominators made of binomials ``1 - c z**mu``,
so sums only ever need the union of factor multisets as a common
denominator, and exact division peels the binomials off one at a time. No
multivariate gcd is ever computed.

A canonical factor has per-variable minimum exponent zero, coprime integer
coefficients and a positive leading coefficient in the packed monomial
order. Scalar and monomial content are moved into the numerator.
"""

import math
from fractions import Fraction

from . import kernel
from .laurent import LaurentPoly, NonzeroRemainder, divide_exact, pack, unpack
from .scalar import to_scalar

__all__ = ["RatFunc", "NonzeroRemainder", "canonical_factor"]


def canonical_factor(d):
    """Split ``d`` as ``scale * z**shift * F`` with ``F`` canonical.

    Returns ``(scale, shift, F)``; ``F`` is ``None`` when ``d`` is a monomial.
    """
    if d.is_zero():
        raise ZeroDivisionError("zero denominator")
    n = d.nvars
    exps = [unpack(k, n) for k in d._c]
    shift = tuple(min(e[j] for e in exps) for j in range(n))
    ps = pack(shift)
    g = math.gcd(*d._c.values())
    lead = max(d._c)
    if d._c[lead] < 0:
        g = -g
    scale = Fraction(g, d._den)
    if len(d._c) == 1:
        return scale, shift, None
    F = LaurentPoly._raw(n, {k - ps: a // g for k, a in d._c.items()}, 1, True)
    return scale, shift, F


def _fkey(F):
    return tuple(sorted(F._c.items()))


def _times_factor(c, F, power=1):
    """Integer dict ``c`` times ``F**power``."""
    f = F._c
    if len(f) == 2:
        (k1, a1), (k2, a2) = f.items()
        for _ in range(power):
            c = kernel.mul_binomial(c, a1, k1, a2, k2)
        return c
    for _ in range(power):
        c = kernel.mul(c, f)
    return c


def _divide_by_factor(c, F):
    return divide_exact(c, F._c, F.nvars)


class RatFunc:
    """Quotient ``num / prod(F**m for F, m in factors)``.

    Build with ``RatFunc(num, den)`` for an arbitrary Laurent denominator or
    with :meth:`from_factors` to keep a known factorization.
    """

    __slots__ = ("num", "factors")

    def __init__(self, num, den=None):
        if not isinstance(num, LaurentPoly):
            raise TypeError("numerator must be a LaurentPoly; use RatFunc.constant for scalars")
        if den is None:
            self.num, self.factors = num, ()
            return
        if isinstance(den, LaurentPoly):
            if den.nvars != num.nvars:
                raise ValueError("dimension mismatch")
            num, factors = _absorb(num, [(den, 1)])
        else:
            c = to_scalar(den)
            if not c:
                raise ZeroDivisionError("zero denominator")
            num, factors = num * (1 / c), {}
        self.num, self.factors = _finish(num, factors)

    @classmethod
    def from_factors(cls, num, factors):
        """``num / prod(F**m)`` for an iterable of ``(LaurentPoly, m)`` pairs."""
        num, facs = _absorb(num, factors)
        return cls._raw(*_finish(num, facs))

    @classmethod
    def _raw(cls, num, factors):
        self = object.__new__(cls)
        self.num = num
        self.factors = factors
        return self

    @classmethod
    def constant(cls, nvars, c=1):
        return cls._raw(LaurentPoly.constant(nvars, c), ())

    @property
    def nvars(self):
        return self.num.nvars

    @property
    def den(self):
        c = {0: 1}
        for F, m in self.factors:
            c = _times_factor(c, F, m)
        return LaurentPoly._raw(self.nvars, c, 1, True)

    def is_zero(self):
        return self.num.is_zero()

    def is_polynomial_form(self):
        return not self.factors

    def factor_count(self):
        return sum(m for _, m in self.factors)

    # -- arithmetic -----------------------------------------------------------
    def _coerce(self, other):
        if isinstance(other, RatFunc):
            if other.nvars != self.nvars:
                raise ValueError(f"dimension mismatch: {self.nvars} vs {other.nvars}")
            return other
        if isinstance(other, LaurentPoly):
            if other.nvars != self.nvars:
                raise ValueError(f"dimension mismatch: {self.nvars} vs {other.nvars}")
            return RatFunc._raw(other, ())
        return RatFunc.constant(self.nvars, to_scalar(other))

    def _combine(self, other, sign):
        if other.is_zero():
            return self
        if self.is_zero():
            return other if sign > 0 else -other
        ma = dict(self.factors)
        mb = dict(other.factors)
        merged = dict(ma)
        for F, m in mb.items():
            if merged.get(F, 0) < m:
                merged[F] = m
        a = self.num._c
        b = other.num._c
        for F, m in merged.items():
            if m > ma.get(F, 0):
                a = _times_factor(a, F, m - ma.get(F, 0))
            if m > mb.get(F, 0):
                b = _times_factor(b, F, m - mb.get(F, 0))
        da, db = self.num._den, other.num._den
        g = math.gcd(da, db)
        L = da // g * db
        acc = {k: v * (L // da) for k, v in a.items()}
        kernel.add_into(acc, b, sign * (L // db))
        num = LaurentPoly._raw(self.nvars, acc, L)
        return RatFunc._raw(*_finish(num, merged))

    def __add__(self, other):
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        return self._combine(other, 1)

    __radd__ = __add__

    def __sub__(self, other):
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        return self._combine(other, -1)

    def __rsub__(self, other):
        return (-self) + other

    def __neg__(self):
        return RatFunc._raw(-self.num, self.factors)

    def __mul__(self, other):
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        if self.is_zero() or other.is_zero():
            return RatFunc.constant(self.nvars, 0)
        merged = dict(self.factors)
        for F, m in other.factors:
            merged[F] = merged.get(F, 0) + m
        return RatFunc._raw(*_finish(self.num * other.num, merged))

    __rmul__ = __mul__

    def __eq__(self, other):
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        return self.cross_equal(other)

    __hash__ = None

    def cross_equal(self, other):
        """Decide ``num1 * den2 == num2 * den1`` without expanding both sides fully."""
        return (self - other).is_zero()

    # -- reduction and division -------------------------------------------------
    def reduce(self):
        """Cancel every denominator factor that divides the numerator exactly."""
        num = self.num
        out = {}
        c = num._c
        for F, m in self.factors:
            while m:
                qc = _divide_by_factor(c, F)
                if qc is None:
                    break
                c = qc
                m -= 1
            if m:
                out[F] = m
        num = LaurentPoly._raw(self.nvars, c, num._den)
        return RatFunc._raw(*_finish(num, out))

    def to_laurent(self):
        """The polynomial ``P`` with ``P * den == num``; raises :class:`NonzeroRemainder`."""
        c = self.num._c
        for F, m in self.factors:
            for _ in range(m):
                c = _divide_by_factor(c, F)
                if c is None:
                    raise NonzeroRemainder(f"denominator factor {F!r} does not divide the numerator")
        return LaurentPoly._raw(self.nvars, c, self.num._den)

    # -- substitutions ------------------------------------------------------------
    def invert_vars(self):
        return RatFunc.from_factors(self.num.invert_vars(), [(F.invert_vars(), m) for F, m in self.factors])

    def evaluate(self, point):
        d = self.den.evaluate(point)
        if not d:
            raise ZeroDivisionError("denominator vanishes at this point")
        return self.num.evaluate(point) / d

    def evaluate_angles(self, theta):
        return self.num.evaluate_angles(theta) / self.den.evaluate_angles(theta)

    def to_json(self):
        return {"num": self.num.to_json(), "den": self.den.to_json()}

    def __repr__(self):
        if not self.factors:
            return f"RatFunc({self.num!r})"
        den = " * ".join(f"({F!r})" + (f"^{m}" if m > 1 else "") for F, m in self.factors)
        return f"RatFunc(({self.num!r}) / {den})"


def _absorb(num, factors):
    """Canonicalize denominator factors, pushing their content into ``num``."""
    out = {}
    n = num.nvars
    for d, m in factors:
        if m < 0:
            raise ValueError("negative multiplicity")
        if m == 0:
            continue
        scale, shift, F = canonical_factor(d)
        inv = [-s * m for s in shift]
        num = num.mul_monomial(inv, 1 / scale**m)
        if F is not None:
            out[F] = out.get(F, 0) + m
        if d.nvars != n:
            raise ValueError("dimension mismatch")
    return num, out


def _finish(num, factors):
    if num.is_zero():
        return LaurentPoly.zero(num.nvars), ()
    items = sorted(((F, m) for F, m in factors.items() if m), key=lambda fm: _fkey(fm[0]))
    return num, tuple(items)
