"""Model parameters and closed-form spectra.

Parameters are supplied as multiplicative half powers

    qh = q**(1/2),  th = t**(1/2) = q**(g/2),
    k0, k1, k0p, k1p = q**(g0/2), q**(g1/2), q**(g0'/2), q**(g1'/2),

with ``q = exp(-alpha beta)``. Every spectral quantity is then rational in
these six numbers. The Askey-Wilson parameters are

    a = k0**2,  b = -k1**2,  c = qh k0p**2,  d = -qh k1p**2,

and ``kappa = k0 k1 k0p k1p`` so that ``q**rho_j = t**(n-1-j) kappa``.

Exact mode holds Fractions. Numeric mode accepts floats or mpmath numbers
and is used for additive parameters and limit checks.

Indices are 0-based: variable ``j`` runs over ``range(n)``.
"""

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from numbers import Rational

from .combinatorics import Flavor, as_partition
from .scalar import to_scalar

__all__ = [
    "ModelParams",
    "AdditiveParams",
    "ParameterError",
    "LimitDivergence",
    "from_additive",
    "rho_mult",
    "ch_value",
    "elementary",
    "bc_symmetric",
    "eigenvalue_bc",
    "eigenvalue_a",
    "eigenvalue",
    "transform_tilde",
    "transform_tilde_check",
    "extrapolate_to_zero",
    "limit_check",
    "limit_consistency",
]


class ParameterError(ValueError):
    """Parameters violate the model constraints."""


class LimitDivergence(ArithmeticError):
    """Extrapolation to beta = 0 did not stabilize."""


_NAMES = ("qh", "th", "k0", "k1", "k0p", "k1p")


def _is_exact_input(x):
    return isinstance(x, (str, Rational)) and not isinstance(x, bool)


@dataclass(frozen=True)
class ModelParams:
    n: int
    qh: object
    th: object = 1
    k0: object = 1
    k1: object = 1
    k0p: object = 1
    k1p: object = 1
    exact: bool = field(init=False, compare=False)

    def __post_init__(self):
        if not isinstance(self.n, int) or self.n < 1:
            raise ParameterError(f"n must be a positive integer, got {self.n!r}")
        values = [getattr(self, k) for k in _NAMES]
        exact = all(_is_exact_input(v) for v in values)
        if exact:
            try:
                values = [to_scalar(v) for v in values]
            except (TypeError, ValueError) as exc:
                raise ParameterError(str(exc)) from exc
            for k, v in zip(_NAMES, values):
                object.__setattr__(self, k, v)
        object.__setattr__(self, "exact", exact)
        for k, v in zip(_NAMES, values):
            if v == 0:
                raise ParameterError(f"{k} must be nonzero")
        if not 0 < values[0] < 1:
            raise ParameterError(f"qh must lie in (0, 1), got {values[0]}")

    @classmethod
    def free(cls, n, qh):
        """All couplings trivial (g = g0 = g1 = g0' = g1' = 0)."""
        return cls(n, qh)

    def with_n(self, n):
        return ModelParams(n, *(getattr(self, k) for k in _NAMES))

    @cached_property
    def q(self):
        return self.qh * self.qh

    @cached_property
    def t(self):
        return self.th * self.th

    @cached_property
    def a(self):
        return self.k0 * self.k0

    @cached_property
    def b(self):
        return -self.k1 * self.k1

    @cached_property
    def c(self):
        return self.qh * self.k0p * self.k0p

    @cached_property
    def d(self):
        return -self.qh * self.k1p * self.k1p

    @cached_property
    def kappa(self):
        return self.k0 * self.k1 * self.k0p * self.k1p

    def is_free(self):
        return all(getattr(self, k) == 1 for k in _NAMES[1:])

    def to_json(self):
        out = {"n": self.n}
        for k in _NAMES:
            v = getattr(self, k)
            out[k] = f"{v.numerator}/{v.denominator}" if self.exact else float(v)
        return out

    @classmethod
    def from_json(cls, data):
        return cls(int(data["n"]), *(data.get(k, "1/1") for k in _NAMES))


@dataclass(frozen=True)
class AdditiveParams:
    """The trigonometric parameters: step ``beta``, period ``alpha`` and couplings."""

    alpha: float
    beta: float
    g: float = 0.0
    g0: float = 0.0
    g1: float = 0.0
    g0p: float = 0.0
    g1p: float = 0.0

    def __post_init__(self):
        if not (self.alpha > 0 and self.beta > 0):
            raise ParameterError("alpha and beta must be positive")
        for k in ("g", "g0", "g1", "g0p", "g1p"):
            if getattr(self, k) < 0:
                raise ParameterError(f"coupling {k} must be nonnegative")

    def with_beta(self, beta):
        return AdditiveParams(self.alpha, beta, self.g, self.g0, self.g1, self.g0p, self.g1p)


def from_additive(p, n, exp=math.exp):
    """Multiplicative parameters ``q**(g/2)`` etc. for ``q = exp(-alpha beta)``.

    Pass ``exp=mpmath.exp`` to get extended-precision values.
    """
    ab = p.alpha * p.beta

    def half(g):
        return exp(-ab * g / 2)

    return ModelParams(n, half(1), half(p.g), half(p.g0), half(p.g1), half(p.g0p), half(p.g1p))


# -- spectral data -------------------------------------------------------------


def rho_mult(params, j):
    """``Q_j = q**rho_j = t**(n-1-j) kappa`` for 0-based ``j``."""
    n = params.n
    if not 0 <= j < n:
        raise IndexError(f"index {j} out of range for n = {n}")
    return params.t ** (n - 1 - j) * params.kappa


def ch_value(params, j, lj):
    """``ch alpha beta (lj + rho_j) = (q**lj Q_j + q**-lj / Q_j) / 2``."""
    x = params.q**lj * rho_mult(params, j)
    return (x + 1 / x) / 2


def elementary(xs, r):
    """Elementary symmetric polynomial ``e_r(xs)``."""
    e = [1] + [0] * r
    for x in xs:
        for k in range(r, 0, -1):
            e[k] = e[k] + e[k - 1] * x
    return e[r]


def bc_symmetric(t, p, r, order="forward"):
    """``E_r(t_1..t_n; p_r..p_n)``: the signed double sum with prefactor ``2**r``.

    ``p`` is the full list ``p_1..p_n``; only ``p_r..p_n`` enter, through
    weakly increasing index strings ``r <= l_1 <= ... <= l_{r-|J|} <= n``.
    ``order="reverse"`` enumerates both sums backwards; exact arithmetic makes
    the result identical.
    """
    n = len(t)
    if not 1 <= r <= n:
        raise ValueError(f"r must lie in 1..{n}")
    tail = list(range(r - 1, n))
    sizes = range(r + 1)
    if order == "reverse":
        tail = tail[::-1]
        sizes = reversed(sizes)
    total = 0
    for s in sizes:
        js = list(itertools.combinations(range(n), s))
        strings = list(itertools.combinations_with_replacement(tail, r - s))
        if order == "reverse":
            js.reverse()
            strings.reverse()
        h = 0
        for ls in strings:
            term = 1
            for l in ls:
                term = term * p[l]
            h = h + term
        e = 0
        for J in js:
            term = 1
            for j in J:
                term = term * t[j]
            e = e + term
        sign = -1 if (r - s) % 2 else 1
        total = total + sign * e * h
    return 2**r * total


def eigenvalue_bc(params, r, lam, order="forward"):
    """Eigenvalue of the order-``r`` BC operator on the polynomial labeled ``lam``."""
    lam = as_partition(lam, Flavor.BC)
    n = params.n
    if len(lam) != n:
        raise ValueError(f"partition {lam} has length {len(lam)}, expected {n}")
    t = [ch_value(params, j, lam[j]) for j in range(n)]
    p = [ch_value(params, j, 0) for j in range(n)]
    return bc_symmetric(t, p, r, order)


def eigenvalue_a(params, r, lam):
    """``e_r(q**lam_j th**(n-1-2j))``, the Macdonald operator eigenvalue."""
    lam = as_partition(lam, Flavor.A)
    n = params.n
    if len(lam) != n:
        raise ValueError(f"partition {lam} has length {len(lam)}, expected {n}")
    if not 1 <= r <= n:
        raise ValueError(f"r must lie in 1..{n}")
    xs = [params.q ** lam[j] * params.th ** (n - 1 - 2 * j) for j in range(n)]
    return elementary(xs, r)


def eigenvalue(flavor, params, r, lam):
    if Flavor.parse(flavor) is Flavor.A:
        return eigenvalue_a(params, r, lam)
    return eigenvalue_bc(params, r, lam)


def transform_tilde(params, r, lam, beta):
    """Both sides of the tilde-operator eigenvalue identity.

    Left: ``beta**-r sum_p (-1)**p C(n-p, n-r) E_p`` with ``E_0 = 1``.
    Right: ``beta**-r e_r(1 - q**(lam_j + rho_j))``.
    """
    n = params.n
    lam = as_partition(lam, Flavor.A)
    lhs = 0
    for p in range(r + 1):
        ep = 1 if p == 0 else eigenvalue_a(params, p, lam)
        lhs = lhs + (-1) ** p * math.comb(n - p, n - r) * ep
    xs = [1 - params.q ** lam[j] * params.th ** (n - 1 - 2 * j) for j in range(n)]
    rhs = elementary(xs, r)
    scale = beta ** (-r)
    return lhs * scale, rhs * scale


def transform_tilde_check(params, r, lam, beta=1):
    if params.exact:
        beta = to_scalar(beta)
    lhs, rhs = transform_tilde(params, r, lam, beta)
    return lhs == rhs


# -- beta -> 0 limits ------------------------------------------------------------


def extrapolate_to_zero(xs, ys):
    """Value at x = 0 of the interpolating polynomial through (xs, ys) (Neville)."""
    p = list(ys)
    m = len(xs)
    for level in range(1, m):
        for i in range(m - level):
            x0, x1 = xs[i], xs[i + level]
            p[i] = (x1 * p[i] - x0 * p[i + 1]) / (x1 - x0)
    return p[0]


@dataclass
class LimitRecord:
    flavor: str
    r: int
    lam: tuple
    betas: list
    values: list
    limit: float
    target: float
    ratio: float | None

    def to_json(self):
        return {
            "flavor": self.flavor,
            "r": self.r,
            "lambda": list(self.lam),
            "betas": [float(b) for b in self.betas],
            "values": [float(v) for v in self.values],
            "limit": float(self.limit),
            "target": float(self.target),
            "ratio": None if self.ratio is None else float(self.ratio),
        }


def _rho_additive(p, n, flavor):
    if flavor is Flavor.A:
        return [p.g * (n - 1 - 2 * j) / 2 for j in range(n)]
    s = (p.g0 + p.g1 + p.g0p + p.g1p) / 2
    return [(n - 1 - j) * p.g + s for j in range(n)]


def limit_check(additive, n, r, lam, betas, flavor=Flavor.BC, dps=60, div_tol=1e-3):
    """Extrapolate the rescaled eigenvalue to beta = 0.

    BC: ``beta**(-2r) E_r`` against ``alpha**(2r) E_r((lam+rho)**2; rho**2)``;
    the two differ by a lambda-independent constant, reported as ``ratio``.
    A: ``beta**-r`` times the tilde eigenvalue against
    ``alpha**r e_r(lam + rho)``; here the ratio should be 1.

    Eigenvalues are evaluated with mpmath at ``dps`` digits because they
    vanish like ``beta**(2r)`` through cancellation of O(1) terms.
    """
    import mpmath

    flavor = Flavor.parse(flavor)
    lam = as_partition(lam, flavor)
    betas = list(betas)
    if len(betas) < 2 or any(b1 <= b2 for b1, b2 in zip(betas, betas[1:])) or betas[-1] <= 0:
        raise ValueError("betas must be positive and strictly decreasing")
    with mpmath.workdps(dps):
        values = []
        for beta in betas:
            b = mpmath.mpf(beta)
            mp = from_additive(additive.with_beta(b), n, exp=mpmath.exp)
            if flavor is Flavor.A:
                # left side: the operator combination itself
                val, _ = transform_tilde(mp, r, lam, b)
            else:
                val = eigenvalue_bc(mp, r, lam) / b ** (2 * r)
            values.append(val)
        xs = [mpmath.mpf(b) ** (2 if flavor is Flavor.BC else 1) for b in betas]
        limit = extrapolate_to_zero(xs, values)
        sub = extrapolate_to_zero(xs[1:], values[1:])
        # values that are pure cancellation noise count as zero
        floor = mpmath.mpf(10) ** (-(dps // 2))
        scale = max(abs(limit), abs(sub))
        if scale > floor and abs(limit - sub) > div_tol * scale:
            raise LimitDivergence(f"extrapolants {limit} and {sub} disagree")
        steps = [abs(v1 - v0) for v0, v1 in zip(values, values[1:])]
        if any(s1 > max(s0, floor) for s0, s1 in zip(steps, steps[1:])):
            raise LimitDivergence("successive values move apart as beta shrinks")
        rho = _rho_additive(additive, n, flavor)
        alpha = mpmath.mpf(additive.alpha)
        if flavor is Flavor.A:
            target = alpha**r * elementary([lam[j] + rho[j] for j in range(n)], r)
        else:
            t = [(lam[j] + rho[j]) ** 2 for j in range(n)]
            pp = [x**2 for x in rho]
            target = alpha ** (2 * r) * bc_symmetric(t, pp, r)
        ratio = None if target == 0 else limit / target
    return LimitRecord(
        flavor.value, r, lam, betas, [float(v) for v in values], float(limit), float(target),
        None if ratio is None else float(ratio),
    )


@dataclass
class LimitReport:
    flavor: str
    r: int
    constant: float | None
    records: list
    passed: bool
    tol: float
    skipped: list

    def to_json(self):
        return {
            "suite": "limit",
            "flavor": self.flavor,
            "r": self.r,
            "constant": self.constant,
            "tol": self.tol,
            "pass": self.passed,
            "records": [rec.to_json() for rec in self.records],
            "skipped": [list(l) for l in self.skipped],
        }


def limit_consistency(additive, n, r, lams, betas, flavor=Flavor.BC, tol=1e-4, dps=60, min_verify=3):
    """Check that the limit ratio is lambda-independent (BC) or equal to 1 (A).

    For BC the constant is fitted at the first usable ``lam`` and verified at
    every other one; at least ``min_verify`` of those are required. Labels
    whose target vanishes identically are skipped.
    """
    flavor = Flavor.parse(flavor)
    records, skipped = [], []
    for lam in lams:
        rec = limit_check(additive, n, r, lam, betas, flavor, dps)
        if rec.ratio is None:
            skipped.append(rec.lam)
        else:
            records.append(rec)
    if not records:
        return LimitReport(flavor.value, r, None, [], False, tol, skipped)
    const = 1.0 if flavor is Flavor.A else records[0].ratio
    verify = records if flavor is Flavor.A else records[1:]
    passed = all(abs(rec.ratio / const - 1) < tol for rec in verify)
    if len(verify) < min_verify:
        passed = False
    return LimitReport(flavor.value, r, records[0].ratio if flavor is Flavor.BC else 1.0,
                       records, passed, tol, skipped)
