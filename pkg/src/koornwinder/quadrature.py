"""Floating-point torus quadrature against the orthogonality weights.

This is the independent numeric side of the package: a Gram-Schmidt oracle
for the exact polynomials and an orthogonality check. With ``zeta`` on the
unit circle the BC weight is

    Delta = prod_{j<k, e, e'} d_v(z_j**e z_k**e') * prod_{j, e} d_w(z_j**e),
    d_v(x) = (x; q) / (t x; q),
    d_w(x) = (x**2; q) / ((a x; q) (b x; q) (c x; q) (d x; q)),

and the A weight is ``prod_{j != k} d_v(z_j / z_k)``. Integrals are torus
averages over a uniform product grid, which is spectrally accurate for
these smooth periodic integrands. The overall normalization is irrelevant.
"""

import itertools
import math
from dataclasses import dataclass, field

import numpy as np

from .combinatorics import Flavor, monomial, order_ideal

__all__ = [
    "TRUNCATION",
    "qpoch",
    "weight_bc",
    "weight_a",
    "QuadratureGrid",
    "WeightEvaluator",
    "inner_product",
    "gs_oracle",
    "OracleResult",
    "gram_check",
    "GramReport",
    "selfadjoint_check",
]

TRUNCATION = 1e-17


class WeightEvaluationError(ArithmeticError):
    """The weight came out non-real or negative beyond rounding."""


def qpoch(x, q, threshold=TRUNCATION):
    """``(x; q)_inf`` truncated at the first ``p`` with ``|q|**p < threshold``.

    Works elementwise on numpy arrays.
    """
    q = float(q)
    if not abs(q) < 1:
        raise ValueError("|q| must be below 1")
    x = np.asarray(x, dtype=complex)
    out = np.ones_like(x)
    qp = 1.0
    while abs(qp) >= threshold:
        out = out * (1 - x * qp)
        qp *= q
    return out if out.ndim else complex(out)


def _floats(params):
    out = {k: float(getattr(params, k)) for k in ("q", "t", "qh")}
    # d_w pairs each factor of (x**2; q) = (x; q)(-x; q)(qh x; q)(-qh x; q)
    # with one of (a x; q), (b x; q), (c x; q), (d x; q)
    out["w"] = [
        (1.0, float(params.k0) ** 2),
        (-1.0, float(params.k1) ** 2),
        (out["qh"], float(params.k0p) ** 2),
        (-out["qh"], float(params.k1p) ** 2),
    ]
    return out


def _poch_ratio(y, s, q, threshold):
    """``(y; q) / (s y; q)``; a finite product when ``s = q**m``.

    The finite form avoids 0/0 at nodes where both factors vanish.
    """
    if s > 0:
        m = math.log(s) / math.log(q)
        if abs(m - round(m)) < 1e-12 and 0 <= round(m) <= 64:
            out = np.ones_like(np.asarray(y, dtype=complex))
            for i in range(round(m)):
                out = out * (1 - y * q**i)
            return out
    return qpoch(y, q, threshold) / qpoch(s * y, q, threshold)


def _d_v(x, P, threshold):
    return _poch_ratio(x, P["t"], P["q"], threshold)


def _d_w(x, P, threshold):
    out = 1
    for e, s in P["w"]:
        out = out * _poch_ratio(e * x, s, P["q"], threshold)
    return out


def _weight_complex(theta, params, flavor, threshold):
    theta = np.asarray(theta, dtype=float)
    n = theta.shape[-1]
    P = _floats(params)
    z = np.exp(1j * theta)
    out = np.ones(theta.shape[:-1], dtype=complex)
    if flavor is Flavor.A:
        for j, k in itertools.permutations(range(n), 2):
            out = out * _d_v(z[..., j] / z[..., k], P, threshold)
        return out
    for j, k in itertools.combinations(range(n), 2):
        for e, ep in itertools.product((1, -1), repeat=2):
            out = out * _d_v(z[..., j] ** e * z[..., k] ** ep, P, threshold)
    for j in range(n):
        for e in (1, -1):
            out = out * _d_w(z[..., j] ** e, P, threshold)
    return out


def _real_weight(w, tol=1e-9):
    scale = max(float(np.max(np.abs(w))), 1e-300)
    if float(np.max(np.abs(w.imag))) > tol * scale:
        raise WeightEvaluationError("weight has a non-negligible imaginary part")
    w = w.real
    if float(np.min(w)) < -1e-12 * scale:
        raise WeightEvaluationError("weight is negative on the torus")
    return w


def weight_bc(theta, params, threshold=TRUNCATION):
    """BC weight at angle vectors ``theta`` (shape ``(..., n)``)."""
    return _real_weight(_weight_complex(theta, params, Flavor.BC, threshold))


def weight_a(theta, params, threshold=TRUNCATION):
    """A weight at angle vectors ``theta`` (shape ``(..., n)``)."""
    return _real_weight(_weight_complex(theta, params, Flavor.A, threshold))


@dataclass
class QuadratureGrid:
    """Uniform product grid with ``M`` nodes ``2 pi m / M`` per dimension."""

    n: int
    M: int = 64

    def __post_init__(self):
        if self.M < 2:
            raise ValueError("need at least two nodes per dimension")
        nodes = 2 * math.pi * np.arange(self.M) / self.M
        mesh = np.meshgrid(*([nodes] * self.n), indexing="ij")
        self.points = np.stack([m.ravel() for m in mesh], axis=-1)

    def exact_for_degree(self, degree):
        """True if the rule integrates trigonometric polynomials of this degree exactly."""
        return self.M >= degree + 1

    def __len__(self):
        return len(self.points)


class WeightEvaluator:
    """Weight values on a grid, computed once."""

    def __init__(self, params, flavor=Flavor.BC, grid=None, threshold=TRUNCATION):
        self.params = params
        self.flavor = Flavor.parse(flavor)
        self.grid = grid or QuadratureGrid(params.n)
        self.threshold = threshold
        fn = weight_bc if self.flavor is Flavor.BC else weight_a
        self.values = fn(self.grid.points, params, threshold)

    def __call__(self, theta):
        fn = weight_bc if self.flavor is Flavor.BC else weight_a
        return fn(theta, self.params, self.threshold)


def _values(f, grid, cache=None):
    if cache is None:
        return f.evaluate_angles(grid.points)
    key = id(f)
    if key not in cache:
        cache[key] = (f, f.evaluate_angles(grid.points))
    return cache[key][1]


def inner_product(f, g, weight, cache=None):
    """Torus average of ``f * conj(g) * Delta`` (complex; real for real data)."""
    grid = weight.grid
    fv = _values(f, grid, cache)
    gv = _values(g, grid, cache)
    return complex(np.mean(fv * np.conj(gv) * weight.values))


@dataclass
class OracleResult:
    lam: tuple
    coeffs: dict
    condition: float

    def to_json(self):
        return {
            "lambda": list(self.lam),
            "condition": self.condition,
            "coeffs": [{"mu": list(mu), "coeff": c} for mu, c in self.coeffs.items()],
        }


def gs_oracle(flavor, lam, params, weight=None, max_condition=1e12):
    """Monic Gram-Schmidt orthogonalization of ``m_lam`` against the lower monomials.

    Solves ``G c = -h`` with ``G`` the Gram matrix of ``{m_mu : mu < lam}``
    and ``h_mu = <m_lam, m_mu>``.
    """
    flavor = Flavor.parse(flavor)
    lam = tuple(lam)
    weight = weight or WeightEvaluator(params, flavor)
    lower = order_ideal(lam, flavor)[:-1]
    if not lower:
        return OracleResult(lam, {lam: 1.0}, 1.0)
    basis = [monomial(mu, flavor) for mu in lower]
    top = monomial(lam, flavor)
    cache = {}
    G = np.array([[inner_product(a, b, weight, cache).real for b in basis] for a in basis])
    h = np.array([inner_product(top, b, weight, cache).real for b in basis])
    cond = float(np.linalg.cond(G))
    if not cond < max_condition:
        raise np.linalg.LinAlgError(f"Gram matrix is ill-conditioned (condition {cond:.3g})")
    c = np.linalg.solve(G, -h)
    coeffs = {mu: float(x) for mu, x in zip(lower, c)}
    coeffs[lam] = 1.0
    return OracleResult(lam, coeffs, cond)


@dataclass
class GramReport:
    lams: list
    matrix: np.ndarray
    tol: float
    records: list = field(default_factory=list)

    @property
    def passed(self):
        return all(r["pass"] for r in self.records)

    @property
    def max_ratio(self):
        return max((r["ratio"] for r in self.records), default=0.0)

    def to_json(self):
        return {"pass": self.passed, "tol": self.tol, "max_ratio": self.max_ratio, "records": self.records}


def gram_check(polys, params, weight=None, tol=1e-8):
    """Pairwise orthogonality of exact polynomials.

    ``polys`` is a list of objects with ``lam``, ``flavor`` and ``poly()``.
    The reported ratio is ``|<p, p'>| / sqrt(<p, p> <p', p'>)``.
    """
    if not polys:
        return GramReport([], np.zeros((0, 0)), tol)
    flavor = polys[0].flavor
    weight = weight or WeightEvaluator(params, flavor)
    fs = [p.poly() for p in polys]
    cache = {}
    k = len(fs)
    G = np.array([[inner_product(fs[i], fs[j], weight, cache).real for j in range(k)] for i in range(k)])
    report = GramReport([p.lam for p in polys], G, tol)
    for i, j in itertools.combinations(range(k), 2):
        ratio = abs(G[i, j]) / math.sqrt(abs(G[i, i] * G[j, j]))
        report.records.append(
            {
                "lambda_pair": [list(polys[i].lam), list(polys[j].lam)],
                "inner_product": float(G[i, j]),
                "ratio": float(ratio),
                "pass": bool(ratio < tol),
            }
        )
    return report


def selfadjoint_check(system, r, lams, weight=None, tol=1e-8):
    """``<H_r m, m'> = <m, H_r m'>`` on monomial pairs, relative to the norms involved."""
    weight = weight or WeightEvaluator(system.params, system.flavor)
    cache = {}
    out = []
    ms = {lam: monomial(lam, system.flavor) for lam in lams}
    imgs = {lam: system.operator(r).apply(ms[lam]) for lam in lams}

    def norm(f):
        return math.sqrt(abs(inner_product(f, f, weight, cache)))

    for a, b in itertools.combinations_with_replacement(lams, 2):
        left = inner_product(imgs[a], ms[b], weight, cache)
        right = inner_product(ms[a], imgs[b], weight, cache)
        scale = norm(imgs[a]) * norm(ms[b]) + norm(ms[a]) * norm(imgs[b])
        rel = abs(left - right) / scale if scale else abs(left - right)
        out.append({"lambda_pair": [list(a), list(b)], "difference": float(rel), "pass": bool(rel < tol)})
    return out
