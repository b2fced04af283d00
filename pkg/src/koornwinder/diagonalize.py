"""Triangular diagonalization and the exact verification battery.

The polynomial ``p_lam`` is computed as the unique monic eigenvector of one
operator inside the span of ``{m_mu : mu <= lam}``. With
``p = sum_nu c_nu m_nu`` and ``H m_nu = sum_mu M[nu][mu] m_mu`` the eigen
equation reads, for ``mu < lam``,

    c_mu (E_lam - M[mu][mu]) = sum_{mu < nu <= lam} c_nu M[nu][mu],

solved from ``lam`` downwards along the ideal's linear extension.
"""

import itertools
from dataclasses import dataclass, field
from fractions import Fraction

from .combinatorics import (
    Flavor,
    as_partition,
    expand_w_invariant,
    from_expansion,
    monomial,
    order_ideal,
)
from .operators import build_H, build_U
from .params import eigenvalue
from .scalar import format_scalar

__all__ = [
    "TriangularityViolation",
    "EigenvalueCollision",
    "OrthoPolynomial",
    "SpectralSystem",
    "CheckRecord",
    "CheckReport",
    "triangular_eigenvector",
    "verify_u_identity",
]


class TriangularityViolation(AssertionError):
    """An operator image has support outside the order ideal."""


class EigenvalueCollision(ArithmeticError):
    """Two partitions in one ideal share an eigenvalue, so the solve is singular."""

    def __init__(self, lam, mu, value):
        self.lam, self.mu, self.value = lam, mu, value
        super().__init__(
            f"eigenvalue collision between {lam} and {mu} (both {value}); "
            "perturb the parameters to a generic point"
        )


@dataclass
class OrthoPolynomial:
    flavor: Flavor
    lam: tuple
    coeffs: dict
    params: object = None
    eigenvalues: list = field(default_factory=list)

    def poly(self):
        return from_expansion(self.coeffs, len(self.lam), self.flavor)

    def to_json(self):
        out = {
            "flavor": self.flavor.value,
            "lambda": list(self.lam),
            "params": self.params.to_json() if self.params is not None else None,
            "coeffs": [{"mu": list(mu), "coeff": format_scalar(c)} for mu, c in self.coeffs.items()],
        }
        if self.eigenvalues:
            out["eigenvalues"] = [format_scalar(e) for e in self.eigenvalues]
        return out

    @classmethod
    def from_json(cls, data, params=None):
        flavor = Flavor.parse(data["flavor"])
        coeffs = {tuple(c["mu"]): Fraction(c["coeff"]) for c in data["coeffs"]}
        return cls(flavor, tuple(data["lambda"]), coeffs, params)


@dataclass
class CheckRecord:
    name: str
    passed: bool
    detail: dict = field(default_factory=dict)

    def to_json(self):
        return {"name": self.name, "pass": self.passed, **self.detail}


@dataclass
class CheckReport:
    suite: str
    records: list = field(default_factory=list)

    @property
    def passed(self):
        return all(r.passed for r in self.records)

    def add(self, name, passed, **detail):
        self.records.append(CheckRecord(name, bool(passed), detail))

    def extend(self, other):
        self.records.extend(other.records)

    def first_failure(self):
        return next((r for r in self.records if not r.passed), None)

    def to_json(self):
        return {"suite": self.suite, "pass": self.passed, "records": [r.to_json() for r in self.records]}


def _poly_json(f):
    return [{"exponents": list(e), "coeff": format_scalar(c)} for e, c in f.items()]


def triangular_eigenvector(matrix, ideal, eigenvalue_of_top=None):
    """Monic eigenvector of a lower-triangular matrix for its top entry.

    ``matrix[nu][mu]`` is the ``m_mu`` coefficient of ``H m_nu`` and ``ideal``
    is a linear extension ending at the top partition. Returns the
    coefficient map in ideal order.
    """
    lam = ideal[-1]
    E = matrix[lam][lam] if eigenvalue_of_top is None else eigenvalue_of_top
    coeffs = {lam: Fraction(1)}
    for mu in reversed(ideal[:-1]):
        rhs = sum((c * matrix[nu].get(mu, 0) for nu, c in coeffs.items()), Fraction(0))
        gap = E - matrix[mu][mu]
        if gap == 0:
            raise EigenvalueCollision(lam, mu, E)
        coeffs[mu] = rhs / gap
    return {mu: coeffs[mu] for mu in ideal if coeffs[mu]}


class SpectralSystem:
    """Operators of one flavor at fixed parameters, with cached monomial images."""

    def __init__(self, flavor, params):
        self.flavor = Flavor.parse(flavor)
        self.params = params
        self.n = params.n
        self._ops = {}
        self._images = {}

    def operator(self, r):
        op = self._ops.get(r)
        if op is None:
            op = self._ops[r] = build_H(self.flavor, r, self.params)
        return op

    def eigenvalue(self, r, lam):
        return eigenvalue(self.flavor, self.params, r, lam)

    def image(self, r, mu):
        """Expansion of ``H_r m_mu`` in monomials; triangularity is asserted."""
        key = (r, mu)
        out = self._images.get(key)
        if out is None:
            img = self.operator(r).apply(monomial(mu, self.flavor))
            out = expand_w_invariant(img, self.flavor)
            ideal = set(order_ideal(mu, self.flavor))
            bad = [nu for nu in out if nu not in ideal]
            if bad:
                raise TriangularityViolation(f"H_{r} m_{mu} has support outside the ideal: {bad}")
            self._images[key] = out
        return out

    def matrix_on_ideal(self, r, lam):
        """``(ideal, M)`` with ``M[mu][nu]`` the ``m_nu`` coefficient of ``H_r m_mu``."""
        lam = as_partition(lam, self.flavor)
        ideal = order_ideal(lam, self.flavor)
        return ideal, {mu: self.image(r, mu) for mu in ideal}

    def ortho_poly(self, lam, r=1, check_diagonal=True):
        """Monic eigenvector ``p_lam`` of ``H_r`` in the span of the ideal of ``lam``."""
        lam = as_partition(lam, self.flavor)
        ideal, M = self.matrix_on_ideal(r, lam)
        E = self.eigenvalue(r, lam)
        if check_diagonal:
            for mu in ideal:
                d = M[mu].get(mu, Fraction(0))
                if d != self.eigenvalue(r, mu):
                    raise AssertionError(f"diagonal entry {d} of H_{r} at {mu} differs from closed form")
        for mu in ideal:
            M[mu].setdefault(mu, Fraction(0))
        coeffs = triangular_eigenvector(M, ideal, E)
        return OrthoPolynomial(self.flavor, lam, coeffs, self.params)

    def with_eigenvalues(self, p):
        p.eigenvalues = [self.eigenvalue(r, p.lam) for r in range(1, self.n + 1)]
        return p

    # -- verification ---------------------------------------------------
    def verify_triangular(self, lams, rs=None):
        report = CheckReport("triangular")
        for r in rs or range(1, self.n + 1):
            for lam in lams:
                try:
                    self.image(r, tuple(lam))
                    report.add(f"H_{r} m_{tuple(lam)}", True)
                except TriangularityViolation as exc:
                    report.add(f"H_{r} m_{tuple(lam)}", False, error=str(exc))
        return report

    def verify_diagonal(self, lams, rs=None):
        report = CheckReport("diagonal")
        for r in rs or range(1, self.n + 1):
            for lam in lams:
                lam = tuple(lam)
                d = self.image(r, lam).get(lam, Fraction(0))
                E = self.eigenvalue(r, lam)
                report.add(f"[H_{r}]_{lam}", d == E, diagonal=format_scalar(d), closed_form=format_scalar(E))
        return report

    def verify_joint_eigen(self, lam, poly=None, solve_r=1):
        """Apply every ``H_r`` directly to ``p_lam`` and compare with ``E_r p_lam``."""
        p = poly if poly is not None else self.ortho_poly(lam, solve_r)
        f = p.poly()
        report = CheckReport("eigen")
        for r in range(1, self.n + 1):
            E = self.eigenvalue(r, p.lam)
            residual = self.operator(r).apply(f) - f * E
            detail = {"lambda": list(p.lam), "r": r, "eigenvalue": format_scalar(E)}
            if residual:
                detail["residual"] = _poly_json(residual)
            report.add(f"H_{r} p_{p.lam}", not residual, **detail)
        return report

    def verify_commutators(self, r, s, lams):
        report = CheckReport("commute")
        Hr, Hs = self.operator(r), self.operator(s)
        for lam in lams:
            m = monomial(tuple(lam), self.flavor)
            residual = Hr.apply(Hs.apply(m)) - Hs.apply(Hr.apply(m))
            detail = {"r": r, "s": s, "lambda": list(lam)}
            if residual:
                detail["residual"] = _poly_json(residual)
            report.add(f"[H_{r}, H_{s}] m_{tuple(lam)}", not residual, **detail)
        return report


def verify_u_identity(params, n=None, max_m=None):
    """Exact equality of the two forms of ``U_{K,m}`` for every ``K`` and ``m``."""
    n = params.n if n is None else n
    report = CheckReport("identity")
    for size in range(n + 1):
        for K in itertools.combinations(range(n), size):
            top = size if max_m is None else min(size, max_m)
            for m in range(top + 1):
                equal = build_U(K, m, params) == build_U(K, m, params, "alt")
                report.add(f"U_{K},{m}", equal, K=list(K), m=m)
    return report
