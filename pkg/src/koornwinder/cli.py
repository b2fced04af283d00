"""Command line: ``koornwinder {polys,check,spectrum}``.

Exit codes: 0 pass, 1 check failure, 2 eigenvalue collision, 3 bad input.
Exact values are written as ``"p/q"`` strings. Output is deterministic.
"""

import argparse
import json
import sys

from .combinatorics import Flavor, as_partition, order_ideal, partitions_up_to
from .diagonalize import (
    CheckReport,
    EigenvalueCollision,
    OrthoPolynomial,
    SpectralSystem,
    verify_u_identity,
)
from .laurent import NonzeroRemainder
from .params import (
    AdditiveParams,
    LimitDivergence,
    ModelParams,
    ParameterError,
    eigenvalue,
    from_additive,
    limit_consistency,
    transform_tilde_check,
)
from .quadrature import QuadratureGrid, WeightEvaluator, gram_check, gs_oracle, selfadjoint_check
from .scalar import format_scalar

EXIT_PASS, EXIT_FAIL, EXIT_COLLISION, EXIT_BAD_INPUT = 0, 1, 2, 3

SUITES = ("triangular", "eigen", "commute", "identity", "selfadjoint", "ortho", "limit", "tilde")

DEFAULTS = {
    "flavor": "bc",
    "n": 1,
    "qh": None,
    "th": "1/1",
    "k0": "1/1",
    "k1": "1/1",
    "k0p": "1/1",
    "k1p": "1/1",
    "additive": False,
    "alpha": 1.0,
    "beta": None,
    "g": 0.0,
    "g0": 0.0,
    "g1": 0.0,
    "g0p": 0.0,
    "g1p": 0.0,
    "betas": "0.1,0.01,0.001",
    "lambda": None,
    "ideal": False,
    "max_weight": None,
    "max_m": None,
    "grid": 64,
    "tol": None,
    "out": None,
    "input": None,
    "suite": None,
}


class BadInput(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        sys.exit(EXIT_BAD_INPUT)


def build_parser():
    common = argparse.ArgumentParser(add_help=False, argument_default=argparse.SUPPRESS)
    common.add_argument("--config", help="JSON file of option values; flags override it")
    common.add_argument("--flavor", choices=["a", "bc"])
    common.add_argument("--n", type=int)
    for name in ("qh", "th", "k0", "k1", "k0p", "k1p"):
        common.add_argument(f"--{name}", help="exact rational such as 1/3")
    common.add_argument("--additive", action="store_true", help="take float couplings instead")
    for name in ("alpha", "beta", "g", "g0", "g1", "g0p", "g1p"):
        common.add_argument(f"--{name}", type=float)
    common.add_argument("--betas", help="decreasing step sizes for the limit suite")
    common.add_argument("--lambda", dest="lambda", help='partition "2,1"; several as "2,1;1,1"')
    common.add_argument("--ideal", action="store_true", help="use the whole order ideal of --lambda")
    common.add_argument("--max-weight", dest="max_weight", type=int)
    common.add_argument("--max-m", dest="max_m", type=int)
    common.add_argument("--grid", type=int, help="quadrature nodes per dimension")
    common.add_argument("--tol", type=float)
    common.add_argument("--out", help="write JSON here instead of stdout")

    parser = _Parser(prog="koornwinder", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    sub.add_parser("polys", parents=[common], help="compute p_lambda with eigenvalues")
    check = sub.add_parser("check", parents=[common], help="run a verification suite")
    check.add_argument("suite", choices=SUITES)
    check.add_argument("--input", help="polys JSON to re-verify (eigen suite)")
    sub.add_parser("spectrum", parents=[common], help="closed-form eigenvalue table")
    return parser


def resolve_config(ns):
    """Defaults < config file < flags."""
    cfg = dict(DEFAULTS)
    flags = vars(ns)
    path = flags.pop("config", None)
    if path:
        try:
            with open(path) as fh:
                data = json.load(fh)
        except (OSError, ValueError) as exc:
            raise BadInput(f"cannot read config {path}: {exc}") from exc
        for k, v in data.items():
            k = k.replace("-", "_")
            if k not in cfg:
                raise BadInput(f"unknown config key {k!r}")
            cfg[k] = v
    cfg.update(flags)
    return cfg


def _parse_lambdas(text, n, flavor):
    out = []
    for chunk in str(text).split(";"):
        chunk = chunk.strip()
        if not chunk:
            continue
        parts = tuple(int(x) for x in chunk.replace(" ", "").split(","))
        if len(parts) != n:
            raise BadInput(f"partition {parts} has length {len(parts)}, expected n = {n}")
        out.append(as_partition(parts, flavor))
    return out


def lambda_set(cfg, flavor, n):
    if cfg["lambda"] is not None:
        lams = cfg["lambda"]
        lams = _parse_lambdas(lams if isinstance(lams, str) else ";".join(",".join(map(str, l)) for l in lams), n, flavor)
        if cfg["ideal"]:
            seen = []
            for lam in lams:
                for mu in order_ideal(lam, flavor):
                    if mu not in seen:
                        seen.append(mu)
            lams = sorted(seen, key=lambda mu: (sum(mu), mu))
        return lams
    w = cfg["max_weight"] if cfg["max_weight"] is not None else 2
    if w < 0:
        raise BadInput("max-weight must be nonnegative")
    return partitions_up_to(n, w)


def make_params(cfg, exact_required):
    n = cfg["n"]
    if not isinstance(n, int) or n < 1:
        raise BadInput("n must be a positive integer")
    if cfg["additive"]:
        if exact_required:
            raise BadInput("this command needs exact parameters; drop --additive")
        beta = cfg["beta"] if cfg["beta"] is not None else 1.0
        add = AdditiveParams(cfg["alpha"], beta, cfg["g"], cfg["g0"], cfg["g1"], cfg["g0p"], cfg["g1p"])
        return from_additive(add, n), add
    if cfg["qh"] is None:
        raise BadInput("--qh is required (or use --additive)")
    values = [cfg[k] for k in ("qh", "th", "k0", "k1", "k0p", "k1p")]
    if any(not isinstance(v, str) for v in values):
        raise BadInput("exact parameters must be given as strings such as 1/3")
    return ModelParams(n, *values), None


def _fmt(x):
    return format_scalar(x) if hasattr(x, "denominator") else float(x)


def cmd_polys(cfg):
    flavor = Flavor.parse(cfg["flavor"])
    params, _ = make_params(cfg, True)
    system = SpectralSystem(flavor, params)
    polys = [system.with_eigenvalues(system.ortho_poly(lam)).to_json() for lam in lambda_set(cfg, flavor, params.n)]
    return {"command": "polys", "flavor": flavor.value, "params": params.to_json(), "polys": polys}, EXIT_PASS


def cmd_spectrum(cfg):
    params, _ = make_params(cfg, False)
    n = params.n
    w = cfg["max_weight"] if cfg["max_weight"] is not None else 2
    table = {}
    for flavor in (Flavor.BC, Flavor.A):
        table[flavor.value] = [
            {"lambda": list(lam), "eigenvalues": [_fmt(eigenvalue(flavor, params, r, lam)) for r in range(1, n + 1)]}
            for lam in partitions_up_to(n, w)
        ]
    return {"command": "spectrum", "params": params.to_json(), "table": table}, EXIT_PASS


def _load_polys(path):
    try:
        with open(path) as fh:
            data = json.load(fh)
        params = ModelParams.from_json(data["params"])
        polys = [OrthoPolynomial.from_json(p, params) for p in data["polys"]]
    except (OSError, ValueError, KeyError, TypeError) as exc:
        raise BadInput(f"cannot read polynomials from {path}: {exc}") from exc
    return Flavor.parse(data["flavor"]), params, polys


def _suite_exact(cfg, suite):
    if suite == "eigen" and cfg["input"]:
        flavor, params, polys = _load_polys(cfg["input"])
        system = SpectralSystem(flavor, params)
        report = CheckReport("eigen")
        for p in polys:
            report.extend(system.verify_joint_eigen(p.lam, poly=p))
        return report, params
    flavor = Flavor.parse(cfg["flavor"])
    params, _ = make_params(cfg, True)
    n = params.n
    system = SpectralSystem(flavor, params)
    lams = lambda_set(cfg, flavor, n)
    report = CheckReport(suite)
    if suite == "triangular":
        report.extend(system.verify_triangular(lams))
        report.extend(system.verify_diagonal(lams))
    elif suite == "eigen":
        for lam in lams:
            report.extend(system.verify_joint_eigen(lam))
    elif suite == "commute":
        for r in range(1, n + 1):
            for s in range(r + 1, n + 1):
                report.extend(system.verify_commutators(r, s, lams))
    elif suite == "identity":
        report = verify_u_identity(params, n, cfg["max_m"])
    elif suite == "tilde":
        for r in range(1, n + 1):
            for lam in lams:
                report.add(f"tilde r={r} {lam}", transform_tilde_check(params, r, lam), r=r, **{"lambda": list(lam)})
    elif suite in ("selfadjoint", "ortho"):
        tol = cfg["tol"] if cfg["tol"] is not None else 1e-8
        weight = WeightEvaluator(params, flavor, QuadratureGrid(n, cfg["grid"]))
        if suite == "selfadjoint":
            for r in range(1, n + 1):
                for rec in selfadjoint_check(system, r, lams, weight, tol):
                    report.add(f"H_{r} {rec['lambda_pair']}", rec["pass"], r=r, **rec)
        else:
            polys = [system.ortho_poly(lam) for lam in lams]
            gram = gram_check(polys, params, weight, tol)
            for rec in gram.records:
                report.add(f"<p, p'> {rec['lambda_pair']}", rec["pass"], **rec)
            for p in polys:
                oracle = gs_oracle(flavor, p.lam, params, weight)
                err = max(abs(oracle.coeffs[mu] - float(c)) / abs(float(c)) for mu, c in p.coeffs.items())
                report.add(f"oracle {p.lam}", err < tol, relative_error=err, condition=oracle.condition)
    return report, params


def cmd_check(cfg):
    suite = cfg["suite"]
    if suite == "limit":
        return _check_limit(cfg)
    report, params = _suite_exact(cfg, suite)
    doc = {"command": "check", "params": params.to_json(), **report.to_json()}
    if not report.passed:
        doc["first_failure"] = report.first_failure().to_json()
    return doc, EXIT_PASS if report.passed else EXIT_FAIL


def _check_limit(cfg):
    if not cfg["additive"]:
        raise BadInput("the limit suite takes additive couplings (--additive)")
    flavor = Flavor.parse(cfg["flavor"])
    n = cfg["n"]
    beta = cfg["beta"] if cfg["beta"] is not None else 1.0
    add = AdditiveParams(cfg["alpha"], beta, cfg["g"], cfg["g0"], cfg["g1"], cfg["g0p"], cfg["g1p"])
    betas = [float(b) for b in str(cfg["betas"]).split(",")]
    tol = cfg["tol"] if cfg["tol"] is not None else 1e-4
    lams = lambda_set(cfg, flavor, n)
    reports = [limit_consistency(add, n, r, lams, betas, flavor, tol) for r in range(1, n + 1)]
    passed = all(rep.passed for rep in reports)
    doc = {"command": "check", "suite": "limit", "pass": passed, "reports": [rep.to_json() for rep in reports]}
    return doc, EXIT_PASS if passed else EXIT_FAIL


COMMANDS = {"polys": cmd_polys, "check": cmd_check, "spectrum": cmd_spectrum}


def run(argv=None):
    """Parse ``argv`` and execute; returns ``(document, exit_code, out_path)``."""
    ns = build_parser().parse_args(argv)
    command = ns.command
    del ns.command
    out = None
    try:
        cfg = resolve_config(ns)
        out = cfg["out"]
        doc, code = COMMANDS[command](cfg)
    except EigenvalueCollision as exc:
        doc = {"command": command, "error": "collision", "message": str(exc),
               "lambda": list(exc.lam), "mu": list(exc.mu)}
        code = EXIT_COLLISION
    except (BadInput, ParameterError, ValueError) as exc:
        doc, code = {"command": command, "error": "bad-input", "message": str(exc)}, EXIT_BAD_INPUT
    except (NonzeroRemainder, LimitDivergence, AssertionError) as exc:
        doc = {"command": command, "error": type(exc).__name__, "message": str(exc), "pass": False}
        code = EXIT_FAIL
    return doc, code, out


def main(argv=None):
    doc, code, out = run(argv)
    text = json.dumps(doc, indent=2) + "\n"
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
