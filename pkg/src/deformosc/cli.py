"""Command-line interface.

Data goes to standard output, diagnostics to standard error.  Exit status:
0 success, 1 verification failure, 2 invalid input.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from . import qseries
from ._json import dumps
from .casimir import CasimirParams, casimir_energy
from .coherent import coherent_state, eigen_residual
from .correlators import (
    ORDERINGS,
    MatrixElementQuery,
    dense_expectation,
    expectation,
    matrix_element,
    oracle_matrix_element,
)
from .exceptions import DeformationError
from .fockrep import build_rep, spectrum
from .params import STANDARD_A, DeformationParams, Regime, random_params, validate
from .suite import SUITES, run_suite

PARAM_KEYS = ("p", "q", "alpha", "nu", "phi1", "phi2", "chi0")
FORMATS = ("json", "csv", "table")


class UsageError(ValueError):
    pass


@dataclass
class RunConfig:
    params: DeformationParams = field(default_factory=lambda: STANDARD_A)
    dim: int = 64
    tol: float | None = None
    output_format: str = "json"
    seed: int = 0

    def __post_init__(self):
        if self.dim < 4:
            raise UsageError(f"dim must be at least 4, got {self.dim}")
        if self.tol is not None and not self.tol > 0:
            raise UsageError(f"tol must be positive, got {self.tol}")
        if self.output_format not in FORMATS:
            raise UsageError(f"format must be one of {FORMATS}, got {self.output_format!r}")


def _complex(text: str) -> complex:
    try:
        return complex(text.replace(" ", "").replace("i", "j"))
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a complex number: {text!r}") from None


def load_config(args: argparse.Namespace) -> RunConfig:
    """Config file values first, then any flag given on the command line."""
    data: dict = {}
    if args.config:
        try:
            data = json.loads(Path(args.config).read_text())
        except (OSError, json.JSONDecodeError) as exc:
            raise UsageError(f"cannot read config {args.config}: {exc}") from None
        if not isinstance(data, dict):
            raise UsageError("config file must hold a JSON object")
    values = STANDARD_A.as_dict()
    values.update(data.get("params", {}))
    values.update({k: data[k] for k in PARAM_KEYS if k in data})
    for k in PARAM_KEYS:
        if getattr(args, k) is not None:
            values[k] = getattr(args, k)
    unknown = set(data) - set(PARAM_KEYS) - {"params", "dim", "tol", "format", "seed"}
    if unknown:
        raise UsageError(f"unknown config keys: {sorted(unknown)}")
    settings = {"dim": data.get("dim", 64), "tol": data.get("tol"),
                "output_format": data.get("format", "json"), "seed": data.get("seed", 0)}
    for flag, key in (("dim", "dim"), ("tol", "tol"), ("format", "output_format"), ("seed", "seed")):
        if getattr(args, flag) is not None:
            settings[key] = getattr(args, flag)
    return RunConfig(params=DeformationParams.from_dict(values), **settings)


def _emit(out, obj) -> None:
    out.write(dumps(obj))
    out.write("\n")


def _rows(out, fmt: str, header: list[str], rows: list[list]) -> None:
    if fmt == "csv":
        w = csv.writer(out, lineterminator="\n")
        w.writerow(header)
        for r in rows:
            w.writerow([format(v, ".17g") if isinstance(v, float) else v for v in r])
    elif fmt == "table":
        widths = [max(len(h), 24) for h in header]
        out.write("  ".join(h.rjust(w) for h, w in zip(header, widths)) + "\n")
        for r in rows:
            cells = [format(v, ".12g") if isinstance(v, float) else str(v) for v in r]
            out.write("  ".join(c.rjust(w) for c, w in zip(cells, widths)) + "\n")
    else:
        _emit(out, [dict(zip(header, r)) for r in rows])


def _json_only(cfg: RunConfig, command: str) -> None:
    if cfg.output_format == "csv":
        raise UsageError(f"csv output is available for spectrum and casimir-spectrum, not {command}")


def cmd_spectrum(cfg: RunConfig, args, out) -> int:
    if args.levels < 0:
        raise UsageError("levels must be nonnegative")
    validate(cfg.params, max(args.levels, 1))
    energies = spectrum(cfg.params, args.levels)
    key = "E_n" if cfg.output_format == "csv" else "energy"
    _rows(out, cfg.output_format, ["n", key], [[n, float(e)] for n, e in enumerate(energies)])
    return 0


def _random_entries(cfg: RunConfig, count: int):
    from .algebra import verify_defining_relations

    rng = np.random.default_rng(cfg.seed)
    for regime in Regime:
        for k in range(count):
            prm = random_params(rng, regime)
            rep = build_rep(prm, cfg.dim)
            sub = verify_defining_relations(rep, cfg.tol or 1e-11)
            for e in sub.entries:
                e.identity_name = f"random {regime.value}{k}: {e.identity_name}"
                yield e


def cmd_verify(cfg: RunConfig, args, out) -> int:
    validate(cfg.params, cfg.dim - 1)
    report = run_suite(cfg.params, cfg.dim, cfg.tol, args.suite)
    if args.random:
        for e in _random_entries(cfg, args.random):
            report.add(e)
    summary = {"entries": len(report.entries), "failures": len(report.failures),
               "erratum_candidates": len(report.errata)}
    print(f"verify[{args.suite}]: {summary['entries']} entries, {summary['failures']} failures, "
          f"{summary['erratum_candidates']} erratum candidates", file=sys.stderr)
    for e in report.failures:
        print(f"FAIL {e.identity_name}: rel residual {e.max_rel_residual:.3e}", file=sys.stderr)
    if cfg.output_format == "table":
        for e in report.entries:
            out.write(f"{e.status:18} {e.max_rel_residual:10.3e}  {e.identity_name}\n")
    else:
        _json_only(cfg, "verify")
        doc = report.to_dict()
        doc.update(suite=args.suite, params=cfg.params.as_dict(), dim=cfg.dim, summary=summary)
        _emit(out, doc)
    return 0 if report.ok else 1


def cmd_coherent(cfg: RunConfig, args, out) -> int:
    _json_only(cfg, "coherent")
    state = coherent_state(cfg.params, args.z, args.terms)
    dim = max(cfg.dim, state.terms + 1)
    rep = build_rep(cfg.params, dim)
    _emit(out, {
        "z": state.z,
        "terms": state.terms,
        "dim": dim,
        "normalization": state.normalization,
        "truncation_estimate": state.truncation_estimate,
        "eigen_residual": eigen_residual(rep, state),
        "coefficients": list(state.coefficients),
    })
    return 0


def _rel(a: complex, b: complex) -> float:
    scale = max(abs(a), abs(b))
    return abs(a - b) / scale if scale > 0 else 0.0


def cmd_correlator(cfg: RunConfig, args, out) -> int:
    _json_only(cfg, "correlator")
    if args.z is not None:
        closed = expectation(cfg.params, args.z, args.m, args.n, args.ordering, args.terms)
        oracle = dense_expectation(cfg.params, args.z, args.m, args.n, args.ordering, args.terms)
        query = {"m": args.m, "n": args.n, "ordering": args.ordering, "z": args.z}
    else:
        q = MatrixElementQuery(args.m, args.n, args.r, args.s, args.ordering)
        closed = matrix_element(cfg.params, q)
        dim = max(cfg.dim, q.m + q.n + max(q.r, q.s) + 1)
        oracle = oracle_matrix_element(build_rep(cfg.params, dim), q)
        query = {"m": q.m, "n": q.n, "r": q.r, "s": q.s, "ordering": q.ordering}
    _emit(out, {"query": query, "closed_form": closed, "oracle": oracle,
                "rel_residual": _rel(closed, oracle)})
    return 0


def cmd_casimir(cfg: RunConfig, args, out) -> int:
    cp = CasimirParams(cfg.params, args.beta, args.gamma, args.omega2)
    rows = []
    for n in range(args.levels):
        a, b = casimir_energy(cp, n)
        rows.append([n, a, b, _rel(a, b)])
    _rows(out, cfg.output_format, ["n", "form_a", "form_b", "agreement"], rows)
    return 0


def cmd_series(cfg: RunConfig, args, out) -> int:
    _json_only(cfg, "series")
    prm = cfg.params
    fn = args.function
    if fn == "poch":
        inputs = {"a": args.a, "q": prm.q, "n": args.n}
        result = {"value": qseries.pochhammer(args.a, prm.q, args.n)}
    elif fn == "dpoch":
        inputs = {"a": args.a, "b": args.b, "p": prm.p, "q": prm.q, "n": args.n}
        result = {"value": qseries.double_pochhammer(args.a, args.b, prm.p, prm.q, args.n)}
    elif fn == "number":
        inputs = {"x": args.x, "params": prm.as_dict()}
        result = {"value": float(qseries.deformed_number(args.x, prm))}
    elif fn == "tau":
        inputs = {"params": prm.as_dict()}
        result = {"value": qseries.tau(prm)}
    elif fn == "exp":
        x = args.x if args.z is None else args.z
        inputs = {"x": x, "params": prm.as_dict()}
        res = qseries.deformed_exponential(x, prm, tol=cfg.tol or qseries.DEFAULT_TOL)
        result = {"value": res.value, "terms_used": res.terms_used,
                  "truncation_estimate": res.truncation_estimate}
    elif fn == "L":
        inputs = {"lam": args.lam, "sigma": args.sigma, "p": prm.p, "q": prm.q, "z": args.x,
                  "m": args.n}
        result = {"value": qseries.deformed_hypergeometric_L(args.lam, args.sigma, prm.p, prm.q,
                                                            args.x, args.n)}
    else:  # binomial
        inputs = {"a": args.a, "b": args.b, "p": prm.p, "q": prm.q, "z": args.x,
                  "sum_terms": args.sum_terms, "product_terms": args.product_terms}
        result = {"residual": qseries.check_pq_binomial(args.a, args.b, prm.p, prm.q, args.x,
                                                       args.sum_terms, args.product_terms)}
    _emit(out, {"function": fn, "inputs": inputs, **result})
    return 0


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    g = common.add_argument_group("parameters (default: p=0.9 q=0.8 alpha=nu=1 phi1=1 phi2=0.5 chi0=0)")
    for k in PARAM_KEYS:
        g.add_argument(f"--{k}", type=float, default=None)
    common.add_argument("--dim", type=int, default=None, help="Fock truncation (default 64)")
    common.add_argument("--tol", type=float, default=None,
                        help="tolerance override (default: per-suite values)")
    common.add_argument("--format", choices=FORMATS, default=None)
    common.add_argument("--config", metavar="FILE", help="JSON file with parameters and settings")
    common.add_argument("--seed", type=int, default=None, help="seed for randomized sweeps")

    parser = argparse.ArgumentParser(prog="deformosc", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("spectrum", parents=[common], help="energies E_n")
    p.add_argument("--levels", type=int, default=10)
    p.set_defaults(func=cmd_spectrum)

    p = sub.add_parser("verify", parents=[common], help="run a verification suite")
    p.add_argument("--suite", choices=SUITES, default="all")
    p.add_argument("--random", type=int, default=0, metavar="K",
                   help="also check the defining relations on K random sets per regime")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("coherent", parents=[common], help="coherent-state coefficients")
    p.add_argument("--z", type=_complex, default=0.5)
    p.add_argument("--terms", type=int, default=80)
    p.set_defaults(func=cmd_coherent)

    p = sub.add_parser("correlator", parents=[common], help="matrix element or expectation")
    for k in ("m", "n", "r", "s"):
        p.add_argument(f"--{k}", type=int, default=0)
    p.add_argument("--ordering", choices=ORDERINGS, default="normal")
    p.add_argument("--z", type=_complex, default=None, help="coherent expectation instead")
    p.add_argument("--terms", type=int, default=80)
    p.set_defaults(func=cmd_correlator)

    p = sub.add_parser("casimir-spectrum", parents=[common], help="Casimir-modulated energies")
    p.add_argument("--beta", type=float, default=0.0)
    p.add_argument("--gamma", type=float, default=0.0)
    p.add_argument("--omega2", type=float, default=1.0)
    p.add_argument("--levels", type=int, default=10)
    p.set_defaults(func=cmd_casimir)

    p = sub.add_parser("series", parents=[common], help="scalar special functions")
    p.add_argument("function", choices=("poch", "dpoch", "number", "tau", "exp", "L", "binomial"))
    p.add_argument("--a", type=float, default=0.3)
    p.add_argument("--b", type=float, default=0.2)
    p.add_argument("--n", type=int, default=1)
    p.add_argument("--x", type=float, default=1.0)
    p.add_argument("--z", type=_complex, default=None, help="complex argument for exp")
    p.add_argument("--lam", type=float, default=1.0)
    p.add_argument("--sigma", type=float, default=1.0)
    p.add_argument("--sum-terms", type=int, default=60)
    p.add_argument("--product-terms", type=int, default=60)
    p.set_defaults(func=cmd_series)
    return parser


def main(argv: list[str] | None = None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        cfg = load_config(args)
        buf = io.StringIO()
        status = args.func(cfg, args, buf)
        out.write(buf.getvalue())
        return status
    except (DeformationError, UsageError, ValueError, OverflowError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
