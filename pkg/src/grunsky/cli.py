"""Command-line front end.

    grunsky norm --family power:3 --t 0.6,0 --N 2,8,16
    grunsky alpha --family power:3 --t 0.6,0 --normalized
    grunsky norm --coeffs identity.json

Every command writes a JSON report (stdout or ``--out``).  Exit codes:
0 ok, 2 bad configuration or input, 3 numerical non-convergence,
4 violated invariant.
"""

from __future__ import annotations

import argparse
import csv
import datetime
import json
import math
import sys
import warnings
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from . import __version__
from .abelian import alpha_norm, extremal_omega
from .core import (
    DEFAULT_LADDER,
    InvariantError,
    LaurentMap,
    grunsky_coefficients,
    grunsky_norm,
    qc_bound_check,
)
from .families import FamilySpec, family_beltrami, family_map, parse_complex, parse_family
from .mapfile import load_map
from .takagi import TakagiConvergenceWarning
from .verify import (
    DEFAULT_R_GRID,
    CriterionViolation,
    fredholm_eigenvalue,
    lemma4_check,
    metric_lambda_kappa,
    verify_theorem1,
)

SCHEMA_VERSION = 1
COMMANDS = ("coefficients", "norm", "alpha", "verify", "metric", "lemma4", "fredholm")
MAP_COMMANDS = ("coefficients", "norm", "fredholm")

EXIT_OK, EXIT_CONFIG, EXIT_CONVERGENCE, EXIT_INVARIANT = 0, 2, 3, 4


class ConfigError(ValueError):
    pass


@dataclass
class RunConfig:
    command: str
    family: str | None = None
    coeffs: str | None = None
    t: complex = 0j
    N: tuple[int, ...] = DEFAULT_LADDER
    t_grid: tuple[float, ...] = DEFAULT_R_GRID
    out: str | None = None
    csv: str | None = None
    seed: int = 0
    budget: int = 256
    grid: int = 32
    normalized: bool = False
    extra: dict = field(default_factory=dict)

    def validate(self):
        if self.command not in COMMANDS:
            raise ConfigError(f"unknown command {self.command!r}")
        if (self.family is None) == (self.coeffs is None):
            raise ConfigError("give exactly one of --family or --coeffs")
        if self.coeffs is not None and self.command not in MAP_COMMANDS:
            raise ConfigError(f"command {self.command!r} needs --family")
        if not self.N or min(self.N) < 1:
            raise ConfigError("--N must list positive integers")
        if self.budget < 0:
            raise ConfigError("--budget must be >= 0")


def _pair(z):
    z = complex(z)
    return [z.real, z.imag]


def _vector(x):
    return [_pair(v) for v in np.asarray(x).ravel()]


def _finite(v):
    return None if v is None or math.isinf(v) else float(v)


def _source(cfg: RunConfig):
    if cfg.family is not None:
        spec = parse_family(cfg.family, cfg.t)
        return spec, {"family": spec.name, "t": _pair(spec.t)}
    try:
        f = load_map(cfg.coeffs)
    except OSError as exc:
        raise ConfigError(f"field 'coeffs': cannot read {cfg.coeffs} ({exc.strerror})") from None
    return f, {"coeffs": str(cfg.coeffs)}


def _as_map(source, N: int) -> LaurentMap:
    if isinstance(source, FamilySpec):
        return family_map(source, 2 * N - 1)
    # a coefficient file is an exact finite sum: missing b_k are zero
    return source.padded(2 * N - 1)


def _cmd_coefficients(cfg, source):
    N = max(cfg.N)
    table = grunsky_coefficients(_as_map(source, N), N)
    rows = [{"m": m + 1, "n": n + 1, "alpha": _pair(table.alpha[m, n])}
            for m in range(N) for n in range(N)]
    return {"N": N, "alpha": [_vector(row) for row in table.alpha]}, rows


def _cmd_norm(cfg, source):
    N = max(cfg.N)
    k_bound = abs(source.t) if isinstance(source, FamilySpec) else None
    report = grunsky_norm(_as_map(source, N), cfg.N, k_bound=k_bound, seed=cfg.seed)
    rows = [{"N": n, "kappa": k, "residual": report.results[n].residual} for n, k in report.rows]
    result = {
        "rows": rows,
        "univalence_violated": report.univalence_violated,
        "k_bound": k_bound,
        "qc_bound_ok": qc_bound_check(report, k_bound) if k_bound is not None else None,
    }
    return result, rows


def _cmd_alpha(cfg, source):
    mu = family_beltrami(source)
    if cfg.normalized:
        mu = mu.normalized()
    rows, last = [], None
    for N in sorted(set(cfg.N)):
        last = alpha_norm(mu, N, seed=cfg.seed)
        rows.append({"N": N, "sigma": last.sigma, "residual": last.residual})
    ext = extremal_omega(last)
    result = {
        "normalized": cfg.normalized,
        "sup_norm": mu.sup_norm,
        "rows": rows,
        "extremal": {
            "degenerate": ext.degenerate,
            "x": _vector(last.argmax_x),
            "omega": _vector(ext.omega),
            "psi": _vector(ext.psi),
            "a1_norm": ext.a1_norm,
        },
    }
    return result, rows


def _cmd_verify(cfg, source):
    report = verify_theorem1(source, cfg.t_grid, max(cfg.N), seed=cfg.seed)
    rows = [
        {
            "r": row.r, "kappa": row.kappa, "alpha": row.alpha, "lower": row.lower,
            "upper": row.upper, "residual_theorem1": row.residual_theorem1,
            "residual_upper": row.residual_upper, "position": row.position,
            "sandwich_ok": row.sandwich_ok,
        }
        for row in report.rows
    ]
    if not report.all_ok:
        raise InvariantError("sandwich inequality violated")
    return {"N": report.N, "alpha": report.alpha, "rows": rows}, rows


def _cmd_metric(cfg, source):
    sample = metric_lambda_kappa(source, abs(source.t), max(cfg.N), cfg.budget, cfg.seed)
    row = {"r": sample.r, "lambda_est": sample.lambda_est}
    return {**row, "achieving_x": _vector(sample.achieving_x),
            "optimizer_budget": sample.optimizer_budget}, [row]


def _cmd_lemma4(cfg, source):
    r_max = abs(source.t) if source.t != 0 else 0.5
    rep = lemma4_check(source.at(0), r_max, cfg.grid, max(cfg.N), cfg.budget, cfg.seed)
    rows = [{"t": s.r, "lambda_est": s.lambda_est} for s in rep.samples]
    return {"r_max": rep.r_max, "lhs": rep.lhs, "rhs": rep.rhs, "residual": rep.residual,
            "samples": rows}, rows


def _cmd_fredholm(cfg, source):
    N = max(cfg.N)
    if isinstance(source, LaurentMap):
        source = _as_map(source, N)
    est = fredholm_eigenvalue(source, N, seed=cfg.seed)
    row = {"N": est.N, "kappa": est.kappa, "rho": _finite(est.rho),
           "rho_abelian": _finite(est.rho_abelian)}
    return {**row, "circle": est.is_circle, "is_upper_bound": est.is_upper_bound}, [row]


_HANDLERS = {
    "coefficients": _cmd_coefficients,
    "norm": _cmd_norm,
    "alpha": _cmd_alpha,
    "verify": _cmd_verify,
    "metric": _cmd_metric,
    "lemma4": _cmd_lemma4,
    "fredholm": _cmd_fredholm,
}


def build_report(cfg: RunConfig) -> dict:
    """Run the command and return the report dict (without writing it)."""
    cfg.validate()
    source, inputs = _source(cfg)
    with warnings.catch_warnings():
        warnings.simplefilter("error", TakagiConvergenceWarning)
        result, rows = _HANDLERS[cfg.command](cfg, source)
    report = {
        "schema_version": SCHEMA_VERSION,
        "command": cfg.command,
        "input": inputs,
        "config": {"N": list(cfg.N), "seed": cfg.seed},
        "result": result,
        "metadata": {
            "package_version": __version__,
            "created": datetime.datetime.now(datetime.timezone.utc).isoformat(),
        },
    }
    report["_rows"] = rows
    return report


def _write(report: dict, cfg: RunConfig) -> None:
    rows = report.pop("_rows", [])
    text = json.dumps(report, indent=2) + "\n"
    if cfg.out:
        Path(cfg.out).write_text(text)
    else:
        sys.stdout.write(text)
    if cfg.csv and rows:
        keys = list(rows[0])
        with open(cfg.csv, "w", newline="") as fh:
            writer = csv.DictWriter(fh, fieldnames=keys, extrasaction="ignore")
            writer.writeheader()
            for row in rows:
                writer.writerow({k: json.dumps(v) if isinstance(v, list) else v
                                 for k, v in row.items()})


def run(cfg: RunConfig) -> int:
    try:
        report = build_report(cfg)
        _write(report, cfg)
    except TakagiConvergenceWarning as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONVERGENCE
    except (InvariantError, CriterionViolation) as exc:
        print(f"error: invariant violated: {exc}", file=sys.stderr)
        return EXIT_INVARIANT
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    return EXIT_OK


def _int_list(text):
    try:
        return tuple(int(v) for v in text.split(",") if v.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def _float_list(text):
    try:
        return tuple(float(v) for v in text.split(",") if v.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}")


def _complex_arg(text):
    try:
        return parse_complex(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc))


def make_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="grunsky", description="Grunsky norms and abelian-differential bounds."
    )
    parser.add_argument("--version", action="version", version=__version__)
    parser.add_argument("command", choices=COMMANDS)
    src = parser.add_mutually_exclusive_group(required=True)
    src.add_argument("--family", help="joukowski | power:3 | power:5 | ...")
    src.add_argument("--coeffs", metavar="FILE", help='JSON {"b0": [re, im], "tail": [...]}')
    parser.add_argument("--t", type=_complex_arg, default=0j, metavar="RE,IM",
                        help="family parameter (r for metric, r_max for lemma4)")
    parser.add_argument("--t-grid", type=_float_list, default=DEFAULT_R_GRID, metavar="CSV")
    parser.add_argument("--N", type=_int_list, default=DEFAULT_LADDER, metavar="CSV")
    parser.add_argument("--out", metavar="FILE")
    parser.add_argument("--csv", metavar="FILE")
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--budget", type=int, default=256)
    parser.add_argument("--grid", type=int, default=32, help="lemma4 subintervals")
    parser.add_argument("--normalized", action="store_true",
                        help="alpha: use mu / |mu|_inf")
    return parser


def main(argv=None) -> int:
    args = make_parser().parse_args(argv)
    cfg = RunConfig(
        command=args.command, family=args.family, coeffs=args.coeffs, t=args.t, N=args.N,
        t_grid=args.t_grid, out=args.out, csv=args.csv, seed=args.seed, budget=args.budget,
        grid=args.grid, normalized=args.normalized,
    )
    return run(cfg)


if __name__ == "__main__":
    sys.exit(main())
