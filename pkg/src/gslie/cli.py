"""gslie command line."""

from __future__ import annotations

import argparse
import dataclasses
import json
import sys
from pathlib import Path

from .expr.errors import DomainError, ExprError
from .quadrature import NonConvergence
from .report import (
    ConfigError,
    RunConfig,
    cmd_algebra,
    cmd_check_symmetries,
    cmd_classify,
    cmd_determining,
    cmd_specfun,
    cmd_tables,
    cmd_verify_solutions,
)

EXIT_OK, EXIT_MISMATCH, EXIT_USAGE = 0, 1, 2


def _common(p: argparse.ArgumentParser):
    p.add_argument("--config", type=Path, help="JSON run configuration")
    p.add_argument("--a", help="coefficient a (rational)")
    p.add_argument("--p", help="exponent p (rational)")
    p.add_argument("--F", help="F(u) expression")
    p.add_argument("--G", help="G(u) expression")
    p.add_argument("--seed", type=int)
    p.add_argument("--samples", type=int)
    p.add_argument("--tol", type=float)
    p.add_argument("--out", type=Path, help="write the JSON report here")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="gslie", description="Lie symmetry checks for the Grad-Shafranov family.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check-symmetries", help="verify generators and the special-case symmetries")
    p.add_argument("--candidate", help="'xi1,xi2,phi' checked against the configured equation")
    _common(p)

    for name, text in (
        ("tables", "recompute commutator, quotient and adjoint tables and diff them"),
        ("algebra", "center, derived series, Killing form, Levi decomposition"),
        ("verify-solutions", "residual checks over the solution catalog"),
        ("determining", "determining equations for the configured equation"),
    ):
        _common(sub.add_parser(name, help=text))

    p = sub.add_parser("classify", help="optimal-system class of a1 X1 + a2 X2 + a3 X3 + a4 X4")
    for k in range(1, 5):
        p.add_argument(f"a{k}")
    p.add_argument("--structure", choices=("computed", "printed"), default="computed",
                   help="structure constants to classify under")
    p.add_argument("--normalize-case1", action="store_true",
                   help="also rescale a to +-1 in the aX1+bX2+X4 family")
    _common(p)

    p = sub.add_parser("specfun", help="series value against the quadrature oracle")
    p.add_argument("name")
    p.add_argument("x", type=float)
    _common(p)
    return parser


def _interval(value, name):
    try:
        lo, hi = (float(v) for v in value)
    except (TypeError, ValueError):
        raise ConfigError(f"{name} must be a pair of numbers") from None
    return (lo, hi)


def load_config(args: argparse.Namespace) -> RunConfig:
    values: dict = {}
    if args.config is not None:
        try:
            raw = json.loads(args.config.read_text())
        except (OSError, json.JSONDecodeError) as exc:
            raise ConfigError(f"cannot read config {args.config}: {exc}") from exc
        if not isinstance(raw, dict):
            raise ConfigError("config must be a JSON object")
        eq = raw.pop("equation", {}) or {}
        for key in ("a", "p", "F", "G"):
            if key in eq:
                values[key] = str(eq[key])
        for key in ("seed", "samples", "tol"):
            if key in raw:
                values[key] = raw.pop(key)
        for key in ("x_range", "t_range", "c_range"):
            if key in raw:
                values[key] = _interval(raw.pop(key), key)
        if raw:
            raise ConfigError(f"unknown config keys: {sorted(raw)}")
    for key in ("a", "p", "F", "G", "seed", "samples", "tol"):
        v = getattr(args, key, None)
        if v is not None:
            values[key] = v
    try:
        cfg = RunConfig(**values)
        cfg = dataclasses.replace(cfg, seed=int(cfg.seed), samples=int(cfg.samples), tol=float(cfg.tol))
    except (TypeError, ValueError) as exc:
        raise ConfigError(str(exc)) from exc
    return cfg.validate()


def run(args: argparse.Namespace):
    cfg = load_config(args)
    cmd = args.command
    if cmd == "check-symmetries":
        return cmd_check_symmetries(cfg, args.candidate)
    if cmd == "tables":
        return cmd_tables(cfg)
    if cmd == "algebra":
        return cmd_algebra(cfg)
    if cmd == "classify":
        return cmd_classify(cfg, [args.a1, args.a2, args.a3, args.a4], args.structure, args.normalize_case1)
    if cmd == "verify-solutions":
        return cmd_verify_solutions(cfg)
    if cmd == "specfun":
        return cmd_specfun(cfg, args.name, args.x)
    if cmd == "determining":
        return cmd_determining(cfg)
    raise ConfigError(f"unknown command {cmd}")


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        report = run(args)
    except (ConfigError, DomainError, ExprError, NonConvergence, ValueError) as exc:
        print(f"gslie: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    sys.stdout.write(report.to_text())
    if args.out is not None:
        args.out.write_text(report.to_json())
    return EXIT_OK if report.status == "ok" else EXIT_MISMATCH


if __name__ == "__main__":
    sys.exit(main())
