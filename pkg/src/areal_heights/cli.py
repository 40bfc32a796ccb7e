"""Command-line entry point ``areal-heights``.

Exit status 0 on success, 2 on invalid input, 3 on numerical failure.
JSON is the default output; ``--out csv`` and ``--out plain`` are available
for every command, and ``--save PATH`` writes the output to a file as well.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys
from dataclasses import dataclass, field
from fractions import Fraction

from .equidist import (
    arithmetic_measure_check,
    discrepancy_family,
    empirical_discrepancy,
    lehmer_failure_sequence,
    limiting_height_for_uniform,
    parse_int_range,
    primes_in,
    radial_ks,
    angular_imbalance,
    radial_wasserstein,
)
from .errors import ArealHeightsError, InvalidInputError, NumericalError
from .heights import (
    areal_height,
    areal_mahler_measure,
    essential_minimum,
    kronecker_classify,
    lambda_height,
    mahler_measure,
    weil_height,
)
from .measures import RadiusProfile, parse_measure
from .pairings import az_pairing, optimize_radius
from .places import Point, parse_algebraic

FLOAT_DIGITS = 12
OUTPUTS = ("json", "csv", "plain")


@dataclass
class Config:
    quadrature_nodes: int = 65536
    root_tol: float = 1e-13
    series_terms: int = 10**6
    output: str = "json"

    def __post_init__(self):
        n = self.quadrature_nodes
        if n < 16 or n & (n - 1):
            raise InvalidInputError(f"quadrature_nodes must be a power of two >= 16, got {n}")
        if not 0 < self.root_tol < 1e-3:
            raise InvalidInputError("root_tol must lie in (0, 1e-3)")
        if self.series_terms < 1:
            raise InvalidInputError("series_terms must be positive")
        if self.output not in OUTPUTS:
            raise InvalidInputError(f"output must be one of {OUTPUTS}")

    @classmethod
    def from_env(cls, **overrides) -> "Config":
        env = os.environ.get("AREAL_HEIGHTS_NODES")
        if env is not None and overrides.get("quadrature_nodes") is None:
            try:
                overrides["quadrature_nodes"] = int(env)
            except ValueError:
                raise InvalidInputError(f"AREAL_HEIGHTS_NODES={env!r} is not an integer") from None
        return cls(**{k: v for k, v in overrides.items() if v is not None})


# ---------------------------------------------------------------------------
# formatting
# ---------------------------------------------------------------------------

def fmt(x) -> str:
    if isinstance(x, bool) or x is None:
        return json.dumps(x)
    if isinstance(x, float):
        if math.isnan(x) or math.isinf(x):
            return str(x)
        return format(x, f".{FLOAT_DIGITS}g")
    return str(x)


def _round(obj):
    if isinstance(obj, float):
        return float(fmt(obj)) if math.isfinite(obj) else obj
    if isinstance(obj, dict):
        return {k: _round(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_round(v) for v in obj]
    return obj


@dataclass
class Output:
    """A result as a JSON-able dict plus an optional table for CSV."""

    data: dict
    columns: list[str] = field(default_factory=list)
    rows: list[list] = field(default_factory=list)

    def render(self, mode: str) -> str:
        if mode == "json":
            return json.dumps(_round(self.data), indent=2, sort_keys=False)
        columns, rows = self.columns, self.rows
        if not columns:
            flat = {k: v for k, v in self.data.items() if not isinstance(v, (list, dict))}
            columns, rows = list(flat), [list(flat.values())]
        if mode == "csv":
            buf = io.StringIO()
            writer = csv.writer(buf, lineterminator="\n")
            writer.writerow(columns)
            writer.writerows([[fmt(v) for v in row] for row in rows])
            return buf.getvalue().rstrip("\n")
        lines = []
        for row in rows:
            lines.append("  ".join(f"{c}={fmt(v)}" for c, v in zip(columns, row)))
        return "\n".join(lines)


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------

def _alpha(args):
    return parse_algebraic(args.poly)


def _radii(text):
    return RadiusProfile.parse(text)


def cmd_height(args, cfg):
    alpha = _alpha(args)
    if args.radii:
        rep = areal_height(alpha, _radii(args.radii), args.force, cfg.root_tol)
    else:
        rep = weil_height(alpha, args.force, cfg.root_tol)
    return Output(rep.to_dict())


def cmd_lambda_height(args, cfg):
    rep = lambda_height(_alpha(args), _radii(args.radii), args.force, cfg.root_tol)
    return Output(rep.to_dict())


def _poly_only(args):
    alpha = _alpha(args)
    if isinstance(alpha, Point):
        raise InvalidInputError("Mahler measures need a polynomial input")
    return alpha


def cmd_mahler(args, cfg):
    return Output({"value": mahler_measure(_poly_only(args), cfg.root_tol), "method": "roots"})


def cmd_areal_mahler(args, cfg):
    return Output({"value": areal_mahler_measure(_poly_only(args), cfg.root_tol), "method": "roots"})


def cmd_pairing(args, cfg):
    res = az_pairing(parse_measure(args.left), parse_measure(args.right), args.nodes or cfg.quadrature_nodes)
    return Output(res.to_dict())


def cmd_optimize_radius(args, cfg):
    res = optimize_radius(parse_measure(args.target), (args.lo, args.hi), args.tol)
    return Output(res.to_dict())


def cmd_kronecker(args, cfg):
    verdict = kronecker_classify(_alpha(args), _radii(args.radii), args.force, cfg.root_tol)
    d = verdict.to_dict()
    cols = ["place", "weight", "value", "relation", "bound", "satisfied"]
    return Output(d, cols, [[row[c] for c in cols] for row in d["certificate"]])


def cmd_essential_min(args, cfg):
    r = _radii(args.radii)
    return Output({"value": essential_minimum(r), "radii": str(r)})


def cmd_arithmetic(args, cfg):
    check = arithmetic_measure_check(args.r)
    lim = limiting_height_for_uniform(args.r)
    return Output({
        "r": args.r,
        "arithmetic": check.arithmetic,
        "certificate": check.certificate,
        "limit": lim.limit,
        "exceeds_essential_min": lim.exceeds_essential_min,
    })


def cmd_equidist_lehmer(args, cfg):
    primes = primes_in(parse_int_range(args.primes))
    recs = lehmer_failure_sequence(primes, _radii(args.radii), Fraction(args.alpha))
    cols = ["p", "degree", "height", "gap", "scaled_gap", "p2_gap"]
    rows = [[r.index, r.degree, r.height, r.gap, r.scaled_gap, r.index**2 * r.gap] for r in recs]
    return Output({"records": [r.to_dict() for r in recs]}, cols, rows)


def cmd_equidist_discrepancy(args, cfg):
    target = parse_measure(args.target)
    cols = ["n", "points", "discrepancy", "radial_ks", "angular", "wasserstein"]
    rows = []
    for n in parse_int_range(args.n):
        z = discrepancy_family(args.family, n)
        rows.append([n, len(z), empirical_discrepancy(z, target), radial_ks(z, target),
                     angular_imbalance(z), radial_wasserstein(z, target)])
    data = {"family": args.family, "target": str(target), "rows": [dict(zip(cols, r)) for r in rows]}
    return Output(data, cols, rows)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="areal-heights", description="Areal heights, Mahler measures and pairings over Q.")
    parser.add_argument("--out", choices=OUTPUTS, default=None, help="output format (default json)")
    parser.add_argument("--save", metavar="PATH", help="also write the output to PATH")
    parser.add_argument("--nodes", type=int, default=None, help="quadrature nodes (power of two)")
    parser.add_argument("--root-tol", type=float, default=None)
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, help_text):
        p = sub.add_parser(name, help=help_text)
        p.set_defaults(func=func)
        # accept global options after the subcommand too
        p.add_argument("--out", choices=OUTPUTS, default=argparse.SUPPRESS)
        p.add_argument("--save", metavar="PATH", default=argparse.SUPPRESS)
        p.add_argument("--nodes", type=int, default=argparse.SUPPRESS)
        p.add_argument("--root-tol", type=float, default=argparse.SUPPRESS)
        return p

    def poly_args(p, radii=False, required_radii=False):
        p.add_argument("--poly", "--alpha", dest="poly", required=True,
                       help='ascending coefficients "-1,-1,1", a rational "1/2", "0" or "inf"')
        p.add_argument("--force", action="store_true", help="average over roots of a reducible input")
        if radii:
            p.add_argument("--radii", required=required_radii, help='radius profile, e.g. "inf:1,2:1/2"')

    poly_args(add("height", cmd_height, "areal height (Weil height without --radii)"), radii=True)
    poly_args(add("mahler", cmd_mahler, "Mahler measure of a polynomial"))
    poly_args(add("areal-mahler", cmd_areal_mahler, "areal Mahler measure of a polynomial"))
    poly_args(add("lambda-height", cmd_lambda_height, "height for the circle-family measure"), radii=True, required_radii=True)
    poly_args(add("kronecker", cmd_kronecker, "decide whether the essential minimum is attained"), radii=True, required_radii=True)

    p = add("pairing", cmd_pairing, "Arakelov-Zhang pairing at the archimedean place")
    p.add_argument("--left", required=True)
    p.add_argument("--right", required=True)

    p = add("optimize-radius", cmd_optimize_radius, "minimise AZ(rho_r, target) over r")
    p.add_argument("--target", required=True, help="circle:1 or chebyshev")
    p.add_argument("--lo", type=float, default=0.1)
    p.add_argument("--hi", type=float, default=10.0)
    p.add_argument("--tol", type=float, default=1e-8)

    p = add("essential-min", cmd_essential_min, "essential minimum of the areal height")
    p.add_argument("--radii", required=True)

    p = add("arithmetic-check", cmd_arithmetic, "arithmetic threshold for the disk measure")
    p.add_argument("--r", type=float, required=True)

    eq = sub.add_parser("equidist", help="sequence experiments").add_subparsers(dest="experiment", required=True)
    for name, func, help_text in [
        ("lehmer", cmd_equidist_lehmer, "gap decay for p-th roots of a rational"),
        ("discrepancy", cmd_equidist_discrepancy, "discrepancy of point families"),
        ("arithmetic", cmd_arithmetic, "arithmetic threshold for the disk measure"),
    ]:
        p = eq.add_parser(name, help=help_text)
        p.set_defaults(func=func)
        p.add_argument("--out", choices=OUTPUTS, default=argparse.SUPPRESS)
        p.add_argument("--save", metavar="PATH", default=argparse.SUPPRESS)
        if name == "lehmer":
            p.add_argument("--alpha", default="1/2")
            p.add_argument("--primes", default="5:499")
            p.add_argument("--radii", default="inf:1")
        elif name == "discrepancy":
            p.add_argument("--family", default="cyclotomic", choices=("cyclotomic", "unity", "lehmer"))
            p.add_argument("--n", default="3:100")
            p.add_argument("--target", default="circle:1")
        else:
            p.add_argument("--r", type=float, required=True)
    return parser


VALUE_OPTIONS = ("--poly", "--alpha")


def _glue_negative_values(argv):
    """``--poly -1,-1,1`` would read the coefficients as a flag; glue them on."""
    out, i = [], 0
    while i < len(argv):
        tok = argv[i]
        if tok in VALUE_OPTIONS and i + 1 < len(argv) and argv[i + 1].startswith("-"):
            out.append(f"{tok}={argv[i + 1]}")
            i += 2
        else:
            out.append(tok)
            i += 1
    return out


def run(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    argv = _glue_negative_values(list(sys.argv[1:] if argv is None else argv))
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code else 0
    try:
        cfg = Config.from_env(
            quadrature_nodes=getattr(args, "nodes", None),
            root_tol=getattr(args, "root_tol", None),
            output=getattr(args, "out", None),
        )
        args.nodes = cfg.quadrature_nodes
        text = args.func(args, cfg).render(cfg.output)
    except NumericalError as exc:
        residual = "" if exc.residual is None else f" (residual {exc.residual:.3e})"
        print(f"error: numerical failure: {exc}{residual}", file=stderr)
        return 3
    except (InvalidInputError, ValueError, ZeroDivisionError) as exc:
        print(f"error: invalid input: {exc}", file=stderr)
        return 2
    except ArealHeightsError as exc:
        print(f"error: {exc}", file=stderr)
        return 2
    print(text, file=stdout)
    if getattr(args, "save", None):
        with open(args.save, "w") as fh:
            fh.write(text + "\n")
    return 0


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
