"""Command-line front end: check, solve, sample, verify, export.

Angles are radians by default; `0.5pi`, `pi/3`, `2pi/3` and `1/3pi` are
read as exact rational multiples of pi (and so are plain numbers under
--unit pi).  Exit status: 0 feasible/pass, 1 infeasible/fail, 2 usage,
3 I/O.  Every flag can also be set through a TRINION_<FLAG> environment
variable; flags win.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import re
import sys
from fractions import Fraction

import numpy as np

from trinion._blocks import block_rng
from trinion.polytope import (
    ANGLE_TOL,
    FACET_LABELS,
    TETRAHEDRON,
    classify_exact,
    exact_margins,
    mc_volume_fraction,
)
from trinion.solver import Infeasible, solve_witness
from trinion.su2 import (
    ANGLE_SLOP,
    PRODUCT_TOL,
    DomainError,
    Representation,
    haar_sample,
    moment_map,
)
from trinion.verify import (
    OracleConfig,
    boundary_reducibility_scan,
    forward_scan,
    grid_agreement_scan,
    injectivity_scan,
)

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_IO = 0, 1, 2, 3
ENV_PREFIX = "TRINION_"
MAX_DENOMINATOR = 10**6

_NUM = r"(?:\d+(?:\.\d*)?|\.\d+)(?:/\d+)?"
_PI_RE = re.compile(rf"^(?P<num>{_NUM})?\*?pi(?:/(?P<den>\d+))?$")


class UsageError(Exception):
    pass


def _fraction(text: str) -> Fraction:
    try:
        f = Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise UsageError(f"cannot parse number {text!r}") from exc
    if f.denominator > MAX_DENOMINATOR:
        raise UsageError(f"{text!r}: denominator exceeds {MAX_DENOMINATOR}")
    return f


def parse_angle(text: str, unit: str = "rad") -> Fraction | float:
    """A Fraction (an exact multiple of pi) or a float (radians)."""
    s = text.strip().lower().replace(" ", "")
    m = _PI_RE.match(s)
    if m:
        f = _fraction(m["num"]) if m["num"] else Fraction(1)
        if m["den"]:
            f /= _fraction(m["den"])
        if f.denominator > MAX_DENOMINATOR:
            raise UsageError(f"{text!r}: denominator exceeds {MAX_DENOMINATOR}")
        return f
    if unit == "pi":
        return _fraction(s)
    try:
        x = float(s)
    except ValueError as exc:
        raise UsageError(f"cannot parse angle {text!r}") from exc
    return Fraction(0) if x == 0.0 else x


def to_radians(x: Fraction | float) -> float:
    if isinstance(x, Fraction):
        return math.pi * x.numerator / x.denominator
    return float(x)


def _check_range(vals: list[Fraction | float]) -> None:
    for v in vals:
        if isinstance(v, Fraction):
            if not 0 <= v <= 1:
                raise UsageError(f"angle {v}pi outside [0, pi]")
        elif not (math.isfinite(v) and -ANGLE_SLOP <= v <= math.pi + ANGLE_SLOP):
            raise UsageError(f"angle {v!r} outside [0, pi]")


def _emit(payload: dict, text: str, output: str) -> None:
    if output == "json":
        sys.stdout.write(json.dumps(payload, indent=2, sort_keys=True) + "\n")
    else:
        sys.stdout.write(text.rstrip("\n") + "\n")


def _complex_entries(m: np.ndarray) -> list[list[list[float]]]:
    return [[[float(z.real), float(z.imag)] for z in row] for row in m]


def _fmt_complex(z: complex) -> str:
    re_, im = float(z.real), float(z.imag)
    return f"{re_!r}{'-' if math.copysign(1.0, im) < 0 else '+'}{abs(im)!r}i"


def cmd_check(args) -> int:
    vals = [parse_angle(a, args.unit) for a in args.angles]
    _check_range(vals)
    exact = all(isinstance(v, Fraction) for v in vals)
    t = [to_radians(v) for v in vals]
    if exact:
        m_pi = exact_margins(vals)
        margins = [to_radians(m) for m in m_pi]
        region = classify_exact(vals)
    else:
        margins = list(TETRAHEDRON.margins(t))
        region = TETRAHEDRON.classify(t, args.tol)
    inside = region.kind != "exterior"
    payload = {
        "angles": t,
        "inside": inside,
        "region": region.label,
        "margins": margins,
        "facets": list(FACET_LABELS),
        "exact": exact,
    }
    if exact:
        payload["margins_pi"] = [str(m) for m in m_pi]
    lines = [f"{'inside' if inside else 'outside'}  region={region.label}"]
    for k, (label, m) in enumerate(zip(FACET_LABELS, margins)):
        extra = f" ({m_pi[k]}pi)" if exact else ""
        flag = "  VIOLATED" if k in region.violated else ""
        lines.append(f"  facet {k} [{label}] margin {m!r}{extra}{flag}")
    _emit(payload, "\n".join(lines), args.output)
    return EXIT_OK if inside else EXIT_FAIL


def cmd_solve(args) -> int:
    vals = [parse_angle(a, args.unit) for a in args.angles]
    _check_range(vals)
    t = [to_radians(v) for v in vals]
    out = solve_witness(t, args.tol)
    payload = {"angles": t, **out.to_json()}
    if isinstance(out, Infeasible):
        lines = ["infeasible"] + [
            f"  [{l}] margin {m!r}" + ("  VIOLATED" if m < 0 else "")
            for l, m in zip(out.labels, out.margins)
        ]
        _emit(payload, "\n".join(lines), args.output)
        return EXIT_FAIL
    err = out.rep.product_error()
    if err > PRODUCT_TOL:
        sys.stderr.write(f"witness product is {err:.3g} from the identity\n")
        return EXIT_FAIL
    payload["product_error"] = err
    payload["matrices"] = {
        name: _complex_entries(x.matrix()) for name, x in zip(("a1", "a2", "a3"), out.rep)
    }
    lines = [
        f"witness  region={out.region.label}  beta={out.beta.beta!r}",
        f"  product error {err!r}",
    ]
    for name, x in zip(("a1", "a2", "a3"), out.rep):
        m = x.matrix()
        lines.append(f"  {name} quaternion {x.to_json()!r}")
        rows = ", ".join("[" + ", ".join(_fmt_complex(z) for z in row) + "]" for row in m)
        lines.append(f"     matrix [{rows}]")
    _emit(payload, "\n".join(lines), args.output)
    return EXIT_OK


def cmd_sample(args) -> int:
    if args.n < 1:
        raise UsageError("--n must be >= 1")
    if args.volume:
        frac = mc_volume_fraction(args.n, args.seed, args.workers)
        payload = {"samples": args.n, "seed": args.seed, "fraction": frac, "expected": 1 / 3}
        _emit(payload, f"volume fraction {frac!r} (expected 1/3) from {args.n} samples", args.output)
        return EXIT_OK
    rng = block_rng(args.seed, 0)
    triples = []
    for _ in range(args.n):
        rep = Representation.from_pair(haar_sample(rng), haar_sample(rng))
        t = moment_map(rep)
        triples.append({"angles": list(t), "inside": TETRAHEDRON.contains(t, args.tol)})
    payload = {"samples": args.n, "seed": args.seed, "triples": triples}
    text = "\n".join(
        " ".join(repr(x) for x in s["angles"]) + ("" if s["inside"] else "  OUTSIDE")
        for s in triples
    )
    _emit(payload, text, args.output)
    return EXIT_OK


def cmd_verify(args) -> int:
    reports = []
    if args.grid:
        reports.append(grid_agreement_scan(args.grid, OracleConfig(), args.tol))
    if args.forward:
        reports.append(forward_scan(args.forward, args.seed, args.workers))
    if args.boundary:
        reports.append(boundary_reducibility_scan(args.boundary, args.seed))
    if args.injectivity:
        reports.append(injectivity_scan(args.injectivity, args.seed))
    if not reports:
        raise UsageError("nothing to verify: pass --grid, --forward, --boundary or --injectivity")
    ok = all(r.passed for r in reports)
    payload = {"passed": ok, "reports": [r.to_json() for r in reports]}
    lines = [
        f"{r.kind}: samples={r.samples} violations={r.violations} "
        f"worst_slack={r.worst_slack!r} {'PASS' if r.passed else 'FAIL'}"
        for r in reports
    ]
    _emit(payload, "\n".join(lines), args.output)
    return EXIT_OK if ok else EXIT_FAIL


def cmd_export(args) -> int:
    if args.format == "off":
        body = TETRAHEDRON.to_off()
    else:
        body = json.dumps(TETRAHEDRON.to_json(), indent=2) + "\n"
    if args.path == "-":
        sys.stdout.write(body)
        return EXIT_OK
    try:
        with open(args.path, "w", encoding="ascii", newline="\n") as fh:
            fh.write(body)
    except OSError as exc:
        sys.stderr.write(f"cannot write {args.path}: {exc}\n")
        return EXIT_IO
    return EXIT_OK


def _env(name: str, default):
    return os.environ.get(ENV_PREFIX + name.upper(), default)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--tol", type=float, default=float(_env("tol", ANGLE_TOL)))
    common.add_argument("--seed", type=int, default=int(_env("seed", 0)))
    common.add_argument("--output", choices=("json", "text"), default=_env("output", "text"))
    common.add_argument("--unit", choices=("rad", "pi"), default=_env("unit", "rad"))
    common.add_argument("--workers", type=int, default=int(_env("workers", 1)))

    parser = argparse.ArgumentParser(
        prog="trinion", description="SU(2) eigenvalue problem for three conjugacy classes"
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", parents=[common], help="is the angle triple in the tetrahedron?")
    p.add_argument("angles", nargs=3)
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("solve", parents=[common], help="build A1 A2 A3 = 1 for the classes")
    p.add_argument("angles", nargs=3)
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("sample", parents=[common], help="Haar samples or Monte Carlo volume")
    p.add_argument("--n", type=int, default=1000)
    p.add_argument("--volume", action="store_true")
    p.set_defaults(func=cmd_sample)

    p = sub.add_parser("verify", parents=[common], help="run oracle and property scans")
    p.add_argument("--grid", type=int, default=0, metavar="N", help="N^3 oracle grid")
    p.add_argument("--forward", type=int, default=0, metavar="N")
    p.add_argument("--boundary", type=int, default=0, metavar="M", help="samples per facet")
    p.add_argument("--injectivity", type=int, default=0, metavar="K")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("export", parents=[common], help="write the tetrahedron as JSON or OFF")
    p.add_argument("--format", choices=("json", "off"), default=_env("format", "json"))
    p.add_argument("path", nargs="?", default="-")
    p.set_defaults(func=cmd_export)
    return parser


def main(argv: list[str] | None = None) -> int:
    try:
        parser = build_parser()
    except ValueError as exc:
        sys.stderr.write(f"bad {ENV_PREFIX}* environment value: {exc}\n")
        return EXIT_USAGE
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        return args.func(args)
    except (UsageError, DomainError) as exc:
        sys.stderr.write(f"trinion: {exc}\n")
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
