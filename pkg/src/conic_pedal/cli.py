"""Command-line interface: ``conic-pedal <subcommand> -i INPUT [-o OUTPUT]``.

Exit codes: 0 on success, 1 on domain errors (reducible conic, silhouette
point, inversion at the origin, failed verification), 2 on input errors.
"""
from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path

import numpy as np

from .catalog import EXAMPLES
from .conic import Conic, classify, invariants
from .errors import DomainError, InputError, TheoremViolation
from .frontal import inversion_map
from .limacon import (
    CircleSpec,
    classify_limacon,
    limacon_implicit,
    limacon_inversion,
    limacon_parametric,
    rotation_reduction,
)
from .pedal_ops import antipedal_curve, pedal_curve, pedal_foot
from .poly2 import BivariatePoly, as_fraction, invert_poly
from .render import Scene, auto_bbox, close_polyline, emit_csv, emit_svg, sample_parametric
from .singularity import classify_origin, inversion_origin_trichotomy, pedal_origin_trichotomy
from .verify import all_passed, env_seed, random_suite, verify_conic

EXIT_OK, EXIT_DOMAIN, EXIT_INPUT = 0, 1, 2


def _read_input(spec: str | None):
    if spec is None:
        raise InputError("missing --input")
    text = spec
    if spec == "-":
        text = sys.stdin.read()
    elif not spec.lstrip().startswith(("{", "[")):
        try:
            text = Path(spec).read_text()
        except OSError as exc:
            raise InputError(f"cannot read input {spec!r}: {exc.strerror}") from exc
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"invalid JSON: {exc}") from exc


def _is_poly(data) -> bool:
    return isinstance(data, dict) and "terms" in data


def _conic(data) -> Conic:
    if isinstance(data, dict) and "conic" in data:
        data = data["conic"]
    return Conic.from_json(data)


def _num(v):
    return str(v) if isinstance(v, Fraction) else float(v)


def _parse_bbox(text: str | None):
    if text is None:
        return None
    try:
        vals = tuple(float(v) for v in text.split(","))
    except ValueError as exc:
        raise InputError(f"invalid --bbox {text!r}") from exc
    if len(vals) != 4 or not (vals[0] < vals[1] and vals[2] < vals[3]):
        raise InputError("--bbox needs xmin,xmax,ymin,ymax with xmin<xmax and ymin<ymax")
    return vals


def _poly_out(p: BivariatePoly) -> dict:
    return {"degree": p.degree, "equation": p.equation(), "polynomial": p.to_json()}


# -- subcommands --------------------------------------------------------------------


def cmd_classify(args):
    C = _conic(_read_input(args.input))
    d0, d = invariants(C)
    cls = classify(C)
    out = {"class": cls.tag.value, "delta0": str(d0), "delta": str(d)}
    if cls.empty_real_locus:
        out["empty_real_locus"] = True
    return out


def cmd_pedal(args):
    return _poly_out(pedal_curve(_conic(_read_input(args.input))))


def cmd_antipedal(args):
    G2 = antipedal_curve(_conic(_read_input(args.input)))
    return {"class": classify(G2).tag.value, "conic": G2.to_json(), "equation": G2.equation()}


def cmd_invert(args):
    data = _read_input(args.input)
    p = BivariatePoly.from_json(data) if _is_poly(data) else _conic(data).as_poly()
    return _poly_out(invert_poly(p))


def cmd_foot(args):
    data = _read_input(args.input)
    if not isinstance(data, dict) or "point" not in data:
        raise InputError("foot input needs {\"conic\": {...}, \"point\": [x, y]}")
    C = _conic(data)
    try:
        x, y = data["point"]
    except (TypeError, ValueError) as exc:
        raise InputError("point must be a pair") from exc
    exact = all(isinstance(v, (int, str)) for v in (x, y))
    p0 = (as_fraction(x), as_fraction(y)) if exact else (float(x), float(y))
    fx, fy = pedal_foot(C, p0)
    out = {"foot": [_num(fx), _num(fy)]}
    if args.invert:
        ix, iy = inversion_map((fx, fy))
        out["anti_pedal_point"] = [_num(ix), _num(iy)]
    return out


def _circle_spec(data, radius_squared: bool) -> CircleSpec:
    if not isinstance(data, dict):
        raise InputError("limacon input must be an object")
    try:
        a, b = data["a"], data["b"]
        if "r2" in data:
            return CircleSpec(a, b, data["r2"])
        r = data["r"]
    except KeyError as exc:
        raise InputError(f"limacon input is missing {exc.args[0]!r}") from exc
    return CircleSpec(a, b, r) if radius_squared else CircleSpec.from_radius(a, b, r)


def cmd_limacon(args):
    spec = _circle_spec(_read_input(args.input), args.radius_squared)
    report = classify_limacon(spec)
    inv = limacon_inversion(spec)
    out = {
        "circle": spec.to_json(),
        "limacon": _poly_out(limacon_implicit(spec)),
        "inversion": {"class": classify(inv).tag.value, "conic": inv.to_json(), "equation": inv.equation()},
        "origin": report.to_json(),
        "a2_plus_b2_minus_r2": str(spec.power),
    }
    if spec.a != 0 or spec.b != 0:
        A, phi = rotation_reduction(spec)
        out["rotation"] = {"A": A, "phi": phi}
    if args.svg:
        curve = limacon_parametric(spec)
        ts, pts = sample_parametric(curve, *curve.domain, args.samples)
        bbox = _parse_bbox(args.bbox) or auto_bbox([pts])
        scene = Scene(bbox=bbox, grid=args.grid)
        scene.add(close_polyline(pts), "limacon", stroke="#c0392b")
        scene.add(inv.as_poly(), "inversion", stroke="#1e8449")
        Path(args.svg).write_text(emit_svg(scene))
        Path(args.svg).with_suffix(".csv").write_text(emit_csv(pts, ts))
    return out


def cmd_singularity(args):
    data = _read_input(args.input)
    if _is_poly(data):
        return {"report": classify_origin(BivariatePoly.from_json(data)).to_json()}
    C = _conic(data)
    run = pedal_origin_trichotomy if args.curve == "pedal" else inversion_origin_trichotomy
    res = run(C)
    return {"report": res.report.to_json(), "class": res.conic_class.value, "consistent": res.consistent}


def cmd_verify(args):
    if args.random:
        seed = env_seed() if args.seed is None else args.seed
        out = random_suite(args.random, seed, samples=args.samples_per_conic)
        return out, (EXIT_OK if out["passed"] else EXIT_DOMAIN)
    C = _conic(_read_input(args.input))
    rng = np.random.default_rng(env_seed() if args.seed is None else args.seed)
    checks = verify_conic(C, args.samples_per_conic, rng)
    ok = all_passed(checks)
    return {"checks": [c.to_json() for c in checks], "passed": ok}, (EXIT_OK if ok else EXIT_DOMAIN)


def cmd_plot(args):
    from .figures import render_all

    outdir = Path(args.output or "figures")
    names = list(EXAMPLES) if args.example == "all" else [args.example]
    written = render_all(outdir, grid=args.grid, samples=args.samples, names=names)
    return {"written": sorted(str(p) for p in written)}


COMMANDS = {
    "classify": cmd_classify,
    "pedal": cmd_pedal,
    "antipedal": cmd_antipedal,
    "invert": cmd_invert,
    "foot": cmd_foot,
    "limacon": cmd_limacon,
    "singularity": cmd_singularity,
    "verify": cmd_verify,
    "plot": cmd_plot,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="conic-pedal", description=__doc__.splitlines()[0])
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("-i", "--input", help="JSON file, '-' for stdin, or inline JSON")
    common.add_argument("-o", "--output", help="output path (stdout by default)")
    common.add_argument("--grid", type=int, default=512, help="marching-squares cells per axis")
    common.add_argument("--bbox", help="xmin,xmax,ymin,ymax")
    common.add_argument("--samples", type=int, default=2000, help="parametric sample count")
    sub = parser.add_subparsers(dest="command", required=True)
    for name in ("classify", "pedal", "antipedal", "invert"):
        sub.add_parser(name, parents=[common])
    p = sub.add_parser("foot", parents=[common])
    p.add_argument("--invert", action="store_true", help="also report the anti-pedal point")
    p = sub.add_parser("limacon", parents=[common])
    p.add_argument("--radius-squared", action="store_true", help="read 'r' as r^2")
    p.add_argument("--svg", help="write an SVG (and a CSV of samples) here")
    p = sub.add_parser("singularity", parents=[common])
    p.add_argument("--curve", choices=("pedal", "inversion"), default="pedal")
    p = sub.add_parser("verify", parents=[common])
    p.add_argument("--random", type=int, default=0, metavar="N", help="run on N random conics")
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--samples-per-conic", type=int, default=100)
    p = sub.add_parser("plot", parents=[common])
    p.add_argument("--example", choices=[*EXAMPLES, "all"], default="all")
    return parser


def _emit(obj, output: str | None) -> None:
    text = json.dumps(obj, sort_keys=True, indent=2) + "\n"
    if output:
        Path(output).write_text(text)
    else:
        sys.stdout.write(text)


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_INPUT
    try:
        if args.grid < 16:
            raise InputError("--grid must be at least 16")
        if args.samples < 2:
            raise InputError("--samples must be at least 2")
        result = COMMANDS[args.command](args)
        code = EXIT_OK
        if isinstance(result, tuple):
            result, code = result
        _emit(result, None if args.command == "plot" else args.output)
        return code
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (DomainError, TheoremViolation) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN


if __name__ == "__main__":
    sys.exit(main())
