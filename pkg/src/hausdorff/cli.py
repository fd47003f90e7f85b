"""Command-line front end.

Documents are JSON (see docio); results print as dimension-measure
pairs, either human-readable or as JSON with --json. Exit codes: 0
success, 1 domain error, 2 parse error, 3 a check suite failed.
"""

from __future__ import annotations

import argparse
import json
import os
import re
import sys
from dataclasses import asdict

from ._numeric import parse_rational, render_rational
from .checks import DEFAULT_SEED, all_passed, run_suite, suite_names
from .config import get_config, set_config, update_config
from .deficiency import (ConvexPolygon, PlanarSet, Points2D, Segment,
                         convex_hull, defi_continuity_cluster,
                         defi_continuity_dist, defi_continuity_osc,
                         defi_convex, defi_even, oscillation, planar_measure)
from .docio import pair_payload, parse_document
from .errors import HausdorffError, ParseError, ValidationError
from .hintegral import PiecewiseFunction, h_integral
from .hvalue import DIM_ZERO, Dimension
from .metrics import d_H, d_s
from .oracle import box_dim_estimate, premeasure_estimate, quadrature
from .setalg import Interval, RepSet, hmeasure

_CONFIG_ENV = "HAUSDORFF_CONFIG"
_CONFIG_PATH = ("~", ".config", "hausdorff", "config.json")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", default=None,
                        help="emit results as JSON")
    common.add_argument("--seed", type=int, default=None, metavar="N",
                        help="seed for randomized check suites")
    common.add_argument("--precision", type=int, default=None, metavar="BITS",
                        help="working precision for interval enclosures")
    common.add_argument("--tolerance", default=None, metavar="RAT",
                        help="comparison tolerance, a rational like 1/1000000000")
    common.add_argument("--depths", default=None, metavar="A..B",
                        help="depth range for estimates, e.g. 1..12")

    top = argparse.ArgumentParser(
        prog="hausdorff", parents=[common],
        description="Exact dimension-measure computations on the "
                    "representable fragment of the real line.")
    sub = top.add_subparsers(dest="command", required=True)

    p = sub.add_parser("measure", parents=[common],
                       help="measure of a set or planar document")
    p.add_argument("document", help="JSON document or - for stdin")

    p = sub.add_parser("integrate", parents=[common],
                       help="integral of a function document")
    p.add_argument("document", help="JSON function document or -")
    p.add_argument("--on", metavar="SET", default=None,
                   help="restrict to a set document")

    p = sub.add_parser("distance", parents=[common],
                       help="distance between two documents")
    p.add_argument("kind", choices=("sets", "functions"))
    p.add_argument("left", help="JSON document or -")
    p.add_argument("right", help="JSON document or -")

    p = sub.add_parser("defi", parents=[common],
                       help="deficiency measurements")
    p.add_argument("kind", choices=("continuity-osc", "continuity-dist",
                                    "continuity-cluster", "even", "convex"))
    p.add_argument("document", help="JSON document or -")

    p = sub.add_parser("check", parents=[common],
                       help="run a bundled self-check suite")
    p.add_argument("suite", choices=suite_names())

    p = sub.add_parser("estimate", parents=[common],
                       help="independent numerical estimates")
    p.add_argument("kind", choices=("dim", "premeasure", "quad"))
    p.add_argument("document", help="JSON document or -")
    p.add_argument("--d", dest="dim", default=None, metavar="DIM",
                   help="dimension to probe: p/q or log(p)/log(q)")
    p.add_argument("--on", metavar="SET", default=None,
                   help="quadrature region, a single-interval set document")
    p.add_argument("--panels", type=int, default=64,
                   help="quadrature panel count (default 64)")
    return top


# ---------------------------------------------------------------------------
# configuration

def _config_file():
    path = os.environ.get(_CONFIG_ENV)
    if path is None:
        path = os.path.join(os.path.expanduser(_CONFIG_PATH[0]),
                            *_CONFIG_PATH[1:])
    if not os.path.exists(path):
        return {}
    try:
        with open(path, encoding="utf-8") as fh:
            data = json.load(fh)
    except json.JSONDecodeError as exc:
        raise ParseError(f"config file {path}: {exc.msg}",
                         line=exc.lineno, column=exc.colno) from exc
    if not isinstance(data, dict):
        raise ParseError(f"config file {path}: expected a JSON object")
    return data


def _apply_config(args) -> int:
    """Merge the config file under the flags; returns the check seed."""
    data = _config_file()
    fields = {}
    precision = data.get("precision", data.get("precision_bits"))
    if args.precision is not None:
        precision = args.precision
    if precision is not None:
        fields["precision_bits"] = int(precision)
    if "depth_cap" in data:
        fields["depth_cap"] = int(data["depth_cap"])
    tolerance = data.get("tolerance")
    if args.tolerance is not None:
        tolerance = args.tolerance
    if tolerance is not None:
        fields["tolerance"] = parse_rational(tolerance)
    output = data.get("output")
    if args.json:
        output = "json"
    if output is not None:
        fields["output"] = output
    if fields:
        update_config(**fields)
    if args.depths is None and "depths" in data:
        args.depths = str(data["depths"])
    seed = data.get("seed", DEFAULT_SEED)
    if args.seed is not None:
        seed = args.seed
    return int(seed)


# ---------------------------------------------------------------------------
# documents and output

class _Stdin:
    used = False


def _read_text(arg: str) -> str:
    if arg == "-":
        if _Stdin.used:
            raise ValidationError("only one document may come from stdin")
        _Stdin.used = True
        return sys.stdin.read()
    return arg


def _document(arg: str):
    return parse_document(_read_text(arg))


def _want_set(value, what: str) -> RepSet:
    if not isinstance(value, RepSet):
        raise ValidationError(f"{what} must be a set document")
    return value


def _want_function(value, what: str) -> PiecewiseFunction:
    if not isinstance(value, PiecewiseFunction):
        raise ValidationError(f"{what} must be a function document "
                              "(an object with \"terms\")")
    return value


def _json_out() -> bool:
    return get_config().output == "json"


def _emit_pair(pair, branch: str = "") -> str:
    if _json_out():
        payload = pair_payload(pair)
        if branch:
            payload["branch"] = branch
        return json.dumps(payload)
    if branch:
        return f"{pair.render()}\n{branch}"
    return pair.render()


def _interval_payload(ivl) -> dict:
    return {"lo": render_rational(ivl.lo), "hi": render_rational(ivl.hi)}


def _render_interval(ivl) -> str:
    if ivl.is_point():
        return render_rational(ivl.lo)
    return f"[{render_rational(ivl.lo)}, {render_rational(ivl.hi)}]"


def _parse_depths(text, default=(1, 10)):
    if text is None:
        lo, hi = default
    else:
        m = re.fullmatch(r"\s*(\d+)\.\.(\d+)\s*", text)
        if m is None:
            raise ParseError(f"expected a depth range like 1..12, got {text!r}")
        lo, hi = int(m.group(1)), int(m.group(2))
    if lo < 1 or hi < lo:
        raise ValidationError(f"bad depth range {lo}..{hi}")
    return list(range(lo, hi + 1))


def _parse_dim(text) -> Dimension:
    if text is None:
        raise ValidationError("estimate premeasure needs --d <dimension>")
    m = re.fullmatch(r"\s*log\((\d+)\)\s*/\s*log\((\d+)\)\s*", text)
    if m is not None:
        return Dimension.log_ratio(int(m.group(1)), int(m.group(2)))
    return Dimension.rational(parse_rational(text))


# ---------------------------------------------------------------------------
# subcommands

def _cmd_measure(args, seed) -> int:
    doc = _document(args.document)
    if isinstance(doc, RepSet):
        print(_emit_pair(hmeasure(doc)))
    elif isinstance(doc, PlanarSet):
        print(_emit_pair(planar_measure(doc)))
    else:
        raise ValidationError("measure wants a set or planar document; "
                              "use integrate for functions")
    return 0


def _cmd_integrate(args, seed) -> int:
    f = _want_function(_document(args.document), "integrate")
    if args.on is None:
        print(_emit_pair(h_integral(f)))
    else:
        region = _want_set(_document(args.on), "--on")
        print(_emit_pair(h_integral(f, region)))
    return 0


def _cmd_distance(args, seed) -> int:
    left, right = _document(args.left), _document(args.right)
    if args.kind == "sets":
        value = d_s(_want_set(left, "left"), _want_set(right, "right"))
    else:
        value = d_H(_want_function(left, "left"),
                    _want_function(right, "right"))
    print(_emit_pair(value.value))
    return 0


def _defi_branch(kind: str, doc, result) -> str:
    if kind == "continuity-osc":
        profile = oscillation(doc)
        if profile.is_empty():
            return "no oscillation: the presentation is continuous"
        parts = []
        if profile.point_values:
            parts.append(f"{len(profile.point_values)} isolated "
                         "discontinuity point(s)")
        if profile.seq_values:
            parts.append(f"{len(profile.seq_values)} sequence piece(s)")
        return "oscillation collected from " + " and ".join(parts)
    if kind == "continuity-dist":
        if result.d.cmp(DIM_ZERO) > 0:
            return ("an essential jump: no pointwise repair reaches a "
                    "continuous function")
        if result.m.sign() == 0:
            return "already continuous: nothing to repair"
        return "repairable by adjusting finitely many values"
    if kind == "continuity-cluster":
        return (f"the widest approach cluster carries "
                f"{result.m.render()} value(s)")
    if kind == "even":
        if result.m.sign() == 0 and result.d.cmp(DIM_ZERO) == 0:
            return "the function equals its mirror image"
        return "mass of |f(x) - f(-x)| over the asymmetric part"
    hull = convex_hull(doc)
    if isinstance(hull, Points2D):
        return "the points span no segment: nothing to fill"
    if isinstance(hull, Segment):
        return "the hull is a segment: the gap is its uncovered length"
    return "the hull is a polygon: the gap is its uncovered area"


def _cmd_defi(args, seed) -> int:
    doc = _document(args.document)
    if args.kind == "convex":
        if not isinstance(doc, PlanarSet):
            raise ValidationError("defi convex wants a planar document")
        result = defi_convex(doc)
    else:
        f = _want_function(doc, f"defi {args.kind}")
        fn = {"continuity-osc": defi_continuity_osc,
              "continuity-dist": defi_continuity_dist,
              "continuity-cluster": defi_continuity_cluster,
              "even": defi_even}[args.kind]
        result = fn(f)
    print(_emit_pair(result, _defi_branch(args.kind, doc, result)))
    return 0


def _cmd_check(args, seed) -> int:
    results = run_suite(args.suite, seed)
    ok = all_passed(results)
    if _json_out():
        print(json.dumps({"suite": args.suite, "seed": seed,
                          "passed": ok,
                          "results": [asdict(r) for r in results]}))
    else:
        for r in results:
            print(r.line())
        word = "all passed" if ok else "FAILURES"
        print(f"suite {args.suite}: {len(results)} result(s), {word} "
              f"(seed {seed})")
    return 0 if ok else 3


def _cmd_estimate(args, seed) -> int:
    if args.kind == "quad":
        f = _want_function(_document(args.document), "estimate quad")
        if args.on is None:
            raise ValidationError("estimate quad needs --on "
                                  "with a single bounded interval")
        region = _want_set(_document(args.on), "--on")
        atoms = region.atoms
        if len(atoms) != 1 or not isinstance(atoms[0], Interval):
            raise ValidationError("the quadrature region must be a single "
                                  "interval")
        if args.panels < 1:
            raise ValidationError("panel count must be positive")
        ivl = quadrature(f, atoms[0], args.panels)
        if _json_out():
            print(json.dumps({"integral": _interval_payload(ivl),
                              "panels": args.panels}))
        else:
            print(f"integral enclosed in {_render_interval(ivl)} "
                  f"({args.panels} panels)")
        return 0

    s = _want_set(_document(args.document), f"estimate {args.kind}")
    if args.kind == "dim":
        depths = _parse_depths(args.depths)
        slope, covers = box_dim_estimate(s, depths)
        if _json_out():
            print(json.dumps({
                "slope": _interval_payload(slope),
                "covers": [{"depth": c.depth, "count": c.box_count,
                            "box_size": render_rational(c.box_size)}
                           for c in covers]}))
        else:
            width = slope.hi - slope.lo
            print(f"box-count slope ~ {float(slope.mid):.12f} "
                  f"(enclosure width {float(width):.3e})")
            for c in covers:
                print(f"  depth {c.depth:3d}: {c.box_count} boxes of size "
                      f"{render_rational(c.box_size)}")
        return 0

    d = _parse_dim(args.dim)
    depths = _parse_depths(args.depths, default=(1, 8))
    rows = [(k, premeasure_estimate(s, d, k)) for k in depths]
    if _json_out():
        print(json.dumps({"d": d.render(),
                          "premeasure": [{"depth": k,
                                          **_interval_payload(ivl)}
                                         for k, ivl in rows]}))
    else:
        print(f"premeasure sums at d = {d.render()}:")
        for k, ivl in rows:
            print(f"  depth {k:3d}: {_render_interval(ivl)}")
    return 0


_COMMANDS = {
    "measure": _cmd_measure,
    "integrate": _cmd_integrate,
    "distance": _cmd_distance,
    "defi": _cmd_defi,
    "check": _cmd_check,
    "estimate": _cmd_estimate,
}


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    _Stdin.used = False
    previous = get_config()
    try:
        seed = _apply_config(args)
        return _COMMANDS[args.command](args, seed)
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except HausdorffError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    finally:
        set_config(previous)


if __name__ == "__main__":
    sys.exit(main())
