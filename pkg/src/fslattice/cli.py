"""Command-line entry point: every operation as a subcommand with JSON output.

Exit codes: 0 success, 1 domain/validation error, 2 resource cap, 64 usage.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Optional, Sequence

from . import cone, dyadic, gaps
from .config import RunConfig
from .core import (
    Box,
    DomainError,
    GeneratorSet,
    Point,
    ResourceLimitError,
    ValidationError,
    parse_point,
)
from .oracle import fs_enumerate, fs_membership
from .selftest import CRITERIA, selftest_payload

EXIT_OK = 0
EXIT_DOMAIN = 1
EXIT_RESOURCE = 2
EXIT_USAGE = 64


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str) -> None:  # type: ignore[override]
        raise UsageError(message)


def _emit(payload: dict, out: Optional[str]) -> None:
    text = json.dumps(payload, sort_keys=True, indent=2) + "\n"
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _write_pgm(path: str, rows: list[list[int]]) -> None:
    height = len(rows)
    width = len(rows[0]) if rows else 0
    lines = [f"P2", f"{width} {height}", "255"]
    lines += [" ".join(str(v) for v in row) for row in rows]
    Path(path).write_text("\n".join(lines) + "\n")


def _parse_box(text: str) -> Box:
    parts = text.split(",")
    if len(parts) != 4:
        raise ValidationError("box must be x0,y0,x1,y1")
    x0, y0, x1, y1 = (int(p) for p in parts)
    return Box(Point((x0, y0)), Point((x1, y1)))


def _load_generators(path: str) -> GeneratorSet:
    return GeneratorSet.from_json(json.loads(Path(path).read_text()))


def _load_ints(path: str) -> list[int]:
    return [int(v) for v in json.loads(Path(path).read_text())]


def _parse_cone_vectors(text: str) -> cone.ConeSpec:
    points = tuple(parse_point(part) for part in text.split(";"))
    return cone.ConeSpec(points)


def build_parser() -> _Parser:
    parser = _Parser(prog="fslattice", description=__doc__)
    parser.add_argument("--config", help="optional JSON config file")
    sub = parser.add_subparsers(dest="group", required=True)

    fs = sub.add_parser("fs", help="brute-force oracle").add_subparsers(
        dest="command", required=True
    )
    p = fs.add_parser("check")
    p.add_argument("--generators", required=True)
    p.add_argument("--target", required=True)
    p.add_argument("--out")
    p = fs.add_parser("enumerate")
    p.add_argument("--generators", required=True)
    p.add_argument("--box", required=True)
    p.add_argument("--out")
    p.add_argument("--heatmap")

    cn = sub.add_parser("cone", help="thin cone generators").add_subparsers(
        dest="command", required=True
    )
    p = cn.add_parser("build")
    p.add_argument("--v", required=True, help='generators, e.g. "1,2;2,1"')
    p.add_argument("--depth", type=int, default=None)
    p.add_argument("--out")
    p = cn.add_parser("decompose")
    p.add_argument("--spec", required=True)
    p.add_argument("--point", required=True)
    p.add_argument("--out")
    p = cn.add_parser("verify")
    p.add_argument("--spec", required=True)
    p.add_argument("--max", type=int, default=80)
    p.add_argument("--out")

    dy = sub.add_parser("dyadic", help="power-of-two grid").add_subparsers(
        dest="command", required=True
    )
    p = dy.add_parser("check")
    p.add_argument("--point", required=True)
    p.add_argument("--out")
    p = dy.add_parser("map")
    p.add_argument("--box", required=True)
    p.add_argument("--out", required=True)
    p = dy.add_parser("empty-square")
    p.add_argument("--D", type=int, required=True)
    p.add_argument("--verify", action="store_true")
    p.add_argument("--out")
    p = dy.add_parser("dense-square")
    p.add_argument("--R", type=int, required=True)
    p.add_argument("--out")

    gp = sub.add_parser("gap", help="GAPs and dense rectangles").add_subparsers(
        dest="command", required=True
    )
    p = gp.add_parser("build")
    p.add_argument("--A", required=True)
    p.add_argument("--B", required=True)
    p.add_argument("--L", required=True, help='lengths, e.g. "3,2"')
    p.add_argument("--out")
    p = gp.add_parser("rectangle")
    p.add_argument("--A", required=True)
    p.add_argument("--B", required=True)
    p.add_argument("--T", type=int, required=True)
    p.add_argument("--H", type=int, required=True)
    p.add_argument("--out")
    p = gp.add_parser("five-squares")
    p.add_argument("--lo", type=int, required=True)
    p.add_argument("--hi", type=int, required=True)
    p.add_argument("--out")

    p = sub.add_parser("selftest", help="run the acceptance suite")
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--criteria", help='subset to run, e.g. "1,4,12"')
    p.add_argument("--out")
    return parser


def _cmd_fs(args, cfg: RunConfig) -> int:
    if args.command == "check":
        X = _load_generators(args.generators)
        target = parse_point(args.target)
        rep = fs_membership(X, target)
        _emit(
            {
                "target": target.to_json(),
                "reachable": rep is not None,
                "representation": rep.to_json() if rep else None,
            },
            args.out,
        )
        return EXIT_OK
    X = _load_generators(args.generators)
    box = _parse_box(args.box)
    reach = fs_enumerate(X, box, cell_cap=cfg.cell_cap)
    points = sorted(reach.points)
    payload = {
        "box": {"lo": box.lo.to_json(), "hi": box.hi.to_json()},
        "count": len(points),
        "points": [p.to_json() for p in points],
        "witnesses": {str(p): reach.witness(p).to_json()["members"] for p in points},
    }
    if args.heatmap:
        lx, ly = box.lo.coords
        hx, hy = box.hi.coords
        rows = [
            [255 if Point((x, y)) in reach.points else 0 for x in range(lx, hx + 1)]
            for y in range(hy, ly - 1, -1)
        ]
        _write_pgm(args.heatmap, rows)
        payload["heatmap"] = args.heatmap
    _emit(payload, args.out)
    return EXIT_OK


def _cmd_cone(args, cfg: RunConfig) -> int:
    if args.command == "build":
        spec = _parse_cone_vectors(args.v)
        depth = args.depth if args.depth is not None else cfg.ray_depth
        X = cone.build_thin_generators(spec, depth)
        _emit(X.to_json(), args.out)
        return EXIT_OK
    data = json.loads(Path(args.spec).read_text())
    spec = cone.ConeSpec.from_json(data.get("spec", data))
    if args.command == "decompose":
        target = parse_point(args.point)
        depth = data.get("depth", cone.default_depth(spec, target))
        X = cone.build_thin_generators(spec, depth)
        X, rep = cone.decompose_auto(spec, X, target)
        _emit({"depth": X.depth, "representation": rep.to_json()}, args.out)
        return EXIT_OK
    # verify
    limit = args.max
    X = cone.build_thin_generators(
        spec, cone.default_depth(spec, Point((limit,) * spec.k))
    )
    failing = None
    checked = 0
    for coords in Box(Point((0,) * spec.k), Point((limit,) * spec.k)).points_lex():
        if coords.is_zero or not spec.in_cone(coords):
            continue
        checked += 1
        X, rep = cone.decompose_auto(spec, X, coords)
        from .core import validate_representation

        if not validate_representation(rep):
            failing = coords
            break
    _emit(
        {
            "max": limit,
            "checked": checked,
            "passed": failing is None,
            "failing_point": failing.to_json() if failing else None,
        },
        args.out,
    )
    return EXIT_OK if failing is None else EXIT_DOMAIN


def _cmd_dyadic(args, cfg: RunConfig) -> int:
    if args.command == "check":
        p = parse_point(args.point)
        a, b = p.coords
        in_e = dyadic.in_exceptional(a, b)
        rep = None
        if not in_e:
            rep = dyadic.dyadic_represent(a, b)
        _emit(
            {
                "point": p.to_json(),
                "in_exceptional": in_e,
                "representation": rep.to_json() if rep else None,
            },
            args.out,
        )
        return EXIT_OK
    if args.command == "map":
        box = _parse_box(args.box)
        reach = fs_enumerate(
            dyadic.dyadic_generators(box.hi), box, cell_cap=cfg.cell_cap
        )
        rows = dyadic.exceptional_map(box.lo, box.hi, set(reach.points))
        _write_pgm(args.out, rows)
        sys.stdout.write(
            json.dumps({"heatmap": args.out, "reachable": len(reach.points)}, sort_keys=True)
            + "\n"
        )
        return EXIT_OK
    if args.command == "empty-square":
        cert = dyadic.empty_square(args.D)
        payload = {
            "x0": cert.square.x0.to_json(),
            "y0": cert.square.y0.to_json(),
            "side": cert.square.side,
            "certificate_ok": cert.all_unreachable(),
        }
        if args.verify:
            points = dyadic.empty_square_points(cert)
            box = Box(min(points), max(points))
            reach = fs_enumerate(
                dyadic.dyadic_generators(box.hi), box, cell_cap=cfg.cell_cap
            )
            payload["verified"] = not reach.points
        _emit(payload, args.out)
        return EXIT_OK
    rep = dyadic.dense_square_count(args.R)
    _emit(
        {
            "R": rep.R,
            "exact_count": rep.exact_count,
            "enumeration_count": rep.enumeration_count,
            "per_k": [list(t) for t in rep.per_k],
            "chain_threshold": rep.chain_threshold,
            "closed_form_lower": rep.closed_form_lower,
            "quarter_bound": rep.quarter_bound,
        },
        args.out,
    )
    return EXIT_OK


def _cmd_gap(args, cfg: RunConfig) -> int:
    if args.command == "build":
        A = _load_ints(args.A)
        B = _load_ints(args.B)
        L = [int(v) for v in args.L.split(",")]
        g = gaps.build_gap(A, B, L)
        _emit(g.to_json(), args.out)
        return EXIT_OK
    if args.command == "rectangle":
        report = gaps.dense_rectangle(
            _load_ints(args.A), _load_ints(args.B), args.T, args.H, cell_cap=cfg.cell_cap
        )
        _emit(report.to_json(), args.out)
        return EXIT_OK
    failures = gaps.five_squares_check(args.lo, args.hi)
    _emit({"lo": args.lo, "hi": args.hi, "failures": failures}, args.out)
    return EXIT_OK


def _cmd_selftest(args, cfg: RunConfig) -> int:
    ids = None
    if args.criteria:
        ids = [int(v) for v in args.criteria.split(",")]
    seed = args.seed if args.seed is not None else cfg.seed
    payload = selftest_payload(seed=seed, cell_cap=cfg.cell_cap, ids=ids)
    names = {cid: name for cid, name, _ in CRITERIA}
    for result in payload["criteria"]:
        mark = "PASS" if result["passed"] else "FAIL"
        sys.stderr.write(f"[{mark}] {result['id']:2d} {names[result['id']]}\n")
    _emit(payload, args.out)
    return EXIT_OK if payload["all_passed"] else EXIT_DOMAIN


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as exc:
        sys.stderr.write(f"usage error: {exc}\n")
        return EXIT_USAGE
    try:
        cfg = RunConfig.load(args.config)
        if args.group == "fs":
            return _cmd_fs(args, cfg)
        if args.group == "cone":
            return _cmd_cone(args, cfg)
        if args.group == "dyadic":
            return _cmd_dyadic(args, cfg)
        if args.group == "gap":
            return _cmd_gap(args, cfg)
        return _cmd_selftest(args, cfg)
    except ResourceLimitError as exc:
        sys.stderr.write(f"resource error: {exc}\n")
        return EXIT_RESOURCE
    except (ValidationError, DomainError, FileNotFoundError, json.JSONDecodeError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_DOMAIN


if __name__ == "__main__":
    sys.exit(main())
