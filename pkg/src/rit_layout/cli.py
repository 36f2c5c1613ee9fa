"""Command-line interface.

Subcommands: render (SVG), layout (geometry JSON), compare (icicle +
sunburst + rit SVGs with a diagnostics JSON), bench (scalability CSV with
a linear fit), validate (input checks).

Exit codes: 0 ok, 1 usage error, 2 input error, 3 validation failure.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from pathlib import Path as FsPath

from .bench import (
    DEFAULT_NODE_CAP,
    GeneratorSpec,
    compare_kernels,
    records_to_csv,
    run_bench,
)
from .colors import assign_colors
from .diagnostics import diagnostics
from .layout import STYLES, LayoutConfig, compute_layout, layout_to_json
from .measure import kernel_name
from .svg import RenderStyle, render_svg
from .tree import (
    NormalizationError,
    TreeInputError,
    detect_format,
    normalize,
    parse_tree,
    validate,
)

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_INPUT = 2
EXIT_VALIDATION = 3


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str) -> None:  # noqa: D102 - argparse hook
        raise _UsageError(message)


def _angle(text: str) -> float:
    """Float, optionally scaled by pi: '0.5pi' -> 0.5*pi."""
    s = text.strip().lower()
    if s.endswith("pi"):
        factor = s[:-2].strip() or "1"
        return float(factor) * math.pi
    return float(s)


def _depth_range(text: str) -> list[int]:
    """'1..8' or '2,4,6' -> list of depths."""
    if ".." in text:
        lo, hi = text.split("..", 1)
        return list(range(int(lo), int(hi) + 1))
    return [int(p) for p in text.split(",") if p]


def _add_config_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--theta0", type=_angle, default=0.0, help="root start angle (rad; accepts e.g. 1.25pi)")
    p.add_argument("--beta0", type=_angle, default=2.0 * math.pi, help="root arc angle (rad)")
    p.add_argument("--r0", type=float, default=8.0, help="root inner radius")
    p.add_argument("--h0", type=float, default=2.0, help="root ring height")
    p.add_argument("--ar", type=float, default=0.1, help="initial wedge angle ratio")
    p.add_argument("--acr", type=float, default=1.0, help="per-depth wedge ratio multiplier")
    p.add_argument("--mode", choices=["contained", "literal"], default="contained")
    p.add_argument("--relax", action="store_true", help="re-space runs of thin siblings")
    p.add_argument("--relax-threshold", type=float, default=0.01)


def _config_from_args(args: argparse.Namespace) -> LayoutConfig:
    return LayoutConfig(
        theta0=args.theta0,
        beta0=args.beta0,
        r0=args.r0,
        h0=args.h0,
        ar0=args.ar,
        acr=args.acr,
        mode=args.mode,
        relax_enabled=args.relax,
        relax_threshold=args.relax_threshold,
    )


def _add_render_style_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--canvas", type=int, default=840, help="canvas size in pixels")
    p.add_argument("--svg-margin", type=float, default=20.0)
    p.add_argument("--labels", action="store_true", help="draw node labels")
    p.add_argument("--palette", choices=["hue-partition", "fixed-list"], default="hue-partition")


def _load_tree(path: str, strategy: str = "strict"):
    try:
        data = FsPath(path).read_bytes()
    except OSError as exc:
        raise TreeInputError(f"cannot read {path}: {exc}") from exc
    return normalize(parse_tree(data, detect_format(path)), strategy)


def build_parser() -> _Parser:
    parser = _Parser(prog="rit", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p_render = sub.add_parser("render", help="render one style to an SVG file")
    p_render.add_argument("--input", required=True)
    p_render.add_argument("--output", required=True)
    p_render.add_argument("--style", choices=list(STYLES), default="rit")
    _add_config_args(p_render)
    _add_render_style_args(p_render)

    p_layout = sub.add_parser("layout", help="write the geometry JSON for one style")
    p_layout.add_argument("--input", required=True)
    p_layout.add_argument("--output", required=True, help="output path, or - for stdout")
    p_layout.add_argument("--style", choices=list(STYLES), default="rit")
    _add_config_args(p_layout)

    p_cmp = sub.add_parser("compare", help="render all three styles plus diagnostics")
    p_cmp.add_argument("--input", required=True)
    p_cmp.add_argument("--outdir", required=True)
    _add_config_args(p_cmp)
    _add_render_style_args(p_cmp)

    p_bench = sub.add_parser("bench", help="time layouts over generated trees")
    p_bench.add_argument("--generator", choices=["fixed", "random", "semi-random"], default="fixed")
    p_bench.add_argument("--cmax", type=int, default=2)
    p_bench.add_argument("--depths", type=_depth_range, default=[1, 2, 3, 4, 5, 6, 7, 8],
                         help="e.g. 1..8 or 2,4,6")
    p_bench.add_argument("--repeats", type=int, default=5)
    p_bench.add_argument("--csv", default=None, help="write records to this CSV file")
    p_bench.add_argument("--seed", type=int, default=0)
    p_bench.add_argument("--node-cap", type=int, default=DEFAULT_NODE_CAP)
    p_bench.add_argument("--parallel", action="store_true",
                         help="run specs concurrently (timings not comparable)")
    p_bench.add_argument("--compare-kernels", action="store_true",
                         help="benchmark the compiled vs pure-python area kernels instead")

    p_val = sub.add_parser("validate", help="report value-rule violations")
    p_val.add_argument("--input", required=True)

    return parser


def _cmd_render(args: argparse.Namespace) -> int:
    cfg = _config_from_args(args)
    cfg.validate()
    tree = assign_colors(_load_tree(args.input), args.palette)
    layout = compute_layout(tree, args.style, cfg)
    style = RenderStyle(canvas=args.canvas, margin=args.svg_margin, draw_labels=args.labels)
    FsPath(args.output).write_bytes(render_svg(layout, style))
    return EXIT_OK


def _cmd_layout(args: argparse.Namespace) -> int:
    cfg = _config_from_args(args)
    cfg.validate()
    tree = assign_colors(_load_tree(args.input))
    text = layout_to_json(compute_layout(tree, args.style, cfg))
    if args.output == "-":
        sys.stdout.write(text + "\n")
    else:
        FsPath(args.output).write_text(text + "\n", encoding="utf-8")
    return EXIT_OK


def _cmd_compare(args: argparse.Namespace) -> int:
    cfg = _config_from_args(args)
    cfg.validate()
    tree = assign_colors(_load_tree(args.input), args.palette)
    outdir = FsPath(args.outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    style = RenderStyle(canvas=args.canvas, margin=args.svg_margin, draw_labels=args.labels)
    report: dict = {}
    for name in STYLES:
        layout = compute_layout(tree, name, cfg)
        (outdir / f"{name}.svg").write_bytes(render_svg(layout, style))
        diag = diagnostics(layout)
        report[name] = {
            "a_std": diag.a_std,
            "max_area_error": diag.max_area_error,
            "min_gap": diag.min_gap,
            "containment_violations": diag.containment_violations,
            "area_ratios": {n.id: n.area_ratio for n in diag.nodes},
        }
    (outdir / "diagnostics.json").write_text(json.dumps(report, indent=1), encoding="utf-8")
    return EXIT_OK


def _cmd_bench(args: argparse.Namespace) -> int:
    if args.compare_kernels:
        rows = compare_kernels()
        print(f"default kernel: {kernel_name()}")
        for row in rows:
            compiled = (
                f"{row['compiled_seconds']:.4f}s" if row["compiled_seconds"] is not None else "n/a"
            )
            print(
                f"{row['generator']:>11} cmax={row['cmax']} depth={row['depth']} "
                f"nodes={row['nodes']:>5}  python={row['python_seconds']:.4f}s "
                f"compiled={compiled}  max-rel-diff={row['max_rel_disagreement']:.2e}"
            )
        return EXIT_OK
    specs = [
        GeneratorSpec(args.generator, args.cmax, depth, seed=args.seed + depth)
        for depth in args.depths
    ]
    result = run_bench(specs, repeats=args.repeats, node_cap=args.node_cap,
                       parallel=args.parallel)
    for spec, n in result.skipped:
        print(
            f"warning: skipped {spec.kind} cmax={spec.c_max} depth={spec.depth}: "
            f"{n} nodes exceeds cap {args.node_cap}",
            file=sys.stderr,
        )
    if args.csv:
        FsPath(args.csv).write_text(records_to_csv(result.records), encoding="utf-8")
    if result.fit.defined:
        note = " (parallel; timings not comparable)" if result.parallel else ""
        print(
            f"fit over {len(result.records)} runs: time = {result.fit.slope:.3e}*N "
            f"+ {result.fit.intercept:.3e}, R^2 = {result.fit.r_squared:.4f}{note}"
        )
    else:
        print("fit undefined: need at least two distinct node counts")
    return EXIT_OK


def _cmd_validate(args: argparse.Namespace) -> int:
    try:
        data = FsPath(args.input).read_bytes()
    except OSError as exc:
        raise TreeInputError(f"cannot read {args.input}: {exc}") from exc
    tree = parse_tree(data, detect_format(args.input))
    violations = validate(tree)
    print(
        json.dumps(
            [
                {"node": v.node_id, "rule": v.rule, "message": v.message}
                for v in violations
            ],
            indent=1,
        )
    )
    return EXIT_VALIDATION if violations else EXIT_OK


_COMMANDS = {
    "render": _cmd_render,
    "layout": _cmd_layout,
    "compare": _cmd_compare,
    "bench": _cmd_bench,
    "validate": _cmd_validate,
}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except _UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    try:
        return _COMMANDS[args.command](args)
    except (TreeInputError, NormalizationError) as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
