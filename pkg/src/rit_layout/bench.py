"""Scalability benchmark: layout wall time versus node count.

Only the layout call sits inside the timed region (no parsing, no file
output).  Each generated tree is laid out ``repeats`` times; the averaged
times feed an ordinary least-squares fit whose R^2 quantifies linear
scaling.  The recursion's visit counter is recorded per run and must equal
3*(N-1) + 1 for an N-node tree.
"""

from __future__ import annotations

import csv
import hashlib
import io
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

from .generate import GeneratorSpec, generate_tree
from .layout import Layout, LayoutConfig, layout_rit, layout_to_json
from .measure import have_compiled_kernel, path_area
from .tree import normalize

CSV_HEADER = ("generator", "cmax", "depth", "nodes", "repeat", "seconds", "visits")

DEFAULT_NODE_CAP = 200_000


@dataclass(frozen=True)
class BenchRecord:
    generator: str
    cmax: int
    depth: int
    nodes: int
    repeat: int
    seconds: float
    visits: int


@dataclass(frozen=True)
class FitResult:
    slope: float
    intercept: float
    r_squared: float
    defined: bool = True


@dataclass(frozen=True)
class BenchResult:
    records: list[BenchRecord]
    fit: FitResult
    digests: dict[tuple[str, int, int], str]
    skipped: list[tuple[GeneratorSpec, int]]
    parallel: bool = False


def fit_linear(points: list[tuple[float, float]]) -> FitResult:
    """OLS slope/intercept/R^2; R^2 is 0 by convention for constant y."""
    if len({x for x, _ in points}) < 2:
        raise ValueError("need at least 2 distinct x values to fit a line")
    n = len(points)
    mean_x = sum(x for x, _ in points) / n
    mean_y = sum(y for _, y in points) / n
    sxx = sum((x - mean_x) ** 2 for x, _ in points)
    sxy = sum((x - mean_x) * (y - mean_y) for x, y in points)
    syy = sum((y - mean_y) ** 2 for _, y in points)
    slope = sxy / sxx
    intercept = mean_y - slope * mean_x
    if syy == 0.0:
        return FitResult(slope=slope, intercept=intercept, r_squared=0.0)
    ss_res = sum((y - (slope * x + intercept)) ** 2 for x, y in points)
    return FitResult(slope=slope, intercept=intercept, r_squared=1.0 - ss_res / syy)


def _bench_one(
    spec: GeneratorSpec, repeats: int, cfg: LayoutConfig
) -> tuple[list[BenchRecord], str, Layout]:
    tree = normalize(generate_tree(spec), "strict")
    n_nodes = tree.count()
    records = []
    layout = None
    for rep in range(repeats):
        t0 = time.perf_counter()
        layout = layout_rit(tree, cfg)
        elapsed = time.perf_counter() - t0
        records.append(
            BenchRecord(
                generator=spec.kind,
                cmax=spec.c_max,
                depth=spec.depth,
                nodes=n_nodes,
                repeat=rep,
                seconds=elapsed,
                visits=layout.visits,
            )
        )
    digest = hashlib.sha256(layout_to_json(layout).encode()).hexdigest()
    return records, digest, layout


def run_bench(
    specs: list[GeneratorSpec],
    repeats: int = 5,
    node_cap: int = DEFAULT_NODE_CAP,
    parallel: bool = False,
    cfg: LayoutConfig = LayoutConfig(),
) -> BenchResult:
    """Generate, lay out, and time every spec under the node cap.

    Specs whose trees exceed the cap are skipped (recorded in ``skipped``).
    With ``parallel`` the specs run on a thread pool; geometry stays
    deterministic but the timings are not comparable across specs.
    """
    kept: list[GeneratorSpec] = []
    skipped: list[tuple[GeneratorSpec, int]] = []
    for spec in specs:
        n = generate_tree(spec).count()
        if n > node_cap:
            skipped.append((spec, n))
        else:
            kept.append(spec)

    if parallel:
        with ThreadPoolExecutor() as pool:
            outcomes = list(pool.map(lambda s: _bench_one(s, repeats, cfg), kept))
    else:
        outcomes = [_bench_one(spec, repeats, cfg) for spec in kept]

    records: list[BenchRecord] = []
    digests: dict[tuple[str, int, int], str] = {}
    for spec, (recs, digest, _) in zip(kept, outcomes):
        records.extend(recs)
        digests[(spec.kind, spec.c_max, spec.depth)] = digest

    points: dict[int, list[float]] = {}
    for rec in records:
        points.setdefault(rec.nodes, []).append(rec.seconds)
    averaged = [(float(n), sum(ts) / len(ts)) for n, ts in sorted(points.items())]
    try:
        fit = fit_linear(averaged)
    except ValueError:
        fit = FitResult(slope=float("nan"), intercept=float("nan"),
                        r_squared=float("nan"), defined=False)
    return BenchResult(records=records, fit=fit, digests=digests,
                       skipped=skipped, parallel=parallel)


def records_to_csv(records: list[BenchRecord]) -> str:
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(CSV_HEADER)
    for r in records:
        writer.writerow(
            [r.generator, r.cmax, r.depth, r.nodes, r.repeat, repr(r.seconds), r.visits]
        )
    return out.getvalue()


def records_from_csv(text: str) -> list[BenchRecord]:
    reader = csv.reader(io.StringIO(text))
    header = next(reader)
    if tuple(h.strip() for h in header) != CSV_HEADER:
        raise ValueError(f"unexpected bench csv header: {header}")
    return [
        BenchRecord(
            generator=row[0],
            cmax=int(row[1]),
            depth=int(row[2]),
            nodes=int(row[3]),
            repeat=int(row[4]),
            seconds=float(row[5]),
            visits=int(row[6]),
        )
        for row in reader
        if row
    ]


def compare_kernels(
    specs: list[GeneratorSpec] | None = None,
    cfg: LayoutConfig = LayoutConfig(),
    max_arc_step: float = 1e-4,
) -> list[dict]:
    """Time the compiled and pure-python area kernels over the same layouts.

    Returns one row per spec with both timings and the worst relative
    disagreement between the two measurements.
    """
    if specs is None:
        specs = [
            GeneratorSpec("fixed", 2, 5, seed=1),
            GeneratorSpec("random", 5, 4, seed=2),
            GeneratorSpec("semi-random", 6, 4, seed=3),
        ]
    rows = []
    for spec in specs:
        layout = layout_rit(normalize(generate_tree(spec), "strict"), cfg)
        kernels = ["python"] + (["compiled"] if have_compiled_kernel() else [])
        times: dict[str, float] = {}
        areas: dict[str, list[float]] = {}
        for kernel in kernels:
            t0 = time.perf_counter()
            areas[kernel] = [
                path_area(n.path, max_arc_step, kernel=kernel) for n in layout.nodes
            ]
            times[kernel] = time.perf_counter() - t0
        disagreement = 0.0
        if "compiled" in areas:
            disagreement = max(
                abs(a - b) / max(abs(a), 1e-300)
                for a, b in zip(areas["python"], areas["compiled"])
            )
        rows.append(
            {
                "generator": spec.kind,
                "cmax": spec.c_max,
                "depth": spec.depth,
                "nodes": len(layout.nodes),
                "python_seconds": times["python"],
                "compiled_seconds": times.get("compiled"),
                "max_rel_disagreement": disagreement,
            }
        )
    return rows
