"""Command-line interface.

Subcommands:
    reconstruct   samples in, graph + run report out
    synth         generate a synthetic figure with ground truth
    render        draw samples/graphs as deterministic SVG
    bench         scaling, backend and separation-sweep benchmarks

Exit codes: 0 success, 1 strict validation failure, 2 input/format error,
3 internal invariant breach.  CURVELINK_OUT_DIR sets the default output
directory.
"""

from __future__ import annotations

import argparse
import math
import os
import sys
import time
from dataclasses import asdict

from . import bench as bench_mod
from . import kernels
from .denoise import remove_leaves, select_denoise_edges
from .fileio import (
    FormatError,
    figure_to_json,
    graph_to_json,
    parse_figure_json,
    parse_figure_spec,
    parse_graph_json,
    read_samples_file,
    report_to_json,
    write_samples,
    write_text,
)
from .graph import (
    DuplicatePointsError,
    PolyGraph,
    build_candidate_graph,
    select_polygon_edges,
)
from .params import ReconstructionParams, ValidationError, enforce, validate
from .spatial import DensityError, quadtree_pair_source
from .svgout import render_svg
from .sweep import phase_sweep
from .synth import (
    FigureSpecError,
    compare_to_truth,
    inject_noise,
    inject_spurious,
    sample_figure,
)

EXIT_OK = 0
EXIT_VALIDATION = 1
EXIT_INPUT = 2
EXIT_INTERNAL = 3

INPUT_ERRORS = (
    FormatError,
    FigureSpecError,
    DuplicatePointsError,
    DensityError,
    OSError,
)


def _out_dir() -> str:
    return os.environ.get("CURVELINK_OUT_DIR", ".")


def _out_path(explicit, default_name: str) -> str:
    if explicit:
        return explicit
    return os.path.join(_out_dir(), default_name)


def _load_input(path: str, fmt: str):
    """Returns (samples, file_params, figure-or-None).

    Figure files carry their generation parameters; those are offered as
    flag defaults so a figure can be reconstructed without repeating them.
    """
    if fmt == "figure":
        with open(path, "r", encoding="utf-8") as fh:
            fig = parse_figure_json(fh.read(), origin=path)
        params = {
            "epsilon": fig.epsilon,
            "kappa_max": fig.spec.kappa_max,
            "zeta": fig.spec.zeta,
            "xi": fig.spec.xi,
        }
        return list(fig.samples), params, fig
    samples, params = read_samples_file(path, fmt)
    return samples, params, None


def _merged_params(args, file_params: dict) -> ReconstructionParams:
    def pick(flag, key, fallback):
        if flag is not None:
            return flag
        if key in file_params:
            return file_params[key]
        return fallback

    epsilon = pick(args.epsilon, "epsilon", None)
    kappa = pick(args.kappa, "kappa_max", None)
    if epsilon is None or kappa is None:
        raise FormatError(
            "epsilon and kappa are required (flags --epsilon/--kappa or the "
            "input file's params block)"
        )
    try:
        return ReconstructionParams(
            kappa_max=float(kappa),
            epsilon=float(epsilon),
            zeta=float(pick(args.zeta, "zeta", 0.0)),
            xi=float(pick(args.xi, "xi", 0.0)),
            alpha=float(pick(args.alpha, "alpha", 1.1)),
            sweeps=int(pick(args.sweeps, "sweeps", 4)),
            rho_max=args.rho_max,
            tol=args.tol,
            mode=args.mode,
            strict_validation=args.strict,
            pair_source=args.pair_source,
            closed_figures=args.closed,
            seed=args.seed,
        )
    except (TypeError, ValueError) as exc:
        raise FormatError(f"invalid parameters: {exc}") from None


def _min_adjacent_spacing(fig) -> float:
    dists = [
        math.hypot(
            fig.samples[j].pos.x - fig.samples[i].pos.x,
            fig.samples[j].pos.y - fig.samples[i].pos.y,
        )
        for i, j in fig.truth.edges
    ]
    return min(dists) if dists else math.inf


def cmd_reconstruct(args) -> int:
    timing: dict[str, float] = {}
    t0 = time.perf_counter()
    samples, file_params, fig = _load_input(args.input, args.format)
    timing["parse"] = time.perf_counter() - t0
    if not samples:
        raise FormatError(f"{args.input}: no samples")

    params = _merged_params(args, file_params)
    declared_delta = args.delta
    min_spacing = None
    if fig is not None:
        if declared_delta is None:
            declared_delta = fig.min_separation_actual
        min_spacing = _min_adjacent_spacing(fig)

    t0 = time.perf_counter()
    checks = validate(params, declared_delta, min_spacing)
    if params.strict_validation:
        enforce(checks)
    timing["validate"] = time.perf_counter() - t0

    zp = params.zone_params()
    source = None
    if params.pair_source == "quadtree":
        source = quadtree_pair_source(params.rho_max)

    t0 = time.perf_counter()
    candidate = build_candidate_graph(samples, zp, params.membership_mode(), source)
    timing["candidate_graph"] = time.perf_counter() - t0

    t0 = time.perf_counter()
    if params.mode == "denoise":
        edges = select_denoise_edges(candidate, samples, params.alpha, zp.tol)
    else:
        edges = select_polygon_edges(candidate, samples, zp.tol)
    result = PolyGraph(candidate.vertex_count, frozenset(edges))
    timing["select"] = time.perf_counter() - t0

    t0 = time.perf_counter()
    if params.mode == "denoise" and params.closed_figures and params.sweeps > 0:
        result = remove_leaves(result, params.sweeps)
    timing["leaf_filter"] = time.perf_counter() - t0

    diff = compare_to_truth(result, fig) if fig is not None else None

    report = {
        "input": {
            "path": args.input,
            "format": args.format,
            "sample_count": len(samples),
        },
        "backend": kernels.BACKEND,
        "params": asdict(params),
        "declared_delta": declared_delta,
        "validation": [c.to_dict() for c in checks],
        "graph": {
            "vertex_count": result.vertex_count,
            "edge_count": len(result.edges),
            "candidate_edge_count": len(candidate.edges),
            "degree_histogram": {str(k): v for k, v in sorted(result.degree_histogram().items())},
            "leaf_count": len(result.leaf_vertices()),
        },
        "timing_seconds": timing,
        "diff": diff.to_dict() if diff is not None else None,
    }

    stem = os.path.splitext(os.path.basename(args.input))[0]
    graph_path = _out_path(args.out_graph, f"{stem}.graph.json")
    report_path = _out_path(args.out_report, f"{stem}.report.json")
    write_text(graph_path, graph_to_json(result, samples))
    write_text(report_path, report_to_json(report))
    if args.out_svg:
        write_text(
            args.out_svg,
            render_svg(samples, result, figure=fig, show_tangents=args.tangents),
        )
    summary = f"{len(samples)} samples -> {len(result.edges)} edges"
    if diff is not None:
        summary += (
            f" (truth: {len(diff.missing)} missing, {len(diff.extra)} extra)"
        )
    print(summary)
    print(f"graph: {graph_path}")
    print(f"report: {report_path}")
    return EXIT_OK


def cmd_synth(args) -> int:
    with open(args.spec, "r", encoding="utf-8") as fh:
        spec = parse_figure_spec(fh.read(), origin=args.spec)
    fig = sample_figure(spec, args.epsilon, args.seed, jitter=args.jitter)
    if spec.zeta > 0.0 or spec.xi > 0.0:
        fig = inject_noise(fig, spec.zeta, spec.xi, args.seed + 1)
    if args.spurious > 0:
        bbox = tuple(args.bbox) if args.bbox else fig.bounding_box(pad=args.bbox_pad)
        fig = inject_spurious(fig, args.spurious, bbox, args.seed + 2)
    out = _out_path(args.out, "figure.json")
    write_text(out, figure_to_json(fig))
    print(
        f"{len(fig.samples)} samples ({fig.true_count()} on curves), "
        f"{len(fig.truth.edges)} truth edges"
    )
    print(f"figure: {out}")
    if args.out_samples:
        write_samples(args.out_samples, list(fig.samples), args.format)
        print(f"samples: {args.out_samples}")
    return EXIT_OK


def cmd_render(args) -> int:
    samples, _, fig = _load_input(args.input, args.format)
    graph = None
    if args.graph:
        with open(args.graph, "r", encoding="utf-8") as fh:
            graph, _ = parse_graph_json(fh.read(), origin=args.graph)
    out = _out_path(args.out_svg, "figure.svg")
    write_text(out, render_svg(samples, graph, figure=fig, show_tangents=args.tangents))
    print(f"svg: {out}")
    return EXIT_OK


def cmd_bench(args) -> int:
    import json

    prefix = _out_path(args.out_prefix, "bench")
    if args.task in ("scaling", "all"):
        res = bench_mod.scaling_benchmark(seed=args.seed)
        write_text(prefix + ".scaling.json", json.dumps(res, indent=2, sort_keys=True) + "\n")
        for row in res["rows"]:
            print(f"scaling n={row['n']}: {row['seconds']:.3f}s ({row['edges']} edges)")
        for r in res["ratios"]:
            print(f"scaling {r['from_n']} -> {r['to_n']}: time x{r['time_ratio']:.2f}")
    if args.task in ("backends", "all"):
        res = bench_mod.backend_benchmark(seed=args.seed)
        write_text(prefix + ".backends.json", json.dumps(res, indent=2, sort_keys=True) + "\n")
        for name, row in res["backends"].items():
            print(f"backend {name}: {row['seconds']:.3f}s for {res['n_pairs']} pairs")
        if "speedup" in res:
            print(f"compiled speedup: x{res['speedup']:.1f}")
    if args.task in ("sweep", "all"):
        res = phase_sweep(trials=args.trials, seed=args.seed)
        write_text(prefix + ".sweep.csv", res.to_csv())
        write_text(
            prefix + ".sweep.json",
            json.dumps(res.to_dict(), indent=2, sort_keys=True) + "\n",
        )
        for c in res.cells:
            print(
                f"sweep delta={c.delta:.2e}: eps_tangent={c.eps_tangent:.4g} "
                f"eps_baseline={c.eps_baseline:.4g}"
            )
        print(
            f"sweep slopes: tangent {res.slope_tangent:.3f}, "
            f"baseline {res.slope_baseline:.3f}"
        )
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="curvelink",
        description="Reconstruct planar curve families from point/tangent samples.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    rec = sub.add_parser("reconstruct", help="reconstruct a graph from samples")
    rec.add_argument("--input", required=True, help="input file")
    rec.add_argument("--format", default="csv", choices=("csv", "json", "figure"))
    rec.add_argument("--mode", default="noise_free",
                     choices=("noise_free", "noisy", "denoise"))
    rec.add_argument("--epsilon", type=float, help="sample spacing bound")
    rec.add_argument("--kappa", type=float, help="curvature bound")
    rec.add_argument("--zeta", type=float, help="position noise bound")
    rec.add_argument("--xi", type=float, help="tangent angle noise bound (radians)")
    rec.add_argument("--alpha", type=float, help="almost-nearest threshold (denoise)")
    rec.add_argument("--sweeps", type=int, help="leaf removal sweeps (denoise)")
    rec.add_argument("--delta", type=float, help="declared curve separation")
    rec.add_argument("--rho-max", type=float, dest="rho_max",
                     help="sample density bound for the spatial index")
    rec.add_argument("--tol", type=float, default=1e-9, help="predicate tolerance")
    rec.add_argument("--strict", action="store_true",
                     help="fail (exit 1) when preconditions are violated")
    rec.add_argument("--pair-source", default="quadtree", dest="pair_source",
                     choices=("brute", "quadtree"))
    rec.add_argument("--closed", action="store_true",
                     help="all curves are closed (enables leaf filtering)")
    rec.add_argument("--seed", type=int, default=0)
    rec.add_argument("--out-graph", dest="out_graph")
    rec.add_argument("--out-report", dest="out_report")
    rec.add_argument("--out-svg", dest="out_svg")
    rec.add_argument("--tangents", action="store_true", help="draw tangent ticks")
    rec.set_defaults(func=cmd_reconstruct)

    syn = sub.add_parser("synth", help="generate a synthetic figure")
    syn.add_argument("--spec", required=True, help="figure spec JSON")
    syn.add_argument("--epsilon", type=float, required=True)
    syn.add_argument("--seed", type=int, default=0)
    syn.add_argument("--jitter", type=float, default=0.3)
    syn.add_argument("--spurious", type=int, default=0,
                     help="number of random extra points")
    syn.add_argument("--bbox", type=float, nargs=4, metavar=("X0", "Y0", "X1", "Y1"),
                     help="box for spurious points")
    syn.add_argument("--bbox-pad", type=float, default=0.25, dest="bbox_pad",
                     help="pad the sample box for spurious points")
    syn.add_argument("--out", help="figure JSON output")
    syn.add_argument("--out-samples", dest="out_samples",
                     help="also write bare samples")
    syn.add_argument("--format", default="csv", choices=("csv", "json"))
    syn.set_defaults(func=cmd_synth)

    ren = sub.add_parser("render", help="render samples and edges to SVG")
    ren.add_argument("--input", required=True)
    ren.add_argument("--format", default="csv", choices=("csv", "json", "figure"))
    ren.add_argument("--graph", help="graph JSON to draw")
    ren.add_argument("--out-svg", dest="out_svg")
    ren.add_argument("--tangents", action="store_true")
    ren.set_defaults(func=cmd_render)

    ben = sub.add_parser("bench", help="run benchmarks")
    ben.add_argument("--task", default="all",
                     choices=("scaling", "backends", "sweep", "all"))
    ben.add_argument("--trials", type=int, default=5, help="sweep trials per cell")
    ben.add_argument("--seed", type=int, default=0)
    ben.add_argument("--out-prefix", dest="out_prefix")
    ben.set_defaults(func=cmd_bench)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ValidationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except INPUT_ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except Exception as exc:  # pragma: no cover - defensive
        print(f"internal error: {exc!r}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
