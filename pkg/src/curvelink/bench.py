"""Benchmarks: near-linear scaling of the indexed graph build, and the
compiled kernel against the pure-Python fallback.

The scaling workload grows a figure outward at a fixed sampling rate: one
circle whose radius scales with N, so every sample sees an identical local
neighborhood and the pair work is exactly proportional to N.  A quadratic
pair stage would show a 16x step when N quadruples; the indexed build stays
near 4x (the extra factor is the index depth growing logarithmically).
"""

from __future__ import annotations

import math
import time
from typing import Sequence

import numpy as np

from . import kernels
from .geom import TangentSample, UnorientedTangent, Vec2, ZoneParams
from .graph import samples_to_arrays
from .spatial import QuadTree, estimate_rho_max, fast_candidate_graph

BENCH_EPSILON = 0.2
BENCH_SPACING = 0.16
BENCH_KAPPA = 1.0
BENCH_JITTER = 0.25


def scaling_figure_samples(n_target: int, seed: int) -> list[TangentSample]:
    """~n_target samples along one circle sized to keep arc spacing fixed."""
    rng = np.random.default_rng(seed)
    n = max(8, n_target)
    radius = n * BENCH_SPACING / (2.0 * math.pi)
    total = 2.0 * math.pi * radius
    h = total / n
    arcs = np.arange(n) * h + (rng.random(n) - 0.5) * BENCH_JITTER * h
    arcs = np.sort((arcs + rng.random() * total) % total)
    theta = arcs / radius
    samples: list[TangentSample] = []
    for t in theta.tolist():
        samples.append(
            TangentSample(
                Vec2(radius * math.cos(t), radius * math.sin(t)),
                UnorientedTangent(Vec2(-math.sin(t), math.cos(t))),
                len(samples),
            )
        )
    return samples


def scaling_benchmark(
    sizes: Sequence[int] = (1000, 4000, 16000),
    seed: int = 0,
    repeats: int = 3,
) -> dict:
    """Time the indexed candidate-graph build across growing figures.

    Takes the minimum over several runs per size (more at small sizes,
    where scheduler noise dominates the few-millisecond build), after a
    warmup run and with the garbage collector paused.
    """
    import gc

    zp = ZoneParams(kappa_max=BENCH_KAPPA, epsilon=BENCH_EPSILON)
    rows = []
    for n in sizes:
        samples = scaling_figure_samples(n, seed)
        runs = repeats * max(1, min(8, max(sizes) // max(n, 1)))
        fast_candidate_graph(samples, zp)  # warmup
        best = math.inf
        edges = 0
        gc.collect()
        gc.disable()
        try:
            for _ in range(runs):
                t0 = time.perf_counter()
                graph = fast_candidate_graph(samples, zp)
                best = min(best, time.perf_counter() - t0)
                edges = len(graph.edges)
        finally:
            gc.enable()
        rows.append({"n": len(samples), "seconds": best, "edges": edges})
    ratios = [
        {
            "from_n": rows[k]["n"],
            "to_n": rows[k + 1]["n"],
            "time_ratio": rows[k + 1]["seconds"] / rows[k]["seconds"],
        }
        for k in range(len(rows) - 1)
    ]
    return {"backend": kernels.BACKEND, "rows": rows, "ratios": ratios}


def backend_benchmark(n_target: int = 20000, seed: int = 0, repeats: int = 3) -> dict:
    """Compare kernel backends on identical pair batches.

    Verifies that both produce bitwise-identical pair codes, then reports
    per-backend timing.  With only the pure backend importable the result
    carries a note instead of a comparison.
    """
    samples = scaling_figure_samples(n_target, seed)
    px, py, tx, ty = samples_to_arrays(samples)
    zp = ZoneParams(kappa_max=BENCH_KAPPA, epsilon=BENCH_EPSILON)
    radius = zp.epsilon + zp.tol
    tree = QuadTree(px, py, estimate_rho_max(px, py, radius), radius)
    chunks = list(tree.neighbor_pairs(radius))
    ii = np.concatenate([c[0] for c in chunks])
    jj = np.concatenate([c[1] for c in chunks])

    names = kernels.available_backends()
    result: dict = {"n_samples": len(samples), "n_pairs": int(len(ii)), "backends": {}}
    codes_by_name = {}
    for name in names:
        impl = kernels.get_backend(name)
        best = math.inf
        codes = None
        for _ in range(repeats):
            t0 = time.perf_counter()
            codes = impl.pair_codes_noise_free(
                px, py, tx, ty, ii, jj, zp.kappa_max, zp.epsilon, zp.tol
            )
            best = min(best, time.perf_counter() - t0)
        codes_by_name[name] = codes
        result["backends"][name] = {
            "seconds": best,
            "edge_pairs": int((codes == 1).sum()),
        }
    if len(names) == 2:
        a, b = (codes_by_name[n] for n in names)
        if not np.array_equal(a, b):
            raise AssertionError("kernel backends disagree on pair codes")
        result["identical_codes"] = True
        result["speedup"] = (
            result["backends"]["pure"]["seconds"]
            / result["backends"]["compiled"]["seconds"]
        )
    else:
        result["note"] = "compiled backend unavailable; nothing to compare"
    return result
