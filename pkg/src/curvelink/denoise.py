"""Spurious-point-tolerant reconstruction.

Random extra points land in some sample's allowed region only rarely, and
even then they usually fail the mutual tangent test, so most of them stay
isolated.  Two mechanisms clean up the rest.  First, instead of keeping only
the single nearest tangential neighbor per side, every candidate within a
factor ``alpha`` of the nearest is kept, so a spurious point that narrowly
wins the argmin cannot suppress the true edge.  Second, when all true curves
are closed, degree-1 vertices must be artifacts; ``sweeps`` rounds of
simultaneous leaf-edge removal delete the dangling structures they anchor.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .geom import TangentSample, ZoneParams
from .graph import PolyGraph, _split_neighbor_list, build_candidate_graph


@dataclass(frozen=True)
class DenoiseParams:
    """alpha >= 1 widens the per-side argmin to an almost-nearest set;
    sweeps counts leaf-removal passes; closed_figures gates leaf removal
    (open curves end in legitimate leaves)."""

    alpha: float = 1.1
    sweeps: int = 4
    closed_figures: bool = True

    def __post_init__(self):
        if self.alpha < 1.0:
            raise ValueError("alpha must be >= 1")
        if self.sweeps < 0:
            raise ValueError("sweeps must be >= 0")


def almost_nearest_set(
    i: int,
    side_set: set[int],
    samples: Sequence[TangentSample],
    alpha: float,
) -> set[int]:
    """Candidates within alpha times the minimal tangential distance."""
    if alpha < 1.0:
        raise ValueError("alpha must be >= 1")
    if not side_set:
        return set()
    s = samples[i]
    mx, my = s.tangent.x, s.tangent.y

    def tdist(j: int) -> float:
        return abs((samples[j].pos.x - s.pos.x) * mx + (samples[j].pos.y - s.pos.y) * my)

    best = min(tdist(j) for j in side_set)
    return {j for j in side_set if tdist(j) <= alpha * best}


def remove_leaves(graph: PolyGraph, sweeps: int) -> PolyGraph:
    """Delete all edges incident to degree-1 vertices, ``sweeps`` times.

    Each pass marks every current leaf first and then deletes their edges
    simultaneously, so the result does not depend on vertex order.  Vertices
    are kept (their degree drops to zero), preserving index stability.
    """
    edges = set(graph.edges)
    for _ in range(sweeps):
        deg: dict[int, int] = {}
        for a, b in edges:
            deg[a] = deg.get(a, 0) + 1
            deg[b] = deg.get(b, 0) + 1
        leaves = {v for v, d in deg.items() if d == 1}
        if not leaves:
            break
        edges = {(a, b) for a, b in edges if a not in leaves and b not in leaves}
    return PolyGraph(graph.vertex_count, frozenset(edges))


def select_denoise_edges(
    graph: PolyGraph,
    samples: Sequence[TangentSample],
    alpha: float,
    tol: float = 0.0,
) -> set[tuple[int, int]]:
    """Union of per-side almost-nearest edges over all vertices."""
    adjacency = graph.adjacency()
    edges: set[tuple[int, int]] = set()
    for i in range(graph.vertex_count):
        plus, minus = _split_neighbor_list(i, adjacency[i], samples, tol)
        for side in (plus, minus):
            for j in almost_nearest_set(i, side, samples, alpha):
                edges.add((i, j) if i < j else (j, i))
    return edges


def polygonalize_with_denoise(
    samples: Sequence[TangentSample],
    zp: ZoneParams,
    dp: DenoiseParams,
    mode: str = "noise_free",
    pair_source=None,
) -> PolyGraph:
    """Reconstruction with almost-nearest widening and optional leaf removal.

    With alpha = 1, sweeps = 0 and exact data this degenerates to the plain
    reconstruction.  The candidate stage defaults to noise-free membership;
    pass mode="noisy" to use the noise-dilated test when zeta/xi are set.
    """
    graph = build_candidate_graph(samples, zp, mode, pair_source)
    edges = select_denoise_edges(graph, samples, dp.alpha, zp.tol)
    result = PolyGraph(graph.vertex_count, frozenset(edges))
    if dp.closed_figures and dp.sweeps > 0:
        result = remove_leaves(result, dp.sweeps)
    return result
