"""Candidate graph construction and nearest-tangential-neighbor selection.

The reconstruction runs in two stages.  Stage one builds the candidate graph
G: an edge joins samples i and j when each lies in the other's allowed
region (noise-free mode) or noisy allowed region with a 2*zeta radial slack
(noisy mode).  Stage two keeps, for every vertex and for each side of its
tangent, the candidate at minimal tangential distance; the union of those
picks is the output polygonalization.

Pair enumeration is pluggable: a pair source is a callable
``(px, py, radius) -> iterable of (ii, jj) index-array chunks`` that must
yield every unordered pair within ``radius`` at least once and no pair
twice.  ``brute_pair_source`` enumerates all pairs; the quadtree source in
``spatial`` yields only nearby ones.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Optional, Sequence

import numpy as np

from . import kernels
from .geom import TangentSample, ZoneParams

Chunk = tuple[np.ndarray, np.ndarray]


class DuplicatePointsError(ValueError):
    """Two samples sit closer than the predicate tolerance."""

    def __init__(self, i: int, j: int):
        super().__init__(
            f"samples {i} and {j} have (near-)duplicate positions; "
            "reconstruction is ill-posed on such input"
        )
        self.pair = (i, j)


@dataclass(frozen=True)
class PolyGraph:
    """Undirected simple graph over sample indices.

    Edges are stored canonically as (min, max) pairs.  Used both for the
    candidate graph G and for the reconstructed polygonalization.
    """

    vertex_count: int
    edges: frozenset

    def __post_init__(self):
        for i, j in self.edges:
            if i == j:
                raise ValueError(f"self-loop at vertex {i}")
            if not (0 <= i < j < self.vertex_count):
                raise ValueError(f"edge ({i}, {j}) not canonical or out of range")

    @classmethod
    def from_edges(cls, vertex_count: int, edges: Iterable[tuple[int, int]]) -> "PolyGraph":
        canon = frozenset((i, j) if i < j else (j, i) for i, j in edges)
        return cls(vertex_count, canon)

    def sorted_edges(self) -> list[tuple[int, int]]:
        return sorted(self.edges)

    def degrees(self) -> list[int]:
        deg = [0] * self.vertex_count
        for i, j in self.edges:
            deg[i] += 1
            deg[j] += 1
        return deg

    def adjacency(self) -> list[list[int]]:
        adj: list[list[int]] = [[] for _ in range(self.vertex_count)]
        for i, j in self.edges:
            adj[i].append(j)
            adj[j].append(i)
        return adj

    def neighbors(self, i: int) -> set[int]:
        out = set()
        for a, b in self.edges:
            if a == i:
                out.add(b)
            elif b == i:
                out.add(a)
        return out

    def leaf_vertices(self) -> list[int]:
        return [v for v, d in enumerate(self.degrees()) if d == 1]

    def degree_histogram(self) -> dict[int, int]:
        hist: dict[int, int] = {}
        for d in self.degrees():
            hist[d] = hist.get(d, 0) + 1
        return hist


def samples_to_arrays(samples: Sequence[TangentSample]):
    """Split samples into contiguous coordinate/tangent arrays."""
    n = len(samples)
    px = np.empty(n)
    py = np.empty(n)
    tx = np.empty(n)
    ty = np.empty(n)
    for k, s in enumerate(samples):
        px[k] = s.pos.x
        py[k] = s.pos.y
        tx[k] = s.tangent.x
        ty[k] = s.tangent.y
    return px, py, tx, ty


def brute_pair_source(px: np.ndarray, py: np.ndarray, radius: float) -> Iterator[Chunk]:
    """All unordered pairs, in row-chunks small enough to keep memory flat."""
    n = len(px)
    # target ~1e6 pair entries per chunk
    rows_per_chunk = max(1, int(1_000_000 // max(n, 1)))
    for start in range(0, n, rows_per_chunk):
        stop = min(start + rows_per_chunk, n)
        ii_parts = []
        jj_parts = []
        for i in range(start, stop):
            if i + 1 < n:
                ii_parts.append(np.full(n - i - 1, i, dtype=np.int64))
                jj_parts.append(np.arange(i + 1, n, dtype=np.int64))
        if ii_parts:
            yield np.concatenate(ii_parts), np.concatenate(jj_parts)


def neighbor_radius(zp: ZoneParams, mode: str) -> float:
    """Pair-enumeration radius: epsilon, widened by 2*zeta in noisy mode."""
    if mode == "noise_free":
        return zp.epsilon
    if mode == "noisy":
        return zp.epsilon + 2.0 * zp.zeta
    raise ValueError(f"unknown mode {mode!r}")


_BATCH_PAIRS = 1 << 17


def _batched(chunks):
    """Coalesce small pair chunks into large batches: the kernels have
    per-call setup costs, and per-leaf chunks are tiny."""
    ii_parts: list[np.ndarray] = []
    jj_parts: list[np.ndarray] = []
    pending = 0
    for ii, jj in chunks:
        if len(ii) == 0:
            continue
        ii_parts.append(np.ascontiguousarray(ii, dtype=np.int64))
        jj_parts.append(np.ascontiguousarray(jj, dtype=np.int64))
        pending += len(ii)
        if pending >= _BATCH_PAIRS:
            yield np.concatenate(ii_parts), np.concatenate(jj_parts)
            ii_parts, jj_parts, pending = [], [], 0
    if pending:
        yield np.concatenate(ii_parts), np.concatenate(jj_parts)


def _evaluate_chunks(px, py, tx, ty, zp: ZoneParams, mode: str, chunks) -> set[tuple[int, int]]:
    edges: set[tuple[int, int]] = set()
    for ii, jj in _batched(chunks):
        if mode == "noise_free":
            codes = kernels.pair_codes_noise_free(
                px, py, tx, ty, ii, jj, zp.kappa_max, zp.epsilon, zp.tol
            )
        else:
            codes = kernels.pair_codes_noisy(
                px, py, tx, ty, ii, jj,
                zp.kappa_max, zp.epsilon, zp.xi, 2.0 * zp.zeta, zp.tol,
            )
        dup = np.nonzero(codes == 2)[0]
        if len(dup):
            k = int(dup[0])
            raise DuplicatePointsError(int(ii[k]), int(jj[k]))
        keep = codes == 1
        lo = np.minimum(ii[keep], jj[keep])
        hi = np.maximum(ii[keep], jj[keep])
        edges.update(zip(lo.tolist(), hi.tolist()))
    return edges


def build_candidate_graph(
    samples: Sequence[TangentSample],
    zp: ZoneParams,
    mode: str = "noise_free",
    pair_source=None,
) -> PolyGraph:
    """Stage one: the mutual-membership candidate graph G.

    ``pair_source`` defaults to brute-force all-pairs enumeration.
    """
    if not samples:
        raise ValueError("samples must be nonempty")
    px, py, tx, ty = samples_to_arrays(samples)
    radius = neighbor_radius(zp, mode)
    source = pair_source if pair_source is not None else brute_pair_source
    chunks = source(px, py, radius + zp.tol)
    edges = _evaluate_chunks(px, py, tx, ty, zp, mode, chunks)
    return PolyGraph(len(samples), frozenset(edges))


def _split_neighbor_list(
    i: int, neighbor_ids, samples: Sequence[TangentSample], tol: float
) -> tuple[set[int], set[int]]:
    s = samples[i]
    mx, my = s.tangent.x, s.tangent.y
    plus: set[int] = set()
    minus: set[int] = set()
    for j in neighbor_ids:
        proj = (samples[j].pos.x - s.pos.x) * mx + (samples[j].pos.y - s.pos.y) * my
        if proj < -tol:
            minus.add(j)
        else:
            plus.add(j)
    return plus, minus


def split_sides(
    i: int, graph: PolyGraph, samples: Sequence[TangentSample], tol: float = 0.0
) -> tuple[set[int], set[int]]:
    """Partition the G-neighbors of i by the side of i's tangent they lie on.

    Neighbors whose projection onto the tangent is within ``tol`` of zero are
    assigned to the positive side; under the reconstruction preconditions a
    true adjacent sample can never project to zero, so the fixed rule only
    affects degenerate candidates and keeps the partition total.
    """
    return _split_neighbor_list(i, graph.neighbors(i), samples, tol)


def nearest_tangential_neighbor(
    i: int, side_set: set[int], samples: Sequence[TangentSample]
) -> Optional[int]:
    """Member of ``side_set`` at minimal tangential distance from sample i.

    Ties break by smaller Euclidean distance, then smaller index, so the
    choice is deterministic across platforms.  None when the set is empty.
    """
    if not side_set:
        return None
    s = samples[i]
    mx, my = s.tangent.x, s.tangent.y
    best = None
    best_key = None
    for j in sorted(side_set):
        dx = samples[j].pos.x - s.pos.x
        dy = samples[j].pos.y - s.pos.y
        key = (abs(dx * mx + dy * my), dx * dx + dy * dy, j)
        if best_key is None or key < best_key:
            best = j
            best_key = key
    return best


def select_polygon_edges(
    graph: PolyGraph, samples: Sequence[TangentSample], tol: float = 0.0
) -> set[tuple[int, int]]:
    """Stage two: per-vertex nearest tangential neighbors on both sides."""
    adjacency = graph.adjacency()
    edges: set[tuple[int, int]] = set()
    for i in range(graph.vertex_count):
        plus, minus = _split_neighbor_list(i, adjacency[i], samples, tol)
        for side in (plus, minus):
            j = nearest_tangential_neighbor(i, side, samples)
            if j is not None:
                edges.add((i, j) if i < j else (j, i))
    return edges


def polygonalize(
    samples: Sequence[TangentSample],
    zp: ZoneParams,
    mode: str = "noise_free",
    pair_source=None,
) -> PolyGraph:
    """Full reconstruction: candidate graph, then per-side argmin selection."""
    graph = build_candidate_graph(samples, zp, mode, pair_source)
    edges = select_polygon_edges(graph, samples, zp.tol)
    return PolyGraph(graph.vertex_count, frozenset(edges))
