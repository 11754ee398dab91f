"""Measuring how the feasible sampling rate scales with curve separation.

The experiment family is a pair of unit circles side by side with gap
``delta`` at their closest approach.  For each gap, a bisection finds the
largest sample spacing at which reconstruction is exact across all trials,
once for the tangent-aware method and once for a proximity-only baseline
that links every sample to its two Euclidean-nearest neighbors.  Tangent
information admits a spacing on the order of sqrt(delta); proximity-only
linking degrades at a spacing on the order of delta itself, so the two
log-log slopes separate cleanly.

Facing convex arcs are the right stress case: a concentric pair instead
shields the gap through the outer circle's forbidden zone alone, pushing
the tangent method's failure point far beyond the sqrt(delta) scale and
into saturation.

Bisection brackets start from spacings that are exact by construction (the
tangent start satisfies the proven reconstruction conditions; the baseline
start is below the gap, where both nearest neighbors are necessarily the
true ones), so only candidate spacings above the known-good floor are run.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.spatial import cKDTree

from .geom import TangentSample, UnorientedTangent, Vec2, ZoneParams
from .graph import polygonalize
from .spatial import quadtree_pair_source

INNER_RADIUS = 1.0
KAPPA_DECLARED = 1.05
SWEEP_JITTER = 0.25
EPS_CAP = 0.65
BISECT_STEPS = 12


def _circle_arrays(radius: float, cx: float, epsilon: float, rng: np.random.Generator):
    """Jittered arc-length sampling of one circle, vectorized."""
    total = 2.0 * math.pi * radius
    n = max(3, math.ceil(total * (1.0 + SWEEP_JITTER) / epsilon))
    h = total / n
    arcs = np.arange(n) * h + (rng.random(n) - 0.5) * SWEEP_JITTER * h
    arcs = np.sort((arcs + rng.random() * total) % total)
    theta = arcs / radius
    px = cx + radius * np.cos(theta)
    py = radius * np.sin(theta)
    tx = -np.sin(theta)
    ty = np.cos(theta)
    return px, py, tx, ty


def circle_pair(delta: float, epsilon: float, seed: int):
    """Sample both circles; returns coordinate arrays and truth edge keys."""
    rng = np.random.default_rng(seed)
    parts = [
        _circle_arrays(INNER_RADIUS, 0.0, epsilon, rng),
        _circle_arrays(INNER_RADIUS, 2.0 * INNER_RADIUS + delta, epsilon, rng),
    ]
    px = np.concatenate([p[0] for p in parts])
    py = np.concatenate([p[1] for p in parts])
    tx = np.concatenate([p[2] for p in parts])
    ty = np.concatenate([p[3] for p in parts])
    n_total = len(px)
    truth = []
    offset = 0
    for p in parts:
        n = len(p[0])
        ks = np.arange(n, dtype=np.int64)
        a = offset + ks
        b = offset + (ks + 1) % n
        truth.append(np.minimum(a, b) * n_total + np.maximum(a, b))
        offset += n
    truth_keys = np.sort(np.concatenate(truth))
    return px, py, tx, ty, truth_keys


def _edge_keys(edges, n_total: int) -> np.ndarray:
    keys = np.fromiter((i * n_total + j for i, j in edges), dtype=np.int64, count=len(edges))
    return np.sort(keys)


def tangent_exact(delta: float, epsilon: float, seed: int) -> bool:
    """Does the tangent-aware reconstruction recover the truth exactly?"""
    px, py, tx, ty, truth_keys = circle_pair(delta, epsilon, seed)
    samples = [
        TangentSample(Vec2(x, y), UnorientedTangent(Vec2(a, b)), k)
        for k, (x, y, a, b) in enumerate(zip(px.tolist(), py.tolist(), tx.tolist(), ty.tolist()))
    ]
    zp = ZoneParams(kappa_max=KAPPA_DECLARED, epsilon=epsilon)
    result = polygonalize(samples, zp, "noise_free", quadtree_pair_source())
    keys = _edge_keys(result.edges, len(samples))
    return len(keys) == len(truth_keys) and bool(np.array_equal(keys, truth_keys))


def baseline_exact(delta: float, epsilon: float, seed: int) -> bool:
    """Does two-nearest-neighbor linking recover the truth exactly?"""
    px, py, tx, ty, truth_keys = circle_pair(delta, epsilon, seed)
    n = len(px)
    pts = np.column_stack([px, py])
    _, idx = cKDTree(pts).query(pts, k=3)
    own = np.arange(n, dtype=np.int64)
    keys = []
    for col in (1, 2):
        nb = idx[:, col].astype(np.int64)
        keys.append(np.minimum(own, nb) * n + np.maximum(own, nb))
    keys = np.unique(np.concatenate(keys))
    return len(keys) == len(truth_keys) and bool(np.array_equal(keys, truth_keys))


def _all_trials_pass(check, delta: float, epsilon: float, trials: int, seed: int) -> bool:
    return all(check(delta, epsilon, seed + t) for t in range(trials))


def critical_epsilon(check, delta: float, start: float, trials: int, seed: int) -> float:
    """Largest epsilon passing all trials, by doubling then log bisection.

    ``start`` must be exact by construction; it is not re-run.
    """
    lo = start
    hi = None
    probe = min(2.0 * lo, EPS_CAP)
    while True:
        if _all_trials_pass(check, delta, probe, trials, seed):
            lo = probe
            if probe >= EPS_CAP:
                return EPS_CAP
            probe = min(2.0 * probe, EPS_CAP)
        else:
            hi = probe
            break
    for _ in range(BISECT_STEPS):
        mid = math.sqrt(lo * hi)
        if _all_trials_pass(check, delta, mid, trials, seed):
            lo = mid
        else:
            hi = mid
    return lo


@dataclass(frozen=True)
class SweepCell:
    delta: float
    eps_tangent: float
    eps_baseline: float


@dataclass(frozen=True)
class SweepResult:
    cells: tuple[SweepCell, ...]
    slope_tangent: float
    slope_baseline: float

    def to_dict(self) -> dict:
        return {
            "cells": [
                {
                    "delta": c.delta,
                    "eps_tangent": c.eps_tangent,
                    "eps_baseline": c.eps_baseline,
                }
                for c in self.cells
            ],
            "slope_tangent": self.slope_tangent,
            "slope_baseline": self.slope_baseline,
        }

    def to_csv(self) -> str:
        lines = ["delta,eps_tangent,eps_baseline"]
        for c in self.cells:
            lines.append(f"{c.delta!r},{c.eps_tangent!r},{c.eps_baseline!r}")
        return "\n".join(lines) + "\n"


def _fit_slope(deltas, values) -> float:
    lx = np.log10(np.asarray(deltas))
    ly = np.log10(np.asarray(values))
    return float(np.polyfit(lx, ly, 1)[0])


def phase_sweep(
    deltas=None,
    trials: int = 5,
    seed: int = 0,
) -> SweepResult:
    """Run the full separation-versus-spacing sweep."""
    if deltas is None:
        deltas = np.logspace(-4, -1, 8).tolist()
    cells = []
    for di, delta in enumerate(deltas):
        cell_seed = seed + 10_000 * (di + 1)
        start_t = 0.95 * math.sqrt(delta / (2.0 * KAPPA_DECLARED))
        eps_t = critical_epsilon(tangent_exact, delta, start_t, trials, cell_seed)
        start_b = 0.5 * delta
        eps_b = critical_epsilon(baseline_exact, delta, start_b, trials, cell_seed)
        cells.append(SweepCell(delta, eps_t, eps_b))
    slope_t = _fit_slope([c.delta for c in cells], [c.eps_tangent for c in cells])
    slope_b = _fit_slope([c.delta for c in cells], [c.eps_baseline for c in cells])
    return SweepResult(tuple(cells), slope_t, slope_b)
