"""Synthetic figures with ground truth.

A figure is a small family of analytically tractable closed or open curves
(circles, line segments, stadium-shaped ovals).  Sampling walks each curve
by arc length with seeded jitter, records exact unit tangents, and emits the
true adjacency graph alongside the samples, so reconstruction output can be
checked edge-for-edge.  Declared curvature and separation bounds are
re-measured numerically from the descriptors at generation time instead of
being trusted.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from typing import Optional, Sequence, Union

import numpy as np

from .geom import TangentSample, UnorientedTangent, Vec2
from .graph import PolyGraph

TAU = 2.0 * math.pi


# -- curve descriptors --------------------------------------------------------
#
# Each descriptor is parameterized by arc length s in [0, length()] and
# reports position and unit tangent at s.  closed controls wraparound
# adjacency in the truth graph.


@dataclass(frozen=True)
class Circle:
    center: tuple[float, float]
    radius: float
    closed: bool = True

    def __post_init__(self):
        if self.radius <= 0.0:
            raise ValueError("circle requires positive radius")

    def length(self) -> float:
        return TAU * self.radius

    def point(self, s: float) -> tuple[float, float]:
        a = s / self.radius
        return (
            self.center[0] + self.radius * math.cos(a),
            self.center[1] + self.radius * math.sin(a),
        )

    def tangent(self, s: float) -> tuple[float, float]:
        a = s / self.radius
        return (-math.sin(a), math.cos(a))


@dataclass(frozen=True)
class Segment:
    a: tuple[float, float]
    b: tuple[float, float]
    closed: bool = False

    def __post_init__(self):
        if self.a == self.b:
            raise ValueError("segment endpoints must differ")

    def length(self) -> float:
        return math.hypot(self.b[0] - self.a[0], self.b[1] - self.a[1])

    def _dir(self) -> tuple[float, float]:
        n = self.length()
        return ((self.b[0] - self.a[0]) / n, (self.b[1] - self.a[1]) / n)

    def point(self, s: float) -> tuple[float, float]:
        ux, uy = self._dir()
        return (self.a[0] + ux * s, self.a[1] + uy * s)

    def tangent(self, s: float) -> tuple[float, float]:
        return self._dir()


@dataclass(frozen=True)
class Oval:
    """Stadium curve: a rectangle of the given width/height with semicircular
    caps.  width is the full extent along x, height the full extent along y;
    requires width >= height.  Curvature is 2/height on the caps."""

    center: tuple[float, float]
    width: float
    height: float
    closed: bool = True

    def __post_init__(self):
        if self.width < self.height:
            raise ValueError("oval requires width >= height")
        if self.height <= 0.0:
            raise ValueError("oval requires positive height")

    def _radius(self) -> float:
        return self.height / 2.0

    def _straight(self) -> float:
        return self.width - self.height

    def length(self) -> float:
        return 2.0 * self._straight() + TAU * self._radius()

    def point(self, s: float) -> tuple[float, float]:
        r = self._radius()
        a = self._straight()
        cx, cy = self.center
        s = s % self.length()
        if s < a:  # bottom side, heading +x
            return (cx - a / 2.0 + s, cy - r)
        s -= a
        if s < math.pi * r:  # right cap
            th = -math.pi / 2.0 + s / r
            return (cx + a / 2.0 + r * math.cos(th), cy + r * math.sin(th))
        s -= math.pi * r
        if s < a:  # top side, heading -x
            return (cx + a / 2.0 - s, cy + r)
        s -= a
        th = math.pi / 2.0 + s / r  # left cap
        return (cx - a / 2.0 + r * math.cos(th), cy + r * math.sin(th))

    def tangent(self, s: float) -> tuple[float, float]:
        r = self._radius()
        a = self._straight()
        s = s % self.length()
        if s < a:
            return (1.0, 0.0)
        s -= a
        if s < math.pi * r:
            th = -math.pi / 2.0 + s / r
            return (-math.sin(th), math.cos(th))
        s -= math.pi * r
        if s < a:
            return (-1.0, 0.0)
        s -= a
        th = math.pi / 2.0 + s / r
        return (-math.sin(th), math.cos(th))


Curve = Union[Circle, Segment, Oval]


@dataclass(frozen=True)
class FigureSpec:
    """Declared figure: curves plus the bounds the generator must verify.

    kappa_max bounds the curvature of every curve; delta bounds both the
    distance between distinct curves and between far-apart stretches of the
    same curve.  zeta/xi declare the noise the samples will carry, which
    tightens the minimum spacing the sampler must respect.
    """

    curves: tuple[Curve, ...]
    kappa_max: float
    delta: float
    zeta: float = 0.0
    xi: float = 0.0

    def __post_init__(self):
        if not self.curves:
            raise ValueError("figure needs at least one curve")
        if self.kappa_max <= 0.0:
            raise ValueError("kappa_max must be positive")
        if self.delta <= 0.0:
            raise ValueError("delta must be positive")


@dataclass(frozen=True)
class Provenance:
    """Where a sample came from: its curve and arc position, or spurious."""

    curve: Optional[int]
    arc: float = 0.0

    @property
    def spurious(self) -> bool:
        return self.curve is None


@dataclass(frozen=True)
class SyntheticFigure:
    spec: FigureSpec
    epsilon: float
    seed: int
    samples: tuple[TangentSample, ...]
    provenance: tuple[Provenance, ...]
    truth: PolyGraph
    kappa_max_actual: float
    min_separation_actual: float
    measurement_resolution: float
    max_arc_gap: float

    def curve_of(self, i: int) -> Optional[int]:
        return self.provenance[i].curve

    def true_count(self) -> int:
        return sum(1 for p in self.provenance if not p.spurious)

    def bounding_box(self, pad: float = 0.0) -> tuple[float, float, float, float]:
        xs = [s.pos.x for s in self.samples]
        ys = [s.pos.y for s in self.samples]
        return (min(xs) - pad, min(ys) - pad, max(xs) + pad, max(ys) + pad)


class FigureSpecError(ValueError):
    """The declared curvature or separation bound fails verification."""


# -- numeric verification -----------------------------------------------------


def _dense_arcs(curve: Curve, resolution: float) -> np.ndarray:
    n = max(64, int(math.ceil(curve.length() / resolution)))
    if curve.closed:
        return np.linspace(0.0, curve.length(), n, endpoint=False)
    return np.linspace(0.0, curve.length(), n + 1)


def _points_at(curve: Curve, arcs: np.ndarray) -> np.ndarray:
    pts = np.empty((len(arcs), 2))
    for k, s in enumerate(arcs.tolist()):
        pts[k] = curve.point(s)
    return pts


def measure_curvature(curve: Curve, resolution: float) -> float:
    """Max curvature from central differences on the arc-length chart."""
    h = max(resolution / 8.0, curve.length() * 1e-7)
    arcs = _dense_arcs(curve, resolution)
    if not curve.closed:
        arcs = arcs[(arcs >= h) & (arcs <= curve.length() - h)]
    worst = 0.0
    for s in arcs.tolist():
        x0, y0 = curve.point(s - h)
        x1, y1 = curve.point(s)
        x2, y2 = curve.point(s + h)
        dx = (x2 - x0) / (2.0 * h)
        dy = (y2 - y0) / (2.0 * h)
        ddx = (x2 - 2.0 * x1 + x0) / (h * h)
        ddy = (y2 - 2.0 * y1 + y0) / (h * h)
        speed_sq = dx * dx + dy * dy
        if speed_sq == 0.0:
            continue
        kappa = abs(dx * ddy - dy * ddx) / speed_sq ** 1.5
        worst = max(worst, kappa)
    return worst


def _circular_arc_distance(a: float, b: float, total: float) -> float:
    d = abs(a - b) % total
    return min(d, total - d)


def measure_min_separation(
    curves: Sequence[Curve], kappa_max: float, resolution: float
) -> float:
    """Smallest distance between distinct curves, and between points of the
    same curve separated by more than a quarter turn of arc."""
    arcs = [_dense_arcs(c, resolution) for c in curves]
    pts = [_points_at(c, a) for c, a in zip(curves, arcs)]
    best = math.inf
    far = (math.pi / 2.0) / kappa_max
    for ci in range(len(curves)):
        for cj in range(ci, len(curves)):
            pi = pts[ci]
            pj = pts[cj]
            d2 = (
                (pi[:, 0:1] - pj[:, 0].reshape(1, -1)) ** 2
                + (pi[:, 1:2] - pj[:, 1].reshape(1, -1)) ** 2
            )
            if ci == cj:
                curve = curves[ci]
                ai = arcs[ci]
                if curve.closed:
                    gap = np.abs(ai.reshape(-1, 1) - ai.reshape(1, -1))
                    gap = np.minimum(gap, curve.length() - gap)
                else:
                    gap = np.abs(ai.reshape(-1, 1) - ai.reshape(1, -1))
                d2 = np.where(gap > far, d2, np.inf)
            if d2.size:
                best = min(best, float(np.sqrt(d2.min())))
    return best


def verify_figure_spec(spec: FigureSpec, resolution: Optional[float] = None) -> tuple[float, float, float]:
    """Measure curvature and separation; raise when a declared bound fails.

    Returns (kappa_measured, separation_measured, resolution).  Measurement
    uses a dense arc sweep; curvature is allowed a 0.5% numerical margin.
    """
    if resolution is None:
        resolution = min(c.length() for c in spec.curves) / 512.0
    kappa = max(measure_curvature(c, resolution) for c in spec.curves)
    if kappa > spec.kappa_max * 1.005:
        raise FigureSpecError(
            f"measured curvature {kappa:.6g} exceeds declared kappa_max "
            f"{spec.kappa_max:.6g}"
        )
    sep = measure_min_separation(spec.curves, spec.kappa_max, resolution)
    if sep < spec.delta * (1.0 - 1e-3) - 2.0 * resolution:
        raise FigureSpecError(
            f"measured separation {sep:.6g} below declared delta {spec.delta:.6g}"
        )
    return kappa, sep, resolution


# -- sampling -----------------------------------------------------------------


def min_spacing_required(zeta: float, xi: float, epsilon: float) -> float:
    """Spacing floor for noisy data: adjacent samples must stay farther apart
    than (1 + 2*sqrt(2)) * (2*xi*epsilon + zeta) or noise can reorder them."""
    return (1.0 + 2.0 ** 1.5) * (2.0 * xi * epsilon + zeta)


def _jittered_arcs(
    curve: Curve, epsilon: float, jitter: float, rng: np.random.Generator
) -> np.ndarray:
    """Arc positions with consecutive gaps in [h*(1-jitter), h*(1+jitter)],
    where h is chosen so the largest possible gap stays at or below epsilon."""
    total = curve.length()
    if curve.closed:
        n = max(3, math.ceil(total * (1.0 + jitter) / epsilon))
        h = total / n
        base = np.arange(n) * h
        offsets = (rng.random(n) - 0.5) * jitter * h
        phase = rng.random() * total
        return np.sort((base + offsets + phase) % total)
    n = max(1, math.ceil(total * (1.0 + jitter) / epsilon))
    h = total / n
    inner = np.arange(1, n) * h + (rng.random(n - 1) - 0.5) * jitter * h
    return np.concatenate([[0.0], inner, [total]])


def sample_figure(
    spec: FigureSpec,
    epsilon: float,
    seed: int,
    jitter: float = 0.3,
) -> SyntheticFigure:
    """Arc-length sample every curve at spacing <= epsilon with exact tangents.

    Verifies the declared bounds first, emits the ground-truth adjacency, and
    certifies both the epsilon spacing and (when noise is declared) the
    minimum-spacing floor.
    """
    if epsilon <= 0.0:
        raise ValueError("epsilon must be positive")
    if not 0.0 <= jitter < 1.0:
        raise ValueError("jitter must be in [0, 1)")
    kappa, sep, resolution = verify_figure_spec(spec)
    rng = np.random.default_rng(seed)
    samples: list[TangentSample] = []
    provenance: list[Provenance] = []
    edges: list[tuple[int, int]] = []
    max_gap = 0.0
    floor = min_spacing_required(spec.zeta, spec.xi, epsilon)
    for ci, curve in enumerate(spec.curves):
        arcs = _jittered_arcs(curve, epsilon, jitter, rng)
        start = len(samples)
        for s in arcs.tolist():
            x, y = curve.point(s)
            txv, tyv = curve.tangent(s)
            samples.append(
                TangentSample(Vec2(x, y), UnorientedTangent(Vec2(txv, tyv)), len(samples))
            )
            provenance.append(Provenance(ci, s))
        count = len(arcs)
        gaps = np.diff(arcs)
        if curve.closed:
            gaps = np.concatenate([gaps, [curve.length() - arcs[-1] + arcs[0]]])
            curve_edges = [(start + k, start + (k + 1) % count) for k in range(count)]
        else:
            curve_edges = [(start + k, start + k + 1) for k in range(count - 1)]
        edges.extend(curve_edges)
        max_gap = max(max_gap, float(gaps.max()))
        if max_gap > epsilon + 1e-12:
            raise AssertionError("internal: sampling exceeded the epsilon gap bound")
        if floor > 0.0 and curve_edges:
            chord_min = min(
                math.hypot(
                    samples[b].pos.x - samples[a].pos.x,
                    samples[b].pos.y - samples[a].pos.y,
                )
                for a, b in curve_edges
            )
            if chord_min <= floor:
                raise FigureSpecError(
                    f"adjacent samples as close as {chord_min:.6g} violate the "
                    f"noisy spacing floor {floor:.6g}; lower jitter or noise"
                )
    truth = PolyGraph.from_edges(len(samples), edges)
    return SyntheticFigure(
        spec=spec,
        epsilon=epsilon,
        seed=seed,
        samples=tuple(samples),
        provenance=tuple(provenance),
        truth=truth,
        kappa_max_actual=kappa,
        min_separation_actual=sep,
        measurement_resolution=resolution,
        max_arc_gap=max_gap,
    )


# -- perturbations ------------------------------------------------------------


def inject_noise(fig: SyntheticFigure, zeta: float, xi: float, seed: int) -> SyntheticFigure:
    """Displace positions by up to zeta and rotate tangents by up to xi.

    Both perturbations are uniform and seeded; the truth graph is unchanged
    because the noisy reconstruction target is the clean adjacency.
    """
    if zeta < 0.0 or xi < 0.0:
        raise ValueError("zeta and xi must be nonnegative")
    if zeta == 0.0 and xi == 0.0:
        return fig
    rng = np.random.default_rng(seed)
    noisy: list[TangentSample] = []
    for s in fig.samples:
        r = zeta * math.sqrt(rng.random())
        a = rng.random() * TAU
        x = s.pos.x + r * math.cos(a)
        y = s.pos.y + r * math.sin(a)
        rot = (rng.random() * 2.0 - 1.0) * xi
        c, sn = math.cos(rot), math.sin(rot)
        txv = s.tangent.x * c - s.tangent.y * sn
        tyv = s.tangent.x * sn + s.tangent.y * c
        noisy.append(TangentSample(Vec2(x, y), UnorientedTangent(Vec2(txv, tyv)), s.id))
    return replace(fig, samples=tuple(noisy))


def inject_spurious(
    fig: SyntheticFigure,
    count: int,
    bbox: tuple[float, float, float, float],
    seed: int,
) -> SyntheticFigure:
    """Append ``count`` uniform random samples with uniform random tangents.

    Tangent angles are drawn from [0, pi) since direction sign carries no
    information.  Truth edges are unchanged; the new vertices are isolated
    in the truth graph and marked spurious in the provenance.
    """
    if count < 0:
        raise ValueError("count must be nonnegative")
    if count == 0:
        return fig
    x0, y0, x1, y1 = bbox
    rng = np.random.default_rng(seed)
    samples = list(fig.samples)
    provenance = list(fig.provenance)
    for _ in range(count):
        x = x0 + rng.random() * (x1 - x0)
        y = y0 + rng.random() * (y1 - y0)
        a = rng.random() * math.pi
        samples.append(
            TangentSample(
                Vec2(x, y),
                UnorientedTangent(Vec2(math.cos(a), math.sin(a))),
                len(samples),
            )
        )
        provenance.append(Provenance(None))
    truth = PolyGraph(len(samples), fig.truth.edges)
    return replace(
        fig,
        samples=tuple(samples),
        provenance=tuple(provenance),
        truth=truth,
    )


# -- oracle comparison --------------------------------------------------------


@dataclass(frozen=True)
class TruthDiff:
    missing: tuple[tuple[int, int], ...]
    extra: tuple[tuple[int, int], ...]
    per_curve: dict[int, tuple[int, int]]  # curve -> (recovered, total)
    cross_curve_edges: int
    spurious_edges: int

    @property
    def exact(self) -> bool:
        return not self.missing and not self.extra

    def to_dict(self) -> dict:
        return {
            "exact": self.exact,
            "missing_edges": [list(e) for e in self.missing],
            "extra_edges": [list(e) for e in self.extra],
            "per_curve_recovered": {
                str(c): {"recovered": r, "total": t}
                for c, (r, t) in sorted(self.per_curve.items())
            },
            "cross_curve_edge_count": self.cross_curve_edges,
            "spurious_edge_count": self.spurious_edges,
        }


def compare_to_truth(result: PolyGraph, fig: SyntheticFigure) -> TruthDiff:
    """Exact edge-set diff against the figure's ground truth."""
    if result.vertex_count != fig.truth.vertex_count:
        raise ValueError(
            f"graph has {result.vertex_count} vertices, figure has "
            f"{fig.truth.vertex_count}"
        )
    missing = tuple(sorted(fig.truth.edges - result.edges))
    extra = tuple(sorted(result.edges - fig.truth.edges))
    per_curve: dict[int, list[int]] = {}
    for i, j in fig.truth.edges:
        c = fig.curve_of(i)
        per_curve.setdefault(c, [0, 0])[1] += 1
        if (i, j) in result.edges:
            per_curve[c][0] += 1
    cross = 0
    spurious = 0
    for i, j in result.edges:
        ci = fig.curve_of(i)
        cj = fig.curve_of(j)
        if ci is None or cj is None:
            spurious += 1
        elif ci != cj:
            cross += 1
    return TruthDiff(
        missing=missing,
        extra=extra,
        per_curve={c: (r, t) for c, (r, t) in per_curve.items()},
        cross_curve_edges=cross,
        spurious_edges=spurious,
    )
