"""curvelink: reconstruct planar curve families from points and tangents.

Given unordered samples (position plus unoriented unit tangent), rebuild the
graph joining samples adjacent along the same curve.  Supports exact data,
bounded position/tangent noise, spurious-point filtering, and a quadtree
fast path for near-linear graph construction.
"""

from .denoise import (
    DenoiseParams,
    almost_nearest_set,
    polygonalize_with_denoise,
    remove_leaves,
)
from .fileio import parse_samples, write_samples
from .geom import (
    TangentSample,
    UnorientedTangent,
    Vec2,
    ZoneParams,
    in_allowed_region,
    in_forbidden_zone,
    in_noisy_allowed_region,
    perp,
    tangential_distance,
)
from .graph import (
    DuplicatePointsError,
    PolyGraph,
    build_candidate_graph,
    nearest_tangential_neighbor,
    polygonalize,
    split_sides,
)
from .kernels import BACKEND as KERNEL_BACKEND
from .params import ReconstructionParams, ValidationError, validate
from .spatial import (
    DensityError,
    QuadTree,
    build_quadtree,
    fast_candidate_graph,
    quadtree_pair_source,
)
from .svgout import render_svg
from .sweep import phase_sweep
from .synth import (
    Circle,
    FigureSpec,
    Oval,
    Segment,
    SyntheticFigure,
    compare_to_truth,
    inject_noise,
    inject_spurious,
    sample_figure,
)

__version__ = "0.1.0"

__all__ = [
    "Circle",
    "DenoiseParams",
    "DensityError",
    "DuplicatePointsError",
    "FigureSpec",
    "KERNEL_BACKEND",
    "Oval",
    "PolyGraph",
    "QuadTree",
    "ReconstructionParams",
    "Segment",
    "SyntheticFigure",
    "TangentSample",
    "UnorientedTangent",
    "ValidationError",
    "Vec2",
    "ZoneParams",
    "almost_nearest_set",
    "build_candidate_graph",
    "build_quadtree",
    "compare_to_truth",
    "fast_candidate_graph",
    "in_allowed_region",
    "in_forbidden_zone",
    "in_noisy_allowed_region",
    "inject_noise",
    "inject_spurious",
    "nearest_tangential_neighbor",
    "parse_samples",
    "perp",
    "phase_sweep",
    "polygonalize",
    "polygonalize_with_denoise",
    "quadtree_pair_source",
    "remove_leaves",
    "render_svg",
    "sample_figure",
    "split_sides",
    "tangential_distance",
    "validate",
    "write_samples",
]
