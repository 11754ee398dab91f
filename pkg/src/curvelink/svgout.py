"""Deterministic SVG rendering of samples, tangents and graph edges.

Output is byte-stable for identical input: coordinates are formatted with a
fixed precision and elements are emitted in sorted order.  When a truth
graph is supplied, edges absent from it are drawn dashed red, truth edges
missing from the result dotted blue, and spurious samples as hollow dots.
"""

from __future__ import annotations

from typing import Optional, Sequence

from .geom import TangentSample
from .graph import PolyGraph
from .synth import SyntheticFigure

CANVAS = 800.0
MARGIN = 40.0


def _fmt(v: float) -> str:
    out = f"{v:.3f}"
    return "0.000" if out == "-0.000" else out


class _Mapper:
    def __init__(self, samples: Sequence[TangentSample]):
        if samples:
            xs = [s.pos.x for s in samples]
            ys = [s.pos.y for s in samples]
            x0, x1 = min(xs), max(xs)
            y0, y1 = min(ys), max(ys)
        else:
            x0 = y0 = 0.0
            x1 = y1 = 1.0
        span = max(x1 - x0, y1 - y0, 1e-12)
        self.scale = (CANVAS - 2.0 * MARGIN) / span
        self.x0 = x0
        self.y1 = y1

    def to_px(self, x: float, y: float) -> tuple[float, float]:
        # y flips: SVG grows downward
        return (
            MARGIN + (x - self.x0) * self.scale,
            MARGIN + (self.y1 - y) * self.scale,
        )


def render_svg(
    samples: Sequence[TangentSample],
    graph: Optional[PolyGraph] = None,
    figure: Optional[SyntheticFigure] = None,
    show_tangents: bool = False,
) -> str:
    """Render samples plus optional edges to an SVG document string."""
    m = _Mapper(samples)
    parts = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{CANVAS:.0f}" '
        f'height="{CANVAS:.0f}" viewBox="0 0 {CANVAS:.0f} {CANVAS:.0f}">',
        f'<rect width="{CANVAS:.0f}" height="{CANVAS:.0f}" fill="white"/>',
    ]

    truth_edges = figure.truth.edges if figure is not None else None
    result_edges = graph.edges if graph is not None else frozenset()

    def line(i: int, j: int, style: str) -> str:
        ax, ay = m.to_px(samples[i].pos.x, samples[i].pos.y)
        bx, by = m.to_px(samples[j].pos.x, samples[j].pos.y)
        return (
            f'<line x1="{_fmt(ax)}" y1="{_fmt(ay)}" x2="{_fmt(bx)}" '
            f'y2="{_fmt(by)}" {style}/>'
        )

    for i, j in sorted(result_edges):
        if truth_edges is not None and (i, j) not in truth_edges:
            style = 'stroke="#cc2222" stroke-width="1.5" stroke-dasharray="6 3"'
        else:
            style = 'stroke="#222222" stroke-width="1.5"'
        parts.append(line(i, j, style))

    if truth_edges is not None:
        for i, j in sorted(truth_edges - result_edges):
            parts.append(
                line(i, j, 'stroke="#2244cc" stroke-width="1.0" stroke-dasharray="2 3"')
            )

    if show_tangents:
        tick = 8.0
        for s in samples:
            cx, cy = m.to_px(s.pos.x, s.pos.y)
            dx = s.tangent.x * tick
            dy = -s.tangent.y * tick
            parts.append(
                f'<line x1="{_fmt(cx - dx)}" y1="{_fmt(cy - dy)}" '
                f'x2="{_fmt(cx + dx)}" y2="{_fmt(cy + dy)}" '
                'stroke="#88aa88" stroke-width="0.8"/>'
            )

    for k, s in enumerate(samples):
        cx, cy = m.to_px(s.pos.x, s.pos.y)
        spurious = figure is not None and figure.provenance[k].spurious
        if spurious:
            style = 'fill="none" stroke="#aa6622" stroke-width="1.0"'
        else:
            style = 'fill="#222222"'
        parts.append(f'<circle cx="{_fmt(cx)}" cy="{_fmt(cy)}" r="2.2" {style}/>')

    parts.append("</svg>")
    return "\n".join(parts) + "\n"
