"""File formats: sample tables, figure descriptions, graphs, reports.

Samples travel as CSV rows ``x,y,tx,ty`` (header optional) or as a JSON
mirror carrying an optional params block.  Tangents are normalized and
sign-canonicalized on read, and row order defines the sample ids, so parsing
a written file reproduces the in-memory samples exactly.  All JSON output is
written with sorted keys and repr-roundtrip floats, which makes identical
inputs produce byte-identical files.
"""

from __future__ import annotations

import json
import math
from typing import Optional, Sequence

from .geom import TangentSample, UnorientedTangent, Vec2
from .graph import PolyGraph
from .synth import (
    Circle,
    FigureSpec,
    Oval,
    Provenance,
    Segment,
    SyntheticFigure,
)

CSV_HEADER = "x,y,tx,ty"


class FormatError(ValueError):
    """Malformed input file; message carries the offending location."""


def _parse_float(token: str, what: str, where: str) -> float:
    try:
        value = float(token)
    except ValueError:
        raise FormatError(f"{where}: {what} is not a number: {token!r}") from None
    if not math.isfinite(value):
        raise FormatError(f"{where}: {what} must be finite, got {token!r}")
    return value


def _make_sample(x: float, y: float, tx: float, ty: float, idx: int, where: str) -> TangentSample:
    if tx == 0.0 and ty == 0.0:
        raise FormatError(f"{where}: zero tangent vector")
    return TangentSample(Vec2(x, y), UnorientedTangent(Vec2(tx, ty)), idx)


def _looks_like_header(parts: list[str]) -> bool:
    for p in parts:
        try:
            float(p)
        except ValueError:
            return True
    return False


def parse_samples_csv(text: str, origin: str = "<csv>") -> list[TangentSample]:
    samples: list[TangentSample] = []
    first_row = True
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        where = f"{origin}:{lineno}"
        parts = [p.strip() for p in line.split(",")]
        if first_row:
            first_row = False
            if _looks_like_header(parts):
                continue
        if len(parts) != 4:
            raise FormatError(f"{where}: expected 4 fields (x,y,tx,ty), got {len(parts)}")
        x = _parse_float(parts[0], "x", where)
        y = _parse_float(parts[1], "y", where)
        tx = _parse_float(parts[2], "tx", where)
        ty = _parse_float(parts[3], "ty", where)
        samples.append(_make_sample(x, y, tx, ty, len(samples), where))
    return samples


def parse_samples_json(text: str, origin: str = "<json>") -> tuple[list[TangentSample], dict]:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(f"{origin}: invalid JSON: {exc}") from None
    if not isinstance(doc, dict) or "samples" not in doc:
        raise FormatError(f"{origin}: expected an object with a 'samples' array")
    params = doc.get("params", {})
    samples: list[TangentSample] = []
    for k, row in enumerate(doc["samples"]):
        where = f"{origin}:samples[{k}]"
        try:
            x, y, tx, ty = (float(row[f]) for f in ("x", "y", "tx", "ty"))
        except (KeyError, TypeError, ValueError) as exc:
            raise FormatError(f"{where}: {exc}") from None
        if not all(map(math.isfinite, (x, y, tx, ty))):
            raise FormatError(f"{where}: non-finite value")
        samples.append(_make_sample(x, y, tx, ty, k, where))
    return samples, params


def read_samples_file(path: str, fmt: str = "csv") -> tuple[list[TangentSample], dict]:
    """Read samples plus any params block; returns (samples, params)."""
    with open(path, "r", encoding="utf-8") as fh:
        text = fh.read()
    if fmt == "csv":
        return parse_samples_csv(text, origin=path), {}
    if fmt == "json":
        return parse_samples_json(text, origin=path)
    raise ValueError(f"unknown sample format {fmt!r}")


def parse_samples(path: str, fmt: str = "csv") -> list[TangentSample]:
    """Read samples from ``path`` (csv or json); row order defines ids."""
    return read_samples_file(path, fmt)[0]


def samples_to_csv(samples: Sequence[TangentSample]) -> str:
    lines = [CSV_HEADER]
    for s in samples:
        lines.append(f"{s.pos.x!r},{s.pos.y!r},{s.tangent.x!r},{s.tangent.y!r}")
    return "\n".join(lines) + "\n"


def samples_to_json(samples: Sequence[TangentSample], params: Optional[dict] = None) -> str:
    doc = {
        "params": params or {},
        "samples": [
            {"x": s.pos.x, "y": s.pos.y, "tx": s.tangent.x, "ty": s.tangent.y}
            for s in samples
        ],
    }
    return json.dumps(doc, sort_keys=True, indent=2) + "\n"


def write_samples(path: str, samples: Sequence[TangentSample], fmt: str = "csv",
                  params: Optional[dict] = None) -> None:
    text = samples_to_csv(samples) if fmt == "csv" else samples_to_json(samples, params)
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(text)


# -- graph json ---------------------------------------------------------------


def graph_to_json(graph: PolyGraph, samples: Sequence[TangentSample]) -> str:
    doc = {
        "vertices": [
            {"id": s.id, "x": s.pos.x, "y": s.pos.y, "tx": s.tangent.x, "ty": s.tangent.y}
            for s in samples
        ],
        "edges": [list(e) for e in graph.sorted_edges()],
    }
    return json.dumps(doc, sort_keys=True, indent=2) + "\n"


def parse_graph_json(text: str, origin: str = "<graph>") -> tuple[PolyGraph, list[TangentSample]]:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(f"{origin}: invalid JSON: {exc}") from None
    verts = doc.get("vertices")
    edges = doc.get("edges")
    if verts is None or edges is None:
        raise FormatError(f"{origin}: expected 'vertices' and 'edges'")
    samples = [
        _make_sample(v["x"], v["y"], v["tx"], v["ty"], k, f"{origin}:vertices[{k}]")
        for k, v in enumerate(verts)
    ]
    graph = PolyGraph.from_edges(len(samples), [tuple(e) for e in edges])
    return graph, samples


# -- figure spec / figure json ------------------------------------------------

_CURVE_KINDS = {"circle", "segment", "oval"}


def _curve_from_dict(d: dict, where: str):
    kind = d.get("kind")
    if kind == "circle":
        return Circle(center=tuple(d["center"]), radius=float(d["radius"]))
    if kind == "segment":
        return Segment(a=tuple(d["a"]), b=tuple(d["b"]))
    if kind == "oval":
        return Oval(center=tuple(d["center"]), width=float(d["width"]),
                    height=float(d["height"]))
    raise FormatError(f"{where}: curve kind must be one of {sorted(_CURVE_KINDS)}")


def _curve_to_dict(c) -> dict:
    if isinstance(c, Circle):
        return {"kind": "circle", "center": list(c.center), "radius": c.radius}
    if isinstance(c, Segment):
        return {"kind": "segment", "a": list(c.a), "b": list(c.b)}
    if isinstance(c, Oval):
        return {"kind": "oval", "center": list(c.center), "width": c.width,
                "height": c.height}
    raise TypeError(f"unknown curve type {type(c)!r}")


def parse_figure_spec(text: str, origin: str = "<figspec>") -> FigureSpec:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(f"{origin}: invalid JSON: {exc}") from None
    try:
        curves = tuple(
            _curve_from_dict(c, f"{origin}:curves[{k}]")
            for k, c in enumerate(doc["curves"])
        )
        return FigureSpec(
            curves=curves,
            kappa_max=float(doc["kappa_max"]),
            delta=float(doc["delta"]),
            zeta=float(doc.get("zeta", 0.0)),
            xi=float(doc.get("xi", 0.0)),
        )
    except (KeyError, TypeError, ValueError) as exc:
        if isinstance(exc, FormatError):
            raise
        raise FormatError(f"{origin}: {exc}") from None


def figure_to_json(fig: SyntheticFigure) -> str:
    doc = {
        "epsilon": fig.epsilon,
        "seed": fig.seed,
        "declared": {
            "kappa_max": fig.spec.kappa_max,
            "delta": fig.spec.delta,
            "zeta": fig.spec.zeta,
            "xi": fig.spec.xi,
        },
        "curves": [_curve_to_dict(c) for c in fig.spec.curves],
        "measured": {
            "kappa_max": fig.kappa_max_actual,
            "min_separation": fig.min_separation_actual,
            "resolution": fig.measurement_resolution,
            "max_arc_gap": fig.max_arc_gap,
        },
        "samples": [
            {"x": s.pos.x, "y": s.pos.y, "tx": s.tangent.x, "ty": s.tangent.y}
            for s in fig.samples
        ],
        "provenance": [
            None if p.spurious else {"curve": p.curve, "arc": p.arc}
            for p in fig.provenance
        ],
        "truth_edges": [list(e) for e in fig.truth.sorted_edges()],
    }
    return json.dumps(doc, sort_keys=True, indent=2) + "\n"


def parse_figure_json(text: str, origin: str = "<figure>") -> SyntheticFigure:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(f"{origin}: invalid JSON: {exc}") from None
    try:
        curves = tuple(
            _curve_from_dict(c, f"{origin}:curves[{k}]")
            for k, c in enumerate(doc["curves"])
        )
        spec = FigureSpec(
            curves=curves,
            kappa_max=float(doc["declared"]["kappa_max"]),
            delta=float(doc["declared"]["delta"]),
            zeta=float(doc["declared"].get("zeta", 0.0)),
            xi=float(doc["declared"].get("xi", 0.0)),
        )
        samples = []
        for k, row in enumerate(doc["samples"]):
            samples.append(
                _make_sample(
                    float(row["x"]), float(row["y"]),
                    float(row["tx"]), float(row["ty"]),
                    k, f"{origin}:samples[{k}]",
                )
            )
        provenance = tuple(
            Provenance(None) if p is None else Provenance(int(p["curve"]), float(p["arc"]))
            for p in doc["provenance"]
        )
        truth = PolyGraph.from_edges(
            len(samples), [tuple(e) for e in doc["truth_edges"]]
        )
        measured = doc["measured"]
        return SyntheticFigure(
            spec=spec,
            epsilon=float(doc["epsilon"]),
            seed=int(doc["seed"]),
            samples=tuple(samples),
            provenance=provenance,
            truth=truth,
            kappa_max_actual=float(measured["kappa_max"]),
            min_separation_actual=float(measured["min_separation"]),
            measurement_resolution=float(measured["resolution"]),
            max_arc_gap=float(measured["max_arc_gap"]),
        )
    except (KeyError, TypeError, ValueError) as exc:
        if isinstance(exc, FormatError):
            raise
        raise FormatError(f"{origin}: {exc}") from None


def write_text(path: str, text: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(text)


def report_to_json(report: dict) -> str:
    return json.dumps(report, sort_keys=True, indent=2) + "\n"
