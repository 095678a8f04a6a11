"""SVG output for diagrams and bare dual graphs."""

from __future__ import annotations

import json
from xml.sax.saxutils import escape

import networkx as nx
import numpy as np

from setmerge.curves import Diagram
from setmerge.dual import DualGraph
from setmerge.geometry import point_in_components, polygon_centroid
from setmerge.sets import label_string

PALETTE = (
    "#1f78b4", "#e31a1c", "#33a02c", "#ff7f00", "#6a3d9a", "#b15928",
    "#a6cee3", "#fb9a99", "#b2df8a", "#fdbf6f", "#cab2d6", "#d4b000",
)


def color_for(label: str, order: list[str]) -> str:
    return PALETTE[order.index(label) % len(PALETTE)]


def _fmt(v: float) -> str:
    s = f"{v:.2f}"
    return "0.00" if s == "-0.00" else s


class _Frame:
    """Maps drawing coordinates onto the canvas (y axis flipped)."""

    def __init__(self, points: np.ndarray, width: float, margin: float = 30.0):
        lo, hi = points.min(axis=0), points.max(axis=0)
        span = np.maximum(hi - lo, 1e-9)
        self.scale = (width - 2 * margin) / span.max()
        self.lo, self.hi, self.margin = lo, hi, margin
        self.width = width
        self.height = span[1] * self.scale + 2 * margin

    def __call__(self, p) -> tuple[str, str]:
        x = (p[0] - self.lo[0]) * self.scale + self.margin
        y = (self.hi[1] - p[1]) * self.scale + self.margin
        return _fmt(x), _fmt(y)


def _header(width: float, height: float) -> list[str]:
    return [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{_fmt(width)}" height="{_fmt(height)}" '
        f'viewBox="0 0 {_fmt(width)} {_fmt(height)}" font-family="sans-serif">',
        f'<rect x="0" y="0" width="{_fmt(width)}" height="{_fmt(height)}" fill="white"/>',
    ]


def _legend(lines: list[tuple[str, str]], x: float, y: float) -> list[str]:
    out = ['<g id="legend" font-size="12">']
    for k, (color, text) in enumerate(lines):
        yy = y + 18 * k
        out.append(f'<rect x="{_fmt(x)}" y="{_fmt(yy - 10)}" width="12" height="12" fill="{color}"/>')
        out.append(f'<text x="{_fmt(x + 18)}" y="{_fmt(yy)}">{escape(text)}</text>')
    out.append("</g>")
    return out


def provenance_text(graph: DualGraph, label: str, titles: dict[str, str] | None = None) -> str:
    members = sorted(graph.provenance.get(label, frozenset({label})))
    names = [titles.get(m, m) for m in members] if titles else members
    return f"{label}: " + "; ".join(names)


def _label_anchor(diagram: Diagram, s: str, samples: int = 40) -> np.ndarray:
    """Interior point of curve ``s`` farthest from its boundary, on a sample grid."""
    comps = diagram.curves[s].components
    pts = np.vstack(comps)
    lo, hi = pts.min(axis=0), pts.max(axis=0)
    best, best_d = None, -1.0
    boundary = np.vstack([np.linspace(p, q, 4, endpoint=False) for P in comps
                          for p, q in zip(P, np.roll(P, -1, axis=0))])
    for gx in np.linspace(lo[0], hi[0], samples):
        for gy in np.linspace(lo[1], hi[1], samples):
            q = np.array([gx, gy])
            if not point_in_components(q, comps):
                continue
            d = float(np.linalg.norm(boundary - q, axis=1).min())
            if d > best_d:
                best, best_d = q, d
    return best if best is not None else polygon_centroid(max(comps, key=len))


def emit_svg(diagram: Diagram, titles: dict[str, str] | None = None, show_dual: bool = False,
             width: float = 800.0) -> str:
    """Euler diagram as an SVG document; identical input gives identical bytes."""
    graph, layout = diagram.graph, diagram.layout
    order = graph.active_labels
    pts = [layout.positions[z] for z in graph.sorted_zone_ids()]
    for c in diagram.curves.values():
        pts.extend(c.points())
    frame = _Frame(np.array(pts), width)
    legend_lines = [(color_for(s, order), provenance_text(graph, s, titles)) for s in order]
    height = frame.height + 18 * len(legend_lines) + 20
    out = _header(width, height)

    if show_dual:
        out.append('<g id="dual" stroke="#999999" stroke-width="1">')
        for a, b in graph.sorted_edges():
            (x1, y1), (x2, y2) = frame(layout.positions[a]), frame(layout.positions[b])
            out.append(f'<line x1="{x1}" y1="{y1}" x2="{x2}" y2="{y2}"/>')
        out.append("</g>")

    out.append('<g id="curves">')
    for s in order:
        color = color_for(s, order)
        d = []
        for comp in diagram.curves[s].components:
            coords = [frame(p) for p in comp]
            d.append("M " + " L ".join(f"{x} {y}" for x, y in coords) + " Z")
        out.append(
            f'<path id="curve-{escape(s)}" class="curve" d="{" ".join(d)}" fill="{color}" '
            f'fill-opacity="0.12" fill-rule="evenodd" stroke="{color}" stroke-width="2"/>'
        )
    out.append("</g>")

    out.append('<g id="labels" font-size="16" font-weight="bold" text-anchor="middle">')
    for s in order:
        x, y = frame(_label_anchor(diagram, s))
        out.append(f'<text x="{x}" y="{y}" fill="{color_for(s, order)}">{escape(s)}</text>')
    out.append("</g>")

    if show_dual:
        out.append('<g id="zones" font-size="10" text-anchor="middle">')
        for z in graph.sorted_zone_ids():
            x, y = frame(layout.positions[z])
            name = label_string(graph.label(z)) or "∅"
            out.append(f'<circle cx="{x}" cy="{y}" r="3" fill="#444444"/>')
            out.append(f'<text x="{x}" y="{_fmt(float(y) - 6)}">{escape(name)}</text>')
        out.append("</g>")

    out.extend(_legend(legend_lines, 20.0, frame.height + 20))
    out.append("</svg>")
    return "\n".join(out) + "\n"


def emit_dual_svg(graph: DualGraph, seed: int = 0, titles: dict[str, str] | None = None,
                  width: float = 800.0) -> str:
    """Drawing of a dual graph alone, used for stages that cannot be embedded."""
    g = graph.to_networkx()
    pos = nx.spring_layout(g, seed=seed)
    ids = graph.sorted_zone_ids()
    frame = _Frame(np.array([pos[z] for z in ids]), width)
    order = graph.active_labels
    legend_lines = [("#444444", provenance_text(graph, s, titles)) for s in order]
    out = _header(width, frame.height + 18 * len(legend_lines) + 20)
    out.append('<g id="dual" stroke="#999999" stroke-width="1">')
    for a, b in graph.sorted_edges():
        (x1, y1), (x2, y2) = frame(pos[a]), frame(pos[b])
        out.append(f'<line x1="{x1}" y1="{y1}" x2="{x2}" y2="{y2}"/>')
    out.append("</g>")
    out.append('<g id="zones" font-size="11" text-anchor="middle">')
    for z in ids:
        x, y = frame(pos[z])
        name = label_string(graph.label(z)) or "∅"
        out.append(f'<circle cx="{x}" cy="{y}" r="4" fill="#444444"/>')
        out.append(f'<text x="{x}" y="{_fmt(float(y) - 7)}">{escape(name)}</text>')
    out.append("</g>")
    out.extend(_legend(legend_lines, 20.0, frame.height + 20))
    out.append("</svg>")
    return "\n".join(out) + "\n"


def diagram_coordinates(diagram: Diagram) -> dict:
    """Plain coordinates of zones and curves, for tests and other tools."""
    g, lay = diagram.graph, diagram.layout
    return {
        "zones": [{"label": sorted(g.label(z)), "x": float(lay.positions[z][0]), "y": float(lay.positions[z][1])}
                  for z in g.sorted_zone_ids()],
        "edges": [{"a": sorted(g.label(a)), "b": sorted(g.label(b))} for a, b in g.sorted_edges()],
        "curves": {s: [[[float(x), float(y)] for x, y in comp] for comp in diagram.curves[s].components]
                   for s in diagram.labels()},
    }


def coordinates_json(diagram: Diagram) -> str:
    return json.dumps(diagram_coordinates(diagram), indent=2, sort_keys=True)
