"""Curve routing over a laid-out dual graph and constrained smoothing.

Each face of the drawing gets a hub point.  A curve crosses every dual edge
whose label contains it exactly once, at a point on that edge, and inside a
face it runs from the crossing point to the hub and out again.  The paths
from a hub to the crossing points on the face boundary follow the dual tree
of the face triangulation; where several paths share a diagonal they are
placed on it in boundary order, so paths in one face never cross.

A set whose complement falls into several pieces (a set with genus) is
drawn as one closed component per piece; the even-odd rule gives the holes.
"""

from __future__ import annotations

import math
from collections import defaultdict
from dataclasses import dataclass, field

import networkx as nx
import numpy as np
from scipy.spatial import cKDTree

from setmerge.dual import DualGraph, DualGraphError, concurrency
from setmerge.geometry import point_in_components
from setmerge.layout import signed_area
from setmerge.layout import Layout
from setmerge.sets import label_string

FRAME_SCALE = 2.2


@dataclass
class Curve:
    label: str
    components: list[np.ndarray]
    fixed: list[np.ndarray]

    def points(self) -> np.ndarray:
        return np.vstack(self.components)


@dataclass
class Diagram:
    graph: DualGraph
    layout: Layout
    curves: dict[str, Curve] = field(default_factory=dict)

    def labels(self) -> list[str]:
        return sorted(self.curves)

    def inside(self, label: str, pt) -> bool:
        return point_in_components(pt, self.curves[label].components)

    def classify(self) -> dict[int, frozenset[str]]:
        """Curves containing each zone vertex."""
        out = {}
        for z in self.graph.sorted_zone_ids():
            p = self.layout.positions[z]
            out[z] = frozenset(s for s in self.curves if self.inside(s, p))
        return out


class _Region:
    """Triangulated drawing extended by a frame around the outer triangle."""

    def __init__(self, graph: DualGraph, layout: Layout):
        self.pos = dict(layout.positions)
        o0, o1, o2 = layout.outer_triangle
        c = (self.pos[o0] + self.pos[o1] + self.pos[o2]) / 3.0
        frame = {}
        for k, v in enumerate((o0, o1, o2)):
            frame[v] = -1 - k
            self.pos[-1 - k] = c + FRAME_SCALE * (self.pos[v] - c)
        tris = list(layout.triangles)
        for a, b in ((o0, o1), (o1, o2), (o2, o0)):
            fa, fb = frame[a], frame[b]
            tris.append((a, fb, b))
            tris.append((a, fa, fb))
        self.tris = [self._ccw(t) for t in tris]
        self.real = {frozenset(e) for e in layout.real_edges}
        outer = graph.outer_zone
        self.wall = frozenset((outer, frame[outer])) if outer in frame else frozenset((o0, frame[o0]))
        self.side_tris: dict[frozenset, list[int]] = defaultdict(list)
        for i, t in enumerate(self.tris):
            for a, b in self.sides(t):
                self.side_tris[frozenset((a, b))].append(i)

    def _ccw(self, t):
        a, b, c = t
        return (a, b, c) if signed_area(self.pos[a], self.pos[b], self.pos[c]) > 0 else (a, c, b)

    @staticmethod
    def sides(t):
        return ((t[0], t[1]), (t[1], t[2]), (t[2], t[0]))

    def passable(self, key: frozenset) -> bool:
        return key not in self.real and key != self.wall and len(self.side_tris[key]) == 2

    def face_components(self) -> list[list[int]]:
        g = nx.Graph()
        g.add_nodes_from(range(len(self.tris)))
        for key, ts in self.side_tris.items():
            if self.passable(key):
                g.add_edge(ts[0], ts[1])
        return [sorted(c) for c in nx.connected_components(g)]

    def centroid(self, i: int) -> np.ndarray:
        return sum(self.pos[v] for v in self.tris[i]) / 3.0


def crossing_points(graph: DualGraph, layout: Layout, spacing: float = 0.12) -> dict[tuple, np.ndarray]:
    """Where each curve crosses each edge: the midpoint, or evenly spread offsets."""
    pts = {}
    for a, b in graph.sorted_edges():
        labels = sorted(graph.edge_label((a, b)))
        n = len(labels)
        gap = min(spacing, 0.8 / n)
        pa, pb = layout.positions[a], layout.positions[b]
        for k, s in enumerate(labels):
            t = 0.5 + (k - (n - 1) / 2.0) * gap
            pts[(a, b), s] = pa + t * (pb - pa)
    return pts


def route_curves(graph: DualGraph, layout: Layout, allow_concurrency: bool = False) -> Diagram:
    """Closed polylines for every surviving set.

    Requires a concurrency-free dual graph unless ``allow_concurrency`` is
    set, in which case curves sharing an edge cross it side by side.
    """
    if not allow_concurrency and concurrency(graph) != 0:
        raise DualGraphError("curve routing needs a concurrency-free dual graph")
    region = _Region(graph, layout)
    cross = crossing_points(graph, layout)
    edge_of = {frozenset(e): e for e in graph.edges}

    # slots: (triangle, edge, label) -> crossing point
    slots_on_side: dict[tuple[int, tuple[int, int]], list[tuple[int, tuple, str]]] = {}
    comps = region.face_components()
    comp_of = {t: i for i, c in enumerate(comps) for t in c}
    spokes: dict[tuple, list[np.ndarray]] = {}
    for ci, comp in enumerate(comps):
        spokes.update(_face_spokes(region, comp, edge_of, cross, graph))

    curves = {}
    for s in graph.active_labels:
        curves[s] = _trace(s, graph, region, comp_of, spokes, cross)
    return Diagram(graph=graph, layout=layout, curves=curves)


def _side_slots(region: _Region, t: int, a: int, b: int, edge_of, cross, graph) -> list[tuple]:
    e = edge_of[frozenset((a, b))]
    pa, pb = region.pos[a], region.pos[b]
    d = pb - pa
    items = [(float(np.dot(cross[e, s] - pa, d)), (t, e, s)) for s in sorted(graph.edge_label(e))]
    items.sort()
    return [x for _, x in items]


def _face_spokes(region: _Region, comp: list[int], edge_of, cross, graph) -> dict[tuple, list[np.ndarray]]:
    comp_set = set(comp)
    slot_pts = []
    for t in comp:
        for a, b in region.sides(region.tris[t]):
            if frozenset((a, b)) in region.real:
                slot_pts.extend(cross[edge_of[frozenset((a, b))], s]
                                for s in graph.edge_label(edge_of[frozenset((a, b))]))
    if not slot_pts:
        return {}
    S = np.array(slot_pts)

    def score(t):
        c = region.centroid(t)
        return (float(np.linalg.norm(S - c, axis=1).sum()), t)

    root = min(comp, key=score)
    # breadth-first spanning tree of the face's triangle adjacency
    parent = {root: None}
    order = [root]
    for t in order:
        for a, b in region.sides(region.tris[t]):
            key = frozenset((a, b))
            if not region.passable(key):
                continue
            for u in region.side_tris[key]:
                if u != t and u in comp_set and u not in parent:
                    parent[u] = t
                    order.append(u)

    def child_across(t, a, b):
        key = frozenset((a, b))
        if not region.passable(key):
            return None
        for u in region.side_tris[key]:
            if u != t and parent.get(u) == t:
                return u
        return None

    def other_sides(t, entry):
        tri = region.tris[t]
        sides = region.sides(tri)
        if entry is None:
            return sides
        k = next(i for i, (a, b) in enumerate(sides) if frozenset((a, b)) == entry)
        return (sides[(k + 1) % 3], sides[(k + 2) % 3])

    memo: dict[int, list[tuple]] = {}

    def subtree(t, entry):
        out = []
        for a, b in other_sides(t, entry):
            key = frozenset((a, b))
            if key in region.real:
                out.extend(_side_slots(region, t, a, b, edge_of, cross, graph))
            else:
                u = child_across(t, a, b)
                if u is not None:
                    out.extend(subtree(u, key))
        memo[t] = out
        return out

    paths: dict[tuple, list[np.ndarray]] = {}
    hub = region.centroid(root)

    def assign(t, entry, prefix):
        for a, b in other_sides(t, entry):
            key = frozenset((a, b))
            if key in region.real:
                for slot in _side_slots(region, t, a, b, edge_of, cross, graph):
                    paths[slot] = prefix(slot) + [cross[slot[1], slot[2]]]
            else:
                u = child_across(t, a, b)
                if u is None:
                    continue
                items = subtree(u, key)
                n = len(items)
                pa, pb = region.pos[a], region.pos[b]
                where = {slot: pa + (j + 1) / (n + 1) * (pb - pa) for j, slot in enumerate(items)}
                assign(u, key, lambda slot, where=where, prefix=prefix: prefix(slot) + [where[slot]])

    assign(root, None, lambda slot: [hub])
    return paths


def _trace(s: str, graph: DualGraph, region: _Region, comp_of, spokes, cross) -> Curve:
    inside = {z for z in graph.zones if s in graph.label(z)}
    rest = nx.Graph()
    rest.add_nodes_from(z for z in graph.zones if z not in inside)
    rest.add_edges_from(e for e in graph.edges if e[0] not in inside and e[1] not in inside)
    piece = {}
    for i, c in enumerate(sorted(nx.connected_components(rest), key=lambda c: min(c))):
        for z in c:
            piece[z] = i
    bonds: dict[int, list[tuple]] = defaultdict(list)
    for e in graph.sorted_edges():
        if s in graph.edge_label(e):
            out = e[0] if e[0] not in inside else e[1]
            bonds[piece[out]].append(e)

    components, fixed = [], []
    for b in sorted(bonds):
        edges = bonds[b]
        # slots of this bond grouped per face
        by_face: dict[int, list[tuple]] = defaultdict(list)
        for e in edges:
            for t in region.side_tris[frozenset(e)]:
                by_face[comp_of[t]].append((t, e, s))
        for f, sl in by_face.items():
            if len(sl) != 2:
                raise DualGraphError(f"curve {s} visits a face {len(sl)} times")
        start = (region.side_tris[frozenset(edges[0])][0], edges[0], s)
        pts: list[np.ndarray] = []
        flags: list[bool] = []
        slot = start
        for _ in range(2 * len(edges) + 2):
            f = comp_of[slot[0]]
            a, b2 = by_face[f]
            nxt = b2 if a == slot else a
            seg_in = spokes[slot][::-1]
            seg_out = spokes[nxt]
            piece_pts = seg_in + seg_out[1:]
            piece_flags = [True] + [False] * (len(seg_in) - 2) + [True] + [False] * (len(seg_out) - 2) + [True]
            if pts:
                piece_pts, piece_flags = piece_pts[1:], piece_flags[1:]
            pts.extend(piece_pts)
            flags.extend(piece_flags)
            e = nxt[1]
            t_other = [t for t in region.side_tris[frozenset(e)] if t != nxt[0]]
            slot = (t_other[0] if t_other else nxt[0], e, s)
            if slot == start:
                break
        else:
            raise DualGraphError(f"curve {s} did not close")
        pts, flags = pts[:-1], flags[:-1]
        components.append(np.array(pts))
        fixed.append(np.array(flags))
    return Curve(label=s, components=components, fixed=fixed)


@dataclass(frozen=True)
class SmoothConfig:
    iterations: int = 100
    clearance_factor: float = 0.25
    weight: float = 0.5
    segment_factor: float = 0.5
    resolution: float = 60.0


def densify(points: np.ndarray, flags: np.ndarray, h: float) -> tuple[np.ndarray, np.ndarray]:
    out, fl = [], []
    n = len(points)
    for i in range(n):
        p, q = points[i], points[(i + 1) % n]
        k = max(1, int(math.ceil(np.linalg.norm(q - p) / h)))
        for j in range(k):
            out.append(p + (q - p) * (j / k))
            fl.append(bool(flags[i]) if j == 0 else False)
    return np.array(out), np.array(fl)


def _orient(P, Q, R):
    return (Q[..., 0] - P[..., 0]) * (R[..., 1] - P[..., 1]) - (Q[..., 1] - P[..., 1]) * (R[..., 0] - P[..., 0])


def _cross_matrix(A, B, C, D) -> np.ndarray:
    """Strict crossings of segments A[i]B[i] against C[j]D[j], shape (len(A), len(C))."""
    A, B = A[:, None, :], B[:, None, :]
    C, D = C[None, :, :], D[None, :, :]
    d1, d2 = _orient(C, D, A), _orient(C, D, B)
    d3, d4 = _orient(A, B, C), _orient(A, B, D)
    return (d1 * d2 < 0) & (d3 * d4 < 0)


def _any_crossing(A, B, C, D) -> np.ndarray:
    """For each segment A[i]B[i], whether it strictly crosses some C[j]D[j]."""
    out = np.zeros(len(A), bool)
    if not len(A) or not len(C):
        return out
    mid_n, mid_s = (A + B) / 2.0, (C + D) / 2.0
    reach = (np.linalg.norm(B - A, axis=1).max() + np.linalg.norm(D - C, axis=1).max()) / 2.0
    hits = cKDTree(mid_s).query_ball_point(mid_n, r=reach * (1 + 1e-9) + 1e-12)
    rows = np.repeat(np.arange(len(A)), [len(h) for h in hits])
    if not len(rows):
        return out
    cols = np.concatenate([np.asarray(h, int) for h in hits])
    a, b, c, d = A[rows], B[rows], C[cols], D[cols]
    cross = (_orient(c, d, a) * _orient(c, d, b) < 0) & (_orient(a, b, c) * _orient(a, b, d) < 0)
    np.logical_or.at(out, rows, cross)
    return out


def _in_triangle_matrix(V, A, B, C) -> np.ndarray:
    """Which points V[j] lie in triangle A[i]B[i]C[i] (closed), shape (len(A), len(V))."""
    A, B, C = A[:, None, :], B[:, None, :], C[:, None, :]
    W = V[None, :, :]
    d1, d2, d3 = _orient(A, B, W), _orient(B, C, W), _orient(C, A, W)
    neg = (d1 < 0) | (d2 < 0) | (d3 < 0)
    pos = (d1 > 0) | (d2 > 0) | (d3 > 0)
    return ~(neg & pos)


def smooth_curves(diagram: Diagram, config: SmoothConfig = SmoothConfig()) -> Diagram:
    """Laplacian shortening of every curve with obstacle checks.

    Hubs and edge crossing points stay put.  Free points move towards the
    mean of their neighbours in batches of pairwise non-adjacent points.  A
    move is rejected if it sweeps over a zone vertex, ends closer than the
    clearance distance to a vertex (unless it was already closer), or makes
    a new crossing with a dual edge or any curve segment, or
    brings a point onto a dual edge.
    """
    layout = diagram.layout
    min_edge = layout.min_edge_length()
    delta = config.clearance_factor * min_edge
    span = np.ptp(np.array(list(layout.positions.values())), axis=0).max()
    h = max(config.segment_factor * min_edge, span / config.resolution, 1e-6)
    eps = 1e-3 * min_edge
    V = np.array([layout.positions[z] for z in diagram.graph.sorted_zone_ids()]).reshape(-1, 2)
    E = sorted(diagram.graph.edges)
    EA = np.array([layout.positions[a] for a, _ in E]).reshape(-1, 2)
    EB = np.array([layout.positions[b] for _, b in E]).reshape(-1, 2)

    pts, fixed, prev, nxt, color, owner, bounds = [], [], [], [], [], [], []
    for s in diagram.labels():
        c = diagram.curves[s]
        for P, F in zip(c.components, c.fixed):
            P, F = densify(P, F, h)
            base, n = len(pts), len(P)
            bounds.append((s, base, n))
            for i in range(n):
                pts.append(P[i])
                fixed.append(bool(F[i]))
                prev.append(base + (i - 1) % n)
                nxt.append(base + (i + 1) % n)
                col = i % 3
                if i == n - 1 and n % 3 == 1:
                    col = 1
                color.append(col)
    X = np.array(pts, float)
    fixed = np.array(fixed)
    prev, nxt, color = np.array(prev), np.array(nxt), np.array(color)
    # hubs crossed by a single curve need not stay put
    hub_use: dict[tuple, int] = defaultdict(int)
    for i in range(len(X)):
        if fixed[i]:
            hub_use[tuple(X[i])] += 1
    anchor_edge = np.array([_edge_under(X[i], fixed[i], EA, EB) for i in range(len(X))], int)

    for i in range(len(X)):
        if fixed[i] and anchor_edge[i] < 0 and hub_use[tuple(X[i])] == 1:
            fixed[i] = False

    for _ in range(config.iterations):
        moved = 0.0
        for col in range(3):
            movers = np.flatnonzero((color == col) & ~fixed)
            if not len(movers):
                continue
            P, Pp, Pn = X[movers], X[prev[movers]], X[nxt[movers]]
            cand = P + config.weight * ((Pp + Pn) / 2.0 - P)
            ok = np.linalg.norm(cand - P, axis=1) > 1e-12
            if len(V):
                d_new = np.linalg.norm(cand[:, None, :] - V[None], axis=2).min(axis=1)
                d_old = np.linalg.norm(P[:, None, :] - V[None], axis=2).min(axis=1)
                ok &= ~((d_new < delta) & (d_new < d_old))
                ok &= ~_in_triangle_matrix(V, Pp, P, cand).any(axis=1)
                ok &= ~_in_triangle_matrix(V, Pn, P, cand).any(axis=1)
            if len(EA):
                e_new, e_old = _segment_distance(cand, EA, EB), _segment_distance(P, EA, EB)
                ok &= ~((e_new < eps) & (e_new < e_old))
                ok &= ~_cross_matrix(Pp, cand, EA, EB).any(axis=1)
                ok &= ~_cross_matrix(cand, Pn, EA, EB).any(axis=1)
                for nb in (prev[movers], nxt[movers]):
                    j = anchor_edge[nb]
                    has = j >= 0
                    if has.any():
                        jj = j[has]
                        before = _orient(EA[jj], EB[jj], P[has])
                        after = _orient(EA[jj], EB[jj], cand[has])
                        bad = np.zeros(len(movers), bool)
                        bad[has] = before * after <= 0
                        ok &= ~bad
            m = len(movers)
            hit = _any_crossing(np.vstack([Pp, cand]), np.vstack([cand, Pn]), X, X[nxt])
            ok &= ~(hit[:m] | hit[m:])
            idx = np.flatnonzero(ok)
            if len(idx) > 1:
                NA = np.vstack([Pp[idx], cand[idx]])
                NB = np.vstack([cand[idx], Pn[idx]])
                hit = _any_crossing(NA, NB, NA, NB)
                k = len(idx)
                ok[idx[hit[:k] | hit[k:]]] = False
            idx = np.flatnonzero(ok)
            if len(idx):
                moved = max(moved, float(np.linalg.norm(cand[idx] - P[idx], axis=1).max()))
                X[movers[idx]] = cand[idx]
        if moved < 1e-6 * max(min_edge, 1e-9):
            break

    curves: dict[str, Curve] = {}
    for s, base, n in bounds:
        P, F = _simplify(X[base:base + n], fixed[base:base + n])
        c = curves.setdefault(s, Curve(label=s, components=[], fixed=[]))
        c.components.append(P)
        c.fixed.append(F)
    return Diagram(graph=diagram.graph, layout=layout, curves=curves)


def _segment_distance(Q: np.ndarray, EA: np.ndarray, EB: np.ndarray) -> np.ndarray:
    """Distance from each point to its nearest dual edge."""
    d = EB - EA
    t = np.clip(((Q[:, None, :] - EA[None]) * d[None]).sum(axis=2) / (d * d).sum(axis=1)[None], 0.0, 1.0)
    foot = EA[None] + t[..., None] * d[None]
    return np.linalg.norm(Q[:, None, :] - foot, axis=2).min(axis=1)


def _simplify(P: np.ndarray, f: np.ndarray, tol: float = 1e-9) -> tuple[np.ndarray, np.ndarray]:
    keep = [i for i in range(len(P)) if np.linalg.norm(P[i] - P[i - 1]) > tol]
    return P[keep], f[keep]


def _edge_under(q, fixed, EA, EB, tol: float = 1e-9) -> int:
    """Index of the dual edge a fixed point lies on, or -1."""
    if not fixed or not len(EA):
        return -1
    d = EB - EA
    t = np.clip(((q - EA) * d).sum(axis=1) / (d * d).sum(axis=1), 0.0, 1.0)
    gap = np.linalg.norm(EA + t[:, None] * d - q, axis=1)
    j = int(gap.argmin())
    return j if gap[j] < tol * (1.0 + float(np.abs(q).max())) and 0 < t[j] < 1 else -1
