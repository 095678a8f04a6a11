"""Straight-line planar layout of a dual graph and crossing-free refinement.

The embedding is fully triangulated with dummy edges, the outer zone is put
on the outer triangle, and vertices are placed by barycentric (Tutte)
embedding.  Refinement then moves vertices under repulsion/attraction
forces while rejecting any move that would invert a triangle of the
triangulation; with every triangle positively oriented the drawing of the
real edges cannot cross.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace

import networkx as nx
import numpy as np
from networkx.algorithms.planar_drawing import triangulate_embedding

from setmerge.dual import DualGraph, DualGraphError
from setmerge.planarity import faces as embedding_faces
from setmerge.planarity import is_planar

Point = np.ndarray
RADIUS = 10.0


@dataclass
class Layout:
    positions: dict[int, Point]
    rotation: dict[int, list[int]]
    faces: list[list[int]]
    outer_face: int
    triangles: list[tuple[int, int, int]]
    outer_triangle: tuple[int, int, int]
    real_edges: frozenset[tuple[int, int]] = field(default_factory=frozenset)

    def point(self, zid: int) -> Point:
        return self.positions[zid]

    def zone_ids(self) -> list[int]:
        return sorted(z for z in self.positions if z >= 0)

    def segments(self) -> list[tuple[Point, Point]]:
        return [(self.positions[a], self.positions[b]) for a, b in sorted(self.real_edges)]

    def min_vertex_distance(self) -> float:
        pts = np.array([self.positions[z] for z in self.zone_ids()])
        if len(pts) < 2:
            return math.inf
        d = np.linalg.norm(pts[:, None, :] - pts[None, :, :], axis=-1)
        d[np.diag_indices(len(pts))] = np.inf
        return float(d.min())

    def min_edge_length(self) -> float:
        lengths = [np.linalg.norm(self.positions[a] - self.positions[b]) for a, b in self.real_edges]
        return float(min(lengths)) if lengths else RADIUS

    def copy(self) -> "Layout":
        return replace(self, positions={k: v.copy() for k, v in self.positions.items()})


def signed_area(a: Point, b: Point, c: Point) -> float:
    return 0.5 * float((b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0]))


def _outer_half_edge(embedding: nx.PlanarEmbedding, outer: int) -> tuple[int, int, list[list[int]], int]:
    """Pick the largest face around the outer zone; return a half-edge on it."""
    all_faces = embedding_faces(embedding)
    best = None
    for i, face in enumerate(all_faces):
        if outer in face:
            key = (len(face), -i)
            if best is None or key > best[0]:
                best = (key, i)
    idx = best[1]
    face = all_faces[idx]
    k = face.index(outer)
    return outer, face[(k + 1) % len(face)], all_faces, idx


def _tutte(nodes: list[int], adj: dict[int, set[int]], fixed: dict[int, Point]) -> dict[int, Point]:
    free = [v for v in nodes if v not in fixed]
    index = {v: i for i, v in enumerate(free)}
    pos = {v: np.asarray(p, float) for v, p in fixed.items()}
    if not free:
        return pos
    n = len(free)
    A = np.zeros((n, n))
    b = np.zeros((n, 2))
    for v in free:
        i = index[v]
        A[i, i] = len(adj[v])
        for u in adj[v]:
            if u in index:
                A[i, index[u]] -= 1.0
            else:
                b[i] += fixed[u]
    sol = np.linalg.solve(A, b)
    for v in free:
        pos[v] = sol[index[v]]
    return pos


def planar_layout(graph: DualGraph) -> Layout:
    """Crossing-free straight-line positions with the outer zone on the outer face."""
    planar, embedding = is_planar(graph)
    if not planar:
        raise DualGraphError("cannot lay out a nonplanar dual graph")
    outer = graph.outer_zone
    real_edges = frozenset(graph.edges)
    rotation = {v: list(embedding.neighbors_cw_order(v)) for v in embedding.nodes}

    full = nx.PlanarEmbedding(embedding)
    if full.number_of_nodes() < 3:
        # pad tiny graphs with auxiliary vertices so a triangle exists
        nodes = sorted(full.nodes) + [-10, -11][: 3 - full.number_of_nodes()]
        full = _triangle_embedding(nodes)

    u, w, orig_faces, outer_idx = _outer_half_edge(full, outer)
    tri, _ = triangulate_embedding(full, fully_triangulate=True)
    outer_tri = tri.traverse_face(u, w)
    if len(outer_tri) != 3:
        raise DualGraphError("triangulation failed to produce a triangular outer face")

    corners = [np.array([RADIUS * math.cos(a), RADIUS * math.sin(a)])
               for a in (math.pi / 2, math.pi / 2 + 2 * math.pi / 3, math.pi / 2 + 4 * math.pi / 3)]
    fixed = dict(zip(outer_tri, corners))
    adj = {v: set(tri[v]) for v in tri.nodes}
    positions = _tutte(sorted(tri.nodes), adj, fixed)

    seen: set[tuple[int, int]] = set()
    triangles = []
    outer_key = frozenset(outer_tri)
    for a, b in sorted(tri.edges()):
        if (a, b) in seen:
            continue
        face = tri.traverse_face(a, b, mark_half_edges=seen)
        if frozenset(face) == outer_key and len(face) == 3 and _same_cycle(face, outer_tri):
            continue
        triangles.append(tuple(face))
    triangles = [_ccw(t, positions) for t in triangles]

    faces = [f for f in orig_faces]
    real_faces = [[v for v in f if v >= 0] for f in faces]
    return Layout(
        positions=positions,
        rotation=rotation,
        faces=real_faces,
        outer_face=outer_idx,
        triangles=triangles,
        outer_triangle=_ccw(tuple(outer_tri), positions),
        real_edges=real_edges,
    )


def _triangle_embedding(nodes: list[int]) -> nx.PlanarEmbedding:
    g = nx.cycle_graph(nodes)
    _, emb = nx.check_planarity(g)
    return emb


def _same_cycle(face: list[int], tri: list[int]) -> bool:
    k = face.index(tri[0])
    return [face[(k + i) % 3] for i in range(3)] == list(tri)


def _ccw(t: tuple[int, int, int], pos: dict[int, Point]) -> tuple[int, int, int]:
    a, b, c = t
    return (a, b, c) if signed_area(pos[a], pos[b], pos[c]) > 0 else (a, c, b)


def count_crossings(layout: Layout) -> int:
    """Pairs of real edges that intersect anywhere except at a shared endpoint."""
    from setmerge.geometry import segments_intersect

    edges = sorted(layout.real_edges)
    n = 0
    for i in range(len(edges)):
        a, b = edges[i]
        for j in range(i + 1, len(edges)):
            c, d = edges[j]
            if {a, b} & {c, d}:
                continue
            P = layout.positions
            if segments_intersect(P[a], P[b], P[c], P[d]):
                n += 1
    return n


@dataclass(frozen=True)
class RefineConfig:
    iterations: int = 500
    min_spacing: float = 0.8
    step: float = 1.0
    min_step: float = 1e-4
    min_area: float = 1e-6
    gravity: float = 0.05
    seed: int = 0


def refine_layout(graph: DualGraph, layout: Layout, config: RefineConfig = RefineConfig(),
                  on_iteration=None) -> Layout:
    """Force-directed refinement that never introduces an edge crossing.

    Vertices repel each other and real edges attract their endpoints.  Each
    proposed move is halved until every triangle around the vertex keeps a
    positive orientation and the vertex does not come closer to any other
    vertex than the current minimum pairwise spacing.  A weak pull towards
    the origin keeps the drawing from drifting apart.
    """
    out = layout.copy()
    pos = out.positions
    movable = sorted(pos)
    if not movable:
        return out
    rng = np.random.default_rng(config.seed)
    tris_of: dict[int, list[tuple[int, int, int]]] = {v: [] for v in pos}
    for t in out.triangles:
        for v in t:
            tris_of[v].append(t)
    nbrs: dict[int, list[int]] = {v: [] for v in pos}
    for a, b in out.real_edges:
        nbrs[a].append(b)
        nbrs[b].append(a)
    ids = sorted(pos)
    k = 2.0 * RADIUS / math.sqrt(len(ids))
    temperature = config.step

    for it in range(config.iterations):
        order = list(movable)
        rng.shuffle(order)
        P = np.array([pos[v] for v in ids])
        current_min = _min_pairwise(P)
        for v in order:
            p = pos[v]
            P = np.array([pos[u] for u in ids])
            delta = p - P
            dist = np.linalg.norm(delta, axis=1)
            mask = dist > 0
            force = np.zeros(2)
            force += ((k * k / np.maximum(dist[mask], 1e-9) ** 2)[:, None] * delta[mask]).sum(axis=0)
            for u in nbrs[v]:
                d = pos[u] - p
                force += np.linalg.norm(d) * d / k
            force -= config.gravity * p * np.linalg.norm(p) / k
            norm = np.linalg.norm(force)
            if norm < 1e-12:
                continue
            move = force / norm * min(norm, temperature)
            others = np.array([pos[u] for u in ids if u != v])
            spacing = min(current_min, config.min_spacing)
            while np.linalg.norm(move) >= config.min_step:
                cand = p + move
                if _valid_move(v, cand, pos, tris_of[v], config.min_area) and (
                    np.min(np.linalg.norm(others - cand, axis=1)) >= min(
                        spacing, np.min(np.linalg.norm(others - p, axis=1)))
                ):
                    pos[v] = cand
                    break
                move = move / 2.0
        temperature = max(config.step * (1.0 - it / config.iterations), config.step * 0.05)
        if on_iteration is not None:
            on_iteration(it, out)
    return out


def _min_pairwise(P: np.ndarray) -> float:
    d = np.linalg.norm(P[:, None, :] - P[None, :, :], axis=-1)
    d[np.diag_indices(len(P))] = np.inf
    return float(d.min())


def _valid_move(v: int, cand: Point, pos: dict[int, Point], tris, min_area: float) -> bool:
    for t in tris:
        pts = [cand if u == v else pos[u] for u in t]
        if signed_area(*pts) <= min_area:
            return False
    return True
