"""Planarity testing and Kuratowski subgraph extraction for dual graphs."""

from __future__ import annotations

from dataclasses import dataclass

import networkx as nx

from setmerge.dual import DualGraph, DualGraphError, Edge


@dataclass(frozen=True)
class KuratowskiSubgraph:
    """A K5 or K3,3 subdivision inside a dual graph (zone ids and edges)."""

    zones: frozenset[int]
    edges: frozenset[Edge]

    def branch_zones(self) -> frozenset[int]:
        deg: dict[int, int] = {}
        for a, b in self.edges:
            deg[a] = deg.get(a, 0) + 1
            deg[b] = deg.get(b, 0) + 1
        return frozenset(z for z, d in deg.items() if d >= 3)

    def kind(self) -> str:
        return "K5" if len(self.branch_zones()) == 5 else "K3,3"

    def to_networkx(self) -> nx.Graph:
        g = nx.Graph()
        g.add_nodes_from(sorted(self.zones))
        g.add_edges_from(sorted(self.edges))
        return g


def is_planar(graph: DualGraph | nx.Graph) -> tuple[bool, nx.PlanarEmbedding | None]:
    """Planarity test; returns the combinatorial embedding when planar."""
    g = graph.to_networkx() if isinstance(graph, DualGraph) else graph
    planar, embedding = nx.check_planarity(g)
    return planar, (embedding if planar else None)


def _planar(g: nx.Graph) -> bool:
    return nx.check_planarity(g)[0]


def minimal_nonplanar_edges(g: nx.Graph, order: list[tuple]) -> list[tuple]:
    """Greedy edge deletion: drop each edge in ``order`` whose removal keeps
    the graph nonplanar.  What remains is edge-minimal nonplanar."""
    h = g.copy()
    for u, v in order:
        h.remove_edge(u, v)
        if _planar(h):
            h.add_edge(u, v)
    return sorted(tuple(sorted(e)) for e in h.edges)


def kuratowski_subdivision(graph: DualGraph) -> KuratowskiSubgraph:
    g = graph.to_networkx()
    if _planar(g):
        raise DualGraphError("graph is planar; no Kuratowski subgraph exists")
    kept = minimal_nonplanar_edges(g, graph.sorted_edges())
    zones = frozenset(z for e in kept for z in e)
    return KuratowskiSubgraph(zones, frozenset(kept))


def faces(embedding: nx.PlanarEmbedding) -> list[list[int]]:
    """Face boundary walks of a planar embedding (each a vertex cycle)."""
    seen: set[tuple[int, int]] = set()
    out = []
    for u, v in sorted(embedding.edges()):
        if (u, v) in seen:
            continue
        out.append(embedding.traverse_face(u, v, mark_half_edges=seen))
    return out
