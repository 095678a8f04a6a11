"""Labeled dual graph of a zone partition.

Vertices are zones, keyed by integer ids; an edge between two zones is
labeled with the symmetric difference of their zone labels.  Graphs are
treated as immutable snapshots: every mutating operation returns a new
graph.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Mapping

import networkx as nx

from setmerge.sets import SetSystem, Zone, label_string, zone_partition

Edge = tuple[int, int]


class DualGraphError(ValueError):
    """Raised when an operation's contract is violated."""


def _edge(a: int, b: int) -> Edge:
    return (a, b) if a < b else (b, a)


@dataclass(frozen=True)
class DualGraph:
    zones: Mapping[int, Zone]
    edges: frozenset[Edge]
    provenance: Mapping[str, frozenset[str]]
    _by_label: dict[frozenset[str], int] = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        by_label: dict[frozenset[str], int] = {}
        for zid in sorted(self.zones):
            by_label.setdefault(self.zones[zid].label, zid)
        object.__setattr__(self, "_by_label", by_label)

    # -- queries ---------------------------------------------------------

    @property
    def active_labels(self) -> list[str]:
        return sorted(self.provenance)

    def label(self, zid: int) -> frozenset[str]:
        return self.zones[zid].label

    def edge_label(self, edge: Edge) -> frozenset[str]:
        a, b = edge
        return self.zones[a].label ^ self.zones[b].label

    def zone_id(self, label: Iterable[str]) -> int:
        key = frozenset(label)
        try:
            return self._by_label[key]
        except KeyError:
            raise DualGraphError(f"no zone labeled {label_string(key)!r}") from None

    def has_zone(self, label: Iterable[str]) -> bool:
        return frozenset(label) in self._by_label

    def has_edge(self, l1: Iterable[str], l2: Iterable[str]) -> bool:
        if not (self.has_zone(l1) and self.has_zone(l2)):
            return False
        return _edge(self.zone_id(l1), self.zone_id(l2)) in self.edges

    @property
    def zone_labels(self) -> frozenset[frozenset[str]]:
        return frozenset(z.label for z in self.zones.values())

    @property
    def outer_zone(self) -> int:
        return self.zone_id(())

    def n_nonempty_zones(self) -> int:
        return sum(1 for z in self.zones.values() if z.label)

    def sorted_zone_ids(self) -> list[int]:
        return sorted(self.zones, key=lambda z: _zone_key(self.zones[z].label))

    def sorted_edges(self) -> list[Edge]:
        return sorted(self.edges, key=self.edge_key)

    def edge_key(self, edge: Edge) -> tuple[tuple, tuple]:
        ka, kb = sorted((_zone_key(self.label(edge[0])), _zone_key(self.label(edge[1]))))
        return ka, kb

    def neighbors(self, zid: int) -> Iterator[int]:
        for a, b in self.edges:
            if a == zid:
                yield b
            elif b == zid:
                yield a

    def to_networkx(self) -> nx.Graph:
        """Undirected graph on zone ids, built in canonical order."""
        g = nx.Graph()
        g.add_nodes_from(self.sorted_zone_ids())
        g.add_edges_from(self.sorted_edges())
        return g

    def check_invariants(self) -> list[str]:
        """Return a list of violated invariants (empty when the graph is valid)."""
        problems = []
        labels = [z.label for z in self.zones.values()]
        if len(set(labels)) != len(labels):
            problems.append("duplicate zone labels")
        if frozenset() not in set(labels):
            problems.append("outer zone missing")
        for a, b in self.edges:
            if a == b:
                problems.append(f"self-loop at {a}")
            elif a not in self.zones or b not in self.zones:
                problems.append(f"dangling edge {(a, b)}")
            elif not self.edge_label((a, b)):
                problems.append(f"empty edge label on {(a, b)}")
            if a > b:
                problems.append(f"non-canonical edge {(a, b)}")
        present = set().union(*labels) if labels else set()
        for s in self.provenance:
            if s not in present:
                problems.append(f"active label {s!r} in no zone")
        if present - set(self.provenance):
            problems.append("zone uses inactive labels")
        return problems

    # -- serialization ---------------------------------------------------

    def to_dict(self) -> dict:
        zones = [
            {"label": sorted(self.zones[z].label), "elements": sorted(self.zones[z].elements)}
            for z in self.sorted_zone_ids()
        ]
        edges = []
        for e in self.sorted_edges():
            la, lb = sorted((self.label(e[0]), self.label(e[1])), key=_zone_key)
            edges.append({"a": sorted(la), "b": sorted(lb), "label": sorted(self.edge_label(e))})
        prov = {k: sorted(v) for k, v in sorted(self.provenance.items())}
        return {"zones": zones, "edges": edges, "provenance": prov}

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, ensure_ascii=False) + "\n"

    @classmethod
    def from_dict(cls, doc: dict) -> "DualGraph":
        zones = {}
        for i, rec in enumerate(doc["zones"]):
            zones[i] = Zone(frozenset(rec["label"]), frozenset(rec.get("elements", ())))
        by_label = {z.label: i for i, z in zones.items()}
        edges = frozenset(
            _edge(by_label[frozenset(e["a"])], by_label[frozenset(e["b"])]) for e in doc["edges"]
        )
        if "provenance" in doc:
            prov = {k: frozenset(v) for k, v in doc["provenance"].items()}
        else:
            prov = {s: frozenset([s]) for z in zones.values() for s in z.label}
        return cls(zones, edges, prov)

    # -- construction helpers --------------------------------------------

    def with_edges(self, edges: Iterable[Edge]) -> "DualGraph":
        return DualGraph(self.zones, frozenset(_edge(a, b) for a, b in edges), self.provenance)


def _zone_key(label: frozenset[str]) -> tuple[int, str]:
    return (len(label), label_string(label))


def graph_from_zones(
    zones: Mapping[frozenset[str], frozenset[str]],
    edges: Iterable[tuple[Iterable[str], Iterable[str]]] = (),
    provenance: Mapping[str, frozenset[str]] | None = None,
) -> DualGraph:
    """Build a graph from a zone-label → elements map and label-pair edges."""
    if frozenset() not in zones:
        zones = {frozenset(): frozenset(), **zones}
    ordered = sorted(zones, key=_zone_key)
    zmap = {i: Zone(lab, frozenset(zones[lab])) for i, lab in enumerate(ordered)}
    ids = {lab: i for i, lab in enumerate(ordered)}
    e = frozenset(_edge(ids[frozenset(a)], ids[frozenset(b)]) for a, b in edges)
    if provenance is None:
        provenance = {s: frozenset([s]) for lab in ordered for s in lab}
    return DualGraph(zmap, e, dict(provenance))


def single_difference_edges(graph: DualGraph) -> frozenset[Edge]:
    out = set()
    ids = graph.sorted_zone_ids()
    for a, b in itertools.combinations(ids, 2):
        if len(graph.label(a) ^ graph.label(b)) == 1:
            out.add(_edge(a, b))
    return frozenset(out)


def induced_subgraph(graph: DualGraph, s: str) -> nx.Graph:
    """Subgraph on the zones whose label contains ``s``."""
    if s not in graph.provenance:
        raise DualGraphError(f"unknown set label {s!r}")
    nodes = [z for z in graph.sorted_zone_ids() if s in graph.label(z)]
    return graph.to_networkx().subgraph(nodes).copy()


def _components(view: nx.Graph) -> list[set[int]]:
    return [set(c) for c in nx.connected_components(view)]


def connect(graph: DualGraph, view: nx.Graph) -> DualGraph:
    """Join two components of ``view`` by the cross-component zone pair with
    the smallest label symmetric difference.

    Ties prefer the pair whose (label size, label string) keys, sorted, are
    least, so zones with fewer sets are joined first.
    """
    comps = _components(view)
    if len(comps) < 2:
        raise DualGraphError("connect needs a view with at least two components")
    comp_of = {z: i for i, c in enumerate(comps) for z in c}
    best = None
    for a, b in itertools.combinations(sorted(view.nodes), 2):
        if comp_of[a] == comp_of[b]:
            continue
        key = (len(graph.label(a) ^ graph.label(b)), graph.edge_key((a, b)))
        if best is None or key < best[0]:
            best = (key, _edge(a, b))
    assert best is not None
    return graph.with_edges(graph.edges | {best[1]})


def repair_connectivity(graph: DualGraph, labels: Iterable[str]) -> DualGraph:
    """Add connect edges until each listed label's induced subgraph is connected."""
    for s in labels:
        view = induced_subgraph(graph, s)
        while nx.number_connected_components(view) > 1:
            graph = connect(graph, view)
            view = induced_subgraph(graph, s)
    return graph


def repair_global_connectivity(graph: DualGraph) -> DualGraph:
    view = graph.to_networkx()
    while nx.number_connected_components(view) > 1:
        graph = connect(graph, view)
        view = graph.to_networkx()
    return graph


def derive_edges(graph: DualGraph) -> DualGraph:
    """Replace all edges by single-difference edges plus connect repairs.

    Sets are repaired in ascending label order, then any components left
    over (zones sharing no set with the rest) are joined the same way.
    """
    graph = graph.with_edges(single_difference_edges(graph))
    graph = repair_connectivity(graph, graph.active_labels)
    return repair_global_connectivity(graph)


def initial_dual_graph(system: SetSystem) -> DualGraph:
    """Zones of ``system`` joined by single-difference edges, then repaired so
    every set's zones (and the graph as a whole) are connected."""
    return derive_edges(graph_from_zones(zone_partition(system.sets)))


def concurrency(graph: DualGraph) -> int:
    """Sum of edge-label sizes minus the number of edges."""
    return sum(len(graph.edge_label(e)) for e in graph.edges) - len(graph.edges)


def duplicated_label_count(graph: DualGraph) -> int:
    """Extra components over all active labels' induced subgraphs."""
    return sum(
        nx.number_connected_components(induced_subgraph(graph, s)) - 1
        for s in graph.active_labels
    )


def zone_merge(graph: DualGraph, z1: int, z2: int) -> DualGraph:
    """Fuse two zones carrying the same label into the lower id.

    Incident edges move to the surviving zone; self-loops vanish and
    parallel edges collapse.
    """
    if z1 == z2:
        raise DualGraphError("cannot merge a zone with itself")
    if graph.label(z1) != graph.label(z2):
        raise DualGraphError(
            f"zone labels differ: {label_string(graph.label(z1))!r} vs {label_string(graph.label(z2))!r}"
        )
    keep, drop = sorted((z1, z2))
    zones = dict(graph.zones)
    zones[keep] = Zone(zones[keep].label, zones[keep].elements | zones[drop].elements)
    del zones[drop]
    edges = set()
    for a, b in graph.edges:
        a = keep if a == drop else a
        b = keep if b == drop else b
        if a != b:
            edges.add(_edge(a, b))
    return DualGraph(zones, frozenset(edges), graph.provenance)
