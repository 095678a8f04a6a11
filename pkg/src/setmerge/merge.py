"""Greedy set merging: planarity, concurrency removal and genus removal."""

from __future__ import annotations

import itertools
import json
from dataclasses import asdict, dataclass, field
from typing import Callable, Iterable

import networkx as nx

from setmerge.dual import (
    DualGraph,
    DualGraphError,
    concurrency,
    initial_dual_graph,
    derive_edges,
    zone_merge,
)
from setmerge.planarity import is_planar, kuratowski_subdivision
from setmerge.sets import SetSystem, Zone

PHASES = ("planarity", "concurrency", "genus")


@dataclass(frozen=True)
class MergeStep:
    kept_label: str
    absorbed_label: str
    reason: str
    concurrency_before: int
    concurrency_after: int
    zones_before: int
    zones_after: int
    candidates: tuple[str, ...] = ()


@dataclass
class MergeLog:
    steps: list[MergeStep] = field(default_factory=list)

    def __len__(self) -> int:
        return len(self.steps)

    def __iter__(self):
        return iter(self.steps)

    def extend(self, other: "MergeLog") -> None:
        self.steps.extend(other.steps)

    def count(self, reason: str) -> int:
        return sum(1 for s in self.steps if s.reason == reason)

    def pairs(self, reason: str | None = None) -> list[tuple[str, str]]:
        return [(s.kept_label, s.absorbed_label) for s in self.steps if reason in (None, s.reason)]

    def to_dict(self) -> dict:
        return {"steps": [asdict(s) | {"candidates": list(s.candidates)} for s in self.steps]}

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2) + "\n"

    def to_table(self) -> str:
        lines = ["#  reason       kept  absorbed  conc_before  conc_after  zones_before  zones_after"]
        for i, s in enumerate(self.steps, 1):
            lines.append(
                f"{i:<2} {s.reason:<12} {s.kept_label:<5} {s.absorbed_label:<9} "
                f"{s.concurrency_before:<12} {s.concurrency_after:<11} {s.zones_before:<13} {s.zones_after}"
            )
        return "\n".join(lines) + "\n"


def pairwise_set_merge(graph: DualGraph, l1: str, l2: str) -> DualGraph:
    """Merge two active sets; the lexicographically smaller label survives.

    The absorbed label is rewritten to the kept label in every zone label
    and zones that become identical are fused.  Edges are then re-derived
    for the coarser zone set: zones now one set apart become adjacent and
    connect edges that no longer minimise their difference are replaced.
    """
    if l1 == l2:
        raise DualGraphError(f"cannot merge set {l1!r} with itself")
    for lab in (l1, l2):
        if lab not in graph.provenance:
            raise DualGraphError(f"unknown set label {lab!r}")
    kept, absorbed = sorted((l1, l2))

    zones = {}
    for zid, z in graph.zones.items():
        if absorbed in z.label:
            z = Zone((z.label - {absorbed}) | {kept}, z.elements)
        zones[zid] = z
    prov = {k: v for k, v in graph.provenance.items() if k != absorbed}
    prov[kept] = graph.provenance[kept] | graph.provenance[absorbed]
    merged = DualGraph(zones, graph.edges, prov)

    by_label: dict[frozenset[str], list[int]] = {}
    for zid in sorted(merged.zones):
        by_label.setdefault(merged.label(zid), []).append(zid)
    for ids in by_label.values():
        for other in ids[1:]:
            merged = zone_merge(merged, ids[0], other)
    return derive_edges(merged)


def _best_merge(graph: DualGraph, labels: Iterable[str], objective: Callable[[DualGraph], float]):
    """Exhaustive scan of label pairs; least (objective, kept, absorbed) wins."""
    best = None
    for l1, l2 in itertools.combinations(sorted(set(labels)), 2):
        candidate = pairwise_set_merge(graph, l1, l2)
        key = (objective(candidate), l1, l2)
        if best is None or key < best[0]:
            best = (key, candidate)
    return best


def _step(graph, merged, pair, reason, candidates) -> MergeStep:
    return MergeStep(
        kept_label=pair[0],
        absorbed_label=pair[1],
        reason=reason,
        concurrency_before=concurrency(graph),
        concurrency_after=concurrency(merged),
        zones_before=len(graph.zones),
        zones_after=len(merged.zones),
        candidates=tuple(candidates),
    )


def nonplanar_to_planar(graph: DualGraph) -> tuple[DualGraph, MergeLog]:
    """Merge set pairs drawn from a Kuratowski subgraph until the graph is planar."""
    log = MergeLog()
    while not is_planar(graph)[0]:
        sub = kuratowski_subdivision(graph)
        candidates = sorted(set().union(*(graph.label(z) for z in sub.zones)))
        if len(candidates) < 2:
            candidates = graph.active_labels
        (score, l1, l2), merged = _best_merge(graph, candidates, concurrency)
        log.steps.append(_step(graph, merged, (l1, l2), "planarity", candidates))
        graph = merged
    return graph, log


def concurrency_removal(graph: DualGraph) -> tuple[DualGraph, MergeLog]:
    """Greedily merge the pair giving the lowest concurrency until none remains.

    When no pair lowers concurrency the best pair is applied anyway, so the
    active-label count keeps falling and the loop terminates.
    """
    log = MergeLog()
    while concurrency(graph) > 0:
        labels = graph.active_labels
        (score, l1, l2), merged = _best_merge(graph, labels, concurrency)
        log.steps.append(_step(graph, merged, (l1, l2), "concurrency", labels))
        graph = merged
    if not is_planar(graph)[0]:
        graph, extra = nonplanar_to_planar(graph)
        log.extend(extra)
        if concurrency(graph) > 0:
            graph, more = concurrency_removal(graph)
            log.extend(more)
    return graph, log


def euler_merge(system: SetSystem) -> tuple[DualGraph, MergeLog]:
    graph = initial_dual_graph(system)
    graph, log = nonplanar_to_planar(graph)
    graph, conc = concurrency_removal(graph)
    log.extend(conc)
    return graph, log


def set_genus_separation(graph: DualGraph, s: str) -> int:
    """Separation of the holes in set ``s``'s enclosed area.

    Removing the zones labeled with ``s`` leaves one component holding the
    outer zone plus one per hole.  Components are joined by a minimum
    spanning tree whose weights are the least label symmetric difference
    between their zones, minus one.
    """
    g = graph.to_networkx()
    g.remove_nodes_from([z for z in graph.zones if s in graph.label(z)])
    comps = [sorted(c) for c in nx.connected_components(g)]
    if len(comps) < 2:
        return 0
    meta = nx.Graph()
    meta.add_nodes_from(range(len(comps)))
    for i, j in itertools.combinations(range(len(comps)), 2):
        dist = min(len(graph.label(a) ^ graph.label(b)) for a in comps[i] for b in comps[j])
        meta.add_edge(i, j, weight=dist - 1)
    tree = nx.minimum_spanning_tree(meta)
    return int(sum(w for _, _, w in tree.edges(data="weight")))


def genus_separation(graph: DualGraph) -> int:
    return sum(set_genus_separation(graph, s) for s in graph.active_labels)


def genus_holes(graph: DualGraph) -> dict[str, int]:
    """Number of holes per active set (components left after removing its zones, minus one)."""
    out = {}
    for s in graph.active_labels:
        g = graph.to_networkx()
        g.remove_nodes_from([z for z in graph.zones if s in graph.label(z)])
        out[s] = nx.number_connected_components(g) - 1
    return out


def genus_removal(graph: DualGraph) -> tuple[DualGraph, MergeLog]:
    """Greedily merge the pair that leaves the least genus separation.

    Planarity and zero concurrency are restored after each step when a
    merge breaks them; those repair merges are logged under their own phase.
    """
    log = MergeLog()
    while genus_separation(graph) > 0:
        labels = graph.active_labels
        (score, l1, l2), merged = _best_merge(graph, labels, genus_separation)
        log.steps.append(_step(graph, merged, (l1, l2), "genus", labels))
        graph = merged
        if not is_planar(graph)[0] or concurrency(graph) > 0:
            graph, fix = nonplanar_to_planar(graph)
            graph, fix2 = concurrency_removal(graph)
            fix.extend(fix2)
            log.extend(fix)
    return graph, log
