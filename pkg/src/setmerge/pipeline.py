"""End-to-end runs: simplification stages, drawing, and per-instance statistics."""

from __future__ import annotations

from dataclasses import asdict, dataclass, fields

from setmerge.curves import Diagram, SmoothConfig, route_curves, smooth_curves
from setmerge.dual import DualGraph, concurrency, initial_dual_graph
from setmerge.layout import RefineConfig, planar_layout, refine_layout
from setmerge.merge import MergeLog, concurrency_removal, genus_removal, genus_separation, nonplanar_to_planar
from setmerge.planarity import is_planar
from setmerge.sets import SetSystem
from setmerge.svg import emit_dual_svg, emit_svg

STAGES = ("initial", "planar", "final")


@dataclass
class Simplification:
    initial: DualGraph
    planar: DualGraph
    final: DualGraph
    log: MergeLog

    def stage(self, name: str) -> DualGraph:
        if name not in STAGES:
            raise ValueError(f"unknown stage {name!r}")
        return getattr(self, name)


def simplify(system: SetSystem, genus: bool = False) -> Simplification:
    initial = initial_dual_graph(system)
    planar, log = nonplanar_to_planar(initial)
    final, conc = concurrency_removal(planar)
    log.extend(conc)
    if genus:
        final, extra = genus_removal(final)
        log.extend(extra)
    return Simplification(initial=initial, planar=planar, final=final, log=log)


def draw(graph: DualGraph, seed: int = 0, refine_iterations: int = 500,
         smooth_iterations: int = 100) -> Diagram:
    """Layout, route and smooth; graphs with concurrency get side-by-side crossings."""
    layout = planar_layout(graph)
    if refine_iterations > 0:
        layout = refine_layout(graph, layout, RefineConfig(iterations=refine_iterations, seed=seed))
    diagram = route_curves(graph, layout, allow_concurrency=concurrency(graph) > 0)
    if smooth_iterations > 0:
        diagram = smooth_curves(diagram, SmoothConfig(iterations=smooth_iterations))
    return diagram


def render(graph: DualGraph, seed: int = 0, titles: dict[str, str] | None = None,
           show_dual: bool = False, width: float = 800.0, refine_iterations: int = 500,
           smooth_iterations: int = 100) -> str:
    """SVG for any stage; a nonplanar dual is drawn as a plain graph."""
    if not is_planar(graph)[0]:
        return emit_dual_svg(graph, seed=seed, titles=titles, width=width)
    diagram = draw(graph, seed, refine_iterations, smooth_iterations)
    return emit_svg(diagram, titles=titles, show_dual=show_dual, width=width)


def summary_line(result: Simplification) -> str:
    return (f"planarity={result.log.count('planarity')} "
            f"concurrency={result.log.count('concurrency')} zones={len(result.final.zones)}")


@dataclass
class RunStats:
    name: str
    n_sets: int
    n_zones: int
    planarity_merges: int
    concurrency_merges: int
    genus_merges: int
    total_merges: int
    final_concurrency: int
    final_genus_separation: int

    @classmethod
    def header(cls) -> list[str]:
        return [f.name for f in fields(cls)]

    def row(self) -> list:
        return list(asdict(self).values())


def run_stats(name: str, system: SetSystem, genus: bool = False) -> RunStats:
    result = simplify(system, genus=genus)
    p, c, g = (result.log.count(r) for r in ("planarity", "concurrency", "genus"))
    return RunStats(
        name=name,
        n_sets=len(system.labels),
        n_zones=result.initial.n_nonempty_zones(),
        planarity_merges=p,
        concurrency_merges=c,
        genus_merges=g,
        total_merges=p + c + g,
        final_concurrency=concurrency(result.final),
        final_genus_separation=genus_separation(result.final),
    )


AGGREGATES = {
    "mean_sets": "n_sets",
    "mean_zones": "n_zones",
    "mean_planarity": "planarity_merges",
    "mean_concurrency_merges": "concurrency_merges",
    "mean_total": "total_merges",
}


def aggregate(rows: list[RunStats]) -> dict[str, float]:
    if not rows:
        return {k: 0.0 for k in AGGREGATES}
    return {k: sum(getattr(r, f) for r in rows) / len(rows) for k, f in AGGREGATES.items()}
