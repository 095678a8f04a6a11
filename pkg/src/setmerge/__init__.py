"""Simplify set systems by pairwise set merges until they admit a well-formed
Euler diagram, then lay out and render that diagram."""

from setmerge.sets import (
    AbstractDescription,
    SetSystem,
    SetSystemError,
    Zone,
    abstract_description,
    cover,
    merge_sets_in_system,
    parse_set_system,
)
from setmerge.dual import DualGraph, concurrency, initial_dual_graph
from setmerge.merge import MergeLog, MergeStep, euler_merge

__all__ = [
    "AbstractDescription",
    "DualGraph",
    "MergeLog",
    "MergeStep",
    "SetSystem",
    "SetSystemError",
    "Zone",
    "abstract_description",
    "concurrency",
    "cover",
    "euler_merge",
    "initial_dual_graph",
    "merge_sets_in_system",
    "parse_set_system",
]
