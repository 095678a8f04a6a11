"""Set systems, element covers and zone partitions."""

from __future__ import annotations

import json
from collections import defaultdict
from dataclasses import dataclass, field
from typing import Iterable, Mapping


class SetSystemError(ValueError):
    """Raised for malformed set systems or invalid queries against one."""


@dataclass(frozen=True)
class Zone:
    label: frozenset[str]
    elements: frozenset[str] = frozenset()

    def name(self) -> str:
        return label_string(self.label)


def label_string(label: Iterable[str]) -> str:
    """Canonical sort key / display form of a zone or edge label.

    Single-character labels are concatenated ("bde"), otherwise comma-joined.
    The empty label renders as "".
    """
    parts = sorted(label)
    if all(len(p) == 1 for p in parts):
        return "".join(parts)
    return ",".join(parts)


@dataclass(frozen=True)
class SetSystem:
    """A labeled family of nonempty element sets.

    Labels are ordered lexicographically; the universe is the union of all sets.
    """

    sets: Mapping[str, frozenset[str]]
    universe: frozenset[str] = field(init=False)

    def __post_init__(self) -> None:
        if not self.sets:
            raise SetSystemError("set system has no sets")
        frozen = {}
        for label in sorted(self.sets):
            elems = frozenset(self.sets[label])
            if not label:
                raise SetSystemError("empty set label")
            if not elems:
                raise SetSystemError(f"set {label!r} is empty")
            frozen[label] = elems
        object.__setattr__(self, "sets", frozen)
        object.__setattr__(self, "universe", frozenset().union(*frozen.values()))

    @property
    def labels(self) -> list[str]:
        return list(self.sets)

    def __len__(self) -> int:
        return len(self.sets)

    def to_lines(self) -> str:
        out = []
        for label, elems in self.sets.items():
            out.append(f"{label}: {', '.join(sorted(elems))}")
        return "\n".join(out) + "\n"

    def to_structured(self) -> str:
        doc = {"sets": [{"label": k, "elements": sorted(v)} for k, v in self.sets.items()]}
        return json.dumps(doc, indent=2, ensure_ascii=False) + "\n"


def _from_pairs(pairs: Iterable[tuple[str, list[str]]]) -> SetSystem:
    sets: dict[str, frozenset[str]] = {}
    for label, elems in pairs:
        label = label.strip()
        if label in sets:
            raise SetSystemError(f"duplicate set label {label!r}")
        cleaned = frozenset(e.strip() for e in elems if e.strip())
        if not cleaned:
            raise SetSystemError(f"set {label!r} is empty")
        sets[label] = cleaned
    if not sets:
        raise SetSystemError("document contains no sets")
    return SetSystem(sets)


def _parse_lines(text: str) -> SetSystem:
    pairs = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if ":" not in line:
            raise SetSystemError(f"line {lineno}: expected 'label: elem, ...'")
        label, rest = line.split(":", 1)
        if not label.strip():
            raise SetSystemError(f"line {lineno}: missing set label")
        pairs.append((label, rest.split(",")))
    return _from_pairs(pairs)


def _parse_structured(text: str) -> SetSystem:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SetSystemError(f"invalid structured document: {exc}") from exc
    if not isinstance(doc, dict) or not isinstance(doc.get("sets"), list):
        raise SetSystemError("structured document needs a top-level 'sets' array")
    pairs = []
    for rec in doc["sets"]:
        if not isinstance(rec, dict) or "label" not in rec or "elements" not in rec:
            raise SetSystemError("each set record needs 'label' and 'elements'")
        pairs.append((str(rec["label"]), [str(e) for e in rec["elements"]]))
    return _from_pairs(pairs)


def parse_set_system(document: str, fmt: str | None = None) -> SetSystem:
    """Parse a set system from text.

    ``fmt`` is ``"lines"`` (``label: e1, e2`` per line, ``#`` comments) or
    ``"structured"`` (JSON with a ``sets`` array of ``{label, elements}``).
    When omitted, a document starting with ``{`` is taken as structured.
    """
    if not document.strip():
        raise SetSystemError("empty document")
    if fmt is None:
        fmt = "structured" if document.lstrip().startswith("{") else "lines"
    if fmt == "lines":
        return _parse_lines(document)
    if fmt == "structured":
        return _parse_structured(document)
    raise SetSystemError(f"unknown format {fmt!r}")


def cover(system: SetSystem, u: str) -> frozenset[str]:
    """Labels of all sets containing element ``u``."""
    if u not in system.universe:
        raise SetSystemError(f"unknown element {u!r}")
    return frozenset(label for label, elems in system.sets.items() if u in elems)


@dataclass(frozen=True)
class AbstractDescription:
    zones: tuple[Zone, ...]

    @property
    def labels(self) -> frozenset[frozenset[str]]:
        return frozenset(z.label for z in self.zones)

    def zone(self, label: Iterable[str]) -> Zone:
        key = frozenset(label)
        for z in self.zones:
            if z.label == key:
                return z
        raise KeyError(label_string(key))

    def __len__(self) -> int:
        return len(self.zones)


def zone_partition(sets: Mapping[str, frozenset[str]]) -> dict[frozenset[str], frozenset[str]]:
    """Group elements by exact cover; always includes the empty (outer) zone."""
    groups: dict[frozenset[str], set[str]] = defaultdict(set)
    membership: dict[str, set[str]] = defaultdict(set)
    for label, elems in sets.items():
        for e in elems:
            membership[e].add(label)
    for e, labels in membership.items():
        groups[frozenset(labels)].add(e)
    out = {frozenset(): frozenset()}
    for label, elems in groups.items():
        out[label] = frozenset(elems)
    return out


def abstract_description(system: SetSystem) -> AbstractDescription:
    zones = zone_partition(system.sets)
    ordered = sorted(zones, key=lambda lab: (len(lab), label_string(lab)))
    return AbstractDescription(tuple(Zone(lab, zones[lab]) for lab in ordered))


def merge_sets_in_system(system: SetSystem, l1: str, l2: str) -> SetSystem:
    """Replace sets ``l1`` and ``l2`` by their union, kept under the smaller label."""
    if l1 == l2:
        raise SetSystemError(f"cannot merge set {l1!r} with itself")
    for lab in (l1, l2):
        if lab not in system.sets:
            raise SetSystemError(f"unknown set label {lab!r}")
    kept, absorbed = sorted((l1, l2))
    sets = {k: v for k, v in system.sets.items() if k != absorbed}
    sets[kept] = system.sets[kept] | system.sets[absorbed]
    return SetSystem(sets)
