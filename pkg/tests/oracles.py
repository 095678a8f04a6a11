"""Independent reference implementations used by the tests.

Nothing here imports the package's algorithms; each oracle recomputes its
answer the slow, obvious way.
"""

from __future__ import annotations

import itertools
import random
import xml.etree.ElementTree as ET


# --- set systems -----------------------------------------------------------

def random_system(rng: random.Random, max_sets: int = 6, max_universe: int = 12) -> dict[str, frozenset[str]]:
    m = rng.randint(1, max_sets)
    n = rng.randint(1, max_universe)
    universe = [f"u{i}" for i in range(n)]
    sets = {}
    for k in range(m):
        size = rng.randint(1, n)
        sets["abcdefghijkl"[k]] = frozenset(rng.sample(universe, size))
    return sets


def dense_system(rng: random.Random, max_sets: int = 6, max_universe: int = 14) -> dict[str, frozenset[str]]:
    """Every element joins one to three sets, so zones differ by few labels."""
    m = rng.randint(3, max_sets)
    labels = "abcdefghijkl"[:m]
    members: dict[str, set[str]] = {k: set() for k in labels}
    for i in range(rng.randint(3, max_universe)):
        for k in rng.sample(labels, rng.randint(1, min(3, m))):
            members[k].add(f"u{i}")
    return {k: frozenset(v) for k, v in members.items() if v}


def random_corpus(count: int, seed: int = 2024, dense: bool = False, **kw) -> list[dict[str, frozenset[str]]]:
    rng = random.Random(seed)
    make = dense_system if dense else random_system
    return [make(rng, **kw) for _ in range(count)]


def brute_zones(sets: dict[str, frozenset[str]]) -> dict[frozenset[str], frozenset[str]]:
    """Group elements by the exact collection of sets holding them."""
    universe = set().union(*sets.values()) if sets else set()
    groups: dict[frozenset[str], set[str]] = {frozenset(): set()}
    for u in universe:
        key = frozenset(k for k, v in sets.items() if u in v)
        groups.setdefault(key, set()).add(u)
    return {k: frozenset(v) for k, v in groups.items()}


def brute_merge(sets: dict[str, frozenset[str]], a: str, b: str) -> dict[str, frozenset[str]]:
    keep, drop = sorted((a, b))
    out = {k: v for k, v in sets.items() if k != drop}
    out[keep] = sets[a] | sets[b]
    return out


# --- graphs ----------------------------------------------------------------

class UnionFind:
    def __init__(self, items):
        self.parent = {x: x for x in items}

    def find(self, x):
        while self.parent[x] != x:
            self.parent[x] = self.parent[self.parent[x]]
            x = self.parent[x]
        return x

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[ra] = rb

    def count(self) -> int:
        return len({self.find(x) for x in self.parent})


def component_count(nodes, edges) -> int:
    uf = UnionFind(nodes)
    for a, b in edges:
        if a in uf.parent and b in uf.parent:
            uf.union(a, b)
    return uf.count()


def _adjacency(nodes, edges):
    adj = {v: set() for v in nodes}
    for a, b in edges:
        if a != b:
            adj[a].add(b)
            adj[b].add(a)
    return adj


def _disjoint_paths(adj, pairs, free, used=frozenset()):
    """Backtracking: internally disjoint paths for every pair, interiors from ``free``."""
    if not pairs:
        return True
    (s, t), rest = pairs[0], pairs[1:]

    def extend(v, seen):
        for w in adj[v]:
            if w == t and not (v == s and False):
                if _disjoint_paths(adj, rest, free, used | seen):
                    return True
            elif w in free and w not in used and w not in seen:
                if extend(w, seen | {w}):
                    return True
        return False

    return extend(s, frozenset())


def has_kuratowski_subdivision(nodes, edges) -> bool:
    """Exhaustive search for a subdivided K5 or K3,3 (intended for <= 9 vertices)."""
    adj = _adjacency(nodes, edges)
    nodes = sorted(adj)
    deg4 = [v for v in nodes if len(adj[v]) >= 4]
    for branch in itertools.combinations(deg4, 5):
        free = frozenset(v for v in nodes if v not in branch)
        pairs = list(itertools.combinations(branch, 2))
        if _disjoint_paths(adj, pairs, free):
            return True
    deg3 = [v for v in nodes if len(adj[v]) >= 3]
    for six in itertools.combinations(deg3, 6):
        first = six[0]
        for side in itertools.combinations(six[1:], 2):
            left = (first,) + side
            right = tuple(v for v in six if v not in left)
            free = frozenset(v for v in nodes if v not in six)
            pairs = [(x, y) for x in left for y in right]
            if _disjoint_paths(adj, pairs, free):
                return True
    return False


def brute_planar(nodes, edges) -> bool:
    return not has_kuratowski_subdivision(nodes, edges)


# --- geometry --------------------------------------------------------------

def _orient(a, b, c) -> float:
    return (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0])


def segments_touch(p1, p2, q1, q2) -> bool:
    """Closed-segment intersection test."""
    d1, d2 = _orient(q1, q2, p1), _orient(q1, q2, p2)
    d3, d4 = _orient(p1, p2, q1), _orient(p1, p2, q2)
    if ((d1 > 0) != (d2 > 0)) and d1 != 0 and d2 != 0 and ((d3 > 0) != (d4 > 0)) and d3 != 0 and d4 != 0:
        return True

    def on(a, b, c):
        return min(a[0], b[0]) <= c[0] <= max(a[0], b[0]) and min(a[1], b[1]) <= c[1] <= max(a[1], b[1])

    return ((d1 == 0 and on(q1, q2, p1)) or (d2 == 0 and on(q1, q2, p2))
            or (d3 == 0 and on(p1, p2, q1)) or (d4 == 0 and on(p1, p2, q2)))


def edge_crossings(points: dict, edges) -> int:
    """Pairs of straight edges meeting anywhere other than a shared endpoint."""
    edges = list(edges)
    n = 0
    for (a, b), (c, d) in itertools.combinations(edges, 2):
        if {a, b} & {c, d}:
            continue
        if segments_touch(points[a], points[b], points[c], points[d]):
            n += 1
    return n


def inside(pt, polygons) -> bool:
    """Even-odd point-in-polygon over several closed polylines."""
    x, y = pt
    result = False
    for poly in polygons:
        n = len(poly)
        for i in range(n):
            (x1, y1), (x2, y2) = poly[i], poly[(i + 1) % n]
            if (y1 > y) != (y2 > y) and x < x1 + (y - y1) * (x2 - x1) / (y2 - y1):
                result = not result
    return result


def polyline_edge_crossings(poly, a, b, eps: float = 1e-7) -> int:
    """Times a closed polyline passes from one side of segment ab to the other.

    Points lying on the segment (within ``eps`` relative to its length) are
    contact points; a contact run counts as a crossing when the polyline
    arrives from one side and leaves on the other.
    """
    ax, ay = a
    bx, by = b
    L2 = (bx - ax) ** 2 + (by - ay) ** 2
    L = L2 ** 0.5

    def side(p):
        o = _orient(a, b, p) / L
        t = ((p[0] - ax) * (bx - ax) + (p[1] - ay) * (by - ay)) / L2
        if abs(o) <= eps * L and -1e-9 <= t <= 1 + 1e-9:
            return 0
        return 1 if o > 0 else -1

    sides = [side(p) for p in poly]
    n = len(poly)
    if all(v == 0 for v in sides):
        return 0
    start = next(i for i in range(n) if sides[i] != 0)
    count, last, last_i, touched = 0, sides[start], start, False
    for step in range(1, n + 1):
        j = (start + step) % n
        if sides[j] == 0:
            touched = True
            continue
        if sides[j] != last:
            if touched or segments_touch(poly[last_i], poly[j], a, b):
                count += 1
        last, last_i, touched = sides[j], j, False
    return count


def simple_polygon(poly) -> bool:
    n = len(poly)
    if n < 3:
        return False
    for i in range(n):
        for j in range(i + 1, n):
            if j == i + 1 or (i == 0 and j == n - 1):
                continue
            if segments_touch(poly[i], poly[(i + 1) % n], poly[j], poly[(j + 1) % n]):
                return False
    return True


# --- svg ---------------------------------------------------------------------

SVG_NS = "{http://www.w3.org/2000/svg}"


def lint_svg(text: str) -> list[str]:
    """Well-formedness plus closed-path checks; returns problems found."""
    problems = []
    try:
        root = ET.fromstring(text.encode("utf-8"))
    except ET.ParseError as exc:
        return [f"not well-formed: {exc}"]
    if root.tag != SVG_NS + "svg":
        problems.append(f"root element is {root.tag}")
    for path in root.iter(SVG_NS + "path"):
        d = path.get("d", "").strip()
        subpaths = [s for s in d.split("M") if s.strip()]
        if not subpaths:
            problems.append("empty path")
        for sp in subpaths:
            if not sp.strip().endswith("Z"):
                problems.append(f"open subpath in {path.get('id')}")
    return problems


def svg_paths(text: str) -> list:
    root = ET.fromstring(text.encode("utf-8"))
    return list(root.iter(SVG_NS + "path"))
