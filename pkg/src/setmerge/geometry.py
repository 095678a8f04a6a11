"""Small planar geometry helpers shared by layout and curve code."""

from __future__ import annotations

import numpy as np


def orient(a, b, c) -> float:
    return float((b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0]))


def segments_intersect(p1, p2, q1, q2, eps: float = 1e-12) -> bool:
    """True when the closed segments share a point."""
    d1 = orient(q1, q2, p1)
    d2 = orient(q1, q2, p2)
    d3 = orient(p1, p2, q1)
    d4 = orient(p1, p2, q2)
    if ((d1 > eps and d2 < -eps) or (d1 < -eps and d2 > eps)) and (
        (d3 > eps and d4 < -eps) or (d3 < -eps and d4 > eps)
    ):
        return True

    def on_seg(a, b, c, d):
        return abs(d) <= eps and min(a[0], b[0]) - eps <= c[0] <= max(a[0], b[0]) + eps and \
            min(a[1], b[1]) - eps <= c[1] <= max(a[1], b[1]) + eps

    return (on_seg(q1, q2, p1, d1) or on_seg(q1, q2, p2, d2)
            or on_seg(p1, p2, q1, d3) or on_seg(p1, p2, q2, d4))


def proper_crossings(a: np.ndarray, b: np.ndarray, C: np.ndarray, D: np.ndarray) -> np.ndarray:
    """Vectorised strict crossing test of segment ab against segments C[i]D[i]."""
    def orient_v(P, Q, R):
        return (Q[..., 0] - P[..., 0]) * (R[..., 1] - P[..., 1]) - (Q[..., 1] - P[..., 1]) * (R[..., 0] - P[..., 0])

    d1 = orient_v(C, D, a[None, :])
    d2 = orient_v(C, D, b[None, :])
    d3 = orient_v(a[None, :], b[None, :], C)
    d4 = orient_v(a[None, :], b[None, :], D)
    return (d1 * d2 < 0) & (d3 * d4 < 0)


def point_in_polygon(pt, poly) -> bool:
    """Even-odd ray casting."""
    x, y = float(pt[0]), float(pt[1])
    inside = False
    n = len(poly)
    for i in range(n):
        x1, y1 = poly[i]
        x2, y2 = poly[(i + 1) % n]
        if (y1 > y) != (y2 > y):
            xc = x1 + (y - y1) * (x2 - x1) / (y2 - y1)
            if xc > x:
                inside = not inside
    return inside


def point_in_components(pt, components) -> bool:
    inside = False
    for poly in components:
        if point_in_polygon(pt, poly):
            inside = not inside
    return inside


def point_in_triangle(p, a, b, c) -> bool:
    d1, d2, d3 = orient(a, b, p), orient(b, c, p), orient(c, a, p)
    neg = d1 < 0 or d2 < 0 or d3 < 0
    pos = d1 > 0 or d2 > 0 or d3 > 0
    return not (neg and pos)


def polyline_length(points, closed: bool = True) -> float:
    P = np.asarray(points, float)
    seg = np.diff(P, axis=0)
    total = float(np.linalg.norm(seg, axis=1).sum())
    if closed and len(P) > 1:
        total += float(np.linalg.norm(P[0] - P[-1]))
    return total


def is_simple_polygon(points) -> bool:
    P = [np.asarray(p, float) for p in points]
    n = len(P)
    if n < 3:
        return False
    for i in range(n):
        a, b = P[i], P[(i + 1) % n]
        for j in range(i + 1, n):
            if j == i or (j + 1) % n == i or j == (i + 1) % n:
                continue
            if segments_intersect(a, b, P[j], P[(j + 1) % n]):
                return False
    return True


def polygon_centroid(points) -> np.ndarray:
    P = np.asarray(points, float)
    x, y = P[:, 0], P[:, 1]
    xs, ys = np.roll(x, -1), np.roll(y, -1)
    cross = x * ys - xs * y
    area = cross.sum() / 2.0
    if abs(area) < 1e-12:
        return P.mean(axis=0)
    cx = ((x + xs) * cross).sum() / (6 * area)
    cy = ((y + ys) * cross).sum() / (6 * area)
    return np.array([cx, cy])
