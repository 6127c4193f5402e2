"""Frontier geometry: Pareto filtering, concave hulls, Hausdorff distance."""

from __future__ import annotations

import numpy as np

__all__ = ["pareto_filter", "upper_right_hull", "polyline_hausdorff", "frontier_value"]


def pareto_filter(points: np.ndarray) -> np.ndarray:
    """Keep points not dominated (<= in both coordinates) by another point."""
    pts = np.asarray(points, dtype=float)
    if pts.size == 0:
        return pts.reshape(0, 2)
    keep = []
    for i, p in enumerate(pts):
        dominated = np.any(
            (pts[:, 0] >= p[0] - 1e-15)
            & (pts[:, 1] >= p[1] - 1e-15)
            & ((pts[:, 0] > p[0] + 1e-15) | (pts[:, 1] > p[1] + 1e-15))
        )
        if not dominated:
            keep.append(i)
    return pts[keep]


def upper_right_hull(points: np.ndarray):
    """Upper-right concave hull of a point cloud.

    Returns (vertices sorted by x ascending, indices into `points`). The
    polyline is the frontier of the down-closed convex hull of the cloud.
    """
    pts = np.asarray(points, dtype=float)
    if pts.shape[0] == 0:
        return pts.reshape(0, 2), []
    order = np.lexsort((-pts[:, 1], pts[:, 0]))
    hull = []  # list of original indices
    for idx in order:
        x, y = pts[idx]
        if hull and abs(pts[hull[-1], 0] - x) <= 1e-15:
            continue  # same x: sorted so the first has the larger y
        while hull and pts[hull[-1], 1] <= y + 1e-15:
            hull.pop()  # dominated in y by a point further right
        while len(hull) >= 2:
            x1, y1 = pts[hull[-2]]
            x2, y2 = pts[hull[-1]]
            # Concavity: middle point must lie strictly above the chord.
            if (y2 - y1) * (x - x1) <= (y - y1) * (x2 - x1) + 1e-15:
                hull.pop()
            else:
                break
        hull.append(idx)
    return pts[hull], list(hull)


def upper_function_hull(points: np.ndarray) -> np.ndarray:
    """Concave majorant of a sampled function, as hull vertices sorted by x.

    Unlike `upper_right_hull` this keeps the x-extremes: the result is the
    least concave function above all sample points on their x-range.
    """
    pts = np.asarray(points, dtype=float)
    order = np.lexsort((-pts[:, 1], pts[:, 0]))
    hull = []
    for idx in order:
        x, y = pts[idx]
        if hull and abs(hull[-1][0] - x) <= 1e-15:
            continue  # duplicate x: the first kept has the larger y
        while len(hull) >= 2:
            x1, y1 = hull[-2]
            x2, y2 = hull[-1]
            if (y2 - y1) * (x - x1) <= (y - y1) * (x2 - x1) + 1e-15:
                hull.pop()  # middle point lies on or below the chord
            else:
                break
        hull.append((float(x), float(y)))
    return np.array(hull)


def _point_segment_dist(p: np.ndarray, a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Distances from points p (N,2) to segment [a, b]."""
    ab = b - a
    denom = float(ab @ ab)
    if denom <= 0.0:
        return np.linalg.norm(p - a, axis=1)
    t = np.clip((p - a) @ ab / denom, 0.0, 1.0)
    proj = a + t[:, None] * ab
    return np.linalg.norm(p - proj, axis=1)


def _sample_polyline(verts: np.ndarray, per_segment: int = 32) -> np.ndarray:
    if verts.shape[0] == 1:
        return verts
    samples = [verts[:1]]
    for a, b in zip(verts[:-1], verts[1:]):
        ts = np.linspace(0.0, 1.0, per_segment + 1)[1:]
        samples.append(a + ts[:, None] * (b - a))
    return np.vstack(samples)


def polyline_hausdorff(verts_a: np.ndarray, verts_b: np.ndarray) -> float:
    """Symmetric Hausdorff distance between two polylines."""
    va = np.asarray(verts_a, dtype=float)
    vb = np.asarray(verts_b, dtype=float)
    if va.size == 0 or vb.size == 0:
        return 0.0 if va.size == vb.size else np.inf

    def directed(p_verts, q_verts):
        pts = _sample_polyline(p_verts)
        if q_verts.shape[0] == 1:
            return float(np.max(np.linalg.norm(pts - q_verts[0], axis=1)))
        dists = np.full(pts.shape[0], np.inf)
        for a, b in zip(q_verts[:-1], q_verts[1:]):
            dists = np.minimum(dists, _point_segment_dist(pts, a, b))
        return float(np.max(dists))

    return max(directed(va, vb), directed(vb, va))


def frontier_value(verts: np.ndarray, x: float) -> float:
    """Max feasible second coordinate at first coordinate x under the frontier polyline."""
    v = np.asarray(verts, dtype=float)
    if v.size == 0:
        return -np.inf
    if x <= v[0, 0]:
        return float(v[0, 1])
    if x > v[-1, 0]:
        return -np.inf
    idx = int(np.searchsorted(v[:, 0], x, side="right")) - 1
    if idx >= v.shape[0] - 1:
        return float(v[-1, 1])
    x0, y0 = v[idx]
    x1, y1 = v[idx + 1]
    if x1 <= x0:
        return float(max(y0, y1))
    t = (x - x0) / (x1 - x0)
    return float(y0 + t * (y1 - y0))
