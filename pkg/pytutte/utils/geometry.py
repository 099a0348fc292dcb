"""Planar geometry predicates on numpy arrays.

Points are arrays of shape ``(2,)`` or ``(k, 2)``; polygons are ``(n, 2)`` arrays listed in boundary order and
implicitly closed (the first point is not repeated).
"""

import math

import numpy as np
from scipy.spatial.distance import pdist


def is_left(p0: np.ndarray, p1: np.ndarray, p2: np.ndarray) -> np.ndarray:
    """
    Test whether ``p2`` is left of, on, or right of the infinite line through ``p0`` and ``p1``.

    Returns:
        Twice the signed area of the triangle: >0 left, 0 on the line, <0 right. Broadcasts over leading axes.

    """
    p0, p1, p2 = np.asarray(p0, dtype=float), np.asarray(p1, dtype=float), np.asarray(p2, dtype=float)
    return (p1[..., 0] - p0[..., 0]) * (p2[..., 1] - p0[..., 1]) - (p2[..., 0] - p0[..., 0]) * (p1[..., 1] - p0[..., 1])


def line_distance(p0: np.ndarray, p1: np.ndarray, p2: np.ndarray) -> np.ndarray:
    """Signed distance of ``p2`` from the line through ``p0`` and ``p1`` (positive on the left)."""
    p0, p1, p2 = np.asarray(p0, dtype=float), np.asarray(p1, dtype=float), np.asarray(p2, dtype=float)
    span = p1 - p0
    length = np.hypot(span[..., 0], span[..., 1])
    offset = p2 - p0
    cross = is_left(p0, p1, p2)
    safe = np.where(length > 0, length, 1.0)
    return np.where(length > 0, cross / safe, np.hypot(offset[..., 0], offset[..., 1]))


def orientation(p0: np.ndarray, p1: np.ndarray, p2: np.ndarray, tau: float) -> np.ndarray:
    """Orientation sign (-1, 0, 1) of ``p2`` relative to the directed line ``p0 -> p1``, zero within ``tau``."""
    distance = line_distance(p0, p1, p2)
    return np.where(np.abs(distance) <= tau, 0, np.sign(distance)).astype(int)


def point_segment_distance(points: np.ndarray, a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """
    Euclidean distance from points to closed segments, broadcasting over leading axes.

    Pass ``points[:, None]`` against ``a[None]`` and ``b[None]`` to get a full distance matrix.

    Args:
        points: Array ``(..., 2)``.
        a: Segment start points ``(..., 2)``.
        b: Segment end points ``(..., 2)``.

    Returns:
        np.ndarray: Distances of the broadcast leading shape.

    """
    points, a, b = np.asarray(points, dtype=float), np.asarray(a, dtype=float), np.asarray(b, dtype=float)
    ab = b - a
    ap = points - a
    denom = (ab * ab).sum(axis=-1)
    t = (ap * ab).sum(axis=-1) / np.where(denom > 0, denom, 1.0)
    t = np.clip(np.where(denom > 0, t, 0.0), 0.0, 1.0)
    closest = a + t[..., None] * ab
    offset = points - closest
    return np.hypot(offset[..., 0], offset[..., 1])


def segment_distance(a: np.ndarray, b: np.ndarray, c: np.ndarray, d: np.ndarray) -> np.ndarray:
    """
    Minimum distance between segments ``ab`` and ``cd`` pairwise along the first axis.

    Proper crossings (strict sign change on both segments) have distance zero.
    """
    a, b, c, d = (np.asarray(x, dtype=float).reshape(-1, 2) for x in (a, b, c, d))
    distances = np.stack(
        [
            point_segment_distance(a, c, d),
            point_segment_distance(b, c, d),
            point_segment_distance(c, a, b),
            point_segment_distance(d, a, b),
        ]
    ).min(axis=0)
    crossing = (np.sign(is_left(a, b, c)) * np.sign(is_left(a, b, d)) < 0) & (
        np.sign(is_left(c, d, a)) * np.sign(is_left(c, d, b)) < 0
    )
    return np.where(crossing, 0.0, distances)


def segments_intersect_exact(a: np.ndarray, b: np.ndarray, c: np.ndarray, d: np.ndarray) -> np.ndarray:
    """Closed segment intersection using raw floating point signs, no tolerance."""
    a, b, c, d = (np.asarray(x, dtype=float).reshape(-1, 2) for x in (a, b, c, d))
    o1, o2 = np.sign(is_left(a, b, c)), np.sign(is_left(a, b, d))
    o3, o4 = np.sign(is_left(c, d, a)), np.sign(is_left(c, d, b))
    proper = (o1 * o2 <= 0) & (o3 * o4 <= 0)
    collinear = (o1 == 0) & (o2 == 0) & (o3 == 0) & (o4 == 0)
    lo_ab, hi_ab = np.minimum(a, b), np.maximum(a, b)
    lo_cd, hi_cd = np.minimum(c, d), np.maximum(c, d)
    boxes = np.all((lo_ab <= hi_cd) & (lo_cd <= hi_ab), axis=1)
    return np.where(collinear, boxes, proper)


def collinear_overlap(a: np.ndarray, b: np.ndarray, c: np.ndarray, d: np.ndarray) -> float:
    """Length of the common part of two collinear segments projected on the direction of the longer one."""
    a, b, c, d = (np.asarray(x, dtype=float) for x in (a, b, c, d))
    direction = b - a if np.dot(b - a, b - a) >= np.dot(d - c, d - c) else d - c
    norm = float(np.hypot(*direction))
    if norm == 0.0:
        return 0.0
    unit = direction / norm
    s = sorted((float(np.dot(a, unit)), float(np.dot(b, unit))))
    t = sorted((float(np.dot(c, unit)), float(np.dot(d, unit))))
    return max(0.0, min(s[1], t[1]) - max(s[0], t[0]))


def signed_area(polygon: np.ndarray) -> float:
    """Shoelace signed area; positive for counterclockwise polygons."""
    polygon = np.asarray(polygon, dtype=float).reshape(-1, 2)
    if len(polygon) < 3:
        return 0.0
    x, y = polygon[:, 0], polygon[:, 1]
    return 0.5 * float(np.dot(x, np.roll(y, -1)) - np.dot(np.roll(x, -1), y))


def crossing_number(points: np.ndarray, polygon: np.ndarray) -> np.ndarray:
    """
    Crossing number point-in-polygon test, vectorised over points.

    Counts crossings of the ray from each point towards +x with the polygon edges; odd means inside.

    Args:
        points: Array ``(k, 2)``.
        polygon: Array ``(n, 2)``, implicitly closed.

    Returns:
        np.ndarray: Boolean mask of shape ``(k,)``.

    """
    points = np.asarray(points, dtype=float).reshape(-1, 2)
    polygon = np.asarray(polygon, dtype=float).reshape(-1, 2)
    if len(polygon) < 3:
        return np.zeros(len(points), dtype=bool)
    v0 = polygon
    v1 = np.roll(polygon, -1, axis=0)
    px, py = points[:, 0:1], points[:, 1:2]
    upward = (v0[None, :, 1] <= py) & (v1[None, :, 1] > py)
    downward = (v0[None, :, 1] > py) & (v1[None, :, 1] <= py)
    spans = upward | downward
    dy = v1[:, 1] - v0[:, 1]
    with np.errstate(divide="ignore", invalid="ignore"):
        vt = (py - v0[None, :, 1]) / np.where(dy != 0, dy, 1.0)[None, :]
    x_cross = v0[None, :, 0] + vt * (v1[None, :, 0] - v0[None, :, 0])
    crossings = spans & (px < x_cross)
    return (crossings.sum(axis=1) % 2).astype(bool)


def diameter(points: np.ndarray) -> float:
    """Largest pairwise distance; zero for fewer than two points."""
    points = np.asarray(points, dtype=float).reshape(-1, 2)
    if len(points) < 2:
        return 0.0
    return float(pdist(points).max())


def turning_angles(polygon: np.ndarray) -> np.ndarray:
    """Signed exterior angle at every corner of a closed polygon, in ``(-pi, pi]``."""
    polygon = np.asarray(polygon, dtype=float).reshape(-1, 2)
    incoming = polygon - np.roll(polygon, 1, axis=0)
    outgoing = np.roll(polygon, -1, axis=0) - polygon
    cross = incoming[:, 0] * outgoing[:, 1] - incoming[:, 1] * outgoing[:, 0]
    dot = np.einsum("ij,ij->i", incoming, outgoing)
    return np.arctan2(cross, dot)


def total_turning(polygon: np.ndarray) -> float:
    """Sum of signed exterior angles; ``+-2*pi`` for a simple convex polygon."""
    return float(turning_angles(polygon).sum())


def is_full_turn(total: float, tolerance: float = 1e-6) -> bool:
    """Whether a total turning equals one full turn in either direction."""
    return math.isclose(abs(total), 2 * math.pi, abs_tol=tolerance)
