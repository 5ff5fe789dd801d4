"""Planar primitives: canonical convex hulls and norm-aware segment distances."""
from __future__ import annotations

import math

import numpy as np

TOL = 1e-12


def cross(o, a, b) -> float:
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def hull(points) -> np.ndarray:
    """Monotone-chain hull, CCW from the lexicographically smallest vertex.

    Duplicates (within 1e-12) and vertices turning by less than 1e-12 radians
    are dropped.
    Returns 1 row for a point, 2 rows (lexicographic order) for a segment.
    """
    pts = sorted(set(map(tuple, (np.asarray(points, dtype=float).reshape(-1, 2) + 0.0).tolist())))
    if len(pts) <= 1:
        return np.array(pts, dtype=float).reshape(-1, 2)
    # exact turn test in the chain; tolerances are applied to the finished ring only
    lower: list = []
    for p in pts:
        while len(lower) >= 2 and cross(lower[-2], lower[-1], p) <= 0.0:
            lower.pop()
        lower.append(p)
    upper: list = []
    for p in reversed(pts):
        while len(upper) >= 2 and cross(upper[-2], upper[-1], p) <= 0.0:
            upper.pop()
        upper.append(p)
    ring = _clean_ring(lower[:-1] + upper[:-1])
    if len(ring) <= 2:
        return _segment_hull(np.array(pts, dtype=float))
    k = ring.index(min(ring))
    return np.array(ring[k:] + ring[:k], dtype=float)


def convex_ring(points) -> np.ndarray:
    """Canonical form of a ring already in convex CCW order (e.g. a Minkowski edge merge)."""
    pts = (np.asarray(points, dtype=float).reshape(-1, 2) + 0.0).tolist()
    ring = _clean_ring([tuple(p) for p in pts])
    if len(ring) <= 2:
        return _segment_hull(np.array(pts, dtype=float))
    k = ring.index(min(ring))
    return np.array(ring[k:] + ring[:k], dtype=float)


def _clean_ring(ring: list) -> list:
    """Drop near-duplicate and near-collinear vertices until none are left."""

    def flat(prev, cur, nxt) -> bool:
        if abs(cur[0] - prev[0]) <= TOL and abs(cur[1] - prev[1]) <= TOL:
            return True
        # relative test: the sine of the turn, so tiny bodies keep their shape
        scale = math.hypot(cur[0] - prev[0], cur[1] - prev[1]) * math.hypot(nxt[0] - cur[0], nxt[1] - cur[1])
        return cross(prev, cur, nxt) <= TOL * scale

    changed = True
    while changed and len(ring) >= 3:
        changed = False
        out: list = []
        for i, cur in enumerate(ring):
            prev = out[-1] if out else ring[-1]
            nxt = ring[i + 1] if i + 1 < len(ring) else (out[0] if out else ring[0])
            if flat(prev, cur, nxt):
                changed = True
            else:
                out.append(cur)
        ring = out
    return ring


def _segment_hull(P: np.ndarray) -> np.ndarray:
    # collinear input: the x-order need not follow the line, so take the farthest pair
    i = int(np.argmax(np.sum((P - P[0]) ** 2, axis=1)))
    j = int(np.argmax(np.sum((P - P[i]) ** 2, axis=1)))
    if np.max(np.abs(P[i] - P[j])) <= TOL:
        return P[:1]
    return np.array(sorted([tuple(P[i]), tuple(P[j])]), dtype=float)


def edges(vertices: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Segment start points and direction vectors of a canonical vertex ring."""
    V = np.asarray(vertices, dtype=float)
    if len(V) == 1:
        return V, np.zeros_like(V)
    if len(V) == 2:
        return V[:1], V[1:] - V[:1]
    return V, np.concatenate([V[1:], V[:1]]) - V


def inside(vertices: np.ndarray, X: np.ndarray, tol: float = TOL) -> np.ndarray:
    """Membership of rows of X in a proper (>= 3 vertex) convex polygon."""
    A, D = edges(vertices)
    P = X[:, None, :] - A[None, :, :]
    c = D[None, :, 0] * P[..., 1] - D[None, :, 1] * P[..., 0]
    return np.all(c >= -tol, axis=1)


def _norm(v: np.ndarray, norm: str) -> np.ndarray:
    if norm == "l2":
        return np.sqrt(np.sum(v * v, axis=-1))
    if norm == "l1":
        return np.sum(np.abs(v), axis=-1)
    return np.max(np.abs(v), axis=-1)


def segment_distance(X: np.ndarray, A: np.ndarray, D: np.ndarray, norm: str) -> np.ndarray:
    """(N, K) distance from points X to segments A[k] + s D[k], s in [0, 1].

    l2 uses the clamped orthogonal projection.  For l1 and linf the distance
    along the segment is convex and piecewise linear in s, so its minimum sits
    at an endpoint or a breakpoint: a coordinate vanishing, or (linf) the two
    coordinates tying in absolute value.
    """
    P = X[:, None, :] - A[None, :, :]          # (N, K, 2)
    Dn = np.broadcast_to(D[None, :, :], P.shape)
    if norm == "l2":
        dd = np.sum(D * D, axis=-1)[None, :]
        with np.errstate(invalid="ignore", divide="ignore"):
            s = np.where(dd > 0, np.sum(P * Dn, axis=-1) / np.where(dd > 0, dd, 1.0), 0.0)
        s = np.clip(s, 0.0, 1.0)
        return _norm(P - s[..., None] * Dn, "l2")
    cands = [np.zeros(P.shape[:2]), np.ones(P.shape[:2])]
    num_den = [(P[..., 0], Dn[..., 0]), (P[..., 1], Dn[..., 1])]
    if norm == "linf":
        num_den += [(P[..., 0] - P[..., 1], Dn[..., 0] - Dn[..., 1]),
                    (P[..., 0] + P[..., 1], Dn[..., 0] + Dn[..., 1])]
    with np.errstate(over="ignore"):      # huge ratios are clipped to [0, 1] below
        for num, den in num_den:
            ok = den != 0
            cands.append(np.where(ok, num / np.where(ok, den, 1.0), 0.0))
    S = np.clip(np.stack(cands, axis=-1), 0.0, 1.0)      # (N, K, C)
    W = P[..., None, :] - S[..., None] * Dn[..., None, :]
    return np.min(_norm(W, norm), axis=-1)


def point_polygon_distance(X: np.ndarray, vertices: np.ndarray, norm: str) -> np.ndarray:
    X = np.asarray(X, dtype=float).reshape(-1, 2)
    A, D = edges(vertices)
    d = np.min(segment_distance(X, A, D, norm), axis=1)
    if len(vertices) >= 3:
        d = np.where(inside(vertices, X), 0.0, d)
    return d
