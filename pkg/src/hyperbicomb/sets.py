"""Elements of the hyperspaces: finite compact sets and convex bodies.

``FiniteCompactSet`` lives in K(X).  The convex bodies (``Interval`` on the
line, ``Polygon`` in the plane, ``Subtree`` in an R-tree) live in CB(X).  All
are immutable and stored in a canonical form, so equal sets compare equal.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Union

import numpy as np

from . import planar
from .spaces import TOL, NormedSpace, RTree, Space


def dedup_rows(space: Space, arr: np.ndarray, tol: float = TOL) -> np.ndarray:
    """Drop rows within ``tol`` of an earlier row, then sort lexicographically."""
    arr = space.canonical(arr)
    if len(arr) > 1:
        D = space.pairwise(arr, arr)
        keep = ~np.any(np.tril(D <= tol, k=-1), axis=1)
        arr = arr[keep]
    order = np.lexsort(arr.T[::-1])
    return arr[order]


class FiniteCompactSet:
    """Nonempty finite subset of a base space, deduplicated under 1e-12."""

    __slots__ = ("space", "points")

    def __init__(self, space: Space, points):
        arr = space.as_array(points)
        if len(arr) == 0:
            raise ValueError("a compact set must be nonempty")
        arr = dedup_rows(space, arr)
        arr.setflags(write=False)
        object.__setattr__(self, "space", space)
        object.__setattr__(self, "points", arr)

    def __setattr__(self, name, value):
        raise AttributeError("FiniteCompactSet is immutable")

    def __len__(self):
        return len(self.points)

    def __eq__(self, other):
        return (isinstance(other, FiniteCompactSet) and other.space == self.space
                and other.points.shape == self.points.shape and np.array_equal(other.points, self.points))

    def __hash__(self):
        return hash((self.space, self.points.tobytes()))

    def __repr__(self):
        if isinstance(self.space, RTree):
            body = ", ".join(f"({self.space.edges[int(k)].id}, {r:g})" for k, r in self.points)
        elif self.space.dim == 1:
            body = ", ".join(f"{x:g}" for x in self.points[:, 0])
        else:
            body = ", ".join(str(tuple(float(c) for c in p)) for p in self.points)
        return f"FiniteCompactSet({{{body}}})"

    def as_list(self) -> list:
        if isinstance(self.space, RTree):
            return self.space.to_points(self.points)
        if self.space.dim == 1:
            return [float(x) for x in self.points[:, 0]]
        return [tuple(float(c) for c in p) for p in self.points]

    def diameter(self) -> float:
        return float(np.max(self.space.pairwise(self.points, self.points)))

    def same_as(self, other: "FiniteCompactSet", tol: float = TOL) -> bool:
        """Set equality up to ``tol`` in the base metric."""
        D = self.space.pairwise(self.points, other.points)
        return bool(np.all(D.min(axis=1) <= tol) and np.all(D.min(axis=0) <= tol))


@dataclass(frozen=True)
class Interval:
    lo: float
    hi: float

    def __post_init__(self):
        lo, hi = float(self.lo) + 0.0, float(self.hi) + 0.0
        if not (np.isfinite(lo) and np.isfinite(hi)):
            raise ValueError("interval endpoints must be finite")
        if lo > hi:
            raise ValueError(f"interval needs lo <= hi, got [{lo}, {hi}]")
        object.__setattr__(self, "lo", lo)
        object.__setattr__(self, "hi", hi)

    @classmethod
    def point(cls, x: float) -> "Interval":
        return cls(x, x)

    def extreme_points(self) -> np.ndarray:
        if self.lo == self.hi:
            return np.array([[self.lo]])
        return np.array([[self.lo], [self.hi]])

    def diameter(self) -> float:
        return self.hi - self.lo


@dataclass(frozen=True, eq=False)
class Polygon:
    """Convex polygon as a canonical CCW vertex ring.

    One vertex is a point and two vertices a segment.  The first vertex is the
    lexicographically smallest and no vertex is collinear with its neighbours.
    """

    vertices: tuple

    def __post_init__(self):
        V = np.asarray(self.vertices, dtype=float).reshape(-1, 2)
        if len(V) == 0:
            raise ValueError("a polygon needs at least one vertex")
        if not np.all(np.isfinite(V)):
            raise ValueError("polygon vertices must be finite")
        H = planar.hull(V)
        H.setflags(write=False)
        object.__setattr__(self, "vertices", tuple(map(tuple, H.tolist())))
        object.__setattr__(self, "_array", H)

    @classmethod
    def _from_convex_ring(cls, V: np.ndarray) -> "Polygon":
        # skips the hull: V must already run CCW around a convex polygon
        H = planar.convex_ring(V)
        H.setflags(write=False)
        poly = object.__new__(cls)
        object.__setattr__(poly, "vertices", tuple(map(tuple, H.tolist())))
        object.__setattr__(poly, "_array", H)
        return poly

    @classmethod
    def from_vertices(cls, vertices, strict: bool = True) -> "Polygon":
        """Build from a vertex list; ``strict`` rejects points not in convex position."""
        V = np.asarray(vertices, dtype=float).reshape(-1, 2)
        poly = cls(tuple(map(tuple, V)))
        if strict:
            distinct = {(float(x), float(y)) for x, y in V}
            if len(distinct) != len(poly.vertices):
                raise ValueError("polygon vertices are not in convex position "
                                 "(interior, duplicate or collinear points)")
        return poly

    @property
    def array(self) -> np.ndarray:
        return self._array

    def __eq__(self, other):
        return isinstance(other, Polygon) and other.vertices == self.vertices

    def __hash__(self):
        return hash(self.vertices)

    def extreme_points(self) -> np.ndarray:
        return self.array

    def diameter(self, norm: str = "l2") -> float:
        V = self.array
        return float(np.max(planar._norm(V[:, None] - V[None], norm)))


class Subtree:
    """Closed connected subset of an R-tree as per-edge offset intervals.

    ``rows`` is an ``(k, 3)`` array of ``[edge_index, lo, hi]`` sorted by
    edge index.  A single point is one row with ``lo == hi``.
    """

    __slots__ = ("space", "rows", "_memo")

    def __init__(self, space: RTree, rows):
        rows = np.asarray(rows, dtype=float).reshape(-1, 3)
        rows.setflags(write=False)
        object.__setattr__(self, "space", space)
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "_memo", {})

    def _cached(self, key, build):
        if key not in self._memo:
            val = build()
            val.setflags(write=False)
            self._memo[key] = val
        return self._memo[key]

    def __setattr__(self, name, value):
        raise AttributeError("Subtree is immutable")

    # -- constructors -------------------------------------------------------
    @classmethod
    def point(cls, space: RTree, p) -> "Subtree":
        row = space.as_array(p)[0] if not (isinstance(p, np.ndarray) and p.shape == (2,)) \
            else space.canonical(p[None])[0]
        return cls(space, [[row[0], row[1], row[1]]])

    @classmethod
    def span(cls, space: RTree, X: np.ndarray) -> "Subtree":
        """Smallest subtree containing the rows of X (their convex hull)."""
        X = space.canonical(np.asarray(X, dtype=float).reshape(-1, 2))
        if len(X) == 0:
            raise ValueError("cannot span an empty point set")
        P = space.projections(X)
        lo, hi = P.min(axis=0), P.max(axis=0)
        keep = np.nonzero(hi - lo > TOL)[0]
        if len(keep) == 0:
            return cls.point(space, X[0])
        return cls._from_arrays(space, keep, lo[keep], hi[keep])

    @classmethod
    def _from_arrays(cls, space, k, lo, hi):
        L = space.length[k]
        lo = np.where(lo <= TOL, 0.0, lo)
        hi = np.where(hi >= L - TOL, L, hi)
        return cls(space, np.column_stack([k, lo, hi]) + 0.0)

    @classmethod
    def from_intervals(cls, space: RTree, intervals) -> "Subtree":
        """Validate user intervals ``(edge_id, a, b)``: closed, connected, merged per edge."""
        per_edge: dict[int, list[tuple[float, float]]] = {}
        for edge, a, b in intervals:
            if edge not in space.edge_index:
                raise ValueError(f"subtree references unknown edge {edge!r}")
            k = space.edge_index[edge]
            a, b = sorted((float(a), float(b)))
            if a < -TOL or b > space.length[k] + TOL:
                raise ValueError(f"subtree interval on edge {edge} leaves [0, {space.length[k]}]")
            per_edge.setdefault(k, []).append((max(a, 0.0), min(b, float(space.length[k]))))
        if not per_edge:
            raise ValueError("a subtree must be nonempty")
        pieces, dots = [], []
        for k, ivs in sorted(per_edge.items()):
            ivs.sort()
            cur = list(ivs[0])
            merged = []
            for a, b in ivs[1:]:
                if a <= cur[1] + TOL:
                    cur[1] = max(cur[1], b)
                else:
                    merged.append(cur)
                    cur = [a, b]
            merged.append(cur)
            long_ = [m for m in merged if m[1] - m[0] > TOL]
            if len(long_) > 1:
                raise ValueError(f"subtree is disconnected on edge {space.edges[k].id}")
            if long_:
                pieces.append((k, *long_[0]))
            dots.extend((k, m[0]) for m in merged if m[1] - m[0] <= TOL)
        if not pieces:
            pts = space.canonical(np.array(dots, dtype=float))
            if np.any(space.pairwise(pts, pts) > TOL):
                raise ValueError("subtree is disconnected (several isolated points)")
            return cls.point(space, pts[0])
        arr = np.array(pieces, dtype=float)
        body = cls._from_arrays(space, arr[:, 0].astype(np.int64), arr[:, 1], arr[:, 2])
        body._check_connected()
        if dots:
            from .hausdorff import point_to_set
            d = point_to_set(space, space.canonical(np.array(dots, dtype=float)), body)
            if np.any(d > TOL):
                raise ValueError("subtree is disconnected (isolated point)")
        return body

    def _check_connected(self):
        n = len(self.rows)
        parent = list(range(n))

        def find(i):
            while parent[i] != i:
                parent[i] = parent[parent[i]]
                i = parent[i]
            return i

        touching: dict[int, list[int]] = {}
        for i, v in self._vertex_touches():
            touching.setdefault(v, []).append(i)
        for members in touching.values():
            for j in members[1:]:
                parent[find(j)] = find(members[0])
        if len({find(i) for i in range(n)}) > 1:
            raise ValueError("subtree is disconnected")

    # -- structure ----------------------------------------------------------
    @property
    def is_point(self) -> bool:
        return len(self.rows) == 1 and self.rows[0, 1] == self.rows[0, 2]

    def _vertex_touches(self):
        sp = self.space
        out = []
        if self.is_point:
            return out
        for i, (k, lo, hi) in enumerate(self.rows):
            k = int(k)
            if lo <= TOL:
                out.append((i, int(sp.tail[k])))
            if hi >= sp.length[k] - TOL:
                out.append((i, int(sp.head[k])))
        return out

    def vertex_degrees(self) -> dict[int, int]:
        deg: dict[int, int] = {}
        for _, v in self._vertex_touches():
            deg[v] = deg.get(v, 0) + 1
        return deg

    def leaves(self) -> np.ndarray:
        """Extreme points: interval ends inside an edge, or degree-1 vertices."""
        return self._cached("leaves", self._leaves)

    def _leaves(self) -> np.ndarray:
        sp = self.space
        if self.is_point:
            return self.rows[:, :2].copy()
        k = self.rows[:, 0].astype(np.int64)
        lo, hi = self.rows[:, 1], self.rows[:, 2]
        at_t, at_h = lo <= TOL, hi >= sp.length[k] - TOL
        deg = np.bincount(np.concatenate([sp.tail[k][at_t], sp.head[k][at_h]]), minlength=len(sp.vertices))
        # piece ends strictly inside an edge are distinct, and a degree-1 vertex is touched once
        keep_lo = ~at_t | (deg[sp.tail[k]] == 1)
        keep_hi = ~at_h | (deg[sp.head[k]] == 1)
        kf = self.rows[:, 0]
        out = sp.canonical(np.vstack([np.column_stack([kf, lo])[keep_lo], np.column_stack([kf, hi])[keep_hi]]))
        return out[np.lexsort(out.T[::-1])]

    def vertices_inside(self) -> np.ndarray:
        sp = self.space
        if self.is_point:
            return np.zeros((0, 2))
        vs = sorted(self.vertex_degrees())
        return sp.vertex_rows()[vs] if vs else np.zeros((0, 2))

    def generators(self) -> np.ndarray:
        """Leaves plus tree vertices inside: the ends of all edge pieces."""
        return self._cached("generators", lambda: dedup_rows(
            self.space, np.vstack([self.leaves(), self.vertices_inside()])))

    def pieces(self) -> np.ndarray:
        """(k, 2, 2) end points of each per-edge piece."""
        ends = np.stack([self.rows[:, [0, 1]], self.rows[:, [0, 2]]], axis=1).reshape(-1, 2)
        return self._cached("pieces", lambda: self.space.canonical(ends).reshape(-1, 2, 2))

    def extreme_points(self) -> np.ndarray:
        return self.leaves()

    def total_length(self) -> float:
        return float(np.sum(self.rows[:, 2] - self.rows[:, 1]))

    def diameter(self) -> float:
        L = self.leaves()
        return float(np.max(self.space.pairwise(L, L)))

    def as_intervals(self) -> list[tuple[int, float, float]]:
        return [(self.space.edges[int(k)].id, float(lo), float(hi)) for k, lo, hi in self.rows]

    def __eq__(self, other):
        return (isinstance(other, Subtree) and other.space == self.space
                and other.rows.shape == self.rows.shape and np.array_equal(other.rows, self.rows))

    def __hash__(self):
        return hash((self.space, self.rows.tobytes()))

    def __repr__(self):
        return f"Subtree({self.as_intervals()})"


ConvexBody = Union[Interval, Polygon, Subtree]
HyperElement = Union[FiniteCompactSet, Interval, Polygon, Subtree]


def is_body(A) -> bool:
    return isinstance(A, (Interval, Polygon, Subtree))


def check_member(space: Space, A) -> None:
    """Raise unless A is a representable element over ``space``."""
    if isinstance(A, FiniteCompactSet) or isinstance(A, Subtree):
        if A.space != space:
            raise ValueError("operands live in different spaces")
        return
    if isinstance(A, Interval):
        if not (isinstance(space, NormedSpace) and space.dim == 1):
            raise ValueError("intervals need the normed line")
        return
    if isinstance(A, Polygon):
        if not (isinstance(space, NormedSpace) and space.dim == 2):
            raise ValueError("polygons need a normed plane")
        return
    raise TypeError(f"unsupported hyperspace element {type(A).__name__}")
