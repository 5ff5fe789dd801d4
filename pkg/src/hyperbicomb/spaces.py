"""Base geodesic spaces and their bicombings.

Two families are supported: finite-dimensional normed spaces carrying the
linear bicombing ``(1-t)x + ty`` and finite metric trees (R-trees) carrying
their unique geodesic bicombing.

Points of a normed space are float vectors.  Points of a tree are
``TreePoint(edge, offset)`` at the public surface; internally they are rows
``[edge_index, offset]`` of an ``(N, 2)`` float array, where the edge index is
the position of the edge in the id-sorted edge list.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import NamedTuple, Sequence, Union

import numpy as np

TOL = 1e-12
NORMS = ("l1", "l2", "linf")
MAX_DIM = 8


class TreePoint(NamedTuple):
    edge: int
    offset: float


BasePoint = Union[Sequence[float], np.ndarray, TreePoint]


def check_t(t: float, name: str = "t") -> float:
    t = float(t)
    if not 0.0 <= t <= 1.0:
        raise ValueError(f"{name}={t!r} is outside [0, 1]")
    return t


@dataclass(frozen=True)
class NormedSpace:
    """R^dim with an l1, l2 or linf norm and the linear bicombing."""

    dim: int
    norm: str = "l2"

    def __post_init__(self):
        if self.norm not in NORMS:
            raise ValueError(f"unknown norm {self.norm!r}; expected one of {NORMS}")
        if not 1 <= self.dim <= MAX_DIM:
            raise ValueError(f"dimension {self.dim} outside 1..{MAX_DIM}")
        if self.dim > 2 and self.norm != "l2":
            raise ValueError(f"only the Euclidean norm is modelled above dimension 2, not {self.norm}")

    @property
    def sigma_kind(self) -> str:
        return "linear"

    @property
    def uniquely_geodesic(self) -> bool:
        # every norm agrees with |.| on the line
        return self.dim == 1 or self.norm == "l2"

    def describe(self) -> str:
        return f"normed(dim={self.dim}, norm={self.norm})"

    def norm_of(self, v: np.ndarray) -> np.ndarray:
        v = np.asarray(v, dtype=float)
        if self.norm == "l2":
            return np.sqrt(np.sum(v * v, axis=-1))
        if self.norm == "l1":
            return np.sum(np.abs(v), axis=-1)
        return np.max(np.abs(v), axis=-1)

    def as_array(self, points) -> np.ndarray:
        arr = np.asarray(points, dtype=float)
        if arr.ndim == 0:
            arr = arr.reshape(1, 1)
        elif arr.ndim == 1:
            arr = arr.reshape(-1, self.dim) if self.dim == 1 else arr.reshape(1, -1)
        if arr.ndim != 2 or arr.shape[1] != self.dim:
            raise ValueError(f"expected points of dimension {self.dim}, got shape {np.shape(points)}")
        if not np.all(np.isfinite(arr)):
            raise ValueError("point coordinates must be finite")
        return arr

    def as_point(self, x) -> np.ndarray:
        arr = self.as_array(x)
        if arr.shape[0] != 1:
            raise ValueError("expected a single point")
        return arr[0]

    def canonical(self, arr: np.ndarray) -> np.ndarray:
        return np.asarray(arr, dtype=float) + 0.0  # folds -0.0 into 0.0

    def pairwise(self, X: np.ndarray, Y: np.ndarray) -> np.ndarray:
        X = np.asarray(X, dtype=float)
        Y = np.asarray(Y, dtype=float)
        return self.norm_of(X[:, None, :] - Y[None, :, :])

    def rowwise(self, X: np.ndarray, Y: np.ndarray) -> np.ndarray:
        return self.norm_of(np.asarray(X, dtype=float) - np.asarray(Y, dtype=float))

    def distance(self, x, y) -> float:
        return float(self.norm_of(self.as_point(x) - self.as_point(y)))

    def sigma_rows(self, X: np.ndarray, Y: np.ndarray, t) -> np.ndarray:
        """Row-wise linear bicombing; ``t`` is a scalar or one value per row."""
        X = np.asarray(X, dtype=float)
        Y = np.asarray(Y, dtype=float)
        t = np.asarray(t, dtype=float)
        tt = t[..., None] if t.ndim else t
        out = (1.0 - tt) * X + tt * Y
        out = np.where(X == Y, X, out)          # (1-t)x + tx can miss x by an ulp
        out = np.where(tt == 0.0, X, out)
        out = np.where(tt == 1.0, Y, out)
        return out + 0.0

    def sigma(self, x, y, t: float) -> np.ndarray:
        t = check_t(t)
        return self.sigma_rows(self.as_point(x)[None], self.as_point(y)[None], t)[0]


def line(norm: str = "l2") -> NormedSpace:
    return NormedSpace(1, norm)


def plane(norm: str = "l2") -> NormedSpace:
    return NormedSpace(2, norm)


def euclidean(n: int) -> NormedSpace:
    return NormedSpace(n, "l2")


class GeodesicPlan(NamedTuple):
    X: np.ndarray
    Y: np.ndarray
    d: np.ndarray
    same: np.ndarray
    v1: np.ndarray
    v2: np.ndarray
    a1: np.ndarray


@dataclass(frozen=True)
class Edge:
    id: int
    tail: object
    head: object
    length: float


class RTree:
    """A finite metric tree with positive edge lengths.

    All vertex-to-vertex distances and paths are tabulated at construction, so
    distance and geodesic evaluation are table lookups vectorised over rows.
    """

    sigma_kind = "tree"
    uniquely_geodesic = True

    def __init__(self, vertices: Sequence, edges: Sequence[Edge]):
        vertices = list(vertices)
        if len(set(vertices)) != len(vertices):
            raise ValueError("duplicate vertex ids")
        edges = sorted(edges, key=lambda e: e.id)
        ids = [e.id for e in edges]
        if len(set(ids)) != len(ids):
            raise ValueError("duplicate edge ids")
        if len(edges) != len(vertices) - 1:
            raise ValueError(
                f"a tree on {len(vertices)} vertices needs {len(vertices) - 1} edges, got {len(edges)}")
        vindex = {v: i for i, v in enumerate(vertices)}
        for e in edges:
            if e.tail not in vindex or e.head not in vindex:
                raise ValueError(f"edge {e.id} references an unknown vertex")
            if e.tail == e.head:
                raise ValueError(f"edge {e.id} is a loop")
            if not (np.isfinite(e.length) and e.length > 0):
                raise ValueError(f"edge {e.id} has non-positive length {e.length}")
        self.vertices = tuple(vertices)
        self.edges = tuple(Edge(int(e.id), e.tail, e.head, float(e.length)) for e in edges)
        self.edge_index = {e.id: i for i, e in enumerate(self.edges)}
        self.vertex_index = vindex
        nv, ne = len(vertices), len(edges)
        self.nv, self.ne = nv, ne
        self.tail = np.array([vindex[e.tail] for e in self.edges], dtype=np.int64)
        self.head = np.array([vindex[e.head] for e in self.edges], dtype=np.int64)
        self.length = np.array([e.length for e in self.edges], dtype=float)

        adj: list[list[tuple[int, int]]] = [[] for _ in range(nv)]
        for k in range(ne):
            adj[self.tail[k]].append((self.head[k], k))
            adj[self.head[k]].append((self.tail[k], k))
        self._adj = adj

        # BFS from every vertex: distances and predecessor edges
        dist = np.full((nv, nv), np.inf)
        pred_edge = np.full((nv, nv), -1, dtype=np.int64)
        pred_vertex = np.full((nv, nv), -1, dtype=np.int64)
        for s in range(nv):
            dist[s, s] = 0.0
            queue = deque([s])
            while queue:
                u = queue.popleft()
                for w, k in adj[u]:
                    if np.isinf(dist[s, w]):
                        dist[s, w] = dist[s, u] + self.length[k]
                        pred_edge[s, w] = k
                        pred_vertex[s, w] = u
                        queue.append(w)
        if np.isinf(dist).any():
            raise ValueError("edge list is not connected")
        self.vdist = dist

        # path tables: for u -> w, step j goes from path[j] to path[j+1]
        cum = np.full((nv, nv, nv), np.inf)
        step_edge = np.zeros((nv, nv, nv), dtype=np.int64)
        step_fwd = np.zeros((nv, nv, nv), dtype=bool)  # True if step runs tail -> head
        plen = np.zeros((nv, nv), dtype=np.int64)
        for u in range(nv):
            for w in range(nv):
                seq = [w]
                while seq[-1] != u:
                    seq.append(int(pred_vertex[u, seq[-1]]))
                seq.reverse()
                plen[u, w] = len(seq)
                acc = 0.0
                for j, v in enumerate(seq):
                    cum[u, w, j] = acc
                    if j + 1 < len(seq):
                        k = int(pred_edge[u, seq[j + 1]])
                        step_edge[u, w, j] = k
                        step_fwd[u, w, j] = self.tail[k] == v
                        acc += self.length[k]
        self._cum, self._step_edge, self._step_fwd, self._plen = cum, step_edge, step_fwd, plen

        # side[k, v] is True when v lies on the head side of edge k
        side = np.zeros((ne, nv), dtype=bool)
        for k in range(ne):
            seen = {int(self.head[k])}
            queue = deque([int(self.head[k])])
            while queue:
                u = queue.popleft()
                for w, kk in adj[u]:
                    if kk != k and w not in seen:
                        seen.add(w)
                        queue.append(w)
            side[k, list(seen)] = True
        self.side = side

        canon = np.zeros((nv, 2))
        for v in range(nv):
            k = min(kk for _, kk in adj[v])
            canon[v] = (k, 0.0 if self.tail[k] == v else self.length[k])
        self._vertex_canon = canon

    # -- identity -----------------------------------------------------------
    def _key(self):
        return (self.vertices, self.edges)

    def __eq__(self, other):
        return isinstance(other, RTree) and self._key() == other._key()

    def __hash__(self):
        return hash(self._key())

    def __repr__(self):
        return f"RTree(vertices={len(self.vertices)}, edges={self.ne})"

    def describe(self) -> str:
        return f"rtree(vertices={self.nv}, edges={self.ne})"

    # -- points -------------------------------------------------------------
    def vertex_point(self, v) -> TreePoint:
        k, r = self._vertex_canon[self.vertex_index[v]]
        return TreePoint(self.edges[int(k)].id, float(r))

    def vertex_rows(self) -> np.ndarray:
        return self._vertex_canon.copy()

    def as_array(self, points) -> np.ndarray:
        if isinstance(points, np.ndarray) and points.ndim in (1, 2) and points.shape[-1] == 2:
            rows = points.astype(float).reshape(-1, 2)
        else:
            if isinstance(points, TreePoint):
                points = [points]
            rows = []
            for p in points:
                edge, offset = p
                if edge not in self.edge_index:
                    raise ValueError(f"point references unknown edge {edge!r}")
                rows.append((self.edge_index[edge], float(offset)))
            rows = np.array(rows, dtype=float).reshape(-1, 2)
        if rows.size:
            k = rows[:, 0].astype(np.int64)
            L = self.length[k]
            off = rows[:, 1]
            if not np.all(np.isfinite(off)) or np.any(off < -TOL) or np.any(off > L + TOL):
                raise ValueError("tree point offset outside [0, edge length]")
        return self.canonical(rows)

    def as_point(self, x) -> np.ndarray:
        arr = self.as_array(x)
        if arr.shape[0] != 1:
            raise ValueError("expected a single point")
        return arr[0]

    def to_points(self, arr: np.ndarray) -> list[TreePoint]:
        return [TreePoint(self.edges[int(k)].id, float(r)) for k, r in np.asarray(arr).reshape(-1, 2)]

    def canonical(self, arr: np.ndarray) -> np.ndarray:
        """Clamp offsets into their edge and rewrite vertices canonically."""
        arr = np.array(arr, dtype=float).reshape(-1, 2)
        if not arr.size:
            return arr
        k = arr[:, 0].astype(np.int64)
        L = self.length[k]
        off = np.clip(arr[:, 1], 0.0, L)
        at_tail = off <= TOL
        at_head = off >= L - TOL
        out = np.column_stack([k.astype(float), off])
        out[at_tail] = self._vertex_canon[self.tail[k[at_tail]]]
        out[at_head] = self._vertex_canon[self.head[k[at_head]]]
        return out + 0.0

    # -- metric -------------------------------------------------------------
    def _to_vertices(self, X: np.ndarray):
        """Distances from rows of X to the tail and head of their edges."""
        k = X[:, 0].astype(np.int64)
        return k, X[:, 1], self.length[k] - X[:, 1]

    def point_vertex_dist(self, X: np.ndarray) -> np.ndarray:
        """(N, nv) distances from tree points to every vertex."""
        k, dt, dh = self._to_vertices(X)
        return np.minimum(dt[:, None] + self.vdist[self.tail[k]], dh[:, None] + self.vdist[self.head[k]])

    def pairwise(self, X: np.ndarray, Y: np.ndarray) -> np.ndarray:
        X = np.asarray(X, dtype=float).reshape(-1, 2)
        Y = np.asarray(Y, dtype=float).reshape(-1, 2)
        kx, xt, xh = self._to_vertices(X)
        ky, yt, yh = self._to_vertices(Y)
        D = self.vdist
        best = np.full((len(X), len(Y)), np.inf)
        for ax, vx in ((xt, self.tail[kx]), (xh, self.head[kx])):
            for ay, vy in ((yt, self.tail[ky]), (yh, self.head[ky])):
                best = np.minimum(best, ax[:, None] + D[vx[:, None], vy[None, :]] + ay[None, :])
        same = kx[:, None] == ky[None, :]
        return np.where(same, np.abs(X[:, 1][:, None] - Y[:, 1][None, :]), best)

    def rowwise(self, X: np.ndarray, Y: np.ndarray) -> np.ndarray:
        return self._route(np.asarray(X, float).reshape(-1, 2), np.asarray(Y, float).reshape(-1, 2))[0]

    def _route(self, X: np.ndarray, Y: np.ndarray):
        kx, xt, xh = self._to_vertices(X)
        ky, yt, yh = self._to_vertices(Y)
        n = len(X)
        d = np.full(n, np.inf)
        v1 = np.zeros(n, dtype=np.int64)
        v2 = np.zeros(n, dtype=np.int64)
        a1 = np.zeros(n)
        b2 = np.zeros(n)
        for ax, vx in ((xt, self.tail[kx]), (xh, self.head[kx])):
            for ay, vy in ((yt, self.tail[ky]), (yh, self.head[ky])):
                cand = ax + self.vdist[vx, vy] + ay
                better = cand < d
                d = np.where(better, cand, d)
                v1 = np.where(better, vx, v1)
                v2 = np.where(better, vy, v2)
                a1 = np.where(better, ax, a1)
                b2 = np.where(better, ay, b2)
        same = kx == ky
        d = np.where(same, np.abs(X[:, 1] - Y[:, 1]), d)
        return d, same, v1, v2, a1, b2

    def distance(self, x, y) -> float:
        return float(self.rowwise(self.as_point(x)[None], self.as_point(y)[None])[0])

    # -- geodesics ----------------------------------------------------------
    def geodesic_plan(self, X: np.ndarray, Y: np.ndarray) -> "GeodesicPlan":
        """The t-independent part of ``sigma_rows``: routes between paired rows."""
        X = np.asarray(X, dtype=float).reshape(-1, 2)
        Y = np.asarray(Y, dtype=float).reshape(-1, 2)
        d, same, v1, v2, a1, _ = self._route(X, Y)
        return GeodesicPlan(X, Y, d, same, v1, v2, a1)

    def sigma_rows(self, X: np.ndarray, Y: np.ndarray, t, plan: "GeodesicPlan | None" = None) -> np.ndarray:
        """Row-wise point at parameter t on the unique geodesic X[i] -> Y[i]."""
        if plan is None:
            plan = self.geodesic_plan(X, Y)
        X, Y, d, same, v1, v2, a1 = plan
        n = len(X)
        t = np.broadcast_to(np.asarray(t, dtype=float), (n,))
        kx = X[:, 0].astype(np.int64)
        ky = Y[:, 0].astype(np.int64)
        s = t * d
        D = self.vdist[v1, v2]
        out = np.empty((n, 2))

        # still on the edge of X, walking towards v1
        on_x = s <= a1
        dir_x = np.where(self.tail[kx] == v1, -1.0, 1.0)
        out[on_x, 0] = kx[on_x]
        out[on_x, 1] = X[on_x, 1] + dir_x[on_x] * s[on_x]

        # already on the edge of Y: back off from Y towards v2
        on_y = ~on_x & (s >= a1 + D)
        rem = d - s
        dir_y = np.where(self.tail[ky] == v2, -1.0, 1.0)
        out[on_y, 0] = ky[on_y]
        out[on_y, 1] = Y[on_y, 1] + dir_y[on_y] * rem[on_y]

        mid = ~on_x & ~on_y
        if mid.any():
            u, w = v1[mid], v2[mid]
            q = s[mid] - a1[mid]
            cum = self._cum[u, w]
            j = np.sum(cum <= q[:, None], axis=1) - 1
            j = np.clip(j, 0, self._plen[u, w] - 2)
            k = self._step_edge[u, w, j]
            along = q - cum[np.arange(len(j)), j]
            fwd = self._step_fwd[u, w, j]
            out[mid, 0] = k
            out[mid, 1] = np.where(fwd, along, self.length[k] - along)

        out[same, 0] = kx[same]
        out[same, 1] = (1.0 - t[same]) * X[same, 1] + t[same] * Y[same, 1]
        out[t == 0.0] = X[t == 0.0]
        out[t == 1.0] = Y[t == 1.0]
        return self.canonical(out)

    def sigma(self, x, y, t: float) -> np.ndarray:
        t = check_t(t)
        return self.sigma_rows(self.as_point(x)[None], self.as_point(y)[None], t)[0]

    def projections(self, X: np.ndarray) -> np.ndarray:
        """(N, ne) position of each point's shadow on every edge.

        A point on edge k shadows itself; a point elsewhere shadows the end of
        edge k on its side.  The span of a point set meets edge k exactly in
        ``[min shadow, max shadow]`` whenever that interval is non-degenerate.
        """
        X = np.asarray(X, dtype=float).reshape(-1, 2)
        k = X[:, 0].astype(np.int64)
        proj = np.where(self.side[:, self.tail[k]].T, self.length[None, :], 0.0)
        proj[np.arange(len(X)), k] = X[:, 1]
        return proj

    def path(self, x, y) -> list[tuple[int, float, float]]:
        """Segments (edge id, from offset, to offset) of the geodesic x -> y."""
        X = self.as_point(x)
        Y = self.as_point(y)
        d, same, v1, v2, a1, b2 = self._route(X[None], Y[None])
        if d[0] <= TOL:
            return []
        kx, ky = int(X[0]), int(Y[0])
        if same[0]:
            return [(self.edges[kx].id, float(X[1]), float(Y[1]))]
        segs = []
        u, w = int(v1[0]), int(v2[0])
        if a1[0] > TOL:
            end = 0.0 if self.tail[kx] == u else self.length[kx]
            segs.append((self.edges[kx].id, float(X[1]), float(end)))
        for j in range(int(self._plen[u, w]) - 1):
            k = int(self._step_edge[u, w, j])
            L = float(self.length[k])
            segs.append((self.edges[k].id, 0.0, L) if self._step_fwd[u, w, j] else (self.edges[k].id, L, 0.0))
        if b2[0] > TOL:
            start = 0.0 if self.tail[ky] == w else self.length[ky]
            segs.append((self.edges[ky].id, float(start), float(Y[1])))
        return segs


Space = Union[NormedSpace, RTree]


def distance(space: Space, x, y) -> float:
    return space.distance(x, y)


def sigma_eval(space: Space, x, y, t: float, sigma: str | None = None):
    """Evaluate the base bicombing; returns a vector or a TreePoint."""
    if sigma is not None and sigma != space.sigma_kind:
        raise ValueError(f"bicombing {sigma!r} does not belong to {space.describe()}")
    out = space.sigma(x, y, t)
    if isinstance(space, RTree):
        return space.to_points(out[None])[0]
    return out


def tree_path(space: RTree, x, y) -> list[tuple[int, float, float]]:
    if not isinstance(space, RTree):
        raise TypeError("tree_path needs an RTree")
    return space.path(x, y)


def path_tree(lengths: Sequence[float]) -> RTree:
    """Path graph 0 - 1 - ... - n with the given edge lengths."""
    return RTree(range(len(lengths) + 1), [Edge(i, i, i + 1, L) for i, L in enumerate(lengths)])


def star_tree(lengths: Sequence[float]) -> RTree:
    """Centre vertex 0 with one leaf per edge; edge i joins 0 to leaf i+1."""
    return RTree(range(len(lengths) + 1), [Edge(i, 0, i + 1, L) for i, L in enumerate(lengths)])


def random_tree(rng: np.random.Generator, n_edges: int | None = None,
                min_edges: int = 2, max_edges: int = 20,
                lengths: tuple[float, float] = (0.1, 5.0)) -> RTree:
    if n_edges is None:
        n_edges = int(rng.integers(min_edges, max_edges + 1))
    edges = []
    for i in range(n_edges):
        parent = int(rng.integers(0, i + 1))
        L = float(rng.uniform(*lengths))
        if rng.random() < 0.5:
            edges.append(Edge(i, parent, i + 1, L))
        else:
            edges.append(Edge(i, i + 1, parent, L))
    return RTree(range(n_edges + 1), edges)
