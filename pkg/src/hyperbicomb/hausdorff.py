"""Point-to-set distances, closed neighbourhoods and the Hausdorff metric.

Directed distances ``sup_{a in A} d(a, B)`` are computed exactly:

* if B is convex, ``d(., B)`` is convex, so the sup over a convex A is taken
  at the extreme points of A (interval ends, polygon vertices, subtree leaves);
* if B is finite and A a body, ``d(., B)`` is a minimum of convex functions and
  the sup is found over a finite candidate set (Voronoi-type critical points
  for l2, arrangement vertices for the polyhedral norms, slope crossings on
  tree edges).
"""
from __future__ import annotations

import numpy as np

from . import planar
from .sets import FiniteCompactSet, Interval, Polygon, Subtree, check_member, is_body
from .spaces import TOL, NormedSpace, RTree, Space

BISECTION_STEPS = 60


def _rows(space: Space, x) -> np.ndarray:
    if isinstance(x, np.ndarray) and x.ndim == 2:
        return space.canonical(x) if isinstance(space, RTree) else np.asarray(x, dtype=float)
    return space.as_array(x)


def distances_to_set(space: Space, X, A) -> np.ndarray:
    """Vector of ``d(x, A)`` for the rows of X."""
    check_member(space, A)
    X = _rows(space, X)
    if isinstance(A, FiniteCompactSet):
        return space.pairwise(X, A.points).min(axis=1)
    if isinstance(A, Interval):
        x = X[:, 0]
        return np.maximum(np.maximum(A.lo - x, x - A.hi), 0.0)
    if isinstance(A, Polygon):
        return planar.point_polygon_distance(X, A.array, space.norm)
    return _tree_distances(space, X, A)


def _tree_distances(space: RTree, X: np.ndarray, S: Subtree) -> np.ndarray:
    k = S.rows[:, 0].astype(np.int64)
    lo, hi = S.rows[:, 1], S.rows[:, 2]
    dv = space.point_vertex_dist(X)                       # (N, nv)
    via = np.minimum(dv[:, space.tail[k]] + lo[None, :],
                     dv[:, space.head[k]] + (space.length[k] - hi)[None, :])
    on_edge = X[:, 0].astype(np.int64)[:, None] == k[None, :]
    r = X[:, 1][:, None]
    clamp = np.maximum(np.maximum(lo[None, :] - r, r - hi[None, :]), 0.0)
    return np.where(on_edge, clamp, via).min(axis=1)


def point_to_set(space: Space, x, A) -> float:
    """``d(x, A) = inf_{a in A} d(x, a)``."""
    d = distances_to_set(space, x, A)
    if isinstance(x, np.ndarray) and x.ndim == 2 and len(x) != 1:
        return d
    return float(d[0])


def in_eps_neighborhood(space: Space, x, A, eps: float) -> bool:
    """Membership of x in the closed neighbourhood ``{y : d(y, A) <= eps}``."""
    if eps < 0:
        raise ValueError(f"neighbourhood radius must be >= 0, got {eps}")
    return point_to_set(space, x, A) <= eps + TOL


# -- sup of distance to a finite set over a body ------------------------------

def _farthest_on_interval(A: Interval, S: np.ndarray) -> float:
    s = np.sort(S[:, 0])
    mids = (s[:-1] + s[1:]) / 2.0
    cand = np.concatenate([[A.lo, A.hi], mids[(mids > A.lo) & (mids < A.hi)]])
    return float(np.max(np.min(np.abs(cand[:, None] - s[None, :]), axis=1)))


def _farthest_on_subtree(space: RTree, A: Subtree, S: np.ndarray) -> float:
    if A.is_point:
        return float(space.pairwise(A.rows[:, :2], S).min())
    dv = space.point_vertex_dist(S)                        # (m, nv)
    sk = S[:, 0].astype(np.int64)
    best = 0.0
    for kf, lo, hi in A.rows:
        k = int(kf)
        L = space.length[k]
        on = sk == k
        plus = np.where(on, -S[:, 1], dv[:, space.tail[k]])
        minus = np.where(on, S[:, 1], L + dv[:, space.head[k]])
        r = ((minus[None, :] - plus[:, None]) / 2.0).ravel()
        r = np.concatenate([[lo, hi], r[(r > lo) & (r < hi)]])
        pts = np.column_stack([np.full(len(r), float(k)), r])
        best = max(best, float(np.max(space.pairwise(pts, S).min(axis=1))))
    return best


def _farthest_on_polygon_l2(V: np.ndarray, S: np.ndarray) -> float:
    A, D = planar.edges(V)
    cands = [V]
    m = len(S)
    if m >= 2 and len(V) >= 2:
        i, j = np.triu_indices(m, k=1)
        n = 2.0 * (S[j] - S[i])                                      # (P, 2)
        c = np.sum(S[j] ** 2, axis=1) - np.sum(S[i] ** 2, axis=1)
        den = D @ n.T                                                # (K, P)
        num = c[None, :] - A @ n.T
        ok = np.abs(den) > 0
        u = np.where(ok, num / np.where(ok, den, 1.0), -1.0)
        kk, pp = np.nonzero(ok & (u >= 0.0) & (u <= 1.0))
        cands.append(A[kk] + u[kk, pp][:, None] * D[kk])
    if m >= 3 and len(V) >= 3:
        i, j, k = (np.array(a) for a in zip(*[(a, b, c) for a in range(m)
                                                  for b in range(a + 1, m) for c in range(b + 1, m)]))
        M = np.stack([2.0 * (S[j] - S[i]), 2.0 * (S[k] - S[i])], axis=1)   # (T, 2, 2)
        rhs = np.stack([np.sum(S[j] ** 2 - S[i] ** 2, axis=1), np.sum(S[k] ** 2 - S[i] ** 2, axis=1)], axis=1)
        det = M[:, 0, 0] * M[:, 1, 1] - M[:, 0, 1] * M[:, 1, 0]
        ok = np.abs(det) > 1e-12
        if ok.any():
            cc = np.linalg.solve(M[ok], rhs[ok][..., None])[..., 0]
            cands.append(cc[planar.inside(V, cc, tol=1e-9)])
    X = np.vstack(cands)
    return float(np.max(planar._norm(X[:, None, :] - S[None, :, :], "l2").min(axis=1)))


_DUAL_VERTICES = {
    "l1": np.array([[1.0, 1.0], [1.0, -1.0], [-1.0, 1.0], [-1.0, -1.0]]),
    "linf": np.array([[1.0, 0.0], [-1.0, 0.0], [0.0, 1.0], [0.0, -1.0]]),
}


def _farthest_on_polygon_polyhedral(V: np.ndarray, S: np.ndarray, norm: str) -> float:
    # d(x, s_i) = max_k <n_k, x - s_i>; the max of min_i max_k over the polygon sits
    # at a vertex of the arrangement of the switching lines and the polygon edges.
    Nd = _DUAL_VERTICES[norm]
    normals = np.repeat(Nd[None], len(S), axis=0).reshape(-1, 2)
    offs = (S @ Nd.T).reshape(-1)
    p, q = np.triu_indices(len(normals), k=1)
    ln = normals[p] - normals[q]
    lc = offs[p] - offs[q]
    A, D = planar.edges(V)
    if len(V) >= 2:
        en = np.column_stack([-D[:, 1], D[:, 0]])
        ln = np.vstack([ln, en])
        lc = np.concatenate([lc, np.sum(en * A, axis=1)])
    keep = np.any(ln != 0, axis=1)
    ln, lc = ln[keep], lc[keep]
    cands = [V]
    if len(V) >= 2 and len(ln) >= 2:
        a, b = np.triu_indices(len(ln), k=1)
        det = ln[a, 0] * ln[b, 1] - ln[a, 1] * ln[b, 0]
        ok = np.abs(det) > 1e-12
        a, b, det = a[ok], b[ok], det[ok]
        x = (lc[a] * ln[b, 1] - lc[b] * ln[a, 1]) / det
        y = (ln[a, 0] * lc[b] - ln[b, 0] * lc[a]) / det
        X = np.column_stack([x, y])
        if len(V) >= 3:
            X = X[planar.inside(V, X, tol=1e-9)]
        else:
            X = X[planar.segment_distance(X, A, D, "l2")[:, 0] <= 1e-9]
        cands.append(X)
    X = np.vstack(cands)
    return float(np.max(planar._norm(X[:, None, :] - S[None, :, :], norm).min(axis=1)))


def _farthest(space: Space, A, S: FiniteCompactSet) -> float:
    if isinstance(A, Interval):
        return _farthest_on_interval(A, S.points)
    if isinstance(A, Subtree):
        return _farthest_on_subtree(space, A, S.points)
    if space.norm == "l2":
        return _farthest_on_polygon_l2(A.array, S.points)
    return _farthest_on_polygon_polyhedral(A.array, S.points, space.norm)


def _samples(A) -> np.ndarray:
    return A.points if isinstance(A, FiniteCompactSet) else A.extreme_points()


def directed_distance(space: Space, A, B) -> float:
    """``sup_{a in A} d(a, B)``."""
    check_member(space, A)
    check_member(space, B)
    if is_body(A) and isinstance(B, FiniteCompactSet):
        return _farthest(space, A, B)
    return float(np.max(distances_to_set(space, _samples(A), B)))


def hausdorff_distance(space: Space, A, B) -> float:
    """``max(sup_a d(a, B), sup_b d(b, A))``."""
    return max(directed_distance(space, A, B), directed_distance(space, B, A))


# -- the infimum-over-neighbourhoods formulation ------------------------------

def _cover_1d(lo: float, hi: float, ivs: list[tuple[float, float]]) -> bool:
    reach = lo
    for a, b in sorted(ivs):
        if a > reach + TOL:
            break
        reach = max(reach, b)
        if reach >= hi - TOL:
            return True
    return reach >= hi - TOL


def contained_in_neighborhood(space: Space, A, B, eps: float) -> bool:
    """Whether A lies in the closed eps-neighbourhood of B."""
    if isinstance(A, FiniteCompactSet) or is_body(B):
        # N_eps(B) is convex for convex B, so extreme points of A suffice
        return bool(np.all(distances_to_set(space, _samples(A), B) <= eps + TOL))
    S = B.points
    if isinstance(A, Interval):
        return _cover_1d(A.lo, A.hi, [(s - eps, s + eps) for s in S[:, 0]])
    if isinstance(A, Subtree):
        if A.is_point:
            return bool(space.pairwise(A.rows[:, :2], S).min() <= eps + TOL)
        dv = space.point_vertex_dist(S)
        for kf, lo, hi in A.rows:
            k = int(kf)
            L = space.length[k]
            ivs = []
            for (sk, sr), dt, dh in zip(S, dv[:, space.tail[k]], dv[:, space.head[k]]):
                if int(sk) == k:
                    ivs.append((sr - eps, sr + eps))
                    continue
                if eps >= dt:
                    ivs.append((-np.inf, eps - dt))
                if eps >= dh:
                    ivs.append((L - (eps - dh), np.inf))
            if not _cover_1d(lo, hi, ivs):
                return False
        return True
    # polygon covered by a finite union of balls: compare with the exact sup
    return _farthest(space, A, B) <= eps + TOL


def hausdorff_infimum_form(space: Space, A, B, steps: int = BISECTION_STEPS) -> float:
    """``inf{eps > 0 : A in N_eps(B) and B in N_eps(A)}`` by bisection on eps."""
    check_member(space, A)
    check_member(space, B)
    hi = float(np.max(space.pairwise(_samples(A), _samples(B)))) + 1.0
    lo = 0.0
    if contained_in_neighborhood(space, A, B, 0.0) and contained_in_neighborhood(space, B, A, 0.0):
        return 0.0
    for _ in range(steps):
        mid = 0.5 * (lo + hi)
        if contained_in_neighborhood(space, A, B, mid) and contained_in_neighborhood(space, B, A, mid):
            hi = mid
        else:
            lo = mid
    return hi
