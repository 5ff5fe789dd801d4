"""The metric-projection bicombing on finite compact sets K(X).

    Sigma(A, B, t) = U_{a in A} U_{u in P_B(a)} omega(a, u, t)
                   u U_{b in B} U_{v in P_A(b)} omega(v, b, t)

where ``P_B(a)`` is the set of nearest points of B to a and ``omega(a, b, t)``
is the set of points at parameter t between a and b.  Only uniquely geodesic
base spaces are supported, where omega is the single point sigma(a, b, t).
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .sets import FiniteCompactSet, check_member
from .spaces import TOL, Space, check_t


@dataclass(frozen=True)
class ProjectionResult:
    minimizers: FiniteCompactSet
    min_distance: float


def _require_unique_geodesics(space: Space) -> None:
    if not space.uniquely_geodesic:
        raise ValueError(
            f"{space.describe()} is not uniquely geodesic; omega is only computed as a single "
            "point on the line, Euclidean spaces and R-trees")


def metric_projection(space: Space, A: FiniteCompactSet, x) -> ProjectionResult:
    """All points of A within 1e-12 of the distance from x to A."""
    check_member(space, A)
    d = space.pairwise(space.as_array(x), A.points)[0]
    m = float(d.min())
    return ProjectionResult(FiniteCompactSet(space, A.points[d <= m + TOL]), m)


def omega(space: Space, a, b, t: float) -> FiniteCompactSet:
    """``{x : d(a, x) = t d(a, b), d(x, b) = (1-t) d(a, b)}`` as a singleton."""
    t = check_t(t)
    _require_unique_geodesics(space)
    a = space.as_array(a)
    b = space.as_array(b)
    x = space.sigma_rows(a, b, t)
    dab = space.rowwise(a, b)[0]
    if (abs(space.rowwise(a, x)[0] - t * dab) > TOL * max(1.0, dab)
            or abs(space.rowwise(x, b)[0] - (1.0 - t) * dab) > TOL * max(1.0, dab)):
        raise ArithmeticError("geodesic point failed its distance conditions")
    return FiniteCompactSet(space, x)


def _projection_pairs(space: Space, A: FiniteCompactSet, B: FiniteCompactSet):
    D = space.pairwise(A.points, B.points)
    near_b = D <= D.min(axis=1, keepdims=True) + TOL      # u in P_B(a)
    near_a = D <= D.min(axis=0, keepdims=True) + TOL      # v in P_A(b)
    ia, ib = np.nonzero(near_b)
    ja, jb = np.nonzero(near_a)
    return (A.points[ia], B.points[ib]), (A.points[ja], B.points[jb])


def k_sigma_terms(space: Space, A: FiniteCompactSet, B: FiniteCompactSet, t: float):
    """The two unions (from A's side and from B's side) before merging."""
    t = check_t(t)
    _require_unique_geodesics(space)
    check_member(space, A)
    check_member(space, B)
    (xa, ua), (va, xb) = _projection_pairs(space, A, B)
    return (FiniteCompactSet(space, space.sigma_rows(xa, ua, t)),
            FiniteCompactSet(space, space.sigma_rows(va, xb, t)))


def k_sigma(space: Space, A: FiniteCompactSet, B: FiniteCompactSet, t: float) -> FiniteCompactSet:
    t = check_t(t)
    if t == 0.0:
        return A
    if t == 1.0:
        return B
    Z, W = k_sigma_terms(space, A, B, t)
    return FiniteCompactSet(space, np.vstack([Z.points, W.points]))


def naive_union_sigma(space: Space, A: FiniteCompactSet, B: FiniteCompactSet, t: float) -> FiniteCompactSet:
    """``U_{a, b} sigma(a, b, t)`` over all pairs: not a geodesic in K(X)."""
    t = check_t(t)
    _require_unique_geodesics(space)
    check_member(space, A)
    check_member(space, B)
    i, j = np.meshgrid(np.arange(len(A)), np.arange(len(B)), indexing="ij")
    return FiniteCompactSet(space, space.sigma_rows(A.points[i.ravel()], B.points[j.ravel()], t))
