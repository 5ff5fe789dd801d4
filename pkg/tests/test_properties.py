"""Property-based checks of the metric and bicombing laws across modules."""
import numpy as np
import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from hyperbicomb.cb_bicombing import CBForm, cb_sigma
from hyperbicomb.convexity import cco_lipschitz_slack
from hyperbicomb.hausdorff import hausdorff_distance, hausdorff_infimum_form
from hyperbicomb.k_bicombing import k_sigma
from hyperbicomb.sets import FiniteCompactSet, Interval, Polygon, Subtree
from hyperbicomb.spaces import euclidean, line, plane, random_tree

coord = st.floats(-10, 10, allow_nan=False)
unit = st.floats(0.0, 1.0)
norms = st.sampled_from(["l1", "l2", "linf"])
seeds = st.integers(0, 2**32 - 1)
polygons = st.lists(st.tuples(coord, coord), min_size=1, max_size=8).map(lambda p: Polygon(tuple(p)))
intervals = st.tuples(coord, coord).map(lambda p: Interval(min(p), max(p)))


def tree_and_points(seed, n):
    rng = np.random.default_rng(seed)
    sp = random_tree(rng)
    k = rng.integers(0, sp.ne, size=n)
    return sp, rng, sp.canonical(np.column_stack([k, rng.uniform(0, 1, n) * sp.length[k]]))


def subtrees(sp, rng, count):
    out = []
    for _ in range(count):
        n = int(rng.integers(1, 5))
        k = rng.integers(0, sp.ne, size=n)
        out.append(Subtree.span(sp, sp.canonical(np.column_stack([k, rng.uniform(0, 1, n) * sp.length[k]]))))
    return out


class TestBaseSpaces:
    @given(norms, *[st.tuples(coord, coord)] * 3)
    def test_planar_metric(self, norm, x, y, z):
        sp = plane(norm)
        d = sp.distance
        assert d(x, y) == d(y, x) and d(x, x) == 0.0
        assert d(x, z) <= d(x, y) + d(y, z) + 1e-12

    @given(seeds)
    def test_tree_metric(self, seed):
        sp, _, P = tree_and_points(seed, 3)
        D = sp.pairwise(P, P)
        assert np.allclose(D, D.T, atol=1e-12) and np.all(np.abs(np.diag(D)) <= 1e-12)
        assert D[0, 2] <= D[0, 1] + D[1, 2] + 1e-12

    @given(seeds)
    def test_tree_paths_concatenate(self, seed):
        # if [x, y] and [y, z] only share y, their union is [x, z]
        sp, _, (x, y, z) = tree_and_points(seed, 3)
        if abs(sp.distance(x, y) + sp.distance(y, z) - sp.distance(x, z)) <= 1e-12:
            fwd = sp.path(x, y) + sp.path(y, z)
            assert sum(abs(b - a) for _, a, b in fwd) == pytest.approx(sp.distance(x, z), abs=1e-12)
        else:
            # otherwise the geodesics overlap beyond y: the midpoint of the overlap is off [x, z]
            assert sp.distance(x, y) + sp.distance(y, z) > sp.distance(x, z)

    @given(norms, st.tuples(coord, coord), st.tuples(coord, coord), unit, unit, unit)
    def test_linear_consistent(self, norm, x, y, r, s, t):
        sp = plane(norm)
        lhs = sp.sigma(sp.sigma(x, y, r), sp.sigma(x, y, s), t)
        assert sp.distance(lhs, sp.sigma(x, y, (1 - t) * r + t * s)) <= 1e-9


class TestHausdorffMetric:
    @given(norms, polygons, polygons, polygons)
    def test_metric_axioms_polygons(self, norm, A, B, C):
        sp = plane(norm)
        d = lambda X, Y: hausdorff_distance(sp, X, Y)  # noqa: E731
        assert d(A, A) == 0.0 and d(A, B) == pytest.approx(d(B, A), abs=1e-12)
        assert d(A, C) <= d(A, B) + d(B, C) + 1e-9

    @given(seeds)
    def test_metric_axioms_subtrees(self, seed):
        rng = np.random.default_rng(seed)
        sp = random_tree(rng)
        A, B, C = subtrees(sp, rng, 3)
        d = lambda X, Y: hausdorff_distance(sp, X, Y)  # noqa: E731
        assert d(A, A) <= 1e-12 and d(A, C) <= d(A, B) + d(B, C) + 1e-9

    @given(norms, polygons, polygons)
    def test_two_forms_agree(self, norm, A, B):
        sp = plane(norm)
        assert hausdorff_infimum_form(sp, A, B) == pytest.approx(hausdorff_distance(sp, A, B), abs=1e-9)

    @given(norms, st.lists(st.tuples(coord, coord), min_size=1, max_size=6),
           st.lists(st.tuples(coord, coord), min_size=1, max_size=6))
    def test_hull_map_is_1_lipschitz(self, norm, S, T):
        sp = plane(norm)
        assert cco_lipschitz_slack(sp, FiniteCompactSet(sp, S), FiniteCompactSet(sp, T)) <= 1e-9


class TestMinkowskiBicombing:
    @given(norms, polygons, polygons, polygons, polygons, unit)
    def test_conical(self, norm, A, B, C, D, t):
        sp = plane(norm)
        d = lambda X, Y: hausdorff_distance(sp, X, Y)  # noqa: E731
        lhs = d(cb_sigma(sp, "minkowski", A, B, t), cb_sigma(sp, "minkowski", C, D, t))
        assert lhs <= (1 - t) * d(A, C) + t * d(B, D) + 1e-9

    @given(norms, polygons, polygons, unit, unit, unit)
    def test_consistent(self, norm, A, B, r, s, t):
        sp = plane(norm)
        S = lambda X, Y, u: cb_sigma(sp, "minkowski", X, Y, u)  # noqa: E731
        lhs = S(S(A, B, r), S(A, B, s), t)
        assert hausdorff_distance(sp, lhs, S(A, B, (1 - t) * r + t * s)) <= 1e-9

    @given(intervals, intervals, unit)
    def test_reversible_line(self, A, B, t):
        sp = line()
        assert hausdorff_distance(sp, cb_sigma(sp, "minkowski", A, B, t), cb_sigma(sp, "minkowski", B, A, 1 - t)) \
            <= 1e-12 * (1 + max(abs(A.lo), abs(A.hi), abs(B.lo), abs(B.hi)))


class TestTreeBicombing:
    @given(seeds, unit, unit)
    def test_geodesic_and_conical(self, seed, s, t):
        rng = np.random.default_rng(seed)
        sp = random_tree(rng)
        A, B, C, D = subtrees(sp, rng, 4)
        d = lambda X, Y: hausdorff_distance(sp, X, Y)  # noqa: E731
        S = lambda X, Y, u: cb_sigma(sp, CBForm.TREE, X, Y, u)  # noqa: E731
        assert abs(d(S(A, B, s), S(A, B, t)) - abs(t - s) * d(A, B)) <= 1e-9
        assert d(S(A, B, t), S(C, D, t)) <= (1 - t) * d(A, C) + t * d(B, D) + 1e-9


class TestKBicombing:
    @given(st.integers(1, 8), seeds, unit, unit)
    def test_geodesic(self, dim, seed, s, t):
        rng = np.random.default_rng(seed)
        sp = euclidean(dim)
        A = FiniteCompactSet(sp, rng.uniform(-10, 10, size=(int(rng.integers(1, 9)), dim)))
        B = FiniteCompactSet(sp, rng.uniform(-10, 10, size=(int(rng.integers(1, 9)), dim)))
        lhs = hausdorff_distance(sp, k_sigma(sp, A, B, s), k_sigma(sp, A, B, t))
        assert abs(lhs - abs(t - s) * hausdorff_distance(sp, A, B)) <= 1e-9

    @given(st.lists(coord, min_size=1, max_size=6), unit)
    def test_identity(self, xs, t):
        S = FiniteCompactSet(line(), xs)
        assume(len(S) >= 1)
        assert k_sigma(line(), S, S, t) == S
