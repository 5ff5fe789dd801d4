import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from hyperbicomb.spaces import (Edge, NormedSpace, RTree, TreePoint, distance, euclidean, line, path_tree,
                                plane, random_tree, sigma_eval, star_tree, tree_path)
from oracles import tp, tree_distances

coords = st.floats(-50, 50, allow_nan=False)
unit = st.floats(0.0, 1.0)


class TestNormed:
    def test_pythagoras(self):
        assert distance(plane("l2"), [0, 0], [3, 4]) == 5.0

    def test_line(self):
        assert distance(line(), 0.0, 0.3) == 0.3

    def test_polyhedral_norms(self):
        assert distance(plane("l1"), [0, 0], [3, -4]) == 7.0
        assert distance(plane("linf"), [0, 0], [3, -4]) == 4.0

    def test_linear_bicombing(self):
        assert np.allclose(sigma_eval(line(), 0.0, 1.0, 0.3), [0.3])
        assert np.allclose(sigma_eval(plane("l1"), [0, 0], [2, 2], 0.25), [0.5, 0.5])

    def test_endpoints_exact(self):
        sp = plane("l2")
        x, y = np.array([0.1, 0.7]), np.array([1 / 3, -2.9])
        assert np.array_equal(sp.sigma(x, y, 0.0), x)
        assert np.array_equal(sp.sigma(x, y, 1.0), y)

    def test_unique_geodesics(self):
        assert line().uniquely_geodesic and euclidean(5).uniquely_geodesic
        assert not plane("l1").uniquely_geodesic and not plane("linf").uniquely_geodesic

    @pytest.mark.parametrize("bad", [dict(dim=0, norm="l2"), dict(dim=9, norm="l2"), dict(dim=2, norm="l3"),
                                     dict(dim=3, norm="l1")])
    def test_rejects_bad_spaces(self, bad):
        with pytest.raises(ValueError):
            NormedSpace(**bad)

    def test_rejects_bad_t(self):
        with pytest.raises(ValueError):
            line().sigma(0.0, 1.0, 1.5)

    @given(st.sampled_from(["l1", "l2", "linf"]), st.tuples(coords, coords), st.tuples(coords, coords),
           unit, unit)
    def test_linear_geodesic_law(self, norm, x, y, s, t):
        sp = plane(norm)
        d = sp.distance(sp.sigma(x, y, s), sp.sigma(x, y, t))
        assert d == pytest.approx(abs(s - t) * sp.distance(x, y), abs=1e-9)


class TestTree:
    def test_tripod_distance_matches_graph_search(self, tripod):
        x, y = tp(tripod, 0, 1.0), tp(tripod, 1, 1.0)
        assert tripod.distance(x, y) == 2.0
        assert tree_distances(tripod, x[None], y[None])[0, 0] == 2.0

    def test_tripod_midpoint_is_centre(self, tripod):
        mid = sigma_eval(tripod, TreePoint(0, 1.0), TreePoint(1, 1.0), 0.5)
        assert mid == tripod.vertex_point(0)

    def test_path_through_centre(self, tripod):
        assert tree_path(tripod, TreePoint(0, 1.0), TreePoint(1, 1.0)) == [(0, 1.0, 0.0), (1, 0.0, 1.0)]
        assert tree_path(tripod, TreePoint(0, 1.0), TreePoint(0, 1.0)) == []

    def test_path_graph(self):
        sp = path_tree([1.0, 1.0])
        assert tree_path(sp, sp.vertex_point(0), sp.vertex_point(2)) == [(0, 0.0, 1.0), (1, 0.0, 1.0)]

    def test_vertex_has_one_representation(self, tripod):
        # the centre sits at offset 0 of all three edges
        reps = [tp(tripod, k, 0.0) for k in range(3)]
        assert all(np.array_equal(r, reps[0]) for r in reps)

    def test_rejects_cycles_and_bad_lengths(self):
        with pytest.raises(ValueError):
            RTree([0, 1, 2], [Edge(0, 0, 1, 1.0), Edge(1, 1, 0, 1.0)])
        with pytest.raises(ValueError):
            RTree([0, 1], [Edge(0, 0, 1, 0.0)])
        with pytest.raises(ValueError):
            RTree([0, 1, 2], [Edge(0, 0, 1, 1.0)])

    def test_rejects_offsets_outside_edge(self, tripod):
        with pytest.raises(ValueError):
            tripod.as_point(TreePoint(0, 1.5))
        with pytest.raises(ValueError):
            tripod.as_point(TreePoint(7, 0.5))

    def test_pairwise_matches_networkx(self):
        rng = np.random.default_rng(7)
        for _ in range(15):
            sp = random_tree(rng)
            k = rng.integers(0, sp.ne, size=12)
            P = sp.canonical(np.column_stack([k, rng.uniform(0, 1, 12) * sp.length[k]]))
            assert np.allclose(sp.pairwise(P, P), tree_distances(sp, P, P), atol=1e-12)

    def test_geodesic_law_random_trees(self):
        rng = np.random.default_rng(8)
        for _ in range(30):
            sp = random_tree(rng)
            k = rng.integers(0, sp.ne, size=2)
            x, y = sp.canonical(np.column_stack([k, rng.uniform(0, 1, 2) * sp.length[k]]))
            s, t = rng.uniform(size=2)
            gs, gt = sp.sigma(x, y, s), sp.sigma(x, y, t)
            assert sp.distance(gs, gt) == pytest.approx(abs(s - t) * sp.distance(x, y), abs=1e-12)
            assert sp.distance(x, gt) + sp.distance(gt, y) == pytest.approx(sp.distance(x, y), abs=1e-12)

    def test_path_lengths_add_up(self):
        rng = np.random.default_rng(9)
        for _ in range(20):
            sp = random_tree(rng)
            k = rng.integers(0, sp.ne, size=2)
            x, y = sp.canonical(np.column_stack([k, rng.uniform(0, 1, 2) * sp.length[k]]))
            segs = sp.path(x, y)
            assert sum(abs(b - a) for _, a, b in segs) == pytest.approx(sp.distance(x, y), abs=1e-12)

    def test_star_tree_layout(self):
        sp = star_tree([1.0, 2.0])
        assert sp.distance(sp.vertex_point(1), sp.vertex_point(2)) == 3.0
