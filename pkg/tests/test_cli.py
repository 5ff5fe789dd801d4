import json

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from hyperbicomb import io
from hyperbicomb.cli import main
from hyperbicomb.sets import FiniteCompactSet, Interval, Polygon, Subtree
from hyperbicomb.spaces import line, plane, random_tree, star_tree
from hyperbicomb.svg import render_svg

LINE = json.dumps({"kind": "normed", "dim": 1, "norm": "l2"})
PLANE = json.dumps({"kind": "normed", "dim": 2, "norm": "l2"})
TRIPOD = json.dumps(io.dump_space(star_tree([1.0, 1.0, 1.0])))


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


class TestSubcommands:
    def test_hausdorff(self, capsys):
        code, out, _ = run(capsys, "hausdorff", "--space", LINE, "--a", '{"points":[0,1]}',
                           "--b", '{"points":[0.3,0.4]}')
        assert code == 0 and json.loads(out) == {"d_h": 0.6}

    def test_hausdorff_infimum(self, capsys):
        code, out, _ = run(capsys, "hausdorff", "--infimum", "--a", '{"points":[0,1]}', "--b", '{"points":[0.3,0.4]}')
        assert code == 0 and json.loads(out)["d_h"] == pytest.approx(0.6, abs=1e-9)

    def test_sigma_cb_echoes_a_at_zero(self, capsys):
        a = '{"polygon":[[0,0],[1,0],[0,1]]}'
        code, out, _ = run(capsys, "sigma-cb", "--space", PLANE, "--a", a, "--b", '{"polygon":[[5,5]]}', "--t", "0")
        assert code == 0 and json.loads(out) == json.loads(a)

    def test_sigma_cb_interval(self, capsys):
        code, out, _ = run(capsys, "sigma-cb", "--a", '{"interval":[-1,1]}', "--b", '{"interval":[-2,3]}',
                           "--t", "0.5")
        assert code == 0 and json.loads(out) == {"interval": [-1.5, 2.0]}

    def test_sigma_cb_tree(self, capsys):
        code, out, _ = run(capsys, "sigma-cb", "--space", TRIPOD, "--a", '{"subtree":[{"edge":0,"from":0,"to":1}]}',
                           "--b", '{"subtree":[{"edge":2,"from":1,"to":1}]}', "--t", "0.5")
        assert code == 0 and json.loads(out) == {"subtree": [{"edge": 2, "from": 0.0, "to": 0.5}]}

    def test_sigma_k(self, capsys):
        args = ("sigma-k", "--a", '{"points":[0,1]}', "--b", '{"points":[0.3,0.4]}', "--t", "0.5")
        code, out, _ = run(capsys, *args)
        assert code == 0 and sorted(p["vec"][0] for p in json.loads(out)["points"]) == [0.15, 0.2, 0.7]
        code, out, _ = run(capsys, *args, "--naive")
        assert sorted(p["vec"][0] for p in json.loads(out)["points"]) == [0.15, 0.2, 0.65, 0.7]

    def test_examples(self, capsys):
        code, out, _ = run(capsys, "paper-examples")
        lines = out.strip().splitlines()
        assert code == 0 and len(lines) == 3 and all(ln.startswith("PASS") for ln in lines)

    def test_file_inputs(self, capsys, tmp_path):
        (tmp_path / "a.json").write_text('{"points":[0,1]}')
        (tmp_path / "b.json").write_text('{"points":[0.3,0.4]}')
        code, out, _ = run(capsys, "hausdorff", "--a", str(tmp_path / "a.json"), "--b", str(tmp_path / "b.json"))
        assert code == 0 and json.loads(out) == {"d_h": 0.6}


class TestErrors:
    def test_malformed_json(self, capsys):
        code, _, err = run(capsys, "hausdorff", "--a", '{"points":[0,1]', "--b", '{"points":[0]}')
        assert code == 1 and "--a" in err and "line 1" in err

    def test_missing_field(self, capsys):
        code, _, err = run(capsys, "sigma-cb", "--space", TRIPOD, "--a", '{"subtree":[{"edge":0,"from":0}]}',
                           "--b", '{"subtree":[{"edge":0,"from":0,"to":1}]}', "--t", "0.5")
        assert code == 1 and "'to'" in err

    def test_missing_file(self, capsys, tmp_path):
        code, _, _ = run(capsys, "hausdorff", "--a", str(tmp_path / "none.json"), "--b", '{"points":[0]}')
        assert code == 1

    def test_bad_t(self, capsys):
        code, _, _ = run(capsys, "sigma-k", "--a", '{"points":[0]}', "--b", '{"points":[1]}', "--t", "1.5")
        assert code == 1

    def test_selector_mismatch(self, capsys):
        assert run(capsys, "verify", "--target", "cb-tree", "--family", "l2")[0] == 1
        assert run(capsys, "sigma-cb", "--space", PLANE, "--form", "tree", "--a", '{"polygon":[[0,0]]}',
                   "--b", '{"polygon":[[1,1]]}', "--t", "0.5")[0] == 1
        assert run(capsys, "verify", "--target", "k-sigma", "--family", "line", "--suite", "hormander")[0] == 1

    def test_wrong_kind(self, capsys):
        code, _, err = run(capsys, "sigma-k", "--a", '{"interval":[0,1]}', "--b", '{"points":[1]}', "--t", "0.5")
        assert code == 1 and "finite point sets" in err

    def test_unknown_subcommand(self, capsys):
        assert run(capsys, "frobnicate")[0] == 1

    def test_non_uniquely_geodesic(self, capsys):
        code, _, err = run(capsys, "sigma-k", "--space", json.dumps({"kind": "normed", "dim": 2, "norm": "l1"}),
                           "--a", '{"points":[[0,0]]}', "--b", '{"points":[[1,1]]}', "--t", "0.5")
        assert code == 1 and "uniquely geodesic" in err


class TestVerifyCommand:
    def test_pass(self, capsys, tmp_path):
        out = tmp_path / "r.json"
        code, text, _ = run(capsys, "verify", "--suite", "geodesic,reversible", "--family", "line",
                            "--target", "linear", "--trials", "20", "--report", str(out))
        assert code == 0 and text.count("PASS") == 2
        assert [r["suite"] for r in json.loads(out.read_text())] == ["geodesic", "reversible"]

    def test_expected_failure(self, capsys):
        args = ("verify", "--suite", "conical", "--target", "k-sigma", "--family", "line",
                "--sampler", "counterexample")
        code, text, _ = run(capsys, *args)
        assert code == 2 and "FAILED" in text
        code, text, _ = run(capsys, *args, "--expect-fail", "conical")
        assert code == 0 and "FAILED (expected)" in text and "5.000e-02" in text

    def test_counterexample_sampler_needs_its_target(self, capsys):
        assert run(capsys, "verify", "--suite", "conical", "--sampler", "counterexample")[0] == 1

    def test_seed_from_environment(self, capsys, tmp_path, monkeypatch):
        args = ["verify", "--suite", "conical", "--target", "cb-minkowski", "--family", "l2", "--trials", "5"]
        monkeypatch.setenv("HYPERBICOMB_SEED", "99")
        run(capsys, *args, "--seed", "1", "--report", str(tmp_path / "a.json"))
        monkeypatch.delenv("HYPERBICOMB_SEED")
        run(capsys, *args, "--seed", "99", "--report", str(tmp_path / "b.json"))
        assert (tmp_path / "a.json").read_bytes() == (tmp_path / "b.json").read_bytes()
        assert json.loads((tmp_path / "a.json").read_text())[0]["seed"] == 99

    def test_bad_seed_environment(self, capsys, monkeypatch):
        monkeypatch.setenv("HYPERBICOMB_SEED", "abc")
        assert run(capsys, "verify", "--suite", "geodesic", "--trials", "1")[0] == 1

    def test_repeatable_bytes(self, capsys, tmp_path):
        for name in ("a", "b"):
            run(capsys, "verify", "--suite", "all", "--family", "rtree", "--target", "k-sigma", "--trials", "10",
                "--seed", "5", "--report", str(tmp_path / f"{name}.json"))
        assert (tmp_path / "a.json").read_bytes() == (tmp_path / "b.json").read_bytes()


class TestPlot:
    def test_interval_bars(self, capsys, tmp_path):
        out = tmp_path / "i.svg"
        code, _, _ = run(capsys, "plot", "--a", '{"interval":[-1,1]}', "--b", '{"interval":[-2,3]}',
                         "--out", str(out))
        svg = out.read_text()
        assert code == 0 and svg.count("<rect x=") == 5 and svg.count('<g id="snapshot-') == 5
        assert 'data-t="2/4"' in svg

    def test_point_marks(self, tmp_path):
        svg = render_svg([Interval.point(0.0), Interval.point(1.0)])
        assert svg.count("<circle") == 2
        svg = render_svg([Polygon(((0, 0),)), Polygon(((1, 1),))])
        assert svg.count("<circle") == 2

    def test_polygon_outlines(self, capsys, tmp_path):
        out = tmp_path / "p.svg"
        code, _, _ = run(capsys, "plot", "--space", PLANE, "--a", '{"polygon":[[0,0],[1,0],[1,1],[0,1]]}',
                         "--b", '{"polygon":[[0,0],[2,0],[0,2]]}', "--out", str(out))
        assert code == 0 and out.read_text().count("<polygon") == 5

    def test_subtrees_rejected(self, capsys, tmp_path):
        code, _, err = run(capsys, "plot", "--space", TRIPOD, "--a", '{"subtree":[{"edge":0,"from":0,"to":1}]}',
                           "--b", '{"subtree":[{"edge":1,"from":0,"to":1}]}', "--out", str(tmp_path / "t.svg"))
        assert code == 1 and "subtree" in err

    def test_single_snapshot_rejected(self):
        with pytest.raises(ValueError):
            render_svg([Interval(0, 1)])

    def test_deterministic(self, capsys, tmp_path):
        paths = [tmp_path / "a.svg", tmp_path / "b.svg"]
        for p in paths:
            run(capsys, "plot", "--space", PLANE, "--a", '{"polygon":[[0,0],[1,0],[0,1]]}',
                "--b", '{"polygon":[[3,3],[4,3]]}', "--steps", "6", "--out", str(p))
        assert paths[0].read_bytes() == paths[1].read_bytes()


floats = st.floats(-1e6, 1e6, allow_nan=False)


class TestRoundTrip:
    @given(st.lists(floats, min_size=1, max_size=8))
    def test_finite_line(self, xs):
        S = FiniteCompactSet(line(), xs)
        back = io.load_element(line(), json.loads(io.dumps(io.dump_element(line(), S))))
        assert np.array_equal(back.points, S.points)

    @given(st.lists(st.tuples(floats, floats), min_size=1, max_size=8))
    def test_polygon(self, pts):
        P = Polygon(tuple(pts))
        assert io.load_element(plane(), json.loads(io.dumps(io.dump_element(plane(), P)))) == P

    def test_subtrees_and_spaces(self):
        rng = np.random.default_rng(41)
        for _ in range(20):
            sp = random_tree(rng)
            sp2 = io.load_space(json.loads(io.dumps(io.dump_space(sp))))
            assert io.dump_space(sp2) == io.dump_space(sp)
            k = rng.integers(0, sp.ne, size=3)
            S = Subtree.span(sp, sp.canonical(np.column_stack([k, rng.uniform(0, 1, 3) * sp.length[k]])))
            assert io.load_element(sp2, json.loads(io.dumps(io.dump_element(sp, S)))) == S
