import subprocess
import sys

import pytest

from stringlimits.cli import main, probe_params, read_config
from stringlimits.geometry import (
    Representation,
    format_representation,
    k5_star_representation,
    parse_representation,
    write_representation,
)
from stringlimits.graphs import format_graph, make_basic, make_special_graph, parse_graph


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


class TestGraphonCommands:
    def test_entropy(self, capsys):
        code, out, _ = run(capsys, "entropy", "--graphon", "wka:4:1/2")
        assert code == 0 and abs(float(out) - 0.75) < 1e-12

    def test_density(self, capsys):
        _, out, _ = run(capsys, "density", "--graphon", "wka:3:1/2")
        assert out.splitlines()[0] == "edge_density 11/18"

    def test_tind_exact_and_mc(self, capsys):
        _, out, _ = run(capsys, "tind", "--graph", "complete:2", "--graphon", "const:1/3")
        assert out.strip() == "t_ind 1/3"
        _, out, _ = run(capsys, "tind", "--graph", "complete:2", "--graphon", "const:1/3", "--mc", "500")
        assert out.startswith("t_ind ") and "stderr" in out

    def test_fingerprint(self, capsys):
        _, out, _ = run(capsys, "fingerprint", "--graphon", "const:1/2", "--max-size", "2")
        assert out.splitlines() == ["1 [] 1", "2 [] 1/2", "2 [(0, 1)] 1/2"]

    def test_cutdist(self, capsys):
        _, out, _ = run(capsys, "cutdist", "--graphon", "wka:4:1/3", "--graphon", "wka:4:2/3")
        lower, upper = (line.split() for line in out.splitlines())
        assert lower[0] == "lower" and upper[0] == "upper" and float(upper[1]) == 0

    def test_cutdist_needs_two(self, capsys):
        code, _, err = run(capsys, "cutdist", "--graphon", "wka:4:1/3")
        assert code == 2 and "exactly two" in err

    def test_bad_graphon(self, capsys):
        with pytest.raises(SystemExit):
            main(["entropy", "--graphon", "wobbly:3"])


class TestSamplingCommands:
    def test_sample_files(self, tmp_path, capsys):
        gfile, bfile = tmp_path / "g.txt", tmp_path / "b.txt"
        code, _, _ = run(capsys, "sample", "--graphon", "const:1", "--n", "5", "--seed", "3",
                         "--out", str(gfile), "--blocks-out", str(bfile))
        assert code == 0
        assert parse_graph(gfile.read_text()) == make_basic("complete", 5)
        assert bfile.read_text().split() == ["0"] * 5

    def test_sample_reproducible(self, capsys):
        _, a, _ = run(capsys, "sample", "--graphon", "wka:3:1/2", "--n", "30", "--seed", "8")
        _, b, _ = run(capsys, "sample", "--graphon", "wka:3:1/2", "--n", "30", "--seed", "8")
        assert a == b

    def test_constructible(self, capsys):
        code, out, _ = run(capsys, "constructible", "--graph", "complete:15", "--graphon", "wka:4:1/2")
        assert code == 0 and out.startswith("constructible blocks")
        code, out, _ = run(capsys, "constructible", "--graph", "G:5", "--graphon", "wka:4:1/2")
        assert code == 1 and out.strip() == "not constructible"

    def test_constructible_from_file(self, tmp_path, capsys):
        path = tmp_path / "c5.txt"
        path.write_text(format_graph(make_basic("cycle", 5)))
        code, _, _ = run(capsys, "constructible", "--graph", str(path), "--graphon", "wstar:2:0")
        assert code == 1

    def test_witness(self, capsys):
        code, out, _ = run(capsys, "witness", "cl00", "2", "--graphon", "wstar:2:0")
        assert code == 0 and out.splitlines()[0] == "graph n=6 m=6"

    def test_witness_missing_structure(self, capsys):
        code, _, err = run(capsys, "witness", "cl1", "3", "--graphon", "wstar:3:3")
        assert code == 2 and "diagonal value 0" in err


class TestClassify:
    @pytest.mark.parametrize("graph,cls,verdict", [
        ("G:5", "string", "non-member"),
        ("G:4", "string", "member"),
        ("G:4", "outerstring", "non-member"),
        ("cycle:6", "incomparability", "non-member"),
        ("cycle:6", "comparability", "member"),
        ("path:3", "twoclique", "non-member"),
        ("complete_minus_edge:5", "planar_quotient", "member"),
    ])
    def test_verdicts(self, capsys, graph, cls, verdict):
        code, out, _ = run(capsys, "classify", "--graph", graph, "--class", cls)
        assert code == 0 and out.splitlines()[0] == f"verdict {verdict}"

    def test_unknown_graph_name(self):
        with pytest.raises(SystemExit):
            main(["classify", "--graph", "no-such-file.txt"])


class TestProbeCommand:
    def test_config_and_flags(self, tmp_path, capsys):
        cfg = tmp_path / "probe.cfg"
        cfg.write_text("# density run\ngraphon = const:1/2\nn = 40\ntrials = 3\nseed = 5\n")
        out_csv = tmp_path / "r.csv"
        code, out, _ = run(capsys, "probe", "density", "--config", str(cfg), "--trials", "2", "--out", str(out_csv))
        assert code == 0 and out.startswith("density ")
        text = out_csv.read_text()
        assert "# trials=2" in text and "# n=40" in text and "timestamp" not in text

    def test_csv_byte_identical(self, tmp_path, capsys):
        a, b = tmp_path / "a.csv", tmp_path / "b.csv"
        for path in (a, b):
            run(capsys, "probe", "degrees", "--graphon", "wka:3:1/2", "--n", "80", "--trials", "2", "--out", str(path))
        assert a.read_bytes() == b.read_bytes()

    def test_svg(self, tmp_path, capsys):
        svg = tmp_path / "h.svg"
        code, _, _ = run(capsys, "probe", "twoclique", "--n", "20", "--trials", "200", "--svg", str(svg))
        assert code == 0 and svg.read_text().startswith("<svg")

    def test_speed_class_flag(self, capsys):
        code, out, _ = run(capsys, "probe", "speed", "--class", "twoclique", "--n-max", "3")
        assert code == 0 and "count_n3" in out

    def test_equiv(self, capsys):
        _, out, _ = run(capsys, "probe", "equiv", "--k", "4", "--a", "1/4", "--b", "1/2", "--m", "2")
        assert "distinguished by edge density" in out

    def test_string_census_refused(self, capsys):
        code, _, err = run(capsys, "probe", "speed", "--class", "string", "--n-max", "3")
        assert code == 2 and "no exact recognizer" in err

    def test_probe_params_precedence(self):
        params = probe_params("density", {"n": "10", "seed": "4"}, {"n": 20, "trials": None})
        assert params == {"graphon": "wka:4:1/2", "n": 20, "trials": 20, "seed": 4}

    def test_probe_params_unknown_key(self):
        with pytest.raises(ValueError):
            probe_params("density", {"colour": "red"}, {})

    def test_read_config_errors(self, tmp_path):
        cfg = tmp_path / "bad.cfg"
        cfg.write_text("n 10\n")
        with pytest.raises(ValueError):
            read_config(cfg)


class TestGeometryCommands:
    def test_normalize(self, tmp_path, capsys):
        src, dst, svg = tmp_path / "in.rep", tmp_path / "out.rep", tmp_path / "out.svg"
        src.write_text(format_representation(Representation.from_curves(
            [[(0, 0), (2, 2)], [(0, 2), (2, 0)], [(1, 0), (1, 2)]])))
        code, out, _ = run(capsys, "normalize", str(src), "--out", str(dst), "--svg", str(svg))
        assert code == 0 and "PASS" in out
        assert parse_representation(dst.read_text()).n == 3 and svg.exists()

    def test_intersection(self, tmp_path, capsys):
        src = tmp_path / "in.rep"
        src.write_text(format_representation(Representation.from_curves([[(0, 0), (2, 2)], [(0, 2), (2, 0)]])))
        _, out, _ = run(capsys, "intersection", str(src))
        assert parse_graph(out) == make_basic("complete", 2)

    def test_outerstring(self, tmp_path, capsys):
        rep = tmp_path / "c6.rep"
        code, out, _ = run(capsys, "outerstring", "--graph", "cycle:6", "--out", str(rep))
        assert code == 0 and out.startswith("parts ")
        assert parse_representation(rep.read_text()).disk is not None

    def test_outerstring_refused(self, capsys):
        code, out, _ = run(capsys, "outerstring", "--graph", "G:4")
        assert code == 1 and out.startswith("verdict non-member")

    def test_k5(self, tmp_path, capsys):
        path = tmp_path / "k5.rep"
        write_representation(k5_star_representation([(0, 0), (4, 0), (5, 3), (2, 5), (-1, 3)]), path)
        _, out, _ = run(capsys, "k5", str(path))
        assert out.startswith("independent crossing pairs: 5")

    def test_special(self, capsys):
        _, out, _ = run(capsys, "special", "B", "3")
        assert parse_graph(out) == make_special_graph("B", 3)


def test_console_script_entry_point():
    proc = subprocess.run([sys.executable, "-m", "stringlimits.cli", "density", "--graphon", "const:1/2"],
                          capture_output=True, text=True, check=True)
    assert proc.stdout.startswith("edge_density 1/2")
