import json
from pathlib import Path

import pytest

from tdabm.cli import main

from .conftest import FIXTURES

D1 = str(FIXTURES / "dataset1.csv")


def run_build(tmp_path, *extra) -> Path:
    out = tmp_path / "g1.json"
    code = main(
        [
            "build", "--input", D1, "--axes", "X1,X2", "--color", "Y",
            "--eps", "1.5", "--policy", "sequential",
            "--no-standardize", "--out", str(out), *extra,
        ]
    )
    assert code == 0
    return out


class TestBuild:
    def test_writes_graph_with_seven_nodes(self, tmp_path, capsys):
        out = run_build(tmp_path)
        doc = json.loads(out.read_text())
        assert len(doc["nodes"]) == 7
        stdout = capsys.readouterr().out
        assert "balls=7" in stdout
        assert "edges=12" in stdout

    def test_writes_manifest_sidecar(self, tmp_path):
        out = run_build(tmp_path)
        manifest = json.loads(Path(str(out) + ".manifest.json").read_text())
        assert manifest["command"] == "build"
        assert manifest["flags"]["eps"] == 1.5
        assert D1 in manifest["inputs"]
        assert len(manifest["inputs"][D1]) == 64  # sha256 hex digest

    def test_zero_eps_exits_1(self, tmp_path, capsys):
        code = main(
            [
                "build", "--input", D1, "--axes", "X1,X2", "--color", "Y",
                "--eps", "0", "--out", str(tmp_path / "g.json"),
            ]
        )
        assert code == 1
        assert "error" in capsys.readouterr().err

    def test_random_policy_runs_are_byte_identical(self, tmp_path):
        a = run_build(tmp_path, "--policy", "random", "--seed", "42")
        first = a.read_bytes()
        b = run_build(tmp_path, "--policy", "random", "--seed", "42")
        assert b.read_bytes() == first

    def test_missing_input_exits_2(self, tmp_path, capsys):
        code = main(
            [
                "build", "--input", str(tmp_path / "absent.csv"),
                "--axes", "X1,X2", "--color", "Y", "--eps", "1.5",
                "--out", str(tmp_path / "g.json"),
            ]
        )
        assert code == 2
        assert "i/o error" in capsys.readouterr().err

    def test_unknown_flag_exits_1(self, capsys):
        assert main(["build", "--frobnicate"]) == 1


class TestPlot:
    def test_renders_svg_with_colorbar(self, tmp_path, capsys):
        graph = run_build(tmp_path)
        out = tmp_path / "g1.svg"
        code = main(
            [
                "plot", "--graph", str(graph), "--coloring", "Y",
                "--cmap", "rainbow", "--out", str(out),
            ]
        )
        assert code == 0
        svg = out.read_text()
        assert svg.startswith("<?xml")
        assert 'id="colorbar"' in svg

    def test_no_colorbar_flag(self, tmp_path):
        graph = run_build(tmp_path)
        out = tmp_path / "g1.svg"
        assert main(
            [
                "plot", "--graph", str(graph), "--coloring", "Y",
                "--no-colorbar", "--out", str(out),
            ]
        ) == 0
        assert 'id="colorbar"' not in out.read_text()

    def test_pinned_window_shares_scale_across_graphs(self, tmp_path):
        graph = run_build(tmp_path)
        outs = []
        for i, seed in enumerate((0, 1)):
            out = tmp_path / f"g{i}.svg"
            assert main(
                [
                    "plot", "--graph", str(graph), "--coloring", "Y",
                    "--vmin", "-2", "--vmax", "2",
                    "--layout-seed", str(seed), "--out", str(out),
                ]
            ) == 0
            outs.append(out.read_text())
        # same fills under both layouts: the scale is pinned, not data-driven
        fills = [sorted(p for p in o.split() if p.startswith('fill="#')) for o in outs]
        assert fills[0] == fills[1]

    def test_unknown_coloring_exits_1_listing_available(self, tmp_path, capsys):
        graph = run_build(tmp_path)
        code = main(
            [
                "plot", "--graph", str(graph), "--coloring", "Zed",
                "--out", str(tmp_path / "g.svg"),
            ]
        )
        assert code == 1
        err = capsys.readouterr().err
        assert "Zed" in err and "Y" in err

    def test_custom_cmap_file(self, tmp_path):
        graph = run_build(tmp_path)
        cmap = tmp_path / "gray.json"
        cmap.write_text(
            json.dumps(
                [{"t": 0.0, "rgb": [0, 0, 0]}, {"t": 1.0, "rgb": [255, 255, 255]}]
            )
        )
        out = tmp_path / "g.svg"
        assert main(
            [
                "plot", "--graph", str(graph), "--coloring", "Y",
                "--cmap", str(cmap), "--out", str(out),
            ]
        ) == 0


class TestSummary:
    def test_ball0_row_matches_reference(self, tmp_path, capsys):
        graph = run_build(tmp_path)
        capsys.readouterr()  # drop the build command's output
        assert main(["summary", "--graph", str(graph), "--input", D1]) == 0
        lines = capsys.readouterr().out.strip().split("\n")
        header = lines[0].split(",")
        row0 = dict(zip(header, lines[1].split(",")))
        assert row0["ball"] == "0"
        assert row0["obs"] == "485"
        # frozen reference values, cross-checked against the fixture data
        assert abs(float(row0["X1_mean"]) - 0.085) < 1e-3
        assert abs(float(row0["Y_mean"]) - (-0.587)) < 1e-3

    def test_out_file_and_manifest(self, tmp_path):
        graph = run_build(tmp_path)
        out = tmp_path / "summary.csv"
        assert main(
            ["summary", "--graph", str(graph), "--input", D1,
             "--out", str(out)]
        ) == 0
        assert out.exists()
        assert Path(str(out) + ".manifest.json").exists()


class TestStability:
    def test_row_count_contract(self, capsys):
        code = main(
            [
                "stability", "--input", D1, "--axes", "X1,X2", "--color", "Y",
                "--eps", "1.5", "--reps", "20", "--seed", "1",
                "--no-standardize",
            ]
        )
        assert code == 0
        lines = capsys.readouterr().out.strip().split("\n")
        assert len(lines) == 21  # header + one row per rep
        assert lines[0].startswith("rep,seed,balls,")

    def test_json_out(self, tmp_path):
        out = tmp_path / "report.json"
        assert main(
            [
                "stability", "--input", D1, "--axes", "X1,X2", "--color", "Y",
                "--eps", "1.5", "--reps", "3", "--seed", "1",
                "--no-standardize", "--out", str(out),
            ]
        ) == 0
        doc = json.loads(out.read_text())
        assert doc["reps"] == 3


class TestSynth:
    def test_deterministic_bytes(self, tmp_path, capsys):
        out1, out2 = tmp_path / "a.csv", tmp_path / "b.csv"
        for out in (out1, out2):
            assert main(
                ["synth", "--n", "200", "--rho", "0.5", "--seed", "7",
                 "--out", str(out)]
            ) == 0
        assert out1.read_bytes() == out2.read_bytes()
        assert out1.read_text().splitlines()[0] == "X1,X2,Y"
        assert len(out1.read_text().splitlines()) == 201


class TestVersionAndHelp:
    def test_version_flag(self, capsys):
        with pytest.raises(SystemExit) as exit_info:
            main(["--version"])
        assert exit_info.value.code == 0
