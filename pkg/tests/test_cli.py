from __future__ import annotations

import json
from pathlib import Path

import pytest

from kpkit.cli import main

PATH_CSV = """source,target,kind,timestamp
a,b,wave,
b,c,wave,
c,d,wave,
d,e,wave,
"""

PHOTOS_CSV = """photo_id,participant
p1,a
p1,b
p2,b
p2,c
"""


def _write(path: Path, text: str) -> Path:
    path.write_text(text, encoding="utf-8", newline="")
    return path


@pytest.fixture()
def path_inputs(tmp_path):
    return _write(tmp_path / "interactions.csv", PATH_CSV)


def _simulate(out_dir, seed=42):
    return main(
        [
            "simulate",
            "--clusters", "5",
            "--cluster-size", "6",
            "--animators", "2",
            "--seed", str(seed),
            "--out-dir", str(out_dir),
        ]
    )


class TestAnalyze:
    def test_writes_report_and_manifest(self, tmp_path, path_inputs):
        roles = _write(tmp_path / "roles.csv", "node_id,role\nc,seeded_developer\n")
        out = tmp_path / "out"
        code = main(
            [
                "analyze",
                "--interactions", str(path_inputs),
                "--roles", str(roles),
                "--k", "1",
                "--method", "both",
                "--seed", "1",
                "--out-dir", str(out),
                "--format", "json",
            ]
        )
        assert code == 0
        report = json.loads((out / "report.json").read_text(encoding="utf-8"))
        manifest = json.loads((out / "manifest.json").read_text(encoding="utf-8"))
        assert {kp["method"] for kp in report["kp_results"]} == {"neg", "pos"}
        assert manifest["seed_used"] == 1
        assert manifest["cfg"]["k"] == 1
        assert any(i["kind"] == "roles" for i in manifest["inputs"])

    def test_photos_input(self, tmp_path):
        photos = _write(tmp_path / "photos.csv", PHOTOS_CSV)
        out = tmp_path / "out"
        code = main(
            [
                "analyze",
                "--photos", str(photos),
                "--k", "1",
                "--method", "neg",
                "--out-dir", str(out),
            ]
        )
        assert code == 0
        report = json.loads((out / "report.json").read_text(encoding="utf-8"))
        assert report["kp_results"][0]["chosen"] == ["b"]

    def test_k_zero_exits_3(self, tmp_path, path_inputs, capsys):
        code = main(
            [
                "analyze",
                "--interactions", str(path_inputs),
                "--k", "0",
                "--out-dir", str(tmp_path / "out"),
            ]
        )
        assert code == 3
        assert "k must be" in capsys.readouterr().err

    def test_malformed_csv_names_line(self, tmp_path, capsys):
        bad = _write(
            tmp_path / "interactions.csv",
            "source,target,kind,timestamp\n"
            "a,b,wave,\n" "b,c,wave,\n" "c,d,wave,\n" "d,e,wave,\n" "e,f,wave,\n"
            "g,g,wave,\n",
        )
        code = main(
            [
                "analyze",
                "--interactions", str(bad),
                "--k", "1",
                "--out-dir", str(tmp_path / "out"),
            ]
        )
        assert code == 2
        assert "line 7" in capsys.readouterr().err

    def test_no_inputs_exits_3(self, tmp_path):
        assert main(["analyze", "--k", "1", "--out-dir", str(tmp_path)]) == 3

    def test_bad_method_exits_3(self, tmp_path, path_inputs):
        code = main(
            [
                "analyze",
                "--interactions", str(path_inputs),
                "--method", "fastest",
                "--out-dir", str(tmp_path / "out"),
            ]
        )
        assert code == 3

    def test_auto_k_reach(self, tmp_path):
        data = tmp_path / "data"
        assert _simulate(data) == 0
        out = tmp_path / "out"
        code = main(
            [
                "analyze",
                "--interactions", str(data / "interactions.csv"),
                "--roles", str(data / "roles.csv"),
                "--method", "both",
                "--seed", "1",
                "--auto-k-reach", "0.90",
                "--out-dir", str(out),
            ]
        )
        assert code == 0
        manifest = json.loads((out / "manifest.json").read_text(encoding="utf-8"))
        report = json.loads((out / "report.json").read_text(encoding="utf-8"))
        pos = next(r for r in report["kp_results"] if r["method"] == "pos")
        assert pos["fit"] >= 0.90
        assert manifest["cfg"]["k"] == len(pos["chosen"])


class TestFragment:
    def test_path_remove_center(self, tmp_path, path_inputs, capsys):
        remove = _write(tmp_path / "remove.txt", "c\n")
        code = main(
            ["fragment", "--graph-inputs", str(path_inputs), "--remove", str(remove)]
        )
        assert code == 0
        assert capsys.readouterr().out.strip() == "initial 0.000 final 0.667 change 0.667"

    def test_empty_removal(self, tmp_path, path_inputs, capsys):
        remove = _write(tmp_path / "remove.txt", "\n")
        code = main(
            ["fragment", "--graph-inputs", str(path_inputs), "--remove", str(remove)]
        )
        assert code == 0
        assert "change 0.000" in capsys.readouterr().out

    def test_unknown_node_exits_4(self, tmp_path, path_inputs, capsys):
        remove = _write(tmp_path / "remove.txt", "zzz\n")
        code = main(
            ["fragment", "--graph-inputs", str(path_inputs), "--remove", str(remove)]
        )
        assert code == 4
        assert "zzz" in capsys.readouterr().err


class TestExport:
    def test_dot_export(self, tmp_path, path_inputs):
        out = tmp_path / "graph.dot"
        code = main(
            [
                "export",
                "--graph-inputs", str(path_inputs),
                "--format", "dot",
                "--out", str(out),
            ]
        )
        assert code == 0
        text = out.read_text(encoding="utf-8")
        assert text.startswith("graph interaction_network {")
        assert '"a" -- "b";' in text

    def test_repeated_export_is_byte_identical(self, tmp_path, path_inputs):
        out1, out2 = tmp_path / "g1.dot", tmp_path / "g2.dot"
        for out in (out1, out2):
            assert (
                main(
                    [
                        "export",
                        "--graph-inputs", str(path_inputs),
                        "--format", "dot",
                        "--out", str(out),
                    ]
                )
                == 0
            )
        assert out1.read_bytes() == out2.read_bytes()

    def test_bad_format_exits_3(self, tmp_path, path_inputs):
        code = main(
            [
                "export",
                "--graph-inputs", str(path_inputs),
                "--format", "png",
                "--out", str(tmp_path / "g.png"),
            ]
        )
        assert code == 3

    def test_highlight_from_report(self, tmp_path, path_inputs):
        roles = _write(tmp_path / "roles.csv", "node_id,role\nc,seeded_developer\n")
        out = tmp_path / "out"
        main(
            [
                "analyze",
                "--interactions", str(path_inputs),
                "--roles", str(roles),
                "--k", "1",
                "--seed", "1",
                "--out-dir", str(out),
            ]
        )
        dot = tmp_path / "g.dot"
        code = main(
            [
                "export",
                "--graph-inputs", str(path_inputs),
                "--roles", str(roles),
                "--format", "dot",
                "--highlight", str(out / "report.json"),
                "--highlight-method", "neg",
                "--out", str(dot),
            ]
        )
        assert code == 0
        assert '"c" [fillcolor=orange' in dot.read_text(encoding="utf-8")


class TestSimulate:
    def test_writes_three_files(self, tmp_path):
        out = tmp_path / "sim"
        assert _simulate(out) == 0
        assert sorted(p.name for p in out.iterdir()) == [
            "interactions.csv",
            "roles.csv",
            "truth.json",
        ]

    def test_identical_across_runs(self, tmp_path):
        a, b = tmp_path / "a", tmp_path / "b"
        assert _simulate(a) == 0
        assert _simulate(b) == 0
        for name in ("interactions.csv", "roles.csv", "truth.json"):
            assert (a / name).read_bytes() == (b / name).read_bytes()

    def test_single_cluster_exits_3(self, tmp_path):
        code = main(
            [
                "simulate",
                "--clusters", "1",
                "--cluster-size", "4",
                "--animators", "1",
                "--out-dir", str(tmp_path),
            ]
        )
        assert code == 3

    def test_missing_input_file_exits_2(self, tmp_path):
        code = main(
            [
                "analyze",
                "--interactions", str(tmp_path / "nope.csv"),
                "--out-dir", str(tmp_path / "out"),
            ]
        )
        assert code == 2
