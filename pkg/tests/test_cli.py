import json
import subprocess
import sys

import pytest

from conftest import seven_vertex_example, path_graph
from matchpow import WeightedOrientedGraph
from matchpow.cli import main
from matchpow.serialize import save_graph, save_ideal, load_ideal
from matchpow import Monomial, MonomialIdeal


@pytest.fixture()
def seven_vertex_file(tmp_path):
    path = tmp_path / "seven.json"
    save_graph(seven_vertex_example(), path)
    return str(path)


@pytest.fixture()
def negative_graph_file(tmp_path):
    D = WeightedOrientedGraph.build(6, [(1, 3), (3, 2), (3, 4), (4, 5), (4, 6)], {3: 2})
    path = tmp_path / "neg.json"
    save_graph(D, path)
    return str(path)


def test_classify_exit_codes(seven_vertex_file, negative_graph_file, tmp_path, capsys):
    cert_path = tmp_path / "cert.json"
    assert main(["classify", seven_vertex_file, "--certificate", str(cert_path), "--verify"]) == 0
    out = json.loads(capsys.readouterr().out)
    assert out["polymatroidal_last_power"] is True
    assert out["certificate_verified"] is True
    assert json.loads(cert_path.read_text())["verdict"] is True

    assert main(["classify", negative_graph_file]) == 1
    assert main(["classify", str(tmp_path / "missing.json")]) == 2


def test_classify_reports_source_normalization(tmp_path, capsys):
    doc = {"vertices": ["u", "v"], "edges": [["u", "v"]], "weights": {"u": 4, "v": 2}}
    path = tmp_path / "g.json"
    path.write_text(json.dumps(doc))
    assert main(["classify", str(path)]) == 0
    err = capsys.readouterr().err
    assert "u" in err and "reset source weights" in err


def test_power_command(seven_vertex_file, tmp_path, capsys):
    out_path = tmp_path / "ideal.json"
    assert main(["power", seven_vertex_file, "--k", "3", "--ideal-out", str(out_path)]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["n"] == 7
    assert sorted(doc["generators"]) == [
        [2, 2, 1, 1, 1, 0, 1],
        [2, 2, 1, 1, 1, 1, 0],
    ]
    assert load_ideal(out_path).gens


def test_betti_command(tmp_path, capsys):
    from matchpow import edge_ideal

    path = tmp_path / "p4.json"
    save_ideal(edge_ideal(path_graph(4)), path)
    assert main(["betti", str(path), "--multigraded"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert {"i": 0, "degree": 2, "rank": 3} in doc["total"]
    assert {"i": 1, "degree": 3, "rank": 2} in doc["total"]
    assert doc["regularity"] == 2
    assert any(entry["i"] == 1 for entry in doc["multigraded"])
    assert main(["betti", str(path), "--field", "q"]) == 0


def test_check_commands(tmp_path, capsys):
    ideal_path = tmp_path / "i.json"
    save_ideal(
        MonomialIdeal.from_monomials(
            4, [Monomial((1, 1, 0, 0)), Monomial((0, 0, 1, 1))]
        ),
        ideal_path,
    )
    assert main(["check", "poly", str(ideal_path)]) == 1
    doc = json.loads(capsys.readouterr().out)
    assert doc["polymatroidal"] is False and "witness" in doc
    assert main(["check", "linear", str(ideal_path)]) == 1
    assert main(["check", "linrel", str(ideal_path)]) == 1

    from matchpow import edge_ideal, matching_power

    good = matching_power(edge_ideal(path_graph(5)), 2)
    good_path = tmp_path / "good.json"
    save_ideal(good, good_path)
    assert main(["check", "poly", str(good_path)]) == 0
    assert main(["check", "linear", str(good_path)]) == 0
    assert main(["check", "linrel", str(good_path)]) == 0


def test_verify_commands_small(tmp_path, capsys):
    out = tmp_path / "reports.jsonl"
    assert (
        main(
            [
                "--workers",
                "1",
                "verify",
                "thm11",
                "--trials",
                "10",
                "--max-n",
                "5",
                "--seed",
                "42",
                "--out",
                str(out),
            ]
        )
        == 0
    )
    lines = [json.loads(l) for l in out.read_text().splitlines()]
    assert len(lines) == 10
    capsys.readouterr()

    assert (
        main(
            ["verify", "thm34", "--exhaustive", "--max-n", "3", "--max-weight", "2"]
        )
        == 0
    )
    summary = json.loads(capsys.readouterr().out)
    assert summary["disagreement_count"] == 0

    assert main(["verify", "lemma22", "--pairs", "4", "--seed", "9"]) == 0
    capsys.readouterr()
    assert main(["verify", "lemma31", "--max-n", "4"]) == 0
    capsys.readouterr()


def test_enumerate_command(tmp_path, capsys):
    out_dir = tmp_path / "out"
    assert main(["enumerate", "--nu", "1", "--budget", "4", "--out", str(out_dir)]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["generated"] == 4
    files = sorted(out_dir.glob("*.json"))
    assert len(files) == 4
    assert json.loads(files[0].read_text())["edges"]


def test_config_file_supplies_workers(tmp_path, capsys):
    config = tmp_path / "config.json"
    config.write_text(json.dumps({"workers": 1}))
    assert (
        main(
            ["--config", str(config), "verify", "thm11", "--trials", "5", "--max-n", "4"]
        )
        == 0
    )
    capsys.readouterr()
    assert main(["--config", str(tmp_path / "nope.json"), "classify", "x"]) == 2


def test_cli_entrypoint_subprocess(seven_vertex_file):
    proc = subprocess.run(
        [sys.executable, "-m", "matchpow.cli", "classify", seven_vertex_file],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["polymatroidal_last_power"] is True
