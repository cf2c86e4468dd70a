from __future__ import annotations

import io
import json
import sys

import pytest

from antiramsey.cli import main
from antiramsey.graph import complete_bipartite, cycle_graph, graph_from_edges, serialize_edge_list


@pytest.fixture
def files(tmp_path):
    out = {}
    for name, g in {
        "pentagon": cycle_graph(5),
        "k24": complete_bipartite(2, 4),
        "pentagons": graph_from_edges(8, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 0), (1, 5), (5, 6), (6, 7), (7, 0)]),
    }.items():
        p = tmp_path / f"{name}.txt"
        p.write_text(serialize_edge_list(g))
        out[name] = str(p)
    out["dir"] = tmp_path
    return out


def run(capsys, *argv, stdin: str | None = None):
    if stdin is not None:
        sys.stdin = io.StringIO(stdin)
    try:
        code = main(list(argv))
    finally:
        sys.stdin = sys.__stdin__
    out, err = capsys.readouterr()
    return code, out, err


def test_density(capsys, files):
    code, out, _ = run(capsys, "density", "--input", files["pentagon"])
    assert code == 0
    assert json.loads(out) == {"value": "1/1", "vertices": [0, 1, 2, 3, 4]}


def test_m2_csv(capsys, files):
    code, out, _ = run(capsys, "m2", "--input", files["pentagon"], "--format", "csv")
    assert code == 0 and out.splitlines() == ["value,vertices", "4/3,0 1 2 3 4"]


def test_force_check_k24(capsys, files):
    code, out, _ = run(capsys, "force-check", "--input", files["k24"], "--ell", "4")
    assert code == 0 and json.loads(out) == {"forces_rainbow": True}


def test_cycles_and_components(capsys, files):
    code, out, _ = run(capsys, "cycles", "--input", files["pentagons"], "--ell", "5")
    assert code == 0 and json.loads(out)["count"] == 2
    code, out, _ = run(capsys, "components", "--input", files["pentagons"], "--ell", "5")
    comp, = json.loads(out)["components"]
    assert comp["steps"][0]["config"]["config"] == "A2"


def test_colour_dense_input_fails_with_witness(capsys, files):
    code, out, err = run(capsys, "colour", "--input", files["k24"], "--ell", "5")
    assert code == 1 and out == ""
    assert json.loads(err)["witness"]["value"] == "4/3"


def test_colour_then_verify_round_trip(capsys, files):
    code, cert, _ = run(capsys, "colour", "--input", files["pentagons"], "--ell", "5")
    assert code == 0
    code, out, _ = run(capsys, "verify", "--input", "-", stdin=cert)
    assert code == 0
    d = json.loads(out)
    assert d["proper"] is True and d["rainbow"] is None
    assert out == cert


def test_verify_rejects_rainbow(capsys, files):
    cert = {"n": 5, "ell": 5, "edges": [[0, 1, 0], [0, 4, 1], [1, 2, 2], [2, 3, 3], [3, 4, 4]], "proper": True, "rainbow": None}
    code, out, _ = run(capsys, "verify", "--input", "-", stdin=json.dumps(cert))
    assert code == 1 and json.loads(out)["rainbow"] == [0, 1, 2, 3, 4]


def test_gnp_and_output_file(capsys, files):
    target = files["dir"] / "g.txt"
    code, out, _ = run(capsys, "gnp", "--n", "20", "--p", "0.2", "--seed", "5", "--output", str(target))
    assert code == 0 and out == ""
    first = target.read_text()
    run(capsys, "gnp", "--n", "20", "--p", "0.2", "--seed", "5", "--output", str(target))
    assert target.read_text() == first
    code, out, _ = run(capsys, "gnp", "--n", "20", "--c", "1", "--ell", "5", "--seed", "5", "--format", "json")
    assert code == 0 and json.loads(out)["n"] == 20


@pytest.mark.parametrize(
    "argv",
    [
        ["nonsense"],
        ["density"],
        ["density", "--input", "x", "--bogus"],
        ["gnp", "--n", "5", "--p", "0.5"],
        ["gnp", "--n", "5", "--seed", "1"],
        ["scan-k24", "--n", "10"],
        ["cycles", "--input", "/no/such/file", "--ell", "5"],
        ["cycles", "--input", "-", "--ell", "2"],
        ["scan-k24", "--seed", "1", "--n", "a,b"],
    ],
)
def test_usage_errors(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 2
    assert "usage" in err


def test_domain_errors(capsys, files):
    code, _, err = run(capsys, "density", "--input", "-", stdin="3\n0 7\n")
    assert code == 1 and "out of range" in err
    code, _, _ = run(capsys, "scan-colour", "--ell", "5", "--n", "100", "--c-grid", "1", "--trials", "1", "--seed", "1")
    assert code == 1


def test_scan_outputs(capsys):
    args = ["scan-obstruction", "--ell", "5", "--n", "30", "--c-grid", "0.5,4", "--trials", "3", "--seed", "8", "-q"]
    code, out1, _ = run(capsys, *args)
    assert code == 0 and len(out1.splitlines()) == 7
    _, out2, _ = run(capsys, *args)
    assert out1 == out2
    code, out, _ = run(capsys, *args, "--format", "json")
    d = json.loads(out)
    assert len(d["records"]) == 6 and d["columns"][0] == "ell"
    code, out, _ = run(capsys, "scan-colour", "--ell", "5", "--n", "20", "--c-grid", "1", "--trials", "3",
                       "--seed", "1", "--timing")
    assert code == 0 and out.splitlines()[0].endswith("elapsed_ms")


def test_quiet_flag_position(capsys):
    code, _, err = run(capsys, "-q", "scan-k24", "--n", "20", "--c-grid", "1", "--trials", "2", "--seed", "1")
    assert code == 0 and err == ""
