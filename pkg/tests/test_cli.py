import json

import pytest

from hamcover.cli import BAD_INPUT, INFEASIBLE, OK, main
from hamcover.graph import complete_graph, path_graph, write_graph


@pytest.fixture
def k5(tmp_path):
    path = tmp_path / "k5.txt"
    write_graph(complete_graph(5), path)
    return str(path)


def _json_out(capsys):
    return json.loads(capsys.readouterr().out)


def test_generate_round_trip(tmp_path):
    out = tmp_path / "g.txt"
    assert main(["generate", "--n", "20", "--p", "0.3", "--seed", "4", "--out", str(out)]) == OK
    assert out.read_text().splitlines()[0] == "20"


def test_cover_then_verify(tmp_path, k5, capsys):
    cert = tmp_path / "cert.json"
    assert main(["cover", "--graph", k5, "--out", str(cert), "--require-optimal"]) == OK
    capsys.readouterr()
    assert main(["verify", "--graph", k5, "--cert", str(cert)]) == OK
    out = _json_out(capsys)
    assert out["ok"] and out["optimal"] and out["multiplicity_profile"] == {"1": 10}


def test_verify_rejects_tampered_certificate(tmp_path, k5, capsys):
    cert = tmp_path / "cert.json"
    cert.write_text(json.dumps({"cycles": [[0, 1, 2, 3, 4]]}))
    assert main(["verify", "--graph", k5, "--cert", str(cert)]) == INFEASIBLE
    assert _json_out(capsys)["violation"] == "uncovered-edge"


def test_factor_infeasible_emits_certificate(tmp_path, capsys):
    g = tmp_path / "p3.txt"
    write_graph(path_graph(3), g)
    demand = tmp_path / "f.txt"
    demand.write_text("1\n1\n1\n")
    assert main(["factor", "--graph", str(g), "--demand", str(demand)]) == INFEASIBLE
    out = _json_out(capsys)
    assert out["certificate"]["alpha"] > out["certificate"]["beta"]


def test_hamilton_and_oracle(k5, capsys):
    assert main(["hamilton", "--graph", k5, "--pair", "0", "4"]) == OK
    assert _json_out(capsys)["path"][0] == 0
    assert main(["oracle", "--graph", k5]) == OK
    assert _json_out(capsys)["min_cover"] == 2


def test_bad_inputs_exit_3(tmp_path, k5):
    assert main(["cover", "--graph", str(tmp_path / "nope.txt")]) == BAD_INPUT
    bad = tmp_path / "bad.txt"
    bad.write_text("3\n0 0\n")
    assert main(["cover", "--graph", str(bad)]) == BAD_INPUT
    assert main(["generate", "--n", "5", "--p", "2"]) == BAD_INPUT
    assert main(["cover"]) == BAD_INPUT


def test_experiment_command(tmp_path, capsys):
    csv_path = tmp_path / "rows.csv"
    code = main(["experiment", "--grid", "10:0.5", "--seeds", "2", "--csv", str(csv_path)])
    assert code == OK
    assert len(csv_path.read_text().splitlines()) == 3
