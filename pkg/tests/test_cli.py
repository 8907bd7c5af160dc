import json
import subprocess
import sys

import pytest

from sigsys.cli import AnalysisReport, main
from sigsys.graphs import complete, cycle, format_graph, mycielski_cone, parse_graph, read_graph, u53
from sigsys.valued import D1, format_valued


@pytest.fixture
def gfile(tmp_path):
    def make(g, name="g.txt"):
        p = tmp_path / name
        p.write_text(format_graph(g))
        return str(p)

    return make


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_gen_roundtrip(tmp_path, capsys):
    path = tmp_path / "u.txt"
    assert main(["gen", "u53", "-o", str(path)]) == 0
    assert read_graph(str(path)) == u53()
    code, out, _ = run(capsys, "gen", "cycle", "7")
    assert code == 0 and out == format_graph(cycle(7))


def test_gen_mycielski(gfile, capsys):
    code, out, _ = run(capsys, "gen", "mycielski", "--base", gfile(cycle(5)), "--levels", "2")
    assert code == 0 and parse_graph(out) == mycielski_cone(cycle(5), 2)
    assert run(capsys, "gen", "mycielski")[0] == 2


def test_group(gfile, capsys):
    code, out, _ = run(capsys, "group", gfile(complete(3)), "--dset", "d2,d3", "--json")
    assert code == 0
    assert json.loads(out) == {"free_rank": 0, "torsion": [2, 2], "ambient_rank": 6}


def test_analyze_k4(gfile, capsys):
    code, out, _ = run(capsys, "analyze", gfile(complete(4)), "--certificate", "--json")
    assert code == 0
    rep = AnalysisReport.from_json(out)
    assert rep.feasible and "chi_ge_4" in rep.conclusions
    assert rep.system == {"variables": 13, "equations": 12, "feasible": True}
    assert rep.certificate["valid"] and rep.certificate["length"] % 2 == 1
    assert rep.reference == {"K3": {"feasible": False}}
    assert AnalysisReport.from_json(rep.to_json()) == rep


def test_analyze_c7_text(gfile, capsys):
    code, out, _ = run(capsys, "analyze", gfile(cycle(7)))
    assert code == 0
    assert "feasible: false" in out and "coind_le_3" in out


def test_analyze_target(gfile, capsys):
    code, out, _ = run(capsys, "analyze", gfile(complete(4)), "--target", gfile(complete(3), "t.txt"), "--json")
    rep = json.loads(out)
    assert code == 0 and "no_hom_to_target" in rep["conclusions"]
    assert rep["target"]["no_hom_proof"] is True


def test_analyze_bipartite_short_circuit(gfile, capsys):
    code, out, _ = run(capsys, "analyze", gfile(cycle(6)), "--json")
    rep = json.loads(out)
    assert code == 0 and rep["system"] is None and rep["conclusions"] == ["bipartite_coind_le_2"]


def test_analyze_params(gfile, capsys):
    code, out, _ = run(capsys, "analyze", gfile(cycle(7)), "--parity-q", "0", "--json")
    rep = json.loads(out)
    assert code == 0 and rep["feasible"] and "coind_le_3" not in rep["conclusions"]


def test_dset_file_and_wtd(gfile, tmp_path, capsys):
    dpath = tmp_path / "d1.txt"
    dpath.write_text(format_valued(D1))
    _, builtin_out, _ = run(capsys, "group", gfile(u53()), "--json")
    _, file_out, _ = run(capsys, "group", gfile(u53()), "--dset-file", str(dpath), "--json")
    assert builtin_out == file_out
    code, out, _ = run(capsys, "analyze", gfile(complete(4)), "--wtd", gfile(complete(4), "w.txt"), "--json")
    assert code == 0 and json.loads(out)["dset"] == ["wtd"]


def test_certify(gfile, capsys):
    code, out, _ = run(capsys, "certify", gfile(u53()), "--json")
    rep = json.loads(out)
    assert code == 0 and rep["valid"] and rep["length"] % 2 == 1
    assert run(capsys, "certify", gfile(cycle(7)))[0] == 1


def test_oracle(gfile, capsys):
    code, out, _ = run(capsys, "oracle", gfile(complete(4)), "--json")
    rep = json.loads(out)
    assert code == 0
    assert rep["component_size"] == 64 and rep["loops"] == 24 and rep["all_signatures_zero"]
    assert rep["cone_level"] >= 1
    assert run(capsys, "oracle", gfile(complete(4)), "--cycle", "4")[0] == 2


def test_input_errors(tmp_path, gfile, capsys):
    assert run(capsys, "analyze", str(tmp_path / "missing.txt"))[0] == 2
    bad = tmp_path / "bad.txt"
    bad.write_text("3 1\n0 7\n")
    assert run(capsys, "analyze", str(bad))[0] == 2
    assert run(capsys, "analyze", gfile(complete(4)), "--dset", "d9")[0] == 2
    with pytest.raises(SystemExit):
        main(["nonsense"])


def test_guard_exit(gfile, capsys, monkeypatch):
    monkeypatch.setenv("SIGSYS_GUARD", "100")
    assert run(capsys, "oracle", gfile(u53()))[0] == 3
    monkeypatch.setenv("SIGSYS_GUARD", "x")
    assert run(capsys, "oracle", gfile(complete(4)))[0] == 2


def test_deterministic(gfile, capsys):
    path = gfile(u53())
    outs = {run(capsys, "analyze", path, "--certificate", "--json")[1] for _ in range(2)}
    assert len(outs) == 1


def test_module_entry_point(gfile):
    proc = subprocess.run(
        [sys.executable, "-m", "sigsys", "group", gfile(complete(4))], capture_output=True, text=True
    )
    assert proc.returncode == 0 and "free rank: 7" in proc.stdout
