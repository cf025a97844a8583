import json

import pytest

from graphdesigns import cli


def doc(capsys, *argv):
    code = cli.main([*argv, "--format", "structured"])
    out = capsys.readouterr().out
    return code, json.loads(out) if code in (0, 3) else out


def test_spectrum_cube(capsys):
    code, d = doc(capsys, "spectrum", "--cube", "3")
    assert code == 0
    assert [(e["walk_eigenvalue"], e["dimension"]) for e in d["results"]["eigenspaces"]] == [
        ("1", 1), ("-1", 1), ("1/3", 3), ("-1/3", 3)]
    code, d = doc(capsys, "spectrum", "--cube", "3", "--dist", "2")
    spaces = d["results"]["eigenspaces"]
    assert {e["walk_eigenvalue"]: e["dimension"] for e in spaces} == {"1": 1, "0": 4, "-1/3": 3}
    assert [e["weights"] for e in spaces if e["walk_eigenvalue"] == "0"] == [[1, 3]]


def test_spectrum_fixture(capsys):
    code, d = doc(capsys, "spectrum", "--fixture", "complete:5")
    assert [(e["eigenvalue"], e["dimension"]) for e in d["results"]["eigenspaces"]] == [("0", 1), ("-1.25", 4)]
    assert d["provenance"] == "floating"


def test_spectrum_graph_file(capsys, tmp_path):
    p = tmp_path / "g.json"
    p.write_text(json.dumps({"n": 3, "edges": [[0, 1], [1, 2], [0, 2]]}))
    code, d = doc(capsys, "spectrum", "--graph", str(p))
    assert code == 0 and d["results"]["vertex_count"] == 3


@pytest.mark.parametrize("argv, k, eff, extremal, stable", [
    (["--cube", "7", "--code", "hamming:3"], 7, "16/93", True, True),
    (["--cube", "4", "--code", "lift:hamming:2"], 4, "2/5", True, False),
    (["--fixture", "complete:5", "--design", "0"], 1, "1", True, True),
    (["--cube", "3", "--design", "000,111"], 3, "2/5", True, True),
])
def test_verify(capsys, argv, k, eff, extremal, stable):
    code, d = doc(capsys, "verify", *argv)
    r = d["results"]
    assert (r["k"], r["efficacy"], r["extremal"], r["stable"]) == (k, eff, extremal, stable)


def test_verify_design_file(capsys, tmp_path):
    p = tmp_path / "w.txt"
    p.write_text("0\n7\n")
    code, d = doc(capsys, "verify", "--cube", "3", "--design", str(p))
    assert d["results"]["efficacy"] == "2/5"


def test_search(capsys):
    code, d = doc(capsys, "search", "--cube", "4", "--max-size", "4")
    r = d["results"]
    assert (r["best_efficacy"], r["witness_count"], r["stable_witnesses"]) == ("2/5", 16, 0)
    code, d = doc(capsys, "search", "--fixture", "complete:5", "--max-size", "1")
    assert d["results"]["best_efficacy"] == "1" and d["results"]["witness_count"] == 5


@pytest.mark.parametrize("argv, code", [
    (["spectrum", "--fixture", "nosuch"], 2),
    (["spectrum"], 2),
    (["verify", "--cube", "3", "--design", "0,9"], 2),
    (["verify", "--cube", "3", "--code", "hamming:9"], 2),
    (["search", "--cube", "20", "--max-size", "2"], 4),
    (["search", "--fixture", "petersen", "--max-size", "0"], 2),
])
def test_exit_codes(capsys, argv, code):
    assert cli.main(argv) == code


def test_usage_error_exits_2():
    with pytest.raises(SystemExit) as info:
        cli.main(["reproduce", "table9"])
    assert info.value.code == 2


@pytest.mark.parametrize("target", ["table1", "table2", "table3"])
def test_reproduce_tables_match(capsys, target):
    code, d = doc(capsys, "reproduce", target)
    assert code == 0 and d["results"]["match"]


def test_reproduce_table1_reports_unknown(capsys):
    code, d = doc(capsys, "reproduce", "table1")
    opt = {(r["graph"], r["subset"]): r["optimal"] for r in d["results"]["rows"]}
    assert opt[("Q7", "H3")] == "unknown" and opt[("Q6", "pi(H3)")] == "unknown"


def test_reproduce_efficacies_flags_kneser_row(capsys):
    code, d = doc(capsys, "reproduce", "efficacies")
    assert code == 3
    assert [(m["row"], m["expected"], m["got"]) for m in d["results"]["mismatches"]] == [
        ("KG(5,2)^C / Y", "4/5", "2/3")]


def test_output_is_deterministic(capsys):
    outs = []
    for _ in range(2):
        cli.main(["verify", "--cube", "6", "--code", "project:hamming:3", "--format", "structured"])
        outs.append(capsys.readouterr().out)
    assert outs[0] == outs[1]


def test_table_format(capsys):
    assert cli.main(["reproduce", "table2"]) == 0
    out = capsys.readouterr().out
    assert "Lambda_1" in out and "match" in out
