import io
import json
import subprocess
import sys
from fractions import Fraction
from pathlib import Path

import pytest

from ata_zones.cli import main
from ata_zones.mtl import parse_mtl, satisfied_by
from ata_zones.textio import parse_ata, parse_word
from ata_zones.zones import parse_node

DATA = Path(__file__).resolve().parents[1] / "demos" / "data"
A1 = str(DATA / "no_unit_gap.ata")
A2 = str(DATA / "answered_requests.ata")
TA = str(DATA / "unit_gap.ta")


def run(*argv):
    out = io.StringIO()
    code = main([str(a) for a in argv], out)
    return code, out.getvalue()


def test_sat_reports_a_witness():
    code, text = run("sat", "--mtl", "(F a) U[1,2] c")
    assert code == 1 and text.startswith("NonEmpty")
    line = next(l for l in text.splitlines() if l.startswith("witness: "))
    word = parse_word(line[len("witness: "):])
    assert satisfied_by(word, parse_mtl("(F a) U[1,2] c"))


def test_sat_json_and_unsatisfiable():
    code, text = run("sat", "--mtl", "a & !a", "--json")
    payload = json.loads(text)
    assert code == 0 and payload["status"] == "Empty" and payload["witness"] is None
    assert list(payload) == sorted(payload)
    code, text = run("sat", "--mtl", "X[1,1] a", "--json")
    assert code == 1 and json.loads(text)["witness"][1] == ["1", "a"]


def test_sat_budget_and_pruning_flags():
    code, text = run("sat", "--mtl", "(F a) U[1,2] c", "--prune", "none", "--max-nodes", "1")
    assert code == 2 and text.startswith("Inconclusive")
    code, _ = run("sat", "--mtl", "(F a) U[1,2] c", "--prune", "full", "--order", "dfs")
    assert code == 1


def test_simulate_prints_the_run():
    code, text = run("simulate", "--ata", A1, "--word", "(0.5,a)(0.7,a)")
    assert code == 0
    assert text.splitlines() == [
        "ACCEPTED",
        "  {(q0,0)}",
        "  --1/2--> {(q0,1/2)}",
        "  --a--> {(q0,1/2), (q1,0)}",
        "  --7/10--> {(q0,6/5), (q1,7/10)}",
        "  --a--> {(q0,6/5), (q1,0), (q1,7/10)}",
    ]
    code, text = run("simulate", "--ata", A1, "--word", "(0.5,a)(1,a)", "--json")
    assert code == 1 and json.loads(text) == {"accepted": False, "initial": "{(q0,0)}", "run": None}


def test_entail_verdicts(tmp_path):
    pair, triple = DATA / "pair.zone", DATA / "triple.zone"
    assert run("entail", "--z", pair, "--zprime", triple, "--M", 3) == (0, "ENTAILS\n")
    code, text = run("entail", "--z", triple, "--zprime", pair, "--M", 3)
    assert code == 1 and text.startswith("NOT-ENTAILS\ncounterexample: ")
    assert run("entail", "--bounded", "--z", pair, "--zprime", triple, "--M", 3) == (1, "NOT-ENTAILS\n")
    code, text = run("entail", "--z", triple, "--zprime", pair, "--M", 3, "--json")
    payload = json.loads(text)
    assert payload["entails"] is False and set(payload["counterexample"]) == {"q.1", "q.2"}
    lonely = tmp_path / "inactive.zone"
    lonely.write_text("EMPTYZONE\ninactive: {p.0}\n")
    code, text = run("entail", "--z", lonely, "--zprime", pair, "--M", 1)
    assert code == 1 and "inactive" in text.splitlines()[1]


def test_empty_and_dot(tmp_path):
    dot = tmp_path / "g.dot"
    code, text = run("empty", "--ata", A2, "--dot", dot)
    assert code == 1 and text.splitlines()[1] == "witness: "
    assert dot.read_text().startswith("digraph zonegraph {")


def test_modelcheck_with_automaton_and_formula():
    code, text = run("modelcheck", "--ta", TA, "--spec", A1)
    assert code == 0 and text.startswith("Empty")
    assert run("modelcheck", "--ta", TA, "--ata", A1)[0] == 0
    code, text = run("modelcheck", "--ta", TA, "--mtl", "F a", "--json")
    assert code == 1 and json.loads(text)["status"] == "NonEmpty"
    # the automaton forces a gap of exactly one, so a gap in [0,1) cannot occur
    assert run("modelcheck", "--ta", TA, "--mtl", "a & X[0,1) a")[0] == 0


def test_modelcheck_needs_exactly_one_spec(capsys):
    assert run("modelcheck", "--ta", TA)[0] == 3
    assert run("modelcheck", "--ta", TA, "--spec", A1, "--mtl", "a")[0] == 3
    assert "exactly one" in capsys.readouterr().err


def test_translate_output_reparses():
    code, text = run("translate", "--mtl", "(F a) U[1,2] c", "--alphabet", "a", "b", "c")
    assert code == 0 and "# q2: ((a | !a) U[0,inf) a)" in text
    ata = parse_ata(text)
    assert ata.locations == {"init", "q1", "q2"} and not ata.accepting
    code, text = run("translate", "--mtl", "a", "--json")
    payload = json.loads(text)
    assert parse_ata(payload["ata"]).initial == "init" and payload["locations"] == {"init": "init[a]"}


def test_width_bound_verb(capsys):
    assert run("width-bound", "--mtl", "(a U[1,2] b) & (c U[0,1] d)") == (0, "2\n")
    assert run("width-bound", "--mtl", "(F a) U[1,2] c", "--json") == (0, '{"width_bound": 1}\n')
    assert run("width-bound", "--mtl", "(a U[1,2] b) U c")[0] == 3
    assert "one-sided" in capsys.readouterr().err


def test_gen_hard(tmp_path):
    cnf = DATA / "sample.cnf"
    code, text = run("gen-hard", cnf, "--check")
    assert code == 0 and text.startswith("M = 56\nsatisfiable = True\n--- Z\n")
    prefix = tmp_path / "inst"
    run("gen-hard", cnf, "--out", prefix)
    z = parse_node((tmp_path / "inst.z.zone").read_text())
    zp = parse_node((tmp_path / "inst.zprime.zone").read_text())
    assert len(z.zone.vars) == 12 and len(zp.zone.vars) == 24
    code, text = run("entail", "--z", tmp_path / "inst.z.zone", "--zprime", tmp_path / "inst.zprime.zone",
                     "--M", 56)
    assert code == 1
    payload = json.loads(run("gen-hard", cnf, "--json")[1])
    assert payload["M"] == 56 and payload["satisfiable"] is None


def exit_code(*argv):
    """Like ``run`` but also catching argparse's own exits."""
    try:
        return run(*argv)[0]
    except SystemExit as e:
        return e.code


@pytest.mark.parametrize("argv,needle", [
    (["sat", "--mtl", "!(a & b)"], "column 2"),
    (["simulate", "--ata", A1, "--word", "(0.5,a"], "malformed"),
    (["empty", "--ata", "/nonexistent/file.ata"], "No such file"),
    (["sat", "--mtl", "a", "--prune", "sometimes"], "invalid choice"),
    (["frobnicate"], "invalid choice"),
])
def test_input_errors_exit_3(argv, needle, capsys):
    assert exit_code(*argv) == 3
    assert needle in capsys.readouterr().err


def test_empty_cnf_clause_is_an_input_error(tmp_path, capsys):
    cnf = tmp_path / "e.cnf"
    cnf.write_text("p cnf 3 1\n0\n1 2 3 0\n")
    assert run("gen-hard", cnf)[0] == 3
    assert "three literals" in capsys.readouterr().err


def test_bad_ata_file_reports_line(tmp_path, capsys):
    bad = tmp_path / "bad.ata"
    bad.write_text("alphabet a;\ninit p;\np -a-> p & & p;\n")
    assert run("empty", "--ata", bad)[0] == 3
    assert "line 3, column 12" in capsys.readouterr().err


def test_console_entry_point():
    proc = subprocess.run([sys.executable, "-m", "ata_zones", "sat", "--mtl", "a", "--json"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 1
    assert json.loads(proc.stdout)["witness"] == [["0", "a"]]
    assert Fraction(json.loads(proc.stdout)["witness"][0][0]) == 0
