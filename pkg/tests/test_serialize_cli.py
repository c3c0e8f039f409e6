from __future__ import annotations

import json
import subprocess
import sys

import pytest

from torsionfree_lab import harness
from torsionfree_lab.algebra import builtin_algebra
from torsionfree_lab.cli import main
from torsionfree_lab.errors import ModuleError
from torsionfree_lab.functors import extension_from_cocycle
from torsionfree_lab.linalg import Field
from torsionfree_lab.modules import simple_modules
from torsionfree_lab.serialize import (FormatError, algebra_from_json, algebra_to_json, dumps,
                                       module_from_json, module_to_json, sequence_from_json,
                                       sequence_to_json)
from torsionfree_lab.sampling import sample_suite


# -- serialization --------------------------------------------------------------------

@pytest.mark.parametrize("name", ["DUAL2", "A2", "NG3", "NAKAYAMA(2,2)", "TRUNCPOLY(3)"])
def test_algebra_roundtrip(alg, name):
    a = alg(name)
    b = algebra_from_json(json.loads(dumps(algebra_to_json(a))))
    assert b.dim == a.dim and (b.table == a.table).all()


def test_structure_constant_roundtrip_over_qq():
    a = builtin_algebra("A2", Field.qq())
    table_doc = {"kind": "structure_constants", "field": "qq", "dim": a.dim,
                 "unit": [str(x) for x in a.unit],
                 "table": [[i, j, k, str(a.table[i, j, k])] for i in range(a.dim) for j in range(a.dim)
                           for k in range(a.dim) if a.table[i, j, k] != 0]}
    b = algebra_from_json(table_doc)
    assert b.field == Field.qq() and b.dim == 3
    assert json.loads(dumps(algebra_to_json(b)))["table"] == table_doc["table"]


def test_module_and_sequence_roundtrip(alg):
    a = alg("NG3")
    for x in sample_suite(a, 10, 2):
        doc = json.loads(dumps(module_to_json(x.module)))
        assert module_from_json(doc, a).same_as(x.module)
    s = simple_modules(alg("DUAL2"))[0]
    seq = extension_from_cocycle(s, s, 1)
    back = sequence_from_json(json.loads(dumps(sequence_to_json(seq))), alg("DUAL2"))
    assert back.exact and [m.dim for m in back.modules] == [m.dim for m in seq.modules]


def test_malformed_documents(alg):
    a = alg("DUAL2")
    with pytest.raises(FormatError):
        module_from_json({"side": "left"}, a)
    with pytest.raises(FormatError):
        module_from_json({"side": "middle", "dim": 1, "action": [[[1]], [[0]]]}, a)
    with pytest.raises(ModuleError):
        module_from_json({"dim": 1, "action": [[[1]]]}, a)
    with pytest.raises(ModuleError):
        module_from_json({"dim": 1, "action": [[[1]], [[1]]]}, a)
    with pytest.raises(FormatError):
        algebra_from_json({"kind": "nope", "field": "gf:5"})
    with pytest.raises(FormatError):
        algebra_from_json({"kind": "structure_constants", "field": "gf:5", "dim": 1, "unit": [1],
                           "table": [[0, 0, 3, 1]]})


# -- CLI ------------------------------------------------------------------------------

def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


@pytest.fixture
def dual2_simple(tmp_path, alg):
    p = tmp_path / "s.json"
    p.write_text(dumps(module_to_json(simple_modules(alg("DUAL2"))[0])))
    return str(p)


def test_cli_invariants_dual2(capsys, dual2_simple):
    code, out, _ = run(capsys, "invariants", "--algebra", "DUAL2", "--module", dual2_simple)
    doc = json.loads(out)
    assert code == 0
    assert doc["gdim"]["value"] == doc["tdim_upper"]["value"] == doc["orthdim"]["value"] == 0
    assert doc["pd"]["value"] == "INFINITY"


def test_cli_text_format(capsys, dual2_simple):
    code, out, _ = run(capsys, "invariants", "--algebra", "DUAL2", "--module", dual2_simple,
                       "--format", "text")
    assert code == 0 and "pd" in out and "INFINITY" in out


def test_cli_selfinjdim_and_profile(capsys):
    code, out, _ = run(capsys, "selfinjdim", "--algebra", "A2")
    doc = json.loads(out)
    assert code == 0 and doc["left"]["value"] == doc["right"]["value"] == 1
    code, out, _ = run(capsys, "coresolution-profile", "--algebra", "DUAL2")
    assert code == 0 and [x["value"] for x in json.loads(out)["pd"]] == [0]


def test_cli_construct(capsys, dual2_simple, tmp_path):
    out_path = tmp_path / "seq.json"
    code, _, _ = run(capsys, "construct", "prop2.1", "--algebra", "DUAL2", "--module", dual2_simple,
                     "--n", "2", "--out", str(out_path))
    doc = json.loads(out_path.read_text())
    assert code == 0 and doc["certificates"]["exact"] and doc["certificates"]["tail_in_perp"]
    code, out, _ = run(capsys, "construct", "cor3.5", "--algebra", "DUAL2", "--module", dual2_simple,
                       "--n", "0")
    assert code == 0 and json.loads(out)["certificates"]["ok"]


def test_cli_construct_precondition(capsys, tmp_path, alg):
    p = tmp_path / "s1.json"
    p.write_text(dumps(module_to_json(simple_modules(alg("A2"))[0])))
    code, _, err = run(capsys, "construct", "prop2.1", "--algebra", "A2", "--module", str(p), "--n", "1")
    assert code == 2 and json.loads(err)["error"] == "PreconditionError"


def test_cli_check_exit_codes(capsys):
    code, out, _ = run(capsys, "check", "--algebra", "DUAL2", "--claim", "THM_1_4", "--n", "0")
    assert code == 0 and json.loads(out)["status"] == "NO_COUNTEREXAMPLE"
    code, out, _ = run(capsys, "check", "--algebra", "NG3", "--claim", "zaks", "--bound", "6",
                       "--samples", "2")
    assert code == 3 and json.loads(out)["status"] == "PREMISE_UNDECIDED"


def test_cli_check_counterexample_exit(capsys, monkeypatch):
    real = harness._CHECKS["dims_at_most_n"]

    def broken(ctx, mods, args):
        verdict, obs = real(ctx, mods, args)
        return (False if mods[0].dim == 1 else verdict), obs
    monkeypatch.setitem(harness._CHECKS, "dims_at_most_n", broken)
    code, out, _ = run(capsys, "check", "--algebra", "DUAL2", "--claim", "THM_1_4", "--n", "0",
                       "--samples", "5")
    doc = json.loads(out)
    assert code == 1 and doc["status"] == "COUNTEREXAMPLE" and doc["witnesses"][0]["reverified"]


def test_cli_input_errors(capsys, tmp_path, alg):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    code, _, err = run(capsys, "invariants", "--algebra", "DUAL2", "--module", str(bad))
    assert code == 2 and "malformed" in json.loads(err)["message"]
    short = tmp_path / "short.json"
    short.write_text(json.dumps({"dim": 1, "action": [[[1]]]}))
    code, _, err = run(capsys, "invariants", "--algebra", "DUAL2", "--module", str(short))
    assert code == 2 and json.loads(err)["error"] == "ModuleError"
    assert run(capsys, "check", "--algebra", "A2", "--claim", "THM_1_4")[0] == 2
    assert run(capsys, "check", "--algebra", "A2", "--claim", "BOGUS", "--n", "1")[0] == 2
    assert run(capsys, "invariants", "--algebra", "NOT_AN_ALGEBRA")[0] == 2
    assert run(capsys, "invariants", "--algebra", "DUAL2")[0] == 2
    assert run(capsys, "selfinjdim", "--algebra", "A2", "--bound", "0")[0] == 2
    assert run(capsys, "check", "--algebra", "A2", "--claim", "ZAKS", "--seed", "-1")[0] == 2


def test_cli_validate(capsys, tmp_path, alg):
    code, out, _ = run(capsys, "validate", "--algebra", "NG3")
    assert code == 0 and json.loads(out)["algebra"]["ok"]
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"dim": 1, "action": [[[1]], [[1]]]}))
    code, out, _ = run(capsys, "validate", "--algebra", "DUAL2", "--module", str(bad))
    assert code == 2 and not json.loads(out)["module"]["ok"]


def test_cli_reports_are_byte_identical(capsys):
    argv = ["check", "--algebra", "A2", "--claim", "COR_4_9", "--n", "1", "--samples", "20", "--seed", "7"]
    assert run(capsys, *argv)[1] == run(capsys, *argv)[1]


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "torsionfree_lab", "selfinjdim", "--algebra", "DUAL2"],
                          capture_output=True, text=True, timeout=120)
    assert proc.returncode == 0 and json.loads(proc.stdout)["left"]["value"] == 0
