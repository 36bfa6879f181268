import json
import subprocess
import sys

import pytest

from conjforge.cli import main
from conjforge.core import c3, structure_to_json, transitive_tournament


@pytest.fixture
def files(tmp_path):
    def write(name, data):
        p = tmp_path / name
        p.write_text(data if isinstance(data, str) else json.dumps(data))
        return str(p)
    write.dir = tmp_path
    return write


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


EDGE = {"kind": "graph", "vertices": [0, 1], "edges": [[0, 1]]}
K3 = {"kind": "graph", "vertices": [0, 1, 2], "edges": [[0, 1], [1, 2], [0, 2]]}


def test_build_graph_reduction(files, capsys):
    code, out, _ = run(capsys, "build", "--kind", "graph-reduction", "--input", files("g.json", EDGE))
    assert code == 0
    data = json.loads(out)
    assert data["mode"] == "graph" and len(data["structure"]["vertices"]) == 11


def test_build_then_recover(files, capsys):
    out_path = str(files.dir / "ds.json")
    assert main(["build", "--kind", "tournament-reduction", "--input",
                 files("t.json", structure_to_json(c3())), "--out", out_path]) == 0
    code, out, _ = run(capsys, "invariants", "--kind", "recover-base", "--input", out_path)
    assert code == 0 and len(json.loads(out)["vertices"]) == 3


def test_dot_export(files, capsys):
    code, out, _ = run(capsys, "build", "--kind", "hat", "--format", "dot",
                       "--input", files("t.json", structure_to_json(transitive_tournament(2))))
    assert code == 0 and out.startswith("digraph")
    code, out, _ = run(capsys, "export", "--format", "dot", "--input", files("g.json", EDGE))
    assert code == 0 and "0 -- 1;" in out


def test_phi_L_and_recover(files, capsys):
    L = {"kind": "linearOrder", "vertices": [0, 1, 2], "edges": [[0, 1], [0, 2], [1, 2]]}
    code, out, _ = run(capsys, "build", "--kind", "phiL", "--input", files("L.json", L))
    assert code == 0
    phi = files("phi.json", out)
    code, out, _ = run(capsys, "invariants", "--kind", "orbital", "--input", phi)
    assert [r["type"] for r in json.loads(out)["regions"]].count("fixedRegion") == 3
    code, out, _ = run(capsys, "invariants", "--kind", "recover-order", "--input", phi)
    assert len(json.loads(out)["vertices"]) == 3
    code, out, _ = run(capsys, "build", "--kind", "phiL-sn", "--n", "3", "--input", files("L.json", L))
    sn = files("sn.json", out)
    code, out, _ = run(capsys, "invariants", "--kind", "recover-order-sn", "--input", sn)
    assert code == 0 and len(json.loads(out)["vertices"]) == 3


def test_pl_conjugacy(files, capsys):
    a = files("a.json", {"knots": [["0", "1"]]})
    b = files("b.json", {"knots": [["0", "2"]]})
    c = files("c.json", {"knots": [["0", "-1"]]})
    code, out, _ = run(capsys, "conjugacy", "--kind", "pl", "--input", a, "--input2", b, "--samples", "5")
    report = json.loads(out)
    assert code == 0 and report["verdict"] == "conjugate" and len(report["witness"]["samples"]) >= 5
    code, out, _ = run(capsys, "conjugacy", "--kind", "pl", "--input", a, "--input2", c)
    assert json.loads(out) == {"verdict": "not conjugate"}


def test_composite_conjugacy_and_invariants(files, capsys):
    a = files("a.json", {"m": 3, "n": 2, "copy_perm": [[0, 1], [1, 0]]})
    b = files("b.json", {"m": 3, "n": 2, "copy_perm": [[1, 2], [2, 1]]})
    witness = str(files.dir / "w.json")
    code, out, _ = run(capsys, "conjugacy", "--kind", "composite", "--input", a, "--input2", b, "--out", witness)
    assert code == 0 and json.loads(out) == {"verdict": "conjugate"}
    assert json.loads(open(witness).read())["m"] == 3
    code, out, _ = run(capsys, "invariants", "--kind", "composite", "--input", a)
    assert code == 0 and "counts" in json.loads(out)


def test_eset_round_trip(files, capsys):
    code, out, _ = run(capsys, "build", "--kind", "eset-decode", "--input", files("e.json", [[3], [2, 2], [3]]))
    assert code == 0
    code, out, _ = run(capsys, "invariants", "--kind", "eset", "--input", files("d.json", out))
    assert len(json.loads(out)) == 3


def test_verify_single_suite(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "eset", "--seed", "3")
    report = json.loads(out)
    assert code == 0 and report["failed"] == 0 and report["seed"] == 3


@pytest.mark.parametrize("argv,expected", [
    (["build", "--kind", "graph-reduction", "--input", "K3"], 2),
    (["build", "--kind", "graph-reduction", "--input", "BAD"], 2),
    (["build", "--kind", "graph-reduction", "--input", "MISSING"], 2),
    (["build", "--kind", "graph-reduction"], 2),
    (["build", "--kind", "graph-reduction", "--input", "EDGE", "--cap", "-1"], 2),
    (["conjugacy", "--kind", "composite", "--input", "C22", "--input2", "C32"], 2),
    (["verify", "--suite", "nope"], 2),
    (["invariants", "--kind", "recover-order", "--input", "IDENT"], 2),
])
def test_exit_codes(files, capsys, argv, expected):
    names = {"K3": files("k3.json", K3), "BAD": files("bad.json", "{not json"),
             "MISSING": str(files.dir / "missing.json"), "EDGE": files("g.json", EDGE),
             "C22": files("c22.json", {"m": 2, "n": 2}), "C32": files("c32.json", {"m": 3, "n": 2}),
             "IDENT": files("id.json", {"knots": [["0", "0"]]})}
    code, _, err = run(capsys, *[names.get(x, x) for x in argv])
    assert code == expected and err.startswith("conjforge: ")


def test_invariant_violation_exit_code(files, capsys):
    bad = files("bad.json", {"kind": "graph", "vertices": [0, 1], "edges": [[0, 0]]})
    code, _, err = run(capsys, "export", "--input", bad)
    assert code == 3 and "InvariantViolation" in err


def test_budget_exit_code(files, capsys, monkeypatch):
    monkeypatch.setenv("FORGE_BUDGET", "1")
    a = files("a.json", {"knots": [["-2", "-1"], ["0", "0"], ["1/2", "3/4"], ["1", "1"], ["2", "3"]]})
    code, _, err = run(capsys, "conjugacy", "--kind", "pl", "--input", a, "--input2", a, "--samples", "200")
    assert code == 4 and "BudgetExceeded" in err


def test_module_entry_point(files):
    proc = subprocess.run([sys.executable, "-m", "conjforge", "build", "--kind", "hat",
                           "--input", files("t.json", structure_to_json(c3()))],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and len(json.loads(proc.stdout)["vertices"]) == 8
