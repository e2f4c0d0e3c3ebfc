import json

from malcev.cli import main
from malcev.dga import chevalley_eilenberg
from malcev.lie import heisenberg


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out


def run_json(capsys, *argv):
    code, out = run(capsys, *argv, "--out", "json")
    return code, json.loads(out)


HEIS_JSON = json.dumps(heisenberg().to_json())
CE_HEIS_JSON = json.dumps(chevalley_eilenberg(heisenberg()).to_json())
TORUS_CUP = '{"h1": 2, "h2": 1, "pairing": [[["0"], ["1"]], [["-1"], ["0"]]]}'


def test_hall(capsys):
    code, out = run_json(capsys, "hall", "-k", "2", "--class", "4")
    assert code == 0
    assert out["command"] == "hall"
    assert out["verdicts"]["counts"] == [2, 1, 2, 3]
    code, text = run(capsys, "hall", "-k", "2", "--class", "3")
    assert code == 0 and "degree 2 (1)" in text


def test_bch_free_and_algebra(capsys):
    code, out = run_json(capsys, "bch", "[1,0,0]", "[0,1,0]",
                         "--algebra", HEIS_JSON)
    assert code == 0
    assert out["verdicts"]["product"] == ["1", "1", "1/2"]
    code, out = run_json(capsys, "bch", "[1,0,0,0,0]", "[0,1,0,0,0]",
                         "-k", "2", "--class", "3")
    assert code == 0
    assert out["verdicts"]["product"][:3] == ["1", "1", "1/2"]


def test_bch_dimension_mismatch_is_input_error(capsys):
    code, _ = run(capsys, "bch", "[1,0]", "[0,1]", "--algebra", HEIS_JSON)
    assert code == 2


def test_quadcheck_negative_verdict_exits_zero(capsys):
    code, out = run_json(capsys, "quadcheck", HEIS_JSON)
    assert code == 0
    assert out["verdicts"]["quadratic"] is False
    assert out["verdicts"]["failing_degree"] == 3


def test_quadcheck_rejects_non_jacobi(capsys):
    bad = json.dumps({"dim": 3, "brackets": [
        {"i": 0, "j": 1, "value": ["0", "0", "1"]},
        {"i": 0, "j": 2, "value": ["1", "0", "0"]}]})
    code, _ = run(capsys, "quadcheck", bad)
    assert code == 2


def test_malcev_model(capsys):
    code, out = run_json(capsys, "malcev-model", TORUS_CUP)
    assert code == 0
    v = out["verdicts"]
    assert v["stabilized"] is True
    assert v["graded_dims"] == [2]  # the realization is abelian of rank 2
    assert v["weights"] == [-1, -1]


def test_mc(capsys):
    code, out = run_json(capsys, "mc", CE_HEIS_JSON, HEIS_JSON)
    assert code == 0
    v = out["verdicts"]
    assert v["completed"] is True
    assert [s["level"] for s in v["stages"]] == [1, 2]


def test_mc_bad_initial_is_input_error(capsys):
    code, _ = run(capsys, "mc", CE_HEIS_JSON, HEIS_JSON, "--initial", "[1]")
    assert code == 2


def test_massey(capsys):
    code, out = run_json(capsys, "massey", CE_HEIS_JSON,
                         "--degrees", "1", "1", "1",
                         "--a", "[1,0,0]", "--b", "[1,0,0]", "--c", "[0,1,0]")
    assert code == 0
    assert out["verdicts"]["vanishes"] is False


def test_massey_undefined_is_input_error(capsys):
    # CE of the abelian algebra has zero differential: products are not exact
    from malcev.lie import abelian
    A = json.dumps(chevalley_eilenberg(abelian(2)).to_json())
    code, _ = run(capsys, "massey", A, "--degrees", "1", "1", "1",
                  "--a", "[1,0]", "--b", "[0,1]", "--c", "[1,0]")
    assert code == 2


def test_lift_criterion(capsys):
    data = json.dumps({
        "mode": "criterion",
        "presentation": {"generators": 2, "relations": [["1"]]},
        "free": [2, 3],
        "rho2": [["1", "0", "0", "0", "0"], ["0", "1", "0", "0", "0"]],
    })
    code, out = run_json(capsys, "lift", data)
    assert code == 0
    assert out["verdicts"]["lifted"] is False
    assert out["verdicts"]["obstruction"]


def test_lift_one_class(capsys):
    data = json.dumps({
        "mode": "one-class",
        "presentation": {
            "generators": ["x", "y", "z"],
            "relators": [["x", "y", "x^-1", "y^-1", "z^-1", "z^-1"],
                         ["x", "z", "x^-1", "z^-1"],
                         ["y", "z", "y^-1", "z^-1"]]},
        "free": [2, 3],
        "assignment": {"x": ["1", "0", "0"], "y": ["0", "1", "0"],
                       "z": ["0", "0", "1/2"]},
        "k": 3,
    })
    code, out = run_json(capsys, "lift", data)
    assert code == 0
    assert out["verdicts"]["lifted"] is False
    assert out["verdicts"]["defects"]


def test_lift_bad_mode(capsys):
    code, _ = run(capsys, "lift", '{"mode": "nonsense"}')
    assert code == 2


def test_lattice_check_matrix(capsys):
    code, out = run_json(capsys, "lattice-check", "--matrix", "[[2,3],[1,2]]")
    assert code == 0
    assert out["verdicts"]["commutator_index"] == 2
    code, out = run_json(capsys, "lattice-check", "--matrix", "[[1,0],[0,1]]")
    assert code == 0
    assert out["verdicts"]["commutator_index"] is None


def test_lattice_check_lattice(capsys):
    code, out = run_json(capsys, "lattice-check", "--lattice",
                         '[["1","0","0"],["0","1","0"],["0","0","1/2"]]')
    assert code == 0 and out["verdicts"]["closed"] is True
    code, out = run_json(capsys, "lattice-check", "--lattice",
                         '[["1","0","0"],["0","1","0"],["0","0","1"]]')
    assert code == 0
    assert out["verdicts"]["closed"] is False
    assert out["verdicts"]["witness"]["product"][2] == "1/2"


def test_lattice_check_requires_input(capsys):
    code, _ = run(capsys, "lattice-check")
    assert code == 2


def test_heisenberg_demo_default(capsys):
    code, out = run_json(capsys, "heisenberg-demo")
    assert code == 0
    v = out["verdicts"]
    assert v["excluded_as_kaehler_group"] is True
    assert len(v["steps"]) == 8
    assert all(s["ok"] for s in v["steps"])


def test_heisenberg_demo_text(capsys):
    code, text = run(capsys, "heisenberg-demo")
    assert code == 0
    assert text.count("pass") >= 8
    assert "verdict: excluded" in text


def test_heisenberg_demo_overrides(capsys):
    # integral lattice without the half-center: closure fails, exit still 0
    code, out = run_json(capsys, "heisenberg-demo", "--lattice",
                         '[["1","0","0"],["0","1","0"],["0","0","1"]]')
    assert code == 0
    steps = {s["step"]: s for s in out["verdicts"]["steps"]}
    assert steps[2]["ok"] is False
    assert "1/2" in steps[2]["detail"]
    # identity matrix: infinite-order hypothesis fails at step 6
    code, out = run_json(capsys, "heisenberg-demo", "--matrix",
                         '[["1","0"],["0","1"]]')
    assert code == 0
    steps = {s["step"]: s for s in out["verdicts"]["steps"]}
    assert steps[6]["ok"] is False
    assert "infinite" in steps[6]["detail"]


def test_reports_are_deterministic(capsys):
    a = run_json(capsys, "heisenberg-demo")
    b = run_json(capsys, "heisenberg-demo")
    assert a == b
    c, out1 = run(capsys, "mc", CE_HEIS_JSON, HEIS_JSON, "--out", "json")
    c, out2 = run(capsys, "mc", CE_HEIS_JSON, HEIS_JSON, "--out", "json")
    assert out1 == out2


def test_malformed_json_is_input_error(capsys):
    code, _ = run(capsys, "quadcheck", "{not json")
    assert code == 2
    code, _ = run(capsys, "quadcheck", "/no/such/file.json")
    assert code == 2
