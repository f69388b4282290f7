import json
import subprocess
import sys

import pytest

from hnfdelta.cli import main
from hnfdelta.delta import DeltaVector, delta_from_hnf
from hnfdelta.lattice import IntMatrix

GOLDEN_TEXT = "4\n1 0 0 0\n0 1 0 0\n1 1 2 0\n1 0 1 3\n"


@pytest.fixture
def run(capsys):
    def _run(*argv):
        code = main([str(a) for a in argv])
        out, err = capsys.readouterr()
        return code, out, err
    return _run


@pytest.fixture
def matrix_file(tmp_path):
    def _write(text, name="m.txt"):
        p = tmp_path / name
        p.write_text(text)
        return p
    return _write


def test_hnf(run, matrix_file):
    code, out, _ = run("hnf", "--json", "--matrix", matrix_file("2\n1 2\n3 4\n"))
    rec = json.loads(out)
    assert code == 0
    assert rec["hnf"] == [[1, 0], [1, 2]] and rec["det"] == -2
    m, u = IntMatrix.of([[1, 2], [3, 4]]), IntMatrix.of(rec["transform"])
    assert (m @ u).to_lists() == rec["hnf"]


def test_hnf_identity_and_json_input(run, matrix_file):
    path = matrix_file(json.dumps({"dim": 3, "rows": [[1, 0, 0], [0, 1, 0], [0, 0, 1]]}), "m.json")
    code, out, _ = run("hnf", "--json", "--matrix", path)
    assert code == 0 and json.loads(out)["hnf"] == IntMatrix.identity(3).to_lists()


def test_hnf_text_output(run, matrix_file):
    code, out, _ = run("hnf", "--matrix", matrix_file("2\n1 2\n3 4\n"))
    assert code == 0 and "det: -2" in out


def test_singular_exit_code(run, matrix_file):
    code, _, err = run("hnf", "--matrix", matrix_file("2\n1 2\n2 4\n"))
    assert code == 3 and "singular matrix" in err
    code, _, _ = run("delta", "--matrix", matrix_file("2\n1 2\n2 4\n"))
    assert code == 3


@pytest.mark.parametrize("text", ["2\n1 2\n3\n", "x\n", "", '{"dim": 2, "rows": [[1]]}'])
def test_parse_errors(run, matrix_file, text):
    code, _, err = run("hnf", "--matrix", matrix_file(text))
    assert code == 2 and err.startswith("error:")


def test_missing_file(run, tmp_path):
    code, _, _ = run("hnf", "--matrix", tmp_path / "nope.txt")
    assert code == 2


def test_delta_golden_example(run, matrix_file):
    code, out, _ = run("delta", "--matrix", matrix_file(GOLDEN_TEXT))
    assert code == 0
    assert "1,0,3,2,0" in out and "1 + 3t^2 + 2t^3" in out


def test_delta_oracle_and_s_values(run, matrix_file):
    code, out, _ = run("delta", "--json", "--oracle", "--s-values", "--matrix", matrix_file(GOLDEN_TEXT))
    rec = json.loads(out)
    assert code == 0 and rec["verdict"] == "AGREE" and rec["oracle"] == [1, 0, 3, 2, 0]
    table = {tuple(r["index"]): r["s"] for r in rec["s_values"]}
    assert table == {(1, 1, 1, 1): 2, (1, 1, 2, 1): 3, (1, 1, 1, 2): 2,
                     (1, 1, 2, 2): 3, (1, 1, 1, 3): 3, (1, 1, 2, 3): 5}


def test_delta_identity(run, matrix_file):
    code, out, _ = run("delta", "--matrix", matrix_file("3\n1 0 0\n0 1 0\n0 0 1\n"))
    assert code == 0 and out.splitlines()[0] == "delta: 1,0,0,0"


def test_delta_budget_exit_code(run, matrix_file):
    code, _, err = run("delta", "--oracle", "--budget", 5, "--matrix", matrix_file(GOLDEN_TEXT))
    assert code == 4 and "budget" in err


def test_delta_budget_env(run, matrix_file, monkeypatch):
    monkeypatch.setenv("HNFDELTA_ORACLE_BUDGET", "5")
    code, _, _ = run("delta", "--oracle", "--matrix", matrix_file(GOLDEN_TEXT))
    assert code == 4


def test_delta_disagree_exit_code(run, matrix_file, monkeypatch):
    import hnfdelta.cli as cli
    monkeypatch.setattr(cli, "delta_bruteforce", lambda m, config: DeltaVector((1, 5, 0, 0, 0)))
    code, out, _ = run("delta", "--oracle", "--matrix", matrix_file(GOLDEN_TEXT))
    assert code == 1 and "DISAGREE" in out


def test_enumerate(run):
    code, out, _ = run("enumerate", "--dim", 2, "--det", 2)
    assert code == 0 and len(json.loads(out)) == 3
    code, out, _ = run("enumerate", "--dim", 1, "--det", 3)
    assert json.loads(out) == [{"dim": 1, "rows": [[3]]}]


def test_enumerate_with_delta_no_131(run):
    code, out, _ = run("enumerate", "--dim", 2, "--det", 5, "--with-delta")
    recs = json.loads(out)
    assert code == 0 and len(recs) == 6
    assert all(r["delta"] != [1, 3, 1] for r in recs)
    for r in recs:
        assert delta_from_hnf(IntMatrix.of(r["rows"])).coeffs == tuple(r["delta"])


def test_enumerate_form_filter(run):
    _, out, _ = run("enumerate", "--dim", 3, "--det", 4, "--form", "two-row")
    assert all(sorted(r["rows"][i][i] for i in range(3)) == [1, 2, 2] for r in json.loads(out))


def test_enumerate_bad_flags(run):
    code, _, _ = run("enumerate", "--dim", 0, "--det", 2)
    assert code == 2


def test_classify_worked_example(run):
    code, out, _ = run("classify", "--dim", 6, "--det", 4, "--delta", "1,0,1,1,0,1,0")
    recs = json.loads(out)
    assert code == 0
    assert {tuple(r["params"]) for r in recs if r["shape"] == "one-row"} == {(0, 1, 4), (0, 0, 5)}


def test_classify_empty_is_success(run):
    code, out, _ = run("classify", "--dim", 2, "--det", 5, "--delta", "1,3,1")
    assert code == 0 and json.loads(out) == []


def test_classify_small(run):
    code, out, _ = run("classify", "--dim", 2, "--det", 2, "--delta", "1,1,0", "--expand-all")
    mats = [m for r in json.loads(out) for m in r["matrices"]]
    assert code == 0 and [[1, 0], [1, 2]] in mats and len(mats) == 3


def test_classify_det_mismatch(run):
    code, _, _ = run("classify", "--dim", 2, "--det", 3, "--delta", "1,1,0")
    assert code == 2


def test_classify_dim_mismatch(run):
    code, _, _ = run("classify", "--dim", 3, "--delta", "1,1,0")
    assert code == 2


def test_classify_bad_delta(run):
    code, _, _ = run("classify", "--delta", "0,1,x")
    assert code == 2


def test_realize_examples(run):
    code, out, _ = run("realize", "--dim", 7, "--delta", "1,0,1,0,1,1,0,0")
    assert code == 0 and out.startswith("NOT REALIZABLE") and "fails-additional" in out

    code, out, _ = run("realize", "--json", "--dim", 8, "--delta", "1,0,1,0,1,1,0,0,0")
    rec = json.loads(out)
    assert code == 0 and rec["realizable"]
    assert delta_from_hnf(IntMatrix.of(rec["witness"])) == DeltaVector.parse("1,0,1,0,1,1,0,0,0")

    code, out, _ = run("realize", "--json", "--dim", 3, "--delta", "1,0,0,0")
    assert json.loads(out)["witness"] == IntMatrix.identity(3).to_lists()


def test_realize_large_mass(run):
    code, _, _ = run("realize", "--delta", "1,3,1")
    assert code == 2


def test_symmetry_examples(run):
    code, out, _ = run("symmetry", "--json", "--all-dminus1", "--det", 6, "--dim", 3)
    rec = json.loads(out)
    assert code == 0
    assert rec["delta"] == [1, 2, 2, 1] and rec["shifted_symmetric"] is False and rec["gcd_D_d"] == 3

    _, out, _ = run("symmetry", "--json", "--all-dminus1", "--det", 5, "--dim", 3)
    assert json.loads(out)["shifted_symmetric"] is True

    _, out, _ = run("symmetry", "--json", "--det", 5, "--dim", 3, "--multiplicities", "2,0,0,0")
    cond = json.loads(out)["conditions"]
    assert cond["coprime_weight"] and cond["only_units"] and cond["full_row"] and cond["all"]


@pytest.mark.parametrize("extra", [[], ["--multiplicities", "1,2"], ["--multiplicities", "5,0,0,0"]])
def test_symmetry_invalid_form(run, extra):
    code, _, _ = run("symmetry", "--det", 5, "--dim", 3, *extra)
    assert code == 2


@pytest.mark.parametrize("argv", [
    ["enumerate", "--dim", "3", "--det", "4", "--with-delta"],
    ["classify", "--dim", "5", "--det", "4", "--delta", "1,0,2,1,0,0", "--expand-all"],
    ["realize", "--json", "--dim", "6", "--delta", "1,0,1,1,0,1,0"],
])
def test_deterministic_output(run, argv):
    assert run(*argv) == run(*argv)


def test_module_entry_point_reads_stdin():
    proc = subprocess.run([sys.executable, "-m", "hnfdelta", "delta", "--json", "--matrix", "-"],
                          input=GOLDEN_TEXT, capture_output=True, text=True, check=False)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["delta"] == [1, 0, 3, 2, 0]
