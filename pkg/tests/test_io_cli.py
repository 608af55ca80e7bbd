import json
import subprocess
import sys
from fractions import Fraction as F

import pytest

from cases import diag, m
from nhomlie import adjoint, dual_representation, inner_generalized_derivation
from nhomlie import io
from nhomlie.cli import main
from nhomlie.cohomology import Cochain
from nhomlie.deformation import deform_from_nijenhuis
from nhomlie.errors import InputError
from nhomlie.extension import GeneralizedDerivation
from nhomlie.fixtures import FIXTURES, fix_b, fix_c


def write(tmp_path, name, obj):
    path = tmp_path / name
    path.write_text(json.dumps(obj), encoding="utf-8")
    return str(path)


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out


def run_json(capsys, *argv):
    code, out = run(capsys, *argv)
    return code, json.loads(out)


# ---------------------------------------------------------------- round trips


@pytest.mark.parametrize("name", sorted(FIXTURES))
def test_algebra_round_trip(name):
    alg = FIXTURES[name]()
    data = io.dump_algebra(alg)
    again = io.parse_algebra(json.loads(io.dumps(data)))
    assert again.bracket.table == alg.bracket.table
    assert again.alpha == alg.alpha
    assert io.dump_algebra(again) == data


def test_fix_b_json_shape():
    data = io.dump_algebra(fix_b())
    assert data == {
        "n": 3,
        "dim": 3,
        "alpha": [["1/1", "0/1", "0/1"], ["0/1", "2/1", "0/1"], ["0/1", "0/1", "1/2"]],
        "brackets": [{"args": [0, 1, 2], "value": {"0": "1/1"}}],
    }


def test_representation_round_trip():
    rep = dual_representation(adjoint(fix_b()))
    data = io.dump_representation(rep)
    again = io.parse_representation(json.loads(io.dumps(data)), fix_b())
    assert again.beta == rep.beta
    assert {k: v for k, v in again.rho.items() if not v.is_zero()} == {
        k: v for k, v in rep.rho.items() if not v.is_zero()
    }


def test_linear_map_family_gd_cochain_round_trips():
    B = fix_b()
    mat = m([[1, F(2, 3), 0], [0, -1, 0], [5, 0, 1]])
    assert io.parse_linear_map(io.dump_linear_map(mat)) == mat
    fam = deform_from_nijenhuis(B, diag(2, -3, F(1, 2)))
    assert io.dump_family(io.parse_family(io.dump_family(fam), B)) == io.dump_family(fam)
    D = inner_generalized_derivation(B, (1, 0, 0))
    assert io.parse_generalized_derivation(io.dump_generalized_derivation(D), B).table == D.table
    C = fix_c()
    f = Cochain.from_vector(C, 4, 2, [F(i % 5 - 2, 3) for i in range(16)])
    assert io.parse_cochain(io.dump_cochain(f), C, 4) == f
    g = Cochain.from_linear_map(B, mat)
    dumped = io.dump_cochain(g)
    assert dumped["entries"][0]["combos"] == [] and dumped["entries"][0]["z"] == 0
    assert io.parse_cochain(dumped, B, 3) == g


@pytest.mark.parametrize(
    "obj,field",
    [
        ({"n": 3, "dim": 3, "alpha": [["1", "0", "0"], ["0", "1", "0"], ["0", "0", "1"]],
          "brackets": [{"args": [0, 1, 2], "value": {"0": "1/0"}}]}, "brackets[0].value.0"),
        ({"n": 3, "dim": 3, "alpha": [["1", "0"], ["0", "1", "0"], ["0", "0", "1"]]}, "alpha[0]"),
        ({"n": 3, "dim": 3}, "alpha"),
        ({"n": 3, "dim": 3, "alpha": [["1", "0", "0"], ["0", "1", "0"], ["0", "0", "1"]],
          "brackets": [{"args": [1, 0, 2], "value": {}}]}, "brackets[0].args"),
        ({"n": 3, "dim": 3, "alpha": [["1", "0", "0"], ["0", "1", "0"], ["0", "0", "1"]],
          "brackets": [{"args": [0, 1, 2], "value": {"7": "1"}}]}, "brackets[0].value.7"),
        ({"n": 3, "dim": 3, "alpha": [["1", "0", "0"], ["0", "0", "0"], ["0", "0", "1"]]}, "alpha"),
        ({"n": "3", "dim": 3, "alpha": []}, "n"),
    ],
)
def test_parse_errors_name_the_field(obj, field):
    with pytest.raises(InputError) as exc:
        io.parse_algebra(obj)
    assert str(exc.value).startswith(field)


def test_dumps_is_canonical():
    a = io.dumps({"b": 1, "a": [1, 2]})
    assert a == io.dumps({"a": [1, 2], "b": 1})
    assert a.endswith("\n")


# ---------------------------------------------------------------- cli


def fixture_file(tmp_path, name):
    return write(tmp_path, f"{name}.json", io.dump_algebra(FIXTURES[name]()))


def test_validate_exit_codes(tmp_path, capsys):
    code, data = run_json(capsys, "validate", fixture_file(tmp_path, "A"))
    assert code == 0 and data["verdict"] == "pass"
    code, data = run_json(capsys, "validate", fixture_file(tmp_path, "B"))
    assert code == 0 and data["metrics"] == {"dim": 3, "n": 3}
    code, data = run_json(capsys, "validate", fixture_file(tmp_path, "C'"))
    assert code == 1 and data["verdict"] == "fail"
    assert data["defects"][0]["location"] == ["HF", [0, 1], [1, 2, 3]]


def test_malformed_rational_exit_2(tmp_path, capsys):
    obj = io.dump_algebra(fix_b())
    obj["brackets"][0]["value"]["0"] = "1/0"
    code = main(["validate", write(tmp_path, "bad.json", obj)])
    captured = capsys.readouterr()
    assert code == 2
    assert "brackets[0].value.0" in captured.err
    assert "brackets[0].value.0" in json.loads(captured.out)["error"]


def test_missing_file_exit_2(tmp_path, capsys):
    assert main(["validate", str(tmp_path / "nope.json")]) == 2
    assert "cannot read" in capsys.readouterr().err
    bad = tmp_path / "broken.json"
    bad.write_text("{", encoding="utf-8")
    assert main(["validate", str(bad)]) == 2


def test_determinism(tmp_path, capsys):
    path = fixture_file(tmp_path, "C")
    _, first = run(capsys, "cohomology", path, "--p", "2")
    _, second = run(capsys, "cohomology", path, "--p", "2")
    assert first == second
    assert json.loads(first)["metrics"] == {"dim_B": 10, "dim_C": 16, "dim_H": 0, "dim_Z": 10, "p": 2}


def test_report_json_round_trips(capsys):
    _, out = run(capsys, "validate", "--fixture", "C'")
    assert io.dumps(json.loads(out)) == out


def test_cohomology_fixture_a(capsys):
    code, data = run_json(capsys, "cohomology", "--fixture", "A", "--p", "1")
    assert code == 0 and data["metrics"]["dim_H"] == 9
    code, data = run_json(capsys, "cohomology", "--fixture", "A", "--p", "2", "--rep", "dual-adjoint")
    assert code == 0 and data["metrics"]["dim_H"] == 3


def test_cohomology_emits_coboundary(tmp_path, capsys):
    f = Cochain.from_linear_map(fix_b(), m([[1, 0, 0], [0, 1, 0], [0, 0, 1]]))
    path = write(tmp_path, "f.json", io.dump_cochain(f))
    out = tmp_path / "df.json"
    code, data = run_json(capsys, "cohomology", "--fixture", "B", "--cochain", path, "--out", str(out))
    assert code == 0
    expect = {"p": 2, "entries": [{"combos": [[0, 1, 2]], "value": {"0": "5/2"}}]}
    assert data["outputs"]["coboundary"] == expect
    assert json.loads(out.read_text()) == expect


def test_cohomology_invalid_rep_exit_1(tmp_path, capsys):
    rep = io.dump_representation(adjoint(fix_b()))
    rep["beta"] = [["1", "0", "0"], ["0", "1", "0"], ["0", "0", "1"]]
    code, data = run_json(capsys, "cohomology", "--fixture", "B", "--rep", write(tmp_path, "r.json", rep))
    assert code == 1
    assert data["defects"][0]["location"][:2] == ["representation", "i"]


def test_derivations_fixture_a(capsys):
    code, data = run_json(capsys, "derivations", "--fixture", "A")
    assert code == 0
    assert data["metrics"]["dim"] == 9 and data["metrics"]["dim_inner"] == 0
    assert len(data["outputs"]["basis"]) == 9


def test_nijenhuis_not_commuting(tmp_path, capsys):
    N = write(tmp_path, "N.json", io.dump_linear_map(m([[0, 1, 0], [0, 0, 0], [0, 0, 0]])))
    code, data = run_json(capsys, "nijenhuis", "--fixture", "B", "--N", N)
    assert code == 1
    assert data["defects"][0]["note"] == "N∘α ≠ α∘N"
    assert "outputs" not in data


def test_nijenhuis_and_deform(tmp_path, capsys):
    N = write(tmp_path, "N.json", io.dump_linear_map(diag(2, -3, F(1, 2))))
    code, data = run_json(capsys, "nijenhuis", "--fixture", "B", "--N", N)
    assert code == 0
    code, data = run_json(capsys, "deform", "--fixture", "B", "--N", N, "--lambda", "1", "-1/2")
    assert code == 0 and len(data["outputs"]["family"]) == 2
    fam = write(tmp_path, "fam.json", data["outputs"]["family"])
    code, _ = run_json(capsys, "deform", "--fixture", "B", "--family", fam)
    assert code == 0


def test_deform_bad_lambda(tmp_path, capsys):
    N = write(tmp_path, "N.json", io.dump_linear_map(diag(1, 1, 1)))
    assert main(["deform", "--fixture", "B", "--N", N, "--lambda", "x"]) == 2
    assert "--lambda" in capsys.readouterr().err


def test_o_operator(tmp_path, capsys):
    T = write(tmp_path, "T.json", io.dump_linear_map(diag(0, 1, 1)))
    code, data = run_json(capsys, "o-operator", "--fixture", "B", "--T", T)
    assert code == 0 and data["metrics"]["lift_nijenhuis"] is True
    assert data["outputs"]["lift"]["rows"] == 6
    T = write(tmp_path, "T2.json", io.dump_linear_map(diag(1, 1, 1)))
    code, data = run_json(capsys, "o-operator", "--fixture", "B", "--T", T)
    assert code == 1 and data["metrics"]["lift_nijenhuis"] is False


def test_extend(tmp_path, capsys):
    B = fix_b()
    D = write(tmp_path, "D.json", io.dump_generalized_derivation(inner_generalized_derivation(B, (1, 0, 0))))
    Z = write(tmp_path, "Z.json", io.dump_generalized_derivation(GeneralizedDerivation(B)))
    out = tmp_path / "ext.json"
    code, data = run_json(capsys, "extend", "--fixture", "B", "--D", D, "--out", str(out))
    assert code == 0 and data["metrics"]["dim"] == 4 and data["metrics"]["extension_valid"] is True
    ext = io.parse_algebra(json.loads(out.read_text()))
    assert ext.dim == 4
    code, _ = run(capsys, "validate", str(out))
    assert code == 0
    code, data = run_json(capsys, "extend", "--fixture", "B", "--D", D, "--D2", Z, "--x", "1,0,0")
    assert code == 0 and data["outputs"]["theta"]["entries"][0][3] == "1/1"
    assert main(["extend", "--fixture", "B", "--D", D, "--D2", Z, "--x", "0,1,0"]) == 2
    capsys.readouterr()


def test_extend_failing_d(tmp_path, capsys):
    bad = [{"args": list(c), "value": {"0": "1"}} for c in ([0, 1], [0, 2], [1, 2])]
    code, data = run_json(capsys, "extend", "--fixture", "B", "--D", write(tmp_path, "D.json", bad))
    assert code == 1 and data["metrics"]["extension_valid"] is False


def test_dual_rep(capsys):
    code, _ = run_json(capsys, "dual-rep", "--fixture", "B3")
    assert code == 0
    code, data = run_json(capsys, "dual-rep", "--fixture", "B3", "--naive")
    assert code == 1
    assert {d["location"][0] for d in data["defects"]} == {"ii", "iii"}


def test_semidirect_and_fixtures(tmp_path, capsys):
    out = tmp_path / "s.json"
    code, data = run_json(capsys, "semidirect", "--fixture", "B", "--out", str(out))
    assert code == 0 and data["metrics"]["dim"] == 6
    assert io.parse_algebra(json.loads(out.read_text())).dim == 6
    code, data = run_json(capsys, "fixtures")
    assert code == 0 and sorted(data["outputs"]["fixtures"]) == sorted(FIXTURES)


def test_text_format(capsys):
    code, out = run(capsys, "validate", "--fixture", "C'", "--format", "text")
    assert code == 1
    assert out.startswith("validate: fail\n")
    assert "defect at" in out


def test_algebra_source_required(capsys):
    assert main(["validate"]) == 2
    capsys.readouterr()


def test_console_script_runs(tmp_path):
    proc = subprocess.run(
        [sys.executable, "-m", "nhomlie.cli", "validate", "--fixture", "A"], capture_output=True, text=True
    )
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["verdict"] == "pass"


@pytest.mark.parametrize("command", ["cohomology", "derivations", "semidirect", "dual-rep"])
def test_invalid_algebra_is_rejected(command, capsys):
    code, data = run_json(capsys, command, "--fixture", "C'")
    assert code == 1 and data["verdict"] == "fail"
    assert data["defects"][0]["location"][0] == "HF"
