"""Command-line behavior, pinned by committed golden files.

Every fixture under tests/fixtures is a build output committed verbatim.
The tests rebuild each one and require byte equality, so any drift in the
constructions or in the canonical writer shows up as a diff here.
"""

import json
import os
import subprocess
import sys

import pytest

from matgrade.cli import main
from matgrade.jsonio import parse_text, serialize

FIXTURES = os.path.join(os.path.dirname(__file__), "fixtures")


def fx(name: str) -> str:
    return os.path.join(FIXTURES, name)


def run(capsys, argv):
    code = main(argv)
    return code, capsys.readouterr().out


GOLDEN_BUILDS = [
    ("epsilon_n2.json", ["build", "epsilon", "--n", "2"]),
    ("epsilon_n3.json", ["build", "epsilon", "--n", "3"]),
    ("elementary_z2.json", ["build", "elementary", "--group", "2", "--tuple", "0,0,1"]),
    ("elementary_z4.json", ["build", "elementary", "--group", "4", "--tuple", "0,1,3"]),
    ("pauli_case1.json", ["build", "pauli-case", "--case", "1"]),
    ("pauli_case3.json", ["build", "pauli-case", "--case", "3"]),
    (
        "invol_elementary_z4.json",
        ["build", "involution-elementary", "--group", "4", "--tuple", "0;1;3",
         "--flavor", "transpose", "--m", "1"],
    ),
    (
        "invol_tensor_13.json",
        ["build", "involution-tensor", "--in", fx("pauli_case1.json"), fx("pauli_case3.json")],
    ),
    ("type1_eps3.json", ["build", "type1", "--in", fx("epsilon_n3.json")]),
    (
        "type2_z4.json",
        ["build", "type2", "--in", fx("invol_elementary_z4.json"), "--marker", "2"],
    ),
]
GOLDEN_IDS = [name for name, _ in GOLDEN_BUILDS]


@pytest.mark.parametrize("name,argv", GOLDEN_BUILDS, ids=GOLDEN_IDS)
def test_build_matches_golden_bytes(name, argv, capsys):
    code, out = run(capsys, argv)
    assert code == 0
    with open(fx(name), "r", encoding="utf-8") as fh:
        assert out == fh.read()


@pytest.mark.parametrize("name", GOLDEN_IDS)
def test_golden_reserializes_byte_identical(name):
    with open(fx(name), "r", encoding="utf-8") as fh:
        text = fh.read()
    assert serialize(parse_text(text)) == text


@pytest.mark.parametrize("name", GOLDEN_IDS)
def test_golden_verifies_clean(name, capsys):
    code, out = run(capsys, ["verify", "--in", fx(name)])
    report = json.loads(out)
    assert code == 0
    assert report["ok"] and report["violations"] == []


def test_out_flag_writes_same_bytes_as_stdout(tmp_path, capsys):
    target = str(tmp_path / "eps.json")
    code, out = run(capsys, ["build", "epsilon", "--n", "2", "--out", target])
    assert code == 0 and out == ""
    with open(fx("epsilon_n2.json")) as fh:
        assert open(target).read() == fh.read()


# ---------------------------------------------------------------------------
# corruption: altered fixtures must fail verification with witnesses


def _corrupt(tmp_path, name, mutate):
    with open(fx(name)) as fh:
        obj = json.load(fh)
    mutate(obj)
    path = tmp_path / "corrupt.json"
    path.write_text(json.dumps(obj))
    return str(path)


def test_misplaced_identity_label_fails(tmp_path, capsys):
    def mutate(obj):
        assert obj["components"][0]["element"]["exponents"] == [0, 0]
        obj["components"][0]["element"]["exponents"] = [1, 0]
        obj["components"][2]["element"]["exponents"] = [0, 0]

    code, out = run(capsys, ["verify", "--in", _corrupt(tmp_path, "epsilon_n2.json", mutate)])
    report = json.loads(out)
    assert code == 1 and not report["ok"]
    assert any(v["code"] == "product-escapes" for v in report["violations"])
    assert all(v["witness"] for v in report["violations"])


def test_deleted_lie_component_fails(tmp_path, capsys):
    def mutate(obj):
        del obj["components"][0]

    code, out = run(capsys, ["verify", "--in", _corrupt(tmp_path, "type1_eps3.json", mutate)])
    report = json.loads(out)
    assert code == 1
    assert any(v["code"] == "total-dimension" for v in report["violations"])


def test_flipped_sign_fails(tmp_path, capsys):
    def mutate(obj):
        obj["signs"][1]["sign"] = -obj["signs"][1]["sign"]

    code, out = run(capsys, ["verify", "--in", _corrupt(tmp_path, "pauli_case1.json", mutate)])
    report = json.loads(out)
    assert code == 1
    assert any(v["code"] == "sign-mismatch" for v in report["violations"])


def test_doctored_basis_entry_fails(tmp_path, capsys):
    def mutate(obj):
        # shear one basis matrix of the shift component
        obj["components"][1]["basis"][0]["entries"][0] = ["1/1"]

    code, out = run(capsys, ["verify", "--in", _corrupt(tmp_path, "epsilon_n2.json", mutate)])
    report = json.loads(out)
    assert code == 1 and report["violations"]


# ---------------------------------------------------------------------------
# exit codes for bad requests and bad files


def test_wrong_kind_flag_is_bad_request(capsys):
    code, out = run(capsys, ["verify", "--in", fx("type2_z4.json"), "--kind", "associative"])
    assert code == 2
    assert json.loads(out)["error"] == "KindMismatch"


def test_malformed_json_is_parse_error(tmp_path, capsys):
    path = tmp_path / "bad.json"
    path.write_text("{oops")
    code, out = run(capsys, ["verify", "--in", str(path)])
    assert code == 3
    assert json.loads(out)["error"] == "ParseError"


def test_schema_violation_is_parse_error(tmp_path, capsys):
    path = tmp_path / "bad.json"
    path.write_text('{"group": {"factors": [2]}, "n": 2, "kind": "galois", "components": []}')
    code, out = run(capsys, ["verify", "--in", str(path)])
    assert code == 3


def test_symkind_mismatch_is_parse_error(tmp_path, capsys):
    def mutate(obj):
        obj["involution"]["symkind"] = "symmetric"

    code, out = run(capsys, ["verify", "--in", _corrupt(tmp_path, "pauli_case1.json", mutate)])
    assert code == 3
    assert json.loads(out)["error"] == "ParseError"


def test_missing_file_is_bad_request(tmp_path, capsys):
    code, out = run(capsys, ["verify", "--in", str(tmp_path / "nope.json")])
    assert code == 2


def test_missing_flag_is_bad_request(capsys):
    code, out = run(capsys, ["build", "elementary", "--group", "2"])
    assert code == 2
    err = json.loads(out)
    assert err["error"] == "InvalidTuple" and "--tuple" in err["message"]


def test_bad_case_id_is_bad_request(capsys):
    code, out = run(capsys, ["build", "pauli-case", "--case", "7"])
    assert code == 2
    assert json.loads(out)["error"] == "InvalidOrder"


def test_unparsable_group_is_bad_request(capsys):
    code, out = run(capsys, ["build", "elementary", "--group", "two", "--tuple", "0"])
    assert code == 2
    assert json.loads(out)["error"] == "InvalidGroup"


def test_fine_outer_needs_leading_two_torsion(capsys):
    code, out = run(
        capsys,
        ["build", "fine-outer", "--group", "4,2", "--case", "1", "--marker", "0,1"],
    )
    assert code == 2
    assert json.loads(out)["error"] == "InvalidGroup"


def test_help_exits_zero(capsys):
    assert main(["--help"]) == 0
    assert "build" in capsys.readouterr().out


# ---------------------------------------------------------------------------
# reporting commands


def test_dims_epsilon2(capsys):
    code, out = run(capsys, ["dims", "--in", fx("epsilon_n2.json")])
    assert code == 0
    assert out == "0,0\t1\n0,1\t1\n1,0\t1\n1,1\t1\ntotal\t4\texpected\t4\n"


def test_dims_elementary_z2(capsys):
    code, out = run(capsys, ["dims", "--in", fx("elementary_z2.json")])
    assert code == 0
    assert out == "0\t5\n1\t4\ntotal\t9\texpected\t9\n"


def test_dims_type2_expected_is_traceless(capsys):
    code, out = run(capsys, ["dims", "--in", fx("type2_z4.json")])
    assert code == 0
    assert out == "0\t3\n1\t2\n2\t1\n3\t2\ntotal\t8\texpected\t8\n"


def test_dims_uses_underlying_grading_of_envelope(capsys):
    code, out = run(capsys, ["dims", "--in", fx("pauli_case1.json")])
    assert code == 0
    assert out.endswith("total\t4\texpected\t4\n")


def test_support_type1(capsys):
    code, out = run(capsys, ["support", "--in", fx("type1_eps3.json")])
    assert code == 0
    lines = out.splitlines()
    assert len(lines) == 8 and "0,0" not in lines
    assert lines == sorted(lines)


def test_obstruction_solvable_only_at_two(capsys):
    code, out = run(capsys, ["obstruction", "--n", "2"])
    rep = json.loads(out)
    assert code == 0 and rep["solvable"] is True and rep["split"] == [1, 1]
    code, out = run(capsys, ["obstruction", "--n", "7"])
    rep = json.loads(out)
    assert code == 0 and rep["solvable"] is False and rep["split"] is None


# ---------------------------------------------------------------------------
# whole-pipeline flows


def test_coarsen_recover_roundtrip_bytes(tmp_path, capsys):
    fo = str(tmp_path / "fo.json")
    coarse = str(tmp_path / "coarse.json")
    rec = str(tmp_path / "rec.json")
    code, _ = run(
        capsys,
        ["build", "fine-outer", "--group", "2,2,2", "--case", "1",
         "--marker", "0,0,1", "--out", fo],
    )
    assert code == 0
    code, _ = run(capsys, ["coarsen", "--in", fo, "--generators", "0,0,1", "--out", coarse])
    assert code == 0
    code, out = run(
        capsys,
        ["recover", "--in", coarse, "--group", "2,2,2", "--marker", "0,0,1",
         "--phi", fx("pauli_case1.json"), "--char", "0,0,1", "--out", rec],
    )
    assert code == 0, out
    assert open(rec).read() == open(fo).read()


def test_mixed_type2_builds_and_verifies(tmp_path, capsys):
    out_path = str(tmp_path / "mx.json")
    code, _ = run(
        capsys,
        ["build", "mixed-type2", "--group", "2,2,2", "--tuple", "0,0,0;0,0,1",
         "--flavor", "symplectic", "--case", "2", "--marker", "0,0,1",
         "--out", out_path],
    )
    assert code == 0
    code, out = run(capsys, ["verify", "--in", out_path])
    assert code == 0 and json.loads(out)["ok"]


def test_tensor_folds_left(tmp_path, capsys):
    out_path = str(tmp_path / "t.json")
    code, _ = run(
        capsys,
        ["build", "tensor", "--in", fx("epsilon_n2.json"), fx("epsilon_n2.json"),
         "--out", out_path],
    )
    assert code == 0
    code, out = run(capsys, ["verify", "--in", out_path])
    assert code == 0
    code, out = run(capsys, ["dims", "--in", out_path])
    assert out.endswith("total\t16\texpected\t16\n")


def test_coarsen_rejects_envelopes(capsys):
    code, out = run(capsys, ["coarsen", "--in", fx("pauli_case1.json"), "--generators", "0,1"])
    assert code == 2
    assert json.loads(out)["error"] == "KindMismatch"


def test_module_entry_point_subprocess():
    proc = subprocess.run(
        [sys.executable, "-m", "matgrade.cli", "obstruction", "--n", "2"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["solvable"] is True
