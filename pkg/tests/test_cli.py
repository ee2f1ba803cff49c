import json

import pytest

from floergen.cli import run
from floergen.grobner import laurent_quotient
from floergen.laurent import laurent_from_json
from floergen.toric import corpus


@pytest.fixture()
def polytope_file(tmp_path):
    def write(name):
        path = tmp_path / f"{name}.json"
        path.write_text(json.dumps(corpus()[name].to_json()))
        return str(path)

    return write


def invoke(capsys, argv):
    code = run(argv)
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_validate_ok(capsys, polytope_file):
    code, out, _ = invoke(capsys, ["validate", "--polytope", polytope_file("CP2")])
    assert code == 0
    assert "valid: true" in out


def test_validate_bad_polytope_exit_1(capsys, tmp_path):
    bad = {"name": "bad", "dim": 2, "normals": [[1, 0], [0, 1], [-1, -2]],
           "lambda": ["1", "1", "1"]}
    path = tmp_path / "bad.json"
    path.write_text(json.dumps(bad))
    code, out, err = invoke(capsys, ["validate", "--polytope", str(path)])
    assert code == 1
    assert "unimodularity" in err
    assert "[1, 3]" in err


def test_validate_bad_polytope_json_error(capsys, tmp_path):
    bad = {"name": "bad", "dim": 2, "normals": [[1, 0], [0, 1], [-1, -2]],
           "lambda": ["1", "1", "1"]}
    path = tmp_path / "bad.json"
    path.write_text(json.dumps(bad))
    code, out, _ = invoke(
        capsys, ["validate", "--polytope", str(path), "--format", "json"])
    assert code == 1
    data = json.loads(out)
    assert data["error"] == "validation:unimodularity"
    assert data["facets"] == [1, 3]


def test_missing_input_exit_1(capsys):
    code, _, err = invoke(capsys, ["validate"])
    assert code == 1
    assert "polytope" in err


def test_toric_gen_cp2_f7(capsys, polytope_file):
    code, out, _ = invoke(capsys, [
        "toric-gen", "--polytope", polytope_file("CP2"),
        "--field", "F7", "--format", "json",
    ])
    assert code == 0
    data = json.loads(out)
    assert data["minimal_chern"] == 3
    assert data["co0"] == {
        "well_defined": True, "failing_relation": None, "kernel_dim": 0,
        "surjective": True, "domain_dim": 3, "codomain_dim": 3,
    }
    assert len(data["summands"]) == 3
    points = sorted(tuple(s["point"]) for s in data["summands"])
    assert points == [("1", "1"), ("2", "2"), ("4", "4")]
    values = sorted(s["critical_value"] for s in data["summands"])
    assert values == ["3", "5", "6"]


def test_real_gen_cp2(capsys, polytope_file):
    code, out, _ = invoke(capsys, [
        "real-gen", "--polytope", polytope_file("CP2"), "--format", "json",
    ])
    assert code == 0
    data = json.loads(out)
    assert data["containment"] is True
    assert data["pi_kernel_dim"] == 3
    assert data["frobenius_kernel_dim"] == 3
    assert data["dim_qh_r"] == 6 and data["dim_qh"] == 3


def test_cohomology_and_superpotential(capsys, polytope_file):
    code, out, _ = invoke(capsys, [
        "cohomology", "--polytope", polytope_file("CP3"), "--format", "json",
    ])
    assert code == 0
    data = json.loads(out)
    assert data["classical_graded_dims"] == [1, 1, 1, 1]
    assert data["real_locus_dims_F2"] == [1, 1, 1, 1]

    code, out, _ = invoke(capsys, [
        "superpotential", "--polytope", polytope_file("CP1"),
        "--field", "F5", "--format", "json",
    ])
    assert code == 0
    data = json.loads(out)
    assert data["superpotential"]["terms"] == [
        {"coeff": "1", "exps": [-1]}, {"coeff": "1", "exps": [1]},
    ]


def test_jac_roundtrip_presentation(capsys, polytope_file, tmp_path):
    code, out, _ = invoke(capsys, [
        "jac", "--polytope", polytope_file("CP2"), "--field", "F7",
        "--format", "json",
    ])
    assert code == 0
    data = json.loads(out)
    pres = data["presentation"]
    assert pres["dim"] == 3
    # re-ingest the emitted generators: identical staircase and dims
    gens = [laurent_from_json(g) for g in pres["generators"]]
    rebuilt = laurent_quotient(gens)
    assert rebuilt.dim == pres["dim"]
    assert rebuilt.basis_labels() == pres["staircase"]


def test_jac_from_superpotential_file(capsys, tmp_path):
    W = {
        "variables": ["x", "y", "z"],
        "field": "F5",
        "terms": [
            {"coeff": "1", "exps": [1, 0, 0]},
            {"coeff": "1", "exps": [0, 1, 0]},
            {"coeff": "1", "exps": [0, 0, 1]},
            {"coeff": "1", "exps": [-1, -1, 0]},
            {"coeff": "1", "exps": [0, -1, -1]},
        ],
    }
    path = tmp_path / "w.json"
    path.write_text(json.dumps(W))
    code, out, _ = invoke(capsys, [
        "jac", "--superpotential", str(path), "--field", "F5",
        "--format", "json",
    ])
    assert code == 0
    assert json.loads(out)["presentation"]["dim"] == 3


def test_spectrum_and_decompose(capsys, polytope_file):
    code, out, _ = invoke(capsys, [
        "spectrum", "--polytope", polytope_file("CP1"), "--format", "json",
    ])
    assert code == 0
    data = json.loads(out)
    assert data["spectrum"]["char_poly"] == ["-4", "0", "1"]

    code, out, _ = invoke(capsys, [
        "decompose", "--polytope", polytope_file("CP2"),
        "--field", "F7", "--format", "json",
    ])
    assert code == 0
    data = json.loads(out)
    assert data["points"] == [["1", "1"], ["2", "2"], ["4", "4"]]

    code, _, err = invoke(capsys, [
        "decompose", "--polytope", polytope_file("CP2"), "--field", "Q",
    ])
    assert code == 1


def test_qh_and_co0(capsys, polytope_file):
    code, out, _ = invoke(capsys, [
        "qh", "--polytope", polytope_file("CP2"), "--field", "F7",
        "--format", "json",
    ])
    assert code == 0
    assert json.loads(out)["presentation"]["dim"] == 3

    code, out, _ = invoke(capsys, [
        "co0", "--polytope", polytope_file("CP2"), "--field", "F3",
        "--format", "json",
    ])
    assert code == 0
    assert json.loads(out)["isomorphism"] is True


def test_smod2(capsys):
    code, out, _ = invoke(capsys, [
        "smod2", "--field", "F7", "--rho", "2,3", "--format", "json",
    ])
    assert code == 0
    data = json.loads(out)
    assert data["dim"] == 3 and data["checks"]["ok"] is True

    code, _, err = invoke(capsys, ["smod2", "--field", "F7"])
    assert code == 1


def test_ainfty_check(capsys, tmp_path):
    from floergen.ainfty import load_example

    path = tmp_path / "lx.json"
    path.write_text(json.dumps(load_example("lambda_x").to_json()))
    code, out, _ = invoke(capsys, [
        "ainfty-check", "--ainfty", str(path), "--format", "json",
    ])
    assert code == 0
    data = json.loads(out)
    assert data["relations_hold"] is True
    assert data["opposite_involutive"] is True
    assert data["failures"] == []


def test_budget_exhaustion_exit_2(capsys, polytope_file):
    code, _, err = invoke(capsys, [
        "co0", "--polytope", polytope_file("CP3"), "--field", "F5",
        "--budget", "5",
    ])
    assert code == 2
    assert "budget" in err


def test_text_output_byte_stable(capsys, polytope_file):
    path = polytope_file("CP2")
    argv = ["toric-gen", "--polytope", path, "--field", "F7"]
    _, out1, _ = invoke(capsys, argv)
    _, out2, _ = invoke(capsys, argv)
    assert out1 == out2
    argv = ["real-gen", "--polytope", path, "--format", "json"]
    _, out1, _ = invoke(capsys, argv)
    _, out2, _ = invoke(capsys, argv)
    assert out1 == out2


def test_seed_embedded_in_reports(capsys, polytope_file):
    code, out, _ = invoke(capsys, [
        "decompose", "--polytope", polytope_file("CP2"), "--field", "F7",
        "--seed", "11", "--format", "json",
    ])
    assert code == 0
    assert json.loads(out)["seed"] == 11
