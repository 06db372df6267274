from __future__ import annotations

import json
import subprocess
import sys
from pathlib import Path

import pytest

from convpart import fixtures
from convpart.arrangement import project_pi
from convpart.cli import main
from convpart.io import arrangement_to_json, assignment_to_json, partition_from_json
from convpart.realization import partitions_equal

from test_faces import EX1_EDGES

GOLDEN = Path(__file__).parent / "golden"
PLANAR = ("ex1", "parl", "y3", "pent", "polar2")


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def run_json(capsys, *argv):
    code, out, err = run(capsys, *argv)
    return code, (json.loads(out) if out else None), (json.loads(err) if err else None)


@pytest.mark.parametrize("name,code", [("ex1", 0), ("polar2", 2), ("ex1_broken", 3)])
def test_carries_exit_codes(capsys, name, code):
    got, out, _ = run_json(capsys, "carries", name)
    assert got == code
    assert out["verdict"] in ("carries_proper", "carries_nonproper", "does_not_carry")


def test_carries_witness(capsys):
    _, out, _ = run_json(capsys, "carries", "ex1_broken")
    assert out["verdict"] == "does_not_carry" and "sign_vector" in out["witness"]


def test_faces_match_reference_poset(capsys):
    _, out, _ = run_json(capsys, "faces", "ex1")
    edges = {(c, k) for k, f in out["faces"].items() for c in f["covers"]}
    assert edges == EX1_EDGES


def test_file_input(capsys, tmp_path):
    path = tmp_path / "a.json"
    path.write_text(json.dumps(arrangement_to_json(fixtures.load("y3"))))
    code, out, _ = run_json(capsys, "faces", str(path))
    assert code == 0 and out["n"] == 3


def test_equiv_perturbed(capsys, tmp_path):
    path = tmp_path / "p.json"
    path.write_text(json.dumps(arrangement_to_json(fixtures.perturbed_ex1(3))))
    _, out, _ = run_json(capsys, "equiv", "ex1", str(path))
    assert out == {"equivalent": True}
    _, out, _ = run_json(capsys, "equiv", "ex1", "parl")
    assert out == {"equivalent": False}


def test_type_is_deterministic(capsys):
    _, a, _ = run(capsys, "type", "pent")
    _, b, _ = run(capsys, "type", "pent", "--seed", "4")
    assert a and json.loads(a) == json.loads(b)


def test_enum_d1(capsys):
    _, out, _ = run_json(capsys, "enum-d1", "3")
    assert out["counts"] == {"0": 3, "1": 6, "2": 6}
    assert len(out["types"]) == 15


def test_distance(capsys):
    _, out, _ = run_json(capsys, "distance", "ex1", "ex1")
    assert out["value"] == pytest.approx(0, abs=1e-9) and out["method"] == "exact_d2"
    code, _, err = run_json(capsys, "distance", "ex1", "parl", "--method", "monte_carlo")
    assert code == 1 and err["error"]["code"] == "seed_required"
    _, out, _ = run_json(capsys, "distance", "ex1", "parl", "--method", "monte_carlo", "--seed", "2", "--samples", "20000")
    assert out["stderr"] > 0


def test_nodes_and_constraints(capsys):
    _, out, _ = run_json(capsys, "nodes", "pent")
    assert len(out["nodes"]) == 6
    _, doc, _ = run_json(capsys, "constraints", "pent")
    assert len(doc["variables"]) == 18


def test_identity_reconstruct_round_trip(capsys, tmp_path):
    _, X, _ = run_json(capsys, "identity", "ex1")
    path = tmp_path / "x.json"
    path.write_text(json.dumps(X))
    code, out, _ = run_json(capsys, "reconstruct", "ex1", "--assignment", str(path))
    assert code == 0 and out["report"]["verdict"] == "pass"
    assert partitions_equal(partition_from_json(out["partition"]), project_pi(fixtures.load("ex1")))


def test_doubled_assignment(capsys, tmp_path):
    from convpart.realization import prepare

    ctx = prepare(project_pi(fixtures.load("pent")))
    path = tmp_path / "x.json"
    path.write_text(json.dumps(assignment_to_json(fixtures.pent_doubled_assignment(ctx.N))))
    code, out, _ = run_json(capsys, "reconstruct", "pent", "--assignment", str(path))
    assert code == 1 and out["report"]["verdict"] == "fail (g-condition)"
    _, out, _ = run_json(capsys, "fzcheck", "pent", "--family", "assignment", "--assignment", str(path), "--confirm", "5000")
    assert out["verdict"] is False and out["tiling_oracle"]["in_two_interiors"] > 0


def test_fzcheck_families(capsys):
    _, out, _ = run_json(capsys, "fzcheck", "y3")
    assert out["verdict"] is True
    _, out, _ = run_json(capsys, "fzcheck", "y3", "--family", "regions")
    assert out["verdict"] is False and out["unmatched_facets"]


@pytest.mark.parametrize("argv,code", [
    (("faces", "no_such_thing"), "input_error"),
    (("faces", "ex1_broken"), "contract_violation"),
    (("--cap", "2", "faces", "ex1"), "cap_exceeded"),
])
def test_error_codes(capsys, argv, code):
    got, out, err = run_json(capsys, *argv)
    assert got == 1 and out is None and err["error"]["code"] == code


def test_cap_does_not_leak(capsys):
    import os

    before = os.environ.get("CONVPART_ENUM_CAP")
    run(capsys, "--cap", "2", "faces", "ex1")
    assert os.environ.get("CONVPART_ENUM_CAP") == before


def test_render_needs_the_plane(capsys, tmp_path):
    from convpart.arrangement import Arrangement

    path = tmp_path / "line.json"
    path.write_text(json.dumps(arrangement_to_json(Arrangement(2, 1, {(1, 2): (0, 1)}))))
    code, _, err = run_json(capsys, "render", str(path))
    assert code == 1 and err["error"]["code"] == "unsupported_dimension"


@pytest.mark.parametrize("name", PLANAR)
@pytest.mark.parametrize("view", ["affine", "hemisphere"])
def test_render_golden(capsys, name, view):
    _, out, _ = run(capsys, "render", name, "--view", view)
    assert out == (GOLDEN / f"{name}_{view}.svg").read_text(encoding="utf-8")


def test_output_file(capsys, tmp_path):
    target = tmp_path / "out.svg"
    assert main(["render", "pent", "-o", str(target)]) == 0
    assert capsys.readouterr().out == ""
    assert target.read_bytes() == (GOLDEN / "pent_hemisphere.svg").read_bytes()


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "convpart", "carries", "polar2"], capture_output=True, text=True)
    assert res.returncode == 2 and json.loads(res.stdout)["verdict"] == "carries_nonproper"
