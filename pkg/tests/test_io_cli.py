import json
from pathlib import Path

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mubdesigns import VectorSet, builtin_sic, certify, maximal_mubs, mub_check, sic_check
from mubdesigns import io
from mubdesigns.cli import main

DATA = Path(__file__).parent / "data"
GOLDEN = {
    "mubs_d3.json": ["construct", "--dim", "3"],
    "mubs_d4.json": ["construct", "--dim", "4"],
    "sic_d2.json": ["construct", "--dim", "2", "--method", "sic"],
    "sic_d3.json": ["construct", "--dim", "3", "--method", "sic"],
}


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


# -- serialization ---------------------------------------------------------------

def test_round_trip_is_byte_identical():
    vs = maximal_mubs(5).union()
    text = io.dumps(vs, {"construction": "wf", "q": 5})
    again, prov = io.loads(text)
    assert np.array_equal(again.vectors, vs.vectors)
    assert again.labels == vs.labels
    assert io.dumps(again, prov) == text


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 2**32 - 1), st.integers(1, 6), st.integers(1, 6))
def test_round_trip_random(seed, n, d):
    rng = np.random.default_rng(seed)
    z = rng.standard_normal((n, d)) + 1j * rng.standard_normal((n, d))
    vs = VectorSet(z / np.linalg.norm(z, axis=1, keepdims=True))
    text = io.dumps(vs)
    back, prov = io.loads(text)
    assert prov is None
    assert back.vectors.tobytes() == vs.vectors.tobytes()
    assert io.dumps(back) == text


@pytest.mark.parametrize(
    "text",
    [
        "not json",
        '{"format": "other"}',
        '{"format": "mubdesigns.vectorset", "version": 1, "dim": 2, "vectors": [[[1, 0]]]}',
        '{"format": "mubdesigns.vectorset", "version": 1, "dim": 1, "vectors": [[[2, 0]]]}',
        '{"format": "mubdesigns.vectorset", "version": 9, "dim": 1, "vectors": [[[1, 0]]]}',
    ],
)
def test_malformed_files(text):
    with pytest.raises(io.FormatError):
        io.loads(text)


# -- golden files --------------------------------------------------------------------

@pytest.mark.parametrize("name", sorted(GOLDEN))
def test_golden_files_regenerate_identically(name, capsys):
    code, out, _ = run(capsys, *GOLDEN[name])
    assert code == 0
    assert out == (DATA / name).read_text(encoding="utf-8")


@pytest.mark.parametrize("d", [3, 4])
def test_golden_mubs_verify(d):
    vs, prov = io.read(DATA / f"mubs_d{d}.json")
    assert len(vs) == d * (d + 1)
    groups = [vs.take(g) for g in vs.groups().values()]
    assert mub_check(groups).ok
    assert certify(vs).order >= 2


@pytest.mark.parametrize("d", [2, 3])
def test_golden_sics_verify(d):
    vs, _ = io.read(DATA / f"sic_d{d}.json")
    rep = sic_check(vs)
    assert rep.is_sic and rep.design.order >= 2
    assert np.allclose(vs.vectors, builtin_sic(d).vectors, atol=0)


# -- construct --------------------------------------------------------------------------

def test_construct_d3(capsys, tmp_path):
    code, out, _ = run(capsys, "construct", "--dim", "3", "--out", str(tmp_path / "x.json"))
    assert code == 0
    vs, prov = io.read(tmp_path / "x.json")
    assert len(vs) == 12
    assert list(vs.groups()) == ["B0", "B1", "B2", "B3"]
    assert prov["construction"] == "wf"


def test_construct_mols_d9(capsys, tmp_path):
    path = tmp_path / "m.json"
    assert run(capsys, "construct", "--dim", "9", "--method", "mols", "--out", str(path))[0] == 0
    vs, _ = io.read(path)
    assert len(vs) == 36 and len(vs.groups()) == 4


def test_construct_mols_custom_inputs(capsys, tmp_path):
    sq = tmp_path / "sq.json"
    sq.write_text(json.dumps([[[1, 2], [2, 1]]]))
    had = tmp_path / "h.json"
    had.write_text(json.dumps([[[1, 0], [1, 0]], [[1, 0], [-1, 0]]]))
    out = tmp_path / "m.json"
    code, _, _ = run(capsys, "construct", "--dim", "4", "--method", "mols", "--squares", str(sq), "--hadamard", str(had), "--out", str(out))
    assert code == 0
    assert len(io.read(out)[0]) == 12


@pytest.mark.parametrize(
    "argv",
    [
        ["construct", "--dim", "6"],
        ["construct", "--dim", "4", "--method", "wf"],
        ["construct", "--dim", "9", "--method", "gr"],
        ["construct", "--dim", "4", "--method", "pauli"],
        ["construct", "--dim", "8", "--method", "mols"],
        ["construct", "--dim", "36", "--method", "mols"],
        ["construct", "--dim", "5", "--method", "sic"],
        ["construct", "--dim", "1"],
    ],
)
def test_construct_unsupported_exit_2(argv, capsys):
    code, out, err = run(capsys, *argv)
    assert code == 2
    assert err.startswith("error:") and err.count("\n") == 1


@pytest.mark.parametrize("method", ["auto", "pauli"])
def test_construct_deterministic(method, capsys):
    a = run(capsys, "construct", "--dim", "5", "--method", method, "--seed", "4")[1]
    b = run(capsys, "construct", "--dim", "5", "--method", method, "--seed", "4")[1]
    assert a == b


# -- verify --------------------------------------------------------------------------------

def machine_block(out):
    return json.loads(out.split("--- json ---\n", 1)[1])


def test_verify_d4(capsys):
    code, out, _ = run(capsys, "verify", str(DATA / "mubs_d4.json"), "--mub", "--expect-design", "2", "--probes", "10")
    assert code == 0
    rep = machine_block(out)
    assert rep["design_order"] >= 2
    assert rep["angle_set"]["values"] == pytest.approx([0, 0.25], abs=1e-12)
    assert rep["mub_union"] and rep["regular_scheme"]
    assert "design order: 2" in out


def test_verify_sic(capsys):
    code, out, _ = run(capsys, "verify", str(DATA / "sic_d3.json"), "--sic")
    assert code == 0
    assert machine_block(out)["sic"]["flag"]


def test_verify_random_set_fails_expectation(capsys, tmp_path):
    rng = np.random.default_rng(0)
    z = rng.standard_normal((5, 3)) + 1j * rng.standard_normal((5, 3))
    path = tmp_path / "r.json"
    io.write(path, VectorSet(z / np.linalg.norm(z, axis=1, keepdims=True)))
    code, out, err = run(capsys, "verify", str(path), "--expect-design", "1")
    assert code == 1
    assert machine_block(out)["design_order"] == 0
    assert "residual" in err
    assert run(capsys, "verify", str(path))[0] == 0


def test_verify_sic_flag_fails_on_mubs(capsys):
    assert run(capsys, "verify", str(DATA / "mubs_d3.json"), "--sic")[0] == 1


def test_verify_malformed(capsys, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{}")
    assert run(capsys, "verify", str(bad))[0] == 2
    assert run(capsys, "verify", str(tmp_path / "missing.json"))[0] == 2


def test_verify_env_tolerance(capsys, monkeypatch):
    monkeypatch.setenv("MUBDESIGNS_TOL", "1e-30")
    code, out, _ = run(capsys, "verify", str(DATA / "sic_d3.json"))
    assert code == 0
    assert "tol 1e-30" in out
    monkeypatch.setenv("MUBDESIGNS_TOL", "abc")
    assert run(capsys, "verify", str(DATA / "sic_d3.json"))[0] == 2


# -- partition --------------------------------------------------------------------------------

def test_partition_shuffled_d3(capsys, tmp_path):
    vs = maximal_mubs(3).union()
    perm = np.random.default_rng(1).permutation(12)
    src = tmp_path / "shuffled.json"
    io.write(src, vs.take(perm).relabel(None))
    out = tmp_path / "out"
    code, _, _ = run(capsys, "partition", str(src), "--out", str(out))
    assert code == 0
    files = sorted(p.name for p in out.glob("basis_*.json"))
    assert len(files) == 4
    summary = json.loads((out / "summary.json").read_text())
    assert summary["bases"] == 4 and summary["files"] == files
    bases = [io.read(out / f)[0] for f in files]
    assert mub_check(bases).ok


def test_partition_sic_fails(capsys, tmp_path):
    code, _, err = run(capsys, "partition", str(DATA / "sic_d2.json"), "--out", str(tmp_path))
    assert code == 1 and "FAIL" in err


def test_partition_truncated_fails(capsys, tmp_path):
    vs, _ = io.read(DATA / "mubs_d3.json")
    src = tmp_path / "t.json"
    io.write(src, vs.take(range(11)))
    code, _, err = run(capsys, "partition", str(src), "--out", str(tmp_path))
    assert code == 1 and "12" in err


# -- bounds ---------------------------------------------------------------------------------------

def test_bounds_five(capsys):
    code, out, _ = run(capsys, "bounds", "5")
    assert code == 0 and out.splitlines()[0] == "6 ≤ M(5) ≤ 6"


def test_bounds_six(capsys):
    code, out, _ = run(capsys, "bounds", "6")
    assert code == 0 and out.splitlines()[0] == "3 ≤ M(6) ≤ 7"
    assert "min" in out


def test_bounds_one(capsys):
    assert run(capsys, "bounds", "1")[0] == 2


def test_bounds_square_mentions_latin_squares(capsys):
    out = run(capsys, "bounds", "36")[1]
    assert "note:" in out and "N(6)" in out
