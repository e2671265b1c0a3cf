import json

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from framelab import DualPair, canonical_dual, example_frame, random_dual_pair, random_frame
from framelab.cli import main
from framelab.io import (
    FormatError,
    fmt_complex,
    fmt_real,
    frame_from_dict,
    frame_to_dict,
    load_pair,
    pair_from_dict,
    pair_to_dict,
    table,
    write_json,
)


@settings(max_examples=30, deadline=None)
@given(st.integers(1, 5), st.integers(0, 4), st.integers(0, 10**6))
def test_round_trip_is_bit_exact(n, extra, seed):
    P = random_dual_pair(n + extra, n, seed)
    d = json.loads(json.dumps(pair_to_dict(P)))
    Q = pair_from_dict(d)
    assert np.array_equal(P.F.vectors, Q.F.vectors)
    assert np.array_equal(P.G.vectors, Q.G.vectors)


def test_readers_reject_bad_input():
    F = random_frame(3, 2, seed=0)
    d = frame_to_dict(F)
    d["vectors"][1] = d["vectors"][1][:1]
    with pytest.raises(FormatError, match="vector 1"):
        frame_from_dict(d)
    with pytest.raises(FormatError):
        frame_from_dict({"dim": 0, "vectors": []})
    with pytest.raises(FormatError):
        frame_from_dict({"dim": 2, "vectors": [[1, 2]]})
    with pytest.raises(FormatError):
        pair_from_dict({"F": frame_to_dict(F)})


def test_bare_frame_file_gets_canonical_dual(tmp_path):
    path = tmp_path / "f.json"
    write_json(path, frame_to_dict(example_frame()))
    P = load_pair(path)
    np.testing.assert_allclose(P.G.vectors, canonical_dual(example_frame()).vectors)


def test_formatting():
    assert fmt_real(2 / 3) == "0.666667"
    assert fmt_real(None) == "-"
    assert fmt_complex(1 - 2j) == "1.000000-2.000000i"
    out = table([["a", "1"], ["bbb", "22"]], ["k", "v"])
    assert out.splitlines()[0].startswith("k")


# --------------------------------------------------------------------------
# CLI


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


def test_gen_harmonic(tmp_path, capsys):
    path = tmp_path / "h.json"
    code, out, _ = run(capsys, "gen", "harmonic", "--N", 3, "--n", 2, "-o", path)
    assert code == 0
    assert "parseval" in out and "equal-norm" in out and "equiangular" in out
    d = json.loads(path.read_text())
    assert d["dim"] == 2 and len(d["vectors"]) == 3


def test_gen_pairs_and_stdout(tmp_path, capsys):
    code, out, err = run(capsys, "gen", "onb-extension", "--N", 4, "--n", 2)
    assert code == 0
    pair_from_dict(json.loads(out))
    assert "1-uniform c'=0.500000" in err
    code, _, err = run(capsys, "gen", "two-uniform", "--n", 3)
    assert code == 0 and "2-uniform" in err
    code, out, _ = run(capsys, "gen", "random", "--N", 5, "--n", 3, "--dual", "random", "--seed", 2)
    assert code == 0
    pair_from_dict(json.loads(out))


def test_gen_requires_sizes(capsys):
    with pytest.raises(SystemExit):
        main(["gen", "harmonic", "--n", "2"])


@pytest.fixture
def files(tmp_path):
    paths = {}
    for name, kind, extra in [
        ("harmonic", "harmonic", ["--N", "3", "--n", "2"]),
        ("example", "example", []),
        ("two", "two-uniform", ["--n", "3"]),
    ]:
        paths[name] = tmp_path / f"{name}.json"
        assert main(["gen", kind, *extra, "-o", str(paths[name])]) == 0
    bad = tmp_path / "bad.json"
    bad.write_text('{"dim": 2, "vectors": [[[1, 0]]]}')
    paths["bad"] = bad
    paths["notjson"] = tmp_path / "broken.json"
    paths["notjson"].write_text("{")
    return paths


def test_analyze_values(files, capsys):
    code, out, _ = run(capsys, "analyze", files["harmonic"], "--m", 2)
    assert code == 0 and "1.054093" in out
    code, out, _ = run(capsys, "analyze", files["example"], "--measure", "numerical")
    assert code == 0 and "0.706011" in out
    code, out, _ = run(capsys, "analyze", files["harmonic"], "--measure", "spectral", "--m", 2, "--json")
    d = json.loads(out)
    assert d["worst"] == pytest.approx(1, abs=1e-10)


def test_analyze_csv(files, tmp_path, capsys):
    csv = tmp_path / "v.csv"
    code, _, _ = run(capsys, "analyze", files["harmonic"], "--m", 2, "--csv", csv)
    lines = csv.read_text().splitlines()
    assert code == 0 and len(lines) == 4
    assert lines[0] == "indices,value"


def test_check_exit_codes(files, capsys):
    code, out, _ = run(capsys, "check", files["two"], "--class", "R2")
    assert code == 0 and "HOLDS" in out
    code, out, _ = run(capsys, "check", files["example"], "--class", "N1")
    assert code == 1 and "FAILS" in out
    code, out, _ = run(capsys, "check", files["harmonic"], "--class", "Fm", "--m", 2, "--json")
    assert code == 0 and json.loads(out)["holds"]


def test_malformed_files_exit_2(files, capsys):
    for key in ("bad", "notjson"):
        code, _, err = run(capsys, "analyze", files[key])
        assert code == 2 and "error" in err
    code, _, err = run(capsys, "check", files["harmonic"], "--class", "Q7")
    assert code == 2


def test_relations_and_lemma(files, capsys):
    code, out, _ = run(capsys, "relations", files["example"])
    assert code == 0 and "consistent" in out
    code, out, _ = run(capsys, "lemma-test", "--trials", 50, "--m", 3)
    assert code == 0 and "failures" in out


def test_search_command(files, tmp_path, capsys):
    out_path = tmp_path / "s.json"
    code, out, _ = run(capsys, "search", files["harmonic"], "--restarts", 1, "--max-iters", 200, "-o", out_path)
    assert code == 0 and "0.666667" in out
    d = json.loads(out_path.read_text())
    G = frame_from_dict(d["G"])
    DualPair(frame_from_dict(json.loads(files["harmonic"].read_text())), G)
