import json

import pytest

from gradedcodes.cli import main
from gradedcodes import fixtures as fixtures_mod


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_count(capsys):
    code, out, _ = run_cli(capsys, "count", "--weights", "1,2", "--field", "q=5")
    assert code == 0 and out.strip() == "7"


def test_count_json_deterministic(capsys):
    _, first, _ = run_cli(capsys, "count", "--weights", "1,2", "--field", "q=5", "--json")
    _, second, _ = run_cli(capsys, "count", "--weights", "1,2", "--field", "q=5", "--json")
    assert first == second
    doc = json.loads(first)
    assert doc["formula"] == 7 and doc["well_formed"] is True


def test_points_roundtrip_through_filter(capsys, tmp_path):
    code, out, _ = run_cli(capsys, "points", "--weights", "1,2", "--field", "q=5", "--json")
    assert code == 0
    doc = json.loads(out)
    assert len(doc["points"]) == 7
    path = tmp_path / "points.json"
    path.write_text(out)
    code, out, _ = run_cli(
        capsys, "chain", "filter", str(path), "--thresholds", "1,2,4", "--json"
    )
    assert code == 0
    levels = json.loads(out)["levels"]
    assert [lvl["dim"] for lvl in levels] == [3, 7, 7]


def test_surface_count(capsys):
    code, out, _ = run_cli(
        capsys,
        "surface",
        "--weights", "2,4,6,10",
        "--field", "q=5",
        "--poly", "x0^10+x1^5+x2^2+x3",
        "--count",
    )
    assert code == 0 and out.strip() == "112"


def test_surface_affine(capsys):
    code, out, _ = run_cli(
        capsys,
        "surface",
        "--weights", "1,1",
        "--field", "q=7",
        "--poly", "x1^3 - (x0^4 + x0 + 1)",
        "--affine",
        "--json",
    )
    assert code == 0
    assert json.loads(out)["count"] == 12


def test_zeta_space(capsys):
    code, out, _ = run_cli(
        capsys, "zeta", "--weights", "1,1", "--field", "q=2", "--space", "--depth", "3", "--json"
    )
    doc = json.loads(out)
    assert doc["counts"] == [3, 5, 9]
    assert doc["series"] == [[1, 1], [3, 1], [7, 1], [15, 1]]


def test_code_build_analyze_lift_pipeline(capsys, tmp_path):
    code_path = tmp_path / "code.json"
    code, _, _ = run_cli(
        capsys,
        "code", "build",
        "--weights", "1,1",
        "--field", "q=7",
        "--degree", "1",
        "--out", str(code_path),
    )
    assert code == 0
    code, out, _ = run_cli(capsys, "code", "analyze", str(code_path))
    doc = json.loads(out)
    assert doc["length"] == 8 and doc["dimension"] == 2
    assert doc["min_distance"]["value"] == 7 and doc["min_distance"]["exact"]


def test_css_pipeline(capsys, tmp_path):
    from conftest import hamming_pair
    from gradedcodes.gf import field_create

    hamming, simplex = hamming_pair(field_create(2))
    simplex_path = tmp_path / "simplex.json"
    simplex_path.write_text(json.dumps(simplex.to_json()))
    hamming_path = tmp_path / "hamming.json"
    hamming_path.write_text(json.dumps(hamming.to_json()))

    css_path = tmp_path / "steane.json"
    code, _, _ = run_cli(capsys, "css", "lift", str(simplex_path), "--out", str(css_path))
    assert code == 0
    doc = json.loads(css_path.read_text())
    assert (doc["n"], doc["k"]) == (7, 1)
    assert doc["distance"]["value"] == 3 and doc["distance"]["kind"] == "exact"

    code, out, _ = run_cli(capsys, "css", "pair", str(hamming_path), str(hamming_path))
    doc = json.loads(out)
    assert (doc["n"], doc["k"], doc["distance"]["value"]) == (7, 1, 3)

    code, out, _ = run_cli(capsys, "css", "distance", str(css_path), "--json")
    assert json.loads(out)["distance"]["value"] == 3

    code, out, _ = run_cli(capsys, "bound", "--css", str(css_path))
    assert code == 0
    doc = json.loads(out)
    assert doc["satisfies_plain"] is True
    assert doc["plain_bound"]["float"] == 4.0

    code, out, _ = run_cli(
        capsys, "bound", "--css", str(css_path), "--epsilon", "1/2"
    )
    assert code == 0
    assert json.loads(out)["refined_bound"] == {"num": 15, "den": 4, "float": 3.75}


def test_chain_pipeline(capsys, tmp_path):
    code, out, _ = run_cli(capsys, "chain", "toric", "--L", "2")
    complex_path = tmp_path / "toric.json"
    complex_path.write_text(out)
    code, out, _ = run_cli(capsys, "chain", "validate", str(complex_path), "--json")
    assert code == 0 and json.loads(out)["valid"]
    code, out, _ = run_cli(capsys, "chain", "homology", str(complex_path), "--json")
    assert json.loads(out)["betti"] == {"0": 1, "1": 2, "2": 1}
    code, out, _ = run_cli(capsys, "chain", "code", str(complex_path), "--degree", "1")
    doc = json.loads(out)
    assert (doc["n"], doc["k"], doc["distance"]["value"]) == (8, 2, 2)


def test_exit_codes(capsys, tmp_path):
    with pytest.raises(SystemExit) as err:
        main(["count", "--weights", "1,2"])  # missing --field
    assert err.value.code == 2
    code, _, err_text = run_cli(
        capsys, "points", "--weights", "1,1,1,1,1,1", "--field", "q=9",
        "--enum-budget", "100",
    )
    assert code == 3 and "budget" in err_text
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    code, _, _ = run_cli(capsys, "code", "analyze", str(bad))
    assert code == 2
    code, _, err_text = run_cli(
        capsys, "surface", "--weights", "1,1", "--field", "q=4",
        "--poly", "x0 + y", "--count",
    )
    assert code == 2


def test_fixtures_cli(capsys):
    code, out, _ = run_cli(capsys, "fixtures", "steane")
    assert code == 0
    assert "PASS" in out and "steane" in out
    code, out, _ = run_cli(capsys, "fixtures", "nonexistent")
    assert code == 2


def test_fixture_corpus_passes(capsys):
    assert fixtures_mod.run() == 0
    out = capsys.readouterr().out
    assert "12/12 fixtures passed" in out
    assert "FINDING" in out


def test_fixtures_empty_dir(tmp_path, capsys):
    assert fixtures_mod.run(data_dir=tmp_path) == 2
