import json

import numpy as np
import pytest

from spinstat import fixtures
from spinstat.cli import main
from spinstat.exchange import CCW
from spinstat.sampling import random_superposition
from spinstat.states import Superposition

from conftest import basis, product, slot


def write(path, data):
    path.write_text(json.dumps(data))
    return str(path)


def two_fermions(a, b, chi=(0.3, 1.2)):
    return {
        "slots": [
            {"orbital": a, "two_s": 1, "two_m": 1, "chi": chi[0]},
            {"orbital": b, "two_s": 1, "two_m": 1, "chi": chi[1]},
        ]
    }


def test_round_trip(tmp_path, rng):
    sup = random_superposition(rng, 3, 2, 3, 2)
    fixtures.dump(sup, tmp_path / "s.json")
    back = fixtures.load(tmp_path / "s.json")
    assert back.shape() == sup.shape()
    for t, u in zip(sup.terms, back.terms):
        assert t.key() == u.key() and t.coeff == u.coeff


def test_empty_superposition_round_trip(tmp_path):
    fixtures.dump(Superposition.zero(2, 3, 1), tmp_path / "z.json")
    back = fixtures.load(tmp_path / "z.json")
    assert back.shape() == (2, 3, 1) and not back.terms


def test_product_fixture_and_angle_canonicalisation(tmp_path):
    path = write(tmp_path / "p.json", two_fermions([1, 0], [[0, 0], [1, 0]], chi=(-0.5, 7.0)))
    sup = fixtures.load(path)
    assert len(sup) == 1
    chis = sup.terms[0].chis
    assert abs(chis[0] - (2 * np.pi - 0.5)) < 1e-15 and abs(chis[1] - (7.0 - 2 * np.pi)) < 1e-15


@pytest.mark.parametrize(
    "data",
    [
        [],
        {"nothing": 1},
        {"terms": []},
        {"slots": [{"orbital": [1, 0], "two_s": 1, "chi": 0.0}]},
        {"slots": [{"orbital": ["x"], "two_s": 1, "two_m": 1}]},
        {"slots": [{"orbital": [1, 0], "two_s": 1, "two_m": 2}]},
        {"slots": [{"orbital": [1, 0], "two_s": -1, "two_m": 1}]},
    ],
)
def test_malformed_fixtures(tmp_path, data):
    with pytest.raises(fixtures.FixtureError):
        fixtures.load(write(tmp_path / "bad.json", data))


def test_unreadable_and_invalid_json(tmp_path):
    with pytest.raises(fixtures.FixtureError):
        fixtures.load(tmp_path / "missing.json")
    (tmp_path / "broken.json").write_text("{")
    with pytest.raises(fixtures.FixtureError):
        fixtures.load(tmp_path / "broken.json")


def test_amplitude_command_duplicate_fermions(tmp_path, capsys):
    dup = write(tmp_path / "dup.json", two_fermions([1, 0], [1, 0]))
    ket = write(tmp_path / "ket.json", two_fermions([1, 0], [0, 1]))
    out = tmp_path / "res.json"
    assert main(["amplitude", dup, ket, "--verbose", "--out", str(out)]) == 0
    text = capsys.readouterr().out
    assert "term 1: coeff=-1" in text
    result = json.loads(out.read_text())
    assert abs(result["f"][0]) < 1e-12 and abs(result["f"][1]) < 1e-12
    assert result["method"] == "feynman" and result["cases"] == ["all_equal_m"]


def test_amplitude_methods_agree(tmp_path, capsys):
    bra = write(tmp_path / "bra.json", two_fermions([0.6, 0.8], [[0, 1], [1, 0]]))
    ket = write(tmp_path / "ket.json", two_fermions([1, 0], [0, 1], chi=(2.0, 5.0)))
    results = {}
    for method in ("feynman", "standard"):
        path = tmp_path / f"{method}.json"
        assert main(["amplitude", bra, ket, "--method", method, "--out", str(path)]) == 0
        results[method] = complex(*json.loads(path.read_text())["f"])
    capsys.readouterr()
    assert abs(results["feynman"] - results["standard"]) < 1e-10


def test_amplitude_command_errors(tmp_path, capsys):
    good = write(tmp_path / "g.json", two_fermions([1, 0], [0, 1]))
    bad = write(tmp_path / "b.json", {"slots": []})
    assert main(["amplitude", good, bad]) == 2
    three = write(tmp_path / "three.json", {"slots": two_fermions([1, 0], [0, 1])["slots"] * 2})
    assert main(["amplitude", good, three]) == 2
    assert "error" in capsys.readouterr().err


def test_run_usage_errors(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["run", "--suite", "bogus"])
    assert exc.value.code == 2
    assert main(["run", "--suite", "projectors", "--two-s", "-1"]) == 2
    assert main(["run", "--suite", "projectors", "--particles", "99"]) == 2
    capsys.readouterr()


def test_run_report_is_deterministic(tmp_path, capsys):
    paths = [tmp_path / "a.json", tmp_path / "b.json"]
    for p in paths:
        args = ["run", "--suite", "chi-independence", "--particles", "3", "--trials", "5", "--seed", "7", "--out", str(p)]
        assert main(args) == 0
    assert paths[0].read_bytes() == paths[1].read_bytes()
    report = json.loads(paths[0].read_text())
    assert report["timestamp"] is None
    assert report["config"]["seed"] == 7 and report["summary"]["failed"] == 0
    capsys.readouterr()


def test_run_projectors(tmp_path, capsys):
    out = tmp_path / "p.json"
    assert main(["run", "--suite", "projectors", "--particles", "3", "--two-s", "1", "--orbital-dim", "2", "--out", str(out)]) == 0
    report = json.loads(out.read_text())
    assert report["summary"] == {"total": 4, "passed": 4, "failed": 0}
    capsys.readouterr()


def test_run_all_scalar(capsys):
    assert main(["run", "--suite", "all", "--particles", "2", "--two-s", "0", "--trials", "3", "--verbose"]) == 0
    text = capsys.readouterr().out
    assert "PASS" in text and "FAIL" not in text


def test_run_failure_exit_code(capsys):
    # an impossible tolerance forces failures
    assert main(["run", "--suite", "equivalence", "--particles", "3", "--trials", "2", "--tol", "1e-300"]) == 1
    assert "FAIL" in capsys.readouterr().out
