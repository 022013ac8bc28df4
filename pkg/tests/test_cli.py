"""CLI: round trips, exit codes, determinism, harness suites."""

import json

from cgf.cli import main, parse_ring
from cgf.rings import ModularRing, PrimeField, TruncatedPolyLocal


def run_cli(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out


def test_ring_shorthand():
    assert parse_ring("mod:4") == ModularRing(4)
    assert parse_ring("prime:5") == PrimeField(5)
    assert parse_ring("polyloc:2:2") == TruncatedPolyLocal(2, 2)
    assert parse_ring('{"kind":"mod","n":4}') == ModularRing(4)


def test_reduce_row_documented_invocation(capsys):
    code, out = run_cli(capsys, "reduce-row", "--ring",
                        '{"kind":"mod","n":4}', "--row", "[2,3,0]")
    assert code == 0
    obj = json.loads(out)
    gens = obj["outputs"]["word"]["gens"]
    assert [(g["i"], g["j"], g["param"]) for g in gens] == \
        [(2, 1, 1), (1, 2, 1)]
    assert all(c["status"] == "pass" for c in obj["checks"])


def test_orbits_documented_invocation(capsys):
    code, out = run_cli(capsys, "orbits", "--ring", "mod:2", "--kind", "row",
                        "--size", "2")
    assert code == 0
    obj = json.loads(out)
    assert obj["orbits"] == 1 and obj["sizes"] == [3]


def test_homotopy_commute_trivial(capsys):
    spec = {
        "ring": {"kind": "mod", "n": 9},
        "delta_word": {"family": "lin", "size": 2,
                       "ring": {"kind": "poly", "base": {"kind": "mod", "n": 9},
                                "var": "T"},
                       "gens": [{"i": 1, "j": 2, "param": [0, 1]}]},
        "v": [[1, 0, 0], [0, 1, 0]],
    }
    code, out = run_cli(capsys, "homotopy-commute", "--flavor", "linear",
                        "--input", json.dumps(spec))
    assert code == 0
    obj = json.loads(out)
    assert obj["mode"] == "word"
    assert all(c["status"] == "pass" for c in obj["checks"])


def test_domain_error_exit_code(capsys):
    code, out = run_cli(capsys, "reduce-row", "--ring", "mod:4",
                        "--row", "[2,2]")
    assert code == 2
    obj = json.loads(out)
    assert obj["code"] == "no_unit_entry"
    assert "message" in obj


def test_usage_error_exit_code(capsys):
    code = main(["reduce-row", "--ring", "bogus:ring", "--row", "[1,0]"])
    capsys.readouterr()
    assert code == 1


def test_byte_identical_reruns(capsys):
    args = ("harness", "lemmas", "--seed", "7", "--budget", "3")
    code1, out1 = run_cli(capsys, *args)
    code2, out2 = run_cli(capsys, *args)
    assert code1 == code2 == 0
    assert out1 == out2


def test_harness_suites_pass(capsys):
    for suite in ("lemmas", "homotopy", "localglobal", "ortho"):
        code, out = run_cli(capsys, "harness", suite, "--seed", "11",
                            "--budget", "3")
        assert code == 0, out
        assert json.loads(out)["ok"] is True


def test_harness_zero_budget(capsys):
    for suite in ("lemmas", "homotopy", "localglobal", "ortho"):
        code, out = run_cli(capsys, "harness", suite, "--budget", "0")
        assert code == 0
        obj = json.loads(out)
        assert obj["failures"] == 0
        assert all(c["instances"] == 0 or c["failures"] == 0
                   for c in obj["checks"])
        assert sum(c["instances"] for c in obj["checks"]) == 0


def test_harness_corrupt_negative_control(capsys):
    code, out = run_cli(capsys, "harness", "lemmas", "--seed", "3",
                        "--budget", "2", "--corrupt")
    assert code == 2
    assert json.loads(out)["ok"] is False


def test_split_and_patch_verbs(capsys, tmp_path):
    theta = {"family": "lin", "size": 2,
             "ring": {"kind": "poly", "var": "T",
                      "base": {"kind": "frac", "base": {"kind": "int"},
                               "s": 6}},
             "gens": [{"i": 1, "j": 2, "param": [[0, 1], [1, 6]]}]}
    code, out = run_cli(capsys, "split", "--theta", json.dumps(theta),
                        "--s1", "3", "--s2", "-2", "--exponent", "2")
    assert code == 0
    obj = json.loads(out)
    assert obj["outputs"]["b"] == [4, 1]

    sigma = {"rows": 1, "cols": 1,
             "ring": {"kind": "poly", "var": "T",
                      "base": {"kind": "frac", "base": {"kind": "int"},
                               "s": 3}},
             "entries": [[[[7, 1]]]]}
    sigma2 = {"rows": 1, "cols": 1,
              "ring": {"kind": "poly", "var": "T",
                       "base": {"kind": "frac", "base": {"kind": "int"},
                                "s": -2}},
              "entries": [[[[7, 1]]]]}
    code, out = run_cli(capsys, "patch", "--sigma1", json.dumps(sigma),
                        "--sigma2", json.dumps(sigma2), "--s1", "3",
                        "--s2", "-2")
    assert code == 0


def test_orbit_cache_and_certify(capsys, tmp_path):
    cache = tmp_path / "table.json"
    code, _ = run_cli(capsys, "orbits", "--ring", "mod:2", "--size", "2",
                      "--cache", str(cache))
    assert code == 0
    code, out = run_cli(capsys, "certify", "--table", str(cache),
                        "--v1", "[1,0]", "--v2", "[1,1]")
    assert code == 0
    obj = json.loads(out)
    assert obj["equivalent"] is True


def test_classify_and_quotient_verbs(capsys):
    code, out = run_cli(capsys, "classify-o2", "--ring", "prime:5",
                        "--matrix", "[[2,0],[0,3]]")
    assert code == 0
    obj = json.loads(out)
    assert obj["outputs"]["shape"] == "diag" and obj["outputs"]["u"] == 2

    ident6 = [[1 if i == j else 0 for j in range(6)] for i in range(6)]
    code, out = run_cli(capsys, "ortho-quotient", "--ring", "prime:5",
                        "--matrix", json.dumps(ident6))
    assert code == 0
