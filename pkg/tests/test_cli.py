"""CLI adapter tests: schemas, exit codes, golden outputs."""

import json
import subprocess
import sys

WORKED_PENCIL = {
    "n": 4,
    "A": [["0", "0", "1", "0"], ["0", "1", "0", "0"],
          ["1", "0", "0", "0"], ["0", "0", "0", "-1"]],
    "B": [["0", "1", "0", "0"], ["1", "0", "0", "0"],
          ["0", "0", "0", "-1"], ["0", "0", "-1", "0"]],
}


def run_cli(*args, payload=None):
    cmd = [sys.executable, "-m", "pencilred.cli"] + list(args)
    if payload is not None:
        cmd += ["--input-json", json.dumps(payload)]
    return subprocess.run(cmd, capture_output=True, text=True)


def test_invariant_worked_pencil():
    res = run_cli("invariant", payload=WORKED_PENCIL)
    assert res.returncode == 0
    out = json.loads(res.stdout)
    assert out["form"]["coeffs"] == ["1", "0", "0", "0", "1"]
    assert out["form"]["degree"] == 4


def test_reduce_already_reduced():
    p = {"n": 4,
         "A": [["1", "0", "0", "0"], ["0", "1", "0", "0"],
               ["0", "0", "1", "0"], ["0", "0", "0", "1"]],
         "B": [["0", "0", "0", "0"], ["0", "1", "0", "0"],
               ["0", "0", "2", "0"], ["0", "0", "0", "3"]]}
    res = run_cli("reduce", payload=p)
    assert res.returncode == 0
    out = json.loads(res.stdout)
    assert out["g"] == [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0],
                        [0, 0, 0, 1]]
    assert out["reduced"] == {"n": 4, "A": p["A"], "B": p["B"]}


def test_orbit_invalid_datum_exit2():
    payload = {"f": {"degree": 4, "coeffs": ["1", "0", "0", "0", "1"]},
               "alpha": ["0", "1", "0", "0"], "z": "2"}
    res = run_cli("orbit", payload=payload)
    assert res.returncode == 2
    err = json.loads(res.stdout)
    assert err["error"]["type"] == "InvalidDatum"


def test_orbit_worked():
    payload = {"f": {"degree": 4, "coeffs": ["1", "0", "0", "0", "1"]},
               "alpha": ["0", "1", "0", "0"], "z": "1"}
    res = run_cli("orbit", payload=payload)
    assert res.returncode == 0
    out = json.loads(res.stdout)
    assert out["pencil"] == WORKED_PENCIL
    assert out["one_bar"] == ["1", "0", "0", "0"]


def test_divisor_orbit_integralizes():
    payload = {"f": {"degree": 4, "coeffs": ["1", "0", "0", "0", "3"]},
               "U": {"degree": 1, "coeffs": ["1", "-1"]}, "w": "2"}
    res = run_cli("divisor-orbit", payload=payload)
    assert res.returncode == 0
    out = json.loads(res.stdout)
    assert out["datum"]["z"] == "1/2"
    assert out["integralized"] is True
    assert all("/" not in x for row in out["integral_pencil"]["A"]
               for x in row)


def test_norm_check():
    payload = {"f": {"degree": 4, "coeffs": ["1", "0", "0", "0", "3"]},
               "U": {"degree": 1, "coeffs": ["1", "-1"]}, "w": "2"}
    res = run_cli("--precision", "160", "norm-check", payload=payload)
    assert res.returncode == 0
    out = json.loads(res.stdout)
    assert out["agree"] is True
    assert out["formula"].startswith("0.888073833977")


def test_height_check():
    payload = {"f": {"degree": 4, "coeffs": ["1", "0", "0", "0", "3"]},
               "U": {"degree": 1, "coeffs": ["1", "-1"]}, "w": "2"}
    res = run_cli("height-check", "--cutoff-X", "3", "--delta", "0.5",
                  payload=payload)
    assert res.returncode == 0
    out = json.loads(res.stdout)
    assert out["prop_bound"]["holds"] is True
    assert out["vector_length_bound"]["holds"] is True


def test_covariant_schema():
    res = run_cli("covariant", payload=WORKED_PENCIL)
    assert res.returncode == 0
    out = json.loads(res.stdout)
    assert out["n"] == 4 and "error_bound" in out
    assert out["entries"][0][0].startswith("1.0")


def test_sample_csv_and_json():
    res = run_cli("sample", "--n", "4", "--box-bound", "3", "--count", "12",
                  "--seed", "9", "--eps-list", "0.8,0.1", "--format", "csv")
    assert res.returncode == 0
    lines = res.stdout.strip().splitlines()
    meta = [l for l in lines if l.startswith("#")]
    data = [l for l in lines if not l.startswith("#")]
    assert any("seed=9" in l for l in meta)
    assert any("measure=" in l for l in meta)
    assert data[0] == "eps,frequency,count"
    assert len(data) == 3
    res2 = run_cli("sample", "--n", "4", "--box-bound", "3", "--count", "12",
                   "--seed", "9", "--eps-list", "0.8,0.1")
    out = json.loads(res2.stdout)
    assert out["metadata"]["measure"].startswith("entries uniform")
    assert len(out["small_vector_frequency"]) == 2


def test_density_command():
    res = run_cli("density", "--n", "4", "--delta", "0.3",
                  "--cutoff-X-list", "10,100", "--count", "25", "--seed", "4")
    assert res.returncode == 0
    out = json.loads(res.stdout)
    assert [row["X"] for row in out["rows"]] == [10.0, 100.0]


def test_parse_failure_exit1():
    res = run_cli("invariant", payload={"n": 4})
    assert res.returncode == 1


def test_unknown_flag_rejected():
    res = run_cli("sample", "--does-not-exist", "1")
    assert res.returncode == 2  # argparse exits 2 on bad flags
