import csv
import io
import json
from importlib import resources

import jsonschema
import pytest

from unitary_moments import cli
from unitary_moments.cli import exact, main_capture

SCHEMA = json.loads(resources.files("unitary_moments").joinpath("cli_output.schema.json").read_text())


def run_json(*argv):
    code, out, err = main_capture([*argv, "--format", "json"])
    assert code == 0, err
    payload = json.loads(out)
    jsonschema.validate(payload, SCHEMA)
    return payload


def test_exact_formatting():
    assert exact(3) == "3/1"
    assert exact(cli.Fraction(-2, 6)) == "-1/3"


def test_m_ratio_example():
    row = run_json("m-ratio", "--k", "1", "--r", "2", "--N", "2")
    assert row["value"] == "1/3" and row["i_power"] == 2
    assert row["approx"] == pytest.approx(1 / 3)


def test_domain_error_exit():
    code, _, err = main_capture(["m-ratio", "--k", "1", "--r", "3"])
    assert code == 2 and "requires r <= 2k" in err
    code, _, err = main_capture(["v-moment", "--k", "1", "--h", "2", "--N", "2"])
    assert code == 2 and "h <= k" in err


def test_usage_errors_name_the_flag():
    code, _, err = main_capture(["m-ratio", "--k", "1", "--r", "1"])
    assert code == 1 and "--N" in err
    code, _, err = main_capture(["m-ratio", "--k", "one"])
    assert code == 1 and "--k" in err
    code, _, err = main_capture(["no-such-command"])
    assert code == 1
    code, _, err = main_capture(["mc-verify", "--k", "1", "--N", "2"])
    assert code == 1 and "--r" in err


def test_selftest():
    payload = run_json("selftest")
    assert payload["passed"] and all(c["passed"] for c in payload["checks"])


def test_limit_and_zero_moments():
    assert run_json("m-ratio-limit", "--k", "2", "--r", "2")["value"] == "7/30"
    assert run_json("moment-zero", "--k", "2", "--N", "2")["value"] == "20/1"
    assert run_json("moment-zero", "--k", "2")["value"] == "1/12"
    assert run_json("v-moment", "--k", "1", "--h", "1", "--N", "2")["value"] == "2/1"


def test_ratfunc_output():
    row = run_json("ratfunc", "--r", "2")
    assert row["den"] == ["-1/4", "0/1", "1/1"]
    assert row["num"] == ["-1/8", "0/1", "1/4"]
    row = run_json("v-ratfunc", "--h", "1")
    assert row["num"] == ["1/16"] and row["den"] == ["-1/4", "0/1", "1/1"]


def test_hypergeom_and_egf():
    row = run_json("hypergeom", "--upper", "-1", "--lower", "-2", "--N", "2", "--z", "1", "--max-degree", "3")
    assert row["layers"] == ["1/1", "1/1", "1/6", "0/1"] and row["value"] == "13/6"
    code, _, err = main_capture(["hypergeom", "--upper", "1", "--lower", "0", "--N", "2", "--max-degree", "2"])
    assert code == 2 and "(1,)" in err
    row = run_json("egf-check", "--k", "2", "--N", "3", "--r-max", "4")
    assert row["passed"] and len(row["degrees"]) == 5
    assert all(d["residual"] == "0/1" for d in row["degrees"])


def test_sweep_json_and_csv():
    payload = run_json("m-ratio", "--k-range", "1:2", "--r-range", "0:4", "--N", "3")
    assert len(payload["rows"]) == 3 + 5
    code, out, _ = main_capture(["m-ratio-limit", "--k-range", "1:3", "--r", "1", "--format", "csv"])
    assert code == 0
    rows = list(csv.DictReader(io.StringIO(out)))
    assert [r["k"] for r in rows] == ["1", "2", "3"]
    assert all(r["value"] == "1/2" for r in rows)


def test_plain_format():
    code, out, _ = main_capture(["m-ratio", "--k", "1", "--r", "2", "--N", "2", "--format", "plain"])
    assert code == 0 and "value: 1/3" in out.splitlines()


def test_mc_verify_is_seed_determined(monkeypatch):
    argv = ["mc-verify", "--k", "1", "--r", "1", "--N", "3", "--samples", "4000", "--seed", "7"]
    a = run_json(*argv)
    b = run_json(*argv, "--threads", "3")
    assert a == b
    monkeypatch.setenv("UM_THREADS", "2")
    assert run_json(*argv) == a
    assert a["exact"] == "3/2" and a["samples"] == 4000
    c = run_json("mc-verify", "--k", "1", "--h", "1", "--N", "2", "--samples", "4000", "--seed", "7")
    assert c["mean_imag"] == 0


def test_threads_env(monkeypatch):
    monkeypatch.setenv("UM_THREADS", "5")
    assert cli._threads(None) == 5
    assert cli._threads("2") == 2
    assert cli._threads("auto") >= 1
    monkeypatch.setenv("UM_THREADS", "zero")
    with pytest.raises(cli.UsageError):
        cli._threads(None)


def test_mc_verify_sample_floor():
    code, _, err = main_capture(["mc-verify", "--k", "1", "--r", "1", "--N", "2", "--samples", "10"])
    assert code == 2


def test_module_entry_point():
    import subprocess
    import sys

    proc = subprocess.run(
        [sys.executable, "-m", "unitary_moments", "m-ratio", "--k", "1", "--r", "2", "--N", "2"],
        capture_output=True, text=True,
    )
    assert proc.returncode == 0 and json.loads(proc.stdout)["value"] == "1/3"
