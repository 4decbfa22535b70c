import io
import json
import subprocess
import sys

import pytest

from latsum.cli import run


def call(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), out, err)
    lines = [json.loads(line) for line in out.getvalue().splitlines() if line.strip()]
    return code, lines, err.getvalue()


def test_zeta_example():
    code, (rec,), err = call("zeta", "--s", "2", "--tol", "1e-9")
    assert code == 0
    assert rec["schema"] == 1 and rec["command"] == "zeta"
    assert abs(rec["value"]["re"] - 1.6449340668) < 1e-9
    assert set(rec) >= {"params", "value", "error_estimate", "method", "seconds"}
    assert "zeta" in err


def test_special_limit_example():
    code, (rec,), _ = call("special", "--poly", "x0^2+x1^2-x0", "--k", "2", "--limit-at", "0")
    assert code == 0
    assert abs(rec["value"]["re"] + 1.2146018) < 1e-6


def test_lfun_trivial_zero():
    code, (rec,), _ = call("lfun", "--q", "4", "--index", "1", "--s", "-1")
    assert code == 0
    assert abs(complex(rec["value"]["re"], rec["value"]["im"])) < 1e-10


@pytest.mark.parametrize("argv", [
    ["eta", "--s=-0.5+2i", "--oracle"],
    ["lfun", "--values", "0,1,0,-1", "--s", "2", "--oracle"],
    ["lerch", "--family", "power:s=1.7", "--x", "0.2", "--y", "0.3"],
    ["lerch", "--family", "power:s=2", "--x", "0.5", "--z", "1/2"],
    ["epstein", "--Q", "1,0;0,1", "--s", "2", "--oracle"],
    ["diag-form", "--s", "1.2", "--modulus", "3"],
    ["special", "--poly", "x0^2+x1^2-x0", "--k", "2", "--s", "2", "--exclude", "0,0;1,0"],
    ["tsum", "--family", "power:s=0.5", "--z", "1/3", "--x", "0.25"],
    ["hsum", "--family", "power:s=3", "--oracle"],
    ["hsum", "--family", "power:s=2", "--x", "1/3"],
    ["fourier-check", "--family", "signed-power:s=0.6", "--y", "2"],
    ["fe-check", "--family", "power:s=0.3"],
])
def test_commands_succeed(argv):
    code, (rec,), _ = call(*argv)
    assert code == 0, rec
    if "--oracle" in argv:
        o = rec["oracle"]
        v = complex(rec["value"]["re"], rec["value"]["im"])
        ov = complex(o["value"]["re"], o["value"]["im"])
        assert abs(v - ov) < 1e-8


def test_engine_error_record():
    code, (rec,), err = call("zeta", "--s", "1")
    assert code == 1
    assert rec["error"]["code"] == "not_h_summable"
    code, (rec,), _ = call("special", "--poly", "x0^2+x1^2", "--k", "2", "--s", "1")
    assert code == 1 and rec["error"]["code"] == "pole_parameter"
    code, (rec,), _ = call("tsum", "--family", "power:s=2", "--z", "0")
    assert code == 1 and rec["error"]["code"] == "not_t_summable"
    code, (rec,), _ = call("special", "--poly", "x0^2+", "--k", "2", "--s", "1")
    assert code == 1 and rec["error"]["code"] == "parse"


@pytest.mark.parametrize("argv", [[], ["zeta"], ["nope"], ["zeta", "--s", "2", "--tol", "x"], ["lfun", "--s", "2"],
                                  ["special", "--poly", "x0^2+x1^2", "--k", "2"]])
def test_usage_errors(argv):
    code, lines, err = call(*argv)
    assert code == 2 and not lines
    assert "usage" in err


def test_error_codes_are_distinct():
    from latsum.errors import ALL_ERRORS
    codes = [e.code for e in ALL_ERRORS]
    assert len(codes) == len(set(codes))


def test_deterministic_output():
    a = call("eta", "--s", "0.3+1i")[1][0]
    b = call("eta", "--s", "0.3+1i")[1][0]
    assert a["value"] == b["value"]


def test_json_round_trip():
    rec = call("zeta", "--s", "0.5+3i")[1][0]
    assert json.loads(json.dumps(rec)) == rec


def test_verify_subset():
    code, lines, err = call("verify", "--criteria", "1,3")
    assert code == 0
    assert [r["criterion"] for r in lines] == [1, 3]
    assert all(r["passed"] for r in lines)
    assert "criterion 1: PASS" in err


def test_module_entry_point():
    p = subprocess.run([sys.executable, "-m", "latsum", "zeta", "--s", "-1"], capture_output=True, text=True)
    assert p.returncode == 0
    assert abs(json.loads(p.stdout)["value"]["re"] + 1 / 12) < 1e-10
