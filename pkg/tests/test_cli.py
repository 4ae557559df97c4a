import io
import json
import subprocess
import sys

import pytest

from thetaquad.cli import CliConfig, UsageError, run


def call(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


def test_count():
    assert call("count", "--form", "t(1,1,6,24)", "--n", "3") == (0, "32\n", "")
    code, out, _ = call("count", "--form", "N(1,4,4)", "--n", "9", "--method", "series", "--format", "json")
    assert code == 0 and json.loads(out) == {"form": "N(1,4,4)", "n": 9, "count": 10}


def test_series_csv():
    code, out, _ = call("series", "--form", "t(1,3)", "--n-max", "4")
    assert code == 0
    assert out.splitlines() == ["n,\"t(1,3)\"", "0,4", "1,4", "2,0", "3,8", "4,4"]


def test_verify_pass_and_fail():
    code, out, _ = call("verify", "--rule", "thm2.1", "--a", "1", "--b", "1", "--n-max", "100", "--method", "both")
    assert code == 0 and out.count("PASS") == 2
    code, out, _ = call("verify", "--rule", "thm2.9", "--a", "4", "--b", "3", "--n-max", "50", "--threads", "1")
    assert code == 1 and "FAIL" in out


def test_verify_user_rule_file(tmp_path):
    f = tmp_path / "mine.rules"
    f.write_text("rule mine.off: forall a b | odd(a), odd(b) :: t(a,2a,2a,2b; n) == 1/2 N(a,a,4a,2b; 8n+5a+2b+1)\n")
    code, out, _ = call("verify", "--rules-file", str(f), "--rule", "mine.off", "--a", "1", "--b", "1", "--n-max", "10")
    assert code == 1
    assert "first n=0" in out


def test_verify_all_instances_when_no_params():
    code, out, _ = call("verify", "--rule", "thm2.1", "--bound", "3", "--n-max", "20", "--threads", "1")
    assert code == 0
    assert len(out.splitlines()) == 4  # a, b in {1, 3}


@pytest.mark.parametrize(
    "argv",
    [
        ["verify", "--rule", "nope"],
        ["verify", "--rule", "thm2.1", "--a", "2", "--b", "1"],
        ["verify", "--rule", "thm2.1", "--a", "1"],
        ["verify", "--rule", "thm2.1", "--a", "1", "--b", "1", "--n-max", "-1"],
        ["verify", "--rule", "thm2.1", "--n-min", "5", "--n-max", "2"],
        ["count", "--form", "t(1,,2)", "--n", "3"],
        ["count", "--form", "t(1,2)", "--n", "-3"],
        ["scan", "--rule", "thm2.1"],
        ["scan", "--rule", "conj77"],
        ["suite"],
        ["suite", "theorems", "--all"],
        ["suite", "nonsense"],
        ["frobnicate"],
        ["verify", "--rule", "thm2.1", "--threads", "0"],
    ],
)
def test_usage_errors_exit_2(argv):
    code, _, _ = call(*argv)
    assert code == 2


def test_parse_reports_grammar_on_error(tmp_path):
    good = tmp_path / "good.rules"
    good.write_text("# mine\nrule g: forall a | odd(a) :: t(a,a; 2n) == t(a,2a;n)\n")
    code, out, _ = call("parse", str(good))
    assert code == 0 and out == "rule g: forall a | odd(a) :: t(a,a; 2n) == t(a,2a; n)\n"
    bad = tmp_path / "bad.rules"
    bad.write_text("rule g: t(a,; n) ==\n")
    code, _, err = call("parse", str(bad))
    assert code == 2
    assert "line 1, column" in err and "Conditions::" in err


def test_scan_json_and_append(tmp_path):
    log = tmp_path / "log.jsonl"
    code, out, _ = call("scan", "--rule", "conj5.19", "--n-max", "1000", "--format", "json", "--append", str(log))
    assert code == 0
    (rep,) = json.loads(out)
    assert rep["status"] == "pass" and rep["detail"]["frontier"] == 1000
    call("scan", "--rule", "conj5.19", "--n-max", "1000", "--append", str(log))
    assert len(log.read_text().splitlines()) == 2


def test_scan_prefix():
    code, out, _ = call("scan", "--rule", "conj5.2", "--n-max", "200")
    assert code == 0 and len(out.splitlines()) == 4


def test_json_identical_across_thread_counts(tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    assert call("verify", "--rule", "thm5", "--n-max", "80", "--format", "json", "--threads", "1", "-o", str(a))[0] == 0
    assert call("verify", "--rule", "thm5", "--n-max", "80", "--format", "json", "--threads", "2", "-o", str(b))[0] == 0
    assert a.read_bytes() == b.read_bytes()


def test_suite_bundle():
    code, out, _ = call("suite", "theta-identities")
    assert code == 0 and out.startswith("[PASS] theta-identities")


def test_config_invariants():
    with pytest.raises(UsageError):
        CliConfig("verify", n_max=-1)
    with pytest.raises(UsageError):
        CliConfig("verify", threads=0)


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "thetaquad", "count", "--form", "t(2,3,3,8)", "--n", "5"],
        capture_output=True, text=True, check=False,
    )
    assert proc.returncode == 0 and proc.stdout == "32\n"
