import json

import pytest

from bachet.exceptions import HasseViolationError
from bachet.handlers import commands
from bachet.main import main
from bachet.models import ExitCode


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def jsonl(text):
    return [json.loads(line) for line in text.splitlines() if line.strip()]


def test_count_csv(capsys):
    code, out, _ = run(capsys, "count", "--p", "7", "--a", "1", "--format", "csv")
    assert code == ExitCode.OK
    assert out.splitlines() == ["p,a,class,N,b,t,hasse_ok", "7,1,QR,12,-4,4,True"]


def test_count_supersingular(capsys):
    code, out, _ = run(capsys, "count", "--p", "5", "--a", "1", "--format", "jsonl")
    assert code == ExitCode.OK
    row = jsonl(out)[0]
    assert (row["N"], row["b"], row["t"]) == (6, 0, 0)


@pytest.mark.parametrize("argv", [
    ["count", "--p", "6", "--a", "1"],
    ["count", "--p", "7", "--a", "0"],
    ["count", "--p", "7", "--a", "7"],
    ["count", "--p", "7"],
    ["frobnicate"],
])
def test_usage_errors(capsys, argv):
    assert run(capsys, *argv)[0] == ExitCode.USAGE_ERROR


def test_points(capsys):
    code, out, _ = run(capsys, "points", "--p", "7", "--a", "3", "--format", "jsonl")
    assert code == ExitCode.OK
    assert [(r["point"], r["order"]) for r in jsonl(out)] == [("o", 1), ("(1,0)", 2), ("(2,0)", 2), ("(4,0)", 2)]


def test_points_limit(capsys):
    code, out, _ = run(capsys, "points", "--p", "7", "--a", "1", "--limit", "3", "--format", "jsonl")
    assert code == ExitCode.OK
    assert len(jsonl(out)) == 3


def test_points_over_bound(capsys):
    assert run(capsys, "points", "--p", "100003", "--a", "1")[0] == ExitCode.USAGE_ERROR


@pytest.mark.parametrize("p, a, n, m, order3", [(7, 3, 2, 1, 0), (7, 1, 2, 3, 2), (5, 2, 1, 6, 2)])
def test_structure(capsys, p, a, n, m, order3):
    code, out, _ = run(capsys, "structure", "--p", str(p), "--a", str(a), "--format", "jsonl")
    assert code == ExitCode.OK
    row = jsonl(out)[0]
    assert (row["n"], row["m"], row["order3"]) == (n, m, order3)
    assert row["method"] == "exhaustive"


def test_twist(capsys):
    code, out, _ = run(capsys, "twist", "--p", "7", "--a", "1", "--format", "jsonl")
    assert code == ExitCode.OK
    row = jsonl(out)[0]
    assert (row["g"], row["N"], row["N_twist"]) == (3, 12, 4)


def test_twist_p13(capsys):
    row = jsonl(run(capsys, "twist", "--p", "13", "--a", "1", "--format", "jsonl")[1])[0]
    assert (row["g"], row["N"], row["N_twist"]) == (2, 12, 16)


@pytest.mark.parametrize("argv", [
    ["twist", "--p", "11", "--a", "1"],
    ["twist", "--p", "7", "--a", "1", "--g", "2"],
])
def test_twist_rejected(capsys, argv):
    assert run(capsys, *argv)[0] == ExitCode.USAGE_ERROR


def test_verify_small_bound(capsys):
    code, out, _ = run(capsys, "verify", "--max-p", "12", "--jobs", "1", "--format", "csv")
    assert code == ExitCode.OK
    assert len(out.splitlines()) == 5


def test_verify_strict_s1(capsys):
    code, _, err = run(capsys, "verify", "--max-p", "12", "--jobs", "1", "--strict-s1")
    assert code == ExitCode.CLAIM_VIOLATION
    assert "p=7 QR: S1_sign_hypothesis" in err


def test_verify_reports_congruence_failure(capsys):
    code, _, err = run(capsys, "verify", "--max-p", "20", "--jobs", "1", "--format", "csv")
    assert code == ExitCode.CLAIM_VIOLATION
    assert "p=13 NQR: T18_washington_refined" in err


@pytest.mark.parametrize("argv", [
    ["verify", "--max-p", "4"],
    ["verify", "--max-p", "12", "--jobs", "0"],
    ["verify", "--max-p", "12", "--format", "xlsx"],
])
def test_verify_usage_errors(capsys, argv):
    assert run(capsys, *argv)[0] == ExitCode.USAGE_ERROR


def test_verify_deterministic_files(capsys, tmp_path):
    first, second = tmp_path / "a.csv", tmp_path / "b.csv"
    for out in (first, second):
        run(capsys, "verify", "--max-p", "60", "--jobs", "2", "--format", "csv", "--out", str(out))
    assert first.read_bytes() == second.read_bytes()


def test_washington(capsys):
    code, out, _ = run(capsys, "washington", "--max-p", "10", "--jobs", "1", "--format", "jsonl")
    assert code == ExitCode.OK
    assert jsonl(out) == [{"p": 7, "class": "NQR", "n": 2, "form": "n^2+n+1", "p_mod_12": 7, "holds": "pass"}]


def test_washington_flags_p13(capsys):
    code, out, err = run(capsys, "washington", "--max-p", "20", "--jobs", "1", "--format", "jsonl")
    assert code == ExitCode.CLAIM_VIOLATION
    assert [r["p"] for r in jsonl(out)] == [7, 13]
    assert "p=13 n=4" in err


def test_log_file(capsys, tmp_path):
    log_file = tmp_path / "run.log"
    code, _, _ = run(capsys, "--log-level", "DEBUG", "--log-file", str(log_file), "count", "--p", "7", "--a", "1")
    assert code == ExitCode.OK
    assert "cmd_count" in log_file.read_text(encoding="utf-8")


def test_help(capsys):
    assert run(capsys, "--help")[0] == ExitCode.OK


@pytest.mark.slow
def test_washington_to_500(capsys):
    code, out, _ = run(capsys, "washington", "--max-p", "500", "--format", "jsonl")
    rows = jsonl(out)
    assert code == ExitCode.CLAIM_VIOLATION
    assert all(r["form"] != "none" for r in rows)
    assert [r["p"] for r in rows if r["holds"] == "fail"] == [13, 73, 157, 241, 421]


def test_out_in_missing_directory(capsys, tmp_path):
    out = tmp_path / "nodir" / "x.csv"
    code, _, _ = run(capsys, "count", "--p", "7", "--a", "1", "--format", "csv", "--out", str(out))
    assert code == ExitCode.USAGE_ERROR
    assert not out.exists()


def test_out_is_directory(capsys, tmp_path):
    code, _, _ = run(capsys, "count", "--p", "7", "--a", "1", "--format", "csv", "--out", str(tmp_path))
    assert code == ExitCode.USAGE_ERROR


def test_log_file_in_missing_directory(capsys, tmp_path):
    log_file = tmp_path / "nodir" / "run.log"
    code, out, err = run(capsys, "--log-file", str(log_file), "count", "--p", "7", "--a", "1")
    assert code == ExitCode.USAGE_ERROR
    assert out == ""
    assert "run.log" in err


def test_broken_identity_is_not_usage_error(capsys, monkeypatch):
    def broken(E):
        raise HasseViolationError("|b| > 2√p")

    monkeypatch.setattr(commands, "count_by_character_sum", broken)
    assert run(capsys, "count", "--p", "7", "--a", "1")[0] == ExitCode.CLAIM_VIOLATION
