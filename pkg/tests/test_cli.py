import csv
import io
import json
import subprocess
import sys

import pytest

from cyclosum.cli import CSV_COLUMNS, main, sweep_fields


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_compute_text(capsys):
    code, out, _ = run(capsys, "compute", "--p", "19", "--l", "3", "--order", "18", "--i", "0", "--j", "0")
    assert code == 0
    assert "coeffs: [17, 0, 0, 0, 0, 0]" in out and "value: 17" in out
    code, out, _ = run(capsys, "compute", "--p", "19", "--l", "3", "--order", "18", "--i", "1", "--j", "17")
    assert code == 0 and "value: -1" in out


def test_compute_json_and_reflected(capsys):
    code, out, _ = run(capsys, "compute", "--p", "19", "--l", "3", "--order", "9", "--i", "1",
                       "--j", "1", "--format", "json")
    doc = json.loads(out)
    assert code == 0 and doc["coeffs"] == [2, 1, 4, 0, -1, 2]
    assert doc["value"] == "2 + z + 4*z^2 - z^4 + 2*z^5"
    code, out, _ = run(capsys, "compute", "--p", "19", "--l", "3", "--order", "18", "--i", "0",
                       "--j", "5", "--convention", "reflected", "--format", "csv")
    rows = list(csv.DictReader(io.StringIO(out)))
    assert rows[0]["value"] == "-1" and rows[0]["convention"] == "reflected"


@pytest.mark.parametrize(
    "argv, message",
    [
        (["compute", "--p", "11", "--l", "3", "--order", "18", "--i", "1", "--j", "1"], "CongruenceFailed"),
        (["compute", "--p", "19", "--l", "3", "--order", "4", "--i", "1", "--j", "1"], "BadOrder"),
        (["verify", "--p", "19", "--l", "5"], "CongruenceFailed"),
        (["verify", "--p", "21", "--l", "3"], "NotPrime"),
        (["sweep", "--l", "3", "--q-min", "20", "--q-max", "30"], "no q"),
        (["sweep", "--l", "3", "--q-min", "30", "--q-max", "20"], "exceeds"),
        (["props", "--p", "19", "--l", "3", "--only", "nonsense"], "unknown identity"),
    ],
)
def test_validation_errors_exit_2(capsys, argv, message):
    code, out, err = run(capsys, *argv)
    assert code == 2 and out == "" and message in err


def test_usage_error_exit_2(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["verify", "--l", "3"])
    assert exc.value.code == 2


def test_verify_json(capsys):
    code, out, _ = run(capsys, "verify", "--p", "19", "--l", "3", "--format", "json")
    doc = json.loads(out)
    assert code == 0 and doc["all_pass"] is True
    assert [doc[k] for k in ("l", "p", "r", "q", "gamma", "w")] == [3, 19, 1, 19, 2, 1]
    assert len(doc["cases"]) == 17 and doc["elapsed_ms"] is None
    for case in doc["cases"]:
        assert set(case) == {"n", "case", "required", "achieved", "pass"}
    assert doc["order_l2"][0]["c"] == [1]


def test_verify_timing_flag(capsys):
    _, out, _ = run(capsys, "verify", "--p", "19", "--l", "3", "--format", "json", "--timing")
    assert isinstance(json.loads(out)["elapsed_ms"], float)


def test_verify_extension_text(capsys):
    code, out, _ = run(capsys, "verify", "--p", "7", "--r", "3", "--l", "3")
    assert code == 0 and "all_pass: true" in out and "F_7[x]/(x^3 + x^2 + 1)" in out


def test_verify_csv(capsys):
    code, out, _ = run(capsys, "verify", "--p", "19", "--l", "3", "--format", "csv")
    rows = list(csv.DictReader(io.StringIO(out)))
    assert out.splitlines()[0] == ",".join(CSV_COLUMNS)
    assert len(rows) == 17 + 8 and all(r["pass"] == "true" for r in rows)


def test_verify_exit_1_on_failure(capsys, monkeypatch):
    import cyclosum.cli as cli
    from cyclosum import congruence

    real = congruence.verify_case

    def broken(ctx, n):
        res = real(ctx, n)
        return res if n != 5 else type(res)(n, res.case, res.required, 0, False)

    monkeypatch.setattr(congruence, "verify_case", broken)
    code, out, _ = run(capsys, "verify", "--p", "19", "--l", "3", "--format", "json")
    assert code == 1 and json.loads(out)["all_pass"] is False
    assert cli.EXIT_FAIL == 1


def test_sweep_fields():
    assert [p for p, _ in sweep_fields(3, 2, 200)] == [19, 37, 73, 109, 127, 163, 181, 199]
    assert [p for p, _ in sweep_fields(5, 2, 200)] == [101, 151]
    assert sweep_fields(3, 300, 400, powers=True) == [(307, 1), (7, 3), (19, 2), (379, 1), (397, 1)]


def test_sweep_text_and_json(capsys):
    code, out, _ = run(capsys, "sweep", "--l", "3", "--q-min", "2", "--q-max", "200", "--format", "json")
    doc = json.loads(out)
    assert code == 0 and doc["all_pass"] is True
    assert [f["q"] for f in doc["fields"]] == [19, 37, 73, 109, 127, 163, 181, 199]
    code, out, _ = run(capsys, "sweep", "--l", "5", "--q-min", "2", "--q-max", "200")
    assert code == 0 and "q=101" in out and "q=151" in out


def test_sweep_jobs_invariant(capsys):
    outs = []
    for jobs in ("1", "3"):
        for fmt in ("text", "csv"):
            code, out, _ = run(capsys, "sweep", "--l", "3", "--q-min", "2", "--q-max", "400",
                               "--powers", "--jobs", jobs, "--format", fmt)
            assert code == 0
            outs.append(out)
    assert outs[0] == outs[2] and outs[1] == outs[3]


def test_props(capsys):
    code, out, _ = run(capsys, "props", "--p", "19", "--l", "3")
    assert code == 0 and out.count(" 0 violations  pass") == 9
    code, out, _ = run(capsys, "props", "--p", "19", "--l", "3", "--format", "csv")
    rows = list(csv.DictReader(io.StringIO(out)))
    assert len(rows) == 9 and all(r["pass"] == "true" for r in rows)
    code, out, _ = run(capsys, "props", "--p", "37", "--l", "3", "--format", "json",
                       "--only", "duplication", "absolute_value")
    doc = json.loads(out)
    assert code == 0 and [c["identity"] for c in doc["checks"]] == ["absolute_value", "duplication"]


def test_cache_env_overrides_flag(capsys, tmp_path, monkeypatch):
    flag_dir, env_dir = tmp_path / "flag", tmp_path / "env"
    monkeypatch.setenv("CYCLOSUM_CACHE", str(env_dir))
    code, _, _ = run(capsys, "verify", "--p", "19", "--l", "3", "--cache-dir", str(flag_dir))
    assert code == 0
    assert list(env_dir.iterdir()) and not flag_dir.exists()
    code, _, _ = run(capsys, "verify", "--p", "19", "--l", "3")
    assert code == 0


def test_module_entry_point():
    cmd = [sys.executable, "-m", "cyclosum", "verify", "--p", "19", "--l", "3", "--format", "json"]
    first = subprocess.run(cmd, capture_output=True, check=True).stdout
    second = subprocess.run(cmd, capture_output=True, check=True).stdout
    assert first == second and json.loads(first)["all_pass"] is True
