import json
import time

import jsonschema
import pytest

from gue_logdet import cli, experiments
from gue_logdet.harness import VerificationReport


def test_identities_exit_zero(capsys):
    assert cli.main(["identities"]) == 0
    out = capsys.readouterr().out
    assert "[PASS] conformal_identity" in out
    assert "[PASS] barnes_integer_values" in out


def test_macro_stdout_table(capsys):
    rc = cli.main(["macro", "--n", "16", "--reps", "30", "--seed", "3"])
    out = capsys.readouterr().out.splitlines()
    assert out[0] == "n,mean,var,se_var,predicted_var"
    assert rc in (0, 1)


def test_meso_csv_contract(tmp_path):
    rc = cli.main(
        ["meso", "--n", "64", "--reps", "80", "--seed", "5", "--out", str(tmp_path)]
    )
    assert rc in (0, 1)
    csv_path = tmp_path / "meso.csv"
    assert csv_path.exists()
    lines = csv_path.read_text().splitlines()
    comments = [ln for ln in lines if ln.startswith("#")]
    data = [ln for ln in lines if not ln.startswith("#")]
    assert data[0] == "tau,upsilon,empirical,predicted,se"
    joined = "\n".join(comments)
    assert "# seed: 5" in joined
    assert "# version:" in joined
    assert "# wall_time_s:" in joined
    assert "# config:" in joined
    assert (tmp_path / "meso_covariance.png").exists()


def test_flag_beats_config_beats_env(tmp_path, monkeypatch):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("n = 32\nreps = 40\n")
    monkeypatch.setenv("SEED", "777")
    out1 = tmp_path / "a"
    rc = cli.main(
        ["macro", "--config", str(cfg), "--n", "64", "--format", "json", "--out", str(out1)]
    )
    assert rc in (0, 1)
    payload = json.loads((out1 / "macro.json").read_text())
    assert payload["config"]["n"] == 64  # flag beats config file
    assert payload["config"]["reps"] == 40  # config file applies
    assert payload["seed"] == 777  # env fills the gap

    cfg.write_text("n = 32\nreps = 40\nseed = 555\n")
    out2 = tmp_path / "b"
    rc = cli.main(["macro", "--config", str(cfg), "--format", "json", "--out", str(out2)])
    assert rc in (0, 1)
    payload = json.loads((out2 / "macro.json").read_text())
    assert payload["seed"] == 555  # config file beats env
    assert payload["config"]["n"] == 32


def test_bad_config_exits_2(tmp_path, capsys):
    bad = tmp_path / "bad.cfg"
    bad.write_text("n = lots\n")
    assert cli.main(["macro", "--config", str(bad)]) == 2
    assert "error:" in capsys.readouterr().err
    bad.write_text("volume = 11\n")
    assert cli.main(["macro", "--config", str(bad)]) == 2
    capsys.readouterr()


def test_bad_seed_env_exits_2(monkeypatch, capsys):
    monkeypatch.setenv("SEED", "not-a-number")
    assert cli.main(["identities"]) == 2
    assert "SEED" in capsys.readouterr().err


def test_unknown_command_exits_2():
    with pytest.raises(SystemExit) as exc:
        cli.main(["bogus"])
    assert exc.value.code == 2


def test_macro_rejects_tiny_n(capsys):
    assert cli.main(["macro", "--n", "8"]) == 2
    capsys.readouterr()


def test_verify_all_byte_identical_and_schema_valid(tmp_path, monkeypatch):
    monkeypatch.setattr(
        experiments, "ALL_CRITERIA", (experiments.criterion_06, experiments.criterion_08)
    )
    out1, out2 = tmp_path / "r1", tmp_path / "r2"
    assert cli.main(["verify-all", "--seed", "11", "--out", str(out1)]) == 0
    time.sleep(0.05)
    assert cli.main(["verify-all", "--seed", "11", "--out", str(out2)]) == 0
    b1 = (out1 / "summary.json").read_bytes()
    b2 = (out2 / "summary.json").read_bytes()
    assert b1 == b2
    payload = json.loads(b1)
    jsonschema.validate(payload, cli._load_schema())
    assert payload["all_passed"] is True
    assert [c["name"] for c in payload["criteria"]] == ["criterion_06", "criterion_08"]
    log = (out1 / "run_log.txt").read_text()
    assert "criterion_06 PASS" in log
    assert "total" in log
    assert (out1 / "verify_margins.png").exists()


def test_verify_all_reports_failure(tmp_path, monkeypatch):
    failing = VerificationReport(
        name="broken", predicted=0.0, estimated=1.0, se=0.0, tolerance=0.1, passed=False
    )
    result = experiments.CriterionResult(
        index=1,
        name="criterion_01",
        title="stub",
        passed=False,
        reports=(failing,),
        config={},
        wall_time_s=0.0,
    )

    def stub(seed=0, workers=1):
        return result

    monkeypatch.setattr(experiments, "ALL_CRITERIA", (stub,))
    assert cli.main(["verify-all", "--out", str(tmp_path / "r")]) == 1


def test_verify_all_seed_changes_bytes(tmp_path, monkeypatch):
    monkeypatch.setattr(experiments, "ALL_CRITERIA", (experiments.criterion_06,))
    out1, out2 = tmp_path / "s1", tmp_path / "s2"
    assert cli.main(["verify-all", "--seed", "1", "--out", str(out1)]) == 0
    assert cli.main(["verify-all", "--seed", "2", "--out", str(out2)]) == 0
    assert (out1 / "summary.json").read_bytes() != (out2 / "summary.json").read_bytes()
