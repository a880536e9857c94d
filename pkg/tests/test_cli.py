"""CLI semantics: selection, determinism, exit codes, claim coverage."""

import json
from importlib import resources

import pytest

from torsionlab.cli import main, run
from torsionlab.reports import RunConfig, check, skipped, summarize


def run_main(argv, capsys):
    code = main(argv)
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_empty_selection_exits_zero(capsys):
    code, out, err = run_main([], capsys)
    assert code == 0
    assert out == ""


def test_unknown_suite_is_config_error(capsys):
    with pytest.raises(SystemExit):
        main(["no-such-suite"])


def test_conflicting_selection_is_config_error(capsys):
    code, out, err = run_main(["prop34", "--suite", "remark13"], capsys)
    assert code == 2
    assert "config error" in err


def test_bad_genus_is_config_error(capsys):
    code, out, err = run_main(["lemma31", "--g", "5"], capsys)
    assert code == 2


def test_prop34_run_and_exit_code(capsys):
    code, out, err = run_main(["prop34"], capsys)
    assert code == 0
    lines = [json.loads(l) for l in out.strip().splitlines()]
    assert all(l["status"] == "pass" for l in lines)
    assert any(l["claim"] == "prop34.kernel-order" for l in lines)


def test_determinism_after_time_stripping():
    config = RunConfig(suites=("remark13",))
    first = [r.to_json(strip_time=True) for r in run(config)]
    second = [r.to_json(strip_time=True) for r in run(config)]
    assert first == second and first


def test_quick_mode_skips_heavy_suites(capsys):
    code, out, err = run_main(["lemma32", "--quick"], capsys)
    assert code == 0
    lines = [json.loads(l) for l in out.strip().splitlines()]
    assert lines and all(l["status"] == "skipped" for l in lines)


def test_failing_report_gives_exit_one(monkeypatch, capsys):
    import torsionlab.cli as cli

    monkeypatch.setitem(
        cli.SUITES, "prop34", lambda config: [check("forced", "plumbing", False, detail=1)]
    )
    code, out, err = run_main(["prop34"], capsys)
    assert code == 1


def test_env_overrides(monkeypatch, capsys):
    monkeypatch.setenv("TORSIONLAB_SUITE", "prop33")
    monkeypatch.setenv("TORSIONLAB_D", "5")
    code, out, err = run_main([], capsys)
    assert code == 0
    lines = [json.loads(l) for l in out.strip().splitlines()]
    assert lines and all(l["claim"].startswith("prop33.d5") for l in lines)


def test_roots_flag_round_trip(capsys):
    code, out, err = run_main(["elliptic-4tors", "--roots", "0,1,3"], capsys)
    assert code == 0


def test_out_file(tmp_path, capsys):
    path = tmp_path / "reports.jsonl"
    code, out, err = run_main(["prop34", "--out", str(path)], capsys)
    assert code == 0
    lines = path.read_text().strip().splitlines()
    assert len(lines) == len(out.strip().splitlines())


def test_report_fields():
    config = RunConfig(suites=("prop34",))
    for r in run(config):
        assert r.claim and r.paper_ref
        data = json.loads(r.to_json())
        assert set(data) == {"claim", "paper_ref", "status", "witness", "wall_time"}


def test_summarize():
    reports = [check("a", "p", True), skipped("b", "p", "why"), check("c", "p", False)]
    assert summarize(reports) == {"pass": 1, "skipped": 1, "fail": 1}


def test_claim_manifest_coverage():
    """Every manifest claim must be produced by the full default run."""
    manifest = json.loads(
        resources.files("torsionlab").joinpath("claims_manifest.json").read_text()
    )
    reports = run(RunConfig(suites=("all",)))
    produced = {r.claim for r in reports}
    missing = [c for c in manifest["claims"] if c not in produced]
    assert not missing, f"manifest claims without implementation: {missing}"
    assert all(r.status == "pass" for r in reports)
