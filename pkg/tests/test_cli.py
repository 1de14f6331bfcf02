import json

import pytest
from click.testing import CliRunner

from pndsum.cli import main
from pndsum.enumeration import Checkpoint


@pytest.fixture()
def runner():
    return CliRunner()


def test_enumerate_tiny(runner):
    res = runner.invoke(main, ["enumerate", "--to", "5"])
    assert res.exit_code == 0, res.output
    assert "pnd count: 0" in res.output
    assert "reciprocal sum: 0.0" in res.output


def test_enumerate_matches_fixtures(runner, fx):
    res = runner.invoke(main, ["enumerate", "--to", "1000000", "--segment-size", "500000"])
    assert res.exit_code == 0, res.output
    assert f"pnd count: {fx['pnd']['count_1e6']}" in res.output
    assert f"largest pnd: {fx['pnd']['largest_1e6']}" in res.output


def test_enumerate_checkpoint_and_resume(runner, tmp_path):
    ck = tmp_path / "run.jsonl"
    r1 = runner.invoke(main, ["enumerate", "--to", "200000", "--segment-size", "100000", "--checkpoint", str(ck)])
    assert r1.exit_code == 0, r1.output
    r2 = runner.invoke(main, ["enumerate", "--to", "400000", "--segment-size", "100000", "--checkpoint", str(ck)])
    assert r2.exit_code == 0, r2.output
    assert "resuming after 200000" in r2.output
    resumed = Checkpoint.load(ck)
    fresh_run = runner.invoke(main, ["enumerate", "--to", "400000", "--segment-size", "100000", "--checkpoint", str(tmp_path / "fresh.jsonl")])
    assert fresh_run.exit_code == 0
    fresh = Checkpoint.load(tmp_path / "fresh.jsonl")
    assert resumed.pnd_count == fresh.pnd_count
    assert resumed.recip_acc == fresh.recip_acc
    # asking again is a no-op
    r3 = runner.invoke(main, ["enumerate", "--to", "400000", "--checkpoint", str(ck)])
    assert "nothing to do" in r3.output


def test_sum_command(runner, tmp_path, fx):
    ck = tmp_path / "run.jsonl"
    runner.invoke(main, ["enumerate", "--to", "100000", "--segment-size", "50000", "--checkpoint", str(ck)])
    res = runner.invoke(main, ["sum", "--checkpoint", str(ck), "--to", "30"])
    assert res.exit_code == 0
    assert "0.2523809523809524" in res.output


def test_bounds_tail_json_roundtrip(runner):
    res = runner.invoke(main, ["bounds", "tail", "--format", "json"])
    assert res.exit_code == 0, res.output
    payload = json.loads(res.output)
    values = {c["name"]: c["value"] for c in payload["children"]}
    assert values["tail-case-i"] <= 7.37e-4
    assert values["tail-case-ii"] <= 1.4e-7
    assert values["tail-case-iii"] <= 6e-17
    assert payload["value"] <= 7.4e-4
    # byte-identical round trip
    assert json.dumps(payload, sort_keys=True, indent=2) + "\n" == res.output


def test_bounds_intermediate(runner):
    res = runner.invoke(main, ["bounds", "intermediate", "--format", "json"])
    assert res.exit_code == 0, res.output
    payload = json.loads(res.output)
    cols = {c["name"]: c["value"] for c in payload["children"]}
    assert round(cols["intermediate-nonsmooth"], 6) <= 0.001260
    assert round(cols["intermediate-smooth"], 6) <= 0.002237
    assert payload["value"] <= 0.00350


def test_bounds_bridge(runner):
    res = runner.invoke(main, ["bounds", "bridge", "--log2x", "700.6931"])
    assert res.exit_code == 0, res.output
    assert "0.0268" in res.output


def test_bounds_csv_columns(runner, tmp_path):
    out = tmp_path / "report.csv"
    res = runner.invoke(main, ["bounds", "heuristic", "--format", "csv", "--output", str(out)])
    assert res.exit_code == 0, res.output
    lines = out.read_text().splitlines()
    assert lines[0] == "component,formula_id,value,slack_note"
    assert lines[1].startswith("heuristic-tail,")


def test_bounds_naive_diagnostic(runner):
    res = runner.invoke(main, ["bounds", "naive-diagnostic"])
    assert res.exit_code == 0, res.output
    value = float(res.output.split("=")[1].split("[")[0])
    assert 100 < value <= 2300


def test_verify_fast_suites(runner):
    res = runner.invoke(main, ["verify", "b-range", "residual", "smooth-const"])
    assert res.exit_code == 0, res.output
    assert res.output.count("[PASS]") == 3


def test_verify_golomb_small(runner):
    res = runner.invoke(main, ["verify", "golomb", "--y", "10000"])
    assert res.exit_code == 0, res.output


def test_verify_unknown_suite(runner):
    res = runner.invoke(main, ["verify", "nonsense"])
    assert res.exit_code != 0
    assert "unknown suites" in res.output


def test_assemble_default(runner):
    res = runner.invoke(main, ["assemble"])
    assert res.exit_code == 0, res.output
    assert "interval: (0.34842, 0.379362)" in res.output
    assert "<= 0.37937" in res.output


def test_assemble_smooth_038_fails(runner):
    res = runner.invoke(main, ["assemble", "--smooth-const", "0.38"])
    assert res.exit_code == 1
    assert "exceeds" in res.output


def test_threads_env_default(runner, monkeypatch):
    monkeypatch.setenv("PNDSUM_THREADS", "2")
    res = runner.invoke(main, ["enumerate", "--to", "100000", "--segment-size", "50000"])
    assert res.exit_code == 0, res.output
    assert "pnd count: " in res.output


def test_assemble_json(runner):
    res = runner.invoke(main, ["assemble", "--format", "json"])
    assert res.exit_code == 0
    body = res.output.split("\ninterval:")[0] + "\n"
    payload = json.loads(body)
    assert payload["name"] == "erdos-constant-interval"
    names = {c["name"] for c in payload["children"]}
    assert names == {"lower-bound-1e14", "upper-bound"}
