import json
from pathlib import Path

import numpy as np
import pandas as pd
import pytest

from app import CATALOG, RUNNERS, list_commands, main
from services.heat_model import HeatConfig, sample_source
from utils.scenario import COMMANDS, load_scenario

SCENARIOS = {
    "verify-green": {
        "params": {"dims": [1, 2], "pairs": 5},
        "numerics": {"T": 20, "m": 4001},
    },
    "check-normality": {
        "model": {"preset": "S2"},
        "params": {"domain_count": 3, "nondomain_count": 3, "trace_pairs": 20, "flag_pairs": 5,
                   "adjoint_count": 3},
        "numerics": {"T": 30, "m": 6001},
    },
    "probe-point-spectrum": {
        "model": {"preset": "S1"},
        "params": {"n": 5},
    },
    "resolvent-sweep": {
        "model": {"preset": "S1"},
        "params": {"lambdas": [1.0, 2.0], "resolve_lambdas": [2.0, -2.0, [2.0, 1.0]], "probe_count": 2,
                   "sweep_T": 40},
    },
    "counterexample": {
        "model": {"preset": "S1"},
        "params": {"T_list": [10, 20, 40]},
    },
    "heat-demo": {
        "model": {"kind": "heat", "N": 2, "phi": 1.0},
        "params": {"n": 3, "lambdas": [1.0], "probe_count": 1, "T_list": [10, 20, 40], "reference_check": False},
    },
}


def _write(tmp_path, command, **overrides):
    doc = {"name": f"{command}-test", "command": command, **SCENARIOS[command], **overrides}
    path = tmp_path / f"{command}.json"
    path.write_text(json.dumps(doc), encoding="utf-8")
    return path


def _report(out):
    return json.loads((out / "report.json").read_text(encoding="utf-8"))


def test_every_command_has_a_runner_and_a_statement():
    assert set(RUNNERS) == set(COMMANDS) == set(CATALOG)


def test_list_commands(capsys):
    assert main(["list-commands"]) == 0
    lines = capsys.readouterr().out.strip().splitlines()
    assert len(lines) == 6
    assert [line.split(" → ")[0] for line in lines] == list(COMMANDS)


@pytest.mark.parametrize("command", list(SCENARIOS))
def test_command_passes_and_writes_report(tmp_path, capsys, command):
    out = tmp_path / "out"
    status = main([command, "--config", str(_write(tmp_path, command)), "--out", str(out)])
    report = _report(out)
    failed = [a for a in report["assertions"] if not a["passed"]]
    assert status == 0, failed
    assert report["passed"] is True and report["command"] == command
    assert report["sign_convention"] in ("printed", "exchanged")
    for filename in report["tables"].values():
        assert (out / filename).exists()
    assert f"{command}: PASS" in capsys.readouterr().out


def test_counterexample_csv_columns(tmp_path):
    out = tmp_path / "out"
    assert main(["counterexample", "--config", str(_write(tmp_path, "counterexample")), "--out", str(out)]) == 0
    table = pd.read_csv(out / "divergence.csv")
    assert list(table.columns) == ["T", "norm_sq"]
    assert table["norm_sq"].iloc[0] == pytest.approx(8.500091, abs=1e-5)


def test_check_normality_reports_both_adjoint_domains(tmp_path):
    out = tmp_path / "out"
    assert main(["check-normality", "--config", str(_write(tmp_path, "check-normality")), "--out", str(out)]) == 0
    report = _report(out)
    adjoint = report["results"]["adjoint_domain"]
    assert set(adjoint) == {"printed", "k_relaxed"}
    for kind in ("printed", "k_relaxed"):
        assert adjoint[kind]["count"] == 3
        assert adjoint[kind]["max_green_residual"] <= 1e-6
        assert adjoint[kind]["k_relaxed_members"] == 3
    # on S2 the relaxed gap along e2 is invisible to the Green form but breaks the printed condition
    assert adjoint["printed"]["printed_members"] == 3
    assert adjoint["k_relaxed"]["printed_members"] == 0
    names = {a["name"] for a in report["assertions"]}
    assert {"adjoint_green_form_printed", "adjoint_green_form_k_relaxed"} <= names
    table = pd.read_csv(out / report["tables"]["adjoint_domain"])
    assert list(table["sample"].unique()) == ["printed", "k_relaxed"]


def test_heat_demo_resolves_source_csv(tmp_path):
    config = HeatConfig(N=2, phi=1.0, T=60.0, m=2401)
    samples = sample_source(config, lambda t, x: np.exp(-(t + 4.0) ** 2) * (1.0 + np.cos(np.pi * x)), 9)
    rows = []
    for t, values in ((samples.left_t, samples.left), (samples.right_t, samples.right)):
        tt, xx = np.meshgrid(t, samples.x, indexing="ij")
        rows.append(pd.DataFrame({"t": tt.ravel(), "x": xx.ravel(),
                                  "re_f": values.real.ravel(), "im_f": values.imag.ravel()}))
    source = tmp_path / "pulse.csv"
    pd.concat(rows, ignore_index=True).to_csv(source, index=False)

    params = {**SCENARIOS["heat-demo"]["params"], "source_csv": str(source)}
    config_path = _write(tmp_path, "heat-demo", params=params, numerics={"T": 60, "m": 2401})
    out = tmp_path / "out"
    assert main(["heat-demo", "--config", str(config_path), "--out", str(out)]) == 0
    report = _report(out)
    assert report["results"]["source"]["succeeded"] is True
    assert report["results"]["source"]["residual"] <= 1e-5
    assert any(a["name"] == "source_csv_resolve" and a["passed"] for a in report["assertions"])


def test_reports_are_deterministic(tmp_path):
    config = _write(tmp_path, "counterexample")
    first, second = tmp_path / "first", tmp_path / "second"
    assert main(["counterexample", "--config", str(config), "--out", str(first), "--seed", "9"]) == 0
    assert main(["counterexample", "--config", str(config), "--out", str(second), "--seed", "9"]) == 0
    one, two = _report(first), _report(second)
    one.pop("generated_at")
    two.pop("generated_at")
    assert one == two and one["seed"] == 9
    assert (first / "divergence.csv").read_bytes() == (second / "divergence.csv").read_bytes()


def test_failed_assertion_exits_one(tmp_path, capsys):
    out = tmp_path / "out"
    config = _write(tmp_path, "verify-green", params={"dims": [1], "pairs": 3, "green_tol": -1.0})
    assert main(["verify-green", "--config", str(config), "--out", str(out)]) == 1
    assert _report(out)["passed"] is False
    assert "verify-green: FAIL" in capsys.readouterr().out


def test_execution_error_is_reported(tmp_path):
    out = tmp_path / "out"
    config = _write(tmp_path, "resolvent-sweep", params={"lambdas": [[0.0, 1.0]], "resolve_lambdas": []})
    assert main(["resolvent-sweep", "--config", str(config), "--out", str(out)]) == 1
    assertions = _report(out)["assertions"]
    assert assertions[0]["name"] == "execution" and "OnAxis" in assertions[0]["detail"]


def test_configuration_errors_exit_two(tmp_path, capsys):
    assert main(["counterexample"]) == 2
    broken = tmp_path / "broken.json"
    broken.write_text("[", encoding="utf-8")
    assert main(["counterexample", "--config", str(broken)]) == 2
    assert main(["heat-demo", "--config", str(_write(tmp_path, "counterexample"))]) == 2
    assert main(["counterexample", "--config", str(_write(tmp_path, "counterexample", model={"preset": "S9"}))]) == 2
    assert "error:" in capsys.readouterr().err


@pytest.mark.parametrize("path", sorted(Path(__file__).resolve().parent.parent.joinpath("scenarios").glob("*.json")),
                         ids=lambda p: p.stem)
def test_bundled_scenarios_load(path):
    scenario = load_scenario(path)
    assert scenario.command == path.stem


def test_catalog_text():
    text = list_commands()
    assert text.splitlines()[0].startswith("verify-green → Theorem 2.3: ")
    assert "continuous spectrum" in text


def test_catalog_names_the_exercised_theorem():
    text = list_commands()
    assert "check-normality → Theorem 2.5" in text
    assert "counterexample → Theorem 3.2" in text
    assert all(" → Theorem " in line or " → Example " in line for line in text.splitlines())
