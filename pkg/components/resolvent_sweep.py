import logging
import math

import numpy as np
import pandas as pd

from services.extension import domain_check
from services.spectral import SWEEP_T, matching_grid_size, plateau_probe, probe_truncation, resolve, resolvent_norm_sweep
from utils.data_processing import SuiteResult
from utils.ray_function import default_grid_size
from utils.scenario import Scenario, extension_for, parse_complex

logger = logging.getLogger(__name__)

# --- CONFIGURATION ---
DEFAULT_LAMBDAS = (1.0, 0.5, 0.25, 0.125, 2.0)
DEFAULT_RESOLVE = (1.0, -1.0, 0.5, -0.5, 2.0, [1.0, 3.0])
PROBE_COUNT = 8
RESIDUAL_TOL = 1e-5
ORACLE_RTOL = 0.25
BLOWUP_RATIO = 8.0


def _blowup_ratio(table: pd.DataFrame):
    """Estimate at |Re lambda| = 0.1 over the estimate at |Re lambda| = 1, if both are swept."""
    near = table[np.isclose(table["re_lambda"].abs(), 0.1)]["norm_estimate"]
    far = table[np.isclose(table["re_lambda"].abs(), 1.0)]["norm_estimate"]
    if near.empty or far.empty:
        return None
    return float(near.max() / far.max())


def run_resolvent_sweep(scenario: Scenario) -> SuiteResult:
    """Resolve at off-axis points and estimate ||(L_W - lambda)^-1|| along a sweep."""
    spec = extension_for(scenario)
    lambdas = [parse_complex(v) for v in scenario.param("lambdas", DEFAULT_LAMBDAS)]
    resolve_points = [parse_complex(v) for v in scenario.param("resolve_lambdas", DEFAULT_RESOLVE)]
    probe_count = int(scenario.param("probe_count", PROBE_COUNT))
    sweep_T = float(scenario.param("sweep_T", SWEEP_T))
    sweep_m = default_grid_size(sweep_T)
    rng = np.random.default_rng(scenario.seed)
    suite = SuiteResult()

    rows = []
    for lam in resolve_points:
        T_total, margin = probe_truncation(spec, lam, sweep_T)
        f = plateau_probe(spec, lam, rng, T_total, matching_grid_size(T_total, sweep_T, sweep_m), margin)
        record = resolve(spec, lam, f)
        rows.append({"re_lambda": lam.real, "im_lambda": lam.imag, "succeeded": record.succeeded,
                     "residual": record.residual, "solution_norm": record.solution_norm,
                     "obstruction": "; ".join(f"{o.ray}:{o.eigenvalue:g}" for o in record.obstruction)})
        if record.succeeded:
            suite.check(f"resolve_residual_{lam}", record.residual <= RESIDUAL_TOL, record.residual, RESIDUAL_TOL)
            report = domain_check(spec, record.solution)
            suite.check(f"resolve_in_domain_{lam}", report.in_domain, report.measures, detail=", ".join(report.reasons))
        else:
            suite.notes.append(f"resolve at {lam} returned an obstruction certificate: {rows[-1]['obstruction']}")
    suite.tables["resolve"] = pd.DataFrame(rows)

    sweep = resolvent_norm_sweep(spec, lambdas, probe_count, sweep_T, sweep_m, scenario.seed)
    suite.tables["sweep"] = sweep
    if scenario.param("oracle", False):
        oracle = 1.0 / sweep["re_lambda"].abs()
        relative = ((sweep["norm_estimate"] - oracle).abs() / oracle).max()
        suite.check("norm_estimates_match_inverse_distance", relative <= ORACLE_RTOL, float(relative), ORACLE_RTOL)
    ratio = _blowup_ratio(sweep)
    if ratio is not None:
        suite.check("norm_blowup_towards_axis", ratio >= BLOWUP_RATIO, ratio, BLOWUP_RATIO)
    obstructed = int(sweep["obstructed_count"].sum())
    if obstructed:
        suite.notes.append(f"{obstructed} sweep probes were obstructed and skipped")
    suite.results["norm_estimates"] = {
        str(complex(r, i)): (e if math.isfinite(e) else None)
        for r, i, e in zip(sweep["re_lambda"], sweep["im_lambda"], sweep["norm_estimate"])
    }
    suite.results["obstructed_probes"] = obstructed
    return suite
