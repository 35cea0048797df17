import logging
import math

from components.counterexample import closed_form_tolerance
from data.models import s1_model
from services.heat_model import HeatConfig, heat_probe, read_source_csv, resolve_source, space_time_norm
from services.spectral import SpectralProbeReport, lambda_grid, spectral_probe
from utils.data_processing import SuiteResult
from utils.scenario import Scenario, parse_complex

logger = logging.getLogger(__name__)

# --- CONFIGURATION ---
RESIDUAL_TOL = 1e-5
SLOPE_RANGE = (0.99, 1.01)
REFERENCE_GRID_N = 5
REFERENCE_SWEEP = (1.0,)
REFERENCE_PROBES = 2
SOURCE_LAMBDA = 0.5


def probe_fingerprint(report: SpectralProbeReport):
    """Everything a probe report computes, in comparable form."""
    return (
        report.summary(),
        report.divergence.to_dict("list"),
        report.sweep.to_dict("list"),
    )


def reduced_model_matches_scalar(config: HeatConfig, seed: int) -> bool:
    """heat_probe(N = 1) and the same probe on the scalar model agree exactly."""
    kwargs = dict(sweep_lambdas=REFERENCE_SWEEP, probe_count=REFERENCE_PROBES, divergence_T=(20.0, 40.0),
                  seed=seed)
    grid = lambda_grid(n=REFERENCE_GRID_N)
    reduced = heat_probe(HeatConfig(N=1, phi=config.phi), grid, **kwargs)
    scalar = spectral_probe(s1_model(config.a, config.b, config.phi), grid, **kwargs)
    return probe_fingerprint(reduced) == probe_fingerprint(scalar)


def _source_checks(suite: SuiteResult, config: HeatConfig, path: str, lam: complex) -> None:
    """Resolve a sampled source f(t, x) read from CSV in the cosine modes."""
    samples = read_source_csv(config, path)
    record = resolve_source(config, samples, lam)
    obstruction = "; ".join(f"{o.ray}:{o.eigenvalue:g}" for o in record.obstruction)
    suite.check("source_csv_resolve", record.succeeded and record.residual <= RESIDUAL_TOL,
                record.residual, RESIDUAL_TOL, obstruction)
    suite.results["source"] = {
        "path": str(path),
        "space_time_norm": space_time_norm(samples),
        **record.summary(),
    }


def run_heat_demo(scenario: Scenario) -> SuiteResult:
    config: HeatConfig = scenario.model
    grid = lambda_grid(n=int(scenario.param("n", 41)))
    kwargs = {}
    if "lambdas" in scenario.params:
        kwargs["sweep_lambdas"] = [parse_complex(v) for v in scenario.param("lambdas")]
    if "probe_count" in scenario.params:
        kwargs["probe_count"] = int(scenario.param("probe_count"))
    if "T_list" in scenario.params:
        kwargs["divergence_T"] = [float(T) for T in scenario.param("T_list")]
    report = heat_probe(config, grid, seed=scenario.seed, **kwargs)

    suite = SuiteResult()
    suite.check("no_eigenfunctions", report.eigenfunctions_found == 0, report.eigenfunctions_found, 0)
    for T, error in report.divergence_errors.items():
        suite.check(f"closed_form_T{T:g}", error <= closed_form_tolerance(T), error, closed_form_tolerance(T))
    suite.check("linear_growth_slope", SLOPE_RANGE[0] <= report.divergence_slope <= SLOPE_RANGE[1],
                report.divergence_slope, list(SLOPE_RANGE))
    kernel = report.kernel_resolve
    suite.check("kernel_mode_resolve", kernel.succeeded and kernel.residual <= RESIDUAL_TOL,
                kernel.residual, RESIDUAL_TOL)
    finite = all(math.isfinite(e) for e in report.sweep["norm_estimate"])
    suite.check("sweep_estimates_finite", finite)
    if scenario.param("reference_check", True):
        suite.check("single_mode_matches_scalar_model", reduced_model_matches_scalar(config, scenario.seed))
    if scenario.param("source_csv"):
        _source_checks(suite, config, scenario.param("source_csv"),
                       parse_complex(scenario.param("source_lambda", SOURCE_LAMBDA)))

    suite.results["heat"] = {"N": config.N, "phi": config.phi}
    suite.results["probe"] = report.summary()
    suite.tables["divergence"] = report.divergence
    suite.tables["sweep"] = report.sweep
    suite.notes.append("x boundary conditions are read as Neumann conditions du/dx = 0 at x = 0 and x = 1")
    logger.info("heat demo N=%d: %s", config.N, "pass" if suite.all_passed else "fail")
    return suite
