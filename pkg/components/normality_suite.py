"""check-normality: normality on the domain, the boundary formula off it, the
coupling equivalence, the printed and K-relaxed adjoint conditions and the
maximal-normal and existence flags."""

import logging

import numpy as np
import pandas as pd

from data.models import (
    injective_a1_pair,
    random_domain_function,
    random_nondomain_function,
    random_relaxed_adjoint_function,
    random_trace_pairs,
    unequal_kernel_pair,
)
from services.extension import (
    NORMALITY_FACTOR,
    ExtensionSpec,
    adjoint_domain_report,
    adjoint_green_residual,
    build_from_arrays,
    coupling_mismatch,
    domain_check,
    normality_residual,
    selfadjoint_bc_residual_from_traces,
)
from utils.data_processing import SuiteResult
from utils.scenario import Scenario, extension_for

logger = logging.getLogger(__name__)

# --- CONFIGURATION ---
DOMAIN_COUNT = 100
NONDOMAIN_COUNT = 100
TRACE_PAIRS = 500
FLAG_PAIRS = 50
FLAG_DIM = 3
ADJOINT_COUNT = 10
NORMALITY_TOL = 1e-6
FORMULA_TOL = 1e-5
ADJOINT_TOL = 1e-6
BC_TOL = 1e-10
COUPLING_TOL = 1e-9


def _flag_checks(suite: SuiteResult, rng: np.random.Generator, count: int, dim: int) -> None:
    maximal = [build_from_arrays(*injective_a1_pair(rng, dim), np.eye(dim), -1.0, 1.0).maximal_normal
               for _ in range(count)]
    impossible = [not build_from_arrays(*unequal_kernel_pair(rng, dim), np.eye(dim), -1.0, 1.0)
                  .normal_extension_possible for _ in range(count)]
    suite.check("injective_A1_gives_maximal_normal", all(maximal), sum(maximal), count)
    suite.check("unequal_kernels_exclude_normal_extensions", all(impossible), sum(impossible), count)


def _adjoint_checks(suite: SuiteResult, spec: ExtensionSpec, rng: np.random.Generator,
                    count: int, T: float, m: int) -> None:
    """Green form against u in D(L_W) for v in the printed adjoint domain and in the K-relaxed one."""
    rows = []
    for kind, sampler in (("printed", random_domain_function), ("k_relaxed", random_relaxed_adjoint_function)):
        for i in range(count):
            u, v = random_domain_function(spec, rng, T, m), sampler(spec, rng, T, m)
            report = adjoint_domain_report(spec, v)
            rows.append({"sample": kind, "index": i, "green_residual": adjoint_green_residual(spec, u, v),
                         "printed_member": report.printed, "k_relaxed_member": report.k_relaxed,
                         "printed_mismatch": report.printed_mismatch, "k_mismatch": report.k_mismatch})
    table = pd.DataFrame(rows)
    summary = {}
    for kind, group in table.groupby("sample", sort=False):
        worst = float(group["green_residual"].max())
        suite.check(f"adjoint_green_form_{kind}", worst <= ADJOINT_TOL, worst, ADJOINT_TOL)
        summary[kind] = {
            "count": len(group),
            "max_green_residual": worst,
            "printed_members": int(group["printed_member"].sum()),
            "k_relaxed_members": int(group["k_relaxed_member"].sum()),
        }
    relaxed = table[table["sample"] == "k_relaxed"]
    suite.check("k_relaxed_samples_satisfy_relaxed_condition", bool(relaxed["k_relaxed_member"].all()),
                int(relaxed["k_relaxed_member"].sum()), len(relaxed))
    suite.results["adjoint_domain"] = summary
    suite.tables["adjoint_domain"] = table


def run_normality_suite(scenario: Scenario) -> SuiteResult:
    spec = extension_for(scenario)
    T, m = scenario.numerics.T, scenario.numerics.grid_size
    rng = np.random.default_rng(scenario.seed)
    suite = SuiteResult()

    rows = []
    for i in range(int(scenario.param("domain_count", DOMAIN_COUNT))):
        u = random_domain_function(spec, rng, T, m)
        report = normality_residual(spec, u)
        rows.append({"kind": "domain", "index": i, "in_domain": domain_check(spec, u).in_domain,
                     "lhs_sq_diff": report.lhs_sq_diff, "residual": abs(report.lhs_sq_diff)})
    for i in range(int(scenario.param("nondomain_count", NONDOMAIN_COUNT))):
        u = random_nondomain_function(spec, rng, T, m)
        report = normality_residual(spec, u)
        rows.append({"kind": "nondomain", "index": i, "in_domain": domain_check(spec, u).in_domain,
                     "lhs_sq_diff": report.lhs_sq_diff, "residual": report.residual})
    table = pd.DataFrame(rows)
    domain_rows, other_rows = table[table["kind"] == "domain"], table[table["kind"] == "nondomain"]
    suite.check("domain_functions_in_domain", bool(domain_rows["in_domain"].all()),
                int(domain_rows["in_domain"].sum()), len(domain_rows))
    max_normal = float(domain_rows["residual"].max()) if len(domain_rows) else 0.0
    max_formula = float(other_rows["residual"].max()) if len(other_rows) else 0.0
    suite.check("normality_on_domain", max_normal <= NORMALITY_TOL, max_normal, NORMALITY_TOL)
    suite.check("boundary_formula_off_domain", max_formula <= FORMULA_TOL, max_formula, FORMULA_TOL,
                f"factor {NORMALITY_FACTOR:g}")

    misclassified = 0
    for u1a, u2b in random_trace_pairs(spec, rng, int(scenario.param("trace_pairs", TRACE_PAIRS))):
        by_bc = selfadjoint_bc_residual_from_traces(spec, u1a, u2b) <= BC_TOL
        by_coupling = coupling_mismatch(spec, u1a, u2b) <= COUPLING_TOL
        misclassified += by_bc != by_coupling
    suite.check("coupling_equivalence", misclassified == 0, misclassified, 0)

    _adjoint_checks(suite, spec, rng, int(scenario.param("adjoint_count", ADJOINT_COUNT)), T, m)

    _flag_checks(suite, rng, int(scenario.param("flag_pairs", FLAG_PAIRS)),
                 int(scenario.param("flag_dim", FLAG_DIM)))

    suite.results["extension"] = spec.summary()
    suite.results["max_normality_residual"] = max_normal
    suite.results["max_formula_residual"] = max_formula
    suite.tables["normality_residuals"] = table
    logger.info("normality suite on dim %d: %s", spec.dim, "pass" if suite.all_passed else "fail")
    return suite
