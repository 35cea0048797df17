import logging

import pandas as pd

from services.spectral import eigen_classify, lambda_grid
from utils.data_processing import SuiteResult
from utils.scenario import Scenario, extension_for

logger = logging.getLogger(__name__)

# --- CONFIGURATION ---
GRID_N = 41
GRID_RANGE = (-2.0, 2.0)


def run_point_spectrum(scenario: Scenario) -> SuiteResult:
    """Scan a rectangular lambda grid for L2 eigenfunctions."""
    spec = extension_for(scenario)
    grid = lambda_grid(tuple(scenario.param("re_range", GRID_RANGE)),
                       tuple(scenario.param("im_range", GRID_RANGE)),
                       int(scenario.param("n", GRID_N)))
    rows = []
    for lam in grid:
        verdict = eigen_classify(spec, lam)
        rows.append({
            "re_lambda": lam.real,
            "im_lambda": lam.imag,
            "eigenfunction_exists": verdict.eigenfunction_exists,
            "decaying_components": sum(c.decay_ok for c in verdict.per_component),
            "forcing": verdict.forcing,
        })
    table = pd.DataFrame(rows)
    found = int(table["eigenfunction_exists"].sum())

    suite = SuiteResult()
    suite.check("no_eigenfunctions", found == 0, found, 0)
    suite.results["grid_points"] = len(grid)
    suite.results["eigenfunctions_found"] = found
    suite.results["extension"] = spec.summary()
    suite.tables["point_spectrum"] = table
    logger.info("point spectrum scan: %d of %d grid points admit eigenfunctions", found, len(grid))
    return suite
