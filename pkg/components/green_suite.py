import logging

import numpy as np
import pandas as pd

from data.models import random_vector
from services.boundary_theory import (
    boundary_witness,
    greens_residual,
    sign_convention,
    witness_round_trip_error,
)
from utils.data_processing import SuiteResult
from utils.scenario import Scenario

logger = logging.getLogger(__name__)

# --- CONFIGURATION ---
DEFAULT_DIMS = (1, 2, 4)
DEFAULT_PAIRS = 200
ROUND_TRIP_TOL = 1e-10
GREEN_TOL = 1e-6


def run_green_suite(scenario: Scenario) -> SuiteResult:
    """Boundary-value space suite: witness surjectivity and the Green identity."""
    dims = [int(d) for d in scenario.param("dims", DEFAULT_DIMS)]
    pairs = int(scenario.param("pairs", DEFAULT_PAIRS))
    T, m = scenario.numerics.T, scenario.numerics.grid_size
    green_tol = float(scenario.param("green_tol", GREEN_TOL))
    convention = sign_convention()
    rng = np.random.default_rng(scenario.seed)

    suite = SuiteResult()
    rows = []
    for dim in dims:
        round_trip, green = [], []
        previous = None
        for _ in range(pairs):
            f, g = random_vector(rng, dim), random_vector(rng, dim)
            witness = boundary_witness(f, g, 0.0, 1.0, T, m)
            round_trip.append(witness_round_trip_error(f, g, witness))
            if previous is not None:
                green.append(greens_residual(previous, witness, convention))
            previous = witness
        max_trip = max(round_trip)
        max_green = max(green) if green else 0.0
        logger.info("dim %d: round trip %.3e, Green residual %.3e", dim, max_trip, max_green)
        suite.check(f"witness_round_trip_dim{dim}", max_trip <= ROUND_TRIP_TOL, max_trip, ROUND_TRIP_TOL)
        suite.check(f"green_identity_dim{dim}", max_green <= green_tol, max_green, green_tol)
        rows.append({"dim": dim, "pairs": pairs, "max_round_trip": max_trip, "max_green_residual": max_green})

    suite.results["sign_convention"] = convention
    suite.results["max_green_residual"] = max(row["max_green_residual"] for row in rows)
    suite.tables["green_residuals"] = pd.DataFrame(rows)
    if convention == "exchanged":
        suite.notes.append("Green identity holds with (y1, y2) exchanged relative to the printed boundary form")
    return suite
