"""Sign-flipping heat operator on two time rays, reduced to cosine modes.

    du/dt - sgn(t) d2u/dx2 = f(t, x),  t in (-inf, -1] U [1, inf),  x in [0, 1],
    du/dx(t, 0) = du/dx(t, 1) = 0,     u(1, x) = e^{i phi} u(-1, x).

The x-boundary conditions are read as Neumann conditions in x; the literal
"du/dt = 0 at x = 0, 1" leaves the x-operator without boundary conditions and
without the constant kernel mode. In the orthonormal basis {1, sqrt2 cos(n pi x)}
the x-operator is diagonal, so the problem becomes the two-ray system with
A1 = diag(-(n pi)^2), A2 = diag((n pi)^2) and W = e^{i phi} I.
"""

import logging
import math
from dataclasses import dataclass
from pathlib import Path
from typing import Callable, Optional, Sequence, Union

import numpy as np
import pandas as pd

from services.extension import ExtensionSpec, build_from_arrays
from services.spectral import SWEEP_T, ResolventRecord, SpectralProbeReport, lambda_grid, resolve, spectral_probe
from utils.errors import BadGrid, ConfigInvalid, GridTooCoarse
from utils.ray_function import (
    DEFAULT_T,
    RayFunction,
    TwoRayFunction,
    default_grid_size,
    simpson_weights,
    uniform_nodes,
)

logger = logging.getLogger(__name__)

# --- CONFIGURATION ---
HEAT_A = -1.0
HEAT_B = 1.0
X_POINTS_PER_MODE = 4
X_GRID_TOL = 1e-9
DEFAULT_SWEEP = (1.0, 0.5, 0.25, -0.5, 1.0 + 3.0j)


@dataclass(frozen=True)
class HeatConfig:
    N: int
    phi: float
    a: float = HEAT_A
    b: float = HEAT_B
    T: float = DEFAULT_T
    m: Optional[int] = None

    def __post_init__(self):
        if int(self.N) != self.N or self.N < 1:
            raise ConfigInvalid(f"number of cosine modes must be a positive integer, got {self.N}")
        if not 0.0 <= self.phi < 2.0 * math.pi:
            raise ConfigInvalid(f"phi must lie in [0, 2 pi), got {self.phi}")
        if not self.a < self.b:
            raise ConfigInvalid(f"need a < b, got a={self.a}, b={self.b}")
        if not self.T > 0:
            raise ConfigInvalid(f"truncation length must be positive, got {self.T}")

    @property
    def grid_size(self) -> int:
        return default_grid_size(self.T) if self.m is None else self.m


def neumann_eigenvalues(N: int) -> np.ndarray:
    """(n pi)^2 for n = 0 .. N-1."""
    return (np.arange(N) * np.pi) ** 2


def cosine_basis(N: int, x: np.ndarray) -> np.ndarray:
    """(nx, N) samples of 1, sqrt2 cos(pi x), ..., sqrt2 cos((N-1) pi x)."""
    x = np.asarray(x, dtype=float)
    basis = np.sqrt(2.0) * np.cos(np.pi * np.outer(x, np.arange(N)))
    basis[:, 0] = 1.0
    return basis


def cosine_reduce(config: HeatConfig) -> ExtensionSpec:
    eigs = neumann_eigenvalues(config.N)
    # -0.0 + 0.0 == +0.0
    a1 = np.diag(-eigs + 0.0)
    a2 = np.diag(eigs)
    w = np.exp(1j * config.phi) * np.eye(config.N)
    spec = build_from_arrays(a1, a2, w, config.a, config.b)
    logger.info("cosine reduction with N=%d, phi=%.6g: dim K = %d", config.N, config.phi, spec.dim_k)
    return spec


@dataclass(frozen=True, eq=False)
class SourceSamples:
    """f(t, x) sampled on the left and right time rays and a uniform x grid on [0, 1]."""

    x: np.ndarray
    left_t: np.ndarray
    left: np.ndarray
    right_t: np.ndarray
    right: np.ndarray


def _check_x_grid(x: np.ndarray, N: int) -> float:
    if x.ndim != 1 or x.size < 2:
        raise BadGrid("x grid must be one-dimensional with at least 2 points")
    if abs(x[0]) > X_GRID_TOL or abs(x[-1] - 1.0) > X_GRID_TOL:
        raise BadGrid(f"x grid must cover [0, 1], got [{x[0]}, {x[-1]}]")
    h = (x[-1] - x[0]) / (x.size - 1)
    if not np.allclose(np.diff(x), h, rtol=1e-9, atol=0):
        raise BadGrid("x grid must be uniform")
    if x.size < X_POINTS_PER_MODE * N:
        raise GridTooCoarse(f"{x.size} x points cannot resolve {N} modes (need {X_POINTS_PER_MODE * N})")
    return float(h)


def project_source(config: HeatConfig, samples: SourceSamples) -> TwoRayFunction:
    """Cosine-mode coefficients of f by Simpson quadrature in x."""
    x = np.asarray(samples.x, dtype=float)
    h = _check_x_grid(x, config.N)
    weighted = cosine_basis(config.N, x) * simpson_weights(x.size, h)[:, None]
    left = np.asarray(samples.left, dtype=complex) @ weighted
    right = np.asarray(samples.right, dtype=complex) @ weighted
    return TwoRayFunction(
        RayFunction("left", config.a, config.T, np.asarray(samples.left_t, dtype=float), left),
        RayFunction("right", config.b, config.T, np.asarray(samples.right_t, dtype=float), right),
    )


def space_time_norm(samples: SourceSamples) -> float:
    """L2 norm of f over both rays times [0, 1]."""
    x = np.asarray(samples.x, dtype=float)
    wx = simpson_weights(x.size, float(x[1] - x[0]))
    total = 0.0
    for t, values, far in ((samples.left_t, samples.left, "start"), (samples.right_t, samples.right, "end")):
        wt = simpson_weights(t.size, float(t[1] - t[0]), far)
        total += float(wt @ (np.abs(values) ** 2) @ wx)
    return math.sqrt(max(total, 0.0))


def sample_source(config: HeatConfig, fn: Callable[[np.ndarray, np.ndarray], np.ndarray],
                  nx: int) -> SourceSamples:
    """Evaluate a vectorized fn(t, x) on both truncated rays and nx uniform x points."""
    x = np.linspace(0.0, 1.0, nx)
    m = config.grid_size
    left_t = uniform_nodes("left", config.a, config.T, m)
    right_t = uniform_nodes("right", config.b, config.T, m)
    left = np.asarray(fn(left_t[:, None], x[None, :]), dtype=complex) * np.ones((m, nx))
    right = np.asarray(fn(right_t[:, None], x[None, :]), dtype=complex) * np.ones((m, nx))
    return SourceSamples(x, left_t, left, right_t, right)


def read_source_csv(config: HeatConfig, path: Union[str, Path]) -> SourceSamples:
    """Load samples from a CSV with columns t, x, re_f, im_f (one row per (t, x) pair)."""
    try:
        frame = pd.read_csv(path, float_precision="round_trip")
    except OSError as e:
        raise ConfigInvalid(f"cannot read source CSV {path}: {e}") from e
    missing = {"t", "x", "re_f", "im_f"} - set(frame.columns)
    if missing:
        raise ConfigInvalid(f"source CSV {path} lacks columns {sorted(missing)}")
    parts = []
    for column in ("re_f", "im_f"):
        try:
            part = frame.pivot(index="t", columns="x", values=column).sort_index().sort_index(axis=1)
        except ValueError as e:
            raise BadGrid(f"source CSV repeats a (t, x) pair: {e}") from e
        if part.isna().to_numpy().any():
            raise BadGrid("source CSV does not cover a full (t, x) grid")
        parts.append(part.to_numpy(dtype=float))
    t = part.index.to_numpy(dtype=float)  # both pivots share labels
    x = part.columns.to_numpy(dtype=float)
    values = parts[0] + 1j * parts[1]
    left_rows, right_rows = t <= config.a + X_GRID_TOL, t >= config.b - X_GRID_TOL
    logger.info("read %d x %d source samples from %s", t.size, x.size, path)
    return SourceSamples(x, t[left_rows], values[left_rows], t[right_rows], values[right_rows])


def heat_probe(config: HeatConfig, grid: Optional[Sequence[complex]] = None,
               sweep_lambdas: Sequence[complex] = DEFAULT_SWEEP, probe_count: int = 8,
               divergence_T: Sequence[float] = (10.0, 20.0, 40.0, 80.0, 100.0),
               resolve_lambda: complex = 0.5, sweep_T: float = SWEEP_T,
               seed: int = 42) -> SpectralProbeReport:
    """Spectral probe bundle run on the cosine-reduced heat operator."""
    spec = cosine_reduce(config)
    grid = lambda_grid() if grid is None else grid
    return spectral_probe(spec, grid, sweep_lambdas, probe_count=probe_count, divergence_T=divergence_T,
                          resolve_lambda=resolve_lambda, T=sweep_T, seed=seed)


def resolve_source(config: HeatConfig, samples: SourceSamples, lam: complex = 0.5) -> ResolventRecord:
    """Project sampled f onto the cosine modes and solve (l - lambda) u = f for the reduced operator."""
    f = project_source(config, samples)
    record = resolve(cosine_reduce(config), lam, f)
    logger.info("source resolve at lambda=%s: %s", lam, "solved" if record.succeeded else "obstructed")
    return record
