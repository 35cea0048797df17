"""Spectrum probing for L_W.

eigen_classify decides, from the decay exponents of the homogeneous modes,
whether an admissible trace can start an L2 eigenfunction. resolve builds
(L_W - lambda)^-1 f componentwise in the eigenbases of A1 and A2: each mode is
integrated in its stable direction, the free trace constants are fitted to the
kernel and coupling constraints, and forced traces that cannot be matched are
reported as an obstruction certificate instead of an error.

The variation-of-constants integrals use an exponential integrator with
quadratic interpolation of the source; the one-step factor is the propagator
diagonal at tau = +-h.
"""

import logging
import math
from dataclasses import dataclass, field
from typing import Any, Dict, Iterable, List, Optional, Sequence, Tuple

import numpy as np
import pandas as pd
from scipy import linalg as la
from scipy import signal
from scipy.special import factorial

from services.boundary_theory import require_decay
from services.extension import ExtensionSpec, apply_expression, check_compatible
from utils.errors import BadGrid, NotInKernel, OnAxis
from utils.operator_core import HermitianOperator, kernel_mask, propagator_diagonal
from utils.ray_function import (
    POINTS_PER_UNIT,
    RayFunction,
    TwoRayFunction,
    from_values,
    linear_combination,
    quad_inner,
    uniform_nodes,
)

logger = logging.getLogger(__name__)

# --- CONFIGURATION ---
AXIS_TOL = 1e-12
EXPONENT_TOL = 1e-12
OVERLAP_TOL = 1e-10
NULLITY_TOL = 1e-8
OBSTRUCTION_RTOL = 1e-8
UNIT_TOL = 1e-10
KERNEL_MEMBERSHIP_TOL = 1e-8
SERIES_CUTOFF = 0.1
SERIES_TERMS = 12
SWEEP_T = 80.0
PROBE_WIDTH = (0.6, 0.95)
PROBE_MARGIN = 1.0
PROBE_TAPER = 2.0
DECAY_DEPTH = 25.0
SLOPE_MIN_T = 20.0

_SERIES_POWERS = np.arange(SERIES_TERMS)
_INV_FACT = {k: 1.0 / factorial(_SERIES_POWERS + k, exact=False) for k in (1, 2, 3)}


@dataclass
class ComponentDecay:
    ray: str
    eigenvalue: float
    decay_ok: bool
    exponent: float


@dataclass
class SpectralVerdict:
    lam: complex
    per_component: List[ComponentDecay] = field(default_factory=list)
    eigenfunction_exists: bool = False
    forcing: str = ""


@dataclass
class ObstructionEntry:
    ray: str
    eigenvalue: float
    forced_trace_norm: float


@dataclass
class ResolventRecord:
    """Outcome of one resolve call: a solution or an obstruction certificate."""

    lam: complex
    solution: Optional[TwoRayFunction]
    obstruction: List[ObstructionEntry] = field(default_factory=list)
    residual: float = math.nan
    solution_norm: float = math.nan
    constraint_residual: float = 0.0

    @property
    def succeeded(self) -> bool:
        return self.solution is not None

    def summary(self) -> Dict[str, Any]:
        return {
            "lambda": self.lam,
            "succeeded": self.succeeded,
            "residual": self.residual,
            "solution_norm": self.solution_norm,
            "constraint_residual": self.constraint_residual,
            "obstruction": self.obstruction,
        }


# --- EIGENVALUE CLASSIFICATION ---

def _overlapping(vectors: np.ndarray, subspace: np.ndarray) -> np.ndarray:
    if subspace.shape[1] == 0:
        return np.zeros(vectors.shape[1], dtype=bool)
    return np.linalg.norm(vectors.conj().T @ subspace, axis=1) > OVERLAP_TOL


def _span_projector(vectors: np.ndarray) -> np.ndarray:
    return vectors @ vectors.conj().T


def eigen_classify(spec: ExtensionSpec, lam: complex) -> SpectralVerdict:
    """Classify lambda as a candidate eigenvalue by the decay of its homogeneous modes."""
    lam = complex(lam)
    lam_r = lam.real
    K = spec.K
    WK = spec.W.entries @ K
    left_exp = lam_r - spec.a1.eigenvalues
    right_exp = spec.a2.eigenvalues - lam_r

    components: List[ComponentDecay] = []
    for j in np.flatnonzero(_overlapping(spec.a1.eigenvectors, K)):
        components.append(ComponentDecay("left", float(spec.a1.eigenvalues[j]),
                                         bool(left_exp[j] > EXPONENT_TOL), float(left_exp[j])))
    for j in np.flatnonzero(_overlapping(spec.a2.eigenvectors, WK)):
        components.append(ComponentDecay("right", float(spec.a2.eigenvalues[j]),
                                         bool(right_exp[j] > EXPONENT_TOL), float(right_exp[j])))

    if spec.dim_k == 0:
        return SpectralVerdict(lam, components, False, "admissible subspace K is trivial")

    eye = np.eye(spec.dim)
    left_decaying = _span_projector(spec.a1.eigenvectors[:, left_exp > EXPONENT_TOL])
    right_decaying = _span_projector(spec.a2.eigenvectors[:, right_exp > EXPONENT_TOL])
    stacked = np.vstack([(eye - left_decaying) @ K, (eye - right_decaying) @ WK])
    singular = la.svdvals(stacked)
    nullity = spec.dim_k - int(np.sum(singular > NULLITY_TOL))
    exists = nullity > 0

    if exists:
        forcing = "a nonzero admissible trace decays on both rays"
    else:
        reasons = []
        if not any(c.decay_ok for c in components if c.ray == "left"):
            reasons.append("left modes on K need Re(lambda) > alpha")
        if not any(c.decay_ok for c in components if c.ray == "right"):
            reasons.append("right modes on W K need Re(lambda) < beta")
        if not reasons:
            reasons.append("no admissible trace decays on both rays at once")
        forcing = "; ".join(reasons)
    return SpectralVerdict(lam, components, exists, forcing)


def lambda_grid(re_range=(-2.0, 2.0), im_range=(-2.0, 2.0), n: int = 41) -> np.ndarray:
    """n x n rectangular grid of spectral parameters, flattened row by row."""
    re = np.linspace(re_range[0], re_range[1], n)
    im = np.linspace(im_range[0], im_range[1], n)
    return (re[None, :] + 1j * im[:, None]).reshape(-1)


def count_eigenfunctions(spec: ExtensionSpec, grid: Iterable[complex]) -> int:
    found = 0
    for lam in grid:
        verdict = eigen_classify(spec, lam)
        if verdict.eigenfunction_exists:
            logger.warning("eigenfunction candidate at lambda=%s: %s", lam, verdict.forcing)
            found += 1
    return found


# --- EXPONENTIAL MARCHING ---

def _phi_weights(z: complex):
    """phi_k(z) = sum_n z^n / (n + k)! for k = 1, 2, 3."""
    if abs(z) < SERIES_CUTOFF:
        powers = z ** _SERIES_POWERS
        return tuple(complex(powers @ _INV_FACT[k]) for k in (1, 2, 3))
    ez = np.exp(z)
    return (ez - 1) / z, (ez - 1 - z) / z ** 2, (ez - 1 - z - z * z / 2) / z ** 3


def _march(source: np.ndarray, h: float, z: complex, step: complex) -> np.ndarray:
    """y' = (z/h) y + source on a uniform grid from y[0] = 0; `step` is exp(z)."""
    m = source.size
    p1, p2, p3 = _phi_weights(z)
    increments = np.zeros(m, dtype=complex)
    if m > 2:
        w0, w1, w2 = p1 - 1.5 * p2 + p3, 2.0 * (p2 - p3), p3 - 0.5 * p2
        increments[1:m - 1] = h * (w0 * source[:m - 2] + w1 * source[1:m - 1] + w2 * source[2:])
        v0, v1, v2 = -0.5 * p2 + p3, p1 - 2.0 * p3, 0.5 * p2 + p3
        increments[m - 1] = h * (v0 * source[m - 3] + v1 * source[m - 2] + v2 * source[m - 1])
    else:
        increments[1:] = h * p1 * source[:-1]
    return signal.lfilter([1.0], [1.0, -step], increments)


def particular_solution(op: HermitianOperator, lam: complex, coords: np.ndarray, h: float,
                        forward: np.ndarray) -> np.ndarray:
    """Columnwise solutions of y' = -(alpha - lambda) y + phi in eigen-coordinates.

    Column j starts from zero at the first node when forward[j], else at the
    last node and marches backward.
    """
    lam = complex(lam)
    step_forward = propagator_diagonal(op, lam, h)
    step_backward = propagator_diagonal(op, lam, -h)
    out = np.zeros_like(coords, dtype=complex)
    for j, alpha in enumerate(op.eigenvalues):
        column = coords[:, j]
        if not np.any(column):
            continue
        kappa = alpha - lam
        if forward[j]:
            out[:, j] = _march(column, h, -kappa * h, step_forward[j])
        else:
            out[::-1, j] = _march(-column[::-1], h, kappa * h, step_backward[j])
    return out


# --- RESOLVENT ---

@dataclass
class _RayPart:
    op: HermitianOperator
    ray: RayFunction
    particular: np.ndarray
    free: np.ndarray
    trace: np.ndarray


def _solve_ray(op: HermitianOperator, lam: complex, f: RayFunction) -> _RayPart:
    coords = op.to_eigenbasis(f.values)
    if f.ray == "left":
        free = lam.real - op.eigenvalues > EXPONENT_TOL
        forward = ~free
        particular = particular_solution(op, lam, coords, f.spacing, forward)
        trace = particular[-1]
    else:
        free = op.eigenvalues - lam.real > EXPONENT_TOL
        forward = free
        particular = particular_solution(op, lam, coords, f.spacing, forward)
        trace = particular[0]
    return _RayPart(op, f, particular, free, trace.copy())


def _homogeneous(part: _RayPart, lam: complex, constants: np.ndarray) -> np.ndarray:
    coords = part.particular.copy()
    modes = np.flatnonzero(part.free)
    if modes.size:
        tau = part.ray.nodes - part.ray.endpoint
        coords[:, modes] += propagator_diagonal(part.op, lam, tau, modes=modes) * constants
    return coords


def _certificate(spec: ExtensionSpec, parts: Sequence[_RayPart], threshold: float) -> List[ObstructionEntry]:
    forced = []
    for part in parts:
        in_kernel = kernel_mask(part.op, spec.ker_tol)
        for j in np.flatnonzero(~part.free):
            size = float(abs(part.trace[j]))
            forced.append((bool(in_kernel[j]), ObstructionEntry(part.ray.ray, float(part.op.eigenvalues[j]), size)))
    # a forced trace off the kernel cannot be cancelled by any free constant
    outside = [entry for kern, entry in forced if not kern and entry.forced_trace_norm > threshold]
    if outside:
        return outside
    large = [entry for _, entry in forced if entry.forced_trace_norm > threshold]
    return large or [entry for _, entry in forced]


def resolve(spec: ExtensionSpec, lam: complex, f: TwoRayFunction,
            obstruction_rtol: float = OBSTRUCTION_RTOL) -> ResolventRecord:
    """Solve (l - lambda) u = f on D(L_W), or certify why the traces cannot match.

    Raises TruncationUnsound when the solution has not decayed at the truncation point.
    """
    lam = complex(lam)
    if abs(lam.real) < AXIS_TOL:
        raise OnAxis(f"Re(lambda) = {lam.real:.3e} is on the imaginary axis")
    check_compatible(spec, f)
    require_decay(f, name="f")
    f_norm = f.norm()

    left = _solve_ray(spec.a1, lam, f.left)
    right = _solve_ray(spec.a2, lam, f.right)
    v1, v2, w = spec.a1.eigenvectors, spec.a2.eigenvectors, spec.W.entries
    eye = np.eye(spec.dim)
    n = spec.dim

    free_l, free_r = np.flatnonzero(left.free), np.flatnonzero(right.free)
    system = np.zeros((3 * n, free_l.size + free_r.size), dtype=complex)
    system[:n, :free_l.size] = (eye - spec.p1) @ v1[:, free_l]
    system[n:2 * n, free_l.size:] = (eye - spec.p2) @ v2[:, free_r]
    system[2 * n:, :free_l.size] = -w @ v1[:, free_l]
    system[2 * n:, free_l.size:] = v2[:, free_r]
    left_trace, right_trace = v1 @ left.trace, v2 @ right.trace
    rhs = -np.concatenate([
        (eye - spec.p1) @ left_trace,
        (eye - spec.p2) @ right_trace,
        right_trace - w @ left_trace,
    ])

    if system.shape[1]:
        constants, *_ = la.lstsq(system, rhs)
    else:
        constants = np.zeros(0, dtype=complex)
    constraint_residual = float(np.linalg.norm(system @ constants - rhs))
    threshold = obstruction_rtol * f_norm

    if constraint_residual > threshold:
        certificate = _certificate(spec, (left, right), threshold)
        logger.info("resolve at lambda=%s obstructed: constraint residual %.3e", lam, constraint_residual)
        return ResolventRecord(lam, None, certificate, constraint_residual=constraint_residual)

    left_coords = _homogeneous(left, lam, constants[:free_l.size])
    right_coords = _homogeneous(right, lam, constants[free_l.size:])
    solution = TwoRayFunction(
        f.left.with_values(spec.a1.from_eigenbasis(left_coords)),
        f.right.with_values(spec.a2.from_eigenbasis(right_coords)),
    )
    require_decay(solution, name="solution")
    applied = apply_expression(spec, solution)
    defect = linear_combination(1.0, applied, -lam, solution)
    defect = linear_combination(1.0, defect, -1.0, f)
    residual = defect.norm() / f_norm if f_norm > 0 else defect.norm()
    record = ResolventRecord(lam, solution, [], float(residual), solution.norm(), constraint_residual)
    logger.debug("resolve at lambda=%s: residual %.3e, norm %.6g", lam, record.residual, record.solution_norm)
    return record


# --- RESOLVENT NORM SWEEP ---

def _smooth_step(x: np.ndarray) -> np.ndarray:
    """C-infinity step: 0 for x <= 0, 1 for x >= 1."""
    x = np.clip(x, 0.0, 1.0)
    with np.errstate(divide="ignore"):
        rise = np.where(x > 0, np.exp(-1.0 / np.where(x > 0, x, 1.0)), 0.0)
        fall = np.where(x < 1, np.exp(-1.0 / np.where(x < 1, 1.0 - x, 1.0)), 0.0)
    return rise / (rise + fall)


def plateau(nodes: np.ndarray, start: float, stop: float, taper: float) -> np.ndarray:
    """Smooth bump equal to 1 on [start + taper, stop - taper], 0 outside [start, stop]."""
    return _smooth_step((nodes - start) / taper) * _smooth_step((stop - nodes) / taper)


def decay_length(spec: ExtensionSpec, lam: complex) -> float:
    """Distance over which every free mode at lambda decays by e^-DECAY_DEPTH (0 without free modes)."""
    lam = complex(lam)
    rates = np.concatenate([
        lam.real - spec.a1.eigenvalues,
        spec.a2.eigenvalues - lam.real,
    ])
    rates = rates[rates > EXPONENT_TOL]
    if rates.size == 0:
        return 0.0
    return float(DECAY_DEPTH / rates.min())


def probe_truncation(spec: ExtensionSpec, lam: complex, T: float) -> Tuple[float, float]:
    """(truncation length, far margin) for sources supported within distance T of the endpoints.

    The margin is the decay length, so a solution driven by such a source is
    below the decay threshold at the truncation point.
    """
    margin = max(PROBE_MARGIN, decay_length(spec, lam))
    return T + margin, margin


def matching_grid_size(T_total: float, T: float, m: int) -> int:
    """Grid size on [0, T_total] with the spacing of an m-point grid on [0, T]."""
    return int(round(T_total * (m - 1) / T)) + 1


def plateau_probe(spec: ExtensionSpec, lam: complex, rng: np.random.Generator,
                  T: float, m: int, far_margin: float = PROBE_MARGIN) -> TwoRayFunction:
    """Unit-norm f = e^{i Im(lambda) t} * plateau * random direction on a random ray.

    The plateau lies in the first T - far_margin of the truncated ray.
    """
    lam = complex(lam)
    available = T - far_margin
    if available <= 0:
        raise BadGrid(f"far margin {far_margin} leaves no room on a ray of length {T}")
    width = rng.uniform(*PROBE_WIDTH) * available
    taper = min(PROBE_TAPER, width / 4.0)
    direction = rng.normal(size=spec.dim) + 1j * rng.normal(size=spec.dim)
    direction /= np.linalg.norm(direction)
    on_left = bool(rng.integers(0, 2))

    left_nodes = uniform_nodes("left", spec.a, T, m)
    right_nodes = uniform_nodes("right", spec.b, T, m)
    offset = rng.uniform(0.0, available - width)
    left_vals = np.zeros((m, spec.dim), dtype=complex)
    right_vals = np.zeros((m, spec.dim), dtype=complex)
    if on_left:
        stop = spec.a - offset
        bump = plateau(left_nodes, stop - width, stop, taper)
        left_vals = (np.exp(1j * lam.imag * left_nodes) * bump)[:, None] * direction
    else:
        start = spec.b + offset
        bump = plateau(right_nodes, start, start + width, taper)
        right_vals = (np.exp(1j * lam.imag * right_nodes) * bump)[:, None] * direction
    f = TwoRayFunction(from_values("left", spec.a, T, left_vals), from_values("right", spec.b, T, right_vals))
    scale = f.norm()
    return f.map_values(lambda values: values / scale)


def resolvent_norm_sweep(spec: ExtensionSpec, lambdas: Sequence[complex], probe_count: int,
                         T: float = SWEEP_T, m: Optional[int] = None, seed: int = 42) -> pd.DataFrame:
    """Lower estimates of ||(L_W - lambda)^-1|| from randomized unit-norm probes.

    Probes sit within T of the endpoints; each ray is extended by the decay length at lambda.
    """
    lambdas = [complex(lam) for lam in lambdas]
    on_axis = [lam for lam in lambdas if abs(lam.real) < AXIS_TOL]
    if on_axis:
        raise OnAxis(f"sweep contains points on the imaginary axis: {on_axis}")
    if probe_count < 1:
        raise ValueError("probe_count must be at least 1")
    m = int(round(POINTS_PER_UNIT * T)) + 1 if m is None else m
    rng = np.random.default_rng(seed)

    rows = []
    for lam in lambdas:
        T_total, margin = probe_truncation(spec, lam, T)
        m_total = matching_grid_size(T_total, T, m)
        norms, obstructed = [], 0
        for _ in range(probe_count):
            record = resolve(spec, lam, plateau_probe(spec, lam, rng, T_total, m_total, margin))
            if record.succeeded:
                norms.append(record.solution_norm)
            else:
                obstructed += 1
        estimate = max(norms) if norms else math.nan
        logger.info("lambda=%s: norm estimate %.6g (%d obstructed)", lam, estimate, obstructed)
        rows.append({
            "re_lambda": lam.real,
            "im_lambda": lam.imag,
            "norm_estimate": estimate,
            "obstructed_count": obstructed,
        })
    return pd.DataFrame(rows, columns=["re_lambda", "im_lambda", "norm_estimate", "obstructed_count"])


# --- COUNTEREXAMPLE ON THE AXIS ---

def counterexample_closed_form(T) -> np.ndarray:
    """||u1||^2 over [a - T, a] for u1(t) = -e^{i lambda_i t}(1 - e^{t-a}) f*."""
    T = np.asarray(T, dtype=float)
    return T - 2.0 + 2.0 * np.exp(-T) + 0.5 - 0.5 * np.exp(-2.0 * T)


def check_kernel_unit(spec: ExtensionSpec, fstar) -> np.ndarray:
    fstar = np.asarray(fstar, dtype=complex).reshape(-1)
    if fstar.size != spec.dim:
        raise NotInKernel(f"f* has dim {fstar.size}, extension has dim {spec.dim}")
    if abs(np.linalg.norm(fstar) - 1.0) > UNIT_TOL:
        raise NotInKernel(f"f* has norm {np.linalg.norm(fstar):.12g}, expected 1")
    outside = float(np.linalg.norm(fstar - spec.k_projector @ fstar))
    if outside > KERNEL_MEMBERSHIP_TOL:
        raise NotInKernel(f"f* lies {outside:.3e} away from the admissible subspace")
    return fstar


def counterexample_divergence(spec: ExtensionSpec, lambda_i: float, fstar, T_list: Sequence[float],
                              points_per_unit: int = POINTS_PER_UNIT) -> pd.DataFrame:
    """Truncated squared norms of the only candidate solution for an on-axis lambda.

    The source is f1(t) = e^{i lambda_i t} e^{t-a} f*, f2 = 0. Integrability on
    the right ray forces u2 = 0, hence u1(a) = 0, and u1 is the backward
    integral from a, whose norm grows linearly in T.
    """
    fstar = check_kernel_unit(spec, fstar)
    lam = 1j * float(lambda_i)
    rows = []
    for T in T_list:
        T = float(T)
        if T <= 0:
            raise BadGrid(f"truncation length must be positive, got {T}")
        m = int(round(points_per_unit * T)) + 1
        nodes = uniform_nodes("left", spec.a, T, m)
        profile = np.exp(1j * lambda_i * nodes) * np.exp(nodes - spec.a)
        source = spec.a1.to_eigenbasis(profile[:, None] * fstar)
        coords = particular_solution(spec.a1, lam, source, nodes[1] - nodes[0],
                                     np.zeros(spec.dim, dtype=bool))
        u1 = from_values("left", spec.a, T, spec.a1.from_eigenbasis(coords))
        rows.append({"T": T, "norm_sq": float(quad_inner(u1, u1).real)})
    logger.info("counterexample divergence at lambda_i=%s over T=%s", lambda_i, list(T_list))
    return pd.DataFrame(rows, columns=["T", "norm_sq"])


def divergence_slope(table: pd.DataFrame, min_T: float = SLOPE_MIN_T) -> float:
    """Least-squares slope of norm_sq against T over rows with T >= min_T."""
    tail = table[table["T"] >= min_T]
    if len(tail) < 2:
        raise ValueError(f"need at least two rows with T >= {min_T} to fit a slope")
    slope, _ = np.polyfit(tail["T"].to_numpy(), tail["norm_sq"].to_numpy(), 1)
    return float(slope)


# --- BUNDLED PROBE ---

def kernel_mode_source(spec: ExtensionSpec, T: float, m: int) -> TwoRayFunction:
    """f1 = e^{t-a} k, f2 = e^{-(t-b)} W k for the first basis vector k of K."""
    if spec.dim_k == 0:
        raise NotInKernel("admissible subspace K is trivial")
    k = spec.K[:, 0]
    wk = spec.W.entries @ k
    left_nodes = uniform_nodes("left", spec.a, T, m)
    right_nodes = uniform_nodes("right", spec.b, T, m)
    return TwoRayFunction(
        from_values("left", spec.a, T, np.exp(left_nodes - spec.a)[:, None] * k),
        from_values("right", spec.b, T, np.exp(spec.b - right_nodes)[:, None] * wk),
    )


@dataclass
class SpectralProbeReport:
    eigen_points: int
    eigenfunctions_found: int
    divergence: pd.DataFrame
    divergence_slope: float
    divergence_errors: Dict[float, float]
    kernel_resolve: ResolventRecord
    sweep: pd.DataFrame

    def summary(self) -> Dict[str, Any]:
        return {
            "eigen_points": self.eigen_points,
            "eigenfunctions_found": self.eigenfunctions_found,
            "divergence_slope": self.divergence_slope,
            "divergence_errors": {str(T): err for T, err in self.divergence_errors.items()},
            "kernel_resolve": self.kernel_resolve.summary(),
        }


def spectral_probe(spec: ExtensionSpec, grid: Sequence[complex], sweep_lambdas: Sequence[complex],
                   probe_count: int = 8, divergence_T: Sequence[float] = (10.0, 20.0, 40.0, 80.0, 100.0),
                   lambda_i: float = 0.0, resolve_lambda: complex = 0.5,
                   T: float = SWEEP_T, m: Optional[int] = None, seed: int = 42) -> SpectralProbeReport:
    """Point-spectrum scan, on-axis divergence, kernel-mode resolve and norm sweep."""
    m = int(round(POINTS_PER_UNIT * T)) + 1 if m is None else m
    grid = list(grid)
    found = count_eigenfunctions(spec, grid)

    divergence = counterexample_divergence(spec, lambda_i, spec.K[:, 0], divergence_T)
    closed = counterexample_closed_form(divergence["T"].to_numpy())
    errors = {float(T_): float(abs(v - c)) for T_, v, c in zip(divergence["T"], divergence["norm_sq"], closed)}
    slope = divergence_slope(divergence)

    T_kernel = T + decay_length(spec, resolve_lambda)
    kernel_source = kernel_mode_source(spec, T_kernel, matching_grid_size(T_kernel, T, m))
    kernel_record = resolve(spec, resolve_lambda, kernel_source)
    sweep = resolvent_norm_sweep(spec, sweep_lambdas, probe_count, T, m, seed)
    return SpectralProbeReport(len(grid), found, divergence, slope, errors, kernel_record, sweep)
