"""Preset two-ray models and random generators for the property suites."""

from typing import Callable, Dict, Tuple

import numpy as np
from scipy.stats import unitary_group

from services.extension import ExtensionSpec, build_from_arrays
from utils.ray_function import TwoRayFunction, make_uniform

# --- CONFIGURATION ---
PRESET_A = -1.0
PRESET_B = 1.0
EIGEN_RANGE = (0.5, 3.0)
DECAY_RATES = (1.0, 2.0)


def s1_model(a: float = PRESET_A, b: float = PRESET_B, phi: float = np.pi / 2) -> ExtensionSpec:
    """Scalar model: A1 = A2 = 0, W = e^{i phi}."""
    return build_from_arrays([[0.0]], [[0.0]], [[np.exp(1j * phi)]], a, b)


def s2_model(a: float = PRESET_A, b: float = PRESET_B) -> ExtensionSpec:
    """A1 = diag(0, -1), A2 = diag(0, 2), W = I."""
    return build_from_arrays(np.diag([0.0, -1.0]), np.diag([0.0, 2.0]), np.eye(2), a, b)


PRESETS: Dict[str, Callable[[], ExtensionSpec]] = {
    "S1": s1_model,
    "S2": s2_model,
}


def get_preset(name: str) -> ExtensionSpec:
    """Return a preset model by name"""
    try:
        return PRESETS[name]()
    except KeyError:
        raise KeyError(f"unknown preset {name!r}; choose from {sorted(PRESETS)}") from None


def random_unitary(rng: np.random.Generator, dim: int) -> np.ndarray:
    return unitary_group.rvs(dim, random_state=rng) if dim > 1 else np.array([[np.exp(2j * np.pi * rng.random())]])


def random_hermitian(rng: np.random.Generator, dim: int) -> np.ndarray:
    z = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    return 0.5 * (z + z.conj().T)


def random_signed(rng: np.random.Generator, dim: int, sign: int, kernel_rank: int) -> np.ndarray:
    """Hermitian matrix with sign(eigenvalues) = sign and exactly kernel_rank zero eigenvalues."""
    if not 0 <= kernel_rank <= dim:
        raise ValueError(f"kernel rank {kernel_rank} out of range for dim {dim}")
    eigs = np.zeros(dim)
    eigs[kernel_rank:] = sign * rng.uniform(*EIGEN_RANGE, size=dim - kernel_rank)
    u = random_unitary(rng, dim)
    matrix = (u * eigs) @ u.conj().T
    return 0.5 * (matrix + matrix.conj().T)


def injective_a1_pair(rng: np.random.Generator, dim: int) -> Tuple[np.ndarray, np.ndarray]:
    """A1 < 0 (trivial kernel) with an arbitrary A2 >= 0."""
    return random_signed(rng, dim, -1, 0), random_signed(rng, dim, 1, int(rng.integers(0, dim + 1)))


def unequal_kernel_pair(rng: np.random.Generator, dim: int) -> Tuple[np.ndarray, np.ndarray]:
    """A1 <= 0 and A2 >= 0 with kernels of different, nonzero dimension (dim >= 3)."""
    if dim < 3:
        raise ValueError("need dim >= 3 for two distinct nonzero kernel ranks below dim")
    r1, r2 = rng.choice(np.arange(1, dim + 1), size=2, replace=False)
    return random_signed(rng, dim, -1, int(r1)), random_signed(rng, dim, 1, int(r2))


def random_vector(rng: np.random.Generator, dim: int) -> np.ndarray:
    return rng.normal(size=dim) + 1j * rng.normal(size=dim)


def trace_extension(spec: ExtensionSpec, u1a, u2b, rng: np.random.Generator,
                    T: float, m: int) -> TwoRayFunction:
    """Smooth decaying function with the given traces and random interior shape."""
    u1a = np.asarray(u1a, dtype=complex)
    u2b = np.asarray(u2b, dtype=complex)
    s1, s2 = rng.uniform(*DECAY_RATES, size=2)
    v1, v2 = random_vector(rng, spec.dim), random_vector(rng, spec.dim)
    a, b = spec.a, spec.b
    left = make_uniform("left", a, T, m, lambda t: np.exp(s1 * (t - a)) * (u1a + (t - a) * v1))
    right = make_uniform("right", b, T, m, lambda t: np.exp(-s2 * (t - b)) * (u2b + (t - b) * v2))
    return TwoRayFunction(left, right)


def random_domain_function(spec: ExtensionSpec, rng: np.random.Generator, T: float, m: int) -> TwoRayFunction:
    """Element of D(L_W): u1(a) in K, u2(b) = W u1(a)."""
    u1a = spec.K @ random_vector(rng, spec.dim_k) if spec.dim_k else np.zeros(spec.dim, dtype=complex)
    return trace_extension(spec, u1a, spec.W.entries @ u1a, rng, T, m)


def random_nondomain_function(spec: ExtensionSpec, rng: np.random.Generator, T: float, m: int) -> TwoRayFunction:
    """Decaying function with unconstrained traces."""
    return trace_extension(spec, random_vector(rng, spec.dim), random_vector(rng, spec.dim), rng, T, m)


def random_relaxed_adjoint_function(spec: ExtensionSpec, rng: np.random.Generator,
                                    T: float, m: int) -> TwoRayFunction:
    """Decaying v whose gap v1(a) - W* v2(b) is random but orthogonal to K."""
    v1a = random_vector(rng, spec.dim)
    gap = random_vector(rng, spec.dim)
    gap -= spec.K @ (spec.K.conj().T @ gap)
    return trace_extension(spec, v1a, spec.W.entries @ (v1a - gap), rng, T, m)


def random_trace_pairs(spec: ExtensionSpec, rng: np.random.Generator, count: int):
    """Trace pairs (u1(a), u2(b)); even indices are exactly coupled, odd ones random."""
    pairs = []
    for i in range(count):
        u1a = random_vector(rng, spec.dim)
        u2b = spec.W.entries @ u1a if i % 2 == 0 else random_vector(rng, spec.dim)
        pairs.append((u1a, u2b))
    return pairs
