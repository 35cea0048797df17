"""Hermitian-operator calculus on C^n.

Eigendecompositions, sign checks, operator square roots, kernel projectors
and the propagator exp(-(A - lambda) tau). Every object here is immutable;
all functions are pure.
"""

import logging
from dataclasses import dataclass, field
from typing import Dict, Literal, Optional

import numpy as np
from scipy import linalg as la

from utils.errors import (
    DegenerateInput,
    DimensionMismatch,
    NonHermitian,
    PropagatorOverflow,
    SignViolation,
)

logger = logging.getLogger(__name__)

# --- CONFIGURATION ---
HERMITICITY_TOL = 1e-12
UNITARITY_TOL = 1e-10
SIGN_TOL = 1e-10
KER_TOL = 1e-10
OVERFLOW_CAP = 700.0
INTERSECTION_CUTOFF = 1.0 - 1e-10

Sign = Literal["nonpositive", "nonnegative"]


@dataclass(frozen=True, eq=False)
class HermitianOperator:
    """Self-adjoint matrix with its cached eigendecomposition."""

    dim: int
    entries: np.ndarray
    eigenvalues: np.ndarray
    eigenvectors: np.ndarray
    hermiticity_tol: float = HERMITICITY_TOL

    def apply_rows(self, values: np.ndarray) -> np.ndarray:
        """Apply the operator to every row of an (m, dim) sample array."""
        return values @ self.entries.T

    def to_eigenbasis(self, values: np.ndarray) -> np.ndarray:
        """Coordinates of each row in the eigenvector basis."""
        return values @ self.eigenvectors.conj()

    def from_eigenbasis(self, coords: np.ndarray) -> np.ndarray:
        return coords @ self.eigenvectors.T

    def reconstruction_error(self) -> float:
        """Relative Frobenius error of V diag(w) V^H against the entries."""
        rebuilt = (self.eigenvectors * self.eigenvalues) @ self.eigenvectors.conj().T
        scale = max(1.0, float(np.linalg.norm(self.entries)))
        return float(np.linalg.norm(rebuilt - self.entries)) / scale


@dataclass(frozen=True, eq=False)
class SignedCoefficientPair:
    """The coefficient pair (A1 <= 0, A2 >= 0)."""

    a1: HermitianOperator
    a2: HermitianOperator
    sign_tol: float = SIGN_TOL

    @property
    def dim(self) -> int:
        return self.a1.dim


@dataclass(frozen=True, eq=False)
class UnitaryMap:
    """Unitary interface parameter W."""

    dim: int
    entries: np.ndarray
    unitarity_tol: float = UNITARITY_TOL

    @property
    def adjoint(self) -> "UnitaryMap":
        return UnitaryMap(self.dim, self.entries.conj().T.copy(), self.unitarity_tol)


@dataclass(frozen=True, eq=False)
class AdmissibilityReport:
    """Admissible subspace K = ran P1 ∩ W^-1(ran P2) and its bookkeeping."""

    basis: np.ndarray
    dim_k: int
    rank_p1: int
    rank_p2: int
    maps_kernel_onto: bool
    singular_values: np.ndarray = field(default_factory=lambda: np.zeros(0))

    def to_dict(self) -> Dict:
        return {
            "dim_k": self.dim_k,
            "rank_p1": self.rank_p1,
            "rank_p2": self.rank_p2,
            "maps_kernel_onto": self.maps_kernel_onto,
        }


def _square_array(op) -> np.ndarray:
    arr = np.asarray(op, dtype=complex)
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
        raise DimensionMismatch(f"expected a square matrix, got shape {arr.shape}")
    if arr.shape[0] == 0:
        raise DegenerateInput("operator has dimension 0")
    return arr


def spectral_decompose(op, hermiticity_tol: float = HERMITICITY_TOL) -> HermitianOperator:
    """Validate Hermiticity and return the operator with ascending eigendata."""
    arr = _square_array(op)
    deviation = float(np.max(np.abs(arr - arr.conj().T)))
    if deviation > hermiticity_tol:
        raise NonHermitian(
            f"max |A - A^H| = {deviation:.3e} exceeds tolerance {hermiticity_tol:.1e}"
        )
    hermitian = 0.5 * (arr + arr.conj().T)
    eigenvalues, eigenvectors = la.eigh(hermitian)
    return HermitianOperator(
        dim=arr.shape[0],
        entries=hermitian,
        eigenvalues=np.asarray(eigenvalues, dtype=float),
        eigenvectors=eigenvectors,
        hermiticity_tol=hermiticity_tol,
    )


def default_ker_tol(op: HermitianOperator, rel_tol: float = KER_TOL) -> float:
    """Kernel threshold relative to the largest |eigenvalue| (never below rel_tol)."""
    scale = float(np.max(np.abs(op.eigenvalues))) if op.dim else 0.0
    return rel_tol * max(1.0, scale)


def kernel_mask(op: HermitianOperator, ker_tol: float) -> np.ndarray:
    return np.abs(op.eigenvalues) <= ker_tol


def kernel_projector(op: HermitianOperator, ker_tol: float = KER_TOL) -> np.ndarray:
    """Orthogonal projector onto eigenvectors with |eigenvalue| <= ker_tol."""
    if ker_tol <= 0:
        raise ValueError("ker_tol must be positive")
    vecs = op.eigenvectors[:, kernel_mask(op, ker_tol)]
    projector = vecs @ vecs.conj().T
    return 0.5 * (projector + projector.conj().T)


def projector_rank(projector: np.ndarray) -> int:
    return int(round(float(np.real(np.trace(projector)))))


def check_sign(op: HermitianOperator, sign: Sign, sign_tol: float = SIGN_TOL) -> None:
    """Raise SignViolation if an eigenvalue contradicts the declared sign."""
    if sign == "nonpositive":
        worst = float(np.max(op.eigenvalues))
        if worst > sign_tol:
            raise SignViolation(f"eigenvalue {worst:.6g} > 0 for a nonpositive operator")
    elif sign == "nonnegative":
        worst = float(np.min(op.eigenvalues))
        if worst < -sign_tol:
            raise SignViolation(f"eigenvalue {worst:.6g} < 0 for a nonnegative operator")
    else:
        raise ValueError(f"unknown sign {sign!r}")


def signed_sqrt(op: HermitianOperator, sign: Sign, sign_tol: float = SIGN_TOL) -> HermitianOperator:
    """(-A)^{1/2} for a nonpositive A, A^{1/2} for a nonnegative A."""
    check_sign(op, sign, sign_tol)
    flipped = -op.eigenvalues if sign == "nonpositive" else op.eigenvalues
    # round-off below zero
    roots = np.sqrt(np.clip(flipped, 0.0, None))
    order = np.argsort(roots, kind="stable")
    vecs = op.eigenvectors[:, order]
    roots = roots[order]
    entries = (vecs * roots) @ vecs.conj().T
    return HermitianOperator(
        dim=op.dim,
        entries=0.5 * (entries + entries.conj().T),
        eigenvalues=roots,
        eigenvectors=vecs,
        hermiticity_tol=op.hermiticity_tol,
    )


def make_coefficient_pair(a1, a2, sign_tol: float = SIGN_TOL) -> SignedCoefficientPair:
    """Build (A1, A2) from arrays or operators, checking A1 <= 0 <= A2."""
    op1 = a1 if isinstance(a1, HermitianOperator) else spectral_decompose(a1)
    op2 = a2 if isinstance(a2, HermitianOperator) else spectral_decompose(a2)
    if op1.dim != op2.dim:
        raise DimensionMismatch(f"A1 has dim {op1.dim}, A2 has dim {op2.dim}")
    check_sign(op1, "nonpositive", sign_tol)
    check_sign(op2, "nonnegative", sign_tol)
    return SignedCoefficientPair(op1, op2, sign_tol)


def make_unitary(entries, unitarity_tol: float = UNITARITY_TOL) -> UnitaryMap:
    arr = _square_array(entries)
    deviation = float(np.max(np.abs(arr.conj().T @ arr - np.eye(arr.shape[0]))))
    if deviation > unitarity_tol:
        raise ValueError(f"|W*W - I| = {deviation:.3e} exceeds tolerance {unitarity_tol:.1e}")
    return UnitaryMap(arr.shape[0], arr, unitarity_tol)


def propagator_diagonal(op: HermitianOperator, lam: complex, tau, cap: float = OVERFLOW_CAP,
                        modes: Optional[np.ndarray] = None) -> np.ndarray:
    """Eigenbasis entries exp(-(alpha - lambda) tau).

    `tau` may be a scalar or an array; the result has shape tau.shape + (k,),
    where k is the number of selected eigen-modes (all of them by default).
    """
    tau = np.asarray(tau, dtype=float)
    alphas = op.eigenvalues if modes is None else op.eigenvalues[modes]
    exponents = -np.multiply.outer(tau, alphas - lam)
    if exponents.size and float(np.max(exponents.real)) > cap:
        raise PropagatorOverflow(
            f"exponent real part {float(np.max(exponents.real)):.1f} exceeds cap {cap:g}"
        )
    return np.exp(exponents)


def propagator(op: HermitianOperator, lam: complex, tau: float, cap: float = OVERFLOW_CAP) -> np.ndarray:
    """exp(-(A - lambda) tau) via the eigendecomposition."""
    diag = propagator_diagonal(op, lam, tau, cap)
    return (op.eigenvectors * diag) @ op.eigenvectors.conj().T


def subspace_intersection(left: np.ndarray, map_: np.ndarray, right: np.ndarray,
                          cutoff: float = INTERSECTION_CUTOFF) -> tuple:
    """Orthonormal basis of ran(left) ∩ map^-1(ran(right)) for projectors left, right."""
    _, singular, vh = la.svd(right @ map_ @ left)
    keep = singular > cutoff
    return vh.conj().T[:, keep], singular


def check_admissible_W(W: UnitaryMap, p1: np.ndarray, p2: np.ndarray) -> AdmissibilityReport:
    """Admissible subspace of traces u1(a) in ker A1 with W u1(a) in ker A2."""
    if not (W.dim == p1.shape[0] == p2.shape[0]):
        raise DimensionMismatch(
            f"W has dim {W.dim}, projectors have dims {p1.shape[0]} and {p2.shape[0]}"
        )
    basis, singular = subspace_intersection(p1, W.entries, p2)
    rank_p1, rank_p2 = projector_rank(p1), projector_rank(p2)
    dim_k = basis.shape[1]
    report = AdmissibilityReport(
        basis=basis,
        dim_k=dim_k,
        rank_p1=rank_p1,
        rank_p2=rank_p2,
        maps_kernel_onto=dim_k == rank_p1 == rank_p2,
        singular_values=singular,
    )
    logger.debug("admissible subspace: %s", report.to_dict())
    return report
