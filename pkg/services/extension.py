"""Extensions L_W of the two-ray operator l(u) = (u1' + A1 u1, u2' + A2 u2).

An extension is fixed by a unitary W through the interface conditions

    u2(b) = W u1(a),   u1(a) in ker A1,   u2(b) in ker A2,

so only the restriction of W to the admissible subspace
K = ker A1 ∩ W^-1(ker A2) affects the domain. This module builds and validates
the extension, applies l and its formal adjoint l+(v) = (-v1' + A1 v1, -v2' + A2 v2),
and measures the normality and interface residuals.
"""

import logging
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional

import numpy as np

from services.boundary_theory import DECAY_TOL, BoundaryData, require_decay
from utils.data_processing import decode_complex_matrix, encode_complex_matrix
from utils.errors import DimensionMismatch, GridMismatch, InvalidInterval
from utils.operator_core import (
    AdmissibilityReport,
    HermitianOperator,
    SignedCoefficientPair,
    UnitaryMap,
    check_admissible_W,
    check_sign,
    default_ker_tol,
    kernel_projector,
    make_coefficient_pair,
    make_unitary,
    signed_sqrt,
    spectral_decompose,
)
from utils.ray_function import TwoRayFunction, differentiate, inner, trace

logger = logging.getLogger(__name__)

# --- CONFIGURATION ---
DOMAIN_TOL = 1e-8
NORMALITY_FACTOR = 2.0
ENDPOINT_TOL = 1e-9


@dataclass(frozen=True, eq=False)
class ExtensionSpec:
    """(A1, A2, W, a, b) with kernel projectors and admissible subspace K."""

    coeffs: SignedCoefficientPair
    W: UnitaryMap
    a: float
    b: float
    p1: np.ndarray
    p2: np.ndarray
    K: np.ndarray
    ker_tol: float
    admissibility: AdmissibilityReport
    sqrt_neg_a1: HermitianOperator
    sqrt_a2: HermitianOperator
    normal_extension_possible: bool
    maximal_normal: bool

    @property
    def dim(self) -> int:
        return self.coeffs.dim

    @property
    def a1(self) -> HermitianOperator:
        return self.coeffs.a1

    @property
    def a2(self) -> HermitianOperator:
        return self.coeffs.a2

    @property
    def dim_k(self) -> int:
        return self.K.shape[1]

    @property
    def k_projector(self) -> np.ndarray:
        return self.K @ self.K.conj().T

    def summary(self) -> Dict[str, Any]:
        return {
            "dim": self.dim,
            "a": self.a,
            "b": self.b,
            "ker_tol": self.ker_tol,
            "normal_extension_possible": self.normal_extension_possible,
            "maximal_normal": self.maximal_normal,
            **self.admissibility.to_dict(),
        }


@dataclass
class DomainReport:
    in_domain: bool
    reasons: List[str] = field(default_factory=list)
    measures: Dict[str, float] = field(default_factory=dict)


@dataclass
class NormalityReport:
    lhs_sq_diff: float
    boundary_formula: float
    residual: float
    factor: float = NORMALITY_FACTOR


@dataclass
class AdjointDomainReport:
    """Membership of v in the printed adjoint domain and in the K-relaxed one."""

    printed: bool
    k_relaxed: bool
    printed_mismatch: float
    k_mismatch: float
    traces_in_kernels: bool


def build_extension(coeffs: SignedCoefficientPair, W: UnitaryMap, a: float, b: float,
                    ker_tol: Optional[float] = None) -> ExtensionSpec:
    """Build L_W: projectors, admissible subspace and the maximal-normal and existence flags."""
    if W.dim != coeffs.dim:
        raise DimensionMismatch(f"W has dim {W.dim}, coefficients have dim {coeffs.dim}")
    if not a < b:
        raise InvalidInterval(f"need a < b, got a={a}, b={b}")
    check_sign(coeffs.a1, "nonpositive", coeffs.sign_tol)
    check_sign(coeffs.a2, "nonnegative", coeffs.sign_tol)
    if ker_tol is None:
        ker_tol = max(default_ker_tol(coeffs.a1), default_ker_tol(coeffs.a2))
    p1 = kernel_projector(coeffs.a1, ker_tol)
    p2 = kernel_projector(coeffs.a2, ker_tol)
    report = check_admissible_W(W, p1, p2)
    possible = report.rank_p1 == report.rank_p2 > 0
    maximal = report.rank_p1 == 0 or report.rank_p2 == 0
    if not possible:
        logger.info("kernel ranks %d and %d: no normal extension exists",
                    report.rank_p1, report.rank_p2)
    return ExtensionSpec(
        coeffs=coeffs,
        W=W,
        a=float(a),
        b=float(b),
        p1=p1,
        p2=p2,
        K=report.basis,
        ker_tol=float(ker_tol),
        admissibility=report,
        sqrt_neg_a1=signed_sqrt(coeffs.a1, "nonpositive", coeffs.sign_tol),
        sqrt_a2=signed_sqrt(coeffs.a2, "nonnegative", coeffs.sign_tol),
        normal_extension_possible=possible,
        maximal_normal=maximal,
    )


def build_from_arrays(a1, a2, w, a: float, b: float, ker_tol: Optional[float] = None) -> ExtensionSpec:
    return build_extension(make_coefficient_pair(a1, a2), make_unitary(w), a, b, ker_tol)


def check_compatible(spec: ExtensionSpec, u: TwoRayFunction) -> None:
    if u.dim != spec.dim:
        raise GridMismatch(f"function has dim {u.dim}, extension has dim {spec.dim}")
    if abs(u.left.endpoint - spec.a) > ENDPOINT_TOL or abs(u.right.endpoint - spec.b) > ENDPOINT_TOL:
        raise GridMismatch(
            f"rays end at ({u.left.endpoint}, {u.right.endpoint}), extension uses ({spec.a}, {spec.b})"
        )


def apply_expression(spec: ExtensionSpec, u: TwoRayFunction, variant: str = "direct") -> TwoRayFunction:
    """l(u) for variant 'direct', l+(u) for variant 'adjoint'."""
    check_compatible(spec, u)
    if variant not in ("direct", "adjoint"):
        raise ValueError(f"unknown variant {variant!r}")
    sign = 1.0 if variant == "direct" else -1.0
    du1, du2 = differentiate(u.left), differentiate(u.right)
    return TwoRayFunction(
        u.left.with_values(sign * du1.values + spec.a1.apply_rows(u.left.values)),
        u.right.with_values(sign * du2.values + spec.a2.apply_rows(u.right.values)),
    )


def domain_check(spec: ExtensionSpec, u: TwoRayFunction, tol: float = DOMAIN_TOL) -> DomainReport:
    """Tolerance-based membership test for D(L_W)."""
    check_compatible(spec, u)
    reasons: List[str] = []
    eye = np.eye(spec.dim)
    u1a, u2b = trace(u)

    far = max(np.linalg.norm(u.left.far_value), np.linalg.norm(u.right.far_value))
    lu = apply_expression(spec, u)
    derivative_norm = float(np.sqrt(inner(lu, lu).real))
    if far > tol or not np.isfinite(derivative_norm):
        reasons.append("decay")
    left_kernel = float(np.linalg.norm((eye - spec.p1) @ u1a))
    right_kernel = float(np.linalg.norm((eye - spec.p2) @ u2b))
    coupling = float(np.linalg.norm(u2b - spec.W.entries @ u1a))
    if left_kernel > tol:
        reasons.append("left kernel")
    if right_kernel > tol:
        reasons.append("right kernel")
    if coupling > tol:
        reasons.append("coupling")
    return DomainReport(
        in_domain=not reasons,
        reasons=reasons,
        measures={
            "far_end": float(far),
            "left_kernel": left_kernel,
            "right_kernel": right_kernel,
            "coupling": coupling,
        },
    )


def boundary_formula(spec: ExtensionSpec, u1a: np.ndarray, u2b: np.ndarray) -> float:
    """-||(-A1)^{1/2} u1(a)||^2 - ||A2^{1/2} u2(b)||^2 = (A1 u1a, u1a) - (A2 u2b, u2b)."""
    left = np.linalg.norm(spec.sqrt_neg_a1.entries @ u1a) ** 2
    right = np.linalg.norm(spec.sqrt_a2.entries @ u2b) ** 2
    return float(-left - right)


def normality_residual(spec: ExtensionSpec, u: TwoRayFunction) -> NormalityReport:
    """Compare ||l(u)||^2 - ||l+(u)||^2 with twice the boundary formula."""
    require_decay(u, DECAY_TOL)
    lu = apply_expression(spec, u, "direct")
    lpu = apply_expression(spec, u, "adjoint")
    lhs = float(inner(lu, lu).real - inner(lpu, lpu).real)
    u1a, u2b = trace(u)
    formula = boundary_formula(spec, u1a, u2b)
    return NormalityReport(
        lhs_sq_diff=lhs,
        boundary_formula=formula,
        residual=abs(lhs - NORMALITY_FACTOR * formula),
    )


def selfadjoint_bc_residual_from_traces(spec: ExtensionSpec, u1a, u2b) -> float:
    """||(W - E) y1 + i (W + E) y2||, which equals sqrt 2 ||u2(b) - W u1(a)||."""
    data = BoundaryData.from_traces(u1a, u2b)
    w = spec.W.entries
    eye = np.eye(spec.dim)
    return float(np.linalg.norm((w - eye) @ data.y1 + 1j * (w + eye) @ data.y2))


def selfadjoint_bc_residual(spec: ExtensionSpec, u: TwoRayFunction) -> float:
    return selfadjoint_bc_residual_from_traces(spec, *trace(u))


def coupling_mismatch(spec: ExtensionSpec, u1a, u2b) -> float:
    return float(np.linalg.norm(np.asarray(u2b) - spec.W.entries @ np.asarray(u1a)))


def adjoint_green_residual(spec: ExtensionSpec, u: TwoRayFunction, v: TwoRayFunction) -> float:
    """|(l(u), v) - (u, l+(v))| by quadrature."""
    require_decay(u, DECAY_TOL, "u")
    require_decay(v, DECAY_TOL, "v")
    form = inner(apply_expression(spec, u, "direct"), v) - inner(u, apply_expression(spec, v, "adjoint"))
    return float(abs(form))


def adjoint_domain_report(spec: ExtensionSpec, v: TwoRayFunction, tol: float = DOMAIN_TOL) -> AdjointDomainReport:
    """Check v1(a) = W* v2(b) in full and along K only."""
    check_compatible(spec, v)
    v1a, v2b = trace(v)
    gap = v1a - spec.W.entries.conj().T @ v2b
    eye = np.eye(spec.dim)
    in_kernels = bool(np.linalg.norm((eye - spec.p1) @ v1a) <= tol
                      and np.linalg.norm((eye - spec.p2) @ v2b) <= tol)
    printed_gap = float(np.linalg.norm(gap))
    k_gap = float(np.linalg.norm(spec.K.conj().T @ gap))
    return AdjointDomainReport(
        printed=printed_gap <= tol and in_kernels,
        k_relaxed=k_gap <= tol,
        printed_mismatch=printed_gap,
        k_mismatch=k_gap,
        traces_in_kernels=in_kernels,
    )


def mirror_extension(spec: ExtensionSpec) -> ExtensionSpec:
    """Extension seen through t -> -t: A1 -> -A2, A2 -> -A1, W -> W*, (a, b) -> (-b, -a)."""
    coeffs = make_coefficient_pair(
        spectral_decompose(-spec.a2.entries), spectral_decompose(-spec.a1.entries), spec.coeffs.sign_tol
    )
    return build_extension(coeffs, spec.W.adjoint, -spec.b, -spec.a, spec.ker_tol)


def spec_to_document(spec: ExtensionSpec) -> Dict[str, Any]:
    return {
        "dim": spec.dim,
        "a": spec.a,
        "b": spec.b,
        "A1": encode_complex_matrix(spec.a1.entries),
        "A2": encode_complex_matrix(spec.a2.entries),
        "W": encode_complex_matrix(spec.W.entries),
    }


def spec_from_document(doc: Dict[str, Any], ker_tol: Optional[float] = None) -> ExtensionSpec:
    dim = int(doc["dim"])
    return build_from_arrays(
        decode_complex_matrix(doc["A1"], dim),
        decode_complex_matrix(doc["A2"], dim),
        decode_complex_matrix(doc["W"], dim),
        float(doc["a"]),
        float(doc["b"]),
        ker_tol,
    )
