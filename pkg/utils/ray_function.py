"""Grid-sampled vector functions on the truncated rays [a - T, a] and [b, b + T]."""

import logging
from dataclasses import dataclass
from pathlib import Path
from typing import Callable, Literal, Tuple, Union

import numpy as np
import pandas as pd

from utils.errors import BadGrid, GridMismatch, GridTooCoarse

logger = logging.getLogger(__name__)

# --- CONFIGURATION ---
DEFAULT_T = 40.0
POINTS_PER_UNIT = 400
GRID_RTOL = 1e-12

Ray = Literal["left", "right"]


def default_grid_size(T: float) -> int:
    """m = 400 T + 1 points per truncated ray."""
    return int(round(POINTS_PER_UNIT * T)) + 1


@dataclass(frozen=True, eq=False)
class RayFunction:
    """Samples of a C^dim-valued function on one truncated ray.

    `values` has shape (m, dim); row k is the sample at `nodes[k]`.
    Left-ray nodes end at the endpoint a, right-ray nodes start at b.
    """

    ray: str
    endpoint: float
    T: float
    nodes: np.ndarray
    values: np.ndarray

    def __post_init__(self):
        if self.ray not in ("left", "right"):
            raise BadGrid(f"ray must be 'left' or 'right', got {self.ray!r}")
        if not self.T > 0:
            raise BadGrid(f"truncation length must be positive, got {self.T}")
        nodes = self.nodes
        if nodes.ndim != 1 or nodes.size < 3:
            raise BadGrid("need at least 3 grid nodes")
        if not np.all(np.diff(nodes) > 0):
            raise BadGrid("nodes must be strictly increasing")
        anchor = nodes[-1] if self.ray == "left" else nodes[0]
        if abs(anchor - self.endpoint) > GRID_RTOL * max(1.0, abs(self.endpoint)):
            raise BadGrid(f"{self.ray} ray nodes must include the endpoint {self.endpoint}")
        if self.values.ndim != 2 or self.values.shape[0] != nodes.size:
            raise BadGrid(f"values shape {self.values.shape} does not match {nodes.size} nodes")
        if not np.all(np.isfinite(self.values)):
            raise BadGrid("values contain NaN or Inf")

    @property
    def m(self) -> int:
        return self.nodes.size

    @property
    def dim(self) -> int:
        return self.values.shape[1]

    @property
    def spacing(self) -> float:
        return float(self.nodes[1] - self.nodes[0])

    @property
    def endpoint_value(self) -> np.ndarray:
        return self.values[-1] if self.ray == "left" else self.values[0]

    @property
    def far_value(self) -> np.ndarray:
        """Sample at the truncation point, away from the endpoint."""
        return self.values[0] if self.ray == "left" else self.values[-1]

    def with_values(self, values: np.ndarray) -> "RayFunction":
        return RayFunction(self.ray, self.endpoint, self.T, self.nodes, np.asarray(values, dtype=complex))

    def norm(self) -> float:
        return float(np.sqrt(max(quad_inner(self, self).real, 0.0)))


@dataclass(frozen=True, eq=False)
class TwoRayFunction:
    """u = (u1, u2) on the left and right truncated rays."""

    left: RayFunction
    right: RayFunction

    def __post_init__(self):
        if self.left.ray != "left" or self.right.ray != "right":
            raise BadGrid("components must be a left ray and a right ray")
        if self.left.dim != self.right.dim:
            raise BadGrid(f"component dims differ: {self.left.dim} vs {self.right.dim}")

    @property
    def dim(self) -> int:
        return self.left.dim

    def map_values(self, fn: Callable[[np.ndarray], np.ndarray]) -> "TwoRayFunction":
        return TwoRayFunction(self.left.with_values(fn(self.left.values)),
                              self.right.with_values(fn(self.right.values)))

    def norm(self) -> float:
        return float(np.sqrt(max(inner(self, self).real, 0.0)))


def uniform_nodes(ray: Ray, endpoint: float, T: float, m: int) -> np.ndarray:
    if not T > 0 or m < 3:
        raise BadGrid(f"need T > 0 and m >= 3, got T={T}, m={m}")
    if ray == "left":
        nodes = np.linspace(endpoint - T, endpoint, m)
        nodes[-1] = endpoint
    elif ray == "right":
        nodes = np.linspace(endpoint, endpoint + T, m)
        nodes[0] = endpoint
    else:
        raise BadGrid(f"ray must be 'left' or 'right', got {ray!r}")
    return nodes


def make_uniform(ray: Ray, endpoint: float, T: float, m: int,
                 sampler: Callable[[np.ndarray], np.ndarray]) -> RayFunction:
    """Sample `sampler` on a uniform grid of m nodes covering the truncated ray.

    The sampler is called once with the nodes as an (m, 1) column and must
    broadcast to an (m, dim) array.
    """
    nodes = uniform_nodes(ray, endpoint, T, m)
    values = np.asarray(sampler(nodes[:, None]), dtype=complex)
    values = np.broadcast_to(values, (m, values.shape[-1] if values.ndim == 2 else 1)).copy()
    return RayFunction(ray, float(endpoint), float(T), nodes, values)


def from_values(ray: Ray, endpoint: float, T: float, values: np.ndarray) -> RayFunction:
    """Wrap an (m, dim) array sampled on the uniform grid of the ray."""
    values = np.asarray(values, dtype=complex)
    if values.ndim == 1:
        values = values[:, None]
    nodes = uniform_nodes(ray, endpoint, T, values.shape[0])
    return RayFunction(ray, float(endpoint), float(T), nodes, values)


def zeros_like(u: RayFunction) -> RayFunction:
    return u.with_values(np.zeros_like(u.values))


# --- QUADRATURE ---

def simpson_weights(m: int, h: float, trapezoid_at: Literal["start", "end"] = "start") -> np.ndarray:
    """Composite Simpson weights on m uniform points.

    With an odd number of intervals one interval is handled by the trapezoid
    rule, at the start or at the end of the grid.
    """
    if m < 2:
        raise GridTooCoarse("quadrature needs at least 2 points")
    intervals = m - 1
    weights = np.zeros(m)
    if intervals % 2 == 0:
        weights[0:-1:2] += 1.0
        weights[1::2] += 4.0
        weights[2::2] += 1.0
        return weights * h / 3.0
    if m == 2:
        return np.array([h / 2, h / 2])
    simpson = simpson_weights(m - 1, h)
    if trapezoid_at == "start":
        weights[1:] += simpson
        weights[:2] += h / 2
    else:
        weights[:-1] += simpson
        weights[-2:] += h / 2
    return weights


def ray_weights(u: RayFunction) -> np.ndarray:
    # the fallback trapezoid goes to the far end, where test functions decay
    far = "start" if u.ray == "left" else "end"
    return simpson_weights(u.m, u.spacing, far)


def _check_same_grid(u: RayFunction, v: RayFunction) -> None:
    if u.ray != v.ray:
        raise GridMismatch(f"rays differ: {u.ray} vs {v.ray}")
    if u.dim != v.dim:
        raise GridMismatch(f"dims differ: {u.dim} vs {v.dim}")
    if u.m != v.m or not np.allclose(u.nodes, v.nodes, rtol=0, atol=GRID_RTOL * max(1.0, u.T)):
        raise GridMismatch("functions are sampled on different grids")


def quad_inner(u: RayFunction, v: RayFunction) -> complex:
    """Quadrature of (u(t), v(t)) over the truncated ray; linear in u, conjugate in v."""
    _check_same_grid(u, v)
    integrand = np.sum(u.values * v.values.conj(), axis=1)
    return complex(ray_weights(u) @ integrand)


def inner(u: TwoRayFunction, v: TwoRayFunction) -> complex:
    """L2 inner product on the direct sum of both rays."""
    return quad_inner(u.left, v.left) + quad_inner(u.right, v.right)


# --- DIFFERENTIATION ---

def differentiate(u: RayFunction) -> RayFunction:
    """Fourth-order finite differences: central inside, one-sided at both ends."""
    if u.m < 5:
        raise GridTooCoarse(f"differentiation needs at least 5 nodes, got {u.m}")
    steps = np.diff(u.nodes)
    h = u.spacing
    if not np.allclose(steps, h, rtol=1e-9, atol=0):
        raise BadGrid("differentiation requires a uniform grid")
    f = u.values
    d = np.empty_like(f)
    d[2:-2] = ((f[:-4] - f[4:]) + 8.0 * (f[3:-1] - f[1:-3])) / (12.0 * h)
    d[0] = (-25 * f[0] + 48 * f[1] - 36 * f[2] + 16 * f[3] - 3 * f[4]) / (12.0 * h)
    d[1] = (-3 * f[0] - 10 * f[1] + 18 * f[2] - 6 * f[3] + f[4]) / (12.0 * h)
    d[-1] = (25 * f[-1] - 48 * f[-2] + 36 * f[-3] - 16 * f[-4] + 3 * f[-5]) / (12.0 * h)
    d[-2] = (3 * f[-1] + 10 * f[-2] - 18 * f[-3] + 6 * f[-4] - f[-5]) / (12.0 * h)
    return u.with_values(d)


def trace(u: TwoRayFunction) -> Tuple[np.ndarray, np.ndarray]:
    """Boundary values (u1(a), u2(b))."""
    return u.left.endpoint_value.copy(), u.right.endpoint_value.copy()


def far_end_magnitude(u: TwoRayFunction) -> float:
    return float(max(np.linalg.norm(u.left.far_value), np.linalg.norm(u.right.far_value)))


def linear_combination(alpha: complex, u: TwoRayFunction, beta: complex, v: TwoRayFunction) -> TwoRayFunction:
    _check_same_grid(u.left, v.left)
    _check_same_grid(u.right, v.right)
    return TwoRayFunction(
        u.left.with_values(alpha * u.left.values + beta * v.left.values),
        u.right.with_values(alpha * u.right.values + beta * v.right.values),
    )


def mirror(u: TwoRayFunction) -> TwoRayFunction:
    """Reflection t -> -t; the left ray becomes the right ray and vice versa."""
    left = RayFunction("left", -u.right.endpoint, u.right.T,
                       -u.right.nodes[::-1].copy(), u.right.values[::-1].copy())
    right = RayFunction("right", -u.left.endpoint, u.left.T,
                        -u.left.nodes[::-1].copy(), u.left.values[::-1].copy())
    return TwoRayFunction(left, right)


# --- CSV ---

def to_frame(u: RayFunction) -> pd.DataFrame:
    columns = {"t": u.nodes}
    for j in range(u.dim):
        columns[f"re_v{j + 1}"] = u.values[:, j].real
        columns[f"im_v{j + 1}"] = u.values[:, j].imag
    return pd.DataFrame(columns)


def write_csv(u: RayFunction, path: Union[str, Path]) -> Path:
    """Write t, re(v_1), im(v_1), ... with a leading metadata line."""
    path = Path(path)
    with open(path, "w", newline="", encoding="utf-8") as handle:
        handle.write(f"# ray={u.ray},endpoint={u.endpoint!r},T={u.T!r}\n")
        to_frame(u).to_csv(handle, index=False, float_format="%.17g")
    return path


def read_csv(path: Union[str, Path]) -> RayFunction:
    path = Path(path)
    with open(path, encoding="utf-8") as handle:
        header = handle.readline().lstrip("#").strip()
    meta = dict(item.split("=", 1) for item in header.split(","))
    frame = pd.read_csv(path, comment="#", float_precision="round_trip")
    dim = (frame.shape[1] - 1) // 2
    values = np.column_stack([
        frame[f"re_v{j + 1}"].to_numpy() + 1j * frame[f"im_v{j + 1}"].to_numpy() for j in range(dim)
    ])
    return RayFunction(meta["ray"], float(meta["endpoint"]), float(meta["T"]),
                       frame["t"].to_numpy(dtype=float), values)
