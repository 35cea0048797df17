import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from utils.errors import BadGrid, GridMismatch, GridTooCoarse
from utils.ray_function import (
    RayFunction,
    TwoRayFunction,
    differentiate,
    from_values,
    make_uniform,
    mirror,
    quad_inner,
    read_csv,
    simpson_weights,
    trace,
    write_csv,
)


def _left(fn, a=0.0, T=40.0, m=4001):
    return make_uniform("left", a, T, m, fn)


def test_make_uniform_left_constant():
    u = make_uniform("left", 0.0, 1.0, 3, lambda t: np.ones_like(t))
    np.testing.assert_allclose(u.nodes, [-1.0, -0.5, 0.0])
    np.testing.assert_allclose(u.values[:, 0], 1.0)


def test_make_uniform_right_identity():
    u = make_uniform("right", 1.0, 2.0, 5, lambda t: t)
    np.testing.assert_allclose(u.values[:, 0], [1.0, 1.5, 2.0, 2.5, 3.0])


def test_trace_of_left_exponential_is_one():
    u = make_uniform("left", 2.0, 10.0, 101, lambda t: np.exp(t - 2.0))
    assert u.endpoint_value[0] == pytest.approx(1.0)


def test_bad_grids_rejected():
    with pytest.raises(BadGrid):
        make_uniform("left", 0.0, -1.0, 11, lambda t: t)
    with pytest.raises(BadGrid):
        make_uniform("left", 0.0, 1.0, 2, lambda t: t)
    with pytest.raises(BadGrid):
        RayFunction("left", 0.0, 1.0, np.array([-1.0, -0.5, 0.0]), np.array([[1.0], [np.nan], [0.0]]))
    with pytest.raises(BadGrid):
        RayFunction("right", 0.0, 1.0, np.array([0.5, 0.75, 1.0]), np.zeros((3, 1)))


def test_quad_inner_exponential():
    u = _left(lambda t: np.exp(t))
    assert abs(quad_inner(u, u) - 0.5) <= 1e-8


def test_quad_inner_orthogonal_constants():
    u = make_uniform("left", 0.0, 1.0, 11, lambda t: np.array([1.0, 0.0]) * np.ones_like(t))
    v = make_uniform("left", 0.0, 1.0, 11, lambda t: np.array([0.0, 1.0]) * np.ones_like(t))
    assert quad_inner(u, v) == 0


def test_quad_inner_counterexample_profile():
    u = _left(lambda t: 1.0 - np.exp(t), T=10.0, m=8001)
    assert abs(quad_inner(u, u).real - 8.500091) <= 1e-5


def test_quad_inner_grid_mismatch():
    with pytest.raises(GridMismatch):
        quad_inner(_left(np.exp, m=101), _left(np.exp, m=201))


def test_simpson_weights_odd_interval_fallback():
    w = simpson_weights(4, 1.0, "end")
    assert w.sum() == pytest.approx(3.0)
    np.testing.assert_allclose(simpson_weights(3, 0.5), [1 / 6, 4 / 6, 1 / 6])


def test_quadrature_refinement():
    exact = 1.0 - np.cos(2.0)
    errors = []
    for m in (11, 21, 41):
        u = make_uniform("right", 0.0, 2.0, m, np.sin)
        v = make_uniform("right", 0.0, 2.0, m, np.ones_like)
        errors.append(abs(quad_inner(u, v).real - exact))
    assert errors[0] / errors[1] >= 8.0
    assert errors[1] / errors[2] >= 8.0


@settings(max_examples=30, deadline=None)
@given(st.lists(st.complex_numbers(max_magnitude=10, allow_nan=False, allow_infinity=False), min_size=9, max_size=9),
       st.lists(st.complex_numbers(max_magnitude=10, allow_nan=False, allow_infinity=False), min_size=9, max_size=9))
def test_quad_inner_conjugate_symmetric(xs, ys):
    u = from_values("right", 0.0, 1.0, np.array(xs))
    v = from_values("right", 0.0, 1.0, np.array(ys))
    assert abs(quad_inner(u, v) - np.conj(quad_inner(v, u))) <= 1e-12 * max(1.0, abs(quad_inner(u, v)))
    assert quad_inner(u, u).real >= 0
    assert abs(quad_inner(u, u).imag) <= 1e-12 * max(1.0, quad_inner(u, u).real)


def test_differentiate_exponential():
    u = _left(lambda t: np.exp(t), T=10.0, m=2001)
    du = differentiate(u)
    assert np.max(np.abs(du.values - u.values)) <= 1e-6


def test_differentiate_constant():
    u = _left(lambda t: 3.0 * np.ones_like(t), T=1.0, m=11)
    assert np.max(np.abs(differentiate(u).values)) <= 1e-12


def test_differentiate_sine():
    u = make_uniform("right", 0.0, 10.0, 2001, np.sin)
    du = differentiate(u)
    assert np.max(np.abs(du.values[2:-2, 0] - np.cos(u.nodes[2:-2]))) <= 1e-6


def test_differentiate_needs_five_nodes():
    with pytest.raises(GridTooCoarse):
        differentiate(make_uniform("right", 0.0, 1.0, 4, np.sin))


def test_integration_by_parts_on_a_ray():
    u = make_uniform("right", 1.0, 40.0, 16001, lambda t: np.exp(1.0 - t) * np.cos(t))
    v = make_uniform("right", 1.0, 40.0, 16001, lambda t: np.exp(2.0 * (1.0 - t)) * (1 + 1j * t))
    lhs = quad_inner(differentiate(u), v) + quad_inner(u, differentiate(v))
    boundary = -(u.values[0] @ v.values[0].conj())
    assert abs(lhs - boundary) <= 1e-6


def test_trace_examples():
    c, d = np.array([1.0, 2j]), np.array([-1.0, 0.5])
    u = TwoRayFunction(make_uniform("left", 0.0, 20.0, 2001, lambda t: np.exp(t) * c),
                       make_uniform("right", 1.0, 20.0, 2001, lambda t: np.exp(1.0 - t) * d))
    u1a, u2b = trace(u)
    np.testing.assert_allclose(u1a, c)
    np.testing.assert_allclose(u2b, d)


def test_mirror_exchanges_rays():
    u = TwoRayFunction(make_uniform("left", -1.0, 5.0, 51, lambda t: t),
                       make_uniform("right", 2.0, 5.0, 51, lambda t: 2 * t))
    v = mirror(u)
    assert v.left.endpoint == -2.0 and v.right.endpoint == 1.0
    np.testing.assert_allclose(v.left.values[:, 0], 2 * (-v.left.nodes))
    assert v.norm() == pytest.approx(u.norm())


def test_csv_round_trip(tmp_path):
    u = make_uniform("right", 0.5, 3.0, 31, lambda t: np.exp(-t) * np.array([1.0, 1j]))
    path = write_csv(u, tmp_path / "u.csv")
    assert path.read_text().startswith("# ray=right,endpoint=0.5,T=3.0")
    back = read_csv(path)
    assert back.ray == "right" and back.endpoint == 0.5 and back.T == 3.0
    np.testing.assert_array_equal(back.values, u.values)
    np.testing.assert_array_equal(back.nodes, u.nodes)
