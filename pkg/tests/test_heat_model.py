import math

import numpy as np
import pandas as pd
import pytest

from data.models import s1_model
from services.heat_model import (
    HeatConfig,
    SourceSamples,
    cosine_basis,
    cosine_reduce,
    heat_probe,
    neumann_eigenvalues,
    project_source,
    read_source_csv,
    resolve_source,
    sample_source,
    space_time_norm,
)
from services.spectral import lambda_grid, spectral_probe
from utils.errors import BadGrid, ConfigInvalid, GridTooCoarse


@pytest.fixture
def config():
    return HeatConfig(N=4, phi=math.pi / 3, T=10.0, m=1001)


def _decay(t):
    return np.exp(-np.abs(t))


def test_reduction_coefficients():
    spec = cosine_reduce(HeatConfig(N=4, phi=math.pi / 3))
    eigs = np.array([0.0, math.pi ** 2, 4 * math.pi ** 2, 9 * math.pi ** 2])
    np.testing.assert_allclose(neumann_eigenvalues(4), eigs)
    np.testing.assert_allclose(np.sort(spec.a1.eigenvalues), np.sort(-eigs))
    np.testing.assert_allclose(np.sort(spec.a2.eigenvalues), eigs)
    np.testing.assert_allclose(spec.W.entries, np.exp(1j * math.pi / 3) * np.eye(4))
    assert spec.dim_k == 1
    k = spec.K[:, 0]
    assert abs(abs(k[0]) - 1.0) <= 1e-12


def test_zero_mode_is_positive_zero():
    spec = cosine_reduce(HeatConfig(N=2, phi=0.0))
    assert not np.signbit(np.real(spec.a1.entries[0, 0]))


@pytest.mark.parametrize("kwargs", [{"N": 0, "phi": 0.0}, {"N": 2.5, "phi": 0.0}, {"N": 2, "phi": 7.0},
                                    {"N": 2, "phi": 0.0, "a": 1.0, "b": -1.0}, {"N": 2, "phi": 0.0, "T": 0.0}])
def test_config_rejects_bad_values(kwargs):
    with pytest.raises(ConfigInvalid):
        HeatConfig(**kwargs)


def test_cosine_basis_is_orthonormal():
    x = np.linspace(0.0, 1.0, 2001)
    basis = cosine_basis(5, x)
    gram = np.trapezoid(basis[:, :, None] * basis[:, None, :], x, axis=0)
    np.testing.assert_allclose(gram, np.eye(5), atol=1e-6)


def test_constant_in_x_source_lands_in_mode_zero(config):
    samples = sample_source(config, lambda t, x: _decay(t) + 0.0 * x, 401)
    f = project_source(config, samples)
    np.testing.assert_allclose(f.left.values[:, 0], _decay(f.left.nodes), atol=1e-12)
    np.testing.assert_allclose(f.right.values[:, 0], _decay(f.right.nodes), atol=1e-12)
    assert np.max(np.abs(f.left.values[:, 1:])) <= 1e-6
    assert np.max(np.abs(f.right.values[:, 1:])) <= 1e-6


def test_first_cosine_lands_in_mode_one(config):
    samples = sample_source(config, lambda t, x: _decay(t) * np.cos(np.pi * x), 401)
    f = project_source(config, samples)
    expected = _decay(f.right.nodes) / math.sqrt(2.0)
    assert np.max(np.abs(f.right.values[:, 1] - expected)) <= 1e-6
    assert np.max(np.abs(f.right.values[:, [0, 2, 3]])) <= 1e-6


def test_projection_keeps_the_norm(config):
    def fn(t, x):
        return _decay(t) * (1.0 + np.cos(np.pi * x) - 0.5j * np.cos(3 * np.pi * x))

    samples = sample_source(config, fn, 401)
    f = project_source(config, samples)
    assert f.norm() == pytest.approx(space_time_norm(samples), rel=1e-6)


def test_coarse_x_grid_rejected(config):
    samples = sample_source(config, lambda t, x: _decay(t) + 0.0 * x, 15)
    with pytest.raises(GridTooCoarse):
        project_source(config, samples)


def test_irregular_x_grid_rejected(config):
    samples = sample_source(config, lambda t, x: _decay(t) + 0.0 * x, 33)
    bent = SourceSamples(samples.x ** 2, samples.left_t, samples.left, samples.right_t, samples.right)
    with pytest.raises(BadGrid):
        project_source(config, bent)
    short = SourceSamples(samples.x * 0.5, samples.left_t, samples.left, samples.right_t, samples.right)
    with pytest.raises(BadGrid):
        project_source(config, short)


def _to_frame(samples):
    rows = []
    for t, values in ((samples.left_t, samples.left), (samples.right_t, samples.right)):
        tt, xx = np.meshgrid(t, samples.x, indexing="ij")
        rows.append(pd.DataFrame({"t": tt.ravel(), "x": xx.ravel(),
                                  "re_f": values.real.ravel(), "im_f": values.imag.ravel()}))
    return pd.concat(rows, ignore_index=True)


def test_source_csv_import(tmp_path):
    config = HeatConfig(N=2, phi=0.5, T=4.0, m=41)
    samples = sample_source(config, lambda t, x: _decay(t) * (1.0 + 1j * np.cos(np.pi * x)), 9)
    path = tmp_path / "source.csv"
    _to_frame(samples).sample(frac=1.0, random_state=0).to_csv(path, index=False)

    loaded = read_source_csv(config, path)
    direct = project_source(config, samples)
    imported = project_source(config, loaded)
    np.testing.assert_allclose(imported.left.values, direct.left.values, atol=1e-12)
    np.testing.assert_allclose(imported.right.values, direct.right.values, atol=1e-12)


def test_source_csv_errors(tmp_path):
    config = HeatConfig(N=1, phi=0.0, T=4.0, m=5)
    missing = tmp_path / "missing.csv"
    pd.DataFrame({"t": [1.0], "x": [0.0], "re_f": [1.0]}).to_csv(missing, index=False)
    with pytest.raises(ConfigInvalid):
        read_source_csv(config, missing)

    holes = tmp_path / "holes.csv"
    pd.DataFrame({"t": [1.0, 2.0, 2.0], "x": [0.0, 0.0, 1.0], "re_f": [1.0] * 3, "im_f": [0.0] * 3}).to_csv(
        holes, index=False)
    with pytest.raises(BadGrid):
        read_source_csv(config, holes)

    complex_holes = tmp_path / "complex_holes.csv"
    pd.DataFrame({"t": [1.0, 2.0, 2.0], "x": [0.0, 0.0, 1.0], "re_f": [1.0, 0.5, 0.25],
                  "im_f": [0.5, -1.0, 2.0]}).to_csv(complex_holes, index=False)
    with pytest.raises(BadGrid, match="full"):
        read_source_csv(config, complex_holes)

    repeated = tmp_path / "repeated.csv"
    pd.DataFrame({"t": [1.0, 1.0], "x": [0.0, 0.0], "re_f": [1.0, 2.0], "im_f": [0.0, 0.0]}).to_csv(
        repeated, index=False)
    with pytest.raises(BadGrid):
        read_source_csv(config, repeated)


def test_heat_probe_small_bundle():
    report = heat_probe(HeatConfig(N=3, phi=1.0), lambda_grid(n=5), sweep_lambdas=(1.0, -0.5),
                        probe_count=2, divergence_T=(10.0, 20.0, 40.0), sweep_T=20.0)
    assert report.eigen_points == 25 and report.eigenfunctions_found == 0
    assert report.divergence_errors[10.0] <= 1e-5
    assert 0.99 <= report.divergence_slope <= 1.01
    assert report.kernel_resolve.succeeded and report.kernel_resolve.residual <= 1e-5
    assert np.isfinite(report.sweep["norm_estimate"]).all()


def test_single_mode_matches_scalar_model():
    phi = 2.0
    kwargs = dict(sweep_lambdas=(1.0,), probe_count=2, divergence_T=(20.0, 40.0), seed=5)
    grid = lambda_grid(n=5)
    reduced = heat_probe(HeatConfig(N=1, phi=phi), grid, sweep_T=20.0, **kwargs)
    scalar = spectral_probe(s1_model(-1.0, 1.0, phi), grid, T=20.0, **kwargs)
    assert reduced.summary() == scalar.summary()
    pd.testing.assert_frame_equal(reduced.sweep, scalar.sweep)
    pd.testing.assert_frame_equal(reduced.divergence, scalar.divergence)


def _left_pulse(t, x):
    return np.exp(-(t + 4.0) ** 2) * (1.0 + np.cos(np.pi * x))


def test_resolve_source_from_csv(tmp_path):
    config = HeatConfig(N=2, phi=1.0, T=60.0, m=2401)
    samples = sample_source(config, _left_pulse, 9)
    path = tmp_path / "pulse.csv"
    _to_frame(samples).to_csv(path, index=False)

    record = resolve_source(config, read_source_csv(config, path), 0.5)
    assert record.succeeded and record.residual <= 1e-5
    direct = resolve_source(config, samples, 0.5)
    assert record.solution_norm == pytest.approx(direct.solution_norm, rel=1e-12)


def test_missing_source_csv_is_a_config_error(tmp_path):
    with pytest.raises(ConfigInvalid):
        read_source_csv(HeatConfig(N=1, phi=0.0), tmp_path / "absent.csv")
