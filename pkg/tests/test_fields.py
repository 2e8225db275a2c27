"""Catalog fields: derivative self-checks, caloric residuals, supports."""

import csv
import math

import numpy as np
import pytest

from dimlift.errors import AccuracyError
from dimlift.fields import (
    bump_radial,
    bump_spacetime,
    caloric_from_csv,
    caloric_from_data,
    caloric_polynomial,
    caloric_residual,
    circle_map,
    equator_map,
    fd_check_scalar,
    fd_check_spacetime,
    graph_catalog,
    graph_linear,
    graph_paraboloid,
    graph_plane,
    half_space_pair,
    half_space_power_pair,
    harmonic_polynomial,
    heat_kernel_translate,
)

FD_TOL = 1e-6


# ---------------------------------------------------------------------------
# elliptic catalog


@pytest.mark.parametrize(
    "field",
    [
        harmonic_polynomial("x1", 3),
        harmonic_polynomial("x1x2", 4),
        harmonic_polynomial("re_zk", 2, k=3),
        bump_radial(3, 1.0, 2.0, 4),
    ],
    ids=lambda f: f.name,
)
def test_scalar_fields_pass_derivative_self_checks(field, rng):
    pts = rng.uniform(0.6, 1.4, size=(100, field.N)) * rng.choice([-1.0, 1.0], size=(100, field.N))
    assert fd_check_scalar(field, pts) < FD_TOL


@pytest.mark.parametrize("kind,k", [("x1", 1), ("x1x2", 2), ("re_zk", 5)])
def test_harmonic_polynomials_are_harmonic(kind, k, rng):
    field = harmonic_polynomial(kind, 2, k=k) if kind == "re_zk" else harmonic_polynomial(kind, 3)
    pts = rng.uniform(-2.0, 2.0, size=(200, field.N))
    assert np.max(np.abs(field.laplacian(pts))) < 1e-10
    # homogeneity of degree k: v(2y) = 2^k v(y)
    assert np.allclose(field.value(2.0 * pts), 2.0**k * np.asarray(field.value(pts)), rtol=1e-12, atol=1e-12)


def test_radial_bump_support(rng):
    field = bump_radial(3, 1.0, 2.0, 4)
    assert field.support == ("annulus", 1.0, 2.0)
    outside = np.concatenate([rng.uniform(-0.5, 0.5, (50, 3)), 3.0 * rng.normal(size=(50, 3))])
    r = np.linalg.norm(outside, axis=1)
    outside = outside[(r < 0.9) | (r > 2.1)]
    assert np.all(field.value(outside) == 0.0)
    assert np.all(field.grad(outside) == 0.0)
    inside = np.array([[1.5, 0.0, 0.0]])
    assert field.value(inside)[0] > 0.0


# ---------------------------------------------------------------------------
# parabolic catalog


@pytest.mark.parametrize("kind", ["x1", "x1sq", "x1cube", "radial"])
def test_caloric_polynomials(kind, rng):
    u = caloric_polynomial(kind, 2)
    pts = rng.uniform(-2.0, 2.0, size=(100, 2))
    ts = rng.uniform(0.1, 2.0, size=100)
    checks = fd_check_spacetime(u, pts, ts)
    assert max(checks["grad"], checks["dt"]) < FD_TOL
    assert u.caloric
    assert np.max(np.abs(caloric_residual(u, pts, ts))) < 1e-10


def test_heat_kernel_translate_is_caloric(rng):
    u = heat_kernel_translate(2, np.array([1.5, 1.5]), 3.0)
    pts = rng.uniform(-1.0, 1.0, size=(100, 2))
    ts = rng.uniform(0.1, 1.0, size=100)
    checks = fd_check_spacetime(u, pts, ts)
    assert max(checks["grad"], checks["dt"], checks["grad_dt"]) < FD_TOL
    assert np.max(np.abs(caloric_residual(u, pts, ts))) < 1e-10


def test_spacetime_bump_window(rng):
    u = bump_spacetime(1, 0.5, 1.5, 0.25, 1.0, 4)
    assert u.window == (0.5, 1.5, 0.25, 1.0)
    assert float(u.value(np.array([[1.0]]), 0.6)[0]) > 0.0
    assert float(u.value(np.array([[1.0]]), 0.1)[0]) == 0.0
    assert float(u.value(np.array([[0.2]]), 0.6)[0]) == 0.0
    pts = rng.uniform(-1.6, 1.6, size=(100, 1))
    ts = rng.uniform(0.2, 1.1, size=100)
    checks = fd_check_spacetime(u, pts, ts)
    assert max(checks["grad"], checks["dt"]) < FD_TOL
    # the quartic bump has a large fourth derivative near the cutoffs, so the
    # second-difference estimate is the noisy side here
    assert checks["laplacian"] < 1e-3


def test_half_space_pairs_split_the_domain(rng):
    up, um = half_space_pair(1)
    x = rng.uniform(-2.0, 2.0, size=(200, 1))
    t = 1.0
    vp = np.asarray(up.value(x, t))
    vm = np.asarray(um.value(x, t))
    assert np.all(vp * vm == 0.0)  # disjoint supports
    assert np.allclose(vp - vm, x[:, 0], rtol=0, atol=0)
    assert up.smoothness == "lipschitz-ae"

    cube, lin = half_space_power_pair(1, 3)
    x1 = x[:, 0]
    assert np.allclose(np.asarray(cube.value(x, t)), np.maximum(x1, 0.0) ** 3)
    # subcaloric on its support: Lap u + du/dt = 6 (x1)_+ >= 0
    res = np.asarray(cube.laplacian(x, t)) + np.asarray(cube.dt(x, t))
    assert np.all(res >= 0.0)


def test_quadrature_generated_caloric_field(rng):
    u = caloric_from_data(lambda x: np.exp(-np.asarray(x, float)[..., 0] ** 2), T=2.0, d=1)
    pts = rng.uniform(-1.0, 1.0, size=(50, 1))
    ts = rng.uniform(0.2, 1.5, size=50)
    assert np.max(np.abs(caloric_residual(u, pts, ts))) < 1e-6
    checks = fd_check_spacetime(u, pts, ts)
    assert max(checks["grad"], checks["dt"]) < FD_TOL
    with pytest.raises(AccuracyError):
        u.value(pts, 2.0)  # at the data time the kernel degenerates


def test_caloric_from_csv_round_trip(tmp_path, rng):
    xs = np.linspace(-6.0, 6.0, 121)
    path = tmp_path / "data.csv"
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["x1", "value"])
        for x in xs:
            w.writerow([repr(float(x)), repr(math.exp(-x * x))])
    u = caloric_from_csv(path, T=2.0)
    pts = rng.uniform(-0.8, 0.8, size=(40, 1))
    ts = rng.uniform(0.3, 1.2, size=40)
    assert np.max(np.abs(caloric_residual(u, pts, ts))) < 1e-6
    # midpoint-vs-Gauss discretizations of the same data stay close
    ref = caloric_from_data(lambda x: np.exp(-np.asarray(x, float)[..., 0] ** 2), T=2.0, d=1, radius=6.0)
    a = np.asarray(u.value(pts, 1.0))
    b = np.asarray(ref.value(pts, 1.0))
    assert np.max(np.abs(a - b)) < 1e-6


def test_caloric_from_csv_rejects_ragged_grids(tmp_path):
    path = tmp_path / "bad.csv"
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["x1", "value"])
        for x in (0.0, 0.5, 2.0):
            w.writerow([x, 1.0])
    with pytest.raises(ValueError):
        caloric_from_csv(path, T=1.0)


# ---------------------------------------------------------------------------
# sphere-valued maps and graph surfaces


def test_sphere_maps_are_unit_norm(rng):
    em = equator_map(3)
    y = rng.normal(size=(200, 3))
    y = y[np.linalg.norm(y, axis=1) > 0.1]
    v = np.asarray(em.value(y))
    assert np.max(np.abs(np.linalg.norm(v, axis=-1) - 1.0)) < 1e-12
    # |Dv|^2 = (N-1)/|y|^2 in closed form
    e = np.asarray(em.energy(y))
    assert np.allclose(e, 2.0 / np.sum(y * y, axis=-1), rtol=1e-12)

    cm = circle_map(1)
    x = rng.normal(size=(200, 1))
    vc = np.asarray(cm.value(x))
    assert np.max(np.abs(np.linalg.norm(vc, axis=-1) - 1.0)) < 1e-12
    assert np.allclose(np.asarray(cm.energy(x)), 1.0)


def test_equator_map_needs_three_dimensions():
    with pytest.raises(ValueError):
        equator_map(2)


def test_graph_surfaces(rng):
    y = rng.uniform(-1.0, 1.0, size=(100, 2))
    plane = graph_plane(2, 0.7)
    assert np.all(np.asarray(plane.value(y, 0.0)) == 0.7)
    assert np.all(np.asarray(plane.grad(y, 0.0)) == 0.0)

    a = np.array([0.3, -0.2])
    lin = graph_linear(a)
    assert np.allclose(np.asarray(lin.value(y, 0.0)), y @ a)
    assert np.allclose(np.asarray(lin.grad(y, 0.0)), a)

    par = graph_paraboloid(2, 0.4)
    assert np.allclose(np.asarray(par.value(y, 0.0)), 0.2 * np.sum(y * y, axis=-1))
    hess = np.asarray(par.hessian(y, 0.0))
    assert np.allclose(hess, 0.4 * np.eye(2))

    assert graph_catalog("plane", 2, c=0.7).name == plane.name
    with pytest.raises(ValueError):
        graph_catalog("sphere", 2)
