"""Graph-surface densities: ball density with its derivative identity,
backward Gaussian density of a static flow, and the finite-n family."""

import math

import numpy as np
import pytest

from dimlift import LiftConfig, UnsupportedConfigError
from dimlift.fields import NonhomTerm, graph_linear, graph_paraboloid, graph_plane
from dimlift.functionals import (
    graph_mean_curvature,
    huisken_density,
    lifted_mcf_density,
    mcf_residual,
    monotonicity_sweep,
    ms_density,
    ms_density_tilde,
)


def test_plane_density_is_one():
    for surf, amb in [(graph_plane(2, 0.0), 3), (graph_linear([0.3, -0.2]), 3), (graph_plane(3, 0.0), 4)]:
        for r in (0.5, 1.0, 2.0):
            assert abs(ms_density(surf, np.zeros(amb), r) - 1.0) < 1e-8


@pytest.mark.parametrize("dim", [2, 3])
def test_offset_plane_density_closed_form(dim):
    delta = 0.4
    plane = graph_plane(dim, 0.0)
    center = np.zeros(dim + 1)
    center[-1] = delta
    for r in (0.8, 1.0, 1.5):
        want = (1.0 - delta**2 / r**2) ** (dim / 2)
        assert abs(ms_density(plane, center, r) - want) < 1e-6
    sweep = monotonicity_sweep(lambda r: ms_density(plane, center, r), np.geomspace(0.6, 2.0, 9))
    assert sweep.violations == 0


def test_offset_plane_derivative_identity():
    center = np.array([0.0, 0.0, 0.4])
    plane = graph_plane(2, 0.0)
    rep = ms_density_tilde(plane, None, center, 1.0)
    # d/dr (1 - delta^2/r^2) = 2 delta^2 / r^3
    assert abs(rep.derivative_rhs - 0.32) < 1e-6
    assert abs(rep.theta_tilde - 0.84) < 1e-8
    dr = 1e-3
    fd = (
        ms_density_tilde(plane, None, center, 1.0 + dr).theta_tilde
        - ms_density_tilde(plane, None, center, 1.0 - dr).theta_tilde
    ) / (2 * dr)
    assert abs(fd - rep.derivative_rhs) < 1e-4


def test_paraboloid_derivative_identity_with_curvature_term():
    surf = graph_paraboloid(2, 0.3)
    h = NonhomTerm(lambda y: graph_mean_curvature(surf, y))
    w0 = np.zeros(3)
    dr = 1e-3
    for r in (0.7, 1.0):
        rep = ms_density_tilde(surf, h, w0, r)
        fd = (
            ms_density_tilde(surf, h, w0, r + dr).theta_tilde
            - ms_density_tilde(surf, h, w0, r - dr).theta_tilde
        ) / (2 * dr)
        assert abs(fd - rep.derivative_rhs) < 1e-4


def test_mean_curvature_of_shallow_paraboloid():
    eps, dim = 0.3, 2
    surf = graph_paraboloid(dim, eps)
    assert abs(graph_mean_curvature(surf, np.zeros(dim)) - eps * dim) < 1e-12
    y = np.array([1.0, 1.0])
    q = 1.0 + eps**2 * 2.0
    want = eps * (dim + (dim - 1) * eps**2 * 2.0) / q**1.5
    assert abs(graph_mean_curvature(surf, y) - want) < 1e-12


def test_density_domain_gates():
    plane = graph_plane(2, 0.0)
    with pytest.raises(ValueError):
        ms_density(plane, np.zeros(3), 0.0)
    with pytest.raises(ValueError):
        ms_density_tilde(graph_plane(1, 0.0), None, np.zeros(2), 1.0)
    # center two units above the sheet, ball of radius one misses it
    with pytest.raises(ValueError):
        ms_density_tilde(plane, None, np.array([0.0, 0.0, 2.0]), 1.0)
    with pytest.raises(ValueError):
        huisken_density(plane, 0.0)


def test_gaussian_density_of_static_graphs():
    for d in (1, 2):
        flat = graph_plane(d, 0.0)
        for t in (0.5, 1.0, 2.0):
            assert abs(huisken_density(flat, t) - (4 * math.pi) ** (d / 2)) < 1e-8
    tilted = graph_linear([0.4])
    assert abs(huisken_density(tilted, 1.0) - (4 * math.pi) ** 0.5) < 1e-8
    const = graph_plane(1, 0.7)
    for t in (0.5, 1.0, 2.0):
        want = (4 * math.pi) ** 0.5 * math.exp(-(0.7**2) / (4 * t))
        assert abs(huisken_density(const, t) - want) < 1e-8


def test_gaussian_density_sweeps_are_clean():
    grid = np.geomspace(0.25, 2.0, 9)
    for surf in (graph_plane(1, 0.0), graph_plane(1, 0.7), graph_linear([0.4])):
        sweep = monotonicity_sweep(lambda t: huisken_density(surf, t), grid)
        assert sweep.violations == 0


def test_static_planes_solve_the_flow_exactly():
    pts = np.linspace(-1.0, 1.0, 7)[:, None]
    for surf in (graph_plane(1, 0.0), graph_plane(1, 0.7), graph_linear([0.4])):
        assert np.all(mcf_residual(surf, pts, 1.0) == 0.0)
    # a static paraboloid does not
    assert np.max(np.abs(mcf_residual(graph_paraboloid(2, 0.3), np.zeros((1, 2)), 1.0))) > 0.1


def test_lifted_density_is_exact_on_planes():
    for n in (5, 25, 80):
        got = lifted_mcf_density(graph_plane(1, 0.0), LiftConfig(1, n), 1.0)
        assert abs(got - (4 * math.pi) ** 0.5) < 1e-8
    tilted = graph_linear([0.4])
    want = huisken_density(tilted, 1.0)
    assert abs(lifted_mcf_density(tilted, LiftConfig(1, 25), 1.0) - want) < 1e-8


def test_lifted_density_converges_on_the_constant_graph():
    const = graph_plane(1, 0.7)
    limit = huisken_density(const, 1.0)
    errs = [abs(lifted_mcf_density(const, LiftConfig(1, n), 1.0) - limit) for n in (10, 40, 160)]
    assert errs[0] > errs[1] > errs[2]
    # first-order rate: quadrupling n divides the error by about four
    assert 3.0 < errs[0] / errs[1] < 5.0
    assert 3.0 < errs[1] / errs[2] < 5.0
    assert errs[2] < 0.05 * limit


def test_lifted_density_rejects_degenerate_lift():
    with pytest.raises(UnsupportedConfigError):
        lifted_mcf_density(graph_plane(1, 0.0), LiftConfig(1, 2), 1.0)
