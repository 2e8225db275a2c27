"""Sphere-valued maps: scaled energy of the equator map, its parabolic
counterpart on the circle map, and the finite-n lifted family."""

import math

import numpy as np
import pytest

from dimlift import LiftConfig
from dimlift.fields import NonhomTerm, circle_map, equator_map
from dimlift.functionals import (
    hm_dphi_lower_bound,
    hm_phi,
    lifted_hm_Phi,
    monotonicity_sweep,
    struwe_Phi,
)

# r^{2-N} * energy over B_r: the equator map integrates (N-1)/|y|^2, so the
# value is (N-1)|S^{N-1}|/(N-2) at every radius.
EQUATOR_PHI = {3: 8.0 * math.pi, 4: 3.0 * math.pi**2}


@pytest.mark.parametrize("N", [3, 4])
def test_equator_energy_plateau(N):
    vmap = equator_map(N)
    y0 = np.zeros(N)
    for r in (0.5, 1.0, 2.0):
        assert abs(hm_phi(vmap, y0, r) - EQUATOR_PHI[N]) < 1e-6


def test_equator_energy_sweep_has_no_violations():
    # N=4 sweeps live in the acceptance suite; each ball quadrature there
    # costs seconds, and the invariant is the same
    vmap = equator_map(3)
    sweep = monotonicity_sweep(lambda r: hm_phi(vmap, np.zeros(3), r), np.geomspace(0.5, 2.0, 9))
    assert sweep.violations == 0


def test_equator_map_needs_room():
    with pytest.raises(ValueError):
        equator_map(2)


def test_circle_map_parabolic_value_is_t():
    umap = circle_map()
    for t in (0.25, 0.5, 1.0, 2.0):
        assert abs(struwe_Phi(umap, t) - t) < 1e-8


def test_equator_map_parabolic_value_is_one():
    umap = equator_map(3)
    for t in (0.25, 1.0, 4.0):
        assert abs(struwe_Phi(umap, t) - 1.0) < 1e-8


def test_lifted_values_match_at_every_n():
    umap = circle_map()
    emap = equator_map(3)
    for n in (5, 20, 80):
        for t in (0.5, 1.0):
            assert abs(lifted_hm_Phi(umap, LiftConfig(1, n), t) - t) < 1e-8
        assert abs(lifted_hm_Phi(emap, LiftConfig(3, n), 1.0) - 1.0) < 1e-8


def test_nonhomogeneous_derivative_bound_with_zero_tension():
    vmap = equator_map(3)
    y0 = np.zeros(3)
    H = NonhomTerm(lambda y: np.zeros_like(np.asarray(y, float)), vector=True, bound=0.0)
    for r in (0.8, 1.0):
        dr = 1e-4
        fd = (hm_phi(vmap, y0, r + dr) - hm_phi(vmap, y0, r - dr)) / (2 * dr)
        assert fd >= hm_dphi_lower_bound(vmap, H, y0, r) - 1e-4


def test_scalar_tension_term_is_rejected():
    vmap = equator_map(3)
    H = NonhomTerm(lambda y: np.zeros(np.asarray(y, float).shape[:-1]))
    with pytest.raises(ValueError):
        hm_dphi_lower_bound(vmap, H, np.zeros(3), 1.0)
