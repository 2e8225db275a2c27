"""Two-phase monotonicity: the elliptic product functional, its parabolic
Gaussian analogue, and the lifted finite-n approximant."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ..fields import NonhomTerm, ScalarField, SpaceTimeField
from ..integrate import QuadratureSpec, integrate_ball, integrate_spacetime, integrate_sphere
from ..lift import LiftConfig, sphere_area

__all__ = [
    "TwoPhaseReport",
    "psi",
    "support_fraction",
    "acf_phi",
    "acf_dphi_lower_bound",
    "caffarelli_Phi",
    "lifted_two_phase",
]


@dataclass(frozen=True)
class TwoPhaseReport:
    """Product functional with its two factors; s1/s2 are boundary support fractions."""

    param: float
    factor1: float
    factor2: float
    value: float
    s1: float | None = None
    s2: float | None = None


def psi(s: float) -> float:
    """Weight in the two-phase derivative bound:

        psi(s) = log(1/(4s))/2 + 3/2   for 0 < s < 1/4,
        psi(s) = 2 (1 - s)             for 1/4 <= s <= 1.

    Both branches give 3/2 at s = 1/4; psi(1) = 0.
    """
    if s <= 0.0:
        raise ValueError("psi needs s > 0 (positive boundary support)")
    if s > 1.0:
        raise ValueError("s is a sphere fraction, so s <= 1")
    if s < 0.25:
        return 0.5 * math.log(1.0 / (4.0 * s)) + 1.5
    return 2.0 * (1.0 - s)


def support_fraction(v: ScalarField, r: float, spec: QuadratureSpec = QuadratureSpec()) -> float:
    """|{v > 0} on the sphere of radius r| divided by the full sphere measure."""
    if not r > 0.0:
        raise ValueError("need r > 0")

    def indicator(y):
        return (np.asarray(v.value(y), float) > 0.0).astype(float)

    measure = integrate_sphere(indicator, v.N, r, spec).value
    return measure / (r ** (v.N - 1) * sphere_area(v.N))


def _gradsq_weight(field: ScalarField):
    def f(y):
        g = np.asarray(field.grad(y), dtype=float)
        return np.sum(g * g, axis=-1)

    return f


def acf_phi(
    v1: ScalarField,
    v2: ScalarField,
    r: float,
    spec: QuadratureSpec = QuadratureSpec(),
) -> TwoPhaseReport:
    """phi(r) = r^-4 prod_i int_{B_r} |grad v_i|^2 |y|^(2-N) dy (the weight is 1 when N = 2)."""
    if v1.N != v2.N:
        raise ValueError("both phases must live on the same R^N")
    if not r > 0.0:
        raise ValueError("need r > 0")
    N = v1.N
    f1 = integrate_ball(_gradsq_weight(v1), N, r, spec, radial_power=2.0 - N).value
    f2 = integrate_ball(_gradsq_weight(v2), N, r, spec, radial_power=2.0 - N).value
    return TwoPhaseReport(param=r, factor1=f1, factor2=f2, value=f1 * f2 / r**4)


def acf_dphi_lower_bound(
    v1: ScalarField,
    v2: ScalarField,
    h1: NonhomTerm,
    h2: NonhomTerm,
    r: float,
    spec: QuadratureSpec = QuadratureSpec(),
) -> float:
    """Lower bound for phi'(r) when Lap v_i >= h_i:

        phi'(r) >= (2/r^4) [ psi(s_1) (int v_1 h_1 |y|^(2-N)) (int |grad v_2|^2 |y|^(2-N))
                           + psi(s_2) (int |grad v_1|^2 |y|^(2-N)) (int v_2 h_2 |y|^(2-N)) ]

    with s_i the boundary support fractions.  Zero support fraction is an error.
    """
    if v1.N != v2.N:
        raise ValueError("both phases must live on the same R^N")
    N = v1.N
    s1 = support_fraction(v1, r, spec)
    s2 = support_fraction(v2, r, spec)
    if s1 <= 0.0 or s2 <= 0.0:
        raise ValueError("each phase needs positive support on the boundary sphere")

    def vh(v, h):
        def f(y):
            return np.asarray(v.value(y), float) * np.asarray(h.value(y), float)

        return f

    g1 = integrate_ball(_gradsq_weight(v1), N, r, spec, radial_power=2.0 - N).value
    g2 = integrate_ball(_gradsq_weight(v2), N, r, spec, radial_power=2.0 - N).value
    vh1 = integrate_ball(vh(v1, h1), N, r, spec, radial_power=2.0 - N).value
    vh2 = integrate_ball(vh(v2, h2), N, r, spec, radial_power=2.0 - N).value
    return (2.0 / r**4) * (psi(s1) * vh1 * g2 + psi(s2) * g1 * vh2)


def _parabolic_energy(u: SpaceTimeField):
    def f(x, t):
        g = np.asarray(u.grad(x, t), dtype=float)
        return np.sum(g * g, axis=-1)

    return f


def caffarelli_Phi(
    u1: SpaceTimeField,
    u2: SpaceTimeField,
    tau: float,
    spec: QuadratureSpec = QuadratureSpec(),
) -> TwoPhaseReport:
    """Phi(tau) = tau^-2 prod_i int_0^tau int |grad u_i|^2 G_t dx dt."""
    if u1.d != u2.d:
        raise ValueError("both phases must live on the same R^d")
    if not tau > 0.0:
        raise ValueError("need tau > 0")
    f1 = integrate_spacetime(_parabolic_energy(u1), "gaussian", u1.d, tau, spec).value
    f2 = integrate_spacetime(_parabolic_energy(u2), "gaussian", u2.d, tau, spec).value
    return TwoPhaseReport(param=tau, factor1=f1, factor2=f2, value=f1 * f2 / tau**2)


def lifted_two_phase(
    u1: SpaceTimeField,
    u2: SpaceTimeField,
    cfg: LiftConfig,
    tau: float,
    spec: QuadratureSpec = QuadratureSpec(),
) -> TwoPhaseReport:
    """Finite-n product functional

        Phi_n(tau) = tau^-2 prod_i int_0^tau int ( |grad u_i|^2
                     + (2/nd) (x . grad u_i + t du_i/dt) du_i/dt ) G_{t,n} dx dt,

    which recovers caffarelli_Phi as n -> infinity.
    """
    if u1.d != u2.d or u1.d != cfg.d:
        raise ValueError("fields and lift config must share the same base dimension")
    if not tau > 0.0:
        raise ValueError("need tau > 0")
    nd = cfg.N

    def lifted_energy(u: SpaceTimeField):
        def f(x, t):
            g = np.asarray(u.grad(x, t), dtype=float)
            ut = np.asarray(u.dt(x, t), float)
            radial = np.sum(np.asarray(x, float) * g, axis=-1) + t * ut
            return np.sum(g * g, axis=-1) + (2.0 / nd) * radial * ut

        return f

    f1 = integrate_spacetime(lifted_energy(u1), "finite", cfg.d, tau, spec, n=cfg.n).value
    f2 = integrate_spacetime(lifted_energy(u2), "finite", cfg.d, tau, spec, n=cfg.n).value
    return TwoPhaseReport(param=tau, factor1=f1, factor2=f2, value=f1 * f2 / tau**2)
