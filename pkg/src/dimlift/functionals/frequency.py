"""Frequency functions: elliptic, parabolic, and the lifted finite-n bridge.

The elliptic frequency of v on the ball B_r is L = r D / H with H the
boundary L^2 mass and D the Dirichlet energy.  Its parabolic counterpart for
u(x, t) uses Gaussian-weighted integrals and satisfies L_parabolic = k/2 on
caloric polynomials that are parabolically homogeneous of degree k.  The
lifted frequency L_n evaluates the elliptic functional of u(lift) on the
sphere of radius sqrt(2dt) via reduced d-dimensional integrals; as n grows it
converges to twice the parabolic frequency.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..errors import DegenerateDenominatorError
from ..fields import NonhomTerm, ScalarField, SpaceTimeField
from ..integrate import (
    QuadratureSpec,
    integrate_ball,
    integrate_spacetime,
    integrate_sphere,
    integrate_weighted,
)
from ..lift import LiftConfig
from .common import DENOMINATOR_FLOOR, power_ratio

__all__ = ["FrequencyValues", "almgren", "almgren_dL_lower_bound", "poon", "lifted_frequency"]


@dataclass(frozen=True)
class FrequencyValues:
    """Frequency L with its numerator energy D and denominator mass H."""

    param: float  # radius r (elliptic) or time t (parabolic)
    H: float
    D: float
    L: float


def _gradsq(field: ScalarField):
    def f(y):
        g = np.asarray(field.grad(y), dtype=float)
        return np.sum(g * g, axis=-1)

    return f


def almgren(v: ScalarField, r: float, spec: QuadratureSpec = QuadratureSpec()) -> FrequencyValues:
    """Elliptic frequency r D(r) / H(r) of v centered at the origin."""
    if not r > 0.0:
        raise ValueError("need r > 0")
    H = integrate_sphere(lambda y: np.asarray(v.value(y), float) ** 2, v.N, r, spec).value
    if H < DENOMINATOR_FLOOR:
        raise DegenerateDenominatorError(f"boundary mass H = {H!r} is below the {DENOMINATOR_FLOOR} floor")
    D = integrate_ball(_gradsq(v), v.N, r, spec).value
    return FrequencyValues(param=r, H=H, D=D, L=r * D / H)


def almgren_dL_lower_bound(
    v: ScalarField,
    h: NonhomTerm,
    r: float,
    spec: QuadratureSpec = QuadratureSpec(),
) -> float:
    """Lower bound for L'(r) when Lap v = h instead of 0:

        L'(r) >= 2 (int_{bd B_r} v (y . grad v) dS) (int_{B_r} h v dy) / H^2
                 - 2 (int_{B_r} h (y . grad v) dy) / H.

    For h = 0 this recovers monotonicity of the homogeneous frequency.
    """
    if not r > 0.0:
        raise ValueError("need r > 0")
    H = integrate_sphere(lambda y: np.asarray(v.value(y), float) ** 2, v.N, r, spec).value
    if H < DENOMINATOR_FLOOR:
        raise DegenerateDenominatorError(f"boundary mass H = {H!r} is below the {DENOMINATOR_FLOOR} floor")

    def v_radial(y):
        g = np.asarray(v.grad(y), dtype=float)
        return np.asarray(v.value(y), float) * np.sum(np.asarray(y, float) * g, axis=-1)

    def h_radial(y):
        g = np.asarray(v.grad(y), dtype=float)
        return np.asarray(h.value(y), float) * np.sum(np.asarray(y, float) * g, axis=-1)

    def h_v(y):
        return np.asarray(h.value(y), float) * np.asarray(v.value(y), float)

    boundary_term = integrate_sphere(v_radial, v.N, r, spec).value
    bulk_hv = integrate_ball(h_v, v.N, r, spec).value
    bulk_hr = integrate_ball(h_radial, v.N, r, spec).value
    return 2.0 * boundary_term * bulk_hv / H**2 - 2.0 * bulk_hr / H


def poon(u: SpaceTimeField, t: float, spec: QuadratureSpec = QuadratureSpec()) -> FrequencyValues:
    """Parabolic frequency t D(t) / H(t) with Gaussian-weighted H and D."""
    if not t > 0.0:
        raise ValueError("need t > 0")

    def both(x):
        val = np.asarray(u.value(x, t), float)
        g = np.asarray(u.grad(x, t), float)
        return np.stack([val * val, np.sum(g * g, axis=-1)], axis=-1)

    HD = integrate_weighted(both, "gaussian", u.d, t, spec).value
    H, D = float(HD[0]), float(HD[1])
    if H < DENOMINATOR_FLOOR:
        raise DegenerateDenominatorError(f"weighted mass H = {H!r} is below the {DENOMINATOR_FLOOR} floor")
    return FrequencyValues(param=t, H=H, D=D, L=t * D / H)


def lifted_frequency(
    u: SpaceTimeField,
    cfg: LiftConfig,
    t: float,
    spec: QuadratureSpec = QuadratureSpec(),
) -> float:
    """Elliptic frequency of the lift of u, written in base-space integrals.

    L_n(t) = [ int u (x . grad u + 2t du/dt) G_{t,n} dx
               - 2 int_0^t int u ((x, s) . grad_{x,s} du/ds) (s/t)^((nd-2)/2) G_{s,n} dx ds ]
             / int u^2 G_{t,n} dx

    and L_n -> 2 L_parabolic(t) as n -> infinity.  The history factor
    (s/t)^((nd-2)/2) underflows to exactly 0 deep inside (0, t) for large nd;
    such nodes are truncated (see power_ratio).
    """
    if not t > 0.0:
        raise ValueError("need t > 0")
    d, n = cfg.d, cfg.n
    p = 0.5 * (cfg.N - 2)

    def instant(x):
        val = np.asarray(u.value(x, t), float)
        g = np.asarray(u.grad(x, t), float)
        radial = np.sum(np.asarray(x, float) * g, axis=-1) + 2.0 * t * np.asarray(u.dt(x, t), float)
        return np.stack([val * val, val * radial], axis=-1)

    inst = integrate_weighted(instant, "finite", d, t, spec, n=n).value
    denom, numer1 = float(inst[0]), float(inst[1])
    if denom < DENOMINATOR_FLOOR:
        raise DegenerateDenominatorError(f"weighted mass {denom!r} is below the {DENOMINATOR_FLOOR} floor")

    def history(x, s):
        val = np.asarray(u.value(x, s), float)
        gdt = np.asarray(u.grad_dt(x, s), float)
        spatial = np.sum(np.asarray(x, float) * gdt, axis=-1)
        return 2.0 * val * (spatial + s * np.asarray(u.dtt(x, s), float)) * power_ratio(s, t, p)

    numer2 = integrate_spacetime(history, "finite", d, t, spec, n=n).value
    return (numer1 - numer2) / denom
