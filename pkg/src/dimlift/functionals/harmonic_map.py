"""Energy-density monotonicity for sphere-valued maps, elliptic and parabolic."""

from __future__ import annotations

import numpy as np

from ..errors import UnsupportedConfigError
from ..fields import NonhomTerm, SphereField
from ..integrate import QuadratureSpec, integrate_ball, integrate_weighted
from ..lift import LiftConfig

__all__ = ["hm_phi", "hm_dphi_lower_bound", "struwe_Phi", "lifted_hm_Phi"]


def hm_phi(vmap: SphereField, y0, r: float, spec: QuadratureSpec = QuadratureSpec()) -> float:
    """Scaled local energy phi(r) = r^(2-N) int_{B_r(y0)} |Dv|^2 dy."""
    if not r > 0.0:
        raise ValueError("need r > 0")
    N = vmap.dim_domain
    c = None if y0 is None else np.asarray(y0, dtype=float)
    energy = integrate_ball(lambda y: np.asarray(vmap.energy(y), float), N, r, spec, center=c).value
    return r ** (2 - N) * energy


def hm_dphi_lower_bound(
    vmap: SphereField,
    H: NonhomTerm,
    y0,
    r: float,
    spec: QuadratureSpec = QuadratureSpec(),
) -> float:
    """Lower bound for phi'(r) when Lap v + |Dv|^2 v = H:

        phi'(r) >= - r^(1-N) int_{B_r(y0)} H . ((y - y0) . Dv) dy.
    """
    if not r > 0.0:
        raise ValueError("need r > 0")
    if not H.vector:
        raise ValueError("the harmonic-map right-hand side is vector valued")
    N = vmap.dim_domain
    c = np.zeros(N) if y0 is None else np.asarray(y0, dtype=float)

    def f(y):
        j = np.asarray(vmap.jacobian(y), dtype=float)  # (..., m, N)
        radial = np.einsum("...mk,...k->...m", j, np.asarray(y, float) - c)
        return np.sum(np.asarray(H.value(y), float) * radial, axis=-1)

    bulk = integrate_ball(f, N, r, spec, center=c).value
    return -(r ** (1 - N)) * bulk


def struwe_Phi(umap: SphereField, t: float, spec: QuadratureSpec = QuadratureSpec()) -> float:
    """Parabolic energy density Phi(t) = t int |Du|^2 G_t dx for a stationary map.

    Only time-independent maps are accepted: they solve the flow exactly, so
    Phi is constant in t and equals the lifted limit.
    """
    if umap.dt is not None:
        raise ValueError("struwe_Phi is defined here for time-independent maps only")
    if not t > 0.0:
        raise ValueError("need t > 0")
    d = umap.dim_domain
    energy = integrate_weighted(lambda x: np.asarray(umap.energy(x), float), "gaussian", d, t, spec).value
    return t * energy


def lifted_hm_Phi(
    umap: SphereField,
    cfg: LiftConfig,
    t: float,
    spec: QuadratureSpec = QuadratureSpec(),
) -> float:
    """Finite-n energy density for a time-independent sphere-valued map:

        Phi_n(t) = [nd/(nd-2)] t int |Du|^2 G_{t,n} dx
                   - [1/(nd-2)] int |x . Du|^2 G_{t,n} dx,

    which converges to struwe_Phi as n -> infinity (for stationary maps the
    history term of the general formula vanishes identically).
    """
    if umap.dt is not None:
        raise ValueError("lifted_hm_Phi is defined here for time-independent maps only")
    if umap.dim_domain != cfg.d:
        raise ValueError("map domain and lift config must share the same base dimension")
    nd = cfg.N
    if nd <= 2:
        raise UnsupportedConfigError(f"lifted energy density needs n*d >= 3, got n*d = {nd}")
    if not t > 0.0:
        raise ValueError("need t > 0")

    def both(x):
        e = np.asarray(umap.energy(x), float)
        j = np.asarray(umap.jacobian(x), dtype=float)
        xd = np.einsum("...mk,...k->...m", j, np.asarray(x, float))
        return np.stack([e, np.sum(xd * xd, axis=-1)], axis=-1)

    vals = integrate_weighted(both, "finite", cfg.d, t, spec, n=cfg.n).value
    return (nd / (nd - 2.0)) * t * float(vals[0]) - float(vals[1]) / (nd - 2.0)
