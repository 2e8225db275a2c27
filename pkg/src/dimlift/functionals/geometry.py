"""Minimal-surface densities, mean-curvature-flow densities, and their lifts.

All hypersurfaces here are graphs x_{N+1} = v(y).  Ball intersections are
parametrized in polar form around the center's base point: the projected
region {y : |y - y0|^2 + (v(y) - v0)^2 <= r^2} is assumed star-shaped, and
its boundary radius along each direction is found by bisection (exact to
~80 bits, so quadrature error dominates).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ..errors import AccuracyError, UnsupportedConfigError
from ..fields import GraphSurface, NonhomTerm
from ..integrate import QuadratureSpec, _jacobi, _leggauss, _refine, _sphere_nodes, integrate_weighted
from ..lift import LiftConfig, sphere_area
from ..weights import _log_sphere_area

__all__ = [
    "MsDensityReport",
    "graph_mean_curvature",
    "ms_density",
    "ms_density_tilde",
    "huisken_density",
    "mcf_residual",
    "lifted_mcf_density",
]


def graph_mean_curvature(surface: GraphSurface, y, t: float = 0.0):
    """Mean curvature (trace of the shape operator) of a graph at base points y:

        H = Lap v / sqrt(1 + |grad v|^2) - (grad v . Hess v . grad v) / (1 + |grad v|^2)^(3/2).
    """
    g = np.asarray(surface.grad(y, t), dtype=float)
    hess = np.asarray(surface.hessian(y, t), dtype=float)
    q = 1.0 + np.sum(g * g, axis=-1)
    lap = np.trace(hess, axis1=-2, axis2=-1)
    mixed = np.einsum("...i,...ij,...j->...", g, hess, g)
    return lap / np.sqrt(q) - mixed / q**1.5


def _bisect_radius(gfun, hi: np.ndarray, iters: int = 80) -> np.ndarray:
    """Largest rho in [0, hi] with gfun <= 0, assuming gfun(0) < 0 <= gfun(hi)."""
    lo = np.zeros_like(hi)
    hi = hi.astype(float).copy()
    for _ in range(iters):
        mid = 0.5 * (lo + hi)
        neg = gfun(mid) <= 0.0
        lo = np.where(neg, mid, lo)
        hi = np.where(neg, hi, mid)
    return 0.5 * (lo + hi)


def _split_center(surface: GraphSurface, w0) -> tuple[np.ndarray, float]:
    w0 = np.asarray(w0, dtype=float)
    if w0.shape != (surface.dim + 1,):
        raise ValueError(f"center must live in R^{surface.dim + 1}")
    return w0[: surface.dim], float(w0[surface.dim])


def ms_density(
    surface: GraphSurface,
    w0,
    r: float,
    spec: QuadratureSpec = QuadratureSpec(),
    t: float = 0.0,
) -> float:
    """Area ratio Theta(r) = Area(B_r(w0) cap Sigma) / (omega_N r^N), omega_N the unit-ball volume."""
    if not r > 0.0:
        raise ValueError("need r > 0")
    N = surface.dim
    y0, v0 = _split_center(surface, w0)
    gap = float(surface.value(y0, t)) - v0
    if gap * gap >= r * r:
        return 0.0  # the ball misses the sheet above the center

    def eval_at(level: int):
        omega, wa = _sphere_nodes(N, level, spec.angular_rule)

        def g(rho):
            pts = y0 + rho[:, None] * omega
            dv = np.asarray(surface.value(pts, t), float) - v0
            return rho * rho + dv * dv - r * r

        rho_star = _bisect_radius(g, np.full(omega.shape[0], r))
        xs, wl = _leggauss(level)
        rho = 0.5 * (xs + 1.0)[:, None] * rho_star[None, :]  # (kr, ka)
        pts = y0 + rho[..., None] * omega[None, :, :]
        grad = np.asarray(surface.grad(pts, t), dtype=float)
        area_el = np.sqrt(1.0 + np.sum(grad * grad, axis=-1))
        wr = 0.5 * rho_star[None, :] * wl[:, None] * rho ** (N - 1)
        vol = float(np.sum(wa[None, :] * wr * area_el))
        return vol, rho.size

    vol, _ = _refine(eval_at, spec.radial_nodes, spec.target_rel_tol)
    return vol / (sphere_area(N) / N * r**N)


@dataclass(frozen=True)
class MsDensityReport:
    """Adjusted density and the boundary integral its derivative is equal to."""

    r: float
    theta_tilde: float
    derivative_rhs: float


def ms_density_tilde(
    surface: GraphSurface,
    h: NonhomTerm | None,
    w0,
    r: float,
    spec: QuadratureSpec = QuadratureSpec(),
    t: float = 0.0,
) -> MsDensityReport:
    """Density adjusted for mean curvature h, with its exact derivative integrand:

        Theta~(r) = [ Area(B_r cap Sigma) + (1/N) int_{B_r cap Sigma} h (w - w0) . nu ] / (omega_N r^N),

        d Theta~/dr = [N / (|S^(N-1)| r^(N+1))] int_{bd B_r cap Sigma}
                      ( |(w - w0)^perp|^2 + (1/N) h ((w - w0) . nu) |w - w0|^2 ) / |(w - w0)^T| dS.

    h is evaluated at the base coordinates y; pass None for a minimal surface.
    The slice integral is computed from the polar parametrization; directions
    where the tangential part |(w - w0)^T| vanishes make the integrand blow
    up, so a near-tangent slice raises an AccuracyError.
    """
    if not r > 0.0:
        raise ValueError("need r > 0")
    N = surface.dim
    if N < 2:
        raise ValueError("slice integrals need surface dimension >= 2")
    y0, v0 = _split_center(surface, w0)
    gap = float(surface.value(y0, t)) - v0
    if gap * gap >= r * r:
        raise ValueError("the ball does not reach the sheet above its center")

    def hval(pts):
        if h is None:
            return np.zeros(pts.shape[:-1])
        return np.asarray(h.value(pts), float)

    def eval_at(level: int):
        omega, wa = _sphere_nodes(N, level, spec.angular_rule)

        def g(rho):
            pts = y0 + rho[:, None] * omega
            dv = np.asarray(surface.value(pts, t), float) - v0
            return rho * rho + dv * dv - r * r

        rho_star = _bisect_radius(g, np.full(omega.shape[0], r))

        # bulk: area element and the curvature correction, in base coordinates
        xs, wl = _leggauss(level)
        rho = 0.5 * (xs + 1.0)[:, None] * rho_star[None, :]
        pts = y0 + rho[..., None] * omega[None, :, :]
        grad = np.asarray(surface.grad(pts, t), dtype=float)
        vdiff = np.asarray(surface.value(pts, t), float) - v0
        area_el = np.sqrt(1.0 + np.sum(grad * grad, axis=-1))
        # ((w - w0) . nu) sqrt(1 + |grad v|^2) = v - v0 - (y - y0) . grad v
        wnu_area = vdiff - np.einsum("...k,...k->...", pts - y0, grad)
        wr = 0.5 * rho_star[None, :] * wl[:, None] * rho ** (N - 1)
        vol = float(np.sum(wa[None, :] * wr * area_el))
        correction = float(np.sum(wa[None, :] * wr * hval(pts) * wnu_area))
        theta_tilde = (vol + correction / N) / (sphere_area(N) / N * r**N)

        # slice: polar parametrization of {|w - w0| = r} on the graph
        ys = y0 + rho_star[:, None] * omega
        vs = np.asarray(surface.value(ys, t), float) - v0
        gs = np.asarray(surface.grad(ys, t), dtype=float)
        qroot = np.sqrt(1.0 + np.sum(gs * gs, axis=-1))
        wnu = (vs - np.einsum("...k,...k->...", ys - y0, gs)) / qroot  # (w - w0) . nu
        tang_sq = r * r - wnu * wnu
        if np.any(tang_sq <= (1e-9 * r) ** 2):
            raise AccuracyError("slice integrand blows up: |(w - w0)^T| vanishes along some direction")
        tang = np.sqrt(tang_sq)

        grad_psi = 2.0 * (ys - y0) + 2.0 * vs[:, None] * gs
        psi_rho = np.einsum("...k,...k->...", grad_psi, omega)
        if np.any(np.abs(psi_rho) < 1e-12):
            raise AccuracyError("slice parametrization degenerates: radial derivative vanishes")
        perp = grad_psi - psi_rho[:, None] * omega
        grad_s_rho = -rho_star[:, None] * perp / psi_rho[:, None]
        nhat = grad_psi / np.linalg.norm(grad_psi, axis=-1, keepdims=True)
        gtang = gs - np.einsum("...k,...k->...", gs, nhat)[:, None] * nhat
        lift_factor = np.sqrt(1.0 + np.sum(gtang * gtang, axis=-1))
        measure = rho_star ** (N - 2) * np.sqrt(rho_star**2 + np.sum(grad_s_rho**2, axis=-1)) * lift_factor

        integrand = (wnu * wnu + hval(ys) * wnu * r * r / N) / tang
        slice_sum = float(np.sum(wa * measure * integrand))
        rhs = N / (sphere_area(N) * r ** (N + 1)) * slice_sum
        return np.array([theta_tilde, rhs]), 2 * rho.size

    out, _ = _refine(eval_at, spec.radial_nodes, spec.target_rel_tol)
    return MsDensityReport(r=r, theta_tilde=float(out[0]), derivative_rhs=float(out[1]))


def huisken_density(surface: GraphSurface, t: float, spec: QuadratureSpec = QuadratureSpec()) -> float:
    """Backward Gaussian surface density of a graph flow:

        theta(t) = int t^(-d/2) exp(-(|x|^2 + u(x,t)^2) / 4t) sqrt(1 + |grad u|^2) dx.

    A flat plane through the origin gives (4 pi)^(d/2) for all t.
    """
    if not t > 0.0:
        raise ValueError("need t > 0")
    d = surface.dim

    def phi(x):
        uu = np.asarray(surface.value(x, t), float)
        g = np.asarray(surface.grad(x, t), dtype=float)
        return np.exp(-uu * uu / (4.0 * t)) * np.sqrt(1.0 + np.sum(g * g, axis=-1))

    base = integrate_weighted(phi, "gaussian", d, t, spec).value
    return (4.0 * math.pi) ** (0.5 * d) * base


def mcf_residual(surface: GraphSurface, x, t):
    """Residual of the backward graphical mean curvature flow:

        du/dt + Lap u - (grad u . Hess u . grad u) / (1 + |grad u|^2).
    """
    g = np.asarray(surface.grad(x, t), dtype=float)
    hess = np.asarray(surface.hessian(x, t), dtype=float)
    q = 1.0 + np.sum(g * g, axis=-1)
    lap = np.trace(hess, axis1=-2, axis2=-1)
    mixed = np.einsum("...i,...ij,...j->...", g, hess, g)
    return np.asarray(surface.dt(x, t), float) + lap - mixed / q


def lifted_mcf_density(
    surface: GraphSurface,
    cfg: LiftConfig,
    t: float,
    spec: QuadratureSpec = QuadratureSpec(),
) -> float:
    """Finite-n Gaussian density of a graph:

        Phi_n(t) = (4 pi)^(d/2) int sqrt(1 + |grad u|^2) G^u_{t,n}(x) dx,

    where G^u_{t,n} is the finite weight with |x|^2 replaced by |x|^2 + u(x,t)^2.
    Converges to huisken_density as n -> infinity.  The weight's support ends
    where |x|^2 + u^2 = 2ndt; that radius is found per direction and the rim
    factor is absorbed into a Gauss-Jacobi rule, so the integrand kink costs
    no accuracy.
    """
    if not t > 0.0:
        raise ValueError("need t > 0")
    d = cfg.d
    nd = cfg.N
    if nd <= d + 1:
        raise UnsupportedConfigError(f"finite weight needs n*d >= d + 2; got d={d}, n={cfg.n}")
    rmax_sq = 2.0 * nd * t
    expo = 0.5 * (nd - d - 2)
    u_center = float(surface.value(np.zeros(d), t))
    if u_center * u_center >= rmax_sq:
        return 0.0  # weight support is empty along every direction
    # the rim factor is integrated unnormalized, so the prefactor also carries
    # the R^{-2 expo} from (1 - (|x|^2 + u^2)/R^2)^expo
    log_pref = (
        _log_sphere_area(nd - d)
        - _log_sphere_area(nd)
        - (0.5 * d + expo) * math.log(rmax_sq)
    )
    scale = (4.0 * math.pi) ** (0.5 * d) * math.exp(log_pref)

    def eval_at(level: int):
        omega, wa = _sphere_nodes(d, level, spec.angular_rule)

        def g(rho):
            pts = rho[:, None] * omega
            uu = np.asarray(surface.value(pts, t), float)
            return rho * rho + uu * uu - rmax_sq

        rho_star = _bisect_radius(g, np.full(omega.shape[0], math.sqrt(rmax_sq)))
        z, wj = _jacobi(level, expo, 0.0)
        rho = 0.5 * (1.0 + z)[:, None] * rho_star[None, :]  # (kr, ka)
        pts = rho[..., None] * omega[None, :, :]
        uu = np.asarray(surface.value(pts, t), float)
        grad = np.asarray(surface.grad(pts, t), dtype=float)
        area_el = np.sqrt(1.0 + np.sum(grad * grad, axis=-1))
        support = rmax_sq - rho * rho - uu * uu  # = (rho* - rho) * q with q smooth
        q = support / (rho_star[None, :] - rho)
        vals = area_el * rho ** (d - 1) * q**expo if expo != 0.0 else area_el * rho ** (d - 1)
        contrib = (0.5 * rho_star) ** (expo + 1.0) * np.tensordot(wj, vals, axes=([0], [0]))
        return scale * float(wa @ contrib), rho.size

    value, _ = _refine(eval_at, spec.radial_nodes, spec.target_rel_tol)
    return value
