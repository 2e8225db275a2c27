"""Coordinate maps between a base space R^d and its n-fold lift R^(n*d).

A lifted point y is read as n steps of d coordinates each, stored row-major:
``y[(i-1)*n + (j-1)]`` is step j of coordinate i for i in 1..d, j in 1..n.
The lift map sends y to the pair (x, t) with ``x_i = sum_j y_{i,j}`` and
``t = |y|^2 / (2d)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np
from scipy.special import gammaln

__all__ = [
    "LiftConfig",
    "SpaceTimePoint",
    "DomainSpec",
    "LiftedDerivatives",
    "sphere_area",
    "lift_point",
    "lift_point_time",
    "lifted_derivatives",
]


@dataclass(frozen=True)
class LiftConfig:
    """Base dimension d and number of steps n of a lift."""

    d: int
    n: int

    def __post_init__(self) -> None:
        if self.d < 1 or self.n < 1:
            raise ValueError(f"need d >= 1 and n >= 1, got d={self.d}, n={self.n}")

    @property
    def N(self) -> int:
        """Ambient dimension n*d of the lifted space."""
        return self.n * self.d


@dataclass(frozen=True)
class SpaceTimePoint:
    """A point (x, t) with x in R^d and t > 0."""

    x: np.ndarray
    t: float

    def __post_init__(self) -> None:
        object.__setattr__(self, "x", np.asarray(self.x, dtype=float))
        if self.x.ndim != 1:
            raise ValueError("x must be a 1-d coordinate array")
        if not self.t > 0.0:
            raise ValueError(f"need t > 0, got t={self.t}")


# Domain kinds:
#   sphere_Stn: sphere of radius sqrt(2 d t) in R^(n d)
#   ball_Bnt:   ball of radius sqrt(2 n d t) in R^d
#   ball_Btn:   ball of radius sqrt(2 d tau) in R^(n d)
#   cone_Knt:   { (x, t) : |x|^2 <= 2 n d t, 0 < t <= tau } in R^d x (0, tau]
_DOMAIN_KINDS = ("sphere_Stn", "ball_Bnt", "ball_Btn", "cone_Knt")


@dataclass(frozen=True)
class DomainSpec:
    """One of the four domains the lift machinery integrates over."""

    kind: str
    cfg: LiftConfig
    t: float

    def __post_init__(self) -> None:
        if self.kind not in _DOMAIN_KINDS:
            raise ValueError(f"unknown domain kind {self.kind!r}; expected one of {_DOMAIN_KINDS}")
        if not self.t > 0.0:
            raise ValueError(f"need t > 0, got t={self.t}")

    @property
    def ambient_dim(self) -> int:
        if self.kind in ("sphere_Stn", "ball_Btn"):
            return self.cfg.N
        return self.cfg.d

    @property
    def radius(self) -> float:
        d, n, t = self.cfg.d, self.cfg.n, self.t
        if self.kind in ("sphere_Stn", "ball_Btn"):
            return float(np.sqrt(2.0 * d * t))
        return float(np.sqrt(2.0 * n * d * t))

    def contains(self, p, tol: float = 1e-12) -> np.ndarray:
        """Membership test; p has shape (..., ambient_dim), or ((..., d), t-array) for the cone."""
        if self.kind == "cone_Knt":
            x, tt = p
            x = np.asarray(x, dtype=float)
            tt = np.asarray(tt, dtype=float)
            nd = self.cfg.N
            inside_slice = np.sum(x * x, axis=-1) <= 2.0 * nd * tt * (1.0 + tol)
            return inside_slice & (tt > 0.0) & (tt <= self.t * (1.0 + tol))
        y = np.asarray(p, dtype=float)
        if y.shape[-1] != self.ambient_dim:
            raise ValueError(f"point dimension {y.shape[-1]} != {self.ambient_dim}")
        rr = np.sqrt(np.sum(y * y, axis=-1))
        if self.kind == "sphere_Stn":
            return np.abs(rr - self.radius) <= tol * max(self.radius, 1.0)
        return rr <= self.radius * (1.0 + tol)


def sphere_area(N: int) -> float:
    """Surface measure of the unit sphere S^(N-1) in R^N.

    Computed in log space, so large N stays finite.
    """
    if N < 1:
        raise ValueError(f"need N >= 1, got N={N}")
    # |S^(N-1)| = 2 pi^(N/2) / Gamma(N/2)
    return float(np.exp(np.log(2.0) + 0.5 * N * np.log(np.pi) - gammaln(0.5 * N)))


def _steps(cfg: LiftConfig, y: np.ndarray) -> np.ndarray:
    """Reshape flat lifted coordinates to (..., d, n) step layout."""
    y = np.asarray(y, dtype=float)
    if y.shape[-1] != cfg.N:
        raise ValueError(f"lifted point has length {y.shape[-1]}, expected n*d = {cfg.N}")
    return y.reshape(y.shape[:-1] + (cfg.d, cfg.n))


def lift_point(cfg: LiftConfig, y: np.ndarray) -> np.ndarray:
    """Spatial part of the lift: x_i = sum of the n steps of coordinate i."""
    return _steps(cfg, y).sum(axis=-1)


def lift_point_time(cfg: LiftConfig, y: np.ndarray):
    """Full lift (x, t) with t = |y|^2 / (2d).

    t = 0 only at y = 0, which sits on the boundary of every time slab;
    callers that need t > 0 must exclude the origin themselves.
    """
    y = np.asarray(y, dtype=float)
    x = lift_point(cfg, y)
    t = np.sum(y * y, axis=-1) / (2.0 * cfg.d)
    if y.ndim == 1:
        return x, float(t)
    return x, t


@dataclass(frozen=True)
class LiftedDerivatives:
    """Derivatives of v(y) = u(lift(y)) at a single lifted point."""

    grad_v: np.ndarray
    laplacian_v: float
    radial_v: float
    gradsq_v: float


def lifted_derivatives(cfg: LiftConfig, u, y: np.ndarray) -> LiftedDerivatives:
    """Chain-rule package for v(y) = u(x, t) with (x, t) = lift(y).

    ``u`` must provide vectorized ``grad``, ``dt``, ``laplacian``, and
    ``grad_dt`` evaluators (a SpaceTimeField does).  Requires t > 0, i.e.
    y != 0.

    Identities used, with y_{i,j} the j-th step of coordinate i:

    * dv/dy_{i,j}   = u_{x_i} + (y_{i,j}/d) u_t
    * Lap_y v       = n (Lap_x u + u_t) + (2/d) (x . grad u_t + t u_tt)
    * y . grad_y v  = x . grad_x u + 2 t u_t
    * |grad_y v|^2  = n |grad_x u|^2 + (2/d) (x . grad u + t u_t) u_t
    """
    y = np.asarray(y, dtype=float)
    if y.ndim != 1:
        raise ValueError("lifted_derivatives expects a single point")
    x, t = lift_point_time(cfg, y)
    if not t > 0.0:
        raise ValueError("lifted derivatives need t = |y|^2/(2d) > 0; got y = 0")

    d, n = cfg.d, cfg.n
    ux = np.asarray(u.grad(x, t), dtype=float).reshape(d)
    ut = float(u.dt(x, t))
    lap_u = float(u.laplacian(x, t))
    grad_ut = np.asarray(u.grad_dt(x, t), dtype=float).reshape(d)
    utt = float(u.dtt(x, t))

    steps = _steps(cfg, y)  # (d, n)
    grad_v = (ux[:, None] + steps * (ut / d)).reshape(cfg.N)
    lap_v = n * (lap_u + ut) + (2.0 / d) * (float(x @ grad_ut) + t * utt)
    radial_v = float(x @ ux) + 2.0 * t * ut
    gradsq_v = n * float(ux @ ux) + (2.0 / d) * (float(x @ ux) + t * ut) * ut
    return LiftedDerivatives(
        grad_v=grad_v,
        laplacian_v=float(lap_v),
        radial_v=radial_v,
        gradsq_v=float(gradsq_v),
    )
