"""Gaussian weight, its finite-n sphere-slice approximants, and their comparison.

The finite weight of parameters (d, n, t) is the density on R^d obtained by
pushing the uniform probability measure on the sphere of radius sqrt(2dt) in
R^(n*d) forward through the step-sum map.  It is supported on the closed ball
|x|^2 <= 2ndt and converges pointwise to the heat kernel G_t as n grows.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.special import gammaln

from .errors import UnsupportedConfigError

__all__ = [
    "gaussian_weight",
    "finite_weight",
    "ratio_bound",
    "weight_limit_report",
    "WeightLimitReport",
]


def _log_sphere_area(N: int) -> float:
    return float(np.log(2.0) + 0.5 * N * np.log(np.pi) - gammaln(0.5 * N))


def _check_t(t: float) -> None:
    if not t > 0.0:
        raise ValueError(f"need t > 0, got t={t}")


def gaussian_weight(d: int, t: float, x) -> np.ndarray:
    """Heat kernel G_t(x) = (4 pi t)^(-d/2) exp(-|x|^2 / 4t) on R^d."""
    _check_t(t)
    x = np.asarray(x, dtype=float)
    if x.shape[-1] != d:
        raise ValueError(f"point dimension {x.shape[-1]} != d = {d}")
    rr = np.sum(x * x, axis=-1)
    out = np.exp(-rr / (4.0 * t) - 0.5 * d * np.log(4.0 * np.pi * t))
    return out if out.ndim else float(out)


def finite_weight(d: int, n: int, t: float, x) -> np.ndarray:
    """Finite-n approximant G_{t,n}(x) of the heat kernel.

    G_{t,n}(x) = A * (1 - |x|^2 / (2ndt))^((nd-d-2)/2) on |x|^2 <= 2ndt,
    and exactly 0 outside the closed ball, with

        A = |S^(nd-1-d)| / (|S^(nd-1)| (2ndt)^(d/2)).

    On the rim |x|^2 = 2ndt the value is 0 when the exponent is positive and
    A when the exponent is 0 (the smallest supported case nd = d + 2).
    Requires nd >= d + 2.
    """
    _check_t(t)
    nd = n * d
    if nd <= d + 1:
        raise UnsupportedConfigError(
            f"finite weight needs n*d >= d + 2; got d={d}, n={n} (n*d = {nd})"
        )
    x = np.asarray(x, dtype=float)
    if x.shape[-1] != d:
        raise ValueError(f"point dimension {x.shape[-1]} != d = {d}")

    r2max = 2.0 * nd * t
    log_pref = _log_sphere_area(nd - d) - _log_sphere_area(nd) - 0.5 * d * np.log(r2max)
    expo = 0.5 * (nd - d - 2)

    rr = np.sum(x * x, axis=-1)
    s = 1.0 - rr / r2max
    out = np.zeros(np.shape(rr), dtype=float)
    if expo == 0.0:
        inside = s >= 0.0  # rim included: (.)^0 = 1 there
        np.copyto(out, np.exp(log_pref), where=inside)
    else:
        inside = s > 0.0
        with np.errstate(divide="ignore", invalid="ignore"):
            vals = np.exp(log_pref + expo * np.log(np.where(inside, s, 1.0)))
        np.copyto(out, vals, where=inside)
    return out if out.ndim else float(out)


def ratio_bound(d: int, n: int) -> float:
    """Uniform bound on G_{t,n} / G_t over all of R^d (t-independent).

    Equals the ratio evaluated at its interior maximizer |x|^2/4t = d/2 + 1:

        C = [|S^(nd-1-d)| / |S^(nd-1)|] (4 pi / 2nd)^(d/2)
            * (1 - (d+2)/nd)^((nd-d-2)/2) * e^(d/2+1).

    Requires nd >= d + 3 so the maximizer sits inside the support.
    """
    nd = n * d
    if nd < d + 3:
        raise UnsupportedConfigError(
            f"ratio bound needs n*d >= d + 3; got d={d}, n={n} (n*d = {nd})"
        )
    log_c = (
        _log_sphere_area(nd - d)
        - _log_sphere_area(nd)
        + 0.5 * d * np.log(4.0 * np.pi / (2.0 * nd))
        + 0.5 * (nd - d - 2) * np.log1p(-(d + 2.0) / nd)
        + (0.5 * d + 1.0)
    )
    return float(np.exp(log_c))


@dataclass(frozen=True)
class WeightLimitReport:
    """Grid comparison of G_{t,n} against G_t for several n."""

    d: int
    t: float
    x_grid: np.ndarray
    n_list: tuple
    rel_errors: np.ndarray  # shape (len(n_list), grid size)
    sup_rel_error: np.ndarray  # shape (len(n_list),)
    successive_ratios: np.ndarray  # shape (len(n_list) - 1,)


def weight_limit_report(d: int, t: float, x_grid, n_list) -> WeightLimitReport:
    """Tabulate |G_{t,n}/G_t - 1| over a grid for each n.

    Grid points outside supp G_{t,n} contribute relative error exactly 1,
    since the finite weight vanishes there while G_t does not.
    """
    x_grid = np.asarray(x_grid, dtype=float)
    if x_grid.ndim == 1:
        if d != 1:
            raise ValueError("flat grid only valid for d = 1")
        x_grid = x_grid[:, None]
    if x_grid.size == 0:
        raise ValueError("empty evaluation grid")
    if x_grid.shape[-1] != d:
        raise ValueError(f"grid dimension {x_grid.shape[-1]} != d = {d}")

    n_list = tuple(int(n) for n in n_list)
    g = gaussian_weight(d, t, x_grid)
    rel = np.empty((len(n_list), x_grid.shape[0]))
    for k, n in enumerate(n_list):
        gn = finite_weight(d, n, t, x_grid)
        rel[k] = np.abs(gn / g - 1.0)
    sup = rel.max(axis=1)
    ratios = sup[:-1] / sup[1:]
    return WeightLimitReport(
        d=d,
        t=t,
        x_grid=x_grid,
        n_list=n_list,
        rel_errors=rel,
        sup_rel_error=sup,
        successive_ratios=ratios,
    )
