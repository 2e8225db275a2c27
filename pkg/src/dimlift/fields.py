"""Catalog of closed-form fields the functionals are evaluated on.

Every evaluator is vectorized over leading axes: spatial arguments have shape
(..., dim) and return shape (...) for scalars, (..., dim) for gradients, and
(..., dim, dim) for Hessians.  Time arguments broadcast against the leading
axes.  The caloric convention throughout is the backward one: a field u is
caloric when Lap u + du/dt = 0.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .errors import AccuracyError

__all__ = [
    "ScalarField",
    "SpaceTimeField",
    "SphereField",
    "GraphSurface",
    "NonhomTerm",
    "harmonic_polynomial",
    "caloric_polynomial",
    "heat_kernel_translate",
    "half_space_pair",
    "half_space_power_pair",
    "equator_map",
    "circle_map",
    "bump_spacetime",
    "bump_radial",
    "caloric_from_data",
    "caloric_from_csv",
    "graph_plane",
    "graph_linear",
    "graph_paraboloid",
    "graph_catalog",
    "fd_check_scalar",
    "fd_check_spacetime",
    "caloric_residual",
]


@dataclass(frozen=True)
class ScalarField:
    """A function v on R^N with gradient and (optionally) second derivatives."""

    N: int
    value: Callable
    grad: Callable
    laplacian: Callable | None = None
    hessian: Callable | None = None
    smoothness: str = "smooth"
    name: str = ""
    support: tuple | None = None  # ("annulus", r_in, r_out) or None for all of R^N


@dataclass(frozen=True)
class SpaceTimeField:
    """A function u(x, t) on R^d x (0, inf) with the derivatives the lift needs."""

    d: int
    value: Callable
    grad: Callable
    dt: Callable
    laplacian: Callable
    grad_dt: Callable
    dtt: Callable
    caloric: bool = False
    smoothness: str = "smooth"
    name: str = ""
    window: tuple | None = None  # (r_in, r_out, t_in, t_out) support box, or None


@dataclass(frozen=True)
class SphereField:
    """A map into a unit sphere, |value| = 1 pointwise."""

    dim_domain: int
    dim_target: int
    value: Callable  # (..., dim_domain) -> (..., dim_target)
    jacobian: Callable  # -> (..., dim_target, dim_domain)
    energy: Callable  # |Dv|^2, the squared Frobenius norm of the jacobian
    dt: Callable | None = None  # None marks a time-independent map
    name: str = ""


@dataclass(frozen=True)
class GraphSurface:
    """A hypersurface given as a graph x_{dim+1} = v(y, t)."""

    dim: int
    value: Callable
    grad: Callable
    hessian: Callable
    dt: Callable
    static: bool = True
    name: str = ""


@dataclass(frozen=True)
class NonhomTerm:
    """Bounded right-hand side h (scalar) or H (vector) of a perturbed equation."""

    value: Callable
    vector: bool = False
    bound: float | None = None
    name: str = ""


def _zeros_like_leading(x: np.ndarray) -> np.ndarray:
    return np.zeros(np.asarray(x).shape[:-1])


# ---------------------------------------------------------------------------
# harmonic and caloric polynomials


def harmonic_polynomial(kind: str, N: int, k: int | None = None) -> ScalarField:
    """Homogeneous harmonic polynomials: "x1", "x1x2", or "re_zk" (N = 2 only)."""
    if kind == "x1":
        if N < 1:
            raise ValueError("need N >= 1")

        def val(y):
            return np.asarray(y, float)[..., 0]

        def grad(y):
            g = np.zeros_like(np.asarray(y, float))
            g[..., 0] = 1.0
            return g

        return ScalarField(
            N=N,
            value=val,
            grad=grad,
            laplacian=_zeros_like_leading,
            hessian=lambda y: np.zeros(np.asarray(y).shape + (N,)),
            name="x1",
        )
    if kind == "x1x2":
        if N < 2:
            raise ValueError("x1x2 needs N >= 2")

        def val(y):
            y = np.asarray(y, float)
            return y[..., 0] * y[..., 1]

        def grad(y):
            y = np.asarray(y, float)
            g = np.zeros_like(y)
            g[..., 0] = y[..., 1]
            g[..., 1] = y[..., 0]
            return g

        def hess(y):
            y = np.asarray(y, float)
            h = np.zeros(y.shape + (N,))
            h[..., 0, 1] = 1.0
            h[..., 1, 0] = 1.0
            return h

        return ScalarField(
            N=N,
            value=val,
            grad=grad,
            laplacian=_zeros_like_leading,
            hessian=hess,
            name="x1x2",
        )
    if kind == "re_zk":
        if N != 2:
            raise ValueError("re_zk lives on R^2")
        if k is None or k < 1:
            raise ValueError("re_zk needs a degree k >= 1")

        def val(y):
            y = np.asarray(y, float)
            return ((y[..., 0] + 1j * y[..., 1]) ** k).real

        def grad(y):
            y = np.asarray(y, float)
            w = k * (y[..., 0] + 1j * y[..., 1]) ** (k - 1)
            # d/dy1 Re z^k = Re k z^(k-1), d/dy2 Re z^k = -Im k z^(k-1)
            return np.stack([w.real, -w.imag], axis=-1)

        def hess(y):
            y = np.asarray(y, float)
            w = k * (k - 1) * (y[..., 0] + 1j * y[..., 1]) ** (k - 2) if k >= 2 else np.zeros(y.shape[:-1], complex)
            h = np.empty(y.shape + (2,))
            h[..., 0, 0] = w.real
            h[..., 0, 1] = -w.imag
            h[..., 1, 0] = -w.imag
            h[..., 1, 1] = -w.real
            return h

        return ScalarField(
            N=2,
            value=val,
            grad=grad,
            laplacian=_zeros_like_leading,
            hessian=hess,
            name=f"re_z{k}",
        )
    raise ValueError(f"unknown harmonic polynomial kind {kind!r}")


def caloric_polynomial(kind: str, d: int) -> SpaceTimeField:
    """Backward caloric polynomials: x1, x1^2 - 2t, x1^3 - 6 x1 t, |x|^2 - 2dt."""
    if d < 1:
        raise ValueError("need d >= 1")

    def zeros(x, t):
        return np.zeros(np.broadcast_shapes(np.shape(np.asarray(x)[..., 0]), np.shape(t)))

    def zeros_vec(x, t):
        shp = np.broadcast_shapes(np.shape(np.asarray(x)[..., 0]), np.shape(t))
        return np.zeros(shp + (d,))

    def e1(x, t):
        g = zeros_vec(x, t)
        g[..., 0] = 1.0
        return g

    if kind == "x1":
        return SpaceTimeField(
            d=d,
            value=lambda x, t: np.asarray(x, float)[..., 0] + 0.0 * np.asarray(t),
            grad=e1,
            dt=zeros,
            laplacian=zeros,
            grad_dt=zeros_vec,
            dtt=zeros,
            caloric=True,
            name="x1",
        )
    if kind == "x1sq":

        def grad_x1sq(x, t):
            x = np.asarray(x, float)
            g = zeros_vec(x, t)
            g[..., 0] = 2.0 * x[..., 0]
            return g

        return SpaceTimeField(
            d=d,
            value=lambda x, t: np.asarray(x, float)[..., 0] ** 2 - 2.0 * np.asarray(t),
            grad=grad_x1sq,
            dt=lambda x, t: -2.0 + zeros(x, t),
            laplacian=lambda x, t: 2.0 + zeros(x, t),
            grad_dt=zeros_vec,
            dtt=zeros,
            caloric=True,
            name="x1sq",
        )
    if kind == "x1cube":

        def grad(x, t):
            x = np.asarray(x, float)
            g = zeros_vec(x, t)
            g[..., 0] = 3.0 * x[..., 0] ** 2 - 6.0 * np.asarray(t)
            return g

        def grad_dt(x, t):
            g = zeros_vec(x, t)
            g[..., 0] = -6.0
            return g

        return SpaceTimeField(
            d=d,
            value=lambda x, t: np.asarray(x, float)[..., 0] ** 3 - 6.0 * np.asarray(x, float)[..., 0] * np.asarray(t),
            grad=grad,
            dt=lambda x, t: -6.0 * np.asarray(x, float)[..., 0] + 0.0 * np.asarray(t),
            laplacian=lambda x, t: 6.0 * np.asarray(x, float)[..., 0] + 0.0 * np.asarray(t),
            grad_dt=grad_dt,
            dtt=zeros,
            caloric=True,
            name="x1cube",
        )
    if kind == "radial":

        def grad_radial(x, t):
            x = np.asarray(x, float)
            return 2.0 * x + zeros_vec(x, t)

        return SpaceTimeField(
            d=d,
            value=lambda x, t: np.sum(np.asarray(x, float) ** 2, axis=-1) - 2.0 * d * np.asarray(t),
            grad=grad_radial,
            dt=lambda x, t: -2.0 * d + zeros(x, t),
            laplacian=lambda x, t: 2.0 * d + zeros(x, t),
            grad_dt=zeros_vec,
            dtt=zeros,
            caloric=True,
            name="radial",
        )
    raise ValueError(f"unknown caloric polynomial kind {kind!r}")


# ---------------------------------------------------------------------------
# heat kernel translates and kernel superpositions


def _kernel_terms(z: np.ndarray, s, d: int):
    """G, grad G, Lap G, grad Lap G, and d2/ds2-related pieces for G(z, s)."""
    s = np.asarray(s, float)
    rr = np.sum(z * z, axis=-1)
    g = np.exp(-rr / (4.0 * s) - 0.5 * d * np.log(4.0 * math.pi * s))
    a = rr / (4.0 * s**2) - d / (2.0 * s)  # Lap G = a G ( = dG/ds)
    grad = -z / (2.0 * s[..., None] if s.ndim else 2.0 * s) * g[..., None]
    lap = a * g
    # grad(a G) = z G (1/(2 s^2) - a/(2 s))
    grad_lap = z * (g * (1.0 / (2.0 * s**2) - a / (2.0 * s)))[..., None]
    a_s = -rr / (2.0 * s**3) + d / (2.0 * s**2)
    lap2_like = (a * a + a_s) * g  # d^2 G / ds^2
    return g, grad, lap, grad_lap, lap2_like


def heat_kernel_translate(d: int, x0, s0: float) -> SpaceTimeField:
    """u(x, t) = G(x - x0, s0 - t): backward caloric for t < s0, singular at t = s0."""
    x0 = np.zeros(d) if x0 is None else np.asarray(x0, dtype=float).reshape(d)
    if not s0 > 0.0:
        raise ValueError("need s0 > 0")

    def shifted(x, t):
        t = np.asarray(t, float)
        if np.any(t >= s0):
            raise ValueError(f"heat kernel translate needs t < s0 = {s0}")
        return np.asarray(x, float) - x0, s0 - t

    def value(x, t):
        z, s = shifted(x, t)
        return _kernel_terms(z, s, d)[0]

    def grad(x, t):
        z, s = shifted(x, t)
        return _kernel_terms(z, s, d)[1]

    def laplacian(x, t):
        z, s = shifted(x, t)
        return _kernel_terms(z, s, d)[2]

    def dt(x, t):
        # du/dt = -dG/ds = -Lap G
        return -laplacian(x, t)

    def grad_dt(x, t):
        z, s = shifted(x, t)
        return -_kernel_terms(z, s, d)[3]

    def dtt(x, t):
        z, s = shifted(x, t)
        return _kernel_terms(z, s, d)[4]

    return SpaceTimeField(
        d=d,
        value=value,
        grad=grad,
        dt=dt,
        laplacian=laplacian,
        grad_dt=grad_dt,
        dtt=dtt,
        caloric=True,
        name=f"heat_kernel_translate(x0={x0.tolist()}, s0={s0})",
    )


def caloric_from_data(g, T: float, d: int = 1, radius: float | None = None, nodes: int = 128) -> SpaceTimeField:
    """Backward caloric extension u(x, t) = int G(x - xi, T - t) g(xi) dxi of data g at time T.

    g is a vectorized callable on R^d.  The integral is discretized once on a
    tensor Gauss-Legendre grid over [-radius, radius]^d; all derivatives are
    then exact derivatives of the discretized sum, so the caloric residual
    vanishes identically.  Evaluation within 1e-3 of the data time raises.
    """
    if not T > 0.0:
        raise ValueError("need T > 0")
    if radius is None:
        radius = 4.0 + 2.0 * math.sqrt(16.0 * math.log(10.0) * T)
    xs, ws = np.polynomial.legendre.leggauss(nodes)
    axis = radius * xs
    waxis = radius * ws
    if d == 1:
        xi = axis[:, None]
        w = waxis
    else:
        grids = np.meshgrid(*([axis] * d), indexing="ij")
        xi = np.stack([gg.ravel() for gg in grids], axis=-1)
        wg = np.meshgrid(*([waxis] * d), indexing="ij")
        w = np.ones(xi.shape[0])
        for gg in wg:
            w = w * gg.ravel()
    coeff = w * np.asarray(g(xi), float)  # (M,)
    return _kernel_sum_field(xi, coeff, T, d, name=f"caloric_from_data(T={T})")


def caloric_from_csv(path, T: float) -> SpaceTimeField:
    """Like caloric_from_data but with tabulated data.

    The CSV must have a header ``x1,...,xd,value`` describing a full regular
    tensor grid (uniform spacing along each axis); quadrature weights are the
    grid cell volumes.
    """
    with open(path, newline="") as fh:
        rows = list(csv.reader(fh))
    header = [c.strip() for c in rows[0]]
    if header[-1] != "value" or not all(h == f"x{i + 1}" for i, h in enumerate(header[:-1])):
        raise ValueError("expected CSV header x1,...,xd,value")
    d = len(header) - 1
    data = np.array([[float(c) for c in row] for row in rows[1:]], dtype=float)
    xi, vals = data[:, :d], data[:, d]
    cell = 1.0
    for i in range(d):
        levels = np.unique(xi[:, i])
        if len(levels) < 2:
            raise ValueError(f"axis x{i + 1} needs at least two grid levels")
        steps = np.diff(levels)
        if not np.allclose(steps, steps[0], rtol=1e-9, atol=1e-12):
            raise ValueError(f"axis x{i + 1} is not uniformly spaced")
        cell *= steps[0]
    expected = 1
    for i in range(d):
        expected *= len(np.unique(xi[:, i]))
    if len(xi) != expected:
        raise ValueError("grid rows do not form a full tensor product")
    return _kernel_sum_field(xi, cell * vals, T, d, name=f"caloric_from_csv(T={T})")


def _kernel_sum_field(xi: np.ndarray, coeff: np.ndarray, T: float, d: int, name: str) -> SpaceTimeField:
    xi = np.asarray(xi, float).reshape(-1, d)
    coeff = np.asarray(coeff, float)

    def prepare(x, t):
        t = float(t) if np.ndim(t) == 0 else np.asarray(t, float)
        if np.any(np.abs(T - np.asarray(t)) < 1e-3):
            raise AccuracyError(f"cannot evaluate within 1e-3 of the data time T = {T}")
        x = np.asarray(x, float)
        z = x[..., None, :] - xi  # (..., M, d)
        s = np.broadcast_to(np.asarray(T - np.asarray(t), float)[..., None], z.shape[:-1])
        return z, s

    def value(x, t):
        z, s = prepare(x, t)
        g, *_ = _kernel_terms(z, s, d)
        return g @ coeff

    def grad(x, t):
        z, s = prepare(x, t)
        _, gr, *_ = _kernel_terms(z, s, d)
        return np.einsum("...md,m->...d", gr, coeff)

    def laplacian(x, t):
        z, s = prepare(x, t)
        lap = _kernel_terms(z, s, d)[2]
        return lap @ coeff

    def dt(x, t):
        return -laplacian(x, t)

    def grad_dt(x, t):
        z, s = prepare(x, t)
        gl = _kernel_terms(z, s, d)[3]
        return -np.einsum("...md,m->...d", gl, coeff)

    def dtt(x, t):
        z, s = prepare(x, t)
        return _kernel_terms(z, s, d)[4] @ coeff

    return SpaceTimeField(
        d=d,
        value=value,
        grad=grad,
        dt=dt,
        laplacian=laplacian,
        grad_dt=grad_dt,
        dtt=dtt,
        caloric=True,
        name=name,
    )


# ---------------------------------------------------------------------------
# half-space pairs (two-phase catalog)


def _half_space_field(d: int, sign: float, power: int) -> SpaceTimeField:
    # sign +1: supported on x1 > 0; sign -1: on x1 < 0.  u = (sign * x1)_+ ^ power.
    def part(x):
        return np.maximum(sign * np.asarray(x, float)[..., 0], 0.0)

    def value(x, t):
        return part(x) ** power + 0.0 * np.asarray(t)

    def grad(x, t):
        x = np.asarray(x, float)
        g = np.zeros(np.broadcast_shapes(x[..., 0].shape, np.shape(t)) + (d,))
        p = part(x)
        g[..., 0] = sign * power * p ** (power - 1) * (p > 0.0)  # kill the 0^0 = 1 artifact at the interface
        return g

    def laplacian(x, t):
        if power == 1:
            return np.zeros(np.broadcast_shapes(np.asarray(x)[..., 0].shape, np.shape(t)))
        p = part(x)
        return power * (power - 1) * p ** (power - 2) * (p > 0.0) + 0.0 * np.asarray(t)

    def zeros(x, t):
        return np.zeros(np.broadcast_shapes(np.asarray(x)[..., 0].shape, np.shape(t)))

    def zeros_vec(x, t):
        return np.zeros(np.broadcast_shapes(np.asarray(x)[..., 0].shape, np.shape(t)) + (d,))

    tag = {1: "", 2: "sq", 3: "cube"}.get(power, f"^{power}")
    side = "plus" if sign > 0 else "minus"
    return SpaceTimeField(
        d=d,
        value=value,
        grad=grad,
        dt=zeros,
        laplacian=laplacian,
        grad_dt=zeros_vec,
        dtt=zeros,
        caloric=(power == 1),
        smoothness="lipschitz-ae",
        name=f"x1_{side}{tag}",
    )


def half_space_pair(dim: int, kind: str = "parabolic"):
    """The complementary pair (x1)_+ and (x1)_-, caloric or harmonic off the interface.

    kind "parabolic" returns SpaceTimeFields on R^dim x (0, inf); "elliptic"
    returns ScalarFields on R^dim.
    """
    if kind == "parabolic":
        return _half_space_field(dim, +1.0, 1), _half_space_field(dim, -1.0, 1)
    if kind == "elliptic":

        def mk(sign: float) -> ScalarField:
            def value(y):
                return np.maximum(sign * np.asarray(y, float)[..., 0], 0.0)

            def grad(y):
                y = np.asarray(y, float)
                g = np.zeros_like(y)
                g[..., 0] = sign * (sign * y[..., 0] > 0.0)
                return g

            return ScalarField(
                N=dim,
                value=value,
                grad=grad,
                laplacian=lambda y: np.zeros(np.asarray(y).shape[:-1]),
                smoothness="lipschitz-ae",
                name="y1_plus" if sign > 0 else "y1_minus",
            )

        return mk(+1.0), mk(-1.0)
    raise ValueError(f"unknown kind {kind!r}")


def half_space_power_pair(dim: int, power: int = 3):
    """Disjointly supported pair ((x1)_+)^power and (x1)_-; the first is strictly subcaloric."""
    if power < 2:
        raise ValueError("power >= 2 (use half_space_pair for the linear pair)")
    return _half_space_field(dim, +1.0, power), _half_space_field(dim, -1.0, 1)


# ---------------------------------------------------------------------------
# sphere-valued maps


def equator_map(N: int) -> SphereField:
    """v(y) = y / |y| from R^N to S^(N-1); |Dv|^2 = (N - 1)/|y|^2.  Undefined at 0."""
    if N < 3:
        raise ValueError("equator map needs N >= 3 for finite local energy")

    def norms(y):
        y = np.asarray(y, float)
        r = np.linalg.norm(y, axis=-1)
        if np.any(r == 0.0):
            raise ValueError("equator map is undefined at the origin")
        return y, r

    def value(y):
        y, r = norms(y)
        return y / r[..., None]

    def jacobian(y):
        y, r = norms(y)
        eye = np.eye(N)
        return eye / r[..., None, None] - y[..., :, None] * y[..., None, :] / (r**3)[..., None, None]

    def energy(y):
        _, r = norms(y)
        return (N - 1) / r**2

    return SphereField(
        dim_domain=N,
        dim_target=N,
        value=value,
        jacobian=jacobian,
        energy=energy,
        name=f"equator_map(N={N})",
    )


def circle_map(d: int = 1) -> SphereField:
    """u(x) = (cos x1, sin x1): a time-independent unit-energy harmonic map into S^1."""

    def value(x):
        x1 = np.asarray(x, float)[..., 0]
        return np.stack([np.cos(x1), np.sin(x1)], axis=-1)

    def jacobian(x):
        x1 = np.asarray(x, float)[..., 0]
        j = np.zeros(x1.shape + (2, d))
        j[..., 0, 0] = -np.sin(x1)
        j[..., 1, 0] = np.cos(x1)
        return j

    def energy(x):
        return np.ones(np.asarray(x).shape[:-1])

    return SphereField(
        dim_domain=d,
        dim_target=2,
        value=value,
        jacobian=jacobian,
        energy=energy,
        name="circle_map",
    )


# ---------------------------------------------------------------------------
# compactly supported bumps


def _bump_profile(a: float, b: float, k: int):
    """c ((r - a)(b - r))_+^k normalized to 1 at the midpoint; returns (p, p', p'')."""
    c = (0.25 * (b - a) ** 2) ** (-k)

    def parts(r):
        r = np.asarray(r, float)
        q = (r - a) * (b - r)
        inside = (r > a) & (r < b)
        q = np.where(inside, q, 0.0)
        dq = a + b - 2.0 * r
        p = c * q**k
        dp = np.where(inside, c * k * q ** (k - 1) * dq, 0.0)
        ddp = np.where(inside, c * k * ((k - 1) * q ** (k - 2) * dq**2 - 2.0 * q ** (k - 1)), 0.0)
        return p, dp, ddp

    return parts


def bump_spacetime(d: int, r_in: float, r_out: float, t_in: float, t_out: float, k: int = 4) -> SpaceTimeField:
    """Separable bump rho(|x|) sigma(t) supported on the annulus-window away from the origin.

    Both factors are polynomial splines ((s - a)(b - s))^k scaled so the value
    at the window center (|x| and t at the midpoints) is exactly 1.  All
    derivatives, hence the caloric residual, are closed-form.
    """
    if not (0.0 < r_in < r_out and 0.0 < t_in < t_out):
        raise ValueError("need 0 < r_in < r_out and 0 < t_in < t_out")
    if k < 3:
        raise ValueError("need smoothness k >= 3")
    rho = _bump_profile(r_in, r_out, k)
    sig = _bump_profile(t_in, t_out, k)

    def radial(x):
        x = np.asarray(x, float)
        return x, np.linalg.norm(x, axis=-1)

    def value(x, t):
        x, r = radial(x)
        return rho(r)[0] * sig(t)[0]

    def grad(x, t):
        x, r = radial(x)
        p, dp, _ = rho(r)
        safe = np.where(r > 0.0, r, 1.0)
        return (sig(t)[0] * dp / safe)[..., None] * x

    def laplacian(x, t):
        x, r = radial(x)
        p, dp, ddp = rho(r)
        safe = np.where(r > 0.0, r, 1.0)
        return sig(t)[0] * (ddp + (d - 1) * dp / safe)

    def dt(x, t):
        _, r = radial(x)
        return rho(r)[0] * sig(t)[1]

    def grad_dt(x, t):
        x, r = radial(x)
        _, dp, _ = rho(r)
        safe = np.where(r > 0.0, r, 1.0)
        return (sig(t)[1] * dp / safe)[..., None] * x

    def dtt(x, t):
        _, r = radial(x)
        return rho(r)[0] * sig(t)[2]

    return SpaceTimeField(
        d=d,
        value=value,
        grad=grad,
        dt=dt,
        laplacian=laplacian,
        grad_dt=grad_dt,
        dtt=dtt,
        caloric=False,
        smoothness=f"C^{k - 1}",
        name=f"bump(r=[{r_in},{r_out}], t=[{t_in},{t_out}], k={k})",
        window=(r_in, r_out, t_in, t_out),
    )


def bump_radial(N: int, r_in: float, r_out: float, k: int = 4) -> ScalarField:
    """Radial bump on the annulus r_in < |y| < r_out, 1 at the middle radius."""
    if not 0.0 < r_in < r_out:
        raise ValueError("need 0 < r_in < r_out")
    if k < 3:
        raise ValueError("need smoothness k >= 3")
    rho = _bump_profile(r_in, r_out, k)

    def value(y):
        return rho(np.linalg.norm(np.asarray(y, float), axis=-1))[0]

    def grad(y):
        y = np.asarray(y, float)
        r = np.linalg.norm(y, axis=-1)
        _, dp, _ = rho(r)
        safe = np.where(r > 0.0, r, 1.0)
        return (dp / safe)[..., None] * y

    def laplacian(y):
        y = np.asarray(y, float)
        r = np.linalg.norm(y, axis=-1)
        _, dp, ddp = rho(r)
        safe = np.where(r > 0.0, r, 1.0)
        return ddp + (N - 1) * dp / safe

    def hessian(y):
        y = np.asarray(y, float)
        r = np.linalg.norm(y, axis=-1)
        _, dp, ddp = rho(r)
        safe = np.where(r > 0.0, r, 1.0)
        yhat = y / safe[..., None]
        outer = yhat[..., :, None] * yhat[..., None, :]
        eye = np.eye(N)
        return ddp[..., None, None] * outer + (dp / safe)[..., None, None] * (eye - outer)

    return ScalarField(
        N=N,
        value=value,
        grad=grad,
        laplacian=laplacian,
        hessian=hessian,
        smoothness=f"C^{k - 1}",
        name=f"bump_radial([{r_in},{r_out}], k={k})",
        support=("annulus", r_in, r_out),
    )


# ---------------------------------------------------------------------------
# graph surfaces


def graph_plane(dim: int, c: float = 0.0) -> GraphSurface:
    """Horizontal plane x_{dim+1} = c."""

    def zeros(y, t):
        return np.zeros(np.asarray(y).shape[:-1])

    return GraphSurface(
        dim=dim,
        value=lambda y, t: np.full(np.asarray(y).shape[:-1], float(c)),
        grad=lambda y, t: np.zeros_like(np.asarray(y, float)),
        hessian=lambda y, t: np.zeros(np.asarray(y).shape + (dim,)),
        dt=zeros,
        name=f"plane(c={c})",
    )


def graph_linear(a) -> GraphSurface:
    """Tilted plane x_{dim+1} = a . y."""
    a = np.asarray(a, dtype=float)
    dim = a.shape[0]

    return GraphSurface(
        dim=dim,
        value=lambda y, t: np.asarray(y, float) @ a,
        grad=lambda y, t: np.broadcast_to(a, np.asarray(y).shape).copy(),
        hessian=lambda y, t: np.zeros(np.asarray(y).shape + (dim,)),
        dt=lambda y, t: np.zeros(np.asarray(y).shape[:-1]),
        name=f"linear(a={a.tolist()})",
    )


def graph_paraboloid(dim: int, eps: float) -> GraphSurface:
    """Shallow paraboloid x_{dim+1} = eps |y|^2 / 2; mean curvature eps * dim at the origin."""

    return GraphSurface(
        dim=dim,
        value=lambda y, t: 0.5 * eps * np.sum(np.asarray(y, float) ** 2, axis=-1),
        grad=lambda y, t: eps * np.asarray(y, float),
        hessian=lambda y, t: np.broadcast_to(eps * np.eye(dim), np.asarray(y).shape + (dim,)).copy(),
        dt=lambda y, t: np.zeros(np.asarray(y).shape[:-1]),
        name=f"paraboloid(eps={eps})",
    )


def graph_catalog(kind: str, dim: int, c: float = 0.0, a=None, eps: float = 0.1) -> GraphSurface:
    if kind == "plane":
        return graph_plane(dim, c)
    if kind == "linear":
        return graph_linear(np.ones(dim) * 0.3 if a is None else a)
    if kind == "paraboloid_eps":
        return graph_paraboloid(dim, eps)
    raise ValueError(f"unknown graph kind {kind!r}")


# ---------------------------------------------------------------------------
# finite-difference self checks


def _rel(err: np.ndarray, ref: np.ndarray) -> float:
    return float(np.max(np.abs(err) / np.maximum(np.abs(ref), 1.0)))


def fd_check_scalar(field: ScalarField, points: np.ndarray, h: float = 1e-5) -> float:
    """Max relative mismatch between field.grad and central differences of field.value."""
    points = np.asarray(points, dtype=float)
    an = np.asarray(field.grad(points), float)
    fd = np.empty_like(an)
    for i in range(field.N):
        e = np.zeros(field.N)
        e[i] = h
        fd[..., i] = (field.value(points + e) - field.value(points - e)) / (2.0 * h)
    return _rel(fd - an, an)


def fd_check_spacetime(u: SpaceTimeField, points: np.ndarray, ts: np.ndarray, h: float = 1e-5, h2: float = 1e-3) -> dict:
    """Relative FD mismatches for all stored derivatives of a space-time field.

    First derivatives use step h; the Laplacian and dtt use the larger step h2
    to keep the second-difference roundoff below the check tolerance.
    """
    points = np.asarray(points, dtype=float)
    ts = np.asarray(ts, dtype=float)
    d = u.d
    out = {}

    grads = np.stack([u.grad(x, t) for x, t in zip(points, ts)])
    fd = np.empty_like(grads)
    for i in range(d):
        e = np.zeros(d)
        e[i] = h
        fd[:, i] = np.array([(u.value(x + e, t) - u.value(x - e, t)) / (2.0 * h) for x, t in zip(points, ts)])
    out["grad"] = _rel(fd - grads, grads)

    dts = np.array([u.dt(x, t) for x, t in zip(points, ts)])
    fd1 = np.array([(u.value(x, t + h) - u.value(x, t - h)) / (2.0 * h) for x, t in zip(points, ts)])
    out["dt"] = _rel(fd1 - dts, dts)

    laps = np.array([u.laplacian(x, t) for x, t in zip(points, ts)])
    fd2 = np.zeros_like(laps)
    for i in range(d):
        e = np.zeros(d)
        e[i] = h2
        fd2 += np.array(
            [(u.value(x + e, t) - 2.0 * u.value(x, t) + u.value(x - e, t)) / h2**2 for x, t in zip(points, ts)]
        )
    out["laplacian"] = _rel(fd2 - laps, laps)

    gdt = np.stack([u.grad_dt(x, t) for x, t in zip(points, ts)])
    fdm = np.empty_like(gdt)
    for i in range(d):
        e = np.zeros(d)
        e[i] = h
        fdm[:, i] = np.array(
            [
                (u.value(x + e, t + h) - u.value(x - e, t + h) - u.value(x + e, t - h) + u.value(x - e, t - h))
                / (4.0 * h * h)
                for x, t in zip(points, ts)
            ]
        )
    out["grad_dt"] = _rel(fdm - gdt, gdt)

    dtts = np.array([u.dtt(x, t) for x, t in zip(points, ts)])
    fdt2 = np.array([(u.value(x, t + h2) - 2.0 * u.value(x, t) + u.value(x, t - h2)) / h2**2 for x, t in zip(points, ts)])
    out["dtt"] = _rel(fdt2 - dtts, dtts)
    return out


def caloric_residual(u: SpaceTimeField, x, t):
    """Lap u + du/dt, zero for backward caloric fields."""
    return np.asarray(u.laplacian(x, t)) + np.asarray(u.dt(x, t))
