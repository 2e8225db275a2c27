"""Deterministic weighted quadrature and seeded Monte Carlo for lifted measures.

Quadrature rules are product rules: a radial Gauss rule times an angular rule
on the unit sphere.  Every deterministic estimate is refined by node doubling
until two successive values agree to the requested relative tolerance; if
three doublings do not stabilize the value, an AccuracyError is raised with
the last two estimates.

Monte Carlo sampling is counter-based: batch k of a run is a pure function of
(seed, k), and partial sums are combined in batch order, so results are
bit-identical for any thread count.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Iterator

import numpy as np
from scipy.special import roots_jacobi

from .errors import AccuracyError, UnsupportedConfigError
from .lift import LiftConfig, lift_point_time
from .weights import _log_sphere_area

__all__ = [
    "QuadratureSpec",
    "MonteCarloSpec",
    "IntegralEstimate",
    "PushforwardCheck",
    "integrate_weighted",
    "integrate_spacetime",
    "integrate_ball",
    "integrate_annulus",
    "integrate_sphere",
    "integrate_window",
    "sample_sphere_uniform",
    "sample_mu_ball",
    "mc_mean",
    "pushforward_check_sphere",
    "pushforward_check_ball",
]

ANGULAR_RULES = ("product-gauss", "lebedev-like", "tensor-trapezoid")

# Tail cut for the Gaussian weight: exp(-R^2/4t) = 1e-16 at R = TAIL_FACTOR * sqrt(t).
TAIL_FACTOR = 2.0 * math.sqrt(16.0 * math.log(10.0))


@dataclass(frozen=True)
class QuadratureSpec:
    """Node counts and tolerance for deterministic integration."""

    radial_nodes: int = 48
    angular_rule: str = "product-gauss"
    time_nodes: int = 48
    target_rel_tol: float = 1e-11

    def __post_init__(self) -> None:
        if self.radial_nodes < 2:
            raise ValueError("radial_nodes must be >= 2")
        if self.time_nodes < 2:
            raise ValueError("time_nodes must be >= 2")
        if self.angular_rule not in ANGULAR_RULES:
            raise ValueError(f"angular_rule must be one of {ANGULAR_RULES}")
        if not (0.0 < self.target_rel_tol <= 1e-2):
            raise ValueError("target_rel_tol must lie in (0, 1e-2]")


@dataclass(frozen=True)
class MonteCarloSpec:
    """Seeded sampling plan; estimates are a pure function of (seed, samples, batch)."""

    seed: int
    samples: int = 100_000
    batch: int = 16_384

    def __post_init__(self) -> None:
        if self.samples < 1_000:
            raise ValueError("samples must be >= 1000")
        if self.batch < 1:
            raise ValueError("batch must be >= 1")
        if self.seed < 0:
            raise ValueError("seed must be a nonnegative integer")


@dataclass(frozen=True)
class IntegralEstimate:
    """Value with provenance; std_error is 0 exactly when the method is deterministic."""

    value: float | np.ndarray
    std_error: float | np.ndarray
    method: str
    evaluations: int

    def __post_init__(self) -> None:
        err = np.asarray(self.std_error)
        if np.any(err < 0.0):
            raise ValueError("std_error must be nonnegative")
        deterministic = self.method == "quadrature"
        if deterministic != bool(np.all(err == 0.0)):
            raise ValueError("std_error must be 0 iff the method is deterministic")


# ---------------------------------------------------------------------------
# cached 1-d rules


@lru_cache(maxsize=None)
def _leggauss(k: int) -> tuple[np.ndarray, np.ndarray]:
    return np.polynomial.legendre.leggauss(k)


@lru_cache(maxsize=None)
def _jacobi(k: int, alpha: float, beta: float) -> tuple[np.ndarray, np.ndarray]:
    return roots_jacobi(k, alpha, beta)


# ---------------------------------------------------------------------------
# angular rules on the unit sphere S^(N-1)


def _azimuth_count(level: int) -> int:
    # multiple of 4 so coordinate half-planes and quadrants split the nodes exactly
    return 4 * max(4, level // 2)


@lru_cache(maxsize=None)
def _circle_nodes(level: int) -> tuple[np.ndarray, np.ndarray]:
    m = _azimuth_count(level)
    theta = 2.0 * np.pi * (np.arange(m) + 0.5) / m
    pts = np.stack([np.cos(theta), np.sin(theta)], axis=-1)
    return pts, np.full(m, 2.0 * np.pi / m)


@lru_cache(maxsize=None)
def _fibonacci_nodes(level: int) -> tuple[np.ndarray, np.ndarray]:
    # equal-weight quasi-uniform S^2 covering (spiral points)
    m = max(144, level * level // 2)
    golden = (1.0 + math.sqrt(5.0)) / 2.0
    k = np.arange(m) + 0.5
    z = 1.0 - 2.0 * k / m
    s = np.sqrt(1.0 - z * z)
    phi = 2.0 * np.pi * k / golden
    pts = np.stack([s * np.cos(phi), s * np.sin(phi), z], axis=-1)
    return pts, np.full(m, 4.0 * np.pi / m)


@lru_cache(maxsize=None)
def _sphere_nodes(N: int, level: int, rule: str) -> tuple[np.ndarray, np.ndarray]:
    """Nodes (m, N) and weights (m,) with sum |S^(N-1)|."""
    if N == 1:
        return np.array([[1.0], [-1.0]]), np.array([1.0, 1.0])
    if N == 2:
        return _circle_nodes(level)
    if rule == "lebedev-like":
        if N != 3:
            raise UnsupportedConfigError("lebedev-like rule is defined for N = 3 only")
        return _fibonacci_nodes(level)

    sub_pts, sub_w = _sphere_nodes(N - 1, level, rule)
    if rule == "product-gauss":
        # x = (sin(theta) w', cos(theta)); Gauss-Jacobi absorbs sin^(N-2)
        k = max(6, level // 2)
        u, wu = _jacobi(k, 0.5 * (N - 3), 0.5 * (N - 3))
    else:  # tensor-trapezoid: midpoint in the polar angle
        k = max(8, level)
        theta = np.pi * (np.arange(k) + 0.5) / k
        u = np.cos(theta)
        wu = (np.pi / k) * np.sin(theta) ** (N - 2)
    s = np.sqrt(np.maximum(0.0, 1.0 - u * u))
    pts = np.concatenate(
        [s[:, None, None] * sub_pts[None, :, :], np.broadcast_to(u[:, None, None], (len(u), len(sub_w), 1))],
        axis=-1,
    ).reshape(-1, N)
    w = (wu[:, None] * sub_w[None, :]).reshape(-1)
    return pts, w


# ---------------------------------------------------------------------------
# node-doubling driver


def _as_vector(v) -> np.ndarray:
    return np.atleast_1d(np.asarray(v, dtype=float))


def _refine(eval_at_level: Callable[[int], tuple], level0: int, tol: float):
    """Run eval_at_level at level0, 2*level0, ... until two values agree.

    eval_at_level returns (value, evaluation_count).  Convergence test:
    max |v_new - v_old| <= tol * max(||v_new||_inf, 1).
    """
    prev, total = eval_at_level(level0)
    prev_v = _as_vector(prev)
    for k in range(1, 4):
        cur, cnt = eval_at_level(level0 << k)
        total += cnt
        cur_v = _as_vector(cur)
        if np.max(np.abs(cur_v - prev_v)) <= tol * max(float(np.max(np.abs(cur_v))), 1.0):
            return cur, total
        prev, prev_v = cur, cur_v
    raise AccuracyError(
        "quadrature did not stabilize after three node doublings",
        (prev if np.ndim(prev) == 0 else prev_v, cur if np.ndim(cur) == 0 else cur_v),
    )


# ---------------------------------------------------------------------------
# weighted integrals on R^d


def _weighted_slice(phi, weight: str, d: int, t: float, level: int, rule: str, n: int | None):
    """One fixed-level evaluation of int phi(x) w(x) dx; phi maps (..., d) -> (...) or (..., K)."""
    omega, wa = _sphere_nodes(d, level, rule)
    if weight == "gaussian":
        r_max = TAIL_FACTOR * math.sqrt(t)
        xs, wleg = _leggauss(level)
        r = 0.5 * r_max * (xs + 1.0)
        wr = 0.5 * r_max * wleg
        dens = np.exp(-r * r / (4.0 * t) - 0.5 * d * math.log(4.0 * math.pi * t))
        radial_w = wr * r ** (d - 1) * dens
    elif weight == "finite":
        if n is None:
            raise ValueError("finite weight needs the step count n")
        if n < 1:
            raise UnsupportedConfigError(f"finite weight needs n >= 1; got n={n}")
        nd = n * d
        if n == 1:
            # single step per coordinate: the push-forward measure is the
            # uniform law on the sphere |x| = sqrt(2dt), with no density at all
            vals = np.asarray(phi(math.sqrt(2.0 * d * t) * omega), dtype=float)
            acc = np.tensordot(wa, vals, axes=([0], [0])) / math.exp(_log_sphere_area(d))
            acc = np.asarray(acc)
            return (float(acc) if acc.ndim == 0 else acc), omega.shape[0]
        r_max = math.sqrt(2.0 * nd * t)
        expo = 0.5 * (nd - d - 2)
        log_pref = _log_sphere_area(nd - d) - _log_sphere_area(nd) - 0.5 * d * math.log(2.0 * nd * t)
        if d % 2 == 1:
            # r = R s with the symmetric rule for (1 - s^2)^expo; folding the
            # +-s node pairs into the antipodal angular pairs keeps r^{d-1}
            # times the angular average smooth even when phi has an integrable
            # pole at the origin, and it avoids the Jacobi parameter -1/2 of
            # the generic substitution, which loses ~1e-11 at high degree
            lev = level + (level % 2)
            s, ws = _jacobi(lev, expo, expo)
            half = lev // 2
            r = r_max * s[half:]
            radial_w = r_max**d * math.exp(log_pref) * ws[half:] * s[half:] ** (d - 1)
        else:
            # s = 2 r^2 / R^2 - 1 turns the rim factor into a Gauss-Jacobi weight
            s, ws = _jacobi(level, expo, 0.5 * d - 1.0)
            r = r_max * np.sqrt(0.5 * (1.0 + s))
            coeff = 0.5 * r_max**d * 2.0 ** (-(expo + 0.5 * d)) * math.exp(log_pref)
            radial_w = coeff * ws
    else:
        raise ValueError(f"unknown weight kind {weight!r}")

    # chunk the radial axis so the (kr, ka, d) node tensor stays bounded
    step = max(1, (1 << 21) // max(1, omega.shape[0]))
    acc = 0.0
    for lo in range(0, r.size, step):
        x = r[lo : lo + step, None, None] * omega[None, :, :]  # (chunk, ka, d)
        vals = np.asarray(phi(x), dtype=float)
        # contract radial and angular axes, keep any trailing component axis
        acc = acc + np.tensordot(
            radial_w[lo : lo + step], np.tensordot(wa, vals, axes=([0], [1])), axes=([0], [0])
        )
    acc = np.asarray(acc)
    count = r.size * omega.shape[0]
    return (float(acc) if acc.ndim == 0 else acc), count


def integrate_weighted(
    phi,
    weight: str,
    d: int,
    t: float,
    spec: QuadratureSpec = QuadratureSpec(),
    n: int | None = None,
) -> IntegralEstimate:
    """int_{R^d} phi(x) w(x) dx for w the Gaussian or a finite weight.

    phi must be vectorized over leading axes of x with shape (..., d); it may
    return a trailing component axis to integrate several integrands at once.
    """
    if not t > 0.0:
        raise ValueError(f"need t > 0, got t={t}")
    value, count = _refine(
        lambda lvl: _weighted_slice(phi, weight, d, t, lvl, spec.angular_rule, n),
        spec.radial_nodes,
        spec.target_rel_tol,
    )
    return IntegralEstimate(value=value, std_error=0.0, method="quadrature", evaluations=count)


def integrate_spacetime(
    phi,
    weight: str,
    d: int,
    tau: float,
    spec: QuadratureSpec = QuadratureSpec(),
    n: int | None = None,
) -> IntegralEstimate:
    """int_0^tau int_{R^d} phi(x, t) w_t(x) dx dt.

    Time nodes are Gauss points interior to (0, tau); integrands that blow up
    as t -> 0 are usable as long as they are integrable there.
    """
    if not tau > 0.0:
        raise ValueError(f"need tau > 0, got tau={tau}")

    base_t = spec.time_nodes

    def eval_at(level: int):
        kt = base_t * max(1, level // spec.radial_nodes)
        xs, wleg = _leggauss(kt)
        ts = 0.5 * tau * (xs + 1.0)
        wt = 0.5 * tau * wleg
        total = None
        count = 0
        for tq, wq in zip(ts, wt):
            sl, cnt = _weighted_slice(lambda x: phi(x, tq), weight, d, tq, level, spec.angular_rule, n)
            count += cnt
            total = wq * _as_vector(sl) if total is None else total + wq * _as_vector(sl)
        if total.size == 1:
            return float(total[0]), count
        return total, count

    value, count = _refine(eval_at, spec.radial_nodes, spec.target_rel_tol)
    return IntegralEstimate(value=value, std_error=0.0, method="quadrature", evaluations=count)


# ---------------------------------------------------------------------------
# plain ball / sphere / window integrals (no probability weight)


def _ball_slice(f, N: int, r: float, level: int, rule: str, center, radial_power: float):
    omega, wa = _sphere_nodes(N, level, rule)
    xs, wleg = _leggauss(level)
    rho = 0.5 * r * (xs + 1.0)
    wr = 0.5 * r * wleg * rho ** (N - 1 + radial_power)
    pts = rho[:, None, None] * omega[None, :, :]
    if center is not None:
        pts = pts + center
    vals = np.asarray(f(pts), dtype=float)
    acc = np.tensordot(wr, np.tensordot(wa, vals, axes=([0], [1])), axes=([0], [0]))
    return (float(acc) if acc.ndim == 0 else acc), rho.size * omega.shape[0]


def integrate_ball(
    f,
    N: int,
    r: float,
    spec: QuadratureSpec = QuadratureSpec(),
    center=None,
    radial_power: float = 0.0,
) -> IntegralEstimate:
    """int_{B_r(center)} f(y) |y - center|^radial_power dy.

    The power can be as singular as 1 - N; it is folded into the radial rule.
    """
    if not r > 0.0:
        raise ValueError(f"need r > 0, got r={r}")
    if radial_power <= -N:
        raise ValueError("radial_power must exceed -N for an integrable weight")
    c = None if center is None else np.asarray(center, dtype=float)
    value, count = _refine(
        lambda lvl: _ball_slice(f, N, r, lvl, spec.angular_rule, c, radial_power),
        spec.radial_nodes,
        spec.target_rel_tol,
    )
    return IntegralEstimate(value=value, std_error=0.0, method="quadrature", evaluations=count)


def integrate_annulus(
    f,
    N: int,
    r_range: tuple[float, float],
    spec: QuadratureSpec = QuadratureSpec(),
    radial_power: float = 0.0,
) -> IntegralEstimate:
    """int_{r0 <= |y| <= r1} f(y) |y|^radial_power dy."""
    r0, r1 = r_range
    if not 0.0 <= r0 < r1:
        raise ValueError("need 0 <= r0 < r1")

    def eval_at(level: int):
        omega, wa = _sphere_nodes(N, level, spec.angular_rule)
        xs, wleg = _leggauss(level)
        rho = 0.5 * (r1 - r0) * (xs + 1.0) + r0
        wr = 0.5 * (r1 - r0) * wleg * rho ** (N - 1 + radial_power)
        pts = rho[:, None, None] * omega[None, :, :]
        vals = np.asarray(f(pts), dtype=float)
        acc = np.tensordot(wr, np.tensordot(wa, vals, axes=([0], [1])), axes=([0], [0]))
        return (float(acc) if acc.ndim == 0 else acc), rho.size * omega.shape[0]

    value, count = _refine(eval_at, spec.radial_nodes, spec.target_rel_tol)
    return IntegralEstimate(value=value, std_error=0.0, method="quadrature", evaluations=count)


def integrate_sphere(
    f,
    N: int,
    r: float,
    spec: QuadratureSpec = QuadratureSpec(),
    center=None,
) -> IntegralEstimate:
    """Surface integral int_{bd B_r(center)} f dS."""
    if not r > 0.0:
        raise ValueError(f"need r > 0, got r={r}")
    c = None if center is None else np.asarray(center, dtype=float)

    def eval_at(level: int):
        omega, wa = _sphere_nodes(N, level, spec.angular_rule)
        pts = r * omega
        if c is not None:
            pts = pts + c
        vals = np.asarray(f(pts), dtype=float)
        acc = r ** (N - 1) * np.tensordot(wa, vals, axes=([0], [0]))
        return (float(acc) if acc.ndim == 0 else acc), omega.shape[0]

    value, count = _refine(eval_at, spec.radial_nodes, spec.target_rel_tol)
    return IntegralEstimate(value=value, std_error=0.0, method="quadrature", evaluations=count)


def integrate_window(
    f,
    d: int,
    r_range: tuple[float, float],
    t_range: tuple[float, float],
    spec: QuadratureSpec = QuadratureSpec(),
) -> IntegralEstimate:
    """int_{t0}^{t1} int_{r0 <= |x| <= r1} f(x, t) dx dt over a smooth window."""
    r0, r1 = r_range
    t0, t1 = t_range
    if not (0.0 <= r0 < r1 and 0.0 < t0 < t1):
        raise ValueError("need 0 <= r0 < r1 and 0 < t0 < t1")

    def eval_at(level: int):
        omega, wa = _sphere_nodes(d, level, spec.angular_rule)
        xs, wleg = _leggauss(level)
        rho = 0.5 * (r1 - r0) * (xs + 1.0) + r0
        wr = 0.5 * (r1 - r0) * wleg * rho ** (d - 1)
        kt = spec.time_nodes * max(1, level // spec.radial_nodes)
        xt, wtl = _leggauss(kt)
        ts = 0.5 * (t1 - t0) * (xt + 1.0) + t0
        wt = 0.5 * (t1 - t0) * wtl
        pts = rho[:, None, None] * omega[None, :, :]
        total = 0.0
        for tq, wq in zip(ts, wt):
            vals = np.asarray(f(pts, tq), dtype=float)
            total += wq * float(wr @ (vals @ wa))
        return total, ts.size * rho.size * omega.shape[0]

    value, count = _refine(eval_at, spec.radial_nodes, spec.target_rel_tol)
    return IntegralEstimate(value=value, std_error=0.0, method="quadrature", evaluations=count)


# ---------------------------------------------------------------------------
# seeded Monte Carlo


def _batch_rng(seed: int, index: int) -> np.random.Generator:
    # pure function of (seed, index); Philox keys are 128-bit counters
    return np.random.Generator(np.random.Philox(key=seed + (index << 64)))


def _batch_sizes(mc: MonteCarloSpec) -> list[int]:
    full, rem = divmod(mc.samples, mc.batch)
    sizes = [mc.batch] * full
    if rem:
        sizes.append(rem)
    return sizes


def sample_sphere_uniform(N: int, radius: float, mc: MonteCarloSpec) -> Iterator[np.ndarray]:
    """Uniform points on the sphere of given radius in R^N, yielded in batches.

    Batch k is a pure function of (mc.seed, k): normalized Gaussian vectors
    scaled to the radius.  The concatenation of all batches is the sample
    stream; its order never depends on scheduling.
    """
    if N < 1:
        raise ValueError("need N >= 1")
    if not radius > 0.0:
        raise ValueError("need radius > 0")
    for k, m in enumerate(_batch_sizes(mc)):
        g = _batch_rng(mc.seed, k).standard_normal((m, N))
        g /= np.linalg.norm(g, axis=1, keepdims=True)
        yield radius * g


def sample_mu_ball(N: int, tau: float, d: int, mc: MonteCarloSpec) -> Iterator[np.ndarray]:
    """Samples of the lifted space-time measure on the ball of radius sqrt(2 d tau) in R^N.

    The measure has total mass tau; normalized, its radial law makes r^2
    uniform on [0, 2 d tau] (so the lifted time |y|^2/2d is uniform on
    (0, tau]) and its angular law is uniform.  Yields batches like
    sample_sphere_uniform.
    """
    if N < 1 or d < 1:
        raise ValueError("need N >= 1 and d >= 1")
    if not tau > 0.0:
        raise ValueError("need tau > 0")
    for k, m in enumerate(_batch_sizes(mc)):
        rng = _batch_rng(mc.seed, k)
        g = rng.standard_normal((m, N))
        g /= np.linalg.norm(g, axis=1, keepdims=True)
        r = np.sqrt(2.0 * d * tau * rng.random(m))
        yield r[:, None] * g


def mc_mean(sample_batches: Iterator[np.ndarray], phi, threads: int = 1):
    """Mean and standard error of phi over a batched sample stream.

    Batches may be consumed by several worker threads, but partial sums are
    combined in batch order, so the result is bit-identical for any thread
    count.  phi maps (m, N) -> (m,) or (m, K).
    """
    batches = list(sample_batches)

    def reduce_one(y: np.ndarray):
        vals = np.asarray(phi(y), dtype=float)
        if vals.ndim == 1:
            vals = vals[:, None]
        return vals.sum(axis=0), (vals * vals).sum(axis=0), vals.shape[0]

    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            partials = list(pool.map(reduce_one, batches))
    else:
        partials = [reduce_one(b) for b in batches]

    s1 = None
    s2 = None
    count = 0
    for p1, p2, m in partials:  # fixed order: batch 0, 1, 2, ...
        s1 = p1 if s1 is None else s1 + p1
        s2 = p2 if s2 is None else s2 + p2
        count += m
    mean = s1 / count
    var = np.maximum(0.0, s2 / count - mean * mean)
    se = np.sqrt(var / count)
    if mean.size == 1:
        return float(mean[0]), float(se[0]), count
    return mean, se, count


# ---------------------------------------------------------------------------
# push-forward identity checks


@dataclass(frozen=True)
class PushforwardCheck:
    """Monte Carlo average through the lift vs. weighted quadrature downstairs."""

    mc_value: float | np.ndarray
    mc_std_error: float | np.ndarray
    quad_value: float | np.ndarray
    discrepancy_in_std_errors: float | np.ndarray


def pushforward_check_sphere(
    phi,
    d: int,
    n: int,
    t: float,
    mc: MonteCarloSpec,
    spec: QuadratureSpec = QuadratureSpec(),
    threads: int = 1,
) -> PushforwardCheck:
    """Sphere average of phi(step-sum) vs. the finite-weight integral of phi."""
    cfg = LiftConfig(d=d, n=n)
    radius = math.sqrt(2.0 * d * t)

    def through_lift(y):
        x, _ = lift_point_time(cfg, y)
        return phi(x)

    mean, se, _ = mc_mean(sample_sphere_uniform(cfg.N, radius, mc), through_lift, threads=threads)
    quad = integrate_weighted(phi, "finite", d, t, spec, n=n).value
    disc = np.abs(mean - quad) / np.where(np.asarray(se) > 0.0, se, np.inf)
    if np.ndim(mean) == 0:
        disc = float(disc)
    return PushforwardCheck(mc_value=mean, mc_std_error=se, quad_value=quad, discrepancy_in_std_errors=disc)


def pushforward_check_ball(
    phi,
    d: int,
    n: int,
    tau: float,
    mc: MonteCarloSpec,
    spec: QuadratureSpec = QuadratureSpec(),
    threads: int = 1,
) -> PushforwardCheck:
    """Lifted-measure average of phi(lift) times tau vs. the space-time integral."""
    cfg = LiftConfig(d=d, n=n)

    def through_lift(y):
        x, tt = lift_point_time(cfg, y)
        return phi(x, tt)

    mean, se, _ = mc_mean(sample_mu_ball(cfg.N, tau, d, mc), through_lift, threads=threads)
    mean = np.asarray(mean) * tau
    se = np.asarray(se) * tau
    quad = integrate_spacetime(phi, "finite", d, tau, spec, n=n).value
    disc = np.abs(mean - quad) / np.where(se > 0.0, se, np.inf)
    if np.ndim(quad) == 0:
        mean, se, disc = float(mean), float(se), float(disc)
    return PushforwardCheck(mc_value=mean, mc_std_error=se, quad_value=quad, discrepancy_in_std_errors=disc)
