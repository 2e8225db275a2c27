"""Monotonicity sweeps: sample a functional on a grid and count decreases."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

__all__ = ["MonotonicityReport", "monotonicity_sweep"]


@dataclass(frozen=True)
class MonotonicityReport:
    grid: np.ndarray
    values: np.ndarray
    fd_derivatives: np.ndarray
    min_slope: float
    violations: int
    tol: float

    @property
    def monotone(self) -> bool:
        return self.violations == 0


def monotonicity_sweep(curve, grid, tol: float = 1e-8) -> MonotonicityReport:
    """Evaluate curve on a strictly increasing grid (>= 8 points) and count
    steps that decrease by more than tol relative to the local value scale.
    """
    grid = np.asarray(grid, dtype=float)
    if grid.ndim != 1 or grid.size < 8:
        raise ValueError("need a 1-d grid with at least 8 points")
    if np.any(np.diff(grid) <= 0.0):
        raise ValueError("grid must be strictly increasing")
    values = np.array([float(curve(s)) for s in grid])
    steps = np.diff(values)
    fd = steps / np.diff(grid)
    scale = np.maximum(1.0, np.maximum(np.abs(values[:-1]), np.abs(values[1:])))
    violations = int(np.sum(steps < -tol * scale))
    return MonotonicityReport(
        grid=grid,
        values=values,
        fd_derivatives=fd,
        min_slope=float(fd.min()),
        violations=violations,
        tol=tol,
    )
