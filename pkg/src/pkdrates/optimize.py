"""Bounded 1-D maximisation of a key-rate curve over mean photon number."""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

INV_PHI = (math.sqrt(5) - 1) / 2
GRID_POINTS = 64


class OptimizationError(ValueError):
    """Objective returned a non-finite value."""

    def __init__(self, x: float, value: float):
        super().__init__(f"objective is not finite at x={x!r} (got {value!r})")
        self.x = x
        self.value = value


@dataclass(frozen=True)
class OptimizeSpec:
    lower: float = 0.0
    upper: float = 2.0
    tolerance: float = 1e-6
    max_evals: int = 200

    def __post_init__(self):
        if not self.lower < self.upper:
            raise ValueError(f"need lower < upper, got [{self.lower!r}, {self.upper!r}]")
        if not self.tolerance > 0:
            raise ValueError(f"tolerance must be positive, got {self.tolerance!r}")
        if not self.max_evals >= 16:
            raise ValueError(f"max_evals must be >= 16, got {self.max_evals!r}")


def optimize_mu(
    rate_fn: Callable[[float], float], spec: OptimizeSpec = OptimizeSpec()
) -> tuple[float, float]:
    """Maximise ``rate_fn`` on ``[spec.lower, spec.upper]``.

    A uniform coarse grid locates the best sample, then golden-section search
    refines the bracket formed by its neighbours until it is narrower than
    ``spec.tolerance``. The coarse grid makes the search robust to objectives
    that are flat zero over part of the range. Returns ``(x_best, rate_best)``;
    among equal rates the smallest ``x`` wins, so a constant objective yields
    ``spec.lower``.
    """
    evals = 0
    best_x = math.inf
    best_f = -math.inf

    def f(x: float) -> float:
        nonlocal evals, best_x, best_f
        evals += 1
        value = float(rate_fn(x))
        if not math.isfinite(value):
            raise OptimizationError(x, value)
        if value > best_f or (value == best_f and x < best_x):
            best_x, best_f = x, value
        return value

    n_grid = min(GRID_POINTS, spec.max_evals)
    step = (spec.upper - spec.lower) / (n_grid - 1)
    grid = [spec.lower + i * step for i in range(n_grid - 1)] + [spec.upper]
    values = [f(x) for x in grid]
    i = max(range(n_grid), key=lambda k: (values[k], -k))

    a = grid[max(i - 1, 0)]
    b = grid[min(i + 1, n_grid - 1)]
    c = b - INV_PHI * (b - a)
    d = a + INV_PHI * (b - a)
    if b - a >= spec.tolerance and evals + 2 <= spec.max_evals:
        fc, fd = f(c), f(d)
        while b - a >= spec.tolerance and evals < spec.max_evals:
            # ties keep the left part so flat plateaus drift towards lower x
            if fc >= fd:
                b, d, fd = d, c, fc
                c = b - INV_PHI * (b - a)
                fc = f(c)
            else:
                a, c, fc = c, d, fd
                d = a + INV_PHI * (b - a)
                fd = f(d)
    return best_x, best_f
