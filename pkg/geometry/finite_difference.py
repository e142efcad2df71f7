"""
Central finite differences with Richardson extrapolation

All fields handled here are t-independent functions of a spatial point
x in R^3. Spacetime partials carry an explicit zero row for the time
derivative so that index 0 always means t.
"""

from typing import Callable, Optional

import numpy as np

from config.settings import settings

Field = Callable[[np.ndarray], np.ndarray]


def base_step(x: np.ndarray, step: Optional[float] = None) -> float:
    """h = step * (1 + |x|)"""
    step = settings.FD_STEP if step is None else step
    return step * (1.0 + float(np.linalg.norm(x)))


def richardson(estimate: Callable[[float], np.ndarray], h: float, levels: int) -> np.ndarray:
    """
    Extrapolate a central-difference estimate with error series in h^2

    A[k][0] uses step h / 2^k; A[k][j] = (4^j A[k][j-1] - A[k-1][j-1]) / (4^j - 1).
    """
    table = [[np.asarray(estimate(h / 2 ** k), dtype=float)] for k in range(levels + 1)]
    for k in range(1, levels + 1):
        for j in range(1, k + 1):
            factor = 4.0 ** j
            table[k].append((factor * table[k][j - 1] - table[k - 1][j - 1]) / (factor - 1.0))
    return table[levels][levels]


def directional(func: Field, x: np.ndarray, direction: np.ndarray,
                step: Optional[float] = None, levels: Optional[int] = None) -> np.ndarray:
    """Derivative of ``func`` at x along ``direction``"""
    x = np.asarray(x, dtype=float)
    direction = np.asarray(direction, dtype=float)
    levels = settings.RICHARDSON_LEVELS if levels is None else levels

    def central(h: float) -> np.ndarray:
        return (np.asarray(func(x + h * direction)) - np.asarray(func(x - h * direction))) / (2.0 * h)

    return richardson(central, base_step(x, step), levels)


def partials(func: Field, x: np.ndarray, step: Optional[float] = None,
             levels: Optional[int] = None, spacetime: bool = False) -> np.ndarray:
    """
    All first partials of a field at x

    Args:
        func: Field returning an array of any shape
        x: Spatial point
        step: Relative base step (defaults to settings.FD_STEP)
        levels: Richardson levels (defaults to settings.RICHARDSON_LEVELS)
        spacetime: Prepend the vanishing d/dt row

    Returns:
        Array d[a, ...] = d_a func, with a in 0..2 (or 0..3 when spacetime)
    """
    rows = [directional(func, x, unit, step, levels) for unit in np.eye(3)]
    if spacetime:
        rows.insert(0, np.zeros_like(rows[0]))
    return np.stack(rows)


def second_partials(func: Field, x: np.ndarray, step: Optional[float] = None,
                    levels: Optional[int] = None, spacetime: bool = False) -> np.ndarray:
    """dd[a, b, ...] = d_a d_b func by nesting ``partials``"""
    inner = lambda p: partials(func, p, step, levels, spacetime)
    return partials(inner, x, step, levels, spacetime)


__all__ = ["Field", "base_step", "richardson", "directional", "partials", "second_partials"]
