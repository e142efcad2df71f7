"""
Residual-vs-step table for the finite-difference Ricci tensor
"""

from pathlib import Path
from typing import Iterable, Optional, Sequence

import numpy as np
import pandas as pd

from geometry.calculus import LeviCivita
from geometry.metric import Metric4
from utils.logger import logger

DEFAULT_STEPS = (0.04, 0.02, 0.01)
RESIDUAL_FLOOR = 1e-9
MIN_RATIO = 10.0


def convergence_table(g: Metric4, points: Iterable[np.ndarray], steps: Sequence[float] = DEFAULT_STEPS,
                      levels: Optional[int] = None) -> pd.DataFrame:
    """
    max |Ric| over ``points`` for each relative step

    Columns: step, residual, ratio (previous residual / this residual), ok.
    A row is ok when the ratio reaches MIN_RATIO or the residual is already
    below RESIDUAL_FLOOR.
    """
    points = list(points)
    rows = []
    previous = None
    for step in steps:
        calculus = LeviCivita.of(g.with_stencil(step=step, levels=levels))
        residual = max(float(np.max(np.abs(calculus.ricci(x)))) for x in points)
        ratio = previous / residual if previous is not None and residual > 0 else np.nan
        ok = previous is None or residual < RESIDUAL_FLOOR or ratio >= MIN_RATIO
        rows.append({"step": step, "residual": residual, "ratio": ratio, "ok": bool(ok)})
        previous = residual
    table = pd.DataFrame(rows)
    logger.debug(f"🌀 Convergence on {g.name}:\n{table.to_string(index=False)}")
    return table


def write_convergence_csv(table: pd.DataFrame, path: Path) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    table.to_csv(path, index=False, float_format="%.6e")
    logger.info(f"💾 Convergence table written to {path}")
    return path


__all__ = ["DEFAULT_STEPS", "RESIDUAL_FLOOR", "MIN_RATIO", "convergence_table", "write_convergence_csv"]
