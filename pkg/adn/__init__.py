"""
Proper ellipticity and complementing-condition checks
"""

from adn.samples import CoefficientSample, draw_sample, draw_samples
from adn.ellipticity import RootPair, proper_ellipticity_check
from adn.complementing import (
    complementing_check_numeric,
    complementing_check_symbolic,
    complementing_sweep,
    ellipticity_sweep,
)

__all__ = [
    "CoefficientSample",
    "draw_sample",
    "draw_samples",
    "RootPair",
    "proper_ellipticity_check",
    "complementing_check_numeric",
    "complementing_check_symbolic",
    "complementing_sweep",
    "ellipticity_sweep",
]
