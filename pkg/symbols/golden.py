"""
Golden files for the transcribed matrices and engine determinants
"""

from pathlib import Path
from typing import Callable, Dict, List, Tuple, Union

from config.settings import settings
from symring import RationalExpr, golden_diff, matrix_entries, read_golden, write_golden
from symbols.determinants import bhat_matrix, closed_forms
from symbols.displays import boundary_display, homotopy_display
from utils.logger import logger

GOLDEN_FILES: Dict[str, Tuple[str, Callable[[], Dict[str, RationalExpr]]]] = {
    "boundary_display.txt": (
        "Boundary symbol B~ times -2N^2, rows H' trK' w'2 w'3 beta1 beta2 beta3 beta0",
        lambda: matrix_entries("M", boundary_display()),
    ),
    "bhat.txt": (
        "Reduced boundary symbol B^",
        lambda: matrix_entries("Bhat", bhat_matrix()),
    ),
    "homotopy.txt": (
        "Flat homotopy family D_t; det B_t = -det D_t / 32",
        lambda: matrix_entries("D", homotopy_display()),
    ),
    "determinants.txt": (
        "det B^, its remainder at the root, det D_t and its remainder at the root",
        closed_forms,
    ),
}


def emit_goldens(golden_dir: Union[str, Path, None] = None) -> List[Path]:
    """Write every golden file from the current engine results"""
    golden_dir = Path(golden_dir or settings.GOLDEN_DIR)
    written = []
    for filename, (header, build) in GOLDEN_FILES.items():
        written.append(write_golden(golden_dir / filename, build(), header))
        logger.info(f"💾 Wrote golden file {golden_dir / filename}")
    return written


def verify_goldens(
    golden_dir: Union[str, Path, None] = None, names=None
) -> Dict[str, List[Tuple[str, str, str]]]:
    """
    Compare engine results against the golden files

    Args:
        golden_dir: Directory holding the files (defaults to settings.GOLDEN_DIR)
        names: Subset of GOLDEN_FILES to check

    Returns:
        {filename: [(key, golden text, engine text)]}; empty lists mean a match
    """
    golden_dir = Path(golden_dir or settings.GOLDEN_DIR)
    results = {}
    for filename in names or GOLDEN_FILES:
        _, build = GOLDEN_FILES[filename]
        path = golden_dir / filename
        if not path.exists():
            results[filename] = [("<file>", str(path), "<missing>")]
            logger.error(f"❌ Golden file not found: {path}")
            continue
        diffs = golden_diff(read_golden(path), build())
        if diffs:
            logger.error(f"❌ {filename}: {len(diffs)} entries differ, first {diffs[0][0]}")
        else:
            logger.info(f"✅ {filename} matches")
        results[filename] = diffs
    return results


__all__ = ["GOLDEN_FILES", "emit_goldens", "verify_goldens"]
