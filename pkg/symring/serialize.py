"""
Canonical text form of polynomials and rational expressions, plus the
golden-file format used to lock transcribed matrices and determinants.

Golden files hold one ``key = expression`` line per entry; matrix entries use
1-based keys ``name[i,j]``. Lines starting with ``#`` are comments.
"""

from pathlib import Path
from typing import Dict, List, Mapping, Tuple, Union

from sympy import Symbol, fraction, together
from sympy.parsing.sympy_parser import parse_expr
from sympy.polys.rings import PolyRing

from symring.matrix import SymMatrix
from symring.rational import RationalExpr
from symring.ring import RING, Poly
from utils.errors import SymbolicError


def serialize(value: Union[Poly, RationalExpr]) -> str:
    """
    Deterministic text of a polynomial or rational expression

    Terms follow the ring's graded-lex order, so equal normalized values
    always print identically.
    """
    if isinstance(value, Poly):
        return str(value)
    if value.den == value.ring.one:
        return str(value.num)
    return f"({value.num})/({value.den})"


def parse(text: str, ring: PolyRing = RING) -> RationalExpr:
    """
    Parse serialized text back into the ring

    Args:
        text: Expression in ring indeterminate names (``**`` powers, ``/`` allowed)
        ring: Target ring

    Returns:
        RationalExpr
    """
    local = {s.name: Symbol(s.name) for s in ring.symbols}
    try:
        expr = parse_expr(text, local_dict=local)
        num, den = fraction(together(expr))
        return RationalExpr.make(ring.from_expr(num), ring.from_expr(den))
    except (SyntaxError, TypeError, ValueError) as e:
        raise SymbolicError(f"cannot parse '{text}': {e}") from e


def matrix_entries(name: str, m: SymMatrix) -> Dict[str, RationalExpr]:
    """Flatten a matrix into 1-based golden keys"""
    return {f"{name}[{i + 1},{j + 1}]": m[i, j] for i in range(m.rows) for j in range(m.cols)}


def write_golden(path: Union[str, Path], entries: Mapping[str, RationalExpr], header: str = "") -> Path:
    """
    Write entries in golden format (insertion order preserved)

    Returns:
        Path written
    """
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    lines = [f"# {line}" for line in header.splitlines()] if header else []
    lines += [f"{key} = {serialize(value)}" for key, value in entries.items()]
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")
    return path


def read_golden(path: Union[str, Path], ring: PolyRing = RING) -> Dict[str, RationalExpr]:
    """Parse a golden file into {key: RationalExpr}"""
    entries: Dict[str, RationalExpr] = {}
    for number, raw in enumerate(Path(path).read_text(encoding="utf-8").splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise SymbolicError(f"{path}:{number}: expected 'key = expression'")
        key, text = line.split("=", 1)
        entries[key.strip()] = parse(text.strip(), ring)
    return entries


def golden_diff(
    expected: Mapping[str, RationalExpr], actual: Mapping[str, RationalExpr]
) -> List[Tuple[str, str, str]]:
    """
    Compare golden entries by exact equality

    Returns:
        [(key, expected text, actual text)] for every differing or missing key
    """
    diffs = []
    for key in list(expected) + [k for k in actual if k not in expected]:
        left, right = expected.get(key), actual.get(key)
        if left is None or right is None or not left == right:
            diffs.append((
                key,
                serialize(left) if left is not None else "<missing>",
                serialize(right) if right is not None else "<missing>",
            ))
    return diffs


__all__ = ["serialize", "parse", "matrix_entries", "write_golden", "read_golden", "golden_diff"]
