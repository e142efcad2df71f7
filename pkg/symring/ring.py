"""
Polynomial ring context for all symbol computations

A single sympy PolyRing over QQ in graded-lex order with the fixed
indeterminate order (xi1, xi2, xi3, z, N, X1, X2, X3, t). Polynomials are
sympy PolyElements; they are immutable once built and carry exact rational
coefficients.
"""

from typing import Dict, Iterable, Tuple

import numpy as np
from sympy.polys.domains import QQ
from sympy.polys.orderings import grlex
from sympy.polys.rings import PolyElement, PolyRing

INDETERMINATES: Tuple[str, ...] = ("xi1", "xi2", "xi3", "z", "N", "X1", "X2", "X3", "t")

Poly = PolyElement


def make_ring(names: Iterable[str] = INDETERMINATES) -> PolyRing:
    """
    Build a ring context over QQ with graded-lex order

    Args:
        names: Indeterminate names, in the fixed monomial order

    Returns:
        PolyRing (sympy caches rings, so equal name lists give the same ring)
    """
    names = tuple(names)
    if len(set(names)) != len(names):
        raise ValueError(f"indeterminate names must be unique: {names}")
    return PolyRing(",".join(names), QQ, grlex)


RING = make_ring()


def index_of(name: str, ring: PolyRing = RING) -> int:
    """Position of an indeterminate in the ring's fixed order"""
    names = [s.name for s in ring.symbols]
    if name not in names:
        raise ValueError(f"unknown indeterminate: {name}")
    return names.index(name)


def gen(name: str, ring: PolyRing = RING) -> Poly:
    """Generator of ``ring`` by name"""
    return ring.gens[index_of(name, ring)]


def gens(*names: str, ring: PolyRing = RING) -> Tuple[Poly, ...]:
    """Several generators at once, in the order asked for"""
    return tuple(gen(name, ring) for name in names)


def const(value, ring: PolyRing = RING) -> Poly:
    """Constant polynomial from an int, Fraction or sympy Rational"""
    return ring.ground_new(to_domain(value, ring))


def to_domain(value, ring: PolyRing = RING):
    """Exact number -> ground domain element"""
    from sympy import Rational

    if hasattr(value, "numerator") and hasattr(value, "denominator") and not isinstance(value, Rational):
        value = Rational(int(value.numerator), int(value.denominator))
    return ring.domain.from_sympy(Rational(value))


def poly_arith(a: Poly, b: Poly, op: str) -> Poly:
    """
    Exact add / sub / mul of two polynomials of the same ring

    Args:
        a: Left operand
        b: Right operand
        op: One of "add", "sub", "mul"

    Returns:
        Result in canonical form (no zero coefficients stored)
    """
    if a.ring is not b.ring:
        raise ValueError("operands belong to different ring contexts")
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    raise ValueError(f"unknown polynomial operation: {op}")


def degree_in(poly: Poly, name: str) -> int:
    """Degree in one indeterminate; -1 for the zero polynomial"""
    if not poly:
        return -1
    return int(poly.degree(index_of(name, poly.ring)))


def coeffs_in(poly: Poly, name: str) -> Dict[int, Poly]:
    """
    View ``poly`` as univariate in ``name``

    Returns:
        {degree: coefficient} with coefficients free of ``name``; zero
        coefficients are omitted
    """
    index = index_of(name, poly.ring)
    result: Dict[int, Poly] = {}
    for k in range(degree_in(poly, name) + 1):
        c = poly.coeff_wrt(index, k)
        if c:
            result[k] = c
    return result


def free_of(poly: Poly, *names: str) -> bool:
    """True when ``poly`` does not involve any of ``names``"""
    return all(degree_in(poly, name) <= 0 for name in names)


def evaluate_poly(poly: Poly, values: Dict[str, complex]) -> complex:
    """
    Floating-point evaluation with numpy

    Args:
        poly: Polynomial to evaluate
        values: Number for every indeterminate that occurs in ``poly``

    Returns:
        Complex value (imaginary part 0 for real inputs)
    """
    ring = poly.ring
    if not poly:
        return 0j
    exps = np.array([m for m, _ in poly.terms()], dtype=np.int64)
    coeffs = np.array([float(ring.domain.to_sympy(c)) for _, c in poly.terms()])
    used = np.nonzero(exps.sum(axis=0))[0]
    missing = [ring.symbols[i].name for i in used if ring.symbols[i].name not in values]
    if missing:
        raise ValueError(f"no value bound for {', '.join(missing)}")
    point = np.array(
        [complex(values.get(s.name, 0.0)) for s in ring.symbols], dtype=np.complex128
    )
    powers = np.where(exps == 0, 1.0 + 0j, point[np.newaxis, :] ** np.maximum(exps, 1))
    monomials = np.prod(powers, axis=1)
    return complex(np.dot(coeffs, monomials))


__all__ = [
    "INDETERMINATES",
    "Poly",
    "RING",
    "make_ring",
    "index_of",
    "gen",
    "gens",
    "const",
    "to_domain",
    "poly_arith",
    "degree_in",
    "coeffs_in",
    "free_of",
    "evaluate_poly",
]
