"""
Exact multivariate rational functions over the symbol ring

RationalExpr is an immutable (num, den) pair. The denominator's leading
coefficient is kept positive; gcd reduction is optional (settings knob) and
never affects equality, which is decided by cross-multiplication.
"""

from dataclasses import dataclass
from numbers import Number
from typing import Dict, Mapping, Union

from sympy import Rational
from sympy.polys.rings import PolyRing

from config.settings import settings
from symring.ring import RING, Poly, coeffs_in, const, degree_in, evaluate_poly, free_of, gen
from utils.errors import DegreeError, ZeroDivisorError


@dataclass(frozen=True, eq=False)
class RationalExpr:
    """Exact quotient of two polynomials of the same ring"""

    num: Poly
    den: Poly

    def __post_init__(self):
        if self.num.ring is not self.den.ring:
            raise ValueError("numerator and denominator belong to different rings")
        if not self.den:
            raise ZeroDivisorError("rational expression with zero denominator")

    # construction

    @classmethod
    def make(cls, num: Poly, den: Poly = None, reduce: bool = None) -> "RationalExpr":
        """
        Normalized constructor

        Args:
            num: Numerator
            den: Denominator (defaults to 1)
            reduce: Cancel the gcd; defaults to settings.SYMRING_GCD_REDUCE

        Returns:
            RationalExpr with positive denominator leading coefficient
        """
        ring = num.ring
        den = ring.one if den is None else den
        if not den:
            raise ZeroDivisorError("rational expression with zero denominator")
        if not num:
            return cls(ring.zero, ring.one)
        reduce = settings.SYMRING_GCD_REDUCE if reduce is None else reduce
        if den.is_ground:
            return cls(num.quo_ground(den.LC), ring.one)
        if len(den) == 1:
            return cls(*_cancel_monomial(num, den))
        if reduce:
            num, den = num.cancel(den)
            if den.is_ground:
                return cls(num.quo_ground(den.LC), ring.one)
        if den.LC < 0:
            num, den = -num, -den
        return cls(num, den)

    @classmethod
    def of(cls, value, ring: PolyRing = RING) -> "RationalExpr":
        """Lift a polynomial, exact number or RationalExpr"""
        if isinstance(value, RationalExpr):
            return value
        if isinstance(value, Poly):
            return cls(value, value.ring.one)
        return cls(const(value, ring), ring.one)

    @classmethod
    def var(cls, name: str, ring: PolyRing = RING) -> "RationalExpr":
        """Single indeterminate"""
        return cls(gen(name, ring), ring.one)

    @property
    def ring(self) -> PolyRing:
        return self.num.ring

    # arithmetic

    def _coerce(self, other) -> "RationalExpr":
        other = RationalExpr.of(other, self.ring)
        if other.ring is not self.ring:
            raise ValueError("operands belong to different ring contexts")
        return other

    def __add__(self, other):
        other = self._coerce(other)
        if self.den == other.den:
            return RationalExpr.make(self.num + other.num, self.den)
        return RationalExpr.make(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        return RationalExpr(-self.num, self.den)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        other = self._coerce(other)
        return RationalExpr.make(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._coerce(other)
        if not other.num:
            raise ZeroDivisorError("division by the zero rational expression")
        return RationalExpr.make(self.num * other.den, self.den * other.num)

    def __rtruediv__(self, other):
        return self._coerce(other) / self

    def __pow__(self, exponent: int):
        if not isinstance(exponent, int):
            raise TypeError("only integer powers are supported")
        if exponent < 0:
            return RationalExpr.of(1, self.ring) / (self ** (-exponent))
        return RationalExpr(self.num ** exponent, self.den ** exponent)

    # comparison

    def __eq__(self, other) -> bool:
        if isinstance(other, (Poly, RationalExpr, Number, Rational)):
            other = self._coerce(other)
            return self.num * other.den == other.num * self.den
        return NotImplemented

    __hash__ = None

    def is_zero(self) -> bool:
        return not self.num

    def is_polynomial(self) -> bool:
        return self.den.is_ground

    def free_of(self, *names: str) -> bool:
        """True when neither numerator nor denominator involve ``names``"""
        return free_of(self.num, *names) and free_of(self.den, *names)

    def __repr__(self) -> str:
        from symring.serialize import serialize

        return f"RationalExpr({serialize(self)})"


def _cancel_monomial(num: Poly, den: Poly):
    """Divide out the common monomial factor when the denominator is a single term"""
    ring = num.ring
    (dexp, dcoeff), = den.items()
    common = list(dexp)
    for monom in num.keys():
        common = [min(a, b) for a, b in zip(common, monom)]

    def shift(m):
        return tuple(a - b for a, b in zip(m, common))

    new_num = ring({shift(m): c / dcoeff for m, c in num.items()})
    new_den = ring({shift(dexp): ring.domain.one})
    return new_num, new_den


def substitute(f: RationalExpr, bindings: Mapping[str, object]) -> Union[RationalExpr, complex]:
    """
    Substitute exact values or rational expressions for indeterminates

    Bindings are applied simultaneously. If any bound value is a float or
    complex number the whole expression is evaluated numerically instead;
    then every indeterminate that occurs must be bound.

    Args:
        f: Expression to substitute into
        bindings: {indeterminate name: RationalExpr | Poly | exact number | float | complex}

    Returns:
        RationalExpr for exact bindings, complex for numeric bindings
    """
    if not bindings:
        return f
    if any(isinstance(v, (float, complex)) and not isinstance(v, bool) for v in bindings.values()):
        return evaluate(f, {k: complex(v) for k, v in bindings.items()})

    ring = f.ring
    values = {name: RationalExpr.of(value, ring) for name, value in bindings.items()}
    num = _substitute_poly(f.num, values)
    den = _substitute_poly(f.den, values)
    if den.is_zero():
        raise ZeroDivisorError(f"denominator vanishes identically under {sorted(bindings)}")
    return num / den


def _substitute_poly(poly: Poly, values: Dict[str, RationalExpr]) -> RationalExpr:
    """Simultaneous substitution into a polynomial by homogenizing denominators"""
    ring = poly.ring
    names = [s.name for s in ring.symbols]
    bound = [i for i, name in enumerate(names) if name in values]
    if not bound:
        return RationalExpr.of(poly)

    degrees = {i: degree_in(poly, names[i]) for i in bound}
    num_pows: Dict[int, list] = {}
    den_pows: Dict[int, list] = {}
    for i in bound:
        p, q = values[names[i]].num, values[names[i]].den
        num_pows[i] = [ring.one]
        den_pows[i] = [ring.one]
        for _ in range(max(degrees[i], 0)):
            num_pows[i].append(num_pows[i][-1] * p)
            den_pows[i].append(den_pows[i][-1] * q)

    total = ring.zero
    for monom, coeff in poly.terms():
        rest = list(monom)
        term = ring.one
        for i in bound:
            e = monom[i]
            rest[i] = 0
            term = term * num_pows[i][e] * den_pows[i][degrees[i] - e]
        total += term * ring({tuple(rest): coeff})
    common = ring.one
    for i in bound:
        common = common * den_pows[i][max(degrees[i], 0)]
    return RationalExpr.make(total, common)


def evaluate(f: RationalExpr, values: Mapping[str, complex]) -> complex:
    """
    Floating-point value of a rational expression

    Args:
        f: Expression
        values: Number for every indeterminate occurring in f

    Returns:
        Complex value
    """
    den = evaluate_poly(f.den, values)
    if den == 0:
        raise ZeroDivisorError("denominator vanishes at the evaluation point")
    return evaluate_poly(f.num, values) / den


def rem_in_z(f: RationalExpr, p: Poly, var: str = "z") -> RationalExpr:
    """
    Remainder of f modulo p as polynomials in ``var``

    The coefficients live in the fraction field of the remaining
    indeterminates, so f = q*p + r holds exactly with deg_var(r) < deg_var(p).

    Args:
        f: Dividend; its denominator must not involve ``var``
        p: Divisor of positive degree in ``var``
        var: Main variable (default "z")

    Returns:
        Remainder r as a RationalExpr
    """
    dp = degree_in(p, var)
    if dp <= 0:
        raise DegreeError(f"divisor has degree {dp} in {var}")
    if not free_of(f.den, var):
        raise DegreeError(f"dividend denominator depends on {var}")
    dn = degree_in(f.num, var)
    if dn < dp:
        return f
    lc = coeffs_in(p, var)[dp]
    index = [s.name for s in p.ring.symbols].index(var)
    remainder = f.num.prem(p, index)
    return RationalExpr.make(remainder, f.den * lc ** (dn - dp + 1))


def divides_in_z(p: Poly, g: RationalExpr, var: str = "z") -> bool:
    """True when p divides g over the coefficient fraction field (remainder 0)"""
    return rem_in_z(g, p, var).is_zero()


__all__ = ["RationalExpr", "substitute", "evaluate", "rem_in_z", "divides_in_z"]
