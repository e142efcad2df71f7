"""
Tests for the exact polynomial / rational-function engine
"""

import numpy as np
import pytest
from fractions import Fraction

from symring import (
    RING,
    RationalExpr,
    SymMatrix,
    det_bareiss,
    det_cofactor,
    evaluate,
    gen,
    index_of,
    parse,
    poly_arith,
    read_golden,
    rem_in_z,
    serialize,
    substitute,
    write_golden,
)
from symbols.interior import symbol_scalar
from utils.errors import DegreeError, NonSquareMatrixError, ZeroDivisorError


def random_poly(rng, names, degree, terms=4):
    """Random integer-coefficient polynomial of total degree <= degree in names"""
    coeffs = {}
    for _ in range(terms):
        exps = [0] * len(RING.gens)
        remaining = degree
        for name in names:
            e = int(rng.integers(0, remaining + 1))
            exps[index_of(name)] = e
            remaining -= e
        coeffs[tuple(exps)] = int(rng.integers(-5, 6))
    return RING.from_dict(coeffs)


@pytest.fixture
def rng():
    """Fixture for a seeded random generator"""
    return np.random.default_rng(20240607)


@pytest.fixture
def xi():
    """Fixture for the frequency generators"""
    return gen("xi1"), gen("xi2"), gen("xi3")


def test_difference_of_squares(xi):
    """Test (xi1 + xi2)(xi1 - xi2) = xi1^2 - xi2^2"""
    x1, x2, _ = xi
    product = poly_arith(poly_arith(x1, x2, "add"), poly_arith(x1, x2, "sub"), "mul")
    assert product == x1 ** 2 - x2 ** 2


def test_multiplication_by_zero_is_empty(xi):
    """Test a * 0 has an empty term map"""
    product = poly_arith(xi[0] + 3, RING.zero, "mul")
    assert not product
    assert len(product) == 0


def test_unknown_operation_rejected(xi):
    """Test poly_arith rejects unknown operations"""
    with pytest.raises(ValueError):
        poly_arith(xi[0], xi[1], "div")


def test_ring_axioms(rng):
    """Test associativity, commutativity and distributivity on random triples"""
    names = ("xi1", "xi2", "N")
    for _ in range(100):
        a, b, c = (random_poly(rng, names, 3) for _ in range(3))
        assert (a * b) * c == a * (b * c)
        assert (a + b) + c == a + (b + c)
        assert a * b == b * a
        assert a * (b + c) == a * b + a * c


def test_rational_normalization():
    """Test the denominator leading coefficient is kept positive"""
    x = RationalExpr.var("xi1")
    f = RationalExpr.make(x.num, -(x.num + 1))
    assert f.den.LC > 0
    assert f == -x / (x + 1)


def test_rational_equality_by_cross_multiplication():
    """Test unreduced and reduced forms compare equal"""
    x, y = RationalExpr.var("xi1"), RationalExpr.var("xi2")
    unreduced = RationalExpr.make((x * y + y).num, (x * x - 1).num, reduce=False)
    assert unreduced == y / (x - 1)


def test_division_by_zero():
    """Test dividing by the zero expression raises"""
    with pytest.raises(ZeroDivisorError):
        RationalExpr.var("xi1") / 0


def test_det_two_by_two():
    """Test the 2x2 determinant is ad - bc"""
    a, b, c, d = (RationalExpr.var(n) for n in ("xi1", "xi2", "xi3", "t"))
    assert det_bareiss(SymMatrix([[a, b], [c, d]])) == a * d - b * c


def test_det_scalar_identity():
    """Test det(a * I_11) = a^11"""
    a = symbol_scalar()
    assert det_bareiss(SymMatrix.identity(11, a)) == a ** 11


def test_det_matches_cofactor_oracle(rng):
    """Test Bareiss against cofactor expansion on random matrices up to 5x5"""
    for trial in range(50):
        n = 1 + trial % 5
        if n < 5:
            entries = [[random_poly(rng, ("xi1", "xi2"), 1, terms=2) for _ in range(n)] for _ in range(n)]
        else:
            entries = [[int(rng.integers(-4, 5)) for _ in range(n)] for _ in range(n)]
        m = SymMatrix(entries)
        assert det_bareiss(m) == det_cofactor(m)


def test_det_with_rational_entries():
    """Test denominators are cleared correctly"""
    N = RationalExpr.var("N")
    x = RationalExpr.var("xi1")
    m = SymMatrix([[x / N, 1], [1, N / (x + 1)]])
    assert det_bareiss(m) == det_cofactor(m)


def test_det_rejects_non_square():
    """Test non-square input is rejected"""
    with pytest.raises(NonSquareMatrixError):
        det_bareiss(SymMatrix([[1, 2, 3], [4, 5, 6]]))


def test_det_with_zero_pivot():
    """Test row swaps keep the sign right"""
    m = SymMatrix([[0, 1], [1, 0]])
    assert det_bareiss(m) == -1


def test_matrix_index_out_of_bounds():
    """Test entry access is bounds checked"""
    with pytest.raises(IndexError):
        SymMatrix([[1]])[1, 0]


def test_rem_single_step():
    """Test z^2 mod (z^2 + xi2^2 + xi3^2) = -(xi2^2 + xi3^2)"""
    z, xi2, xi3 = gen("z"), gen("xi2"), gen("xi3")
    p = z ** 2 + xi2 ** 2 + xi3 ** 2
    assert rem_in_z(RationalExpr.of(z ** 2), p) == RationalExpr.of(-(xi2 ** 2 + xi3 ** 2))


def test_rem_of_power_vanishes():
    """Test (z^2 + |eta|^2)^11 mod (z^2 + |eta|^2) = 0"""
    z, xi2, xi3 = gen("z"), gen("xi2"), gen("xi3")
    p = z ** 2 + xi2 ** 2 + xi3 ** 2
    assert rem_in_z(RationalExpr.of(p ** 11), p).is_zero()


def test_rem_with_non_monic_divisor():
    """Test the remainder lives over the coefficient fraction field"""
    z, N = gen("z"), gen("N")
    r = rem_in_z(RationalExpr.of(z ** 2), N * z - 1)
    assert r == RationalExpr.of(1) / (RationalExpr.var("N") ** 2)


def test_rem_rejects_constant_divisor():
    """Test a divisor free of z raises DegreeError"""
    with pytest.raises(DegreeError):
        rem_in_z(RationalExpr.var("z"), gen("xi2") + 1)


def test_rem_reconstruction(rng):
    """Test f - rem(f) is divisible by p on random cases"""
    z = gen("z")
    for _ in range(50):
        f = RationalExpr.of(random_poly(rng, ("z", "xi2", "N"), 4, terms=5))
        p = z ** 2 + random_poly(rng, ("z", "xi2"), 1, terms=2)
        r = rem_in_z(f, p)
        assert r.free_of("z") or r.num.degree(index_of("z")) < 2
        assert rem_in_z(f - r, p).is_zero()


def test_substitute_flat_point():
    """Test a(xi) at X = 0, N = 1 is |xi|^2"""
    a = substitute(symbol_scalar(), {"N": 1, "X1": 0, "X2": 0, "X3": 0})
    x1, x2, x3 = (RationalExpr.var(n) for n in ("xi1", "xi2", "xi3"))
    assert a == x1 * x1 + x2 * x2 + x3 * x3


def test_substitute_empty_bindings():
    """Test empty bindings return the expression itself"""
    a = symbol_scalar()
    assert substitute(a, {}) is a


def test_substitute_is_simultaneous():
    """Test bindings are applied at once, not in sequence"""
    x1, x2 = RationalExpr.var("xi1"), RationalExpr.var("xi2")
    swapped = substitute(x1 - 2 * x2, {"xi1": x2, "xi2": x1})
    assert swapped == x2 - 2 * x1


def test_substitute_zero_denominator():
    """Test a denominator vanishing identically raises"""
    f = RationalExpr.of(1) / (RationalExpr.var("N") - RationalExpr.var("xi1"))
    with pytest.raises(ZeroDivisorError):
        substitute(f, {"N": RationalExpr.var("xi1")})


def test_substitute_numeric():
    """Test numeric bindings evaluate the expression"""
    a = symbol_scalar()
    value = substitute(a, {"N": 2.0, "X1": 1.0, "X2": 0.0, "X3": 0.0, "xi1": 1.0, "xi2": 1.0, "xi3": 0.0})
    assert value == pytest.approx(7 / 4)


def test_substitute_commutes_with_products(rng):
    """Test substitute(a * b) = substitute(a) * substitute(b)"""
    names = ("xi1", "xi2", "N")
    for _ in range(50):
        a = RationalExpr.of(random_poly(rng, names, 3))
        b = RationalExpr.of(random_poly(rng, names, 3))
        bindings = {
            "xi1": RationalExpr.of(random_poly(rng, ("xi2", "t"), 2, terms=2)),
            "N": Fraction(int(rng.integers(1, 5)), int(rng.integers(1, 5))),
        }
        assert substitute(a * b, bindings) == substitute(a, bindings) * substitute(b, bindings)


def test_evaluate_unbound_variable():
    """Test numeric evaluation names the missing indeterminate"""
    with pytest.raises(ValueError, match="xi2"):
        evaluate(RationalExpr.var("xi2"), {"xi1": 1.0})


def test_serialize_parse(tmp_path):
    """Test golden write/read reproduces the entries"""
    N = RationalExpr.var("N")
    entries = {"a": symbol_scalar(), "b": (N + 1) / (N * N)}
    path = write_golden(tmp_path / "g.txt", entries, header="sample")
    loaded = read_golden(path)
    assert loaded["a"] == entries["a"]
    assert loaded["b"] == entries["b"]
    assert parse(serialize(entries["b"])) == entries["b"]
