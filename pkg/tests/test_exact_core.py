from fractions import Fraction
import pytest
import hypothesis.strategies as st
from hypothesis import given, settings

from cmnerds.exact_core import (ExactPoly, RationalFunction, QuadraticRational, NonDivisible, NonIntegerTotalDegree,
                                poly_divide_exact, quad, sign, to_rational, rational_str, residue_at_infinity,
                                polynomiality_residues, exact_rank, exact_nullspace, exact_det, exact_solve,
                                monomial_exponents, monomials_up_to)


VARS = ('x1', 'x2')
x1 = ExactPoly.variable('x1', VARS)
x2 = ExactPoly.variable('x2', VARS)

coefficients = st.fractions(min_value=-5, max_value=5, max_denominator=4)
polys = st.dictionaries(st.tuples(st.integers(0, 2), st.integers(0, 2)), coefficients, max_size=4).map(
    lambda terms: ExactPoly(VARS, terms))


@given(polys, polys, polys)
@settings(max_examples=50, deadline=None)
def test_ring_axioms(a, b, c):
    assert a * (b + c) == a * b + a * c
    assert a * b == b * a
    assert (a * b) * c == a * (b * c)
    assert (a - a).is_zero()


@given(polys, polys)
@settings(max_examples=50, deadline=None)
def test_leibniz_rule(a, b):
    assert (a * b).diff('x1') == a.diff('x1') * b + a * b.diff('x1')


def test_expand_square():
    assert (x1 + x2) ** 2 == x1 ** 2 + x1 * x2 * 2 + x2 ** 2
    assert ((x1 + x2) ** 2).degree() == 2
    assert ((x1 + x2) ** 2).is_homogeneous()


def test_mixed_variable_sets_align():
    y = ExactPoly.variable('y')
    total = x1 + y
    assert set(total.vars) == {'x1', 'x2', 'y'}
    assert total.evaluate({'x1': 2, 'x2': 0, 'y': Fraction(1, 2)}) == Fraction(5, 2)


def test_substitute_and_evaluate():
    f = x1 ** 2 - x2 * 3
    assert f.evaluate({'x1': Fraction(1, 2), 'x2': 1}) == Fraction(-11, 4)
    g = f.substitute({'x2': x1})
    assert g == x1 ** 2 - x1 * 3


def test_floats_are_refused():
    with pytest.raises(ValueError):
        to_rational(0.5)
    assert to_rational('1/3') == Fraction(1, 3)
    assert rational_str(Fraction(-2, 6)) == '-1/3'


def test_exact_division():
    assert poly_divide_exact(x1 ** 2 - x2 ** 2, x1 - x2) == x1 + x2
    with pytest.raises(NonDivisible):
        poly_divide_exact(x1 ** 2 + x2, x1 - x2)


def test_json_preserves_coefficients():
    f = x1 * Fraction(1, 3) - x2 ** 2 * Fraction(7, 2)
    assert ExactPoly.from_json(f.dumps()) == f


def test_quadratic_rationals():
    r5 = quad(0, 1, 5)
    assert r5 * r5 == 5
    golden = (r5 + 1) / 2
    assert golden * golden == golden + 1
    assert sign(quad(2, -1, 5)) == -1
    assert sign(quad(3, -1, 5)) == 1
    assert isinstance(quad(1, 0, 5), Fraction)
    assert isinstance(golden, QuadraticRational)


def test_rational_function_cancels_root_factors():
    roots = (x1 - x2,)
    rf = RationalFunction(x1 ** 2 - x2 ** 2, (1,), roots)
    assert rf.is_polynomial()
    assert rf.to_poly() == x1 + x2
    inv = RationalFunction.root_power(roots, 0, -1)
    assert inv.evaluate({'x1': 3, 'x2': 1}) == Fraction(1, 2)
    assert (inv * (x1 - x2)).is_polynomial()
    assert inv.diff('x1') == -RationalFunction.root_power(roots, 0, -2)


def test_residue_of_square_root():
    # sqrt(z^2 - 1) = z - 1/(2z) + ...
    assert residue_at_infinity([(1, Fraction(1, 2)), (-1, Fraction(1, 2))]) == Fraction(-1, 2)


def test_residue_of_polynomial_vanishes():
    assert residue_at_infinity([(1, 1), (2, 1)]).is_zero()
    assert all(r.is_zero() for r in polynomiality_residues([0, 1, 3], [2, 1, 1]))


def test_residue_needs_integer_total_degree():
    with pytest.raises(NonIntegerTotalDegree):
        residue_at_infinity([(0, Fraction(1, 2))])


def test_linear_algebra():
    rows = [[1, 2, 3], [2, 4, 6], [1, 0, 1]]
    assert exact_rank(rows) == 2
    basis = exact_nullspace(rows)
    assert len(basis) == 1
    assert all(sum(Fraction(a) * b for a, b in zip(row, basis[0])) == 0 for row in rows)
    assert exact_det([[2, 1], [1, Fraction(1, 2)]]).is_zero()
    assert exact_det([[2, 1], [1, 1]]) == 1
    assert exact_solve([[2, 1], [1, 3]], [3, 5]) == [Fraction(4, 5), Fraction(7, 5)]


def test_rational_matrices_use_plain_domain():
    rows = [[Fraction(1, 2), Fraction(1, 3)], [Fraction(1, 4), Fraction(1)]]
    assert exact_rank(rows) == 2
    assert exact_det(rows) == Fraction(5, 12)
    singular = [[Fraction(1, 2), Fraction(1, 3)], [Fraction(3, 2), Fraction(1)]]
    assert exact_rank(singular) == 1
    assert exact_det(singular).is_zero()
    assert exact_nullspace([[Fraction(1, 2), Fraction(1, 4)]]) == [[Fraction(-1, 2), Fraction(1)]]


def test_symbolic_determinant():
    c = ExactPoly.variable('c')
    det = exact_det([[c, 1], [1, c]], ['c'])
    assert det == c ** 2 - 1


def test_linear_algebra_over_sqrt5():
    golden = quad(Fraction(1, 2), Fraction(1, 2), 5)
    assert exact_rank([[1, golden], [golden, golden + 1]]) == 1
    r5 = quad(0, 1, 5)
    assert exact_det([[r5, 1], [1, r5]]) == 4
    assert exact_det([[r5, 1], [0, 1]]).constant_value() == r5


def test_monomial_enumeration():
    assert len(monomial_exponents(3, 2)) == 6
    assert monomial_exponents(2, 1) == [(1, 0), (0, 1)]
    assert len(monomials_up_to(VARS, 2)) == 6
