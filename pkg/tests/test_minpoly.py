import math
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from modvals.basis import build_basis, level_one_generator
from modvals.divisor import FormInput, divisor_sums
from modvals.exactfield import CycNumber, zeta
from modvals.forms import form_input
from modvals.minpoly import (
    DivisorFunctional,
    ExactPolynomial,
    MinpolyError,
    minimal_polynomial,
    newton_minpoly,
    power_sums,
)
from modvals.qseries import eisenstein_series

rats = st.builds(Fraction, st.integers(-30, 30), st.integers(1, 6))


def _expand(roots):
    coeffs = [Fraction(1)]
    for r in roots:
        # multiply by (X - r), low to high
        coeffs = [-r * coeffs[0]] + [coeffs[i - 1] - r * coeffs[i] for i in range(1, len(coeffs))] + [coeffs[-1]]
    return tuple(coeffs)


@given(st.lists(rats, max_size=7))
def test_newton_roundtrip(roots):
    p = [sum((r**k for r in roots), Fraction(0)) for k in range(1, len(roots) + 1)]
    assert newton_minpoly(p, len(roots)).coeffs == _expand(roots)


@pytest.mark.parametrize("roots", [[zeta(3), zeta(3) ** 2, Fraction(2)], [zeta(4), Fraction(1), zeta(8) + Fraction(1, 3)]])
def test_newton_roundtrip_cyclotomic(roots):
    p = [sum((r**k for r in roots), Fraction(0)) for k in range(1, len(roots) + 1)]
    poly = newton_minpoly(p, len(roots))
    assert poly.coeffs == _expand(roots)
    assert all(poly(r) == 0 for r in roots)


def test_galois_closed_roots_give_rational_polynomial():
    roots = [zeta(3), zeta(3) ** 2, Fraction(2)]
    p = [sum((r**k for r in roots), Fraction(0)) for k in range(1, 4)]
    assert newton_minpoly(p, 3).to_json() == [-2, -1, -1, 1]


def test_newton_needs_enough_sums():
    with pytest.raises(MinpolyError):
        newton_minpoly([1], 2)


def test_polynomial_helpers():
    poly = ExactPolynomial((Fraction(197), Fraction(22), Fraction(1)))
    assert poly(Fraction(-11)) == 76
    assert poly.degree == 2 and poly.is_rational()
    assert poly.to_json() == [197, 22, 1]
    assert str(poly) == "X^2 + (22)*X + (197)"
    assert sorted(abs(r) for r in poly.roots()) == pytest.approx([math.sqrt(197)] * 2)
    half = ExactPolynomial((Fraction(1, 2), Fraction(1)))
    assert half.to_json() == ["1/2", 1]
    assert ExactPolynomial((zeta(4), Fraction(1))).to_json() == [zeta(4).serialize(), 1]


@pytest.fixture(scope="module")
def report11(fam11):
    return divisor_sums(form_input("example6_1", 11, 80), fam11, 8)


def test_functional_linearity(report11, fam11):
    fn = DivisorFunctional(report11, fam11)
    a, b = Fraction(3, 7), Fraction(-5)
    g, h = fam11[2], fam11[5]
    assert fn(g.scale(a) + h.scale(b) + 4) == a * fn(g) + b * fn(h) + 4 * report11.L1


def test_functional_on_basis_elements(report11, fam11):
    fn = DivisorFunctional(report11, fam11)
    for m in range(2, 9):
        assert fn(fam11[m]) == report11.sums[m]
    with pytest.raises(MinpolyError):
        fn.value(1)
    with pytest.raises(MinpolyError, match="n_max"):
        fn.value(12)


def test_example6_1(report11, fam11):
    x = fam11[2]
    assert (x * x).coeff(0) == 36
    assert power_sums(report11, fam11, x, 2) == [-22, 90]
    assert minimal_polynomial(report11, fam11, x).to_json() == [197, 22, 1]


def test_example6_3(fam27):
    r = divisor_sums(form_input("example6_3", 27, 80), fam27, 9)
    assert power_sums(r, fam27, fam27[2], 3) == [0, 0, 27]
    assert minimal_polynomial(r, fam27, fam27[2]).to_json() == [-9, 0, 0, 1]
    assert minimal_polynomial(r, fam27, fam27[3]).to_json() == [0, 0, 0, 1]


def test_level_one_values():
    fam = build_basis(1, [level_one_generator()], 40, 4)
    e4, e6 = eisenstein_series(4, 50), eisenstein_series(6, 50)
    # j - 744 at rho and at i
    r = divisor_sums(FormInput(e4**3, 12, 1, {}), fam, 1)
    assert minimal_polynomial(r, fam, fam[1]).to_json() == [744, 1]
    r = divisor_sums(FormInput(e6 * e6, 12, 1, {}), fam, 1)
    assert minimal_polynomial(r, fam, fam[1]).to_json() == [-984, 1]


def test_fractional_degree_refused():
    fam = build_basis(1, [level_one_generator()], 40, 4)
    r = divisor_sums(FormInput(eisenstein_series(4, 50), 4, 1, {}), fam, 1)
    with pytest.raises(MinpolyError, match="not a nonnegative integer"):
        minimal_polynomial(r, fam, fam[1])
