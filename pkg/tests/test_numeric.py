import cmath
import math
from fractions import Fraction

import pytest

from modvals.config import family
from modvals.forms import form_input
from modvals.minpoly import ExactPolynomial
from modvals.numeric import NumericError, SeriesEvaluator, eval_series, locate_zeros, verify_minpoly
from modvals.qseries import eisenstein_series, j_function

RHO = complex(-0.5, math.sqrt(3) / 2)


def test_j_at_elliptic_points():
    j = j_function(60)
    assert abs(eval_series(j, 1j)[0] - 1728) < 1e-8
    assert abs(eval_series(j, RHO)[0]) < 1e-8


def test_e2_at_i():
    assert abs(eval_series(eisenstein_series(2, 60), 1j)[0] - 3 / math.pi) < 1e-12


def test_tail_and_domain_checks():
    f = eisenstein_series(4, 20)
    with pytest.raises(NumericError, match="upper half plane"):
        eval_series(f, -1j)
    with pytest.raises(NumericError, match="tail"):
        eval_series(f, 0.01j, tol=1e-10)


def test_derivative_matches_difference_quotient():
    ev = SeriesEvaluator(j_function(60))
    tau, h = complex(0.1, 0.9), 1e-6
    fd = (ev(tau + h)[0] - ev(tau - h)[0]) / (2 * h)
    assert abs(ev.derivative(tau)[0] - fd) < 1e-4 * abs(fd)


def test_level_one_zeros():
    (z,) = locate_zeros(eisenstein_series(4, 60), 1, 1, floor=0.5)
    assert abs(cmath.exp(2j * math.pi * z) - cmath.exp(2j * math.pi * RHO)) < 1e-8
    (z,) = locate_zeros(eisenstein_series(6, 60), 1, 1, floor=0.5)
    assert abs(z - 1j) < 1e-8


def test_too_few_zeros_reported():
    with pytest.raises(NumericError, match="expected 3"):
        locate_zeros(eisenstein_series(4, 60), 1, 3, floor=0.5)


@pytest.fixture(scope="module")
def zeros11():
    f = form_input("example6_1", 11, 300)
    return locate_zeros(f.series, 11, 2)


def test_example6_1_witness(zeros11):
    x = family(11, 300, 2)[2]
    ok, worst = verify_minpoly(zeros11, x, ExactPolynomial((197, 22, 1)))
    assert ok and worst < 1e-6
    ok, worst = verify_minpoly(zeros11, x, ExactPolynomial((233, 22, 1)))
    assert not ok and worst == pytest.approx(36, abs=1e-6)


def test_example6_3_witness():
    f = form_input("example6_3", 27, 600)
    zs = locate_zeros(f.series, 27, 3, floor=0.02)
    assert all(abs(z.imag - zs[0].imag) < 1e-9 for z in zs)
    ok, worst = verify_minpoly(zs, family(27, 600, 2)[2], ExactPolynomial((Fraction(-9), 0, 0, 1)))
    assert ok, worst
    with pytest.raises(NumericError, match="lower floor"):
        locate_zeros(f.series, 27, 3)
