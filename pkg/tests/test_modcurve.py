from math import gcd

import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st

from modvals.exactfield import euler_phi
from modvals.modcurve import canonical_cusp, cusp_class, cusp_width, level_data, parse_cusp

KNOWN_GENUS = {1: 0, 2: 0, 5: 0, 10: 0, 11: 1, 13: 0, 22: 2, 23: 2, 25: 0, 27: 1, 31: 2, 37: 2, 64: 3}


@pytest.mark.parametrize("n,g", sorted(KNOWN_GENUS.items()))
def test_genus(n, g):
    assert level_data(n).genus == g


@pytest.mark.parametrize("n", range(1, 50))
def test_cusp_count_and_widths(n):
    lev = level_data(n)
    assert len(lev.cusps) == sum(euler_phi(gcd(v, n // v)) for v in sympy.divisors(n))
    assert sum(c.width for c in lev.cusps) == lev.index
    assert lev.infinity.width == 1 and lev.infinity.v == n


def test_level_27_cusps():
    lev = level_data(27)
    assert [c.label(27) for c in lev.cusps] == ["0", "1/3", "2/3", "1/9", "2/9", "oo"]
    assert [c.width for c in lev.cusps] == [27, 3, 3, 1, 1, 1]


def _mul(x, y):
    return (
        x[0] * y[0] + x[1] * y[2],
        x[0] * y[1] + x[1] * y[3],
        x[2] * y[0] + x[3] * y[2],
        x[2] * y[1] + x[3] * y[3],
    )


@st.composite
def gamma0(draw, n):
    """A random word in T^{+-1} and [[1, 0], [N, 1]]^{+-1}."""
    gens = [(1, 1, 0, 1), (1, -1, 0, 1), (1, 0, n, 1), (1, 0, -n, 1), (-1, 0, 0, -1)]
    m = (1, 0, 0, 1)
    for g in draw(st.lists(st.sampled_from(gens), max_size=8)):
        m = _mul(m, g)
    return m


@given(st.data())
def test_cusp_class_is_gamma0_invariant(data):
    n = data.draw(st.sampled_from([11, 12, 27, 31, 36]))
    lev = level_data(n)
    cusp = data.draw(st.sampled_from(lev.cusps))
    a, b, c, d = data.draw(gamma0(n))
    # image of e/v under the matrix
    num, den = a * cusp.e + b * cusp.v, c * cusp.e + d * cusp.v
    assert cusp_class(num, den, n) == cusp


def test_parse_cusp():
    assert parse_cusp("oo", 27).v == 27
    assert parse_cusp("4/9", 27) == parse_cusp("1/9", 27)
    assert parse_cusp("1/2", 11) == canonical_cusp(0, 1, 11)


def test_width_requires_divisor():
    with pytest.raises(ValueError):
        cusp_width(4, 27)
