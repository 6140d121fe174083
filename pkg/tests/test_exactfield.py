import cmath
from fractions import Fraction

import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st

from modvals.exactfield import (
    CycNumber,
    FieldError,
    cyclotomic_poly,
    dirichlet_characters,
    euler_phi,
    gauss_sum,
    inv_one_minus_cos,
    primitive_characters,
    zeta,
)

fracs = st.builds(Fraction, st.integers(-99, 99), st.integers(1, 12))
conductors = st.sampled_from([1, 3, 4, 5, 7, 8, 9, 12, 15, 24])


@st.composite
def cyc(draw, n=None):
    n = n or draw(conductors)
    return CycNumber(draw(st.lists(fracs, min_size=euler_phi(n), max_size=euler_phi(n))), n)


def test_phi_and_cyclotomic_match_sympy():
    x = sympy.Symbol("x")
    for n in range(1, 40):
        assert euler_phi(n) == sympy.totient(n)
        want = sympy.Poly(sympy.cyclotomic_poly(n, x), x).all_coeffs()[::-1]
        assert list(cyclotomic_poly(n)) == want


@given(st.data())
def test_field_axioms(data):
    n = data.draw(conductors)
    a, b, c = (data.draw(cyc(n)) for _ in range(3))
    assert (a + b) * c == a * c + b * c
    assert a * b == b * a
    if not a.is_zero():
        assert a * a.inverse() == 1


@given(st.data())
def test_complex_embedding_is_a_ring_map(data):
    n = data.draw(conductors)
    a, b = data.draw(cyc(n)), data.draw(cyc(n))
    assert abs((a * b).to_complex() - a.to_complex() * b.to_complex()) < 1e-6 * (1 + abs(a.to_complex() * b.to_complex()))
    assert abs(a.conj().to_complex() - a.to_complex().conjugate()) < 1e-9 * (1 + abs(a.to_complex()))


@given(cyc())
def test_serialize_roundtrip(a):
    assert CycNumber.parse(a.serialize()) == a


@pytest.mark.parametrize("n", [3, 4, 8, 12])
def test_zeta_is_primitive_root_of_unity(n):
    z = zeta(n)
    assert z**n == 1
    assert all(z**k != 1 for k in range(1, n))
    assert abs(z.to_complex() - cmath.exp(2j * cmath.pi / n)) < 1e-12


def test_promote_preserves_value():
    a = zeta(3) + Fraction(1, 2)
    assert abs(a.promote(12).to_complex() - a.to_complex()) < 1e-12


def test_character_counts_and_orthogonality():
    for u in range(2, 25):
        chars = dirichlet_characters(u)
        assert len(chars) == euler_phi(u)
        for chi in chars:
            total = sum((chi(n) for n in range(u)), Fraction(0))
            assert total == (euler_phi(u) if chi.is_trivial() else 0)


@pytest.mark.parametrize("u", range(2, 25))
def test_gauss_sum_norm(u):
    for chi in primitive_characters(u):
        g = gauss_sum(chi)
        assert g * g.conj() == u


def test_gauss_sum_rejects_imprimitive():
    chi = next(c for c in dirichlet_characters(9) if not c.is_primitive() and not c.is_trivial())
    with pytest.raises(FieldError):
        gauss_sum(chi)


@pytest.mark.parametrize("u", [3, 4, 5, 9, 12])
def test_inv_one_minus_cos(u):
    for d in range(1, u):
        x = inv_one_minus_cos(d, u)
        val = x.to_complex() if isinstance(x, CycNumber) else complex(x)
        assert abs(val - 1 / (1 - cmath.cos(2 * cmath.pi * d / u))) < 1e-9
    with pytest.raises(FieldError):
        inv_one_minus_cos(u, u)
