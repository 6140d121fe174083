from fractions import Fraction

import pytest

from modvals.basis import (
    BasisError,
    GeneratorSpec,
    build_basis,
    exponent_search,
    expand_in_basis,
    hecke_J,
    level_one_generator,
)
from modvals.config import ConfigError, LevelConfig, family, load_level, shipped_levels
from modvals.qseries import EtaQuotient, QSeries, eta_expand, j_function


def test_shipped_levels():
    assert shipped_levels() == list(range(1, 12)) + [27, 31]


@pytest.mark.parametrize("n", [1, 2, 3, 5, 7, 10, 11, 27, 31])
def test_echelon_shape(n):
    fam = family(n, 30, 12)
    g = fam.genus
    assert fam.orders() == [0] + list(range(g + 1, 13))
    for m in fam.orders()[1:]:
        f = fam[m]
        assert f.valuation() == -m and f.leading_coefficient() == 1
        assert f.coeff(0) == 0
        for j in range(g + 1, m):
            assert f.coeff(-j) == 0


def test_level_one_is_hecke_family():
    fam = build_basis(1, [level_one_generator()], 20, 6)
    assert fam[1] == j_function(20) - 744
    for m in range(2, 7):
        assert fam[m] == hecke_J(m, 20)


def test_weierstrass_gaps(fam11, fam31):
    with pytest.raises(BasisError, match="gap"):
        fam11[1]
    with pytest.raises(BasisError):
        fam31[2]


def test_hauptmodul_level_5():
    fam = family(5, 30, 4)
    hm = eta_expand(EtaQuotient(5, {1: 6, 5: -6}), 30)
    assert fam[1] == hm - hm.coeff(0)


@pytest.mark.parametrize("n", [11, 27, 31])
def test_products_expand_with_zero_residual(n):
    fam = family(n, 40, 16)
    orders = fam.orders()[1:]
    for i in orders:
        for j in orders:
            if i <= j and i + j <= 16:
                exp = expand_in_basis((fam[i] * fam[j]).truncate(30), fam)
                assert exp.residual.is_zero()
                assert exp.coeffs[i + j] == 1


def test_expansion_rejects_gap_pole(fam11):
    with pytest.raises(BasisError, match="gap"):
        expand_in_basis(QSeries.monomial(-1, 30), fam11)


def test_expansion_rejects_non_function(fam11):
    junk = fam11[2] + QSeries.monomial(5, 60)
    with pytest.raises(BasisError, match="residual"):
        expand_in_basis(junk, fam11)


def test_duality(fam11, fam27):
    for fam in (fam11, fam27):
        for m in fam.orders()[1:]:
            assert fam.b(-1, m) == -fam.a(m, -1)
            assert fam.dual(1).coeff(m) == fam.b(-1, m)


def test_dual_is_the_cusp_form(fam11):
    assert fam11.dual(1).agrees_with(eta_expand(EtaQuotient(11, {1: 2, 11: 2}), 21))


def test_exponent_search():
    table = [[1, -1], [-2, 3], [0, -1]]
    x = exponent_search(table, 2, (0, 3), 0)
    cols = [sum(a * r[j] for a, r in zip(x, table)) for j in range(2)]
    assert cols[0] == -2 and cols[1] >= -2
    with pytest.raises(BasisError):
        exponent_search([[1, 1]], 3, (0, 2), 0)


def test_conflicting_generators_detected():
    bad = GeneratorSpec(kind="eta", exponents={1: 6, 5: -6}, constant=Fraction(1))
    wrong = GeneratorSpec(kind="seed", seed=QSeries([1, 0, 7], -2, 40))
    with pytest.raises(BasisError, match="disagree"):
        build_basis(5, [bad, wrong], 20, 4)


def test_config_errors(tmp_path):
    with pytest.raises(ConfigError):
        load_level(99)
    p = tmp_path / "bad.json"
    p.write_text('{"level": 11, "genus_hint": 0, "generators": []}')
    with pytest.raises(ConfigError, match="genus"):
        load_level(str(p))
    with pytest.raises(ConfigError, match="malformed"):
        LevelConfig.from_dict({"generators": []})
