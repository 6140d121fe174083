from fractions import Fraction

import pytest

from modvals.forms import FormError, eta_cusp_value_abs2, form_input, parse_cusp_orders, parse_form
from modvals.modcurve import level_data
from modvals.numeric import cusp_constant_numeric
from modvals.qseries import EtaQuotient, QSeries, eisenstein_series, eta_expand


def test_grammar():
    spec = parse_form("-1/10@E2diff:11 + -12/5@eta:1^2*11^2")
    assert [(t.coef, t.kind) for t in spec.terms] == [(Fraction(-1, 10), "E2diff"), (Fraction(-12, 5), "eta")]
    assert spec.terms[1].arg == {1: 2, 11: 2}
    assert parse_form("eta:3^3/27^3+const:3").weight() == 0
    assert parse_form("2@E4").weight() == 4


def test_presets_match_their_definitions():
    for name, body, n in (
        ("example6_1", "-1/10@E2diff:11 + -12/5@eta:1^2*11^2", 11),
        ("example6_3", "eta:3^3/27^3 + const:3", 27),
    ):
        assert parse_form(name).series(n, 30) == parse_form(body).series(n, 30)
    assert form_input("E4", 1, 20).series == eisenstein_series(4, 20)
    assert form_input("Delta", 1, 20).series == form_input("eta:1^24", 1, 20).series


def test_example6_1_is_monic_with_pole_free_leading_term():
    f = form_input("example6_1", 11, 30)
    assert f.h == 0 and f.series.leading_coefficient() == 1
    assert f.weight == 2


@pytest.mark.parametrize(
    "text,err",
    [
        ("E4 + E6", "different weights"),
        ("eta:1^1", "not an integer"),
        ("foo:3", "unknown"),
        ("eta:1^x", "bad eta factor"),
        ("E2diff:x", "integer"),
    ],
)
def test_parse_errors(text, err):
    with pytest.raises(FormError, match=err):
        form_input(text, 11, 20)


def test_weight_mismatch_and_missing_weight(tmp_path):
    with pytest.raises(FormError, match="weight"):
        form_input("E4", 1, 20, weight=6)
    p = tmp_path / "s.txt"
    p.write_text(QSeries([1, 2, 3], 0, 10).to_text())
    with pytest.raises(FormError, match="--weight"):
        form_input(f"series:{p}", 1, 10)
    f = form_input(f"series:{p}", 1, 10, weight=0, cusp_orders={})
    assert f.series.coeff(2) == 3


def test_inferred_orders():
    lev = level_data(27)
    orders = parse_form("example6_3").infer_cusp_orders(27)
    assert {c.label(27): o for c, o in orders.items()} == {"0": 0, "1/3": 0, "2/3": 0, "1/9": 0, "2/9": 0}
    orders = parse_form("eta:3^3/27^3").infer_cusp_orders(27)
    assert orders[lev.cusp("0")] == 1 and orders[lev.cusp("1/9")] == 0
    assert parse_form("Delta").infer_cusp_orders(11) == {lev11: 11 for lev11 in level_data(11).finite_cusps()}
    with pytest.raises(FormError, match="--cusp-orders"):
        parse_form("E4 + 2@E4").infer_cusp_orders(11)


def test_undecidable_order_is_refused():
    # eta^8/eta_4^8 is -16 at 1/2, so adding 16 may create a zero there
    with pytest.raises(FormError, match="1/2"):
        parse_form("eta:1^8/4^8 + const:16").infer_cusp_orders(4)
    orders = parse_form("eta:1^8/4^8 + const:5").infer_cusp_orders(4)
    assert orders[level_data(4).cusp("1/2")] == 0


@pytest.mark.parametrize(
    "n,ex,cusp,prec",
    [(4, {1: 8, 4: -8}, "1/2", 200), (27, {3: 3, 27: -3}, "1/9", 700), (27, {3: 3, 27: -3}, "2/9", 700), (9, {1: 3, 9: -3}, "1/3", 300)],
)
def test_cusp_value_formula_numerically(n, ex, cusp, prec):
    eq = EtaQuotient(n, ex)
    c = level_data(n).cusp(cusp)
    val = cusp_constant_numeric(eta_expand(eq, prec), 0, c, n, samples=256)
    assert abs(abs(val) ** 2 - float(eta_cusp_value_abs2(eq, c.v))) < 1e-8


def test_parse_cusp_orders():
    got = parse_cusp_orders("0=1, 1/3=-2,2/9=1/2", 27)
    lev = level_data(27)
    assert got == {lev.cusp("0"): 1, lev.cusp("1/3"): -2, lev.cusp("2/9"): Fraction(1, 2)}
    with pytest.raises(FormError):
        parse_cusp_orders("0:1", 27)
