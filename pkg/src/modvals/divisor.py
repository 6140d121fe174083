"""Product exponents, the Serre-derivative quotient and the divisor-sum formula.

For a meromorphic modular form f = q^h (1 + sum a(n) q^n) of weight k on
Gamma0(N), write q^-h f = prod (1 - q^n)^{c(n)}.  The divisor of f inside
the upper half plane is read off through

    sum_z e_z ord_z(f) f_{N,n}(z)
        = S(n) + eps(n) + sum_{l=1}^{g} (S(l) + eps(l)) a_N(n, -l),

with S(n) = sum_{d|n} c(d) d - 2k sigma_1(n) and eps(n) the coefficients of
the corrector form E_f.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd

import sympy

from . import kernels
from .basis import BasisFamily
from .eisenstein import EfSolution, solve_Ef
from .exactfield import CycNumber, as_exact, is_zero
from .modcurve import Cusp, level_data
from .qseries import EtaQuotient, PrecisionError, QSeries, sigma

__all__ = [
    "DivisorError",
    "DivisorReport",
    "FormInput",
    "divisor_sums",
    "eta_cusp_orders",
    "gtfne_residual",
    "product_exponents",
    "product_exponents_recursive",
    "serre_quotient",
]


class DivisorError(ValueError):
    pass


@dataclass
class FormInput:
    """A meromorphic modular form given by its expansion at infinity."""

    series: QSeries
    weight: int
    level: int
    cusp_orders: dict = field(default_factory=dict)
    provenance: str = ""

    def __post_init__(self):
        if self.weight % 2:
            raise DivisorError("weight must be even")
        s = self.series.normalized()
        if s.denom != 1:
            raise DivisorError("expansion has fractional exponents")
        if s.is_zero():
            raise DivisorError("form is zero to the known precision")
        self.series = s
        orders = {}
        for c, o in self.cusp_orders.items():
            if not isinstance(c, Cusp):
                c = level_data(self.level).cusp(str(c))
            orders[c] = Fraction(o)
        self.cusp_orders = orders

    @property
    def h(self) -> int:
        return int(self.series.valuation())

    def require_monic(self):
        lead = self.series.leading_coefficient()
        if lead != 1:
            raise DivisorError(f"leading coefficient is {lead}, not 1; normalize the form first")

    def available_terms(self) -> int:
        """Number of coefficients of q^-h f that are known."""
        return self.series.prec - self.h


def _unit_part(f: FormInput, count: int) -> list:
    f.require_monic()
    if f.available_terms() < count:
        raise PrecisionError(f"form known to {f.available_terms()} terms past the leading one, need {count}")
    u = f.series.shift(-f.h)
    return [u.coeff(i) for i in range(count)]


def product_exponents(f: FormInput, count: int) -> list:
    """c(1..count) with q^-h f = prod (1 - q^n)^{c(n)}."""
    a = _unit_part(f, count + 1)
    s = kernels.log_derivative(a, count + 1)
    c = [Fraction(0)] * (count + 1)
    for m in range(1, count + 1):
        acc = as_exact(s[m])
        for d in sympy.divisors(m)[:-1]:
            acc -= d * c[d]
        c[m] = as_exact(acc / m)
    return c[1:]


def product_exponents_recursive(f: FormInput, count: int) -> list:
    """Same as product_exponents, through the direct recursion

    c(m) = -a(m) - (1/m) (sum_{u|m, u<m} u c(u) + sum_{k<m} a(m-k) sum_{u|k} u c(u)).
    """
    a = _unit_part(f, count + 1)
    c = [Fraction(0)] * (count + 1)
    s = [Fraction(0)] * (count + 1)  # s(k) = sum_{u|k} u c(u)
    for m in range(1, count + 1):
        conv = sum((a[m - k] * s[k] for k in range(1, m)), Fraction(0))
        lower = sum((u * c[u] for u in sympy.divisors(m)[:-1]), Fraction(0))
        c[m] = as_exact(-a[m] - (conv + lower) / m)
        s[m] = as_exact(-m * a[m] - conv)
    return c[1:]


def _divisor_weighted(c: list, n: int):
    return sum((d * c[d - 1] for d in sympy.divisors(n)), Fraction(0))


def serre_quotient(f: FormInput, prec: int, c: list | None = None) -> QSeries:
    """Expansion of (Theta f - k E_2 f / 12) / f, known to O(q^prec)."""
    k = f.weight
    if c is None:
        c = product_exponents(f, max(prec - 1, 1))
    terms = {0: Fraction(f.h) - Fraction(k, 12)}
    for n in range(1, prec):
        terms[n] = -_divisor_weighted(c, n) + 2 * k * sigma(1, n)
    return QSeries.from_dict(terms, prec)


def eta_cusp_orders(spec: EtaQuotient, n: int, cusp: Cusp) -> Fraction:
    """Order of a classical eta quotient at e/v, in the local uniformizer.

    (N / 24) sum_delta gcd(v, delta)^2 r_delta / (gcd(v, N/v) v delta)
    """
    if spec.kind != "classical":
        raise DivisorError("orders of generalized eta quotients must come from configuration")
    if n % spec.level:
        raise DivisorError(f"quotient of level {spec.level} is not on Gamma0({n})")
    v = cusp.v
    tot = Fraction(0)
    for delta, r in spec.exponents.items():
        tot += Fraction(gcd(v, delta) ** 2 * r, delta)
    return Fraction(n, 24 * gcd(v, n // v) * v) * tot


@dataclass
class DivisorReport:
    level: int
    weight: int
    h: int
    c: list
    f_theta: QSeries
    ef: EfSolution
    sums: dict
    L1: object

    @property
    def alphas(self) -> list:
        return self.ef.alphas

    @property
    def E_f(self) -> QSeries:
        return self.ef.series

    def to_dict(self) -> dict:
        return {
            "level": self.level,
            "weight": self.weight,
            "h": self.h,
            "c": [exact_str(x) for x in self.c],
            "ftheta": _series_list(self.f_theta),
            "alphas": [exact_str(a) for a in self.alphas],
            "Ef": _series_list(self.E_f),
            "sums": {str(n): exact_str(v) for n, v in sorted(self.sums.items())},
            "L1": exact_str(self.L1),
        }


def exact_str(x):
    x = as_exact(x)
    if isinstance(x, CycNumber):
        return x.serialize()
    return str(x)


def _series_list(s: QSeries) -> list:
    return [[str(e), exact_str(c)] for e, c in s.items()]


def _s_values(c: list, k: int, n_max: int) -> dict:
    return {n: _divisor_weighted(c, n) - 2 * k * sigma(1, n) for n in range(1, n_max + 1)}


def divisor_sums(f: FormInput, fam: BasisFamily, n_max: int) -> DivisorReport:
    """Evaluate the divisor-sum formula for g+1 <= n <= n_max."""
    if fam.N != f.level:
        raise DivisorError(f"family level {fam.N} differs from form level {f.level}")
    lev = level_data(f.level)
    missing = [c.label(f.level) for c in lev.finite_cusps() if c not in f.cusp_orders]
    if missing:
        raise DivisorError(f"missing cusp orders at {', '.join(missing)}")
    if n_max > fam.m_max:
        raise DivisorError(f"n_max {n_max} exceeds the family's m_max {fam.m_max}")
    k = f.weight
    c = product_exponents(f, n_max)
    f_theta = serre_quotient(f, n_max + 1, c)
    ef = solve_Ef(f.level, k, f.cusp_orders, n_max + 1)
    eps = ef.series
    s = _s_values(c, k, n_max)
    g = fam.genus
    sums = {}
    for n in range(g + 1, n_max + 1):
        val = s[n] + eps.coeff(n)
        for ell in range(1, g + 1):
            val += (s[ell] + eps.coeff(ell)) * fam.a(n, -ell)
        sums[n] = as_exact(val)
    L1 = as_exact(-f.h + Fraction(k, 12) + eps.coeff(0))
    return DivisorReport(f.level, k, f.h, c, f_theta, ef, sums, L1)


def gtfne_residual(f: FormInput, fam: BasisFamily, prec: int) -> QSeries:
    """-f_theta + E_f + sum_l (-S(l) - eps(l)) g_{N,-l}; zero when div f lies at cusps."""
    if prec > fam.m_max + 1:
        raise DivisorError(f"precision {prec} needs a family with m_max >= {prec - 1}")
    k = f.weight
    c = product_exponents(f, max(prec - 1, fam.genus, 1))
    f_theta = serre_quotient(f, prec, c)
    ef = solve_Ef(f.level, k, f.cusp_orders, prec)
    out = -f_theta + ef.series
    s = _s_values(c, k, max(fam.genus, 1))
    for ell in range(1, fam.genus + 1):
        corr = -s[ell] - ef.series.coeff(ell)
        if not is_zero(corr):
            out = out + fam.dual(ell).truncate(prec).scale(corr)
    return out.truncate(prec)
