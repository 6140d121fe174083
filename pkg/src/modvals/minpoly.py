"""Power sums of a modular function over a divisor, and the polynomial they define.

Once the divisor sums of f_{N,n} are known, the weighted sum of any
weakly holomorphic function over div f follows by linearity.  Newton's
identities then turn power sums of X into the monic polynomial whose roots
are the values X(z), z in div f, counted with multiplicity.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .basis import BasisFamily, expand_in_basis
from .divisor import DivisorReport
from .exactfield import CycNumber, as_exact, is_zero
from .qseries import QSeries

__all__ = [
    "DivisorFunctional",
    "ExactPolynomial",
    "MinpolyError",
    "functional_apply",
    "minimal_polynomial",
    "newton_minpoly",
    "power_sums",
]


class MinpolyError(ArithmeticError):
    pass


@dataclass
class DivisorFunctional:
    """g -> sum_z e_z ord_z(f) g(z), for g in the span of 1 and the basis family."""

    report: DivisorReport
    family: BasisFamily

    @property
    def degree(self):
        return self.report.L1

    def value(self, m: int):
        """Weighted sum of the basis element f_{N,m}."""
        if m == 0:
            return self.report.L1
        if m <= self.family.genus:
            raise MinpolyError(f"f_(N,{m}) is not part of the basis (genus {self.family.genus})")
        if m not in self.report.sums:
            raise MinpolyError(f"divisor sum at n={m} not computed; raise n_max to at least {m}")
        return self.report.sums[m]

    def __call__(self, g: QSeries):
        exp = expand_in_basis(g, self.family)
        total = as_exact(exp.constant * self.report.L1)
        for m, coef in exp.coeffs.items():
            if not is_zero(coef):
                total = total + coef * self.value(m)
        return as_exact(total)


def functional_apply(report: DivisorReport, fam: BasisFamily, g: QSeries):
    return DivisorFunctional(report, fam)(g)


def power_sums(report: DivisorReport, fam: BasisFamily, x: QSeries, count: int) -> list:
    """p_1..p_count with p_j = sum_z e_z ord_z(f) x(z)^j."""
    fn = DivisorFunctional(report, fam)
    out = []
    xp = None
    for _ in range(count):
        xp = x if xp is None else (xp * x).truncate(x.prec)
        out.append(fn(xp))
    return out


@dataclass(frozen=True)
class ExactPolynomial:
    """Coefficients from the constant term upward."""

    coeffs: tuple

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def to_complex_coeffs(self) -> list:
        out = []
        for c in self.coeffs:
            out.append(c.to_complex() if isinstance(c, CycNumber) else complex(c))
        return out

    def roots(self):
        import numpy as np

        return np.roots(self.to_complex_coeffs()[::-1])

    def is_rational(self) -> bool:
        return all(not isinstance(c, CycNumber) for c in self.coeffs)

    def to_json(self) -> list:
        out = []
        for c in self.coeffs:
            if isinstance(c, CycNumber):
                out.append(c.serialize())
            elif isinstance(c, Fraction) and c.denominator == 1:
                out.append(int(c))
            elif isinstance(c, int):
                out.append(c)
            else:
                out.append(str(c))
        return out

    def __str__(self):
        parts = []
        for i in range(self.degree, -1, -1):
            c = self.coeffs[i]
            if is_zero(c):
                continue
            mon = "" if i == 0 else ("X" if i == 1 else f"X^{i}")
            if mon and c == 1:
                parts.append(mon)
            else:
                parts.append(f"({c})*{mon}" if mon else f"({c})")
        return " + ".join(parts) or "0"


def newton_minpoly(p: list, degree: int) -> ExactPolynomial:
    """Monic polynomial of the given degree whose root power sums are p_1, p_2, ...

    k e_k = sum_{i=1}^{k} (-1)^{i-1} e_{k-i} p_i, and the polynomial is
    sum_k (-1)^k e_k X^{d-k}.
    """
    if degree < 0:
        raise MinpolyError("degree must be nonnegative")
    if len(p) < degree:
        raise MinpolyError(f"need {degree} power sums, got {len(p)}")
    e = [Fraction(1)]
    for k in range(1, degree + 1):
        acc = Fraction(0)
        for i in range(1, k + 1):
            term = e[k - i] * p[i - 1]
            acc = acc + term if i % 2 else acc - term
        e.append(as_exact(acc / k))
    coeffs = [as_exact((-1) ** k * e[k]) for k in range(degree, -1, -1)]
    return ExactPolynomial(tuple(coeffs))


def _degree(report: DivisorReport) -> int:
    d = as_exact(report.L1)
    if isinstance(d, CycNumber) or Fraction(d).denominator != 1 or d < 0:
        raise MinpolyError(
            f"weighted divisor degree {d} is not a nonnegative integer; elliptic points "
            "carry fractional weight, so use a power of the form"
        )
    return int(d)


def minimal_polynomial(report: DivisorReport, fam: BasisFamily, x: QSeries) -> ExactPolynomial:
    """prod_z (X - x(z))^{e_z ord_z f}, as an exact polynomial."""
    d = _degree(report)
    return newton_minpoly(power_sums(report, fam, x, d), d)
