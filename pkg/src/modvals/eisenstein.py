"""The weight-2 Eisenstein space of Gamma0(N): basis, constant terms at cusps, E_f.

Basis of E_2(N):

* ``E2diff(d)``: E_2(tau) - d E_2(d tau) for d | N, d > 1;
* ``CharEis(phi, t)``: 2 sum_n (sum_{d|n} d phi(n/d) conj(phi)(d)) q^{tn}
  for phi primitive and nontrivial mod u and t u^2 | N.

Constant terms at cusps come from closed forms, never from re-expansion.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd

import sympy

from .exactfield import (
    CycNumber,
    DirichletCharacter,
    as_exact,
    gauss_sum,
    inv_one_minus_cos,
    is_zero,
    primitive_characters,
)
from .modcurve import Cusp, level_data, reduce_cusp
from .qseries import QSeries, char_eisenstein_q, eisenstein_series

__all__ = [
    "EfSolution",
    "EisElement",
    "char_eis_const",
    "constant_table",
    "e2diff_const",
    "eis_basis",
    "solve_Ef",
    "solve_linear",
]


class SingularSystemError(ArithmeticError):
    pass


@dataclass(frozen=True)
class EisElement:
    kind: str  # "E2diff" or "CharEis"
    d: int = 1
    chi: DirichletCharacter | None = None
    t: int = 1
    index: int = 0

    def __str__(self):
        if self.kind == "E2diff":
            return f"E2diff({self.d})"
        return f"CharEis(mod {self.chi.modulus}#{self.index}, t={self.t})"

    def expansion(self, prec: int) -> QSeries:
        if self.kind == "E2diff":
            e2 = eisenstein_series(2, prec)
            return e2 - e2.rescale(self.d).truncate(prec).scale(self.d)
        base = char_eisenstein_q(self.chi, -(-prec // self.t)).scale(2)
        return base.rescale(self.t).truncate(prec)

    def constant(self, cusp: Cusp, n: int):
        if self.kind == "E2diff":
            return e2diff_const(self.d, cusp)
        return char_eis_const(self.chi, self.t, cusp, n)


def eis_basis(n: int) -> list[EisElement]:
    """Deterministic basis: E2diff by d, then CharEis by (u, t, character index)."""
    out = [EisElement("E2diff", d=d) for d in sympy.divisors(n) if d > 1]
    for u in range(2, n + 1):
        if n % (u * u):
            continue
        chars = [c for c in primitive_characters(u) if not c.is_trivial()]
        for t in sympy.divisors(n // (u * u)):
            for i, chi in enumerate(chars):
                out.append(EisElement("CharEis", chi=chi, t=t, index=i))
    return out


def e2diff_const(d: int, cusp: Cusp | int) -> Fraction:
    """Constant term of E_2 - d E_2(d tau) at a cusp e/v: 1 - gcd(d, v)^2 / d."""
    v = cusp.v if isinstance(cusp, Cusp) else cusp
    return 1 - Fraction(gcd(d, v) ** 2, d)


def char_eis_const(chi: DirichletCharacter, t: int, cusp: Cusp, n: int):
    """Constant term of CharEis(chi, t) at a cusp of Gamma0(N).

    The cusp is first reduced to level M = t u^2.  With s = gcd(v, t),
    t1 = t/s, the value vanishes unless v/s = u, and otherwise equals
    -(1/(2 g(chi) t1^2)) sum_{d mod u, (d,u)=1} chi(-e t1 d^2) / (1 - cos(2 pi d/u)).
    """
    u = chi.modulus
    m = t * u * u
    if n % m:
        raise ValueError(f"t u^2 = {m} does not divide the level {n}")
    red = reduce_cusp(cusp.e, cusp.v, m)
    e, v = red.e, red.v
    s = gcd(v, t)
    t1 = t // s
    if v // s != u or v % s:
        return Fraction(0)
    total = CycNumber.from_rational(0, u)
    for d in range(1, u):
        if gcd(d, u) != 1:
            continue
        val = chi(-e * t1 * d * d)
        if is_zero(val):
            continue
        total = total + inv_one_minus_cos(d, u) * val
    g = gauss_sum(chi)
    return as_exact(-(total / (g * (2 * t1 * t1))))


def constant_table(n: int, basis=None, cusps=None) -> list[list]:
    """rows = cusps, columns = basis elements."""
    basis = eis_basis(n) if basis is None else basis
    cusps = level_data(n).cusps if cusps is None else cusps
    return [[el.constant(c, n) for el in basis] for c in cusps]


def solve_linear(matrix, rhs):
    """Exact Gauss-Jordan elimination over Fractions and cyclotomic numbers."""
    nrow = len(matrix)
    ncol = len(matrix[0]) if nrow else 0
    if nrow != ncol:
        raise SingularSystemError(f"system is {nrow}x{ncol}, not square")
    a = [[as_exact(x) for x in row] + [as_exact(b)] for row, b in zip(matrix, rhs)]
    for col in range(ncol):
        piv = next((r for r in range(col, nrow) if not is_zero(a[r][col])), None)
        if piv is None:
            raise SingularSystemError("coefficient matrix is singular")
        a[col], a[piv] = a[piv], a[col]
        p = a[col][col]
        inv = 1 / p if not isinstance(p, CycNumber) else p.inverse()
        a[col] = [as_exact(x * inv) for x in a[col]]
        for r in range(nrow):
            if r != col and not is_zero(a[r][col]):
                f = a[r][col]
                a[r] = [as_exact(x - f * y) for x, y in zip(a[r], a[col])]
    return [row[-1] for row in a]


@dataclass
class EfSolution:
    level: int
    weight: int
    basis: list
    cusps: list
    rhs: list
    alphas: list
    series: QSeries
    constants_at_infinity: object = None
    extra: dict = field(default_factory=dict)

    def epsilon(self, n: int):
        return self.series.coeff(n)


def cusp_constants(n: int, k: int, cusp_orders: dict) -> dict:
    """c_s = ord_s(f)/h_s - k/12 for every cusp other than infinity.

    ``cusp_orders`` maps Cusp -> order in the local uniformizer at that cusp.
    """
    lev = level_data(n)
    out = {}
    for c in lev.finite_cusps():
        if c not in cusp_orders:
            raise KeyError(f"missing cusp order at {c.label(n)}")
        out[c] = Fraction(cusp_orders[c]) / c.width - Fraction(k, 12)
    return out


def solve_Ef(n: int, k: int, cusp_orders: dict, prec: int = 60) -> EfSolution:
    """Unique E_f in E_2(N) matching the constants of f_theta away from infinity."""
    lev = level_data(n)
    cusps = lev.finite_cusps()
    basis = eis_basis(n) if n > 1 else []
    consts = cusp_constants(n, k, cusp_orders)
    rhs = [consts[c] for c in cusps]
    if len(basis) != len(cusps):
        raise SingularSystemError(f"basis size {len(basis)} differs from {len(cusps)} finite cusps")
    if not basis:
        return EfSolution(n, k, [], [], [], [], QSeries.zero(prec), Fraction(0))
    table = constant_table(n, basis, cusps)
    alphas = solve_linear(table, rhs)
    series = QSeries.zero(prec)
    for a, el in zip(alphas, basis):
        if not is_zero(a):
            series = series + el.expansion(prec).scale(a)
    return EfSolution(n, k, basis, cusps, rhs, alphas, series, series.coeff(0))


def solve_alphas(n: int, rhs: list) -> list:
    """Solve the constant-term system for an arbitrary right-hand side."""
    lev = level_data(n)
    basis = eis_basis(n)
    return solve_linear(constant_table(n, basis, lev.finite_cusps()), rhs)
