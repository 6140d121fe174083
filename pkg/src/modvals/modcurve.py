"""Arithmetic data of X0(N): cusps, widths, genus, elliptic points."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd

import sympy

__all__ = [
    "Cusp",
    "LevelData",
    "canonical_cusp",
    "cusp_class",
    "cusp_width",
    "level_data",
    "parse_cusp",
    "reduce_cusp",
]


@dataclass(frozen=True, order=True)
class Cusp:
    """Canonical representative e/v of a Gamma0(N) cusp class (v | N)."""

    v: int
    e: int
    width: int

    def __str__(self):
        return f"{self.e}/{self.v}"

    def label(self, n: int) -> str:
        if self.v == n:
            return "oo"
        if self.v == 1:
            return "0"
        return f"{self.e}/{self.v}"

    def is_infinity(self, n: int) -> bool:
        return self.v == n


def cusp_width(c: Cusp | int, n: int) -> int:
    v = c.v if isinstance(c, Cusp) else c
    if n % v:
        raise ValueError(f"{v} does not divide {n}")
    return n // gcd(v * v, n)


def canonical_cusp(e: int, v: int, n: int) -> Cusp:
    """Canonical representative of e/v, v | N, gcd(e, v) = 1."""
    if n % v:
        raise ValueError(f"{v} does not divide the level {n}")
    g = gcd(v, n // v)
    r = e % g if g > 1 else 0
    x = r
    while gcd(x, v) != 1:
        x += g if g > 1 else 1
    return Cusp(v, x, cusp_width(v, n))


def cusp_class(a: int, c: int, n: int) -> Cusp:
    """Gamma0(N)-class of an arbitrary cusp a/c in lowest terms (c may be 0)."""
    if c == 0:
        return canonical_cusp(1, n, n)
    if c < 0:
        a, c = -a, -c
    g = gcd(a, c)
    a, c = a // g, c // g
    v = gcd(c, n)
    return canonical_cusp((c // v) * a, v, n)


def reduce_cusp(e: int, v: int, m: int) -> Cusp:
    """Gamma0(M)-class of the Gamma0(N)-cusp e/v: m'e/v' with v' = gcd(v, M)."""
    vp = gcd(v, m)
    return canonical_cusp((v // vp) * e, vp, m)


def parse_cusp(text: str, n: int) -> Cusp:
    t = text.strip().lower()
    if t in ("oo", "inf", "infinity", "i∞", "∞"):
        return canonical_cusp(1, n, n)
    frac = Fraction(t)
    return cusp_class(frac.numerator, frac.denominator, n)


@lru_cache(maxsize=None)
def _cusps(n: int) -> tuple[Cusp, ...]:
    out = []
    for v in sympy.divisors(n):
        g = gcd(v, n // v)
        seen = set()
        for r in range(g):
            if gcd(r, g) != 1:
                continue
            c = canonical_cusp(r, v, n)
            if c not in seen:
                seen.add(c)
                out.append(c)
    return tuple(sorted(out, key=lambda c: (c.v, c.e)))


@dataclass(frozen=True)
class LevelData:
    N: int
    index: int
    genus: int
    cusps: tuple
    nu2: int
    nu3: int
    infinity_non_weierstrass: bool | None = None

    @property
    def infinity(self) -> Cusp:
        return self.cusps[-1]

    def finite_cusps(self) -> list[Cusp]:
        return [c for c in self.cusps if c.v != self.N]

    def cusp(self, text: str) -> Cusp:
        return parse_cusp(text, self.N)

    def label(self, c: Cusp) -> str:
        return c.label(self.N)


@lru_cache(maxsize=None)
def level_data(n: int) -> LevelData:
    if n < 1:
        raise ValueError("level must be positive")
    index = n
    for p in sympy.primefactors(n):
        index = index * (p + 1) // p
    if n % 4 == 0:
        nu2 = 0
    else:
        nu2 = 1
        for p in sympy.primefactors(n):
            nu2 *= 1 + (0 if p == 2 else sympy.legendre_symbol(-1 % p, p))
    if n % 9 == 0:
        nu3 = 0
    else:
        nu3 = 1
        for p in sympy.primefactors(n):
            nu3 *= 1 + (-1 if p == 2 else 0 if p == 3 else sympy.legendre_symbol(-3 % p, p))
    cusps = _cusps(n)
    genus = 1 + Fraction(index, 12) - Fraction(nu2, 4) - Fraction(nu3, 3) - Fraction(len(cusps), 2)
    if genus.denominator != 1:
        raise ArithmeticError(f"genus formula not integral at level {n}")
    g = int(genus)
    # genus 0 and 1 carry no Weierstrass points at infinity; higher genus is
    # decided by the basis builder once generators are known
    flag = True if g <= 1 else None
    return LevelData(n, index, g, cusps, int(nu2), int(nu3), flag)
