"""Exact arithmetic in cyclotomic fields, Dirichlet characters and Gauss sums.

Rationals are plain :class:`fractions.Fraction` values.  Elements of
Q(zeta_n) are :class:`CycNumber` instances holding dense power-basis
coordinates modulo the n-th cyclotomic polynomial.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from functools import lru_cache
from math import gcd, lcm
from numbers import Rational

import sympy

__all__ = [
    "CycNumber",
    "DirichletCharacter",
    "FieldError",
    "as_exact",
    "cyclotomic_poly",
    "dirichlet_characters",
    "euler_phi",
    "gauss_sum",
    "inv_one_minus_cos",
    "is_zero",
    "primitive_characters",
    "zeta",
]


class FieldError(ArithmeticError):
    pass


def euler_phi(n: int) -> int:
    return int(sympy.totient(n))


@lru_cache(maxsize=None)
def cyclotomic_poly(n: int) -> tuple[int, ...]:
    """Integer coefficients of Phi_n, lowest degree first."""
    x = sympy.Symbol("x")
    coeffs = sympy.Poly(sympy.cyclotomic_poly(n, x), x).all_coeffs()
    return tuple(int(c) for c in reversed(coeffs))


def _reduce(poly: list, n: int) -> tuple[Fraction, ...]:
    phi = cyclotomic_poly(n)
    deg = len(phi) - 1
    p = list(poly)
    # Phi_n is monic, so plain long division from the top works
    for top in range(len(p) - 1, deg - 1, -1):
        c = p[top]
        if c:
            shift = top - deg
            for i in range(deg):
                if phi[i]:
                    p[shift + i] -= c * phi[i]
        p[top] = 0
    p = p[:deg] + [0] * (deg - len(p))
    return tuple(Fraction(c) for c in p)


@lru_cache(maxsize=None)
def _power_table(n: int) -> tuple[tuple[Fraction, ...], ...]:
    """Coordinates of zeta_n^k for k = 0..n-1."""
    deg = euler_phi(n)
    rows = []
    for k in range(n):
        if k < deg:
            row = [Fraction(0)] * deg
            row[k] = Fraction(1)
            rows.append(tuple(row))
        else:
            rows.append(_reduce([0] * k + [1], n))
    return tuple(rows)


@lru_cache(maxsize=None)
def _ramanujan_trace(n: int) -> tuple[Fraction, ...]:
    # Tr(zeta_n^k)/phi(n) for k < phi(n)
    deg = euler_phi(n)
    out = []
    for k in range(deg):
        g = gcd(n, k)
        m = n // g
        out.append(Fraction(int(sympy.mobius(m)) * deg, euler_phi(m) * deg))
    return tuple(out)


def _poly_mul(a, b):
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                if y:
                    out[i + j] += x * y
    return out


def _poly_trim(p):
    p = list(p)
    while p and p[-1] == 0:
        p.pop()
    return p


def _poly_divmod(a, b):
    a = _poly_trim(a)
    b = _poly_trim(b)
    if len(a) < len(b):
        return [], a
    q = [Fraction(0)] * (len(a) - len(b) + 1)
    lead = b[-1]
    while len(a) >= len(b) and a:
        c = Fraction(a[-1]) / lead
        s = len(a) - len(b)
        q[s] = c
        for i, y in enumerate(b):
            a[s + i] -= c * y
        a = _poly_trim(a)
    return q, a


class CycNumber:
    """Element of Q(zeta_n) in the power basis 1, zeta, ..., zeta^(phi(n)-1)."""

    __slots__ = ("n", "coords")

    def __init__(self, coords, n: int):
        if n < 1:
            raise ValueError("conductor must be positive")
        coords = list(coords)
        if len(coords) != euler_phi(n):
            coords = list(_reduce(coords, n))
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "coords", tuple(Fraction(c) for c in coords))

    def __setattr__(self, name, value):
        raise AttributeError("CycNumber is immutable")

    # construction helpers

    @classmethod
    def from_rational(cls, r, n: int = 1) -> "CycNumber":
        deg = euler_phi(n)
        return cls([Fraction(r)] + [Fraction(0)] * (deg - 1), n)

    @classmethod
    def zeta_power(cls, k: int, n: int) -> "CycNumber":
        return cls(_power_table(n)[k % n], n)

    # field structure

    def promote(self, m: int) -> "CycNumber":
        """Embed into Q(zeta_m) via zeta_n -> zeta_m^(m/n)."""
        if m % self.n:
            raise FieldError(f"cannot promote conductor {self.n} to {m}")
        if m == self.n:
            return self
        step = m // self.n
        table = _power_table(m)
        acc = [Fraction(0)] * euler_phi(m)
        for i, c in enumerate(self.coords):
            if c:
                row = table[(i * step) % m]
                for j, r in enumerate(row):
                    if r:
                        acc[j] += c * r
        return CycNumber(acc, m)

    def _lift(self, other):
        if isinstance(other, CycNumber):
            m = lcm(self.n, other.n)
            return self.promote(m), other.promote(m)
        if isinstance(other, (int, Rational)):
            return self, CycNumber.from_rational(Fraction(other), self.n)
        return NotImplemented

    def __add__(self, other):
        pair = self._lift(other)
        if pair is NotImplemented:
            return NotImplemented
        a, b = pair
        return CycNumber([x + y for x, y in zip(a.coords, b.coords)], a.n)

    __radd__ = __add__

    def __neg__(self):
        return CycNumber([-x for x in self.coords], self.n)

    def __pos__(self):
        return self

    def __sub__(self, other):
        pair = self._lift(other)
        if pair is NotImplemented:
            return NotImplemented
        a, b = pair
        return CycNumber([x - y for x, y in zip(a.coords, b.coords)], a.n)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Rational)) and not isinstance(other, CycNumber):
            r = Fraction(other)
            return CycNumber([r * x for x in self.coords], self.n)
        pair = self._lift(other)
        if pair is NotImplemented:
            return NotImplemented
        a, b = pair
        return CycNumber(_reduce(_poly_mul(a.coords, b.coords), a.n), a.n)

    __rmul__ = __mul__

    def inverse(self) -> "CycNumber":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero in cyclotomic field")
        # extended Euclid: s*a + t*Phi = 1
        phi = [Fraction(c) for c in cyclotomic_poly(self.n)]
        r0, r1 = phi, _poly_trim(self.coords)
        s0, s1 = [], [Fraction(1)]
        while len(r1) > 1:
            q, r = _poly_divmod(r0, r1)
            s = _poly_sub(s0, _poly_mul(q, s1) if s1 and q else [])
            r0, r1, s0, s1 = r1, r, s1, s
        c = r1[0]
        return CycNumber(_reduce([x / c for x in s1], self.n), self.n)

    def __truediv__(self, other):
        if isinstance(other, CycNumber):
            return self * other.inverse()
        if isinstance(other, (int, Rational)):
            if other == 0:
                raise ZeroDivisionError("division by zero")
            return self * (1 / Fraction(other))
        return NotImplemented

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.inverse() ** (-k)
        out = CycNumber.from_rational(1, self.n)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def conj(self) -> "CycNumber":
        """The ring map zeta -> zeta^-1 (complex conjugation)."""
        table = _power_table(self.n)
        acc = [Fraction(0)] * len(self.coords)
        for i, c in enumerate(self.coords):
            if c:
                for j, r in enumerate(table[(-i) % self.n]):
                    if r:
                        acc[j] += c * r
        return CycNumber(acc, self.n)

    def conjugate(self) -> "CycNumber":
        return self.conj()

    # predicates and conversions

    def is_zero(self) -> bool:
        return not any(self.coords)

    def is_rational(self) -> bool:
        return not any(self.coords[1:])

    def to_rational(self) -> Fraction:
        if not self.is_rational():
            raise FieldError("element is not rational")
        return self.coords[0]

    def simplify(self):
        """Return a Fraction when the value is rational, else self."""
        return self.coords[0] if self.is_rational() else self

    def __complex__(self) -> complex:
        import cmath

        w = cmath.exp(2j * cmath.pi / self.n)
        return complex(sum(float(c) * w**i for i, c in enumerate(self.coords)))

    def to_complex(self) -> complex:
        return complex(self)

    def __eq__(self, other):
        if isinstance(other, CycNumber):
            a, b = self._lift(other)
            return a.coords == b.coords
        if isinstance(other, (int, Rational)):
            return self.is_rational() and self.coords[0] == other
        return NotImplemented

    def __hash__(self):
        # normalized trace: agrees with Fraction hashing on rationals and
        # is invariant under promotion
        tr = sum((c * t for c, t in zip(self.coords, _ramanujan_trace(self.n))), Fraction(0))
        return hash(tr) if not self.is_rational() else hash(self.coords[0])

    def __bool__(self):
        return not self.is_zero()

    def serialize(self) -> str:
        return "[" + ",".join(str(c) for c in self.coords) + f"]@{self.n}"

    @classmethod
    def parse(cls, text: str) -> "CycNumber":
        body, _, n = text.strip().rpartition("@")
        items = [s for s in body.strip()[1:-1].split(",") if s.strip()]
        return cls([Fraction(s.strip()) for s in items], int(n))

    def __str__(self):
        return self.serialize()

    def __repr__(self):
        terms = []
        for i, c in enumerate(self.coords):
            if c:
                mono = "1" if i == 0 else (f"z{self.n}" if i == 1 else f"z{self.n}^{i}")
                terms.append(f"({c})*{mono}" if i else f"{c}")
        return "CycNumber(" + (" + ".join(terms) or "0") + ")"


def _poly_sub(a, b):
    n = max(len(a), len(b))
    a = list(a) + [Fraction(0)] * (n - len(a))
    b = list(b) + [Fraction(0)] * (n - len(b))
    return _poly_trim([x - y for x, y in zip(a, b)])


def zeta(n: int, k: int = 1) -> CycNumber:
    return CycNumber.zeta_power(k, n)


def as_exact(x):
    """Normalize a scalar: ints become Fractions, rational CycNumbers demote."""
    if isinstance(x, CycNumber):
        return x.simplify()
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, Rational)):
        return Fraction(x)
    raise TypeError(f"not an exact scalar: {x!r}")


def is_zero(x) -> bool:
    return x.is_zero() if isinstance(x, CycNumber) else x == 0


# Dirichlet characters


def _unit_generators(u: int) -> list[tuple[int, int]]:
    """Generators of (Z/u)* as (generator mod u, order), one per cyclic factor."""
    gens = []
    for p, e in sorted(sympy.factorint(u).items()):
        pe = p**e
        rest = u // pe
        local = []
        if p == 2:
            if e >= 2:
                local.append((pe - 1, 2))
            if e >= 3:
                local.append((5, pe // 4))
        else:
            local.append((int(sympy.primitive_root(pe)), pe - pe // p))
        for g, order in local:
            # CRT lift: g mod p^e, 1 mod the cofactor
            x = sympy.ntheory.modular.crt([pe, rest], [g, 1])[0] if rest > 1 else g
            gens.append((int(x) % u, order))
    return gens


class DirichletCharacter:
    """Dirichlet character mod u with values zeta_order^exps[n]."""

    __slots__ = ("modulus", "order", "exps")

    def __init__(self, modulus: int, order: int, exps):
        exps = tuple(None if e is None else e % order for e in exps)
        if len(exps) != modulus:
            raise ValueError("value table must have one entry per residue")
        # shrink to the true order
        g = order
        for e in exps:
            if e is not None:
                g = gcd(g, e)
        if g > 1 and order > 1:
            order //= g
            exps = tuple(None if e is None else e // g for e in exps)
        self.modulus = modulus
        self.order = order
        self.exps = exps

    def __call__(self, n: int):
        e = self.exps[n % self.modulus]
        if e is None:
            return Fraction(0)
        return CycNumber.zeta_power(e, self.order).simplify()

    def value(self, n: int):
        return self(n)

    def is_trivial(self) -> bool:
        return self.order == 1

    def conj(self) -> "DirichletCharacter":
        return DirichletCharacter(self.modulus, self.order, [None if e is None else -e for e in self.exps])

    def conductor(self) -> int:
        u = self.modulus
        for d in sorted(sympy.divisors(u)):
            if all(self.exps[n] == 0 for n in range(u) if self.exps[n] is not None and n % d == 1 % d):
                return d
        return u

    def is_primitive(self) -> bool:
        return self.conductor() == self.modulus

    def is_even(self) -> bool:
        return self.exps[(-1) % self.modulus] == 0

    def __eq__(self, other):
        return (
            isinstance(other, DirichletCharacter)
            and self.modulus == other.modulus
            and self.order == other.order
            and self.exps == other.exps
        )

    def __hash__(self):
        return hash((self.modulus, self.order, self.exps))

    def __repr__(self):
        vals = {n: self.exps[n] for n in range(self.modulus) if self.exps[n] is not None}
        return f"DirichletCharacter(mod {self.modulus}, order {self.order}, exps={vals})"


@lru_cache(maxsize=None)
def dirichlet_characters(u: int) -> tuple[DirichletCharacter, ...]:
    """All characters mod u in a fixed deterministic order."""
    if u == 1:
        return (DirichletCharacter(1, 1, [0]),)
    gens = _unit_generators(u)
    lam = 1
    for _, o in gens:
        lam = lcm(lam, o)
    # discrete logs of every unit in terms of the generators
    logs: dict[int, tuple[int, ...]] = {}
    for ks in itertools.product(*[range(o) for _, o in gens]):
        x = 1
        for (g, _), k in zip(gens, ks):
            x = x * pow(g, k, u) % u
        logs[x] = ks
    out = []
    for js in itertools.product(*[range(o) for _, o in gens]):
        exps = [None] * u
        for x, ks in logs.items():
            exps[x] = sum(j * k * (lam // o) for j, k, (_, o) in zip(js, ks, gens)) % lam
        out.append(DirichletCharacter(u, lam, exps))
    return tuple(out)


def primitive_characters(u: int) -> list[DirichletCharacter]:
    """Primitive characters of conductor u; the trivial one only for u=1."""
    return [chi for chi in dirichlet_characters(u) if chi.is_primitive()]


def gauss_sum(chi: DirichletCharacter) -> CycNumber:
    if not chi.is_primitive():
        raise FieldError("Gauss sum requested for a non-primitive character")
    u = chi.modulus
    m = lcm(u, chi.order)
    total = CycNumber.from_rational(0, m)
    for n in range(u):
        e = chi.exps[n]
        if e is None:
            continue
        total = total + CycNumber.zeta_power(e * (m // chi.order) + n * (m // u), m)
    return total


def inv_one_minus_cos(d: int, u: int) -> CycNumber:
    """2/((1-zeta_u^d)(1-zeta_u^-d)), i.e. 1/(1-cos(2 pi d/u)) exactly."""
    if d % u == 0:
        raise FieldError("1 - cos vanishes when u divides d")
    one = CycNumber.from_rational(1, u)
    denom = (one - CycNumber.zeta_power(d, u)) * (one - CycNumber.zeta_power(-d, u))
    return denom.inverse() * 2
