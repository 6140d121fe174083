"""Truncated Laurent q-expansions with exact coefficients.

A :class:`QSeries` lives in powers of ``q^(1/M)``.  Internally exponents are
stored in units of ``1/M``: the coefficient list starts at ``low`` and stops
just before ``prec`` (exclusive), so the series is known modulo
``O(q^(prec/M))``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import gcd, lcm
from numbers import Rational

import sympy

from . import kernels
from .exactfield import CycNumber, DirichletCharacter, as_exact, is_zero

__all__ = [
    "EtaQuotient",
    "PrecisionError",
    "QSeries",
    "char_eisenstein_q",
    "delta",
    "eisenstein_series",
    "eta_expand",
    "euler_product_series",
    "j_function",
    "rescale",
    "sigma",
    "theta_op",
]


class PrecisionError(ValueError):
    """A requested coefficient or operation exceeds the known precision."""


def _is_scalar(x) -> bool:
    return isinstance(x, (int, Rational, CycNumber))


def _frac_exp(e) -> Fraction:
    if isinstance(e, float):
        raise TypeError("exponents must be exact")
    return Fraction(e)


class QSeries:
    __slots__ = ("coeffs", "low", "prec", "denom")

    def __init__(self, coeffs, low: int = 0, prec: int | None = None, denom: int = 1):
        cs = [as_exact(c) for c in coeffs]
        if prec is None:
            prec = low + len(cs)
        if denom < 1:
            raise ValueError("denominator must be positive")
        if prec <= low:
            # nothing known: keep a single zero slot just below prec
            cs, low = [Fraction(0)], prec - 1
        n = prec - low
        if len(cs) < n:
            cs = cs + [Fraction(0)] * (n - len(cs))
        elif len(cs) > n:
            cs = cs[:n]
        # strip leading zeros but always keep one slot
        k = 0
        while k < n - 1 and is_zero(cs[k]):
            k += 1
        self.coeffs = tuple(cs[k:])
        self.low = low + k
        self.prec = prec
        self.denom = denom

    # constructors

    @classmethod
    def from_dict(cls, terms: dict, prec, denom: int | None = None) -> "QSeries":
        """Build from {exponent: coefficient}; exponents may be rationals."""
        exps = [_frac_exp(e) for e in terms] + [_frac_exp(prec)]
        if denom is None:
            denom = 1
            for e in exps:
                denom = lcm(denom, e.denominator)
        p = _frac_exp(prec) * denom
        if p.denominator != 1:
            raise ValueError("precision not representable with this denominator")
        p = int(p)
        idx = {}
        for e, c in terms.items():
            i = _frac_exp(e) * denom
            if i.denominator != 1:
                raise ValueError("exponent not representable with this denominator")
            if int(i) < p:
                idx[int(i)] = idx.get(int(i), 0) + c
        low = min(idx, default=p - 1)
        low = min(low, p - 1)
        cs = [idx.get(i, 0) for i in range(low, p)]
        return cls(cs, low, p, denom)

    @classmethod
    def constant(cls, c, prec: int) -> "QSeries":
        return cls.from_dict({0: c}, prec)

    @classmethod
    def one(cls, prec: int) -> "QSeries":
        return cls.constant(1, prec)

    @classmethod
    def monomial(cls, e, prec, c=1) -> "QSeries":
        return cls.from_dict({e: c}, prec)

    @classmethod
    def zero(cls, prec, denom: int = 1) -> "QSeries":
        p = int(_frac_exp(prec) * denom)
        return cls([Fraction(0)], p - 1, p, denom)

    # basic accessors

    @property
    def precision(self) -> Fraction:
        """Exclusive truncation bound as an exponent of q."""
        return Fraction(self.prec, self.denom)

    def is_zero(self) -> bool:
        return all(is_zero(c) for c in self.coeffs)

    def valuation(self) -> Fraction | None:
        if self.is_zero():
            return None
        return Fraction(self.low, self.denom)

    def leading_coefficient(self):
        if self.is_zero():
            raise PrecisionError("series is zero to the known precision")
        return self.coeffs[0]

    def is_integral(self) -> bool:
        """True when every exponent is an integer (denominator 1 after reduction)."""
        return self.normalized().denom == 1

    def coeff(self, e):
        """Coefficient of q^e (e may be a rational exponent)."""
        i = _frac_exp(e) * self.denom
        if i.denominator != 1:
            return Fraction(0)
        i = int(i)
        if i >= self.prec:
            raise PrecisionError(f"coefficient of q^{e} beyond precision {self.precision}")
        if i < self.low:
            return Fraction(0)
        return self.coeffs[i - self.low]

    __getitem__ = coeff

    def items(self):
        """Nonzero (exponent, coefficient) pairs in increasing order."""
        for k, c in enumerate(self.coeffs):
            if not is_zero(c):
                yield Fraction(self.low + k, self.denom), c

    def coefficient_list(self, start: int, stop: int) -> list:
        """Coefficients at integer exponents start..stop-1 (requires denom 1)."""
        return [self.coeff(n) for n in range(start, stop)]

    def is_rational(self) -> bool:
        return all(not isinstance(c, CycNumber) for c in self.coeffs)

    # denominator handling

    def with_denom(self, m: int) -> "QSeries":
        if m % self.denom:
            raise ValueError(f"denominator {m} is not a multiple of {self.denom}")
        k = m // self.denom
        if k == 1:
            return self
        cs = [Fraction(0)] * ((self.prec - self.low) * k)
        for i, c in enumerate(self.coeffs):
            cs[i * k] = c
        return QSeries(cs, self.low * k, self.prec * k, m)

    def normalized(self) -> "QSeries":
        """Reduce the denominator as far as the nonzero exponents allow."""
        if self.denom == 1:
            return self
        g = self.denom
        for k, c in enumerate(self.coeffs):
            if not is_zero(c):
                g = gcd(g, self.low + k)
        if g == 1:
            return self
        if self.is_zero():
            g = gcd(g, self.prec)
            if g == 1:
                return self
        prec = self.prec // g  # rounding down only forgets unknown terms
        terms = {}
        for k, c in enumerate(self.coeffs):
            if not is_zero(c):
                terms[(self.low + k) // g] = c
        low = min(terms, default=prec - 1)
        return QSeries([terms.get(i, 0) for i in range(low, prec)], low, prec, self.denom // g)

    def _align(self, other: "QSeries"):
        m = lcm(self.denom, other.denom)
        return self.with_denom(m), other.with_denom(m)

    # arithmetic

    def __add__(self, other):
        if _is_scalar(other):
            if self.prec <= 0:
                return self
            return self + QSeries.from_dict({0: other}, self.precision, self.denom)
        if not isinstance(other, QSeries):
            return NotImplemented
        a, b = self._align(other)
        low = min(a.low, b.low)
        prec = min(a.prec, b.prec)
        cs = [Fraction(0)] * max(prec - low, 0)
        for src in (a, b):
            for k, c in enumerate(src.coeffs):
                i = src.low + k - low
                if 0 <= i < len(cs):
                    cs[i] = cs[i] + c
        return QSeries(cs, low, prec, a.denom).normalized()

    __radd__ = __add__

    def __neg__(self):
        return QSeries([-c for c in self.coeffs], self.low, self.prec, self.denom)

    def __pos__(self):
        return self

    def __sub__(self, other):
        if _is_scalar(other):
            return self + (-other)
        if not isinstance(other, QSeries):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c) -> "QSeries":
        c = as_exact(c)
        return QSeries([c * x for x in self.coeffs], self.low, self.prec, self.denom)

    def __mul__(self, other):
        if _is_scalar(other):
            return self.scale(other)
        if not isinstance(other, QSeries):
            return NotImplemented
        a, b = self._align(other)
        low = a.low + b.low
        n = min(a.prec - a.low, b.prec - b.low)
        prec = low + n
        cs = _convolve(list(a.coeffs), list(b.coeffs), n)
        return QSeries(cs, low, prec, a.denom).normalized()

    __rmul__ = __mul__

    def invert(self) -> "QSeries":
        if self.is_zero():
            raise ZeroDivisionError("cannot invert a series that is zero to precision")
        n = self.prec - self.low
        cs = _reciprocal(list(self.coeffs), n)
        return QSeries(cs, -self.low, -self.low + n, self.denom)

    def __truediv__(self, other):
        if _is_scalar(other):
            return self.scale(1 / as_exact(other) if not isinstance(other, CycNumber) else other.inverse())
        if not isinstance(other, QSeries):
            return NotImplemented
        return self * other.invert()

    def __rtruediv__(self, other):
        if _is_scalar(other):
            return self.invert().scale(other)
        return NotImplemented

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.invert() ** (-k)
        result = None
        base = self
        while k:
            if k & 1:
                result = base if result is None else result * base
            k >>= 1
            if k:
                base = base * base
        if result is None:
            prec = self.precision - self.valuation() if not self.is_zero() else self.precision
            return QSeries.one(prec)
        return result

    def shift(self, e) -> "QSeries":
        """Multiply by q^e."""
        e = _frac_exp(e)
        m = lcm(self.denom, e.denominator)
        s = self.with_denom(m)
        k = int(e * m)
        return QSeries(s.coeffs, s.low + k, s.prec + k, m).normalized()

    def truncate(self, prec) -> "QSeries":
        p = _frac_exp(prec) * self.denom
        p = min(int(p) if p.denominator == 1 else int(p) + 1, self.prec)
        return QSeries(self.coeffs, self.low, p, self.denom)

    def rescale(self, s: int) -> "QSeries":
        """Substitute q -> q^s."""
        if s < 1:
            raise ValueError("rescale factor must be a positive integer")
        if s == 1:
            return self
        cs = [Fraction(0)] * ((self.prec - self.low) * s)
        for k, c in enumerate(self.coeffs):
            cs[k * s] = c
        return QSeries(cs, self.low * s, self.prec * s, self.denom)

    def theta(self) -> "QSeries":
        """q d/dq."""
        return QSeries(
            [Fraction(self.low + k, self.denom) * c for k, c in enumerate(self.coeffs)],
            self.low,
            self.prec,
            self.denom,
        )

    def principal_part(self) -> dict:
        return {e: c for e, c in self.items() if e < 0}

    def conj(self) -> "QSeries":
        return QSeries(
            [c.conj() if isinstance(c, CycNumber) else c for c in self.coeffs],
            self.low,
            self.prec,
            self.denom,
        )

    # comparison

    def __eq__(self, other):
        if not isinstance(other, QSeries):
            return NotImplemented
        a, b = self.normalized(), other.normalized()
        return (a.denom, a.low, a.prec, a.coeffs) == (b.denom, b.low, b.prec, b.coeffs) or (
            a.is_zero() and b.is_zero() and a.precision == b.precision
        )

    __hash__ = None

    def agrees_with(self, other: "QSeries", upto=None) -> bool:
        """Coefficient-wise equality below the common (or given) precision."""
        a, b = self._align(other)
        p = min(a.prec, b.prec)
        if upto is not None:
            p = min(p, int(_frac_exp(upto) * a.denom))
        lo = min(a.low, b.low)
        for i in range(lo, p):
            e = Fraction(i, a.denom)
            if a.coeff(e) != b.coeff(e):
                return False
        return True

    # text forms

    def __repr__(self):
        terms = []
        for e, c in self.items():
            if len(terms) >= 12:
                terms.append("...")
                break
            terms.append(_term(c, e))
        body = " + ".join(terms) if terms else "0"
        return f"{body} + O(q^{_exp_str(self.precision)})".replace("+ -", "- ")

    def to_text(self) -> str:
        """Line format ``exponent<TAB>coefficient`` with a leading precision line."""
        lines = [f"#prec\t{_exp_str(self.precision)}"]
        for e, c in self.items():
            lines.append(f"{_exp_str(e)}\t{_scalar_str(c)}")
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "QSeries":
        prec = None
        terms = {}
        for line in text.splitlines():
            line = line.strip()
            if not line:
                continue
            head, _, value = line.partition("\t")
            if not value:
                head, _, value = line.partition(" ")
            if head == "#prec":
                prec = Fraction(value.strip())
                continue
            if head.startswith("#"):
                continue
            terms[Fraction(head)] = parse_scalar(value.strip())
        if prec is None:
            raise ValueError("series text lacks a #prec line")
        return cls.from_dict(terms, prec)


def _exp_str(e: Fraction) -> str:
    return str(Fraction(e))


def _scalar_str(c) -> str:
    return c.serialize() if isinstance(c, CycNumber) else str(c)


def parse_scalar(text: str):
    text = text.strip()
    if "@" in text:
        return CycNumber.parse(text).simplify()
    return Fraction(text)


def _term(c, e):
    if e == 0:
        return str(c) if not isinstance(c, CycNumber) else repr(c)
    mono = "q" if e == 1 else f"q^{_exp_str(e)}"
    if isinstance(c, CycNumber):
        return f"{c!r}*{mono}"
    if c == 1:
        return mono
    if c == -1:
        return "-" + mono
    return f"{c}*{mono}"


def _common_denominator(xs) -> int:
    d = 1
    for x in xs:
        d = lcm(d, x.denominator)
    return d


def _convolve(a: list, b: list, n: int) -> list:
    if all(isinstance(x, Fraction) for x in a) and all(isinstance(x, Fraction) for x in b):
        da, db = _common_denominator(a), _common_denominator(b)
        ia = [int(x * da) for x in a]
        ib = [int(x * db) for x in b]
        out = kernels.conv_int(ia, ib, n)
        d = da * db
        return [Fraction(c, d) for c in out]
    return kernels.conv(a, b, n)


def _reciprocal(a: list, n: int) -> list:
    lead = a[0]
    if all(isinstance(x, Fraction) and x.denominator == 1 for x in a) and lead in (1, -1):
        out = kernels.recip([int(x) for x in a], n)
        return [Fraction(c) for c in out]
    if all(isinstance(x, Fraction) for x in a):
        # scale to integers: a = (1/d) * ia, so 1/a = d * (1/ia)
        d = _common_denominator(a)
        ia = [int(x * d) for x in a]
        if ia[0] in (1, -1):
            return [Fraction(c * d) for c in kernels.recip(ia, n)]
    return kernels.recip(a, n)


# building blocks


def sigma(k: int, n: int) -> int:
    return int(sympy.divisor_sigma(n, k))


@lru_cache(maxsize=None)
def _bernoulli(k: int) -> Fraction:
    b = sympy.bernoulli(k)
    return Fraction(int(b.p), int(b.q))


def eisenstein_series(k: int, prec: int) -> QSeries:
    """E_k = 1 - (2k/B_k) sum sigma_{k-1}(n) q^n for even k >= 2."""
    if k < 2 or k % 2:
        raise ValueError("Eisenstein series need an even weight k >= 2")
    factor = -Fraction(2 * k) / _bernoulli(k)
    cs = [Fraction(1)] + [factor * sigma(k - 1, n) for n in range(1, prec)]
    return QSeries(cs, 0, prec)


def euler_product_series(exponents: dict, prec: int) -> QSeries:
    """prod_{n>=1} (1 - q^n)^{c(n)} for a finitely supported or callable c."""
    n = max(int(prec), 1)
    s = [0] * n
    items = exponents.items() if isinstance(exponents, dict) else ((u, exponents(u)) for u in range(1, n))
    integral = True
    for u, c in items:
        if not c or u >= n:
            continue
        c = as_exact(c)
        if isinstance(c, Fraction) and c.denominator != 1:
            integral = False
        elif isinstance(c, Fraction):
            c = int(c)
        else:
            integral = False
        for k in range(u, n, u):
            s[k] = s[k] + u * c
    if not integral:
        s = [as_exact(x) for x in s]
    cs = kernels.euler_product(s, n)
    return QSeries(cs, 0, int(prec))


@dataclass(frozen=True)
class EtaQuotient:
    """prod_d eta(d tau)^{r_d} (classical) or prod_a eta_a(tau)^{r_a} (generalized).

    Generalized eta functions follow the level-N product
    eta_a = q^{N B(a/N)/2} prod_{m>=1} (1 - q^{(m-1)N+a})(1 - q^{mN-a})
    with B(x) = x^2 - x + 1/6.
    """

    level: int
    exponents: dict = field(default_factory=dict)
    kind: str = "classical"

    def __post_init__(self):
        ex = {int(k): int(v) for k, v in dict(self.exponents).items() if int(v) != 0}
        object.__setattr__(self, "exponents", ex)
        if self.kind not in ("classical", "generalized"):
            raise ValueError(f"unknown eta quotient kind {self.kind!r}")
        if self.kind == "classical":
            for d in ex:
                if d < 1 or self.level % d:
                    raise ValueError(f"eta factor {d} does not divide the level {self.level}")
        else:
            for a in ex:
                if a % self.level == 0:
                    raise ValueError(f"generalized eta index {a} is divisible by the level")

    def __hash__(self):
        return hash((self.level, tuple(sorted(self.exponents.items())), self.kind))

    def weight(self) -> Fraction:
        if self.kind == "generalized":
            return Fraction(0)
        return Fraction(sum(self.exponents.values()), 2)

    def leading_exponent(self) -> Fraction:
        if self.kind == "classical":
            return Fraction(sum(d * r for d, r in self.exponents.items()), 24)
        n = self.level
        tot = Fraction(0)
        for a, r in self.exponents.items():
            a0 = a % n
            x = Fraction(a0, n)
            tot += r * n * (x * x - x + Fraction(1, 6)) / 2
        return tot

    def sign(self) -> int:
        if self.kind == "classical":
            return 1
        s = 1
        for a, r in self.exponents.items():
            shifts = (a - a % self.level) // self.level
            if shifts % 2 and r % 2:
                s = -s
        return s

    def product_exponents(self, bound: int) -> dict:
        """c(e) with prod (1-q^e)^{c(e)} the product part, for e < bound."""
        c: dict[int, int] = {}
        if self.kind == "classical":
            for d, r in self.exponents.items():
                for e in range(d, bound, d):
                    c[e] = c.get(e, 0) + r
        else:
            n = self.level
            for a, r in self.exponents.items():
                a0 = a % n
                for start in (a0, n - a0):
                    for e in range(start, bound, n):
                        c[e] = c.get(e, 0) + r
        return c

    def is_modular(self) -> bool:
        """Newman-Ligozat conditions for a classical quotient on Gamma0(N) with trivial character."""
        if self.kind != "classical":
            raise ValueError("use check_yang_conditions for generalized quotients")
        n = self.level
        ex = self.exponents
        if sum(d * r for d, r in ex.items()) % 24:
            return False
        if sum((n // d) * r for d, r in ex.items()) % 24:
            return False
        k = sum(ex.values())
        if k % 2:
            return False
        prod = Fraction(1)
        for d, r in ex.items():
            prod *= Fraction(d) ** r
        sq = -prod if (k // 2) % 2 else prod
        return sq > 0 and sympy.sqrt(sympy.Rational(sq.numerator, sq.denominator)).is_rational


def eta_expand(spec: EtaQuotient, prec) -> QSeries:
    """Exact expansion of an eta quotient, known modulo O(q^prec)."""
    lead = spec.leading_exponent()
    prec = _frac_exp(prec)
    # terms of the product needed: exponents below prec - lead
    span = prec - lead
    n = int(span) if span.denominator == 1 else int(span) + 1
    n = max(n, 1)
    body = euler_product_series(spec.product_exponents(n), n)
    if spec.sign() < 0:
        body = -body
    return body.shift(lead)


def rescale(f: QSeries, s: int) -> QSeries:
    return f.rescale(s)


def theta_op(f: QSeries) -> QSeries:
    return f.theta()


def delta(prec: int) -> QSeries:
    return eta_expand(EtaQuotient(1, {1: 24}), prec)


def j_function(prec: int) -> QSeries:
    """j = E4^3 / Delta, known modulo O(q^prec)."""
    e4 = eisenstein_series(4, prec + 2)
    return ((e4**3) * delta(prec + 2).invert()).truncate(prec)


def char_eisenstein_q(chi: DirichletCharacter, prec: int) -> QSeries:
    """sum_{n>=1} (sum_{d|n} d chi(n/d) conj(chi)(d)) q^n, constant term 0."""
    if chi.is_trivial():
        raise ValueError("character Eisenstein series need a nontrivial character")
    if not chi.is_primitive():
        raise ValueError("character must be primitive")
    cb = chi.conj()
    vals = [chi(i) for i in range(chi.modulus)]
    bvals = [cb(i) for i in range(chi.modulus)]
    u = chi.modulus
    cs = [Fraction(0)] * prec
    for n in range(1, prec):
        acc = Fraction(0)
        for d in sympy.divisors(n):
            a, b = vals[(n // d) % u], bvals[d % u]
            if not is_zero(a) and not is_zero(b):
                acc = acc + d * (a * b)
        cs[n] = acc
    return QSeries(cs, 0, prec)
