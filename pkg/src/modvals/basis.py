"""Echelon bases of weakly holomorphic modular functions with poles only at infinity.

For a level N of genus g (with infinity not a Weierstrass point) the basis
element f_m, m >= g+1, has the shape

    q^-m + sum_{l=1}^{g} a(m,-l) q^-l + O(q),

zero constant term and no other principal-part terms.  Generators come from
configuration data: classical eta quotients, traces of generalized eta
quotients over an orbit, the Weierstrass parametrization of an elliptic
curve, or explicit seed series.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction

from .exactfield import CycNumber, as_exact, is_zero
from .modcurve import LevelData, level_data
from .qseries import (
    EtaQuotient,
    PrecisionError,
    QSeries,
    eta_expand,
    j_function,
)

__all__ = [
    "BasisError",
    "BasisFamily",
    "Expansion",
    "GeneratorSpec",
    "build_basis",
    "check_yang_conditions",
    "dual_family",
    "expand_in_basis",
    "exponent_search",
    "generator_series",
    "hecke_J",
    "orbit_trace",
    "weierstrass_parametrization",
]


class BasisError(ValueError):
    pass


@dataclass(frozen=True)
class GeneratorSpec:
    """One generator of the function field, as read from a level config.

    ``kind`` is one of ``eta``, ``trace``, ``j``, ``weierstrass_x``,
    ``weierstrass_y`` or ``seed``.
    """

    kind: str
    exponents: dict = field(default_factory=dict)
    eta_kind: str = "classical"
    constant: Fraction = Fraction(0)
    orbit: tuple = ()
    multipliers: tuple = ()
    cusp_orders: tuple = ()
    seed: QSeries | None = None
    ainvs: tuple = ()
    newform: dict = field(default_factory=dict)
    provenance: str = ""
    name: str = ""

    def __hash__(self):
        return hash((self.kind, self.name, tuple(sorted(self.exponents.items()))))

    @classmethod
    def from_config(cls, data: dict) -> "GeneratorSpec":
        kind = data["kind"]
        ex = {int(k): int(v) for k, v in data.get("exponents", {}).items()}
        orbit = tuple({int(k): int(v) for k, v in m.items()} for m in data.get("orbit", []))
        mult = tuple(_parse_multiplier(x) for x in data.get("multipliers", []))
        seed = None
        if "seed_series" in data:
            s = data["seed_series"]
            if isinstance(s, str):
                seed = QSeries.from_text(s)
            else:
                terms = {Fraction(k): Fraction(v) for k, v in s["terms"].items()}
                seed = QSeries.from_dict(terms, Fraction(s["prec"]))
        return cls(
            kind=kind,
            exponents=ex,
            eta_kind=data.get("eta_kind", "classical"),
            constant=Fraction(str(data.get("constant", 0))),
            orbit=orbit,
            multipliers=mult,
            cusp_orders=tuple(tuple(r) for r in data.get("cusp_orders", [])),
            seed=seed,
            ainvs=tuple(int(a) for a in data.get("ainvs", [])),
            newform={int(k): int(v) for k, v in data.get("newform", {}).items()},
            provenance=data.get("provenance", ""),
            name=data.get("name", ""),
        )


def _parse_multiplier(x):
    if isinstance(x, (int, float)) and not isinstance(x, bool):
        return Fraction(x)
    if isinstance(x, str) and "@" in x:
        return CycNumber.parse(x).simplify()
    return Fraction(str(x))


# generalized eta quotients


def check_yang_conditions(r: dict, n: int) -> tuple[bool, dict]:
    """Congruence conditions for a product of generalized eta functions on Gamma1(N).

    Returns (ok, diagnostics) where diagnostics holds the three sums.
    """
    for a in r:
        if a % n == 0:
            raise ValueError(f"index {a} is divisible by the level")
    s0 = sum(r.values())
    s1 = sum(a * x for a, x in r.items())
    s2 = sum(a * a * x for a, x in r.items())
    diag = {
        "sum_r": s0,
        "sum_a_r": s1,
        "sum_a2_r": s2,
        "sum_r_mod_12": s0 % 12 == 0,
        "sum_a_r_even": s1 % 2 == 0,
        "sum_a2_r_mod_2N": s2 % (2 * n) == 0,
    }
    ok = diag["sum_r_mod_12"] and diag["sum_a_r_even"] and diag["sum_a2_r_mod_2N"]
    return ok, diag


def exponent_search(order_table, target: int, bound_box=(0, 3), marked: int = 0) -> tuple[int, ...]:
    """Bounded exhaustive search for exponents x with a pole of order target.

    ``order_table[i][j]`` is the order of function i at cusp j.  Requires
    sum_i x_i T[i][marked] == -target and sum_i x_i T[i][j] >= -target for
    the other cusps.  Returns the lexicographically smallest solution.
    """
    rows = [list(r) for r in order_table]
    if not rows:
        raise BasisError("empty order table")
    ncols = len(rows[0])
    lo, hi = bound_box
    for x in itertools.product(range(lo, hi + 1), repeat=len(rows)):
        cols = [sum(xi * row[j] for xi, row in zip(x, rows)) for j in range(ncols)]
        if cols[marked] != -target:
            continue
        if all(cols[j] >= -target for j in range(ncols) if j != marked):
            return tuple(x)
    raise BasisError(f"no exponent vector with pole order {target} in box {bound_box}")


def orbit_trace(spec: GeneratorSpec, n: int, prec) -> QSeries:
    """Sum of the orbit members' expansions, each times its multiplier."""
    if not spec.orbit:
        raise BasisError("orbit trace needs at least one member")
    mult = spec.multipliers or (Fraction(1),) * len(spec.orbit)
    if len(mult) != len(spec.orbit):
        raise BasisError("one multiplier per orbit member is required")
    total = None
    for member, c in zip(spec.orbit, mult):
        ok, diag = check_yang_conditions(member, n)
        if not ok:
            raise BasisError(f"orbit member fails the generalized eta conditions: {diag}")
        s = eta_expand(EtaQuotient(n, member, "generalized"), prec)
        if not s.is_integral():
            raise BasisError("orbit member has non-integral exponents")
        s = s.scale(c)
        total = s if total is None else total + s
    if not total.is_rational():
        raise BasisError("orbit trace has irrational coefficients")
    return total


# elliptic curve parametrization


def _exact_div(a, b):
    if isinstance(a, int) and a % b == 0:
        return a // b
    q = Fraction(a, b) if isinstance(a, int) else a / b
    return q.numerator if q.denominator == 1 else q


def _demote(c):
    c = as_exact(c)
    return int(c) if isinstance(c, Fraction) and c.denominator == 1 else c


_WEIERSTRASS_CACHE: dict = {}


def weierstrass_parametrization(ainvs, newform: QSeries, prec: int) -> tuple[QSeries, QSeries]:
    """Series x, y with x = q^-2 + ..., solving the Weierstrass equation.

    ``newform`` is the weight-2 newform q + ... attached to the curve
    y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6; the invariant differential
    pulls back to it, so q dx/dq = f (2y + a1 x + a3).  Returns x known to
    O(q^prec) and y known to O(q^(prec-1)).
    """
    key = (tuple(Fraction(a) for a in ainvs), newform.to_text())
    hit = _WEIERSTRASS_CACHE.get(key)
    if hit is not None and hit[0].prec >= prec:
        return hit[0].truncate(prec), hit[1].truncate(prec - 1)
    a1, a2, a3, a4, a6 = (_demote(a) for a in ainvs)
    if newform.valuation() != 1 or newform.coeff(1) != 1:
        raise BasisError("newform must start with q")
    unit = newform.shift(-1)
    pinv_s = unit.invert()
    need = prec + 4
    if pinv_s.prec < need:
        raise PrecisionError("newform precision too low for the requested parametrization")
    pinv = [_demote(pinv_s.coeff(i)) for i in range(need)]

    X = {-2: 1}
    Y: dict[int, object] = {}
    X2: dict[int, object] = {-4: 1}

    def x(i):
        return X.get(i, 0)

    def y_full(j):
        acc = 0
        for k in range(-2, j + 2):
            xk = X.get(k)
            if xk:
                acc += k * xk * pinv[j + 1 - k]
        val = acc - a1 * x(j)
        if j == 0:
            val -= a3
        return _exact_div(val, 2)

    def x2_full(m):
        return sum(x(i) * x(m - i) for i in range(-2, m + 3))

    Y[-3] = y_full(-3)
    for n in range(-1, prec):
        e = n - 4
        # provisional entries with X[n] = 0
        Y[n - 1] = y_full(n - 1)
        X2[n - 2] = x2_full(n - 2)
        yy = sum(Y[i] * Y[e - i] for i in range(-3, e + 4) if e - i in Y)
        xy = sum(x(i) * Y[e - i] for i in range(-2, e + 4) if e - i in Y)
        xxx = sum(x(i) * X2[e - i] for i in range(-2, e + 5) if e - i in X2)
        xx = X2.get(e, 0) if e >= -4 else 0
        r0 = yy + a1 * xy + a3 * Y.get(e, 0) - xxx - a2 * xx - a4 * x(e) - (a6 if e == 0 else 0)
        X[n] = _exact_div(r0, n + 3)
        Y[n - 1] = y_full(n - 1)
        X2[n - 2] = x2_full(n - 2)
    xs = QSeries([Fraction(x(i)) for i in range(-2, prec)], -2, prec)
    ys = QSeries([Fraction(y_full(j)) for j in range(-3, prec - 1)], -3, prec - 1)
    _WEIERSTRASS_CACHE[key] = (xs, ys)
    return xs, ys


# generators


def generator_series(spec: GeneratorSpec, n: int, prec: int) -> QSeries:
    """Expansion at infinity of a configured generator, known to O(q^prec)."""
    if spec.kind == "eta":
        s = eta_expand(EtaQuotient(n, spec.exponents, spec.eta_kind), prec)
    elif spec.kind == "trace":
        s = orbit_trace(spec, n, prec)
    elif spec.kind == "j":
        s = j_function(prec)
    elif spec.kind in ("weierstrass_x", "weierstrass_y"):
        nf = eta_expand(EtaQuotient(n, spec.newform), prec + 6)
        xs, ys = weierstrass_parametrization(spec.ainvs, nf, prec + 1)
        s = xs if spec.kind == "weierstrass_x" else ys
    elif spec.kind == "seed":
        if spec.seed is None:
            raise BasisError("seed generator without a series")
        s = spec.seed
        if s.precision < prec:
            raise PrecisionError(f"seed series known only to O(q^{s.precision}), need {prec}")
    else:
        raise BasisError(f"unknown generator kind {spec.kind!r}")
    if spec.constant:
        s = s + spec.constant
    s = s.truncate(prec)
    if not s.is_integral():
        raise BasisError("generator has fractional exponents; not a function on Gamma0(N)")
    return s.normalized()


@dataclass
class Expansion:
    coeffs: dict
    constant: object
    residual: QSeries

    def combination(self) -> dict:
        out = {m: c for m, c in self.coeffs.items() if not is_zero(c)}
        if not is_zero(self.constant):
            out[0] = self.constant
        return out


class BasisFamily:
    """The echelon family f_{N,m} for m = 0 and g+1 <= m <= m_max."""

    def __init__(self, level: LevelData, elements: dict, prec: int, m_max: int, generators=()):
        self.level = level
        self.N = level.N
        self.genus = level.genus
        self.prec = prec
        self.m_max = m_max
        self.elements = elements
        self.generators = tuple(generators)
        self.infinity_non_weierstrass = level.infinity_non_weierstrass

    def __repr__(self):
        return f"BasisFamily(N={self.N}, genus={self.genus}, m_max={self.m_max}, prec={self.prec})"

    def orders(self) -> list[int]:
        return sorted(self.elements)

    def element(self, m: int) -> QSeries:
        if m not in self.elements:
            if 1 <= m <= self.genus:
                raise BasisError(f"{m} is a Weierstrass gap at level {self.N}")
            raise BasisError(f"basis element {m} not built (m_max = {self.m_max})")
        return self.elements[m]

    __getitem__ = element

    def a(self, m: int, n: int):
        """Coefficient of q^n in f_{N,m}."""
        return self.element(m).coeff(n)

    def b(self, n: int, m: int):
        """Dual coefficient b_N(n, m) = -a_N(m, n) for -g <= n <= 0."""
        return -self.a(m, n)

    def dual(self, ell: int) -> QSeries:
        return dual_family(self, ell)

    def expand(self, f: QSeries, check: bool = True) -> Expansion:
        return expand_in_basis(f, self, check=check)


def _eliminate(f: QSeries, elements: dict, genus: int, top: int) -> QSeries:
    """Clear q^-j for g+1 <= j < top and the constant term."""
    for j in range(top - 1, genus, -1):
        c = f.coeff(-j)
        if not is_zero(c):
            f = f - elements[j].scale(c)
    c0 = f.coeff(0)
    if not is_zero(c0):
        f = f - c0
    return f


def build_basis(n: int, generators, prec: int = 60, m_max: int = 20) -> BasisFamily:
    """Reduced echelon basis from generator functions with poles only at infinity.

    Each generator is expanded to enough precision that the products
    f_{m-p} G_p used to climb in pole order still carry ``prec`` terms.
    """
    lev = level_data(n)
    g = lev.genus
    m_max = max(m_max, 2 * g + 1, 1)
    work_prec = prec + m_max + 2 * g + 6
    gens: dict[int, QSeries] = {}
    for spec in generators:
        s = generator_series(spec, n, work_prec)
        v = s.valuation()
        if v is None or v >= 0:
            raise BasisError(f"generator {spec.name or spec.kind} has no pole at infinity")
        p = int(-v)
        if 1 <= p <= g:
            raise BasisError(f"generator pole order {p} lies in the gap range 1..{g}")
        s = s.scale(1 / as_exact(s.leading_coefficient()))
        if p not in gens:
            gens[p] = s
    if not gens:
        raise BasisError("no generators supplied")
    orders = sorted(gens)

    elements: dict[int, QSeries] = {0: QSeries.one(work_prec)}
    for m in range(g + 1, m_max + 1):
        routes = [p for p in sorted(orders, reverse=True) if p == m or (m - p >= g + 1 and m - p in elements)]
        if not routes:
            raise BasisError(f"generators cannot realize pole order {m} at level {n}")
        candidates = []
        for p in routes[:2]:
            base = gens[p] if p == m else elements[m - p] * gens[p]
            candidates.append(_eliminate(base, elements, g, m))
        f = candidates[0]
        for other in candidates[1:]:
            if not f.agrees_with(other):
                raise BasisError(
                    f"pole order {m} at level {n}: two generator routes disagree; "
                    "a generator has poles away from infinity or wrong gap data"
                )
        if f.prec < prec:
            raise PrecisionError(f"f_{m} known only to O(q^{f.precision})")
        elements[m] = f

    # gap structure check: every f_m has zero q^-j for g+1 <= j < m
    for m, f in elements.items():
        for j in range(g + 1, m):
            if not is_zero(f.coeff(-j)):
                raise BasisError(f"echelon shape violated at m={m}, j={j}")
        if m and not is_zero(f.coeff(0)):
            raise BasisError(f"nonzero constant term in f_{m}")
    final = {m: f.truncate(prec) for m, f in elements.items()}
    lev_flag = lev
    if g >= 1 and all(p in gens or any(p - q >= g + 1 and p - q in final for q in gens) for p in range(g + 1, 2 * g + 2)):
        lev_flag = LevelData(lev.N, lev.index, lev.genus, lev.cusps, lev.nu2, lev.nu3, True)
    return BasisFamily(lev_flag, final, prec, m_max, generators)


def expand_in_basis(f: QSeries, fam: BasisFamily, check: bool = True) -> Expansion:
    """Principal-part matching of f against the basis.

    The gap coefficients of f must equal the combination's gap coefficients,
    and the residual must vanish exactly when ``check`` is set.
    """
    if not f.is_integral():
        raise BasisError("series has fractional exponents")
    f = f.normalized()
    v = f.valuation()
    if v is None:
        return Expansion({}, Fraction(0), f)
    top = max(int(-v), 0)
    if top > fam.m_max:
        raise BasisError(f"pole order {top} exceeds the family's m_max = {fam.m_max}")
    r = f
    coeffs = {}
    for m in range(top, fam.genus, -1):
        c = r.coeff(-m)
        if not is_zero(c):
            coeffs[m] = c
            r = r - fam.element(m).scale(c)
    for ell in range(1, fam.genus + 1):
        if not is_zero(r.coeff(-ell)):
            raise BasisError(
                f"gap coefficient mismatch at q^-{ell}: the input is not a function with a pole only at infinity"
            )
    c0 = r.coeff(0)
    if not is_zero(c0):
        r = r - c0
    if check and not r.is_zero():
        raise BasisError(f"nonzero residual {r!r}: input not in the span to this precision")
    return Expansion(coeffs, c0, r)


def dual_family(fam: BasisFamily, ell: int) -> QSeries:
    """g_{N,-l} = q^l + sum_{m>=g+1} b(-l, m) q^m with b(-l, m) = -a(m, -l)."""
    if ell < 0 or ell > fam.genus:
        raise BasisError(f"dual index must lie in 0..{fam.genus}")
    terms = {ell: Fraction(1)}
    for m in range(fam.genus + 1, fam.m_max + 1):
        c = fam.a(m, -ell)
        if not is_zero(c):
            terms[m] = -c
    return QSeries.from_dict(terms, fam.m_max + 1)


def hecke_J(n: int, prec: int) -> QSeries:
    """(j - 744)|T(n), normalized so the principal part is q^-n, to O(q^prec).

    Coefficient of q^m is sum_{a | gcd(n, m)} (n/a) c(nm/a^2) with c the
    coefficients of j - 744.
    """
    if n < 0:
        raise ValueError("n must be nonnegative")
    if n == 0:
        return QSeries.one(prec)
    need = max(n * (prec - 1) + 1, 2)
    j1 = j_function(need) - 744
    terms = {-n: Fraction(1)}
    for m in range(1, prec):
        acc = 0
        for a in range(1, n + 1):
            if n % a == 0 and m % a == 0:
                acc += (n // a) * j1.coeff(n * m // (a * a))
        if acc:
            terms[m] = Fraction(acc)
    return QSeries.from_dict(terms, prec)


def level_one_generator() -> GeneratorSpec:
    return GeneratorSpec(kind="j", name="j-744", constant=Fraction(-744))

