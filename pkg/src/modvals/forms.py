"""Text specifications of modular forms for the command line and tests.

A form is a sum of terms separated by ``+``; each term is ``[coef@]kind[:arg]``:

    eta:1^2*11^2        eta quotient prod eta(d tau)^r (``/`` starts the denominator)
    const:3             a constant (weight 0 only)
    E2diff:11           E_2(tau) - 11 E_2(11 tau)
    E2, E4, E6, Delta   level-one series
    series:path         a series file written by QSeries.to_text
    basis:m             the basis element f_{N,m}

Presets: example6_1, example6_3, E4, E6, Delta.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from pathlib import Path

from .divisor import DivisorError, FormInput, eta_cusp_orders
from .eisenstein import EisElement
from .modcurve import level_data
from .qseries import EtaQuotient, QSeries, delta, eisenstein_series, eta_expand, parse_scalar

__all__ = ["FormError", "FormSpec", "Term", "eta_cusp_value_abs2", "form_input", "parse_cusp_orders", "parse_form"]


class FormError(ValueError):
    pass


PRESETS = {
    "example6_1": ("-1/10@E2diff:11 + -12/5@eta:1^2*11^2", {"0": 0}),
    "example6_3": ("eta:3^3/27^3 + const:3", None),
    "E4": ("E4", None),
    "E6": ("E6", None),
    "Delta": ("eta:1^24", None),
}


@dataclass(frozen=True)
class Term:
    coef: Fraction
    kind: str
    arg: object = None

    def weight(self):
        if self.kind == "eta":
            return EtaQuotient(max(self.arg), self.arg).weight()
        return {"const": None, "E2diff": 2, "E2": 2, "E4": 4, "E6": 6, "Delta": 12, "basis": 0, "series": None}[
            self.kind
        ]

    def series(self, n: int, prec: int, family=None) -> QSeries:
        k = self.kind
        if k == "eta":
            s = eta_expand(EtaQuotient(n, self.arg), prec)
        elif k == "const":
            s = QSeries.constant(1, prec)
        elif k == "E2diff":
            if n % self.arg:
                raise FormError(f"E2diff:{self.arg} does not live on Gamma0({n})")
            s = EisElement("E2diff", d=self.arg).expansion(prec)
        elif k in ("E2", "E4", "E6"):
            s = eisenstein_series(int(k[1]), prec)
        elif k == "Delta":
            s = delta(prec)
        elif k == "series":
            s = QSeries.from_text(Path(self.arg).read_text())
        elif k == "basis":
            if family is None:
                raise FormError("basis terms need a level configuration")
            s = family.element(self.arg)
        else:  # pragma: no cover
            raise FormError(f"unknown term kind {k}")
        return s.scale(self.coef) if self.coef != 1 else s


def _parse_eta(arg: str) -> dict:
    num, _, den = arg.partition("/")
    ex: dict[int, int] = {}
    for part, sgn in ((num, 1), (den, -1)):
        if not part.strip():
            continue
        for fac in part.split("*"):
            m = re.fullmatch(r"\s*(\d+)\s*(?:\^\s*(-?\d+))?\s*", fac)
            if not m:
                raise FormError(f"bad eta factor {fac!r}")
            d, r = int(m.group(1)), int(m.group(2) or 1)
            ex[d] = ex.get(d, 0) + sgn * r
    return {d: r for d, r in ex.items() if r}


def _split_terms(text: str) -> list[str]:
    # a '+' directly after '@', '^' or '/' belongs to a number, not a new term
    out, cur = [], ""
    for ch in text:
        if ch == "+" and cur.strip() and cur.rstrip()[-1] not in "@^/":
            out.append(cur)
            cur = ""
        else:
            cur += ch
    out.append(cur)
    return [t.strip() for t in out if t.strip()]


def _parse_term(text: str) -> Term:
    coef = Fraction(1)
    if "@" in text:
        c, text = text.split("@", 1)
        coef = Fraction(parse_scalar(c.strip()))
    kind, _, arg = text.strip().partition(":")
    kind = kind.strip()
    if kind == "eta":
        return Term(coef, "eta", _parse_eta(arg))
    if kind == "const":
        return Term(coef * Fraction(parse_scalar(arg.strip())), "const")
    if kind in ("E2diff", "basis"):
        try:
            return Term(coef, kind, int(arg))
        except ValueError as exc:
            raise FormError(f"{kind} needs an integer argument") from exc
    if kind == "series":
        return Term(coef, kind, arg.strip())
    if kind in ("E2", "E4", "E6", "Delta") and not arg:
        return Term(coef, kind)
    raise FormError(f"unknown form term {text!r}")


@dataclass
class FormSpec:
    text: str
    terms: list
    preset_orders: dict | None = None
    name: str = ""

    def weight(self):
        ws = {w for t in self.terms if (w := t.weight()) is not None}
        if any(t.kind == "const" for t in self.terms):
            ws.add(Fraction(0))
        if len(ws) > 1:
            raise FormError(f"terms of different weights: {sorted(ws)}")
        if not ws:
            return None
        w = next(iter(ws))
        if Fraction(w).denominator != 1:
            raise FormError(f"weight {w} is not an integer")
        return int(w)

    def series(self, n: int, prec: int, family=None) -> QSeries:
        out = None
        for t in self.terms:
            s = t.series(n, prec, family)
            out = s if out is None else out + s
        return out

    def infer_cusp_orders(self, n: int) -> dict:
        """Cusp orders when they follow from the shape of the form."""
        lev = level_data(n)
        if self.preset_orders is not None:
            return {lev.cusp(k): Fraction(v) for k, v in self.preset_orders.items()}
        kinds = sorted(t.kind for t in self.terms)
        if kinds in (["E4"], ["E6"]):
            return {c: Fraction(0) for c in lev.finite_cusps()}
        if kinds == ["Delta"]:
            return {c: Fraction(c.width) for c in lev.finite_cusps()}
        etas = [t for t in self.terms if t.kind == "eta"]
        consts = [t for t in self.terms if t.kind == "const"]
        if len(etas) == 1 and len(etas) + len(consts) == len(self.terms):
            eq = EtaQuotient(n, etas[0].arg)
            const = sum((t.coef for t in consts), Fraction(0))
            out = {}
            for c in lev.finite_cusps():
                o = eta_cusp_orders(eq, n, c)
                if const == 0 or o < 0:
                    out[c] = o
                elif o > 0:
                    out[c] = Fraction(0)
                elif eta_cusp_value_abs2(eq, c.v) != (const / etas[0].coef) ** 2:
                    out[c] = Fraction(0)
                else:
                    raise FormError(f"cannot decide the order at {c.label(n)}; pass --cusp-orders")
            return out
        raise FormError("cusp orders cannot be inferred for this form; pass --cusp-orders")


def eta_cusp_value_abs2(spec: EtaQuotient, v: int) -> Fraction:
    """|value|^2 of a weight-0 eta quotient at a cusp e/v where its order is 0."""
    out = Fraction(1)
    for d, r in spec.exponents.items():
        out *= Fraction(gcd(v, d), d) ** r
    return out


def parse_form(text: str) -> FormSpec:
    key = text.strip()
    if key in PRESETS:
        body, orders = PRESETS[key]
        spec = _parse_terms(body)
        spec.preset_orders = orders
        spec.name = key
        return spec
    return _parse_terms(key)


def _parse_terms(key: str) -> FormSpec:
    terms = [_parse_term(t) for t in _split_terms(key)]
    if not terms:
        raise FormError("empty form")
    return FormSpec(key, terms)


def parse_cusp_orders(text: str, n: int) -> dict:
    """'0=1,1/3=0' -> {Cusp: Fraction}."""
    lev = level_data(n)
    out = {}
    for part in filter(None, (p.strip() for p in text.split(","))):
        label, sep, val = part.partition("=")
        if not sep:
            raise FormError(f"bad cusp order {part!r}; expected label=value")
        out[lev.cusp(label)] = Fraction(val.strip())
    return out


def form_input(
    text: str,
    n: int,
    prec: int,
    weight: int | None = None,
    cusp_orders: dict | None = None,
    family=None,
) -> FormInput:
    spec = parse_form(text)
    w = spec.weight()
    if weight is not None and w is not None and weight != w:
        raise FormError(f"form has weight {w}, not {weight}")
    w = weight if weight is not None else w
    if w is None:
        raise FormError("weight cannot be inferred; pass --weight")
    orders = cusp_orders if cusp_orders is not None else spec.infer_cusp_orders(n)
    try:
        return FormInput(spec.series(n, prec, family), w, n, orders, provenance=spec.name or spec.text)
    except DivisorError as exc:
        raise FormError(str(exc)) from exc
