"""Command-line interface: ``modvals <command> [options]``.

Exit status is 0 on success, 1 when the mathematics refuses (bad config,
insufficient precision, a failed check) and 2 for usage errors.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from fractions import Fraction

from .basis import BasisError, build_basis, exponent_search
from .config import ConfigError, family, load_level
from .divisor import DivisorError, divisor_sums, exact_str, gtfne_residual, product_exponents, serre_quotient
from .eisenstein import SingularSystemError, eis_basis, constant_table, solve_Ef
from .exactfield import FieldError
from .forms import FormError, form_input, parse_cusp_orders
from .minpoly import MinpolyError, minimal_polynomial, newton_minpoly, power_sums
from .modcurve import level_data
from .numeric import NumericError, locate_zeros, verify_minpoly
from .qseries import PrecisionError, QSeries

DOMAIN_ERRORS = (
    BasisError,
    ConfigError,
    DivisorError,
    FieldError,
    FormError,
    MinpolyError,
    NumericError,
    PrecisionError,
    SingularSystemError,
)


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(2)


def _series_json(s: QSeries) -> list:
    return [[exact_str(e), exact_str(c)] for e, c in s.items()]


def _flatten(obj, prefix=""):
    if isinstance(obj, dict):
        for k, v in obj.items():
            yield from _flatten(v, f"{prefix}.{k}" if prefix else str(k))
    elif isinstance(obj, list) and obj and isinstance(obj[0], list):
        for i, v in enumerate(obj):
            yield from _flatten(v, f"{prefix}.{i}" if prefix else str(i))
    elif isinstance(obj, list):
        yield prefix, "\t".join(str(x) for x in obj)
    else:
        yield prefix, str(obj)


def _emit(obj, fmt: str, out=None):
    out = out or sys.stdout
    if fmt == "tsv":
        for k, v in _flatten(obj):
            out.write(f"{k}\t{v}\n")
    else:
        out.write(json.dumps(obj) + "\n")


def _level_arg(text: str):
    return int(text) if text.isdigit() else text


def _prec_for(index: int, requested: int | None) -> int:
    need = 2 * index + 10
    return max(requested or 60, need)


def _family(args, m_max: int):
    cfg = load_level(args.level)
    prec = _prec_for(m_max, args.prec)
    return cfg, family(args.level, prec, max(m_max, 2 * level_data(cfg.level).genus + 1))


def _form(args, n_level: int, n_max: int, fam=None):
    orders = parse_cusp_orders(args.cusp_orders, n_level) if args.cusp_orders else None
    prec = _prec_for(n_max, args.prec) + 40
    return form_input(args.form, n_level, prec, args.weight, orders, fam)


def cmd_basis(args) -> dict:
    cfg, fam = _family(args, args.m_max)
    out = {"level": cfg.level, "genus": fam.genus, "prec": fam.prec, "elements": {}}
    for m in fam.orders():
        out["elements"][str(m)] = _series_json(fam[m])
    if fam.genus:
        out["duals"] = {str(ell): _series_json(fam.dual(ell)) for ell in range(1, fam.genus + 1)}
    return out


def cmd_exponents(args) -> dict:
    if args.search is not None:
        cfg = load_level(args.level)
        if not cfg.order_table:
            raise ConfigError(f"level {cfg.level} config has no order table")
        table = cfg.order_table
        sol = exponent_search(table["orders"], args.search, (0, args.bound), args.marked)
        return {
            "level": cfg.level,
            "target": args.search,
            "rows": table.get("rows", []),
            "marked": table.get("columns", [None] * (args.marked + 1))[args.marked],
            "exponents": list(sol),
        }
    if not args.form:
        raise FormError("exponents needs --form or --search")
    cfg = load_level(args.level)
    f = _form(args, cfg.level, args.count)
    return {"level": cfg.level, "h": f.h, "c": [exact_str(x) for x in product_exponents(f, args.count)]}


def cmd_serre(args) -> dict:
    cfg = load_level(args.level)
    f = _form(args, cfg.level, args.count)
    return {"level": cfg.level, "ftheta": _series_json(serre_quotient(f, args.count + 1))}


def cmd_eis_const(args) -> dict:
    n = int(args.level) if str(args.level).isdigit() else load_level(args.level).level
    lev = level_data(n)
    basis = eis_basis(n)
    table = constant_table(n, basis, lev.cusps)
    return {
        "level": n,
        "basis": [str(b) for b in basis],
        "cusps": [c.label(n) for c in lev.cusps],
        "table": [[exact_str(x) for x in row] for row in table],
    }


def cmd_ef(args) -> dict:
    cfg = load_level(args.level)
    f = _form(args, cfg.level, args.count)
    sol = solve_Ef(cfg.level, f.weight, f.cusp_orders, args.count + 1)
    return {
        "level": cfg.level,
        "basis": [str(b) for b in sol.basis],
        "cusps": [c.label(cfg.level) for c in sol.cusps],
        "rhs": [exact_str(x) for x in sol.rhs],
        "alphas": [exact_str(a) for a in sol.alphas],
        "Ef": _series_json(sol.series),
    }


def cmd_divsum(args) -> dict:
    cfg, fam = _family(args, args.n)
    f = _form(args, cfg.level, args.n, fam)
    return divisor_sums(f, fam, args.n).to_dict()


def _minpoly(args):
    cfg, fam = _family(args, args.generator)
    f = _form(args, cfg.level, args.generator, fam)
    report = divisor_sums(f, fam, args.generator)
    if args.degree_override is not None:
        degree = args.degree_override
    else:
        L1 = Fraction(report.L1) if not hasattr(report.L1, "coords") else None
        if L1 is None or L1.denominator != 1 or L1 < 0:
            raise MinpolyError(
                f"weighted point count {exact_str(report.L1)} is not a nonnegative integer; use --degree-override"
            )
        degree = int(L1)
    top = max(degree * args.generator, args.generator)
    cfg, fam = _family(args, top)
    f = _form(args, cfg.level, top, fam)
    report = divisor_sums(f, fam, top)
    x = fam[args.generator]
    if args.degree_override is None:
        poly = minimal_polynomial(report, fam, x)
    else:
        poly = newton_minpoly(power_sums(report, fam, x, degree), degree)
    return cfg, fam, f, report, poly


def cmd_minpoly(args):
    return _minpoly(args)[-1].to_json()


def cmd_check_gtfne(args):
    cfg, fam = _family(args, args.count)
    f = _form(args, cfg.level, args.count, fam)
    res = gtfne_residual(f, fam, args.count)
    return {"level": cfg.level, "prec": args.count, "zero": res.is_zero(), "residual": _series_json(res)}, (
        0 if res.is_zero() else 1
    )


def cmd_verify(args):
    cfg, fam, f, report, poly = _minpoly(args)
    terms = args.terms or int(math.ceil(70 / (2 * math.pi * args.floor))) + 20
    big = form_input(args.form, cfg.level, terms, f.weight, f.cusp_orders, fam)
    zs = locate_zeros(big.series, cfg.level, poly.degree, floor=args.floor)
    gen_fam = build_basis(cfg.level, cfg.generators, terms, max(args.generator, 2 * fam.genus + 1))
    ok, worst = verify_minpoly(zs, gen_fam[args.generator], poly, args.tol)
    out = {
        "level": cfg.level,
        "polynomial": poly.to_json(),
        "points": [[z.real, z.imag] for z in zs],
        "max_residual": worst,
        "tol": args.tol,
        "ok": ok,
    }
    return out, (0 if ok else 1)


def cmd_selftest(args):
    from .acceptance import run_all

    results = run_all()
    for r in results:
        print(r.line())
    return None, (0 if all(r.passed for r in results) else 1)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="modvals", description="Values of modular functions at divisors of modular forms.")
    p.add_argument("--format", choices=("json", "tsv"), default="json")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "tsv"), default=argparse.SUPPRESS)
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)
    _add = sub.add_parser

    def add_parser(name):
        return _add(name, parents=[common])

    def level_opts(sp, form=False, count=None):
        sp.add_argument("--level", type=_level_arg, required=True, help="shipped level number or config path")
        sp.add_argument("--prec", type=int, default=None)
        if form:
            sp.add_argument("--form", required=True, help="form spec or preset name")
            sp.add_argument("--weight", type=int, default=None)
            sp.add_argument("--cusp-orders", default=None, help="label=order,... in local uniformizers")
        if count is not None:
            sp.add_argument("--count", type=int, default=count)

    sp = add_parser("basis")
    level_opts(sp)
    sp.add_argument("--m-max", type=int, default=20)
    sp.set_defaults(fn=cmd_basis)

    sp = add_parser("exponents")
    sp.add_argument("--level", type=_level_arg, required=True)
    sp.add_argument("--prec", type=int, default=None)
    sp.add_argument("--form", default=None)
    sp.add_argument("--weight", type=int, default=None)
    sp.add_argument("--cusp-orders", default=None)
    sp.add_argument("--count", type=int, default=20)
    sp.add_argument("--search", type=int, default=None, help="pole order for the eta-exponent search")
    sp.add_argument("--bound", type=int, default=3)
    sp.add_argument("--marked", type=int, default=0)
    sp.set_defaults(fn=cmd_exponents)

    sp = add_parser("serre")
    level_opts(sp, form=True, count=20)
    sp.set_defaults(fn=cmd_serre)

    sp = add_parser("eis-const")
    sp.add_argument("--level", type=_level_arg, required=True)
    sp.set_defaults(fn=cmd_eis_const)

    sp = add_parser("ef")
    level_opts(sp, form=True, count=10)
    sp.set_defaults(fn=cmd_ef)

    sp = add_parser("divsum")
    level_opts(sp, form=True)
    sp.add_argument("--n", type=int, required=True, help="largest index n")
    sp.set_defaults(fn=cmd_divsum)

    for name, fn in (("minpoly", cmd_minpoly), ("verify", cmd_verify)):
        sp = add_parser(name)
        level_opts(sp, form=True)
        sp.add_argument("--generator", type=int, required=True, help="index m0 of the basis element X")
        sp.add_argument("--degree-override", type=int, default=None)
        if name == "verify":
            sp.add_argument("--tol", type=float, default=1e-5)
            sp.add_argument("--floor", type=float, default=0.05)
            sp.add_argument("--terms", type=int, default=None)
        sp.set_defaults(fn=fn)

    sp = add_parser("check-gtfne")
    level_opts(sp, form=True, count=40)
    sp.set_defaults(fn=cmd_check_gtfne)

    sp = add_parser("selftest")
    sp.set_defaults(fn=cmd_selftest)
    return p


def dispatch(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        result = args.fn(args)
    except DOMAIN_ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (OSError, KeyError, ValueError, ArithmeticError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    code = 0
    if isinstance(result, tuple):
        result, code = result
    if result is not None:
        _emit(result, args.format)
    return code


def main(argv=None) -> None:
    sys.exit(dispatch(argv))


if __name__ == "__main__":
    main()
