"""Floating-point cross-checks: evaluate q-series, find zeros, test polynomial roots.

Nothing here feeds back into the exact pipeline.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .exactfield import CycNumber
from .modcurve import Cusp
from .qseries import QSeries

__all__ = [
    "NumericError",
    "SeriesEvaluator",
    "cusp_constant_numeric",
    "eval_series",
    "locate_zeros",
    "verify_minpoly",
]

DEFAULT_FLOOR = 0.05


class NumericError(ArithmeticError):
    pass


def _to_complex(c) -> complex:
    if isinstance(c, CycNumber):
        return c.to_complex()
    return complex(float(c))


class SeriesEvaluator:
    """Vectorized evaluation of a q-series and its tau-derivative."""

    def __init__(self, f: QSeries):
        items = list(f.items())
        self.prec = float(f.precision)
        self.exps = np.array([float(e) for e, _ in items])
        self.coeffs = np.array([_to_complex(c) for _, c in items], dtype=complex)
        tail = np.abs(self.coeffs[-5:]) if items else np.zeros(1)
        self._tail_coeff = float(tail.max()) if tail.size else 0.0

    def tail_bound(self, im: float) -> float:
        r = math.exp(-2 * math.pi * im)
        if r >= 1:
            return math.inf
        return self._tail_coeff * r**self.prec / (1 - r)

    def __call__(self, tau):
        tau = np.atleast_1d(np.asarray(tau, dtype=complex))
        q = np.exp(2j * np.pi * np.outer(tau, self.exps))
        return q @ self.coeffs

    def derivative(self, tau):
        tau = np.atleast_1d(np.asarray(tau, dtype=complex))
        q = np.exp(2j * np.pi * np.outer(tau, self.exps))
        return q @ (2j * np.pi * self.exps * self.coeffs)


def eval_series(f: QSeries, tau: complex, tol: float | None = None) -> tuple[complex, float]:
    """(partial sum, estimated tail) at tau; raises when the tail exceeds tol."""
    tau = complex(tau)
    if tau.imag <= 0:
        raise NumericError("tau must lie in the upper half plane")
    ev = SeriesEvaluator(f)
    tail = ev.tail_bound(tau.imag)
    if tol is not None and tail > tol:
        raise NumericError(f"tail estimate {tail:.3g} exceeds tolerance {tol:.3g} at Im(tau) = {tau.imag}")
    return complex(ev(tau)[0]), tail


@dataclass(frozen=True)
class _Zero:
    z: complex
    residual: float


def _wrap(z: complex) -> complex:
    x = (z.real + 0.5) % 1.0 - 0.5
    if abs(x - 0.5) < 1e-9 or abs(x + 0.5) < 1e-9:
        x = -0.5
    return complex(x, z.imag)


def _newton(ev: SeriesEvaluator, z: complex, steps: int = 60) -> complex | None:
    for _ in range(steps):
        fz = ev(z)[0]
        dz = ev.derivative(z)[0]
        if dz == 0:
            return None
        step = fz / dz
        z = z - step
        if z.imag <= 0:
            return None
        if abs(step) < 1e-14:
            break
    return z


def locate_zeros(
    f: QSeries,
    n: int,
    count_hint: int,
    floor: float = DEFAULT_FLOOR,
    y_max: float = 1.5,
    grid: tuple[int, int] = (401, 161),
) -> list[complex]:
    """Zeros of f in the band |Re| <= 1/2, floor <= Im <= y_max.

    Local minima of |f| on a grid are refined by Newton's method and
    deduplicated modulo translation by 1.  The ``count_hint`` points with
    the largest imaginary part are returned.
    """
    if count_hint == 0:
        return []
    ev = SeriesEvaluator(f)
    if ev.tail_bound(floor) > 1e-8:
        raise NumericError(f"series precision {ev.prec:g} is too low for Im(tau) >= {floor}")
    nx, ny = grid
    xs = np.linspace(-0.5, 0.5, nx)
    ys = np.geomspace(floor, y_max, ny)
    X, Y = np.meshgrid(xs, ys)
    vals = np.abs(ev((X + 1j * Y).ravel())).reshape(X.shape)
    pad = np.pad(vals, 1, mode="edge")
    is_min = np.ones_like(vals, dtype=bool)
    for di in (-1, 0, 1):
        for dj in (-1, 0, 1):
            if di or dj:
                is_min &= vals <= pad[1 + di : 1 + di + vals.shape[0], 1 + dj : 1 + dj + vals.shape[1]]
    scale = max(float(np.median(vals)), 1e-300)
    found: list[_Zero] = []
    for i, j in zip(*np.nonzero(is_min)):
        z0 = complex(X[i, j], Y[i, j])
        z = _newton(ev, z0)
        if z is None or not (floor * 0.999 <= z.imag <= y_max):
            continue
        res = abs(ev(z)[0])
        if res > 1e-8 * max(scale, 1.0):
            continue
        z = _wrap(z)
        if all(abs(_wrap(z - p.z)) > 1e-6 for p in found):
            found.append(_Zero(z, res))
    found.sort(key=lambda p: (-round(p.z.imag, 9), p.z.real))
    if len(found) < count_hint:
        raise NumericError(f"found {len(found)} zeros at level {n}, expected {count_hint}; try a lower floor")
    return [p.z for p in found[:count_hint]]


def verify_minpoly(points, generator: QSeries, poly, tol: float = 1e-5) -> tuple[bool, float]:
    """max |P(X(z))| over the points, and whether it is below tol."""
    ev = SeriesEvaluator(generator)
    coeffs = poly.to_complex_coeffs()
    worst = 0.0
    for z in points:
        x = ev(z)[0]
        val = 0j
        for c in reversed(coeffs):
            val = val * x + c
        worst = max(worst, abs(val))
    return bool(worst < tol), float(worst)


def cusp_constant_numeric(
    f: QSeries, weight: int, cusp: Cusp, n: int, samples: int = 400, y: float | None = None
) -> complex:
    """Constant term of f|_k gamma for gamma mapping infinity to e/v, by averaging over a period.

    The period window is centred on the pole -h/v of the automorphy factor;
    with y = width/2 every image has Im >= 1/(v^2 width).
    """
    e, v = cusp.e, cusp.v
    if v == n and e == 1:
        return _to_complex(f.coeff(0))
    h = next(hh for hh in range(1, 10 * v + 2) if (e * hh - 1) % v == 0)
    g = (e * h - 1) // v
    w = cusp.width
    y = w / 2 if y is None else y
    ev = SeriesEvaluator(f)
    x0 = -h / v - w / 2
    taus = np.array([complex(x0 + w * (k + 0.5) / samples, y) for k in range(samples)])
    images = (e * taus + g) / (v * taus + h)
    if ev.tail_bound(float(images.imag.min())) > 1e-10:
        raise NumericError("series precision too low for the sampled images")
    vals = ev(images) * (v * taus + h) ** (-weight)
    return complex(np.mean(vals))
