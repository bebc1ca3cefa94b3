"""Lerch-type series and the doubly infinite sum ``H(lambda, x, m)``.

``H(lambda, x, m) = sum_{n in Z} e^{2 pi i lambda n} / (n - x)^m`` is
computed three ways:

* :func:`h_series`: symmetric truncation of the defining sum;
* :func:`h_closed`: ``pi/(m-1)! d^{m-1}/dx^{m-1} [(i - cot pi x) e^{2 pi i lambda x}]``
  with the derivatives of ``cot`` taken exactly from :func:`cot_poly`;
* :func:`h_from_gm`: the rational expression in ``e^{2 pi i x}`` through ``G_m``.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass

import numpy as np
import numpy.polynomial.polynomial as npoly

from .errors import IntegerPoleError, PoleError, ValidationError
from .splinekernel import cot_poly, gm_coeffs

DEFAULT_TERMS = 100_000
_CHUNK = 1 << 16


@dataclass(frozen=True)
class LerchQuery:
    lam: float
    x: float
    m: int
    terms: int = DEFAULT_TERMS

    def __post_init__(self):
        if self.m < 2:
            raise ValidationError("m must be >= 2 for absolute convergence")
        if float(self.x).is_integer():
            raise IntegerPoleError(f"x = {self.x} is an integer")
        if self.terms <= abs(self.x) + 1:
            raise ValidationError("terms must exceed |x| + 1")

    @property
    def tail_bound(self) -> float:
        """Bound on the terms with ``|n| > T`` dropped by :func:`h_series`."""
        return 2.0 * (self.terms - abs(self.x)) ** (1 - self.m) / (self.m - 1)


def _chunked_sum(n_lo: int, n_hi: int, term) -> complex:
    total = 0j
    for start in range(n_lo, n_hi, _CHUNK):
        n = np.arange(start, min(start + _CHUNK, n_hi), dtype=float)
        total += complex(np.sum(term(n)))
    return total


def lerch_tail_bound(b: complex, s: int, terms: int) -> float:
    """Bound on ``sum_{n >= terms} |n + b|^{-s}``; valid when ``terms + Re b > 1``."""
    base = terms + complex(b).real - 1
    if base <= 0:
        return math.inf
    return base ** (1 - s) / (s - 1)


def lerch_L(lam: float, b: complex, s: int, terms: int = DEFAULT_TERMS) -> complex:
    """``sum_{n >= 0} e^{2 pi i lam n} / (n + b)^s`` truncated to ``terms`` terms.

    The neglected tail is at most :func:`lerch_tail_bound`.
    """
    if s < 2:
        raise ValidationError("s must be >= 2")
    b = complex(b)
    if b.imag == 0 and b.real <= 0 and b.real.is_integer():
        raise PoleError(f"n + b vanishes at n = {int(-b.real)}")
    return _chunked_sum(0, terms, lambda n: np.exp(2j * np.pi * lam * n) / (n + b) ** s)


def h_series(q: LerchQuery) -> complex:
    """Sum over ``|n| <= T``; see :attr:`LerchQuery.tail_bound`."""
    return _chunked_sum(
        -q.terms, q.terms + 1, lambda n: np.exp(2j * np.pi * q.lam * n) / (n - q.x) ** q.m
    )


def cot_derivatives(x: float, order: int) -> list[float]:
    """``[d^j/dx^j cot(pi x) for j = 0..order]``."""
    s, c = math.sin(math.pi * x), math.cos(math.pi * x)
    return [
        math.pi**j * float(npoly.polyval(c, cot_poly(j).to_float())) / s ** (j + 1)
        for j in range(order + 1)
    ]


def _reduce(x):
    """Split ``x = k + x0`` with ``k`` an integer and ``|x0| <= 1/2`` (exact in floating point).

    ``H(lam, x + 1, m) = e^{2 pi i lam} H(lam, x, m)``, so the closed forms are
    evaluated at ``x0`` where ``sin(pi x0)`` keeps full relative accuracy.
    """
    k = np.round(x)
    return k, x - k


def h_closed(q: LerchQuery) -> complex:
    m, lam = q.m, q.lam
    k, x0 = _reduce(q.x)
    cots = cot_derivatives(x0, m - 1)
    w = 2j * np.pi * lam
    total = 0j
    for j in range(m):
        first = -cots[j] + (1j if j == 0 else 0)
        total += math.comb(m - 1, j) * first * w ** (m - 1 - j)
    return complex(math.pi * total * np.exp(w * (x0 + k)) / math.factorial(m - 1))


def h_from_gm(q: LerchQuery) -> complex:
    return complex(_h_gm(q.m, q.lam, q.x))


def _h_gm(m: int, lam, x):
    """Vectorised ``G_m`` route without pole checks.

    Scalar ``lam`` gives the shape of ``x``; a 1-D ``lam`` adds a leading axis.
    """
    k, x0 = _reduce(np.asarray(x, dtype=float))
    z = np.exp(2j * np.pi * x0)
    # e^{2 pi i x0} - 1 = 2i sin(pi x0) e^{i pi x0}
    denom = (2j * np.sin(np.pi * x0)) ** m * np.exp(1j * np.pi * m * x0)
    pref = (2j * np.pi) ** m / math.factorial(m - 1) / denom
    if np.ndim(lam) == 0:
        return pref * np.exp(2j * np.pi * lam * (x0 + k)) * npoly.polyval(z, gm_coeffs(m, float(lam)))
    return np.stack([_h_gm(m, float(l), x) for l in np.asarray(lam).ravel()])


def lerch_reflection_rhs(lam: float, b: float, s: int) -> complex:
    """Closed form of ``L(lam, b, s) + (-1)^s L(-lam, -b, s)`` for ``b`` not an integer."""
    if float(b).is_integer():
        raise IntegerPoleError(f"b = {b} is an integer")
    cots = cot_derivatives(b, s - 1)
    w = -2j * np.pi * lam
    deriv = 0j
    for j in range(s):
        first = math.pi * (cots[j] + (1j if j == 0 else 0))
        deriv += math.comb(s - 1, j) * first * w ** (s - 1 - j)
    deriv *= np.exp(w * b)
    return complex(1 / b**s + (-1) ** (s - 1) * deriv / math.factorial(s - 1))


def half_offset_grid(n: int) -> np.ndarray:
    return (np.arange(n) + 0.5) / n


@dataclass(frozen=True)
class ScanReport:
    m: int
    lambda_grid: int
    x_grid: int
    min_abs: float
    argmin_lambda: float
    argmin_x: float

    def to_json(self) -> dict:
        return {
            "m": self.m,
            "lambda_grid": self.lambda_grid,
            "x_grid": self.x_grid,
            "min_abs_h": self.min_abs,
            "argmin": {"lambda": self.argmin_lambda, "x": self.argmin_x},
        }


def h_grid(m: int, lambda_grid: int, x_grid: int) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """``(lambdas, xs, |H|)`` on half-step grids with ``lambda = 1/2`` removed."""
    lams = half_offset_grid(lambda_grid)
    lams = lams[lams != 0.5]
    xs = half_offset_grid(x_grid)
    return lams, xs, np.abs(_h_gm(m, lams, xs))


def zero_free_scan(m: int, lambda_grid: int = 64, x_grid: int = 64) -> ScanReport:
    """Smallest ``|H|`` over the grid: a numerical witness of zero-freeness."""
    if lambda_grid < 32 or x_grid < 32:
        raise ValidationError("grids must have at least 32 points")
    if m < 2:
        raise ValidationError("m must be >= 2")
    lams, xs, mag = h_grid(m, lambda_grid, x_grid)
    i, j = np.unravel_index(np.argmin(mag), mag.shape)
    return ScanReport(m, lambda_grid, x_grid, float(mag[i, j]), float(lams[i]), float(xs[j]))


def line_scan(m: int, lam: float, x_grid: int = 256) -> tuple[np.ndarray, np.ndarray]:
    """``|H(lam, x, m)|`` along the half-step x-grid."""
    xs = half_offset_grid(x_grid)
    return xs, np.abs(_h_gm(m, lam, xs))


def heatmap_csv(m: int, lambda_grid: int = 64, x_grid: int = 64) -> str:
    lams, xs, mag = h_grid(m, lambda_grid, x_grid)
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["lambda", "x", "abs_h"])
    for i, lam in enumerate(lams):
        for j, x in enumerate(xs):
            w.writerow([repr(float(lam)), repr(float(x)), repr(float(mag[i, j]))])
    return buf.getvalue()
