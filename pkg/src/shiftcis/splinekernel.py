"""B-splines, Euler/Bernoulli machinery and exponential splines.

Exact work happens on :class:`PolyR` (ascending ``Fraction`` coefficients);
floating mirrors are numpy arrays in the same ascending order so that
``numpy.polynomial.polynomial`` routines apply directly.

The central object is the polynomial family ``G_m(t, beta)``::

    G_1 = -1
    G_m = [beta (t - 1) - (m - 1) t] G_{m-1} + t (t - 1) G'_{m-1}

which is ``(-1)^m (m-1)!`` times the exponential spline
``Phi_{m-1}(beta, 1/t) = sum_k t^-k Q_m(beta - k)``.
"""

from __future__ import annotations

import functools
import math
import threading
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence, Union

import numpy as np
import numpy.polynomial.polynomial as npoly

from .errors import DegenerateError, NumericalDiagnosticError, ZeroBaseError
from .exactset import as_rational, format_rational

Number = Union[int, float, complex, Fraction]

#: |z| within this distance of 1 counts as on the circle
CIRCLE_TOL = 1e-9
#: float roots this close to the circle trigger the exact recount
STURM_GUARD = 1e-6


class PolyR:
    """Univariate polynomial with exact rational coefficients, ascending."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Sequence = (0,)):
        c = [as_rational(x) for x in coeffs] or [Fraction(0)]
        while len(c) > 1 and c[-1] == 0:
            c.pop()
        self.coeffs: tuple[Fraction, ...] = tuple(c)

    @classmethod
    def x(cls) -> "PolyR":
        return cls((0, 1))

    @property
    def degree(self) -> int:
        return -1 if self.is_zero() else len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return self.coeffs == (0,)

    def __eq__(self, other) -> bool:
        if not isinstance(other, PolyR):
            other = PolyR([other])
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self) -> str:
        return "PolyR([{}])".format(", ".join(format_rational(c) for c in self.coeffs))

    def _lift(self, other) -> "PolyR":
        return other if isinstance(other, PolyR) else PolyR([other])

    def __add__(self, other):
        other = self._lift(other)
        n = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (Fraction(0),) * (n - len(self.coeffs))
        b = other.coeffs + (Fraction(0),) * (n - len(other.coeffs))
        return PolyR([x + y for x, y in zip(a, b)])

    __radd__ = __add__

    def __neg__(self):
        return PolyR([-c for c in self.coeffs])

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        other = self._lift(other)
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return PolyR(out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        out = PolyR([1])
        for _ in range(k):
            out = out * self
        return out

    def deriv(self) -> "PolyR":
        return PolyR([k * c for k, c in enumerate(self.coeffs)][1:] or [0])

    def __call__(self, x):
        """Horner evaluation; exact for rational ``x``, numpy-friendly otherwise."""
        if isinstance(x, (int, Fraction, str)):
            x = as_rational(x)
            acc = Fraction(0)
        else:
            acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + (c if isinstance(acc, Fraction) else float(c))
        return acc

    def compose(self, other: "PolyR") -> "PolyR":
        acc = PolyR([0])
        for c in reversed(self.coeffs):
            acc = acc * other + c
        return acc

    def reversed_(self, n: int | None = None) -> "PolyR":
        """``t^n p(1/t)`` with ``n`` defaulting to the degree."""
        n = self.degree if n is None else n
        c = list(self.coeffs) + [Fraction(0)] * (n + 1 - len(self.coeffs))
        return PolyR(c[::-1])

    def to_float(self) -> np.ndarray:
        return np.array([float(c) for c in self.coeffs])

    def to_json(self) -> dict:
        return {"coeffs": [format_rational(c) for c in self.coeffs]}

    @classmethod
    def from_json(cls, obj: dict) -> "PolyR":
        return cls(obj["coeffs"])

    def divmod(self, other: "PolyR") -> tuple["PolyR", "PolyR"]:
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        q = [Fraction(0)] * max(1, len(rem) - other.degree)
        lead = other.coeffs[-1]
        while len(rem) - 1 >= other.degree and any(rem):
            shift = len(rem) - 1 - other.degree
            f = rem[-1] / lead
            q[shift] = f
            for i, c in enumerate(other.coeffs):
                rem[i + shift] -= f * c
            rem.pop()
        return PolyR(q), PolyR(rem or [0])


# ---------------------------------------------------------------------------
# B-splines


def bspline_eval(m: int, x):
    """Cardinal B-spline ``Q_m`` supported on ``[0, m]``.

    Degree-raising recursion on the unit cell containing ``x``::

        Q_r(y) = (y Q_{r-1}(y) + (r - y) Q_{r-1}(y - 1)) / (r - 1)

    Rational ``x`` gives an exact Fraction; arrays are vectorised.
    """
    if m < 1:
        raise ValueError("order m must be >= 1")
    if isinstance(x, (int, Fraction)):
        x = Fraction(x)
        j = math.floor(x)
        if not 0 <= j < m:
            return Fraction(0)
        u = x - j
        vals = [Fraction(1)]  # vals[d] = Q_r(u + d)
        for r in range(2, m + 1):
            new = []
            for d in range(r):
                y = u + d
                left = vals[d] if d < r - 1 else 0
                right = vals[d - 1] if d >= 1 else 0
                new.append((y * left + (r - y) * right) / (r - 1))
            vals = new
        return vals[j]

    arr = np.asarray(x, dtype=float)
    j = np.floor(arr)
    u = arr - j
    vals = [np.ones_like(u)]
    for r in range(2, m + 1):
        new = []
        for d in range(r):
            y = u + d
            left = vals[d] if d < r - 1 else 0.0
            right = vals[d - 1] if d >= 1 else 0.0
            new.append((y * left + (r - y) * right) / (r - 1))
        vals = new
    table = np.stack(vals)
    ji = j.astype(int)
    inside = (ji >= 0) & (ji < m)
    out = np.where(inside, np.take_along_axis(
        table.reshape(m, -1), np.clip(ji, 0, m - 1).reshape(1, -1), axis=0
    ).reshape(arr.shape), 0.0)
    return out if out.ndim else float(out)


# ---------------------------------------------------------------------------
# Bernoulli / Euler / cot-derivative polynomials

_memo_lock = threading.Lock()


@functools.lru_cache(maxsize=None)
def bernoulli(n: int) -> Fraction:
    """Bernoulli number with ``B_1 = -1/2``."""
    if n < 0:
        raise ValueError("n must be >= 0")
    if n == 0:
        return Fraction(1)
    return -sum(
        (math.comb(n + 1, k) * bernoulli(k) for k in range(n)), Fraction(0)
    ) / (n + 1)


@functools.lru_cache(maxsize=None)
def euler_poly(n: int) -> PolyR:
    """Euler polynomial ``E_n`` from Bernoulli numbers."""
    if n < 0:
        raise ValueError("n must be >= 0")
    c = [Fraction(0)] * (n + 1)
    for k in range(1, n + 2):
        c[n + 1 - k] += math.comb(n + 1, k) * (2 - 2 ** (k + 1)) * bernoulli(k)
    return PolyR([x / (n + 1) for x in c])


@functools.lru_cache(maxsize=None)
def cot_poly(j: int) -> PolyR:
    """``P_j`` with ``P_j(cos πx) = π^-j sin^{j+1}(πx) d^j/dx^j cot(πx)``."""
    if j < 0:
        raise ValueError("j must be >= 0")
    if j == 0:
        return PolyR.x()
    p = cot_poly(j - 1)
    x = PolyR.x()
    return -(j * x * p + (1 - x * x) * p.deriv())


def cot_derivative(j: int, x):
    """``d^j/dx^j cot(πx)`` via ``P_j``; float/complex/array input."""
    s = np.sin(np.pi * np.asarray(x))
    c = np.cos(np.pi * np.asarray(x))
    return np.pi**j * npoly.polyval(c, cot_poly(j).to_float()) / s ** (j + 1)


# ---------------------------------------------------------------------------
# G_m / F_m / exponential splines


@functools.lru_cache(maxsize=None)
def gm_poly(m: int, beta) -> PolyR:
    """Exact ``G_m(., beta)`` for rational ``beta``; degree ``m - 1``."""
    if m < 1:
        raise ValueError("m must be >= 1")
    beta = as_rational(beta)
    if m == 1:
        return PolyR([-1])
    prev = gm_poly(m - 1, beta)
    t = PolyR.x()
    return (beta * (t - 1) - (m - 1) * t) * prev + t * (t - 1) * prev.deriv()


def gm_coeffs(m: int, beta: float) -> np.ndarray:
    """Floating twin of :func:`gm_poly` for real ``beta`` (ascending)."""
    if m < 1:
        raise ValueError("m must be >= 1")
    g = np.array([-1.0])
    for k in range(2, m + 1):
        # [beta t - beta - (k-1) t] g + (t^2 - t) g'
        lin = npoly.polymul([-beta, beta - (k - 1)], g)
        quad = npoly.polymul([0.0, -1.0, 1.0], npoly.polyder(g)) if len(g) > 1 else [0.0]
        g = npoly.polyadd(lin, quad)
    return np.asarray(g, dtype=float)


def gm_eval(m: int, t, beta):
    """``G_m(t, beta)`` for complex/array ``t`` and real ``beta``."""
    return npoly.polyval(t, gm_coeffs(m, float(beta)))


def fm_eval(m: int, u, beta):
    """``F_m(u, beta) = G_m(u^2, beta)``."""
    u = np.asarray(u, dtype=complex)
    out = gm_eval(m, u * u, beta)
    return complex(out) if out.ndim == 0 else out


def fm_trig(m: int, x, beta: float):
    """``F_m(e^{iπx}, beta)`` from the cot-derivative (Leibniz) expansion.

    Independent of the recurrence; valid for ``x`` in (0, 1).
    """
    x = np.asarray(x, dtype=float)
    s, c = np.sin(np.pi * x), np.cos(np.pi * x)
    acc = np.zeros_like(x, dtype=complex)
    for j in range(m):
        # π^-j d^j/dx^j (i - cot πx)
        term = -npoly.polyval(c, cot_poly(j).to_float()) / s ** (j + 1)
        if j == 0:
            term = term + 1j
        acc = acc + math.comb(m - 1, j) * (2j * beta) ** (m - 1 - j) * term
    out = np.exp(1j * m * np.pi * x) * s**m * acc
    return complex(out) if out.ndim == 0 else out


def exp_spline_sum(m: int, beta, t):
    """``Phi_{m-1}(beta, t) = sum_k t^k Q_m(beta - k)`` by the finite sum."""
    if m < 2:
        raise ValueError("m must be >= 2")
    if np.any(np.asarray(t) == 0):
        raise ZeroBaseError("base t must be nonzero")
    exact = isinstance(beta, (int, Fraction)) and isinstance(t, (int, Fraction))
    if exact:
        t = Fraction(t)
        return sum((t**k * bspline_eval(m, Fraction(beta) - k) for k in range(1 - m, 1)), Fraction(0))
    t = np.asarray(t, dtype=complex)
    acc = np.zeros_like(t)
    for k in range(1 - m, 1):
        acc = acc + t**k * bspline_eval(m, float(beta) - k)
    return complex(acc) if acc.ndim == 0 else acc


def exp_spline_eval(m: int, beta, t):
    """``Phi_{m-1}(beta, t) = (-1)^m / (m-1)! * G_m(1/t, beta)``."""
    if m < 2:
        raise ValueError("m must be >= 2")
    if np.any(np.asarray(t) == 0):
        raise ZeroBaseError("base t must be nonzero")
    if isinstance(beta, (int, Fraction)) and isinstance(t, (int, Fraction)):
        return (-1) ** m * gm_poly(m, beta)(1 / Fraction(t)) / math.factorial(m - 1)
    t = np.asarray(t, dtype=complex)
    out = (-1) ** m * gm_eval(m, 1 / t, float(beta)) / math.factorial(m - 1)
    return complex(out) if out.ndim == 0 else out


# ---------------------------------------------------------------------------
# Euler-Frobenius polynomials


@functools.lru_cache(maxsize=None)
def euler_frobenius(m: int) -> PolyR:
    """``Pi_m``: ``Pi_{m+1} = (1 + m t) Pi_m + t (1 - t) Pi_m'``, ``Pi_0 = 1``."""
    if m < 0:
        raise ValueError("m must be >= 0")
    if m == 0:
        return PolyR([1])
    p = euler_frobenius(m - 1)
    t = PolyR.x()
    return (1 + (m - 1) * t) * p + t * (1 - t) * p.deriv()


@functools.lru_cache(maxsize=None)
def modified_euler_frobenius(m: int) -> PolyR:
    """``~Pi_m``: ``~Pi_{m+1} = (1 + (2m+1) t) ~Pi_m + 2t (1 - t) ~Pi_m'``."""
    if m < 0:
        raise ValueError("m must be >= 0")
    if m == 0:
        return PolyR([1])
    p = modified_euler_frobenius(m - 1)
    t = PolyR.x()
    return (1 + (2 * m - 1) * t) * p + 2 * t * (1 - t) * p.deriv()


# ---------------------------------------------------------------------------
# zeros


def sturm_sequence(p: PolyR) -> list[PolyR]:
    seq = [p, p.deriv()]
    while not seq[-1].is_zero() and seq[-1].degree > 0:
        _, r = seq[-2].divmod(seq[-1])
        if r.is_zero():
            break
        seq.append(-r)
    return seq


def _sign_changes(values) -> int:
    signs = [v > 0 for v in values if v != 0]
    return sum(a != b for a, b in zip(signs, signs[1:]))


def _at_infinity(p: PolyR, sign: int) -> int:
    lead = p.coeffs[-1]
    return lead * (sign if p.degree % 2 else 1)


def sturm_count(p: PolyR, a=None, b=None) -> int:
    """Distinct real roots of ``p`` in ``(a, b]``; ``None`` means infinite."""
    seq = sturm_sequence(p)
    va = [_at_infinity(q, -1) for q in seq] if a is None else [q(as_rational(a)) for q in seq]
    vb = [_at_infinity(q, 1) for q in seq] if b is None else [q(as_rational(b)) for q in seq]
    return _sign_changes(va) - _sign_changes(vb)


@dataclass(frozen=True)
class ZeroSplit:
    inside: int
    on_circle: int
    outside: int
    roots: tuple[complex, ...]
    certified: bool = False

    def to_json(self) -> dict:
        return {
            "inside": self.inside,
            "on_circle": self.on_circle,
            "outside": self.outside,
            "roots": [[r.real, r.imag] for r in self.roots],
            "certified": self.certified,
        }


def _exact_split(p: PolyR):
    """Exact (inside, on, outside) for a real-rooted squarefree ``p``, else None."""
    n = p.degree
    if sturm_count(p) != n:
        return None
    on = (p(1) == 0) + (p(-1) == 0)
    # (-1, 1) = (-1, 1] minus a possible root at 1
    inside = sturm_count(p, -1, 1) - (p(1) == 0)
    return inside, on, n - inside - on


def zero_split(p, tol: float = CIRCLE_TOL) -> ZeroSplit:
    """Count roots inside, on and outside the unit circle.

    Float roots come from companion-matrix eigenvalues. For an exact
    :class:`PolyR` whose roots are all real and simple, the counts are
    recomputed with Sturm sequences and those win.
    """
    exact = p if isinstance(p, PolyR) else None
    coeffs = p.to_float() if exact is not None else np.trim_zeros(np.asarray(p, dtype=complex), "b")
    if len(coeffs) == 0 or not np.any(coeffs):
        raise DegenerateError("zero polynomial")
    if len(coeffs) < 2:
        raise DegenerateError("constant polynomial has no roots")
    roots = npoly.polyroots(coeffs)
    mod = np.abs(roots)
    inside = int(np.sum(mod < 1 - tol))
    outside = int(np.sum(mod > 1 + tol))
    on = len(roots) - inside - outside
    certified = False
    if exact is not None:
        split = _exact_split(exact)
        if split is not None:
            inside, on, outside = split
            certified = True
    roots = tuple(sorted((complex(r) for r in roots), key=lambda z: (z.real, z.imag)))
    return ZeroSplit(inside, on, outside, roots, certified)


def near_circle(roots: Sequence[complex], guard: float = STURM_GUARD) -> bool:
    return any(abs(abs(r) - 1) < guard for r in roots)


# ---------------------------------------------------------------------------
# Riesz bounds of Q_m


def gram_symbol(m: int, xi):
    """``sum_n |Q_m^(xi + n)|^2`` in closed form.

    By Poisson summation this is the trigonometric polynomial
    ``sum_k Q_2m(m + k) e^{-2 pi i k xi}``, a finite sum of B-spline samples.
    """
    xi = np.asarray(xi, dtype=float)
    acc = np.zeros_like(xi)
    for k in range(1 - m, m):
        acc = acc + float(bspline_eval(2 * m, Fraction(m + k))) * np.cos(2 * np.pi * k * xi)
    return acc


def gram_symbol_series(m: int, xi, terms: int = 2000) -> tuple[np.ndarray, float]:
    """Truncated ``sum_{|n| <= terms} sinc^{2m}(xi + n)`` and a bound on the dropped tail."""
    xi = np.asarray(xi, dtype=float)
    n = np.arange(-terms, terms + 1)
    vals = np.sum(np.sinc(xi[..., None] + n) ** (2 * m), axis=-1)
    tail = 2.0 / (np.pi ** (2 * m) * (2 * m - 1) * (terms - 1) ** (2 * m - 1))
    return vals, tail


def stability_bounds(m: int, grid: int = 256) -> tuple[float, float]:
    """Riesz bounds ``(A, B)`` of the integer translates of ``Q_m`` on a xi-grid.

    Uses :func:`gram_symbol`; the truncated sinc series is checked against
    it within its tail bound, so a disagreement raises rather than passes.
    """
    if grid < 64:
        raise ValueError("grid must be >= 64")
    xi = np.arange(grid) / grid
    vals = gram_symbol(m, xi)
    series, tail = gram_symbol_series(m, xi)
    if np.max(np.abs(series - vals)) > tail + 1e-12:
        raise NumericalDiagnosticError("Gram symbol routes disagree beyond the series tail bound")
    return float(vals.min()), float(vals.max())
