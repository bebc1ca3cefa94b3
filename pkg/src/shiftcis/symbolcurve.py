"""The closed symbol curve of a transversal generator and its winding number.

A curve is an ordered list of circular arcs ``t -> A e^{2 pi i B t}`` and
straight segments ``t -> A((1-t) e^{2 pi i M alpha} + t e^{2 pi i N alpha})``.
Each piece has a closed-form index contribution; their sum is the winding
number about the origin. :func:`numeric_winding` recomputes it from
sampled argument increments as an independent check.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

import numpy as np

from .errors import (
    NonIntegerIndexError,
    OriginCrossingError,
    OriginProximityError,
    UndersampledError,
)
from .exactset import HALF, CongruenceData, as_rational

Real = Union[float, Fraction]

CLOSURE_TOL = 1e-12
INTEGER_TOL = 1e-6
ORIGIN_TOL = 1e-9
MAX_SAMPLES = 1 << 16


def _phase(x: Real) -> complex:
    return complex(np.exp(2j * np.pi * float(x)))


def _half_offset(x: Real) -> Real:
    """``x - floor(x + 1/2)``, in ``[-1/2, 1/2)``."""
    return x - math.floor(x + HALF)


@dataclass(frozen=True)
class ArcPiece:
    amplitude: complex
    frequency: Real
    t0: Real
    t1: Real

    @property
    def extent(self) -> Real:
        return self.t1 - self.t0

    def at(self, t):
        return self.amplitude * np.exp(2j * np.pi * float(self.frequency) * np.asarray(t, dtype=float))

    def sample(self, n: int) -> tuple[np.ndarray, np.ndarray]:
        t = np.linspace(float(self.t0), float(self.t1), n + 1)
        return t, self.at(t)

    def start(self) -> complex:
        return complex(self.at(float(self.t0)))

    def end(self) -> complex:
        return complex(self.at(float(self.t1)))


@dataclass(frozen=True)
class SegmentPiece:
    amplitude: complex
    M: int
    N: int
    alpha: Real

    @property
    def extent(self) -> int:
        return self.N - self.M

    def at(self, t):
        t = np.asarray(t, dtype=float)
        a = float(self.alpha)
        return self.amplitude * ((1 - t) * np.exp(2j * np.pi * self.M * a) + t * np.exp(2j * np.pi * self.N * a))

    def sample(self, n: int) -> tuple[np.ndarray, np.ndarray]:
        # n is even, so t = 1/2 (the point nearest the origin) is a sample
        t = np.linspace(0.0, 1.0, n + 1)
        return t, self.at(t)

    def start(self) -> complex:
        return complex(self.at(0.0))

    def end(self) -> complex:
        return complex(self.at(1.0))


Piece = Union[ArcPiece, SegmentPiece]


@dataclass(frozen=True)
class SymbolCurve:
    pieces: tuple[Piece, ...]
    alpha: Real

    def closure_defect(self) -> float:
        """Largest gap between the end of one piece and the start of the next."""
        gaps = [
            abs(p.end() - q.start())
            for p, q in zip(self.pieces, self.pieces[1:] + self.pieces[:1])
        ]
        return max(gaps)

    def samples(self, samples_per_piece: int = 256) -> list[tuple[int, np.ndarray, np.ndarray]]:
        """``(piece_id, t, z)`` per non-degenerate piece."""
        return [
            (i, *p.sample(samples_per_piece))
            for i, p in enumerate(self.pieces)
            if p.extent != 0
        ]

    def to_csv(self, samples_per_piece: int = 256) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["piece_id", "t", "re", "im"])
        for i, t, z in self.samples(samples_per_piece):
            for tt, zz in zip(t, z):
                w.writerow([i, repr(float(tt)), repr(float(zz.real)), repr(float(zz.imag))])
        return buf.getvalue()


def build_symbol_curve(cd: CongruenceData, alpha) -> SymbolCurve:
    """Arcs and jump segments of the symbol for shift ``alpha``.

    For ``k = L, ..., 1`` the curve runs through an arc over
    ``[1 - a_{k+1}, s_k]``, the jump from ``lambda_{k1}`` to
    ``lambda_{k mu_k}``, an arc over ``[s_k, 1 - a_k]`` and the jump to
    ``lambda_{k-1, 1}``. Pieces of zero extent are kept in place.
    """
    alpha = alpha if isinstance(alpha, float) else as_rational(alpha)
    a = cd.breakpoints
    pieces: list[Piece] = []
    for k in range(cd.L, 0, -1):
        lam1, lammu, lamnext = cd.lam1(k), cd.lam_mu(k), cd.lam1(k - 1)
        s_k, right = cd.s[k - 1], 1 - a[k - 1]
        pieces.append(ArcPiece(_phase(alpha * lam1), -alpha, 1 - a[k], s_k))
        pieces.append(SegmentPiece(_phase(-alpha * s_k), lam1, lammu, alpha))
        pieces.append(ArcPiece(_phase(alpha * lammu), -alpha, s_k, right))
        pieces.append(SegmentPiece(_phase(-alpha * right), lammu, lamnext, alpha))
    curve = SymbolCurve(tuple(pieces), alpha)
    defect = curve.closure_defect()
    if defect > CLOSURE_TOL:  # pragma: no cover - construction invariant
        raise NonIntegerIndexError(f"symbol curve fails to close (gap {defect:.3g})")
    return curve


def piece_index(p: Piece) -> Real:
    """Contribution of one piece to the winding number about 0."""
    if isinstance(p, ArcPiece):
        return (p.t1 - p.t0) * p.frequency
    x = (p.N - p.M) * p.alpha
    frac = _half_offset(x)
    if p.N != p.M and (frac == -HALF or abs(float(frac) + 0.5) < 1e-12):
        raise OriginCrossingError(f"segment {p.M} -> {p.N} passes through 0 at alpha = {p.alpha}")
    return frac


def curve_index(c: SymbolCurve) -> int:
    total = sum(piece_index(p) for p in c.pieces)
    k = round(total)
    if abs(float(total) - k) > INTEGER_TOL:
        raise NonIntegerIndexError(f"piece indices sum to {float(total)!r}")
    return int(k)


def numeric_winding(c: SymbolCurve, samples_per_piece: int = 256) -> int:
    """Winding number from accumulated principal-value argument steps.

    Sampling doubles until every step is below pi/2.
    """
    n = max(2, samples_per_piece + samples_per_piece % 2)
    while True:
        chunks = [z for _, _, z in c.samples(n)]
        if not chunks:
            return 0
        z = np.concatenate(chunks + [chunks[0][:1]])
        if np.min(np.abs(z)) <= ORIGIN_TOL:
            raise OriginProximityError("sampled curve comes within 1e-9 of the origin")
        steps = np.angle(z[1:] / z[:-1])
        worst = float(np.max(np.abs(steps)))
        if worst < np.pi / 2:
            break
        if n >= MAX_SAMPLES:
            if worst >= np.pi:
                raise UndersampledError(f"argument step {worst:.3f} >= pi at {n} samples per piece")
            break
        n *= 2
    total = float(np.sum(steps)) / (2 * np.pi)
    k = round(total)
    if abs(total - k) > INTEGER_TOL:
        raise NonIntegerIndexError(f"accumulated argument {total!r} is not an integer")
    return int(k)


def curve_min_modulus(c: SymbolCurve) -> float:
    """Exact distance from the curve to 0.

    Arcs sit at radius ``|A|``; a segment between two points of modulus
    ``|A|`` is nearest 0 at its midpoint, at distance
    ``|A| |cos(pi (N - M) alpha)|``.
    """
    best = math.inf
    for p in c.pieces:
        if isinstance(p, ArcPiece):
            best = min(best, abs(p.amplitude))
        elif p.N != p.M:
            x = (p.N - p.M) * p.alpha
            if not isinstance(x, float) and _half_offset(x) == -HALF:
                return 0.0
            best = min(best, abs(p.amplitude) * abs(math.cos(math.pi * float(x))))
        else:
            best = min(best, abs(p.amplitude))
    return best
