"""Exact rational 1-transversal sets and their admissible shift regions.

A 1-transversal set ``E`` is given as a finite union of rational intervals
whose integer translates tile the line. For the sample set
``N0 ∪ (alpha + N^-)`` the Toeplitz symbol of the problem is piecewise
``exp(2πiα(λ - x))`` and its winding number is a sum of floors; this
module computes every piece of that bookkeeping exactly with
:class:`fractions.Fraction`.

Everything here is a pure function of immutable values.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import (
    ExcludedAlphaError,
    GapError,
    LengthError,
    OverlapError,
    UndefinedDirectionError,
    ValidationError,
)

#: floats are snapped to rationals with at most this denominator
SNAP_DENOMINATOR = 10**6
#: distance below which a float shift counts as a member of G
G_TOLERANCE = 1e-9

HALF = Fraction(1, 2)


def as_rational(x) -> Fraction:
    """Parse ``x`` (int, Fraction, ``"p/q"`` string or float) exactly."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        try:
            return Fraction(x.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise ValidationError(f"not a rational literal: {x!r}") from exc
    if isinstance(x, float):
        if not math.isfinite(x):
            raise ValidationError(f"non-finite value {x}")
        # decimal reading: 0.1 -> 1/10 rather than the binary expansion
        return Fraction(repr(x))
    raise TypeError(f"cannot interpret {type(x).__name__} as a rational")


def format_rational(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


@dataclass(frozen=True)
class IntervalQ:
    lo: Fraction
    hi: Fraction
    lo_closed: bool = True
    hi_closed: bool = False

    def __post_init__(self):
        object.__setattr__(self, "lo", as_rational(self.lo))
        object.__setattr__(self, "hi", as_rational(self.hi))
        if not self.lo < self.hi:
            raise ValidationError(f"degenerate interval [{self.lo}, {self.hi}]")

    @property
    def length(self) -> Fraction:
        return self.hi - self.lo

    @property
    def midpoint(self) -> Fraction:
        return (self.lo + self.hi) / 2

    def __contains__(self, x) -> bool:
        if isinstance(x, float):
            lo, hi = float(self.lo), float(self.hi)
        else:
            x = as_rational(x)
            lo, hi = self.lo, self.hi
        above = x >= lo if self.lo_closed else x > lo
        below = x <= hi if self.hi_closed else x < hi
        return above and below

    def shifted(self, t) -> "IntervalQ":
        t = as_rational(t)
        return IntervalQ(self.lo + t, self.hi + t, self.lo_closed, self.hi_closed)

    def __str__(self) -> str:
        return "{}{}, {}{}".format(
            "[" if self.lo_closed else "(",
            format_rational(self.lo),
            format_rational(self.hi),
            "]" if self.hi_closed else ")",
        )

    def to_json(self) -> dict:
        return {
            "lo": format_rational(self.lo),
            "hi": format_rational(self.hi),
            "lo_closed": self.lo_closed,
            "hi_closed": self.hi_closed,
        }

    @classmethod
    def from_json(cls, obj: dict) -> "IntervalQ":
        try:
            lo, hi = obj["lo"], obj["hi"]
        except (KeyError, TypeError) as exc:
            raise ValidationError(f"interval needs 'lo' and 'hi': {obj!r}") from exc
        return cls(
            as_rational(lo),
            as_rational(hi),
            bool(obj.get("lo_closed", True)),
            bool(obj.get("hi_closed", False)),
        )


# ---------------------------------------------------------------------------
# transversal sets


@dataclass(frozen=True)
class TransversalSet:
    """Pieces ``E_k`` ordered so that their mod-1 images ``F_k`` ascend."""

    pieces: tuple[IntervalQ, ...]
    images: tuple[IntervalQ, ...]

    @property
    def L(self) -> int:
        return len(self.pieces)

    @property
    def breakpoints(self) -> tuple[Fraction, ...]:
        return tuple(F.lo for F in self.images) + (self.images[-1].hi,)

    def indicator_sum(self, x) -> int:
        """``sum_n chi_E(x + n)`` at a rational point (1 a.e. when valid)."""
        x = as_rational(x)
        total = 0
        for E in self.pieces:
            for n in range(math.floor(E.lo - x) - 1, math.ceil(E.hi - x) + 2):
                total += (x + n) in E
        return total

    def to_json(self) -> dict:
        return {"intervals": [E.to_json() for E in self.pieces]}


def _mod1_image(E: IntervalQ) -> list[tuple[IntervalQ, IntervalQ]]:
    """Split ``E`` so every part has a non-wrapping image in [0, 1].

    Returns ``(part, image)`` pairs.
    """
    shift = math.floor(E.lo)
    lo, hi = E.lo - shift, E.hi - shift
    if hi <= 1:
        return [(E, IntervalQ(lo, hi))]
    if E.length == 1:
        # a full period: congruent to [0, 1) by a piecewise translation
        return [(E, IntervalQ(0, 1))]
    cut = Fraction(shift + 1)
    left = IntervalQ(E.lo, cut, E.lo_closed, False)
    right = IntervalQ(cut, E.hi, True, E.hi_closed)
    return [(left, IntervalQ(lo, 1)), (right, IntervalQ(0, hi - 1))]


def validate_transversal(pieces: Iterable) -> TransversalSet:
    """Check that the integer translates of ``pieces`` tile the line.

    ``pieces`` may hold :class:`IntervalQ` objects or ``(lo, hi)`` pairs.
    Endpoints are ignored (measure zero). A piece whose mod-1 image wraps
    around 1 without covering a full period is cut at the integer it
    straddles, so each returned piece is congruent to a single interval.
    """
    ivs = [p if isinstance(p, IntervalQ) else IntervalQ(*p) for p in pieces]
    if not ivs:
        raise ValidationError("a transversal set needs at least one piece")
    total = sum((E.length for E in ivs), Fraction(0))
    if total != 1:
        raise LengthError(f"total length is {total}, expected 1")

    parts = [pair for E in ivs for pair in _mod1_image(E)]
    parts.sort(key=lambda pair: pair[1].lo)
    cursor = Fraction(0)
    for E, F in parts:
        if F.lo < cursor:
            raise OverlapError(f"{E} overlaps another piece modulo 1 on ({F.lo}, {cursor})")
        if F.lo > cursor:
            raise GapError(f"the mod-1 images miss ({cursor}, {F.lo})")
        cursor = F.hi
    if cursor != 1:
        raise GapError(f"the mod-1 images miss ({cursor}, 1)")
    return TransversalSet(tuple(E for E, _ in parts), tuple(F for _, F in parts))


def transversal_from_json(obj) -> TransversalSet:
    if isinstance(obj, (str, bytes)):
        obj = json.loads(obj)
    try:
        raw = obj["intervals"]
    except (KeyError, TypeError) as exc:
        raise ValidationError("expected an object with an 'intervals' list") from exc
    return validate_transversal(IntervalQ.from_json(item) for item in raw)


# ---------------------------------------------------------------------------
# congruence data


@dataclass(frozen=True)
class CongruenceData:
    """Combinatorics of a transversal set used by the winding-number formula.

    ``lambdas[k-1]`` is the sorted tuple Δ_k (1-based ``k`` as in the
    formulas); ``omega`` holds the 1-based ``k`` with μ_k = 2.
    """

    L: int
    breakpoints: tuple[Fraction, ...]
    lambdas: tuple[tuple[int, ...], ...]
    s: tuple[Fraction, ...]
    pieces: tuple[IntervalQ, ...] = field(default=(), compare=False)

    def __post_init__(self):
        if len(self.lambdas) != self.L or len(self.s) != self.L:
            raise ValidationError("lambdas and s need one entry per piece")
        if len(self.breakpoints) != self.L + 1:
            raise ValidationError("need L + 1 breakpoints")
        for k, lam in enumerate(self.lambdas, start=1):
            if len(lam) not in (1, 2) or (len(lam) == 2 and lam[1] != lam[0] + 1):
                raise ValidationError(f"Δ_{k} = {lam} is not {{λ}} or {{λ, λ+1}}")

    @property
    def mu(self) -> tuple[int, ...]:
        return tuple(len(lam) for lam in self.lambdas)

    @property
    def omega(self) -> frozenset[int]:
        return frozenset(k for k, lam in enumerate(self.lambdas, start=1) if len(lam) == 2)

    @property
    def rho(self) -> int:
        return len(self.omega)

    @property
    def lambda01(self) -> int:
        return self.lambdas[-1][0] + 1

    def lam1(self, k: int) -> int:
        """λ_{k1}, with the convention λ_{01} = λ_{L1} + 1."""
        return self.lambda01 if k == 0 else self.lambdas[k - 1][0]

    def lam_mu(self, k: int) -> int:
        return self.lambdas[k - 1][-1]

    def jumps(self) -> list[tuple[int, int]]:
        """Per ``k``: (λ_{kμ_k} - λ_{k1}, λ_{k-1,1} - λ_{kμ_k})."""
        return [
            (self.lam_mu(k) - self.lam1(k), self.lam1(k - 1) - self.lam_mu(k))
            for k in range(1, self.L + 1)
        ]

    @property
    def nu(self) -> int:
        diffs = [abs(d) for pair in self.jumps() for d in pair if d != 0]
        return math.lcm(*diffs) if diffs else 1

    @property
    def window(self) -> Fraction:
        """Half-width ``(L + rho) / 2`` outside of which the index is nonzero."""
        return Fraction(self.L + self.rho, 2)

    def g_denominators(self) -> tuple[int, ...]:
        """G as the union over ``d`` of ``{(2l+1)/(2d) : l in Z}``."""
        return tuple(sorted({abs(d) for pair in self.jumps() for d in pair if d != 0}))

    def in_G(self, alpha) -> bool:
        q = as_rational(alpha)
        for d in self.g_denominators():
            x = 2 * q * d
            if x.denominator == 1 and x.numerator % 2 == 1:
                return True
        return False

    def G_points(self, lo, hi) -> list[Fraction]:
        """Members of G in the closed interval [lo, hi], sorted."""
        lo, hi = as_rational(lo), as_rational(hi)
        pts = set()
        for d in self.g_denominators():
            # (2l+1)/(2d) in [lo, hi]
            for j in range(math.ceil(2 * d * lo), math.floor(2 * d * hi) + 1):
                if j % 2:
                    pts.add(Fraction(j, 2 * d))
        return sorted(pts)


def _delta(E: IntervalQ) -> tuple[int, ...]:
    # |(λ - E) ∩ [0, 1]| > 0  <=>  E.lo < λ < E.hi + 1
    return tuple(range(math.floor(E.lo) + 1, math.ceil(E.hi + 1)))


def congruence_decompose(ts: TransversalSet) -> CongruenceData:
    lambdas, s = [], []
    a = ts.breakpoints
    for k, E in enumerate(ts.pieces, start=1):
        lam = _delta(E)
        if len(lam) == 2:
            s_k = min(lam[0] - E.lo, Fraction(1))
        elif len(lam) == 1:
            s_k = 1 - a[k - 1]
        else:  # pragma: no cover - excluded by validation
            raise ValidationError(f"piece {E} has |Δ| = {len(lam)}")
        if not (1 - a[k] <= s_k <= 1 - a[k - 1]):
            raise ValidationError(f"split point {s_k} outside 1 - F_{k}")
        lambdas.append(lam)
        s.append(s_k)
    return CongruenceData(ts.L, a, tuple(lambdas), tuple(s), ts.pieces)


# ---------------------------------------------------------------------------
# index


def _coerce_alpha(cd: CongruenceData, alpha):
    """Return ``alpha`` as an exact Fraction or a float, raising inside G."""
    if isinstance(alpha, float):
        if not math.isfinite(alpha):
            raise ValidationError(f"non-finite shift {alpha}")
        snapped = Fraction(alpha).limit_denominator(SNAP_DENOMINATOR)
        if abs(float(snapped) - alpha) <= G_TOLERANCE and cd.in_G(snapped):
            raise ExcludedAlphaError(f"alpha = {alpha} is (numerically) {snapped} in G")
        for d in cd.g_denominators():
            x = 2 * alpha * d
            odd = 2 * math.floor(x / 2) + 1
            if abs(x - odd) <= 2 * d * G_TOLERANCE:
                raise ExcludedAlphaError(f"alpha = {alpha} is within {G_TOLERANCE} of G")
        return alpha
    q = as_rational(alpha)
    if cd.in_G(q):
        raise ExcludedAlphaError(f"alpha = {q} lies in G")
    return q


def index_formula(cd: CongruenceData, alpha) -> int:
    """Winding number of the symbol curve about 0, as a floor sum."""
    a = _coerce_alpha(cd, alpha)
    total = 0
    for r1, r2 in cd.jumps():
        total += math.floor(a * r1 + HALF) + math.floor(a * r2 + HALF)
    return -total


def f_of_n(cd: CongruenceData, n: int) -> int:
    """The cell value ``f(n)``: the index on ``[(n-1)/(2ν), n/(2ν))``."""
    nu = cd.nu
    total = cd.rho * math.floor(Fraction(n - 1, 2 * nu) + HALF)
    for k in range(1, cd.L + 1):
        d = cd.lam1(k - 1) - cd.lam1(k)
        r = d - 1 if k in cd.omega else d
        if r == 0:
            continue
        if d == 0:
            raise UndefinedDirectionError(
                f"g({k}) is undefined: λ_{{{k - 1},1}} = λ_{{{k},1}}"
            )
        g = 1 if d > 0 else 0
        total += math.floor(Fraction(n - g, 2 * nu) * r + HALF)
    return -total


def riesz_basis(cd: CongruenceData, alpha) -> bool:
    """Whether exponentials at ``N0 ∪ alpha + N^-`` form a Riesz basis of L²(E).

    Same verdict as complete interpolation for the transversal space.
    """
    try:
        return index_formula(cd, alpha) == 0
    except ExcludedAlphaError:
        return False


# ---------------------------------------------------------------------------
# admissible region


@dataclass(frozen=True)
class AlphaRegion:
    """Index-annotated cells over ``[-W, W)`` plus the excluded G points.

    The admissible set is the union of index-0 cells minus ``excluded``.
    """

    cells: tuple[tuple[IntervalQ, int], ...]
    excluded: tuple[Fraction, ...]
    A: tuple[int, ...] = ()
    nu: int = 1
    window: Fraction = Fraction(0)

    def admissible_intervals(self) -> list[IntervalQ]:
        out = []
        ex = set(self.excluded)
        for iv, idx in self.cells:
            if idx != 0:
                continue
            inner = sorted(p for p in ex if iv.lo < p < iv.hi)
            bounds = [iv.lo] + inner + [iv.hi]
            for j in range(len(bounds) - 1):
                lo, hi = bounds[j], bounds[j + 1]
                lo_closed = (iv.lo_closed if j == 0 else False) and lo not in ex
                hi_closed = (iv.hi_closed if j == len(bounds) - 2 else False) and hi not in ex
                out.append(IntervalQ(lo, hi, lo_closed, hi_closed))
        return out

    def __contains__(self, alpha) -> bool:
        if not isinstance(alpha, float):
            alpha = as_rational(alpha)
        return any(alpha in iv for iv in self.admissible_intervals())

    def to_json(self) -> dict:
        return {
            "cells": [dict(iv.to_json(), index=idx) for iv, idx in self.cells],
            "excluded": [format_rational(p) for p in self.excluded],
            "admissible": [iv.to_json() for iv in self.admissible_intervals()],
            "A": list(self.A),
            "nu": self.nu,
            "window": format_rational(self.window),
        }

    @classmethod
    def from_json(cls, obj: dict) -> "AlphaRegion":
        cells = tuple((IntervalQ.from_json(c), int(c["index"])) for c in obj["cells"])
        return cls(
            cells,
            tuple(as_rational(p) for p in obj.get("excluded", ())),
            tuple(obj.get("A", ())),
            int(obj.get("nu", 1)),
            as_rational(obj.get("window", "0")),
        )


def cell_value(cd: CongruenceData, n: int) -> int:
    """``f(n)``, or the index at the cell midpoint where ``f`` is undefined."""
    try:
        return f_of_n(cd, n)
    except UndefinedDirectionError:
        nu = cd.nu
        return index_formula(cd, Fraction(2 * n - 1, 4 * nu))


def admissible_region(cd: CongruenceData) -> AlphaRegion:
    nu, W = cd.nu, cd.window
    n_max = 2 * nu * math.ceil(W)
    raw = []
    A = []
    for n in range(-n_max, n_max + 1):
        value = cell_value(cd, n)
        if value == 0:
            A.append(n)
        lo = max(Fraction(n - 1, 2 * nu), -W)
        hi = min(Fraction(n, 2 * nu), W)
        if lo < hi:
            raw.append([lo, hi, value])

    merged: list[list] = []
    for lo, hi, value in raw:
        if merged and merged[-1][2] == value and merged[-1][1] == lo and not cd.in_G(lo):
            merged[-1][1] = hi
        else:
            merged.append([lo, hi, value])

    cells = tuple((IntervalQ(lo, hi), value) for lo, hi, value in merged)
    excluded = tuple(
        p
        for iv, value in cells
        if value == 0
        for p in cd.G_points(iv.lo, iv.hi)
        if p in iv
    )
    return AlphaRegion(cells, excluded, tuple(A), nu, W)


def analyze(pieces: Sequence) -> tuple[TransversalSet, CongruenceData, AlphaRegion]:
    """Validate, decompose and solve in one call."""
    ts = validate_transversal(pieces)
    cd = congruence_decompose(ts)
    return ts, cd, admissible_region(cd)
