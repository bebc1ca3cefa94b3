"""Complete interpolation for spline spaces, finite Toeplitz sections and
reconstruction experiments.

The sample set is ``a + N0`` together with ``alpha + a + N^-`` where
``a = <m/2>``. Sampling ``f = sum_k d_k Theta(. - k)`` there gives a block
system whose only nontrivial block is the Toeplitz matrix
``[Theta(alpha + a + n - k)]``; its symbol is :func:`spline_symbol`.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence, Union

import numpy as np
import numpy.polynomial.polynomial as npoly
import scipy.linalg

from .errors import (
    HalfIntegerAlphaError,
    NearSingularSymbolError,
    NonIntegerExponentError,
    ValidationError,
    WindowError,
)
from .exactset import CongruenceData, TransversalSet
from .splinekernel import (
    bspline_eval,
    euler_frobenius,
    gm_coeffs,
    gm_poly,
    modified_euler_frobenius,
    zero_split,
)

SYMBOL_GRID = 1024
VANISH_TOL = 1e-12


def half_shift(m: int) -> Fraction:
    """``a = <m/2>``: 0 for even ``m``, 1/2 for odd ``m``."""
    return Fraction(m % 2, 2)


def _unit(x):
    return np.exp(2j * np.pi * np.asarray(x, dtype=float))


# ---------------------------------------------------------------------------
# Psi-dagger and the fundamental interpolant


def _lattice_samples(m: int) -> dict[int, float]:
    """Nonzero ``Q_m(a + n)`` keyed by ``n``."""
    a = half_shift(m)
    return {n: float(bspline_eval(m, a + n)) for n in range(-1, m + 1) if bspline_eval(m, a + n) != 0}


def psi_dagger_sum(m: int, x):
    """``sum_n Q_m(a + n) e^{2 pi i n x}`` from the B-spline samples."""
    z = _unit(x)
    return sum(v * z**n for n, v in _lattice_samples(m).items())


def psi_dagger_closed(m: int, x):
    """The same through Euler-Frobenius polynomials at ``z = e^{2 pi i x}``."""
    z = _unit(x)
    if m % 2 == 0:
        return z * npoly.polyval(z, euler_frobenius(m - 1).to_float()) / math.factorial(m - 1)
    return npoly.polyval(z, modified_euler_frobenius(m - 1).to_float()) / (
        2 ** (m - 1) * math.factorial(m - 1)
    )


def psi_dagger(m: int, x):
    """Symbol of the lattice samples; both routes must agree to 1e-10."""
    if m < 2:
        raise ValidationError("m must be >= 2")
    direct, closed = psi_dagger_sum(m, x), psi_dagger_closed(m, x)
    if np.max(np.abs(direct - closed)) > 1e-10:  # pragma: no cover - identity check
        raise NearSingularSymbolError("lattice symbol routes disagree")
    return direct


@dataclass(frozen=True)
class ThetaTable:
    """Coefficients ``c_v``, ``v = -K..K``, of the fundamental interpolant.

    ``|c_v| <= decay_bound * ratio^|v|`` (fitted); ``aliasing`` bounds the
    periodisation error of the discrete transform.
    """

    m: int
    K: int
    coefficients: np.ndarray
    decay_bound: float
    ratio: float
    aliasing: float

    def coeff(self, v: int) -> float:
        return float(self.coefficients[v + self.K]) if abs(v) <= self.K else 0.0

    def truncation_bound(self) -> float:
        r = self.ratio
        if r == 0:
            return 0.0
        return 2 * self.decay_bound * r ** (self.K + 1) / (1 - r)


NOISE_FLOOR = 1e-13


def _fit_decay(c: np.ndarray, K: int) -> tuple[float, float]:
    """Geometric envelope ``(bound, r)`` of coefficients already cleared of noise."""
    mags = np.abs(c)
    v = np.abs(np.arange(-K, K + 1))
    keep = mags > 0
    levels = np.unique(v[keep])
    if levels.size < 2:
        # one nonzero level |v| = v0: any r > 0 with bound = max / r^v0 is an envelope
        r = 0.0 if levels[0] == 0 else 1e-16
        return float(mags.max() / r ** levels[0]) if r else float(mags.max()), r
    slope = np.polyfit(v[keep], np.log(mags[keep]), 1)[0]
    r = float(min(np.exp(slope), 1.0))
    bound = float(np.max(mags[keep] / r ** v[keep]))
    return bound, r


def theta_coeffs(m: int, K: int = 64, grid: int = 1024) -> ThetaTable:
    """Fourier coefficients of ``1 / psi_dagger`` by a length-``grid`` FFT."""
    if grid < max(4 * K, 1024) or grid & (grid - 1):
        raise ValidationError("grid must be a power of two >= max(4K, 1024)")
    x = np.arange(grid) / grid
    psi = psi_dagger(m, x)
    if np.min(np.abs(psi)) < 1e-8:
        raise NearSingularSymbolError("lattice symbol nearly vanishes on the grid")
    spectrum = np.fft.fft(1.0 / psi) / grid
    c = np.real(np.concatenate([spectrum[-K:], spectrum[: K + 1]]))
    # below this the FFT returns rounding noise, not the coefficient
    c[np.abs(c) < NOISE_FLOOR * np.abs(c).max()] = 0.0
    bound, r = _fit_decay(c, K)
    aliasing = 0.0 if r == 0 else 2 * bound * r ** (grid - K) / (1 - r)
    return ThetaTable(m, K, c, bound, r, aliasing)


def theta_values(table: ThetaTable, x) -> np.ndarray:
    """``Theta`` at many points, no window check; points past the table return the truncated sum."""
    x = np.asarray(x, dtype=float)
    out = np.zeros_like(x)
    for v, cv in zip(range(-table.K, table.K + 1), table.coefficients):
        if cv != 0:
            out += cv * bspline_eval(table.m, x - v)
    return out


def theta_eval(table: ThetaTable, m: int, x: float) -> float:
    if m != table.m:
        raise ValidationError(f"table was built for m = {table.m}")
    if abs(x) > table.K - m:
        raise WindowError(f"|x| = {abs(x)} exceeds the safe window {table.K - m}")
    return float(theta_values(table, x))


# ---------------------------------------------------------------------------
# spline symbol and index


@dataclass(frozen=True)
class SplineConfig:
    m: int
    alpha: float

    def __post_init__(self):
        if self.m < 2:
            raise ValidationError("m must be >= 2")

    @property
    def a(self) -> Fraction:
        return half_shift(self.m)

    @property
    def alpha_floor(self) -> int:
        return math.floor(self.alpha)

    @property
    def alpha_frac(self) -> float:
        return self.alpha - math.floor(self.alpha)

    def symbol_data(self) -> tuple[float, int, float, np.ndarray]:
        """``(beta, z_power, scale, denominator coeffs)`` for the closed-form symbol."""
        fl, a0 = self.alpha_floor, self.alpha_frac
        if self.m % 2 == 0:
            return a0, fl + 1, 1.0, euler_frobenius(self.m - 1).to_float()
        a1 = (a0 + 0.5) % 1.0
        power = self.alpha - a1 + 0.5
        expected = fl + math.floor(a0 + 0.5)
        if abs(power - expected) > 1e-9:
            raise NonIntegerExponentError(f"exponent {power} is not the integer {expected}")
        return a1, expected, -(2.0 ** (self.m - 1)), modified_euler_frobenius(self.m - 1).to_float()


def spline_symbol(cfg: SplineConfig, x):
    """Symbol ``sum_n Theta(alpha + a + n) e^{2 pi i n x}`` in closed form."""
    beta, power, scale, den = cfg.symbol_data()
    z = _unit(x)
    return scale * npoly.polyval(z, gm_coeffs(cfg.m, beta)) / (z**power * npoly.polyval(z, den))


def spline_symbol_direct(cfg: SplineConfig, x):
    """Same symbol as ``sum_j Q_m(alpha + a + j) z^j / psi_dagger``."""
    z = _unit(x)
    shift = cfg.alpha + float(cfg.a)
    lo = math.floor(-shift) - 1
    num = sum(bspline_eval(cfg.m, shift + j) * z**j for j in range(lo, lo + cfg.m + 3))
    return num / psi_dagger_sum(cfg.m, x)


def _rational_beta(beta: float) -> Fraction:
    return Fraction(beta).limit_denominator(1 << 40)


def symbol_winding(values: np.ndarray) -> int:
    """Winding number about 0 of a closed sampled curve (first sample not repeated)."""
    z = np.append(values, values[:1])
    total = float(np.sum(np.angle(z[1:] / z[:-1]))) / (2 * np.pi)
    return int(round(total))


def spline_index(cfg: SplineConfig, check: bool = True) -> int:
    """Winding number of the spline symbol: zeros minus poles inside the disc.

    With ``check`` the count is compared with a sampled winding number.
    """
    a0 = cfg.alpha_frac
    if a0 == 0.5:
        raise HalfIntegerAlphaError(f"<alpha> = 1/2 for alpha = {cfg.alpha}; the symbol vanishes")
    beta, power, _, den = cfg.symbol_data()
    numerator = gm_poly(cfg.m, _rational_beta(beta))
    zeros = zero_split(numerator).inside
    denom = euler_frobenius(cfg.m - 1) if cfg.m % 2 == 0 else modified_euler_frobenius(cfg.m - 1)
    poles = (zero_split(denom).inside if denom.degree >= 1 else 0) + power
    index = zeros - poles
    if check:
        numeric = symbol_winding(spline_symbol(cfg, np.arange(4 * SYMBOL_GRID) / (4 * SYMBOL_GRID)))
        if numeric != index:
            raise NearSingularSymbolError(f"zero/pole count {index} != sampled winding {numeric}")
    return index


@dataclass(frozen=True)
class Verdict:
    cis: bool
    reason: Optional[str] = None
    index: Optional[int] = None
    min_modulus: float = 0.0

    def to_json(self) -> dict:
        out = {"verdict": "CIS" if self.cis else "NotCIS", "min_modulus": self.min_modulus}
        if self.reason:
            out["reason"] = self.reason
        if self.index is not None:
            out["index"] = self.index
        return out


def cis_classify_spline(cfg: SplineConfig) -> Verdict:
    x = np.arange(SYMBOL_GRID) / SYMBOL_GRID
    mod = float(np.min(np.abs(spline_symbol(cfg, x))))
    if cfg.alpha_frac == 0.5 or mod <= VANISH_TOL:
        return Verdict(False, "SymbolVanishes", None, mod)
    k = spline_index(cfg)
    if k != 0:
        return Verdict(False, "NonzeroIndex", k, mod)
    return Verdict(True, None, 0, mod)


# ---------------------------------------------------------------------------
# finite sections


@dataclass(frozen=True)
class SectionReport:
    N: int
    singular_min: float
    singular_max: float
    cond: float

    def to_json(self) -> dict:
        return {
            "N": self.N,
            "singular_min": self.singular_min,
            "singular_max": self.singular_max,
            "cond": self.cond if math.isfinite(self.cond) else "inf",
        }


def section_from_coefficients(coeff, N: int) -> np.ndarray:
    """``N x N`` matrix with entry ``(r, c) = coeff(r - c)``."""
    column = np.array([coeff(d) for d in range(N)], dtype=complex)
    row = np.array([coeff(-d) for d in range(N)], dtype=complex)
    return scipy.linalg.toeplitz(column, row)


def _report(mat: np.ndarray, N: int) -> SectionReport:
    s = np.linalg.svd(mat, compute_uv=False)
    smax, smin = float(s[0]), float(s[-1])
    cond = smax / smin if smin > 0 else math.inf
    return SectionReport(N, smin, smax, cond)


def toeplitz_section(symbol_samples: Sequence[complex], N: int) -> SectionReport:
    """Singular values of the ``N x N`` section of the Toeplitz operator with the given symbol.

    ``symbol_samples[k]`` is the symbol at ``x = k / len(symbol_samples)``.
    """
    samples = np.asarray(symbol_samples, dtype=complex)
    if N < 4:
        raise ValidationError("N must be >= 4")
    if len(samples) < 4 * N:
        raise ValidationError("symbol grid must have at least 4N points")
    fourier = np.fft.fft(samples) / len(samples)
    return _report(section_from_coefficients(lambda d: fourier[d % len(samples)], N), N)


def spline_section(cfg: SplineConfig, N: int, grid: Optional[int] = None) -> SectionReport:
    grid = grid or max(SYMBOL_GRID, 8 * N)
    return toeplitz_section(spline_symbol(cfg, np.arange(grid) / grid), N)


def condition_sweep(cfg: SplineConfig, sections: Sequence[int]) -> list[SectionReport]:
    return [spline_section(cfg, N) for N in sections]


# ---------------------------------------------------------------------------
# transversal generator


def transversal_kernel(pieces: Sequence, x) -> np.ndarray:
    """Inverse Fourier transform of the indicator of a union of intervals.

    ``sum (e^{2 pi i hi x} - e^{2 pi i lo x}) / (2 pi i x)`` with the value
    at 0 equal to the total length.
    """
    x = np.asarray(x, dtype=float)
    out = np.zeros(x.shape, dtype=complex)
    small = np.abs(x) < 1e-300
    safe = np.where(small, 1.0, x)
    for iv in pieces:
        lo, hi = float(iv.lo), float(iv.hi)
        out += np.where(
            small,
            hi - lo,
            (np.exp(2j * np.pi * hi * safe) - np.exp(2j * np.pi * lo * safe)) / (2j * np.pi * safe),
        )
    return out


# ---------------------------------------------------------------------------
# reconstruction


@dataclass(frozen=True)
class ReconReport:
    generator: str
    alpha: float
    N: int
    seed: int
    max_error: float
    inner_error: float
    rms_error: float
    residual: float
    cond: float

    def to_json(self) -> dict:
        return {
            "generator": self.generator,
            "alpha": self.alpha,
            "N": self.N,
            "seed": self.seed,
            "max_error": self.max_error,
            "inner_error": self.inner_error,
            "rms_error": self.rms_error,
            "residual": self.residual,
            "cond": self.cond if math.isfinite(self.cond) else "inf",
        }


Generator = Union[int, TransversalSet, CongruenceData]


def _kernel_for(generator: Generator, theta_K: int = 96):
    """``(name, offset a, kernel)`` where kernel evaluates the interpolating generator."""
    if isinstance(generator, int):
        m = generator
        table = theta_coeffs(m, theta_K, 4096)
        reach = table.K - m

        def kernel(x):
            x = np.asarray(x, dtype=float)
            return np.where(np.abs(x) <= reach, theta_values(table, np.clip(x, -reach, reach)), 0.0)

        return f"spline m={m}", float(half_shift(m)), kernel
    pieces = generator.pieces
    return "transversal", 0.0, lambda x: transversal_kernel(pieces, x)


def reconstruct_experiment(
    generator: Generator, alpha: float, N: int, seed: int = 42, pad: Optional[int] = None
) -> ReconReport:
    """Recover coefficients from samples on ``a + N0`` and ``alpha + a + N^-``.

    Coefficients are drawn uniformly from [-1, 1] on a window ``pad`` wider
    than the ``2N + 1`` unknowns, so the truncated system sees the pollution
    a real finite measurement would. The truncated system on ``[-N, N]`` is
    solved by least squares. ``max_error`` covers the window, ``inner_error``
    only ``|k| <= N/2``, and ``rms_error`` is the root-mean-square over the
    window: a boundary layer of fixed width makes it fall like ``N^-1/2``
    when the sampling operator is invertible.
    """
    name, a, kernel = _kernel_for(generator)
    pad = N if pad is None else pad
    rng = np.random.default_rng(seed)
    k_all = np.arange(-N - pad, N + pad + 1)
    d_all = rng.uniform(-1.0, 1.0, size=k_all.size)

    n = np.arange(-N, N + 1)
    points = np.where(n < 0, alpha + a + n, a + n)
    full = kernel(points[:, None] - k_all[None, :])
    samples = full @ d_all

    inside = (k_all >= -N) & (k_all <= N)
    system = full[:, inside]
    truth = d_all[inside]
    est, *_ = np.linalg.lstsq(system, samples, rcond=None)
    err = np.abs(est - truth)
    inner = np.abs(n) <= N // 2
    s = np.linalg.svd(system, compute_uv=False)
    cond = float(s[0] / s[-1]) if s[-1] > 0 else math.inf
    return ReconReport(
        name,
        float(alpha),
        N,
        seed,
        float(err.max()),
        float(err[inner].max()),
        float(np.sqrt(np.mean(err**2))),
        float(np.linalg.norm(system @ est - samples)),
        cond,
    )


# ---------------------------------------------------------------------------
# reports


@dataclass
class SweepReport:
    m: int
    alpha: float
    sections: list[SectionReport] = field(default_factory=list)
    recon: list[ReconReport] = field(default_factory=list)
    verdict: Optional[Verdict] = None

    def to_json(self) -> dict:
        out = {
            "alpha": self.alpha,
            "m": self.m,
            "N": [s.N for s in self.sections] or [r.N for r in self.recon],
            "cond": [s.to_json()["cond"] for s in self.sections],
            "recon_error": [r.rms_error for r in self.recon],
        }
        if self.verdict is not None:
            out["verdict"] = self.verdict.to_json()["verdict"]
        return out

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["N", "singular_min", "singular_max", "cond"])
        for s in self.sections:
            w.writerow([s.N, repr(s.singular_min), repr(s.singular_max), repr(s.cond)])
        return buf.getvalue()
