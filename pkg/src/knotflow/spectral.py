"""Fourier-side tools for periodic fields and curves.

Transforms between sample grids and coefficient arrays, the diagonal
multiplier of the leading gradient operator, fractional Sobolev norms,
an a-priori inequality check with its explicit constant, spectral decay
diagnostics, and the Sobolev algebra product bound.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.special import gammaln

from . import specfun
from .curves import ClosedCurve, FieldSamples
from .quadrature import pairwise_sum

# Relative amplitude below which a mode counts as absent.
FLOOR_REL = 1e-13
# Least-squares decay fit needs this many modes at |k| >= FIT_MIN_K.
FIT_MIN_POINTS = 6
FIT_MIN_K = 4
# A run of this many empty top modes counts as spectral collapse.
COLLAPSE_RUN = 8


@dataclass(frozen=True)
class Spectrum:
    """Finite two-sided coefficient table, row k + modes for k = -N..N."""

    coeffs: np.ndarray

    def __post_init__(self):
        c = np.asarray(self.coeffs, dtype=complex)
        if c.ndim == 1:
            c = c[:, None]
        if c.ndim != 2 or c.shape[0] % 2 != 1:
            raise ValueError("coeffs must be (2N+1, dim)")
        c = c.copy()
        c.flags.writeable = False
        object.__setattr__(self, "coeffs", c)

    @property
    def modes(self) -> int:
        return (self.coeffs.shape[0] - 1) // 2

    @property
    def dim(self) -> int:
        return self.coeffs.shape[1]

    @property
    def wavenumbers(self) -> np.ndarray:
        n = self.modes
        return np.arange(-n, n + 1)

    def coeff(self, k: int) -> np.ndarray:
        if abs(k) > self.modes:
            return np.zeros(self.dim, dtype=complex)
        return self.coeffs[k + self.modes]

    def scaled(self, factors: np.ndarray) -> "Spectrum":
        """Multiply coefficient k by factors[k + N]."""
        f = np.asarray(factors)
        if f.shape[0] != self.coeffs.shape[0]:
            raise ValueError("factor table length mismatch")
        return Spectrum(self.coeffs * f[:, None])


def analyze(samples) -> Spectrum:
    """Forward transform of real samples; keeps modes |k| <= (m-1)//2."""
    values = samples.values if isinstance(samples, FieldSamples) else np.asarray(samples, dtype=float)
    if values.ndim == 1:
        values = values[:, None]
    m = values.shape[0]
    n = (m - 1) // 2
    table = np.fft.fft(values, axis=0) / m
    rows = np.concatenate([table[m - n:], table[: n + 1]], axis=0)
    return Spectrum(rows)


def synthesize(spectrum: Spectrum, m: int) -> FieldSamples:
    """Evaluate on the uniform m-grid. Refuses grids that alias."""
    n = spectrum.modes
    if m < 2 * n + 1:
        raise ValueError("grid of %d points aliases %d modes" % (m, n))
    table = np.zeros((m, spectrum.dim), dtype=complex)
    table[: n + 1] = spectrum.coeffs[n:]
    if n > 0:
        table[m - n:] = spectrum.coeffs[:n]
    values = np.fft.ifft(table * m, axis=0)
    scale = np.max(np.abs(values)) if m else 0.0
    if scale > 0 and np.max(np.abs(values.imag)) > 1e-9 * scale:
        raise ValueError("spectrum does not represent a real field")
    return FieldSamples(values.real)


def curve_spectrum(curve: ClosedCurve) -> Spectrum:
    return Spectrum(curve.coeffs)


def q_symbol(ks: np.ndarray, alpha: float) -> np.ndarray:
    """Diagonal symbol of the leading operator on mode k.

    A single complex mode gamma = e^{2 pi i k x} v fed through the
    truncated integrand and extrapolated in the cutoff gives exactly
    (2 pi)^alpha * q_k * |k|^(alpha+1) times v, with positive sign; the
    sign is forced by the integrand's even part being pointwise >= 0.
    """
    ks = np.asarray(ks)
    qs = specfun.q_k_many(ks, alpha)
    return (2.0 * np.pi) ** alpha * qs * np.abs(ks).astype(float) ** (alpha + 1)


def apply_q_multiplier(spectrum: Spectrum, alpha: float) -> Spectrum:
    if not 2.0 < alpha < 3.0:
        raise ValueError("alpha must lie in (2, 3)")
    return spectrum.scaled(q_symbol(spectrum.wavenumbers, alpha))


def derivative(spectrum: Spectrum, order: int = 1) -> Spectrum:
    return spectrum.scaled((2j * np.pi * spectrum.wavenumbers) ** order)


def sobolev_norm(spectrum: Spectrum, s: float) -> float:
    """H^s norm: sqrt of sum over k of (1+k^2)^s |f_hat(k)|^2."""
    if s < 0:
        raise ValueError("s must be nonnegative")
    k = spectrum.wavenumbers
    weights = (1.0 + k.astype(float) ** 2) ** s
    terms = weights * np.sum(np.abs(spectrum.coeffs) ** 2, axis=1)
    return float(np.sqrt(pairwise_sum(terms)))


def cor42_constant(alpha: float, k_max: int = 1024) -> tuple[float, int]:
    """Explicit constant of the a-priori derivative bound.

    Returns (constant, argmin); argmin 0 marks the large-k asymptote.
    The infimum is taken over q_k^2 (2 pi)^-6 2^(2-alpha) for
    1 <= k <= k_max together with the asymptotic value.
    """
    ks = np.arange(1, k_max + 1)
    qs = specfun.q_k_many(ks, alpha)
    vals = qs ** 2 * (2.0 * np.pi) ** -6 * 2.0 ** (2.0 - alpha)
    q_inf = specfun.q_asymptote(alpha)
    tail = q_inf ** 2 * (2.0 * np.pi) ** -6 * 2.0 ** (2.0 - alpha)
    i = int(np.argmin(vals))
    if vals[i] <= tail:
        return float(vals[i] ** -0.5), int(ks[i])
    return float(tail ** -0.5), 0


def cor42_check(curve: ClosedCurve, alpha: float, l: int, m_index: float,
                k_max: int | None = None) -> tuple[float, float, float]:
    """Both sides of the derivative bound plus its constant.

    lhs is the H^(m+alpha-2) norm of the (l+3)rd derivative, rhs the
    H^m norm of the lth derivative of the multiplier image.  The claim
    under test is lhs <= constant * rhs.
    """
    if l < 0 or m_index < 0:
        raise ValueError("l and m must be nonnegative")
    spec = curve_spectrum(curve)
    if k_max is None:
        k_max = max(1024, 4 * spec.modes)
    lhs = sobolev_norm(derivative(spec, l + 3), m_index + alpha - 2.0)
    rhs = sobolev_norm(derivative(apply_q_multiplier(spec, alpha), l), m_index)
    const, _ = cor42_constant(alpha, k_max)
    return lhs, rhs, const


@dataclass(frozen=True)
class DecayDiagnostics:
    decay_rate: float
    fit_quality: float
    factorial_ratios: tuple
    verdict: str


def _mode_amplitudes(curve: ClosedCurve, band: int) -> np.ndarray:
    """RMS of the +-k coefficient pair, index k-1 for k = 1..band."""
    n = curve.modes
    amps = np.zeros(band)
    for k in range(1, band + 1):
        if k <= n:
            plus = curve.coeff(k)
            minus = curve.coeff(-k)
            amps[k - 1] = np.sqrt(0.5 * (np.sum(np.abs(plus) ** 2)
                                         + np.sum(np.abs(minus) ** 2)))
    return amps


def _factorial_ratios(amps: np.ndarray, beta: float, r0: float,
                      j_max: int = 24) -> np.ndarray:
    """sup-free table of ||d^j gamma|| r0^j / j! in the H^(1+beta) norm.

    Computed in log space; amplitudes at zero contribute nothing.
    """
    ks = np.arange(1, amps.size + 1, dtype=float)
    mask = amps > 0
    if not np.any(mask) or r0 <= 0:
        return np.zeros(j_max + 1)
    log_amp = np.log(amps[mask])
    log_k = np.log(2.0 * np.pi * ks[mask])
    log_weight = (1.0 + beta) * np.log1p(ks[mask] ** 2)
    out = np.zeros(j_max + 1)
    for j in range(j_max + 1):
        expo = 2.0 * (j * log_k + log_amp) + log_weight
        top = np.max(expo)
        log_norm = 0.5 * (top + np.log(np.sum(np.exp(expo - top))))
        out[j] = np.exp(log_norm + j * np.log(r0) - gammaln(j + 1))
    return out


def decay_diagnostics(curve: ClosedCurve, beta: float,
                      band: int | None = None) -> DecayDiagnostics:
    """Classify the spectral decay of a curve.

    Fits log amplitude against k on modes k >= 4 that sit above the
    round-off floor.  When too few such modes exist but the stored band
    shows a long run of empty top modes, the spectrum has collapsed
    below measurement resolution; the reported rate is then the largest
    r with amp_k <= peak * exp(-r (k - k_peak)) for every k, and
    fit_quality is the fraction of modes obeying that envelope (1.0 by
    construction) rather than a regression quality.
    """
    if band is None:
        band = max(curve.modes, 16)
    amps = _mode_amplitudes(curve, band)
    scale = float(np.max(amps)) if amps.size else 0.0
    if scale <= 0.0:
        return DecayDiagnostics(0.0, 0.0, (), "inconclusive")
    floor = FLOOR_REL * scale
    ks = np.arange(1, band + 1)
    above = amps > floor
    fit_mask = above & (ks >= FIT_MIN_K)

    if np.count_nonzero(fit_mask) >= FIT_MIN_POINTS:
        x = ks[fit_mask].astype(float)
        y = np.log(amps[fit_mask])
        design = np.column_stack([np.ones_like(x), x])
        sol, *_ = np.linalg.lstsq(design, y, rcond=None)
        resid = y - design @ sol
        total = y - np.mean(y)
        denom = float(total @ total)
        quality = 1.0 - float(resid @ resid) / denom if denom > 0 else 0.0
        rate = float(-sol[1])
        r0 = 0.8 * rate / (2.0 * np.pi)
        ratios = _factorial_ratios(amps, beta, r0)
        bounded = ratios.size > 0 and np.max(ratios) <= 10.0 * ratios[0]
        if rate > 0 and quality >= 0.99 and bounded:
            verdict = "exponential"
        else:
            verdict = "subexponential"
        return DecayDiagnostics(rate, quality, tuple(ratios), verdict)

    last_active = int(ks[above][-1]) if np.any(above) else 0
    if band - last_active >= COLLAPSE_RUN:
        k_peak = int(ks[np.argmax(amps)])
        tail = ks > k_peak
        if np.any(tail):
            gaps = np.log(scale / np.maximum(amps[tail], floor))
            rate = float(np.min(gaps / (ks[tail] - k_peak)))
        else:
            rate = np.log(1.0 / FLOOR_REL) / max(band - k_peak, 1)
        envelope = scale * np.exp(-rate * (ks[tail] - k_peak))
        ok = np.maximum(amps[tail], floor) <= envelope * (1.0 + 1e-12)
        quality = float(np.mean(ok)) if np.any(tail) else 1.0
        r0 = 0.8 * rate / (2.0 * np.pi)
        ratios = _factorial_ratios(amps, beta, r0)
        return DecayDiagnostics(rate, quality, tuple(ratios), "exponential")

    return DecayDiagnostics(0.0, 0.0, (), "inconclusive")


def banach_product_check(f: Spectrum, g: Spectrum, m: int) -> tuple[float, float]:
    """H^m norm of the pointwise product against the product of norms.

    Returns (lhs, rhs) with lhs = ||fg||_{H^m} and rhs = ||f|| ||g||;
    the algebra property says lhs <= C_m * rhs for a finite C_m.
    """
    if f.dim != 1 or g.dim != 1:
        raise ValueError("product check expects scalar spectra")
    if m < 1:
        raise ValueError("m must be at least 1")
    prod = np.convolve(f.coeffs[:, 0], g.coeffs[:, 0])
    lhs = sobolev_norm(Spectrum(prod[:, None]), m)
    rhs = sobolev_norm(f, m) * sobolev_norm(g, m)
    return lhs, rhs
