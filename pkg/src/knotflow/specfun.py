"""Special functions of the repulsion exponent.

Everything here reduces to one-dimensional singular integrals on the half
line: the fractional sine integral Si_beta, its arch sums lambda_k and the
limit lambda_inf, and the symbol constants q_k of the linearized variation
operator.  Near zero the integrands are opened up analytically (Taylor
panel on [0, 1e-2]); the rest is composite Gauss quadrature on graded
panels, with per-arch prefix sums cached per exponent so large-k requests
stay cheap.  Caches are guarded by a lock; results are deterministic.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass

import numpy as np

from .quadrature import gauss_legendre, log_panel_rule

TAYLOR_PANEL = 1e-2
_ARCH_ORDER = 16
_LOCK = threading.Lock()
_SI_PREFIX: dict[float, np.ndarray] = {}
_Q_PREFIX: dict[float, np.ndarray] = {}


@dataclass(frozen=True)
class AlphaParams:
    """Repulsion exponent alpha in (2, 3) and its reduced exponent beta."""

    alpha: float
    beta: float

    def __post_init__(self):
        if not (2.0 < self.alpha < 3.0):
            raise ValueError("alpha must lie in (2, 3)")
        if self.beta != self.alpha - 2.0:
            raise ValueError("beta must equal alpha - 2 exactly")

    @classmethod
    def from_alpha(cls, alpha: float) -> "AlphaParams":
        alpha = float(alpha)
        return cls(alpha=alpha, beta=alpha - 2.0)


def _check_beta(beta: float) -> float:
    beta = float(beta)
    if not (0.0 < beta < 1.0):
        raise ValueError("beta must lie in (0, 1)")
    return beta


def _si_head(x: np.ndarray, beta: float) -> np.ndarray:
    """Si_beta on [0, TAYLOR_PANEL] by termwise integration of sin's series."""
    x = np.asarray(x, dtype=float)
    out = np.zeros_like(x)
    sign = 1.0
    fact = 1.0
    for j in range(6):
        p = 2 * j + 1
        fact *= 1.0 if j == 0 else (p - 1) * p
        out += sign * x ** (p - beta) / (fact * (p - beta))
        sign = -sign
    return out


def _si_first_arch(x: np.ndarray, beta: float) -> np.ndarray:
    """Si_beta for 0 <= x <= pi: Taylor head plus graded-panel Gauss tail."""
    x = np.asarray(x, dtype=float)
    out = np.zeros_like(x)
    small = x <= TAYLOR_PANEL
    out[small] = _si_head(x[small], beta)
    big = ~small
    if np.any(big):
        xb = x[big]
        head = _si_head(np.full_like(xb, TAYLOR_PANEL), beta)
        n_panels = 12
        edges = TAYLOR_PANEL * (xb[:, None] / TAYLOR_PANEL) ** np.linspace(0.0, 1.0, n_panels + 1)[None, :]
        xg, wg = gauss_legendre(8)
        mid = 0.5 * (edges[:, 1:] + edges[:, :-1])
        half = 0.5 * (edges[:, 1:] - edges[:, :-1])
        nodes = mid[:, :, None] + half[:, :, None] * xg[None, None, :]
        vals = np.sin(nodes) * nodes ** (-1.0 - beta)
        tail = np.add.reduce((vals * (half[:, :, None] * wg[None, None, :])).reshape(len(xb), -1), axis=1)
        out[big] = head + tail
    return out


def _si_arch_integrals(j_lo: int, j_hi: int, beta: float) -> np.ndarray:
    """Integrals of sin(t) t^{-1-beta} over arches [j pi, (j+1) pi)."""
    js = np.arange(j_lo, j_hi)
    xg, wg = gauss_legendre(_ARCH_ORDER)
    a = js * np.pi
    nodes = (a[:, None] + 0.5 * np.pi) + 0.5 * np.pi * xg[None, :]
    vals = np.sin(nodes) * nodes ** (-1.0 - beta)
    return np.add.reduce(vals * (0.5 * np.pi * wg[None, :]), axis=1)


def _si_prefix(beta: float, j_max: int) -> np.ndarray:
    """Cached values Si_beta(j pi) for j = 0..j_max."""
    with _LOCK:
        prefix = _SI_PREFIX.get(beta)
        if prefix is None or len(prefix) <= j_max:
            have = 1 if prefix is None else len(prefix)
            target = max(j_max + 1, 64, 2 * have)
            if prefix is None:
                prefix = np.array([0.0, float(_si_first_arch(np.array([np.pi]), beta)[0])])
                have = 2
            arch = _si_arch_integrals(have - 1, target - 1, beta)
            prefix = np.concatenate([prefix, prefix[-1] + np.cumsum(arch)])
            _SI_PREFIX[beta] = prefix
        return prefix


def si_beta_many(x: np.ndarray, beta: float) -> np.ndarray:
    """Vectorized Si_beta(x) = int_0^x sin(t) t^{-1-beta} dt, odd in x."""
    beta = _check_beta(beta)
    x = np.asarray(x, dtype=float)
    sign = np.sign(x)
    ax = np.abs(x)
    out = np.zeros_like(ax)
    first = ax <= np.pi
    if np.any(first):
        out[first] = _si_first_arch(ax[first], beta)
    rest = ~first
    if np.any(rest):
        xr = ax[rest]
        js = np.floor(xr / np.pi).astype(int)
        prefix = _si_prefix(beta, int(js.max()))
        xg, wg = gauss_legendre(_ARCH_ORDER)
        a = js * np.pi
        mid = 0.5 * (a + xr)
        half = 0.5 * (xr - a)
        nodes = mid[:, None] + half[:, None] * xg[None, :]
        vals = np.where(half[:, None] > 0.0, np.sin(nodes) * nodes ** (-1.0 - beta), 0.0)
        out[rest] = prefix[js] + np.add.reduce(vals * (half[:, None] * wg[None, :]), axis=1)
    return sign * out


def si_beta(x: float, beta: float) -> float:
    """Truncated fractional sine integral; odd extension to x < 0."""
    return float(si_beta_many(np.array([float(x)]), beta)[0])


def si_beta_sup(beta: float) -> float:
    """sup over x >= 0 of Si_beta, attained at the end of the first arch."""
    beta = _check_beta(beta)
    return si_beta(np.pi, beta)


def lambda_k(k: int, alpha: float) -> float:
    """Partial symbol integral: int_0^{k pi} sin(t) t^{1-alpha} dt."""
    params = AlphaParams.from_alpha(alpha)
    k = int(k)
    if k < 0:
        raise ValueError("k must be nonnegative")
    if k == 0:
        return 0.0
    return si_beta(k * np.pi, params.beta)


def lambda_inf(alpha: float, arches: int = 50) -> float:
    """Limit of lambda_k, summed arch-by-arch with repeated averaging.

    The arch integrals alternate in sign with decreasing modulus, so the
    partial sums bracket the limit; iterated averaging of the last ~30
    partial sums accelerates the alternating tail far past double
    precision needs.
    """
    params = AlphaParams.from_alpha(alpha)
    prefix = _si_prefix(params.beta, arches + 2)
    partial = prefix[1:arches + 2].copy()
    tail = partial[arches // 2:]
    while len(tail) > 1:
        tail = 0.5 * (tail[1:] + tail[:-1])
    return float(tail[0])


def _q_head(alpha: float) -> float:
    """Integral over [0, TAYLOR_PANEL] of (u^2 - 2 + 2 cos u) u^{-2-alpha}.

    Uses the first four terms of the cosine series for the numerator; the
    omitted term is below 1e-24 at the panel edge.
    """
    d = TAYLOR_PANEL
    total = 0.0
    sign = 1.0
    fact = 24.0
    for j in range(4):
        p = 2 * j + 4
        if j > 0:
            fact *= (p - 1) * p
        expo = p - 2.0 - alpha + 1.0
        total += sign * 2.0 * d ** expo / (fact * expo)
        sign = -sign
    return total


def _q_integrand(u: np.ndarray, alpha: float) -> np.ndarray:
    return (u * u - 2.0 + 2.0 * np.cos(u)) * u ** (-2.0 - alpha)


def _q_prefix(alpha: float, j_max: int) -> np.ndarray:
    """Cached J(j pi) = int_0^{j pi} of the q integrand, j = 0..j_max."""
    with _LOCK:
        prefix = _Q_PREFIX.get(alpha)
        if prefix is None or len(prefix) <= j_max:
            have = 1 if prefix is None else len(prefix)
            target = max(j_max + 1, 64, 2 * have)
            if prefix is None:
                nodes, weights = log_panel_rule(TAYLOR_PANEL, np.pi, 160, panel_order=16)
                first = _q_head(alpha) + float(np.add.reduce(_q_integrand(nodes, alpha) * weights))
                prefix = np.array([0.0, first])
                have = 2
            js = np.arange(have - 1, target - 1)
            xg, wg = gauss_legendre(_ARCH_ORDER)
            a = js * np.pi
            nodes = (a[:, None] + 0.5 * np.pi) + 0.5 * np.pi * xg[None, :]
            arch = np.add.reduce(_q_integrand(nodes, alpha) * (0.5 * np.pi * wg[None, :]), axis=1)
            prefix = np.concatenate([prefix, prefix[-1] + np.cumsum(arch)])
            _Q_PREFIX[alpha] = prefix
        return prefix


def q_k_many(ks: np.ndarray, alpha: float) -> np.ndarray:
    """Symbol constants q_k for integer wavenumbers, vectorized.

    After the substitution u = k tau the defining integral collapses to
    q_k = 4 pi J(|k| pi) with J independent of k, so a single cached prefix
    table serves every wavenumber.  q_0 = 0 and q_{-k} = q_k.
    """
    AlphaParams.from_alpha(alpha)
    ks = np.abs(np.asarray(ks, dtype=int))
    out = np.zeros(ks.shape, dtype=float)
    nz = ks > 0
    if np.any(nz):
        prefix = _q_prefix(alpha, int(ks.max()))
        out[nz] = 4.0 * np.pi * prefix[ks[nz]]
    return out


def q_k(k: int, alpha: float) -> float:
    """Scalar q_k; memoized through the per-alpha prefix table."""
    return float(q_k_many(np.array([int(k)]), alpha)[0])


def q_asymptote(alpha: float) -> float:
    """Large-k limit of q_k: 8 pi lambda_inf / (alpha (alpha+1) (alpha-1))."""
    return 8.0 * np.pi * lambda_inf(alpha) / (alpha * (alpha + 1.0) * (alpha - 1.0))
