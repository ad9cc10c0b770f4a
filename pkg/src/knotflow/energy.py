"""Self-repulsion energy of closed curves and its directional derivative.

The double integral runs over the outer point x and the offset w = y - x
with |w| in [min_offset, 1/2].  Both power terms diverge like |w|^-alpha;
their difference is evaluated through a factorized kernel that avoids
cancellation, and the unresolved slice |w| < min_offset is restored by an
analytic completion (the integrand behaves like a curvature-weighted
|w|^(2-alpha) there, which is integrable but not bounded).
"""

from __future__ import annotations

from dataclasses import dataclass, replace

import numpy as np

from .curves import (ClosedCurve, SingularCurveError, simplicity_margin,
                     synthesize_increment, synthesize_shifted)
from .kernels import inverse_power_gap
from .quadrature import pairwise_sum

SHIFT_CHUNK = 512


@dataclass(frozen=True)
class EnergyQuadSpec:
    grid_size: int = 256
    inner_rule: str = "graded"
    grading_exponent: float = 3.0
    # kept nodes need 1 - chord/arc well above fp rounding; the analytic
    # completion absorbs (0, min_offset) exactly through the same order
    min_offset: float = 3e-4
    inner_size: int | None = None

    def __post_init__(self):
        if self.grid_size < 2:
            raise ValueError("grid_size must be at least 2")
        if self.inner_rule not in ("graded", "uniform"):
            raise ValueError("inner_rule must be graded or uniform")
        if self.grading_exponent < 1.0:
            raise ValueError("grading_exponent must be >= 1")
        if self.min_offset <= 0.0:
            raise ValueError("min_offset must be positive")

    @property
    def inner_count(self) -> int:
        return self.inner_size if self.inner_size is not None else self.grid_size

    def refined(self) -> "EnergyQuadSpec":
        return replace(self, grid_size=2 * self.grid_size,
                       inner_size=2 * self.inner_count,
                       min_offset=0.5 * self.min_offset)


def _inner_rule(quad: EnergyQuadSpec) -> tuple[np.ndarray, np.ndarray, float]:
    """Positive offset nodes, weights, and the lower edge they start at."""
    n = quad.inner_count
    j = np.arange(1, n + 1)
    u_mid = (j - 0.5) / n
    if quad.inner_rule == "graded":
        g = quad.grading_exponent
        w = 0.5 * u_mid ** g
        wt = 0.5 * g * u_mid ** (g - 1.0) / n
        edges = 0.5 * ((j - 1) / n) ** g
    else:
        w = 0.5 * u_mid
        wt = np.full(n, 0.5 / n)
        edges = 0.5 * (j - 1) / n
    keep = w >= quad.min_offset
    if not np.any(keep):
        raise ValueError("min_offset leaves no quadrature nodes")
    first = int(np.argmax(keep))
    return w[keep], wt[keep], float(edges[first])


def _require_evaluable(curve: ClosedCurve, alpha: float) -> None:
    if not 2.0 <= alpha < 3.0:
        raise ValueError("alpha must lie in [2, 3)")
    if simplicity_margin(curve) <= 0.0:
        raise SingularCurveError("curve self-intersects; energy diverges")


def ohara_energy(curve: ClosedCurve, alpha: float,
                 quad: EnergyQuadSpec | None = None) -> float:
    """Energy of a certified unit-speed curve of length 1."""
    if quad is None:
        quad = EnergyQuadSpec()
    if not curve.certified:
        raise ValueError("energy requires a certified unit-speed curve")
    _require_evaluable(curve, alpha)
    m = quad.grid_size
    w_pos, wt_pos, w_edge = _inner_rule(quad)
    acc = np.zeros(m)
    shifts = np.concatenate([w_pos, -w_pos])
    weights = np.concatenate([wt_pos, wt_pos])
    offsets = np.concatenate([w_pos, w_pos])
    for lo in range(0, shifts.size, SHIFT_CHUNK):
        sl = slice(lo, lo + SHIFT_CHUNK)
        inc = synthesize_increment(curve.coeffs, m, shifts[sl])
        chord = np.sqrt(np.sum(inc ** 2, axis=2))
        gap = inverse_power_gap(chord, offsets[sl][:, None], alpha)
        acc += weights[sl] @ gap
    if w_edge > 0.0:
        gdd = curve.derivative(2).sample(m).values
        curv2 = np.sum(gdd ** 2, axis=1)
        acc += alpha * curv2 * w_edge ** (3.0 - alpha) / (12.0 * (3.0 - alpha))
    return float(pairwise_sum(acc) / m)


def _arclength_coeffs(curve: ClosedCurve, m: int) -> tuple[float, np.ndarray]:
    """Total length and coefficients of the periodic part of arc length."""
    speed = np.sqrt(np.sum(curve.derivative(1).sample(m).values ** 2, axis=1))
    spec = np.fft.fft(speed) / m
    total = float(spec[0].real)
    n = (m - 1) // 2
    ks = np.concatenate([np.arange(-n, 0), np.arange(1, n + 1)])
    rows = np.concatenate([spec[m - n:], spec[1: n + 1]])
    p = np.zeros(2 * n + 1, dtype=complex)
    p[np.concatenate([np.arange(0, n), np.arange(n + 1, 2 * n + 1)])] = rows / (2j * np.pi * ks)
    # the speed of a smooth curve has decaying spectrum; drop the empty tail
    # (threshold on the length scale, so a unit-speed curve trims to nothing)
    sig = np.nonzero(np.abs(p) > 1e-15 * total)[0]
    k_keep = int(max(abs(sig - n))) if sig.size else 0
    return total, p[n - k_keep: n + k_keep + 1][:, None]


def ohara_energy_general(curve: ClosedCurve, alpha: float,
                         quad: EnergyQuadSpec | None = None) -> float:
    """Energy of an arbitrary-parametrization smooth closed curve.

    Uses speed weights and the true intrinsic distance (shorter arc).
    Exists so reparametrization invariance is testable; everything else
    in the package expects unit speed.
    """
    if quad is None:
        quad = EnergyQuadSpec()
    _require_evaluable(curve, alpha)
    m = quad.grid_size
    w_pos, wt_pos, w_edge = _inner_rule(quad)
    arc_m = max(4 * (2 * curve.modes + 1), 512)
    total, p_coeffs = _arclength_coeffs(curve, arc_m)
    d1 = curve.derivative(1)
    gd = d1.sample(m).values
    sigma = np.sqrt(np.sum(gd ** 2, axis=1))

    acc = np.zeros(m)
    shifts = np.concatenate([w_pos, -w_pos])
    weights = np.concatenate([wt_pos, wt_pos])
    for lo in range(0, shifts.size, SHIFT_CHUNK):
        sl = slice(lo, lo + SHIFT_CHUNK)
        ws = shifts[sl]
        inc = synthesize_increment(curve.coeffs, m, ws)
        chord = np.sqrt(np.sum(inc ** 2, axis=2))
        gd_s = synthesize_shifted(d1.coeffs, m, ws)
        sigma_s = np.sqrt(np.sum(gd_s ** 2, axis=2))
        p_inc = synthesize_increment(p_coeffs, m, ws)[:, :, 0]
        arc = np.abs(total * ws[:, None] + p_inc)
        # 1/chord^a - 1/min(arc, L-arc)^a, split so the antipodal kink sits
        # where the second piece vanishes (keeps the quadrature error smooth)
        gap = inverse_power_gap(chord, arc, alpha)
        far = arc > 0.5 * total
        if np.any(far):
            gap = gap - np.where(
                far, inverse_power_gap(np.where(far, total - arc, 1.0), arc, alpha), 0.0)
        acc += weights[sl] @ (gap * sigma_s)
    acc *= sigma

    if w_edge > 0.0:
        gdd = curve.derivative(2).sample(m).values
        s2 = sigma ** 2
        proj = np.sum(gd * gdd, axis=1)
        kappa = gdd / s2[:, None] - gd * (proj / s2 ** 2)[:, None]
        curv2 = np.sum(kappa ** 2, axis=1)
        rho = np.empty((2, m))
        for i, side in enumerate((w_edge, -w_edge)):
            p_e = synthesize_increment(p_coeffs, m, np.array([side]))[0, :, 0]
            rho[i] = np.abs(total * side + p_e)
        comp = np.sum(rho ** (3.0 - alpha), axis=0)
        acc += sigma * alpha * curv2 * comp / (24.0 * (3.0 - alpha))
    return float(pairwise_sum(acc) / m)


def energy_report(curve: ClosedCurve, alpha: float,
                  quad: EnergyQuadSpec | None = None) -> dict:
    """Energy with an error estimate from one mesh refinement."""
    if quad is None:
        quad = EnergyQuadSpec()
    coarse = ohara_energy(curve, alpha, quad)
    fine = ohara_energy(curve, alpha, quad.refined())
    return {
        "value": fine,
        "error_estimate": 2.0 * abs(fine - coarse) + 1e-12,
        "grid_size": quad.grid_size,
        "inner_size": quad.inner_count,
        "min_offset": quad.min_offset,
    }


def _combine(curve: ClosedCurve, h: ClosedCurve, t: float) -> ClosedCurve:
    if curve.dim != h.dim:
        raise ValueError("direction dimension mismatch")
    n = max(curve.modes, h.modes)
    coeffs = np.zeros((2 * n + 1, curve.dim), dtype=complex)
    coeffs[n - curve.modes: n + curve.modes + 1] = curve.coeffs
    coeffs[n - h.modes: n + h.modes + 1] += t * h.coeffs
    return ClosedCurve(coeffs)


def gateaux_fd(curve: ClosedCurve, direction: ClosedCurve, alpha: float,
               t_values: tuple = (4e-2, 2e-2, 1e-2),
               quad: EnergyQuadSpec | None = None) -> tuple[float, float]:
    """Directional derivative by Richardson-extrapolated central differences.

    Central differences have even error in t, so Neville elimination is
    done in t^2.  Returns (value, error_estimate).
    """
    if quad is None:
        quad = EnergyQuadSpec()
    ts = sorted(float(t) for t in t_values)[::-1]
    if len(ts) < 2:
        raise ValueError("need at least two step sizes")
    diffs = []
    for t in ts:
        plus = _combine(curve, direction, t)
        minus = _combine(curve, direction, -t)
        if simplicity_margin(plus) <= 0.0 or simplicity_margin(minus) <= 0.0:
            raise ValueError("curve loses simplicity at step %g" % t)
        e_plus = ohara_energy_general(plus, alpha, quad)
        e_minus = ohara_energy_general(minus, alpha, quad)
        diffs.append((e_plus - e_minus) / (2.0 * t))
    xs = [t * t for t in ts]
    table = list(diffs)
    history = [table[0]]
    for level in range(1, len(ts)):
        for i in range(len(ts) - level):
            table[i] = (xs[i + level] * table[i] - xs[i] * table[i + 1]) \
                / (xs[i + level] - xs[i])
        history.append(table[0])
    return float(history[-1]), float(abs(history[-1] - history[-2]))
