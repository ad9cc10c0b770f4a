"""Stabilized evaluation of the cancellation-prone kernel ratios.

The differences 1/|chord|**s - 1/|offset|**s that appear in the energy and
in the variation integrands are always routed through

    (1 - u**s) / (1 - u**2),    u = chord / offset,

which stays O(1) as u -> 1 and removes the catastrophic cancellation of the
direct difference at small offsets.
"""

from __future__ import annotations

import numpy as np

SERIES_CUTOFF = 1e-6


def pow_ratio(u: np.ndarray | float, s: float) -> np.ndarray:
    """(1 - u**s) / (1 - u**2) with a series branch near u = 1.

    For |1 - u| < 1e-6 the quotient is evaluated from the Taylor expansion
    in d = 1 - u; four terms leave a relative remainder below 1e-24.  The
    limit at u = 1 is s/2.
    """
    u = np.asarray(u, dtype=float)
    d = 1.0 - u
    near = np.abs(d) < SERIES_CUTOFF
    out = np.empty_like(u)
    safe = np.where(near, 0.5, u)
    out[...] = (1.0 - safe ** s) / ((1.0 - safe) * (1.0 + safe))
    if np.any(near):
        dn = d[near] if d.ndim else d
        c1 = s
        c2 = s * (s - 1.0) / 2.0
        c3 = s * (s - 1.0) * (s - 2.0) / 6.0
        c4 = s * (s - 1.0) * (s - 2.0) * (s - 3.0) / 24.0
        num = c1 - dn * (c2 - dn * (c3 - dn * c4))
        val = num / (2.0 - dn)
        if d.ndim:
            out[near] = val
        else:
            out = np.asarray(val)
    return out


def g2_kernel(u, alpha: float):
    """Arc/chord kernel multiplying the second-derivative remainder term.

    g2(u) = (1 - u**alpha) / (2 u**alpha (1 - u**2)); continuous at u = 1
    with value alpha/4.
    """
    u = np.asarray(u, dtype=float)
    return pow_ratio(u, alpha) / (2.0 * u ** alpha)


def g1_kernel(u, alpha: float):
    """Companion kernel for the Taylor-remainder term; g1(1) = (alpha+2)/4."""
    u = np.asarray(u, dtype=float)
    return pow_ratio(u, alpha + 2.0) / (2.0 * u ** (alpha + 2.0))


def inverse_power_gap(chord, offset, s: float):
    """1/chord**s - 1/offset**s evaluated without cancellation.

    ``chord`` and ``offset`` must be positive with chord <= offset up to
    round-off.  Uses the exact factorization through pow_ratio: the value is
    pow_ratio(u, s) * (1 - u**2) / (u**s * offset**s) where the 1 - u**2
    factor is formed as (offset - chord)(offset + chord)/offset**2.
    """
    chord = np.asarray(chord, dtype=float)
    offset = np.asarray(offset, dtype=float)
    u = chord / offset
    one_minus_u2 = (offset - chord) * (offset + chord) / (offset * offset)
    return pow_ratio(u, s) * one_minus_u2 / (u ** s * offset ** s)
