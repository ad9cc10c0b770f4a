"""Transforms, the diagonal multiplier, Sobolev norms, and decay diagnostics."""

import numpy as np
import pytest

from knotflow import (
    Spectrum,
    analyze,
    apply_q_multiplier,
    banach_product_check,
    circle,
    cor42_check,
    cor42_constant,
    curve_spectrum,
    decay_diagnostics,
    q_k,
    q_symbol,
    sobolev_norm,
    synthesize,
)
from knotflow.curves import ClosedCurve

from reference_values import Q_K


def _random_real_spectrum(rng, n, dim=1, decay=1.5):
    rows = 2 * n + 1
    c = rng.standard_normal((rows, dim)) + 1j * rng.standard_normal((rows, dim))
    k = np.arange(-n, n + 1)
    c *= (1.0 + np.abs(k[:, None])) ** -decay
    c = 0.5 * (c + np.conj(c[::-1]))  # real field
    return Spectrum(c)


def test_spectrum_basic_accessors(rng):
    s = _random_real_spectrum(rng, 4, dim=2)
    assert s.modes == 4
    assert s.dim == 2
    np.testing.assert_array_equal(s.wavenumbers, np.arange(-4, 5))
    np.testing.assert_array_equal(s.coeff(10), np.zeros(2))
    with pytest.raises(ValueError):
        s.scaled(np.ones(5))
    with pytest.raises(ValueError):
        Spectrum(np.zeros((4, 1)))


def test_analyze_synthesize_round_trip(rng):
    s = _random_real_spectrum(rng, 7, dim=3)
    m = 64
    field = synthesize(s, m)
    back = analyze(field)
    # analyze keeps (m-1)//2 modes; the original 7 sit inside unchanged
    assert back.modes == (m - 1) // 2
    for k in range(-7, 8):
        np.testing.assert_allclose(back.coeff(k), s.coeff(k), atol=1e-14)
    outside = np.abs(back.coeffs[np.abs(back.wavenumbers) > 7])
    assert outside.max() < 1e-14


def test_synthesize_refuses_aliasing_and_complex(rng):
    s = _random_real_spectrum(rng, 8)
    with pytest.raises(ValueError):
        synthesize(s, 16)
    bad = Spectrum(s.coeffs + 1j * np.eye(17, 1))
    with pytest.raises(ValueError, match="real"):
        synthesize(bad, 64)


def test_curve_spectrum_matches_coeffs():
    c = circle()
    s = curve_spectrum(c)
    np.testing.assert_array_equal(s.coeffs, c.coeffs)


@pytest.mark.parametrize("alpha", sorted(Q_K))
def test_q_symbol_composition(alpha):
    ks = np.array([-5, -1, 0, 1, 2, 5])
    got = q_symbol(ks, alpha)
    assert got[2] == 0.0
    for i, k in enumerate(ks):
        if k == 0:
            continue
        expected = (2.0 * np.pi) ** alpha * q_k(int(k), alpha) * abs(k) ** (alpha + 1.0)
        assert got[i] == pytest.approx(expected, rel=1e-13)
    assert np.all(got >= 0.0)
    # even in k, exactly
    assert got[0] == got[5]
    assert got[1] == got[3]


def test_apply_q_multiplier_circle_pointwise():
    # the circle is an eigenvector: Q gamma = (2 pi)^alpha q_1 gamma
    alpha = 2.5
    spec = apply_q_multiplier(curve_spectrum(circle()), alpha)
    factor = (2.0 * np.pi) ** alpha * q_k(1, alpha)
    field = synthesize(spec, 64).values
    base = circle().sample(64).values
    np.testing.assert_allclose(field, factor * base, rtol=1e-12, atol=1e-15)


def test_apply_q_multiplier_alpha_range(rng):
    s = _random_real_spectrum(rng, 3)
    with pytest.raises(ValueError):
        apply_q_multiplier(s, 2.0)


def test_sobolev_norm_hand_value():
    # single real mode pair at k = 2 with coefficient 1/2 each:
    # norm^2 = 2 * (1 + 4)^s * 1/4
    c = np.zeros((5, 1), dtype=complex)
    c[0, 0] = 0.5
    c[4, 0] = 0.5
    s = Spectrum(c)
    for order in (0.0, 1.0, 2.5):
        expected = np.sqrt(0.5 * 5.0 ** order)
        assert sobolev_norm(s, order) == pytest.approx(expected, rel=1e-14)
    with pytest.raises(ValueError):
        sobolev_norm(s, -1.0)


def test_sobolev_norm_monotone_in_s(rng):
    s = _random_real_spectrum(rng, 12)
    norms = [sobolev_norm(s, v) for v in (0.0, 1.0, 2.0, 3.0)]
    assert all(b >= a for a, b in zip(norms, norms[1:]))


def test_banach_product_check(rng):
    # constants f=c, g=d: product norm equals |cd|, norms multiply exactly
    f = Spectrum(np.array([[2.0 + 0j]]))
    g = Spectrum(np.array([[3.0 + 0j]]))
    lhs, rhs = banach_product_check(f, g, 2)
    assert lhs == pytest.approx(6.0, rel=1e-14)
    assert rhs == pytest.approx(6.0, rel=1e-14)
    # random smooth scalars: algebra inequality with a modest constant
    for _ in range(5):
        f = _random_real_spectrum(rng, 6, decay=2.0)
        g = _random_real_spectrum(rng, 6, decay=2.0)
        lhs, rhs = banach_product_check(f, g, 2)
        assert lhs <= 10.0 * rhs
    with pytest.raises(ValueError):
        banach_product_check(_random_real_spectrum(rng, 2, dim=2), g, 2)
    with pytest.raises(ValueError):
        banach_product_check(f, g, 0)


def _geometric_curve(rate, n, seed=0, base=1e-1):
    """Curve with |coeff(k)| ~ base * exp(-rate * k) plus the circle frame."""
    rng = np.random.default_rng(seed)
    rows = 2 * n + 1
    c = np.zeros((rows, 3), dtype=complex)
    r = 1.0 / (4.0 * np.pi)
    c[n + 1, 0] = r
    c[n + 1, 1] = -1j * r
    c[n - 1, 0] = r
    c[n - 1, 1] = 1j * r
    for k in range(2, n + 1):
        v = rng.standard_normal(3) + 1j * rng.standard_normal(3)
        v *= base * np.exp(-rate * k) / np.linalg.norm(v)
        c[n + k] += v
        c[n - k] += np.conj(v)
    return ClosedCurve(c)


def test_decay_diagnostics_exponential_rate():
    rate = 0.8
    curve = _geometric_curve(rate, 40)
    diag = decay_diagnostics(curve, 0.5)
    assert diag.verdict == "exponential"
    assert diag.fit_quality >= 0.99
    assert diag.decay_rate == pytest.approx(rate, rel=0.05)


def test_decay_diagnostics_subexponential():
    # power-law tail: log-linear fit flattens out
    n = 48
    rows = 2 * n + 1
    c = np.zeros((rows, 3), dtype=complex)
    r = 1.0 / (4.0 * np.pi)
    c[n + 1, 0] = r
    c[n - 1, 0] = r
    c[n + 1, 1] = -1j * r
    c[n - 1, 1] = 1j * r
    for k in range(2, n + 1):
        c[n + k, 2] = 0.01 * k ** -2.0
        c[n - k, 2] = 0.01 * k ** -2.0
    diag = decay_diagnostics(ClosedCurve(c), 0.25)
    assert diag.verdict == "subexponential"


def test_decay_diagnostics_collapse_path():
    # circle inside a wide analysis band: spectrum is all zeros past k=1
    diag = decay_diagnostics(circle(), 0.5, band=32)
    assert diag.verdict == "exponential"
    assert diag.fit_quality == 1.0


def test_decay_diagnostics_inconclusive():
    # band too short to fit and too short to call the spectrum collapsed
    diag = decay_diagnostics(circle(), 0.5, band=4)
    assert diag.verdict == "inconclusive"
    assert diag.decay_rate == 0.0
    # with the default band the empty run past k=1 is decisive
    assert decay_diagnostics(circle(), 0.5).verdict == "exponential"


def test_cor42_constant_positive():
    const, argmin = cor42_constant(2.5)
    assert const > 0.0
    assert argmin >= 0
    # constant is the inverse square root of an infimum over the symbol
    lhs, rhs, c2 = cor42_check(circle(), 2.5, 0, 0.0)
    assert c2 == pytest.approx(const)
    assert lhs <= const * rhs


def test_cor42_check_random_orders(pert, rng):
    for _ in range(6):
        l = int(rng.integers(0, 3))
        m = float(rng.integers(0, 2))
        alpha = float(rng.uniform(2.1, 2.9))
        lhs, rhs, const = cor42_check(pert, alpha, l, m)
        assert lhs <= const * rhs
    with pytest.raises(ValueError):
        cor42_check(pert, 2.5, -1, 0.0)
