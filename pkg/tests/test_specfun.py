"""Symbol constants and fractional sine integrals against frozen values."""

import numpy as np
import pytest

from knotflow import (
    AlphaParams,
    lambda_inf,
    lambda_k,
    q_asymptote,
    q_k,
    q_k_many,
    si_beta,
    si_beta_many,
    si_beta_sup,
)

from reference_values import LAMBDA_INF, LAMBDA_K, Q_ASYMPTOTE, Q_K, SI_BETA


@pytest.mark.parametrize("alpha", sorted(Q_K))
def test_q_k_reference(alpha):
    for k, ref in Q_K[alpha].items():
        got = q_k(k, alpha)
        assert got == pytest.approx(ref, rel=1e-8), (alpha, k)


@pytest.mark.parametrize("alpha", sorted(LAMBDA_K))
def test_lambda_k_reference(alpha):
    for k, ref in LAMBDA_K[alpha].items():
        assert lambda_k(k, alpha) == pytest.approx(ref, rel=1e-10), (alpha, k)


@pytest.mark.parametrize("alpha", sorted(LAMBDA_INF))
def test_lambda_inf_closed_form(alpha):
    assert lambda_inf(alpha) == pytest.approx(LAMBDA_INF[alpha], rel=1e-9)


@pytest.mark.parametrize("alpha", sorted(Q_ASYMPTOTE))
def test_q_asymptote_reference(alpha):
    assert q_asymptote(alpha) == pytest.approx(Q_ASYMPTOTE[alpha], rel=1e-9)


@pytest.mark.parametrize("beta", sorted(SI_BETA))
def test_si_beta_reference(beta):
    for x, ref in SI_BETA[beta].items():
        assert si_beta(x, beta) == pytest.approx(ref, rel=1e-10), (beta, x)


def test_q_symmetry_and_zero():
    assert q_k(0, 2.5) == 0.0
    for k in (1, 2, 7):
        assert q_k(-k, 2.5) == q_k(k, 2.5)


def test_q_k_many_matches_scalar():
    ks = np.array([-3, -1, 0, 1, 2, 5, 12])
    vals = q_k_many(ks, 2.25)
    for k, v in zip(ks, vals):
        assert v == pytest.approx(q_k(int(k), 2.25), rel=1e-13)


def test_q_k_approaches_asymptote():
    # tail of the defining integral gives gap ~ k^(1-alpha)
    alpha = 2.5
    target = q_asymptote(alpha)
    gaps = [abs(q_k(k, alpha) - target) for k in (10, 40, 160)]
    assert gaps[0] > gaps[1] > gaps[2]
    assert gaps[1] / gaps[0] == pytest.approx(4.0 ** (1.0 - alpha), rel=0.1)
    assert gaps[2] < 1e-3


def test_q_k_increasing_at_small_k():
    alpha = 2.75
    vals = [q_k(k, alpha) for k in range(1, 8)]
    assert all(b > a for a, b in zip(vals, vals[1:]))


def test_si_beta_odd_and_vectorized():
    beta = 0.4
    xs = np.array([-3.0, -0.7, 0.0, 0.7, 3.0, 25.0])
    vals = si_beta_many(xs, beta)
    assert vals[2] == 0.0
    np.testing.assert_allclose(vals[:2], -vals[3:5][::-1], rtol=1e-13)
    for x, v in zip(xs, vals):
        assert v == pytest.approx(si_beta(float(x), beta), abs=1e-14)


def test_si_beta_sup_at_first_arch():
    beta = 0.5
    sup = si_beta_sup(beta)
    assert sup == pytest.approx(si_beta(np.pi, beta), rel=1e-14)
    xs = np.linspace(0.01, 60.0, 600)
    assert np.max(si_beta_many(xs, beta)) <= sup * (1 + 1e-12)


def test_si_beta_many_property(rng):
    # agreement between the vectorized prefix-sum path and scalar calls
    for beta in rng.uniform(0.05, 0.95, size=3):
        xs = np.sort(rng.uniform(0.0, 40.0, size=40))
        vals = si_beta_many(xs, beta)
        picks = rng.choice(len(xs), size=8, replace=False)
        for i in picks:
            assert vals[i] == pytest.approx(si_beta(float(xs[i]), beta), rel=1e-11, abs=1e-13)


def test_alpha_params_validation():
    p = AlphaParams.from_alpha(2.5)
    assert p.beta == 0.5
    with pytest.raises(ValueError):
        AlphaParams.from_alpha(2.0)
    with pytest.raises(ValueError):
        AlphaParams.from_alpha(3.0)
    with pytest.raises(ValueError):
        AlphaParams(alpha=2.5, beta=0.4)


def test_domain_errors():
    with pytest.raises(ValueError):
        si_beta(1.0, 0.0)
    with pytest.raises(ValueError):
        si_beta(1.0, 1.0)
    with pytest.raises(ValueError):
        lambda_k(-1, 2.5)
    with pytest.raises(ValueError):
        q_k(1, 3.2)
