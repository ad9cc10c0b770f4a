"""Energy values against frozen references, scaling law, derivative checks."""

import numpy as np
import pytest

from knotflow import (
    EnergyQuadSpec,
    circle,
    energy_report,
    gateaux_fd,
    ohara_energy,
    ohara_energy_general,
    perturbed_circle,
)

from reference_values import CIRCLE_ENERGY

FINE = EnergyQuadSpec(grid_size=512)


@pytest.mark.parametrize("alpha", sorted(CIRCLE_ENERGY))
def test_circle_energy_default_grid(alpha):
    got = ohara_energy(circle(), alpha)
    assert got == pytest.approx(CIRCLE_ENERGY[alpha], rel=5e-3)


@pytest.mark.parametrize("alpha", sorted(CIRCLE_ENERGY))
def test_circle_energy_fine_grid(alpha):
    got = ohara_energy(circle(), alpha, FINE)
    assert got == pytest.approx(CIRCLE_ENERGY[alpha], rel=1e-4)


def test_scaling_law(pert):
    alpha = 2.5
    lam = 1.7
    base = ohara_energy_general(pert, alpha)
    scaled = ohara_energy_general(pert.scaled(lam), alpha)
    assert scaled == pytest.approx(lam ** (2.0 - alpha) * base, rel=1e-10)


def test_general_matches_certified_route(pert):
    for alpha in (2.25, 2.75):
        fast = ohara_energy(pert, alpha)
        general = ohara_energy_general(pert, alpha)
        assert general == pytest.approx(fast, rel=1e-6)


def test_certified_route_requires_certificate(pert):
    with pytest.raises(ValueError):
        ohara_energy(pert.derivative(), 2.5)


def test_energy_increases_with_alpha(pert):
    vals = [ohara_energy(pert, a) for a in (2.1, 2.4, 2.7)]
    assert vals[0] < vals[1] < vals[2]


def test_perturbation_raises_energy():
    # the circle minimizes among nearby curves of the same length
    alpha = 2.5
    e0 = ohara_energy(circle(), alpha)
    e1 = ohara_energy(perturbed_circle(seed=11), alpha)
    assert e1 > e0


def test_energy_report_honest_error():
    rep = energy_report(circle(), 2.5)
    true = CIRCLE_ENERGY[2.5]
    assert abs(rep["value"] - true) <= 10.0 * rep["error_estimate"]
    assert rep["error_estimate"] < 1e-2
    assert rep["grid_size"] == 256
    assert rep["inner_size"] == 256
    assert rep["min_offset"] == pytest.approx(3e-4)


def test_quad_spec_validation():
    with pytest.raises(ValueError):
        EnergyQuadSpec(grid_size=1)
    with pytest.raises(ValueError):
        EnergyQuadSpec(inner_rule="random")
    with pytest.raises(ValueError):
        EnergyQuadSpec(grading_exponent=0.5)
    with pytest.raises(ValueError):
        EnergyQuadSpec(min_offset=0.0)
    r = EnergyQuadSpec().refined()
    assert r.grid_size == 512 and r.inner_count == 512


def test_alpha_range_enforced():
    for alpha in (1.5, 1.999, 3.0):
        with pytest.raises(ValueError):
            ohara_energy(circle(), alpha)


def test_dilation_derivative():
    # d/dt E((1+t) gamma) at t=0 equals (2 - alpha) E(gamma)
    alpha = 2.5
    c = circle()
    slope, unc = gateaux_fd(c, c, alpha)
    expected = (2.0 - alpha) * CIRCLE_ENERGY[alpha]
    assert slope == pytest.approx(expected, rel=1e-4)
    assert abs(slope - expected) <= 50.0 * (unc + 1e-9)


def test_gateaux_fd_zero_direction(pert):
    zero = pert.scaled(0.0)
    slope, unc = gateaux_fd(pert, zero, 2.5)
    assert slope == pytest.approx(0.0, abs=1e-12)
    assert unc == pytest.approx(0.0, abs=1e-12)
