"""Curve representation, resampling, certification, and geometry helpers."""

import numpy as np
import pytest

from knotflow import (
    ClosedCurve,
    FieldSamples,
    ResolutionError,
    certify_unit_speed,
    circle,
    hausdorff_distance,
    perturbed_circle,
    reparametrize_unit_speed,
    simplicity_margin,
    trefoil,
)


def test_circle_geometry():
    c = circle()
    assert c.dim == 3
    assert c.modes == 1
    assert c.certified
    assert c.unit_speed_tol < 1e-12
    assert c.length() == pytest.approx(1.0, abs=1e-14)
    pts = c.sample(256).values
    radii = np.linalg.norm(pts[:, :2], axis=1)
    np.testing.assert_allclose(radii, 1.0 / (2.0 * np.pi), atol=1e-15)
    np.testing.assert_allclose(pts[:, 2], 0.0, atol=1e-15)


def test_circle_planar():
    c = circle(dim=2)
    assert c.dim == 2
    assert c.length() == pytest.approx(1.0, abs=1e-14)
    with pytest.raises(ValueError):
        circle(dim=1)


def test_reality_symmetry_enforced():
    block = np.zeros((3, 2), dtype=complex)
    block[2, 0] = 1.0  # mode +1 without the conjugate partner
    with pytest.raises(ValueError, match="reality"):
        ClosedCurve(block)


def test_coefficient_block_shape_checks():
    with pytest.raises(ValueError):
        ClosedCurve(np.zeros((4, 3), dtype=complex))
    with pytest.raises(ValueError):
        ClosedCurve(np.zeros((3, 1), dtype=complex))


def test_edge_mode_trimming():
    c = circle()
    padded = np.zeros((9, 3), dtype=complex)
    padded[3:6] = c.coeffs
    assert ClosedCurve(padded).modes == 1


def test_coeff_lookup_and_immutability():
    c = circle()
    assert c.coeff(1)[0] == pytest.approx(1.0 / (4.0 * np.pi))
    np.testing.assert_array_equal(c.coeff(5), np.zeros(3))
    with pytest.raises(ValueError):
        c.coeffs[0, 0] = 1.0


def test_sample_refuses_aliasing():
    pc = perturbed_circle(seed=1)
    with pytest.raises(ValueError):
        pc.sample(2 * pc.modes)  # needs at least 2N+1


def test_derivative_drops_certificate():
    c = circle()
    d = c.derivative()
    assert not d.certified
    # |gamma'| = 1 everywhere for the unit-speed circle
    speed = np.linalg.norm(d.sample(128).values, axis=1)
    np.testing.assert_allclose(speed, 1.0, atol=1e-14)
    d2 = c.derivative(2)
    acc = np.linalg.norm(d2.sample(128).values, axis=1)
    np.testing.assert_allclose(acc, 2.0 * np.pi, rtol=1e-13)


def test_scaled_length(pert):
    assert pert.scaled(3.0).length() == pytest.approx(3.0 * pert.length(), rel=1e-13)
    assert not pert.scaled(2.0).certified


def test_intrinsic_distance_wraps():
    c = circle()
    assert c.intrinsic_distance(0.1, 0.9) == pytest.approx(0.2)
    assert c.intrinsic_distance(0.25, 0.75) == pytest.approx(0.5)
    with pytest.raises(ValueError):
        circle().derivative().intrinsic_distance(0.0, 0.1)


def test_json_round_trip(pert):
    text = pert.to_json()
    back = ClosedCurve.from_json(text)
    np.testing.assert_array_equal(back.coeffs, pert.coeffs)
    assert back.unit_speed_tol == pert.unit_speed_tol
    with pytest.raises(ValueError):
        ClosedCurve.from_json("{\"dim\": 3}")


def test_field_samples_csv_round_trip(tmp_path, rng):
    vals = rng.standard_normal((17, 3))
    f = FieldSamples(vals)
    path = tmp_path / "field.csv"
    f.to_csv(path)
    back = FieldSamples.from_csv(path)
    np.testing.assert_allclose(back.values, vals, atol=1e-15)
    np.testing.assert_allclose(back.grid, np.arange(17) / 17.0)


def test_field_samples_complex_csv(tmp_path):
    vals = np.array([[1 + 2j, 3j], [4.0, 5 - 1j]])
    f = FieldSamples(vals)
    assert np.iscomplexobj(f.values)
    path = tmp_path / "cfield.csv"
    f.to_csv(path)
    header = path.read_text().splitlines()[0]
    assert header == "x,re_v_1,im_v_1,re_v_2,im_v_2"
    data = np.loadtxt(path, delimiter=",", skiprows=1)
    np.testing.assert_allclose(data[:, 1], vals[:, 0].real)
    np.testing.assert_allclose(data[:, 4], vals[:, 1].imag)


def test_field_samples_validation():
    with pytest.raises(ValueError):
        FieldSamples(np.zeros(8))


def test_from_samples_needs_enough_points():
    pts = circle().sample(16).values
    with pytest.raises(ValueError):
        ClosedCurve.from_samples(pts, 8)
    got = ClosedCurve.from_samples(circle().sample(64).values, 1)
    np.testing.assert_allclose(got.coeffs, circle().coeffs, atol=1e-15)


def test_certify_unit_speed_measures_deviation():
    c = circle()
    stretched = ClosedCurve(c.coeffs * 1.5)
    cert = certify_unit_speed(stretched)
    assert cert.unit_speed_tol == pytest.approx(0.5, abs=1e-12)


def test_reparametrize_recovers_unit_speed():
    # non-constant speed: same circle image, distorted parameter
    dense = 1024
    x = np.arange(dense) / dense
    warped = (x + 0.08 * np.sin(2.0 * np.pi * x)) % 1.0
    r = 1.0 / (2.0 * np.pi)
    pts = np.column_stack([r * np.cos(2 * np.pi * warped),
                           r * np.sin(2 * np.pi * warped),
                           np.zeros(dense)])
    raw = ClosedCurve.from_samples(pts, 32)
    out = reparametrize_unit_speed(raw, 16, 1e-8)
    assert out.certified and out.unit_speed_tol <= 1e-8
    assert out.length() == pytest.approx(1.0, abs=1e-9)
    # image is still the round circle
    sampled = out.sample(512).values
    np.testing.assert_allclose(np.linalg.norm(sampled[:, :2], axis=1), r, atol=1e-8)
    np.testing.assert_allclose(sampled[:, 2], 0.0, atol=1e-8)


def test_reparametrize_reports_achieved_floor():
    pc = perturbed_circle(seed=3)
    with pytest.raises(ResolutionError) as err:
        reparametrize_unit_speed(pc, 6, 1e-14)
    assert 0.0 < err.value.achieved < 1.0


def test_simplicity_margin_circle():
    assert simplicity_margin(circle()) == pytest.approx(2.0 / np.pi, rel=1e-10)
    # scale free
    assert simplicity_margin(circle().scaled(7.0)) == pytest.approx(2.0 / np.pi, rel=1e-10)


def test_simplicity_margin_orders_curves(pert, knot):
    m_circle = simplicity_margin(circle())
    m_pert = simplicity_margin(pert)
    m_knot = simplicity_margin(knot)
    assert 0.0 < m_knot < m_pert <= m_circle


def test_hausdorff_known_value():
    a = np.array([[0.0, 0.0], [1.0, 0.0]])
    b = np.array([[0.0, 0.5], [1.0, 0.0]])
    assert hausdorff_distance(a, b) == pytest.approx(0.5)
    assert hausdorff_distance(a, a) == 0.0


def test_perturbed_circle_deterministic():
    a = perturbed_circle(seed=5)
    b = perturbed_circle(seed=5)
    np.testing.assert_array_equal(a.coeffs, b.coeffs)
    c = perturbed_circle(seed=6)
    assert hausdorff_distance(a.sample(256).values, c.sample(256).values) > 1e-4


def test_perturbed_circle_certificate(pert):
    assert pert.certified and pert.unit_speed_tol <= 1e-9
    assert pert.length() == pytest.approx(1.0, abs=1e-8)
    # stays near the circle at 3 percent amplitude
    d = hausdorff_distance(pert.sample(512).values, circle().sample(512).values)
    assert d < 0.03


def test_trefoil_certificate(knot):
    assert knot.certified and knot.unit_speed_tol <= 1e-8
    assert knot.length() == pytest.approx(1.0, abs=1e-8)
    assert simplicity_margin(knot) > 0.05
