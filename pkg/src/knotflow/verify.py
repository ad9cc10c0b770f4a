"""Cross-route verification suites with machine-readable reports.

Each suite checks one identity through two independent evaluation routes
and records a scalar gap per case.  Reports serialize deterministically:
given the same seed and parameters, reruns are byte-identical.
"""

from __future__ import annotations

import platform
from dataclasses import dataclass

import numpy as np

from . import fmt
from .bilinear import BilinearSpec, bilinear_fourier, bilinear_real, leibniz_probe
from .curves import ClosedCurve, circle, perturbed_circle, trefoil
from .energy import EnergyQuadSpec, gateaux_fd
from .gradient import (TruncationLadder, extrapolate_eps, h_alpha_direct,
                       h_tilde_trunc, q_trunc, r1_trunc, r2_trunc)
from .quadrature import default_node_count
from .spectral import (Spectrum, analyze, apply_q_multiplier, cor42_check,
                       curve_spectrum, synthesize)

ALPHA_DEFAULT = 2.5
ALPHA_PANEL = (2.25, 2.5, 2.75)
SUITE_NAMES = ("multiplier", "decomposition", "firstvar", "bilinear",
               "leibniz", "cor42")
# Observed suprema sit near 9.4 over random degree-8 pairs; the margin
# still rejects a route that loses uniformity in the truncation, which
# would inflate ratios by the full log of the truncation range.
LEIBNIZ_RATIO_BOUND = 50.0

MULTIPLIER_TOL = 2e-3
DECOMPOSITION_TOL = 1e-9
# Pushed one halving below the evaluation default: the high-curvature
# curves need the smaller truncations before the eps fit stabilizes.
VERIFY_EPS = (5e-3, 2.5e-3, 1.25e-3, 6.25e-4)
DECOMPOSITION_EPS = (1e-2, 1e-3)
FIRSTVAR_TOL = 1e-3
BILINEAR_TOL = 1e-8
BILINEAR_SPECS = 20
LEIBNIZ_PAIRS = 100
LEIBNIZ_EPS = (1e-1, 1e-2, 1e-3, 1e-4)
COR42_CASES = 50


@dataclass(frozen=True)
class VerifyCase:
    id: str
    quantity: str
    tolerance: float
    measured: float
    passed: bool

    def to_dict(self) -> dict:
        return {"id": self.id, "quantity": self.quantity,
                "tolerance": self.tolerance, "measured": self.measured,
                "pass": self.passed}


@dataclass(frozen=True)
class VerificationReport:
    suite: str
    cases: tuple[VerifyCase, ...]
    seed: int
    environment: str

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.cases)

    def to_json(self) -> str:
        return fmt.dumps({
            "suite": self.suite,
            "cases": [c.to_dict() for c in self.cases],
            "seed": self.seed,
            "environment": self.environment,
        }) + "\n"


def _case(cid: str, quantity: str, tolerance: float, measured: float) -> VerifyCase:
    return VerifyCase(id=cid, quantity=quantity, tolerance=float(tolerance),
                      measured=float(measured),
                      passed=bool(measured <= tolerance))


def environment_string() -> str:
    return (f"python-{platform.python_version()}"
            f"+numpy-{np.__version__}+knotflow-0.1.0")


def _verify_ladder() -> TruncationLadder:
    return TruncationLadder(
        eps_values=VERIFY_EPS,
        w_nodes_per_eps=tuple(default_node_count(e) for e in VERIFY_EPS))


def test_curves(seed: int, n_modes: int = 64) -> list[tuple[str, ClosedCurve]]:
    """The standard five-curve set: round, three seeded wobbles, a knot."""
    out = [("circle", circle())]
    for i in range(3):
        out.append((f"perturbed-{i}",
                    perturbed_circle(seed=seed + i, n_modes=n_modes)))
    out.append(("trefoil", trefoil(n_modes=n_modes)))
    return out


def _rel_l2(diff: np.ndarray, ref: np.ndarray) -> float:
    num = float(np.sqrt(np.mean(np.sum(diff ** 2, axis=1))))
    den = float(np.sqrt(np.mean(np.sum(ref ** 2, axis=1))))
    return num / den if den > 0 else num


def suite_multiplier(seed: int, alpha: float | None = None,
                     curves=None, m: int = 256) -> tuple[VerifyCase, ...]:
    """Truncation-extrapolated second-difference transform vs its symbol."""
    alphas = ALPHA_PANEL if alpha is None else (float(alpha),)
    if curves is None:
        curves = test_curves(seed)
    ladder = _verify_ladder()
    cases = []
    for name, cur in curves:
        for a in alphas:
            fields = [q_trunc(cur, a, e, m, c) for e, c in
                      zip(ladder.eps_values, ladder.w_nodes_per_eps)]
            ext = extrapolate_eps(fields, ladder.eps_values, a)
            want = synthesize(apply_q_multiplier(curve_spectrum(cur), a), m)
            rel = _rel_l2(ext.field.values - want.values, want.values)
            cases.append(_case(
                f"multiplier/{name}/alpha={a:g}",
                "relative L2 gap, extrapolated truncation vs symbol route",
                MULTIPLIER_TOL, rel))
    return tuple(cases)


def suite_decomposition(seed: int, alpha: float | None = None,
                        curves=None, m: int = 256) -> tuple[VerifyCase, ...]:
    """alpha*Q + 2*alpha*R1 - 2*R2 against the one-shot integrand."""
    a = ALPHA_DEFAULT if alpha is None else float(alpha)
    if curves is None:
        curves = test_curves(seed)
    cases = []
    for name, cur in curves:
        for eps in DECOMPOSITION_EPS:
            q = q_trunc(cur, a, eps, m)
            r1 = r1_trunc(cur, a, eps, m)
            r2 = r2_trunc(cur, a, eps, m)
            ht = h_tilde_trunc(cur, a, eps, m)
            combo = a * q.values + 2.0 * a * r1.values - 2.0 * r2.values
            sup = float(np.abs(combo - ht.values).max())
            cases.append(_case(
                f"decomposition/{name}/eps={eps:g}",
                "sup-norm of the recombined parts minus the direct integrand",
                DECOMPOSITION_TOL, sup))
    return tuple(cases)


def _normal_direction(cur: ClosedCurve, rng: np.random.Generator,
                      amplitude: float = 0.02) -> ClosedCurve:
    """Band-limited direction projected against the tangent pointwise."""
    n = 3
    block = np.zeros((2 * n + 1, cur.dim), dtype=complex)
    raw = rng.standard_normal((n, cur.dim)) + 1j * rng.standard_normal((n, cur.dim))
    block[n + 1:] = amplitude * raw
    block[:n] = np.conj(block[n + 1:][::-1])
    block[n] = amplitude * rng.standard_normal(cur.dim)
    m = max(4 * cur.modes, 64)
    hv = ClosedCurve(block).sample(m).values
    tans = cur.derivative().sample(m).values
    tans = tans / np.linalg.norm(tans, axis=1, keepdims=True)
    hv = hv - np.einsum("md,md->m", hv, tans)[:, None] * tans
    return ClosedCurve.from_samples(hv, 2 * n + 2)


def suite_firstvar(seed: int, alpha: float | None = None,
                   curves=None, m: int = 256) -> tuple[VerifyCase, ...]:
    """L2 pairing of the gradient vs extrapolated difference quotients."""
    a = ALPHA_DEFAULT if alpha is None else float(alpha)
    if curves is None:
        curves = test_curves(seed)
    rng = np.random.default_rng(seed + 1000)
    quad = EnergyQuadSpec(grid_size=256)
    cases = []
    for name, cur in curves:
        h = h_alpha_direct(cur, a, ladder=_verify_ladder(), m=m)
        speed = np.linalg.norm(cur.derivative().sample(m).values, axis=1)
        for j in range(3):
            direction = _normal_direction(cur, rng)
            hv = direction.sample(m).values
            inner = float(np.mean(
                np.einsum("md,md->m", h.values, hv) * speed))
            fd, _ = gateaux_fd(cur, direction, a, quad=quad)
            rel = abs(inner - fd) / max(abs(fd), 1e-30)
            cases.append(_case(
                f"firstvar/{name}/dir-{j}",
                "relative gap, gradient pairing vs extrapolated differences",
                FIRSTVAR_TOL, rel))
    return tuple(cases)


def _random_spectrum(rng: np.random.Generator, degree: int) -> Spectrum:
    n = int(rng.integers(1, degree + 1))
    coeffs = np.zeros((2 * n + 1, 1), dtype=complex)
    raw = rng.standard_normal(n) + 1j * rng.standard_normal(n)
    coeffs[n + 1:, 0] = raw
    coeffs[:n, 0] = np.conj(raw[::-1])
    coeffs[n, 0] = rng.standard_normal()
    return Spectrum(coeffs)


def suite_bilinear(seed: int, alpha: float | None = None,
                   m: int = 512) -> tuple[VerifyCase, ...]:
    """Grid route vs convolution route on random spec draws.

    The final case measures spectral content of the grid-route output
    beyond the algebraic support bound n_f + n_g.
    """
    del alpha
    rng = np.random.default_rng(seed + 2000)
    cases = []
    worst_support = 0.0
    for j in range(BILINEAR_SPECS):
        f = _random_spectrum(rng, 8)
        g = _random_spectrum(rng, 8)
        spec = BilinearSpec(
            s1=float(rng.uniform(0.0, 1.0)),
            s2=float(rng.uniform(0.0, 1.0)),
            beta=float(rng.uniform(0.1, 0.9)),
            eps=float(10.0 ** rng.uniform(-3.0, np.log10(0.3))))
        via_fourier = bilinear_fourier(f, g, spec)
        grid = analyze(bilinear_real(f, g, spec, m))
        n_out = via_fourier.modes
        n_grid = grid.modes
        pad = np.zeros(2 * n_grid + 1, dtype=complex)
        pad[n_grid - n_out: n_grid + n_out + 1] = via_fourier.coeffs[:, 0]
        diff = float(np.abs(pad - grid.coeffs[:, 0]).max())
        scale = max(float(np.abs(via_fourier.coeffs).max()), 1e-30)
        cases.append(_case(
            f"bilinear/spec-{j:02d}",
            "largest per-coefficient gap between the two routes",
            BILINEAR_TOL, diff / scale))
        beyond = np.abs(grid.coeffs[:, 0])
        beyond[n_grid - n_out: n_grid + n_out + 1] = 0.0
        worst_support = max(worst_support, float(beyond.max()) / scale)
    cases.append(_case(
        "bilinear/support",
        "relative spectral mass beyond the mode-sum support bound",
        BILINEAR_TOL, worst_support))
    return tuple(cases)


def suite_leibniz(seed: int, alpha: float | None = None) -> tuple[VerifyCase, ...]:
    """Sobolev ratio boundedness and trend across the truncation grid."""
    a = ALPHA_DEFAULT if alpha is None else float(alpha)
    beta = a - 2.0
    rng = np.random.default_rng(seed + 3000)
    cases = []
    sup_ratio = 0.0
    for j in range(LEIBNIZ_PAIRS):
        f = _random_spectrum(rng, 8)
        g = _random_spectrum(rng, 8)
        probe = leibniz_probe(f, g, 1.0, beta, LEIBNIZ_EPS)
        if probe.skipped:
            measured = 0.0
        else:
            sup_ratio = max(sup_ratio, probe.max_ratio)
            measured = probe.slope - 2.0 * probe.slope_sigma
        cases.append(_case(
            f"leibniz/pair-{j:03d}",
            "fitted ratio trend in log eps minus twice its standard error",
            0.0, measured))
    cases.append(_case(
        "leibniz/sup-ratio",
        "largest Sobolev ratio over all pairs and truncations",
        LEIBNIZ_RATIO_BOUND, sup_ratio))
    return tuple(cases)


def suite_cor42(seed: int, alpha: float | None = None,
                curves=None) -> tuple[VerifyCase, ...]:
    """Derivative-bound inequality on randomized (curve, l, m) draws."""
    a = ALPHA_DEFAULT if alpha is None else float(alpha)
    if curves is None:
        curves = test_curves(seed)
    rng = np.random.default_rng(seed + 4000)
    cases = []
    for j in range(COR42_CASES):
        name, cur = curves[int(rng.integers(0, len(curves)))]
        l = int(rng.integers(0, 3))
        m_index = int(rng.integers(0, 2))
        lhs, rhs, const = cor42_check(cur, a, l, m_index)
        ratio = lhs / (const * rhs) if rhs > 0 else np.inf
        cases.append(_case(
            f"cor42/case-{j:02d}/{name}/l={l}/m={m_index}",
            "derivative bound lhs over constant times rhs",
            1.0, ratio))
    return tuple(cases)


_SUITE_FUNCS = {
    "multiplier": suite_multiplier,
    "decomposition": suite_decomposition,
    "firstvar": suite_firstvar,
    "bilinear": suite_bilinear,
    "leibniz": suite_leibniz,
    "cor42": suite_cor42,
}


def run_suite(name: str, seed: int = 7,
              alpha: float | None = None) -> VerificationReport:
    """Run one named suite, or every suite under ``all``."""
    if name == "all":
        shared = test_curves(seed)
        cases: list[VerifyCase] = []
        cases.extend(suite_multiplier(seed, alpha, curves=shared))
        cases.extend(suite_decomposition(seed, alpha, curves=shared))
        cases.extend(suite_firstvar(seed, alpha, curves=shared))
        cases.extend(suite_bilinear(seed, alpha))
        cases.extend(suite_leibniz(seed, alpha))
        cases.extend(suite_cor42(seed, alpha, curves=shared))
    elif name in _SUITE_FUNCS:
        cases = list(_SUITE_FUNCS[name](seed, alpha))
    else:
        raise ValueError(f"unknown suite {name!r}; "
                         f"choose from {', '.join(SUITE_NAMES)} or all")
    return VerificationReport(suite=name, cases=tuple(cases), seed=seed,
                              environment=environment_string())
