"""Fixed-length gradient descent to critical points H + lambda gamma'' = 0.

Each step moves against the projected gradient, truncates back to the
working mode count, reparametrizes to unit speed and length one, and
re-solves the length multiplier.  Step control is Armijo backtracking
with an allowance for the energy jitter that reparametrization noise
induces at the certificate floor; without it the line search deadlocks
once true per-step decreases drop below that floor.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field, replace

import numpy as np

from .curves import (ClosedCurve, FieldSamples, ResolutionError,
                     certify_unit_speed, reparametrize_unit_speed,
                     simplicity_margin)
from .energy import EnergyQuadSpec, ohara_energy
from .gradient import SIMPLICITY_FLOOR, TruncationLadder, h_alpha_direct

# Armijo sufficient-decrease fraction of the predicted tau * |rf|^2 drop.
ARMIJO_C1 = 0.1
# Energy jitter allowance per unit certificate, times the gradient norm.
ENERGY_SLACK_FACTOR = 2.0
# A candidate whose unit-speed certificate worsens past this factor of the
# current one (or an absolute floor) marks an unstable step.
CERT_GROWTH_CAP = 10.0
CERT_FLOOR = 1e-8
# Step size recovery per accepted step, capped at the configured value.
TAU_REGROWTH = 1.3
MAX_RETRIES = 10
# Reparametrization aims here first, then settles for the mode floor.
REPARAM_TARGET = 1e-10


class FlowStalled(RuntimeError):
    """Raised when a step is rejected MAX_RETRIES times in a row."""

    def __init__(self, message: str, state: "FlowState"):
        super().__init__(message)
        self.state = state


def flow_ladder() -> TruncationLadder:
    """Short cutoff ladder tuned for per-step gradient calls."""
    return TruncationLadder(eps_values=(1e-2, 5e-3, 2.5e-3),
                            w_nodes_per_eps=(512, 640, 768))


@dataclass(frozen=True)
class FlowConfig:
    alpha: float = 2.5
    max_steps: int = 500
    step_size: float = 2.8e-6
    residual_tol: float = 1e-4
    modes: int = 6
    grid: int = 64
    ladder: TruncationLadder | None = None
    backtracking: float = 0.5
    length_correction: bool = True

    def __post_init__(self):
        if not 2.0 < self.alpha < 3.0:
            raise ValueError("alpha must lie in (2, 3)")
        if self.max_steps < 0:
            raise ValueError("max_steps must be nonnegative")
        if self.step_size < 0:
            raise ValueError("step_size must be nonnegative")
        if self.residual_tol <= 0:
            raise ValueError("residual_tol must be positive")
        if self.modes < 2:
            raise ValueError("need at least 2 modes")
        if self.grid < 4 * self.modes:
            raise ValueError("grid must be at least 4x the mode count")
        if not 0.0 < self.backtracking < 1.0:
            raise ValueError("backtracking factor must lie in (0, 1)")

    def active_ladder(self) -> TruncationLadder:
        return self.ladder if self.ladder is not None else flow_ladder()


@dataclass(frozen=True)
class FlowState:
    """One point of the descent, with the metrics of its curve.

    ``lam`` is the length multiplier; ``residual`` the L2 norm of
    H + lam * gamma''.  ``tau`` carries the adapted step size between
    steps; ``rf`` caches the residual field so a step does not pay a
    second gradient evaluation.
    """

    curve: ClosedCurve
    lam: float
    energy: float
    residual: float
    step_count: int
    tau: float
    rf: FieldSamples | None = field(default=None, repr=False, compare=False)


@dataclass(frozen=True)
class FlowRecord:
    step: int
    energy: float
    residual: float
    lam: float
    length_drift: float


@dataclass(frozen=True)
class FlowTrajectory:
    records: tuple[FlowRecord, ...]
    converged: bool
    aborted: bool
    message: str


def solve_multiplier(curve: ClosedCurve, h_field: FieldSamples) -> float:
    """The lambda making H + lambda gamma'' orthogonal to gamma'' in L2.

    For unit-speed curves this is first-order length preservation, since
    the length variation against h is -integral <gamma'', h>.
    """
    dd = curve.derivative(2).sample(h_field.grid_size).values
    den = float(np.mean(np.sum(dd * dd, axis=1)))
    if den <= 0.0:
        raise ValueError("degenerate curve: gamma'' vanishes identically")
    return -float(np.mean(np.sum(h_field.values * dd, axis=1))) / den


def _energy_quad(config: FlowConfig) -> EnergyQuadSpec:
    return EnergyQuadSpec(grid_size=max(128, config.grid))


def _reparam_floor(curve: ClosedCurve, n_modes: int) -> ClosedCurve:
    """Unit-speed reparametrization at REPARAM_TARGET or the mode floor.

    The result is rescaled so its arc length is one to round-off; the
    reparametrization alone leaves a length error at the certificate
    scale, which would otherwise accumulate as drift.
    """
    try:
        out = reparametrize_unit_speed(curve, n_modes, REPARAM_TARGET)
    except ResolutionError as err:
        out = reparametrize_unit_speed(curve, n_modes, err.achieved * 1.1)
    return certify_unit_speed(out.scaled(1.0 / out.length(4096)))


def _measure(curve: ClosedCurve, config: FlowConfig, step_count: int,
             tau: float, energy: float | None = None) -> FlowState:
    """Evaluate gradient, multiplier, residual and energy for a curve."""
    with warnings.catch_warnings():
        # A rough certificate mid-descent trips the ladder coarseness
        # warning; the acceptance gates already police that case.
        warnings.simplefilter("ignore", RuntimeWarning)
        h = h_alpha_direct(curve, config.alpha, ladder=config.active_ladder(),
                           m=config.grid)
    lam = solve_multiplier(curve, h)
    dd = curve.derivative(2).sample(config.grid).values
    rf = h.values + lam * dd
    residual = float(np.sqrt(np.mean(np.sum(rf ** 2, axis=1))))
    if energy is None:
        energy = ohara_energy(curve, config.alpha, _energy_quad(config))
    return FlowState(curve=curve, lam=lam, energy=energy, residual=residual,
                     step_count=step_count, tau=tau, rf=FieldSamples(rf))


def init_state(initial: ClosedCurve, config: FlowConfig) -> FlowState:
    """Project the start curve onto the working mode count and measure it."""
    prepared = _reparam_floor(initial, config.modes)
    return _measure(prepared, config, step_count=0, tau=config.step_size)


def flow_step(state: FlowState, config: FlowConfig) -> FlowState:
    """One descent step with backtracking.

    Rejection reasons, each costing one halving of tau: the candidate's
    unit-speed certificate degrades past CERT_GROWTH_CAP, the simplicity
    margin drops to the evaluation floor, the reparametrization fails, or
    the energy misses the sufficient-decrease line.  MAX_RETRIES
    consecutive rejections raise FlowStalled carrying the state.
    """
    if config.step_size == 0.0:
        return replace(state, step_count=state.step_count + 1)
    cur = state.curve
    if state.rf is None:
        state = _measure(cur, config, state.step_count, state.tau,
                         energy=state.energy)
    rf = state.rf.values
    h_norm = float(np.sqrt(np.mean(np.sum(
        (rf - state.lam * cur.derivative(2).sample(config.grid).values) ** 2,
        axis=1))))
    pts = cur.sample(config.grid).values
    slack = ENERGY_SLACK_FACTOR * (cur.unit_speed_tol or 0.0) * h_norm
    cert_cap = max(CERT_GROWTH_CAP * (cur.unit_speed_tol or 0.0), CERT_FLOOR)
    quad = _energy_quad(config)
    tau = state.tau
    for _ in range(MAX_RETRIES):
        try:
            stepped = ClosedCurve.from_samples(pts - tau * rf, config.modes)
            if config.length_correction:
                cand = _reparam_floor(stepped, config.modes)
            else:
                cand = certify_unit_speed(stepped)
            if config.length_correction and cand.unit_speed_tol > cert_cap:
                tau *= config.backtracking
                continue
            if simplicity_margin(cand) <= SIMPLICITY_FLOOR:
                tau *= config.backtracking
                continue
            cand_energy = ohara_energy(cand, config.alpha, quad)
        except (ResolutionError, ValueError, RuntimeError):
            tau *= config.backtracking
            continue
        drop = ARMIJO_C1 * tau * state.residual ** 2
        if cand_energy - state.energy <= -drop + slack:
            new_tau = min(tau * TAU_REGROWTH, config.step_size)
            return _measure(cand, config, state.step_count + 1, new_tau,
                            energy=cand_energy)
        tau *= config.backtracking
    raise FlowStalled(
        f"step {state.step_count + 1} rejected {MAX_RETRIES} times "
        f"(residual {state.residual:.3e}, tau {tau:.3e})", state)


def run_flow(initial: ClosedCurve,
             config: FlowConfig) -> tuple[FlowState, FlowTrajectory]:
    """Descend until the residual target, the step budget, or a stall.

    The trajectory records one row per measured state, the initial one
    included; energies are nonincreasing up to the documented slack.
    """
    state = init_state(initial, config)
    records = [FlowRecord(step=state.step_count, energy=state.energy,
                          residual=state.residual, lam=state.lam,
                          length_drift=float(state.curve.length() - 1.0))]
    converged = state.residual <= config.residual_tol
    aborted = False
    message = "converged at start" if converged else ""
    while not converged and state.step_count < config.max_steps:
        try:
            state = flow_step(state, config)
        except FlowStalled as err:
            state = err.state
            aborted = True
            message = str(err)
            break
        records.append(FlowRecord(step=state.step_count, energy=state.energy,
                                  residual=state.residual, lam=state.lam,
                                  length_drift=float(state.curve.length() - 1.0)))
        if state.residual <= config.residual_tol:
            converged = True
            message = f"residual target met at step {state.step_count}"
    if not converged and not aborted:
        message = f"step budget exhausted at residual {state.residual:.3e}"
    return state, FlowTrajectory(records=tuple(records), converged=converged,
                                 aborted=aborted, message=message)


def best_fit_circle_distance(curve: ClosedCurve, samples: int = 4096) -> float:
    """Distance from the curve to its least-squares round circle.

    Fits center, plane, and radius; the distance of each sample to the
    fitted circle is analytic, so no reference discretization enters.
    The returned value also covers the circle-to-curve direction through
    the largest angular gap of the samples.
    """
    m = max(samples, 2 * curve.modes + 1)
    pts = curve.sample(m).values
    center = pts.mean(axis=0)
    y = pts - center
    _, _, vt = np.linalg.svd(y, full_matrices=False)
    u = y @ vt[0]
    v = y @ vt[1]
    rho = np.sqrt(u ** 2 + v ** 2)
    radius = float(rho.mean())
    off = y - np.outer(u, vt[0]) - np.outer(v, vt[1])
    point_dist = np.sqrt((rho - radius) ** 2 + np.sum(off ** 2, axis=1))
    angles = np.sort(np.arctan2(v, u))
    gaps = np.diff(np.append(angles, angles[0] + 2.0 * np.pi))
    coverage = radius * float(gaps.max()) / 2.0
    return float(max(point_dist.max(), coverage))
