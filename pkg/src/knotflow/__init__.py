"""Spectral toolkit for O'Hara knot energies on closed curves.

Curves are trigonometric polynomials of length one.  The package
evaluates the energies E^alpha for 2 < alpha < 3, their constrained
first variation through several independent routes, the truncated
bilinear transform behind the product estimates, and a fixed-length
descent to critical points, together with verification suites that
check every route against another.
"""

from .bilinear import (BilinearSpec, LeibnizProbe, bilinear_fourier,
                       bilinear_real, leibniz_probe)
from .curves import (ClosedCurve, FieldSamples, ResolutionError,
                     certify_unit_speed, circle, hausdorff_distance,
                     perturbed_circle, reparametrize_unit_speed,
                     simplicity_margin, trefoil)
from .energy import (EnergyQuadSpec, energy_report, gateaux_fd, ohara_energy,
                     ohara_energy_general)
from .flow import (FlowConfig, FlowRecord, FlowState, FlowStalled,
                   FlowTrajectory, best_fit_circle_distance, flow_step,
                   init_state, run_flow, solve_multiplier)
from .gradient import (GradientReport, TruncationLadder, default_ladder,
                       extrapolate_eps, gradient_report, h_alpha_direct,
                       h_tilde_trunc, project_normal, project_tangent,
                       q_trunc, r1_trunc, r2_trunc, r_perp_kernel_route,
                       tangent_q_triple)
from .specfun import (AlphaParams, lambda_inf, lambda_k, q_asymptote, q_k,
                      q_k_many, si_beta, si_beta_many, si_beta_sup)
from .spectral import (DecayDiagnostics, Spectrum, analyze,
                       apply_q_multiplier, banach_product_check, cor42_check,
                       cor42_constant, curve_spectrum, decay_diagnostics,
                       q_symbol, sobolev_norm, synthesize)
from .verify import VerificationReport, VerifyCase, run_suite, test_curves

__version__ = "0.1.0"

__all__ = [
    "BilinearSpec", "LeibnizProbe", "bilinear_fourier", "bilinear_real",
    "leibniz_probe",
    "ClosedCurve", "FieldSamples", "ResolutionError", "certify_unit_speed",
    "circle", "hausdorff_distance", "perturbed_circle",
    "reparametrize_unit_speed", "simplicity_margin", "trefoil",
    "EnergyQuadSpec", "energy_report", "gateaux_fd", "ohara_energy",
    "ohara_energy_general",
    "FlowConfig", "FlowRecord", "FlowState", "FlowStalled", "FlowTrajectory",
    "best_fit_circle_distance", "flow_step", "init_state", "run_flow",
    "solve_multiplier",
    "GradientReport", "TruncationLadder", "default_ladder", "extrapolate_eps",
    "gradient_report", "h_alpha_direct", "h_tilde_trunc", "project_normal",
    "project_tangent", "q_trunc", "r1_trunc", "r2_trunc",
    "r_perp_kernel_route", "tangent_q_triple",
    "AlphaParams", "lambda_inf", "lambda_k", "q_asymptote", "q_k", "q_k_many",
    "si_beta", "si_beta_many", "si_beta_sup",
    "DecayDiagnostics", "Spectrum", "analyze", "apply_q_multiplier",
    "banach_product_check", "cor42_check", "cor42_constant", "curve_spectrum",
    "decay_diagnostics", "q_symbol", "sobolev_norm", "synthesize",
    "VerificationReport", "VerifyCase", "run_suite", "test_curves",
    "__version__",
]
