"""Command-line surface: curve generation, evaluation, flow, verification.

Exit codes: 0 success, 1 usage or input error, 2 numerical abort,
3 verification failure.  Shared numeric parameters resolve as
CLI flag > config file (plain key=value lines) > built-in default.
All emitted floats carry 17 significant digits so that reruns with the
same arguments and seed are byte-identical.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

import numpy as np

from . import fmt
from .bilinear import BilinearSpec, bilinear_fourier, bilinear_real
from .curves import (ClosedCurve, ResolutionError, circle, perturbed_circle,
                     trefoil)
from .energy import EnergyQuadSpec, energy_report
from .flow import FlowConfig, best_fit_circle_distance, run_flow
from .gradient import TruncationLadder, gradient_report, h_alpha_direct
from .quadrature import default_node_count
from .specfun import lambda_k, q_k_many, si_beta_many
from .spectral import (Spectrum, apply_q_multiplier, curve_spectrum,
                       decay_diagnostics, sobolev_norm, synthesize)
from .verify import SUITE_NAMES, run_suite

DEFAULTS = {"alpha": 2.5, "modes": 64, "grid": 512, "seed": 7}

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_NUMERICAL = 2
EXIT_VERIFY = 3


class _Parser(argparse.ArgumentParser):
    """argparse flavor whose usage failures exit with code 1."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


class UsageError(ValueError):
    pass


def _read_config(path: str | None) -> dict:
    if path is None:
        return {}
    try:
        with open(path, "r", encoding="utf-8") as fh:
            lines = fh.readlines()
    except OSError as exc:
        raise UsageError(f"cannot read config file: {exc}") from exc
    out = {}
    for ln, raw in enumerate(lines, 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise UsageError(f"{path}:{ln}: expected key=value")
        key, value = line.split("=", 1)
        out[key.strip()] = value.strip()
    return out


def _resolve(args, key: str, cast):
    given = getattr(args, key, None)
    if given is not None:
        return given
    cfg = _read_config(getattr(args, "config", None))
    if key in cfg:
        try:
            return cast(cfg[key])
        except ValueError as exc:
            raise UsageError(f"config key {key}: {exc}") from exc
    return cast(DEFAULTS[key]) if key in DEFAULTS else None


def _load_curve(path: str) -> ClosedCurve:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise UsageError(f"cannot read curve file: {exc}") from exc
    try:
        return ClosedCurve.from_json(text)
    except (ValueError, json.JSONDecodeError) as exc:
        raise UsageError(f"{path}: {exc}") from exc


def _load_spectrum(path: str) -> Spectrum:
    """Coefficient table in the curve JSON schema; dim 1 is allowed here."""
    try:
        with open(path, "r", encoding="utf-8") as fh:
            data = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError(f"cannot read spectrum file: {exc}") from exc
    try:
        raw = data["coeffs"]
        block = np.empty((len(raw[0]), len(raw)), dtype=complex)
        for d, col in enumerate(raw):
            arr = np.asarray(col, dtype=float)
            block[:, d] = arr[:, 0] + 1j * arr[:, 1]
        return Spectrum(block)
    except (KeyError, TypeError, ValueError, IndexError) as exc:
        raise UsageError(f"{path}: malformed coefficient table: {exc}") from exc


def _emit(text: str, out: str | None) -> None:
    if out is None:
        sys.stdout.write(text)
        if not text.endswith("\n"):
            sys.stdout.write("\n")
    else:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text if text.endswith("\n") else text + "\n")


def _outdir(path: str) -> str:
    os.makedirs(path, exist_ok=True)
    return path


def _parse_eps_ladder(text: str | None) -> TruncationLadder | None:
    if text is None:
        return None
    try:
        eps = tuple(float(tok) for tok in text.split(",") if tok.strip())
    except ValueError as exc:
        raise UsageError(f"bad --eps-ladder: {exc}") from exc
    if len(eps) < 3:
        raise UsageError("--eps-ladder needs at least three values")
    return TruncationLadder(eps_values=eps,
                            w_nodes_per_eps=tuple(default_node_count(e)
                                                  for e in eps))


def _cmd_gen(args) -> int:
    seed = _resolve(args, "seed", int)
    modes = _resolve(args, "modes", int)
    if args.shape == "circle":
        cur = circle(dim=args.dim)
    elif args.shape == "perturbed":
        bump = tuple(int(t) for t in args.bump_modes.split(","))
        try:
            cur = perturbed_circle(amplitude=args.amplitude, modes=bump,
                                   seed=seed, n_modes=modes, dim=args.dim)
        except ResolutionError as err:
            # The mode count caps the reachable flatness; settle there.
            cur = perturbed_circle(amplitude=args.amplitude, modes=bump,
                                   seed=seed, n_modes=modes, dim=args.dim,
                                   tol=err.achieved * 1.1)
    else:
        cur = trefoil(n_modes=modes)
    _emit(cur.to_json(), args.out)
    return EXIT_OK


def _cmd_energy(args) -> int:
    alpha = _resolve(args, "alpha", float)
    cur = _load_curve(args.curve)
    quad = EnergyQuadSpec(grid_size=args.quad_grid) \
        if args.quad_grid else EnergyQuadSpec()
    rep = energy_report(cur, alpha, quad)
    if args.json:
        _emit(fmt.dumps({"value": rep["value"],
                         "error_estimate": rep["error_estimate"],
                         "quad_spec": {"grid_size": rep["grid_size"],
                                       "inner_size": rep["inner_size"],
                                       "min_offset": rep["min_offset"]}}),
              args.out)
    else:
        _emit(f"value {fmt.format_float(rep['value'])} "
              f"error_estimate {fmt.format_float(rep['error_estimate'])}",
              args.out)
    return EXIT_OK


def _cmd_grad(args) -> int:
    alpha = _resolve(args, "alpha", float)
    m = _resolve(args, "grid", int)
    cur = _load_curve(args.curve)
    ladder = _parse_eps_ladder(args.eps_ladder)
    out = _outdir(args.out)
    meta = {"route": args.route, "alpha": alpha, "grid": m}
    if args.route == "direct":
        field = h_alpha_direct(cur, alpha, ladder=ladder, m=m)
    elif args.route == "decomposed":
        rep = gradient_report(cur, alpha, ladder=ladder, m=m)
        field = rep.h_field
        meta.update({"decomposition_residual": rep.decomposition_residual,
                     "eps_used": rep.eps_used,
                     "extrapolated": rep.extrapolated})
    else:
        field = synthesize(apply_q_multiplier(curve_spectrum(cur), alpha), m)
        meta["note"] = "symbol image of the second-difference part only"
    field.to_csv(os.path.join(out, "gradient.csv"))
    fmt.write_json(os.path.join(out, "gradient.json"), meta)
    return EXIT_OK


def _cmd_spectrum(args) -> int:
    alpha = _resolve(args, "alpha", float)
    cur = _load_curve(args.curve)
    out = _outdir(args.out)
    spec = curve_spectrum(cur)
    amps = np.sqrt(np.sum(np.abs(spec.coeffs) ** 2, axis=1))
    fmt.write_csv(os.path.join(out, "spectrum.csv"), "k,amplitude",
                  np.column_stack([spec.wavenumbers, amps]))
    meta = {}
    if args.sobolev is not None:
        meta["sobolev_index"] = args.sobolev
        meta["sobolev_norm"] = sobolev_norm(spec, args.sobolev)
    if args.decay:
        diag = decay_diagnostics(cur, alpha - 2.0)
        meta["decay"] = {"verdict": diag.verdict,
                         "decay_rate": diag.decay_rate,
                         "fit_quality": diag.fit_quality}
    if meta:
        fmt.write_json(os.path.join(out, "spectrum.json"), meta)
    return EXIT_OK


def _cmd_bilinear(args) -> int:
    f = _load_spectrum(args.f)
    g = _load_spectrum(args.g)
    spec = BilinearSpec(s1=args.s1, s2=args.s2, beta=args.beta, eps=args.eps)
    m = _resolve(args, "grid", int)
    out = _outdir(args.out)
    report = {"s1": spec.s1, "s2": spec.s2, "beta": spec.beta,
              "eps": spec.eps, "support_bound": f.modes + g.modes}
    if args.route in ("fourier", "both"):
        fou = bilinear_fourier(f, g, spec)
        rows = np.column_stack([fou.wavenumbers, fou.coeffs[:, 0].real,
                                fou.coeffs[:, 0].imag])
        fmt.write_csv(os.path.join(out, "bilinear_fourier.csv"),
                      "k,re,im", rows)
    if args.route in ("real", "both"):
        field = bilinear_real(f, g, spec, m)
        field.to_csv(os.path.join(out, "bilinear_grid.csv"))
    if args.route == "both":
        grid_modes = (m - 1) // 2
        from .spectral import analyze
        got = analyze(field)
        pad = np.zeros(2 * grid_modes + 1, dtype=complex)
        n_out = fou.modes
        pad[grid_modes - n_out: grid_modes + n_out + 1] = fou.coeffs[:, 0]
        report["max_coefficient_gap"] = float(np.abs(pad - got.coeffs[:, 0]).max())
    fmt.write_json(os.path.join(out, "bilinear_report.json"), report)
    return EXIT_OK


def _cmd_special(args) -> int:
    alpha = _resolve(args, "alpha", float)
    beta = args.beta if args.beta is not None else alpha - 2.0
    out = _outdir(args.out)
    ks = np.arange(1, args.k_max + 1)
    qs = q_k_many(ks, alpha)
    lams = np.array([lambda_k(int(k), alpha) for k in ks])
    fmt.write_csv(os.path.join(out, "special_qk.csv"), "k,q_k,lambda_k",
                  np.column_stack([ks, qs, lams]))
    xs = np.linspace(0.0, args.x_max, args.points)
    fmt.write_csv(os.path.join(out, "special_si.csv"), "x,si_beta",
                  np.column_stack([xs, si_beta_many(xs, beta)]))
    return EXIT_OK


def _cmd_flow(args) -> int:
    alpha = _resolve(args, "alpha", float)
    cur = _load_curve(args.init)
    config = FlowConfig(alpha=alpha, max_steps=args.max_steps,
                        step_size=args.step_size, residual_tol=args.tol,
                        modes=args.modes, grid=args.grid)
    out = _outdir(args.out)
    state, traj = run_flow(cur, config)
    rows = np.array([[r.step, r.energy, r.residual, r.lam, r.length_drift]
                     for r in traj.records])
    fmt.write_csv(os.path.join(out, "trajectory.csv"),
                  "step,energy,residual,lambda,length_drift", rows)
    with open(os.path.join(out, "terminal_curve.json"), "w",
              encoding="utf-8") as fh:
        fh.write(state.curve.to_json() + "\n")
    diag = decay_diagnostics(state.curve, alpha - 2.0)
    fmt.write_json(os.path.join(out, "diagnostics.json"), {
        "converged": traj.converged,
        "aborted": traj.aborted,
        "message": traj.message,
        "steps": state.step_count,
        "energy": state.energy,
        "residual": state.residual,
        "lambda": state.lam,
        "circle_distance": best_fit_circle_distance(state.curve),
        "decay": {"verdict": diag.verdict, "decay_rate": diag.decay_rate,
                  "fit_quality": diag.fit_quality},
    })
    return EXIT_OK if traj.converged else EXIT_NUMERICAL


def _cmd_verify(args) -> int:
    alpha = getattr(args, "alpha", None)
    seed = _resolve(args, "seed", int)
    report = run_suite(args.suite, seed=seed, alpha=alpha)
    _emit(report.to_json(), args.out)
    return EXIT_OK if report.passed else EXIT_VERIFY


def build_parser() -> _Parser:
    root = _Parser(prog="knotflow", description=__doc__.split("\n")[0])
    root.add_argument("--config", help="key=value parameter file")
    sub = root.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", help="write a test curve as JSON")
    p.add_argument("shape", choices=("circle", "perturbed", "trefoil"))
    p.add_argument("--dim", type=int, default=3)
    p.add_argument("--modes", type=int)
    p.add_argument("--amplitude", type=float, default=0.03)
    p.add_argument("--bump-modes", default="2,3,5")
    p.add_argument("--seed", type=int)
    p.add_argument("--out")
    p.set_defaults(func=_cmd_gen)

    p = sub.add_parser("energy", help="evaluate the energy of a curve")
    p.add_argument("--alpha", type=float)
    p.add_argument("--curve", required=True)
    p.add_argument("--quad-grid", type=int)
    p.add_argument("--json", action="store_true")
    p.add_argument("--out")
    p.set_defaults(func=_cmd_energy)

    p = sub.add_parser("grad", help="evaluate the constrained gradient field")
    p.add_argument("--alpha", type=float)
    p.add_argument("--curve", required=True)
    p.add_argument("--grid", type=int)
    p.add_argument("--eps-ladder", help="comma-separated truncation values")
    p.add_argument("--route", choices=("direct", "decomposed", "spectral"),
                   default="direct")
    p.add_argument("--out", default=".")
    p.set_defaults(func=_cmd_grad)

    p = sub.add_parser("spectrum", help="coefficient table and decay report")
    p.add_argument("--alpha", type=float)
    p.add_argument("--curve", required=True)
    p.add_argument("--sobolev", type=float)
    p.add_argument("--decay", action="store_true")
    p.add_argument("--out", default=".")
    p.set_defaults(func=_cmd_spectrum)

    p = sub.add_parser("bilinear", help="truncated bilinear transform")
    p.add_argument("--s1", type=float, required=True)
    p.add_argument("--s2", type=float, required=True)
    p.add_argument("--beta", type=float, required=True)
    p.add_argument("--eps", type=float, required=True)
    p.add_argument("--f", required=True)
    p.add_argument("--g", required=True)
    p.add_argument("--grid", type=int)
    p.add_argument("--route", choices=("real", "fourier", "both"),
                   default="both")
    p.add_argument("--out", default=".")
    p.set_defaults(func=_cmd_bilinear)

    p = sub.add_parser("special", help="tables of q_k, lambda_k and Si_beta")
    p.add_argument("--alpha", type=float)
    p.add_argument("--beta", type=float)
    p.add_argument("--k-max", type=int, default=64)
    p.add_argument("--x-max", type=float, default=20.0)
    p.add_argument("--points", type=int, default=401)
    p.add_argument("--out", default=".")
    p.set_defaults(func=_cmd_special)

    p = sub.add_parser("flow", help="descend to a critical point")
    p.add_argument("--alpha", type=float)
    p.add_argument("--init", required=True)
    p.add_argument("--tol", type=float, default=1e-4)
    p.add_argument("--max-steps", type=int, default=500)
    p.add_argument("--step-size", type=float, default=2.8e-6)
    p.add_argument("--modes", type=int, default=6)
    p.add_argument("--grid", type=int, default=64)
    p.add_argument("--out", default=".")
    p.set_defaults(func=_cmd_flow)

    p = sub.add_parser("verify", help="run a cross-route verification suite")
    p.add_argument("suite", choices=SUITE_NAMES + ("all",))
    p.add_argument("--alpha", type=float)
    p.add_argument("--seed", type=int)
    p.add_argument("--out")
    p.set_defaults(func=_cmd_verify)

    return root


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"knotflow: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (ValueError, ArithmeticError, RuntimeError) as exc:
        print(f"knotflow: numerical abort: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL


if __name__ == "__main__":
    sys.exit(main())
