"""Command line entry point: ``qubit-structure analyze|simulate|scenario``."""

import argparse
import json
import math
import sys

import numpy as np

from .analysis import (SteadyStateError, UnphysicalState, is_hurwitz, purity,
                       qnd_bae_report, steady_states)
from .blochsim import DEFAULT_DT, SimulationDiverged, simulate
from .feedback import FeedbackParamError, scenario
from .model import ModelParams, build_model
from .skewform import DEFAULT_TOL
from .structure import classify, structure_report
from .transform import (DecompositionError, construct_transformation,
                        validate_decomposition)

EXIT_OK, EXIT_INPUT, EXIT_DECOMP, EXIT_IO = 0, 2, 3, 4


class InputError(Exception):
    pass


class Failure(Exception):
    def __init__(self, code, message):
        super().__init__(message)
        self.code = code


def load_config(path):
    """Read a JSON model config and return ``(ModelParams, tol or None)``."""
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise InputError(f"cannot read config {path}: {exc.strerror}") from exc
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}:{exc.lineno}:{exc.colno}: invalid JSON: {exc.msg}") from exc
    if not isinstance(raw, dict):
        raise InputError(f"{path}: top level must be an object")
    unknown = set(raw) - {"alpha", "gamma_re", "gamma_im", "tol"}
    if unknown:
        raise InputError(f"{path}: unknown field(s): {', '.join(sorted(unknown))}")
    vecs = {}
    for name in ("alpha", "gamma_re", "gamma_im"):
        if name not in raw:
            raise InputError(f"{path}: missing field '{name}'")
        v = raw[name]
        if not isinstance(v, list) or len(v) != 3:
            got = f"length {len(v)}" if isinstance(v, list) else type(v).__name__
            raise InputError(f"{path}: field '{name}' must be an array of exactly 3 "
                             f"numbers (got {got})")
        for i, x in enumerate(v):
            if isinstance(x, bool) or not isinstance(x, (int, float)) or not math.isfinite(x):
                raise InputError(f"{path}: field '{name}[{i}]' must be a finite number")
        vecs[name] = [float(x) for x in v]
    tol = raw.get("tol")
    if tol is not None:
        if isinstance(tol, bool) or not isinstance(tol, (int, float)) or not tol > 0:
            raise InputError(f"{path}: field 'tol' must be a positive number")
        tol = float(tol)
    return ModelParams(**vecs), tol


def _floats(x):
    if isinstance(x, np.ndarray):
        return x.tolist()
    if isinstance(x, (np.floating, np.integer)):
        return x.item()
    return x


def _unsign_zeros(node):
    # -0.0 + 0.0 == +0.0; keeps text and JSON free of signed zeros
    if isinstance(node, dict):
        return {k: _unsign_zeros(v) for k, v in node.items()}
    if isinstance(node, list):
        return [_unsign_zeros(v) for v in node]
    if isinstance(node, float):
        return node + 0.0
    return node


def analysis_report(params, tol=DEFAULT_TOL):
    """Full pipeline from parameters to a JSON-ready report dict."""
    m = build_model(params)
    struct = structure_report(m, tol)
    case = classify(params, m, tol)
    try:
        d = construct_transformation(params, m, case, tol)
    except DecompositionError as exc:
        raise Failure(EXIT_DECOMP, f"decomposition failed: {exc}") from exc
    validation = validate_decomposition(d, tol)
    if not validation.passed:
        raise Failure(EXIT_DECOMP, "decomposition validation failed: " + ", ".join(
            f"{k}={v:.3e}" for k, v in validation.failures().items()))
    try:
        ss = steady_states(m, tol)
    except SteadyStateError as exc:
        raise Failure(EXIT_DECOMP, str(exc)) from exc
    steady = ss.to_dict()
    if ss.unique:
        label, r2 = purity(ss.point, tol=max(tol, 1e-8))
        steady["purity"] = label.value
        steady["norm_sq"] = r2
    else:
        steady["pure_members"] = [p.tolist() for p in ss.pure_members()]
    return _unsign_zeros({
        "input": {"alpha": _floats(params.alpha), "gamma_re": _floats(params.gamma_re),
                  "gamma_im": _floats(params.gamma_im), "tol": tol},
        "c1": _floats(params.c1),
        "c2": _floats(params.c2),
        "matrices": {"A0": _floats(m.A0), "A": _floats(m.A), "B": _floats(m.B),
                     "C": _floats(m.C)},
        "structure": struct.to_dict(),
        "case": case.to_dict(),
        "decomposition": d.to_dict(),
        "validation": validation.to_dict(),
        "steady_state": steady,
        "hurwitz": is_hurwitz(m.A),
        "qnd_bae": qnd_bae_report(d, tol).to_dict(),
    })


def _fmt(x):
    if isinstance(x, bool) or x is None:
        return str(x).lower() if isinstance(x, bool) else "none"
    if isinstance(x, float):
        return repr(x)
    if isinstance(x, list):
        return "[" + ", ".join(_fmt(v) for v in x) + "]"
    return str(x)


def render_text(report):
    lines = []
    case = report["case"]
    lines.append(f"case: {case['family']} -- {case['citation']}")
    if "scenario" in report:
        sc = report["scenario"]
        lines.append(f"scenario {sc['id']}: expected {sc['expected_family']}, "
                     f"match {_fmt(sc['expected_matches'])}")
        lines.append(f"feedback: gamma={sc['gamma']!r} alpha2={sc['alpha2']!r} "
                     f"lambda={sc['lambda']!r} phi={sc['phi']!r}")
        if sc["target"] is not None:
            lines.append(f"convergence target (sin theta, 0, cos theta): "
                         f"{_fmt(sc['target'])}")
    bae = report["qnd_bae"]["bae_pairs"]
    lines.append("BAE channels: " + (", ".join(
        f"W{b['input']}->Y{b['output']}" + (" (trivial)" if b["trivial"] else "")
        for b in bae) or "none"))
    qnd = report["qnd_bae"]["qnd_vars"]
    lines.append("QND variables: " + (", ".join(f"sigma{k}~" for k in qnd) or "none"))
    df = report["qnd_bae"]["df_subspace"]
    lines.append("DF subspace: " + (df["description"] if df else "none"))
    ss = report["steady_state"]
    lines.append(f"steady state: {ss['kind']} {_fmt(ss['point'])}"
                 + (f" ({ss['purity']})" if "purity" in ss else ""))
    lines.append("")

    def walk(prefix, node):
        if isinstance(node, dict):
            for k, v in node.items():
                walk(f"{prefix}.{k}" if prefix else k, v)
        elif (isinstance(node, list) and node and isinstance(node[0], list)
              and all(isinstance(r, list) for r in node)):
            lines.append(f"{prefix}:")
            for row in node:
                lines.append("  " + _fmt(row))
        else:
            lines.append(f"{prefix}: {_fmt(node)}")

    walk("", report)
    return "\n".join(lines) + "\n"


def emit(report, fmt, out=None):
    out = out or sys.stdout
    if fmt == "json":
        out.write(json.dumps(report, indent=2, allow_nan=False) + "\n")
    else:
        out.write(render_text(report))


def parse_a0(text):
    try:
        vals = [float(v) for v in text.split(",")]
    except ValueError as exc:
        raise InputError(f"--a0 must be three comma-separated numbers, got {text!r}") from exc
    if len(vals) != 3 or not all(math.isfinite(v) for v in vals):
        raise InputError(f"--a0 must be three finite comma-separated numbers, got {text!r}")
    return np.array(vals)


def write_csv(path, traj):
    try:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            fh.write("t,a1,a2,a3\n")
            for t, a in zip(traj.times.tolist(), traj.states.tolist()):
                fh.write(f"{t!r},{a[0]!r},{a[1]!r},{a[2]!r}\n")
    except OSError as exc:
        raise Failure(EXIT_IO, f"cannot write {path}: {exc.strerror}") from exc


def _run_simulation(m, a0_text, dt, t_final, out_path, err):
    a0 = parse_a0(a0_text)
    try:
        traj = simulate(m, a0, dt=dt, t_final=t_final)
    except UnphysicalState as exc:
        raise InputError(f"unphysical initial state: {exc}") from exc
    except SimulationDiverged as exc:
        raise Failure(EXIT_DECOMP, str(exc)) from exc
    if out_path:
        write_csv(out_path, traj)
    final = traj.final.tolist()
    try:
        label = purity(final, tol=1e-6)[0].value
    except UnphysicalState:
        label = "unphysical"
    err.write(f"final state t={float(traj.times[-1])!r}: [{final[0]!r}, {final[1]!r}, "
              f"{final[2]!r}] purity: {label}\n")
    return traj


def _tol(args, config_tol=None):
    if args.tol is not None:
        if not args.tol > 0:
            raise InputError("--tol must be positive")
        return args.tol
    return config_tol if config_tol is not None else DEFAULT_TOL


def cmd_analyze(args, out):
    params, ctol = load_config(args.config)
    emit(analysis_report(params, _tol(args, ctol)), args.format, out)


def cmd_simulate(args, out):
    params, ctol = load_config(args.config)
    if args.a0 is None:
        raise InputError("simulate requires --a0")
    _tol(args, ctol)
    _run_simulation(build_model(params), args.a0, args.dt, args.t_final, args.out, out)


def cmd_scenario(args, out):
    sid = args.id if args.id is not None else args.scenario
    if sid not in (1, 2, 3, 4):
        raise InputError(f"scenario id must be one of 1, 2, 3, 4 (got {sid})")
    tol = _tol(args)
    try:
        b = scenario(sid, gamma=args.gamma, alpha2=args.alpha2, lam=args.lam,
                     phi=args.phi, theta=args.theta, tol=tol)
    except FeedbackParamError as exc:
        raise InputError(str(exc)) from exc
    except DecompositionError as exc:
        raise Failure(EXIT_DECOMP, f"decomposition failed: {exc}") from exc
    report = analysis_report(b.params, tol)
    p = b.feedback
    report["scenario"] = _unsign_zeros({
        "id": sid, "gamma": p.gamma, "alpha2": p.alpha2, "lambda": p.lam,
        "phi": p.phi, "theta": p.theta,
        "expected_family": b.expected.value if b.expected else None,
        "expected_matches": (None if b.expected is None
                             else b.expected is b.case.family),
        "closed_form": None if b.closed_form is None else b.closed_form.tolist(),
        "target": None if b.target is None else b.target.tolist(),
    })
    emit(report, args.format, out)
    if args.a0 is not None:
        _run_simulation(b.matrices, args.a0, args.dt, args.t_final, args.out, sys.stderr)


def build_parser():
    parser = argparse.ArgumentParser(
        prog="qubit-structure",
        description="Structural decomposition of open two-level quantum systems.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, config=True):
        if config:
            p.add_argument("--config", required=True, metavar="PATH")
        p.add_argument("--tol", type=float, default=None)

    def sim_flags(p):
        p.add_argument("--a0", metavar="x,y,z", default=None,
                       help="initial Bloch vector (use --a0=-1,0,0 for negatives)")
        p.add_argument("--dt", type=float, default=DEFAULT_DT)
        p.add_argument("--t-final", dest="t_final", type=float, default=10.0)
        p.add_argument("--out", metavar="PATH", default=None)

    pa = sub.add_parser("analyze", help="classify and decompose a model")
    common(pa)
    pa.add_argument("--format", choices=("text", "json"), default="text")

    ps = sub.add_parser("simulate", help="integrate the Bloch equation to CSV")
    common(ps)
    sim_flags(ps)

    pc = sub.add_parser("scenario", help="reproduce a feedback scenario (1-4)")
    pc.add_argument("id", nargs="?", type=int, default=None)
    pc.add_argument("--scenario", type=int, default=None)
    common(pc, config=False)
    pc.add_argument("--format", choices=("text", "json"), default="text")
    pc.add_argument("--gamma", type=float, default=None)
    pc.add_argument("--alpha2", type=float, default=None)
    pc.add_argument("--lambda", dest="lam", type=float, default=None)
    pc.add_argument("--phi", type=float, default=None)
    pc.add_argument("--theta", type=float, default=None)
    sim_flags(pc)
    return parser


def main(argv=None, out=None):
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    handler = {"analyze": cmd_analyze, "simulate": cmd_simulate,
               "scenario": cmd_scenario}[args.command]
    try:
        handler(args, out)
    except InputError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_INPUT
    except Failure as exc:
        sys.stderr.write(f"error: {exc}\n")
        return exc.code
    except ValueError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_INPUT
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
