"""Batch front end: ensemble ingestion, curve computation, simulations.

Exit codes: 1 malformed input, 2 infeasible query, 3 budget exceeded.
CSV goes to stdout or --output; a JSON run manifest goes to --manifest (or
stderr).  Identical invocations with identical seeds yield byte-identical
CSV.
"""

from __future__ import annotations

import argparse
import io
import json
import os
import sys
import time

import numpy as np

from . import closedform, ensembles, oracle, qcore, solver, symmetry, typicality

SCHEMA_VERSION = "1"

EXIT_MALFORMED = 1
EXIT_INFEASIBLE = 2
EXIT_BUDGET = 3


class MalformedInputError(ValueError):
    pass


def _complex_array(data):
    arr = np.asarray(data, dtype=float)
    if arr.ndim < 1 or arr.shape[-1] != 2:
        raise MalformedInputError("amplitudes must be [re, im] pairs")
    return arr[..., 0] + 1j * arr[..., 1]


def load_ensemble(path):
    """Read the JSON ensemble format; returns (Ensemble, optional action)."""
    try:
        with open(path) as fh:
            obj = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise MalformedInputError(f"cannot read ensemble file: {exc}") from exc
    try:
        d = int(obj["dim"])
        states = _complex_array(obj["states"])
        probs = np.asarray(obj["probs"], dtype=float)
    except (KeyError, TypeError, ValueError) as exc:
        raise MalformedInputError(f"malformed ensemble JSON: {exc}") from exc
    if states.ndim != 2 or states.shape[1] != d:
        raise MalformedInputError("states shape does not match dim")
    norms = np.linalg.norm(states, axis=1)
    if np.any(np.abs(norms - 1.0) > 1e-6):
        print("warning: renormalizing states off by more than 1e-6",
              file=sys.stderr)
    states = states / norms[:, None]
    total = probs.sum()
    if abs(total - 1.0) > 1e-6:
        raise MalformedInputError("probs must sum to 1")
    probs = probs / total
    try:
        E = qcore.Ensemble(states, probs)
    except ValueError as exc:
        raise MalformedInputError(str(exc)) from exc
    action = None
    if "group" in obj and obj["group"]:
        try:
            perms = [tuple(int(v) for v in s) for s in obj["group"]["perms"]]
            unitaries = [_complex_array(U) for U in obj["group"]["unitaries"]]
            action = symmetry.make_action(perms, unitaries)
        except (KeyError, TypeError, ValueError) as exc:
            raise MalformedInputError(f"malformed group JSON: {exc}") from exc
    return E, action


def _fmt(x: float) -> str:
    return f"{x:.12g}"


class Runner:
    """Collects CSV rows and manifest data for one invocation."""

    def __init__(self, args, command):
        self.args = args
        self.command = command
        self.rows = []
        self.header = None
        self.manifest_extra = {}
        self.t0 = time.monotonic()

    def emit(self, header, rows):
        self.header = header
        self.rows = rows

    def finish(self):
        buf = io.StringIO()
        buf.write(",".join(self.header) + "\n")
        for row in self.rows:
            buf.write(",".join(
                _fmt(v) if isinstance(v, float) else str(v) for v in row) + "\n")
        data = buf.getvalue()
        out = getattr(self.args, "output", None)
        if out:
            with open(out, "w") as fh:
                fh.write(data)
        else:
            sys.stdout.write(data)
        manifest = {
            "schema_version": SCHEMA_VERSION,
            "command": self.command,
            "flags": {k: v for k, v in sorted(vars(self.args).items())
                      if k != "func" and v is not None},
            "seed": getattr(self.args, "seed", None),
            "threads": getattr(self.args, "threads", None),
            "wall_time_s": round(time.monotonic() - self.t0, 6),
        }
        manifest.update(self.manifest_extra)
        mpath = getattr(self.args, "manifest", None)
        text = json.dumps(manifest, indent=2, sort_keys=True, default=str)
        if mpath:
            with open(mpath, "w") as fh:
                fh.write(text + "\n")
        else:
            print(text, file=sys.stderr)


def _grid_for(E, args):
    k = getattr(args, "grid_k", None)
    if k is None and E.m not in solver.DEFAULT_RESOLUTION:
        raise MalformedInputError(
            f"m = {E.m} needs an explicit --grid-k (cost grows like k^(m-1))")
    grid = solver.SimplexGrid.regular(E, k=k)
    return grid


def cmd_curve(args, run):
    E, _ = load_ensemble(args.ensemble)
    grid = _grid_for(E, args)
    curve = solver.trade_off_curve(E, n_samples=args.samples, grid=grid,
                                   refine=not args.no_refine)
    run.manifest_extra["grid"] = {"k": grid.resolution, "points": int(grid.points.shape[0])}
    run.emit(["R", "Q", "grid_k", "support_size"],
             [(s.R, s.Q, grid.resolution or 0, s.support_size)
              for s in curve.samples])


def cmd_point(args, run):
    E, _ = load_ensemble(args.ensemble)
    grid = _grid_for(E, args)
    q = args.quantity
    if q == "M":
        val, w = solver.solve_M(E, args.R, grid=grid)
        sup = len(w)
    elif q == "X":
        val = solver.solve_X(E, args.R, grid=grid)
        sup = 0
    elif q == "N":
        val, w = solver.solve_N_rsp(E, args.R, grid=grid)
        sup = len(w)
    else:
        raise MalformedInputError(f"unknown quantity {q}")
    run.manifest_extra["grid"] = {"k": grid.resolution}
    run.emit(["quantity", "R", "value", "grid_k", "support_size"],
             [(q, float(args.R), float(val), grid.resolution or 0, sup)])


def cmd_avs(args, run):
    E, _ = load_ensemble(args.ensemble)
    if args.vertices:
        with open(args.vertices) as fh:
            verts = [np.asarray(v, dtype=float) for v in json.load(fh)]
    else:
        verts = [np.eye(E.m)[i] for i in range(E.m)]
    Q, p = solver.avs_sup(E.states, verts, args.R, resolution=args.mesh)
    run.emit(["R", "Q"] + [f"p{i}" for i in range(E.m)],
             [(float(args.R), float(Q)) + tuple(float(v) for v in p)])


def cmd_blind(args, run):
    E, _ = load_ensemble(args.ensemble)
    Q, components = solver.blind_rate(E)
    comp_str = ";".join("[" + " ".join(str(i) for i in c) + "]"
                        for c in components)
    run.emit(["Q_blind", "n_components", "components"],
             [(float(Q), len(components), comp_str)])


def _load_curve_csv(path):
    try:
        rows = np.loadtxt(path, delimiter=",", skiprows=1, ndmin=2)
    except (OSError, ValueError) as exc:
        raise MalformedInputError(f"cannot read curve CSV: {exc}") from exc
    samples = [solver.CurveSample(R=float(r[0]), Q=float(r[1]), kernel=None,
                                  support_size=0) for r in rows]
    return solver.TradeoffCurve(samples=samples, S_E=samples[0].Q,
                                H_p=samples[-1].R)


def cmd_tensor(args, run):
    c1 = _load_curve_csv(args.curve1)
    c2 = _load_curve_csv(args.curve2)
    val = solver.tensor_tradeoff(c1, c2, args.R)
    run.emit(["R", "Q"], [(float(args.R), float(val))])


def cmd_uniform_qubit(args, run):
    if args.discretize:
        Rs = np.linspace(args.R_min, args.R_max, args.samples)
        Qd, eps = closedform.discretized_uniform_qubit_curve(
            args.discretize, Rs)
        run.manifest_extra["covering_radius"] = eps
        run.emit(["R", "Q_closed_form", "Q_discretized"],
                 [(float(r), closedform.uniform_qubit_Q(float(r)), float(q))
                  for r, q in zip(Rs, Qd)])
    else:
        pts = closedform.uniform_qubit_curve(args.samples)
        run.emit(["R", "Q", "grid_k", "support_size"],
                 [(float(r), float(q), 0, 0) for r, q in pts])


def cmd_simulate_rst(args, run):
    if args.bsc is not None:
        W = np.array([[1 - args.bsc, args.bsc], [args.bsc, 1 - args.bsc]])
    elif args.W:
        with open(args.W) as fh:
            W = np.asarray(json.load(fh), dtype=float)
    else:
        raise MalformedInputError("need --bsc or --W")
    if args.P:
        with open(args.P) as fh:
            P = np.asarray(json.load(fh), dtype=float)
    else:
        P = np.full(W.shape[0], 1.0 / W.shape[0])
    rep = typicality.reverse_shannon_sim(W, P, args.n, args.delta,
                                         seed=args.seed)
    run.emit(["n", "delta", "H_PW", "log_M", "log_N", "tv_estimate",
              "tv_mc", "tv_mc_error", "tv_bound", "failure_prob"],
             [(rep.n, rep.delta, rep.H_PW, rep.log_M, rep.log_N,
               rep.tv_distance_estimate, rep.tv_mc, rep.tv_mc_error,
               rep.tv_bound, rep.failure_prob)])


def _kernel_from_args(E, args):
    if args.partition:
        labels = [int(v) for v in args.partition.split(",")]
        if len(labels) != E.m:
            raise MalformedInputError("partition length must equal m")
        J = max(labels) + 1
        K = np.zeros((E.m, J))
        for i, j in enumerate(labels):
            K[i, j] = 1.0
        return K
    if args.kernel:
        with open(args.kernel) as fh:
            return np.asarray(json.load(fh), dtype=float)
    raise MalformedInputError("need --kernel or --partition")


def cmd_audit_coding(args, run):
    E, _ = load_ensemble(args.ensemble)
    K = _kernel_from_args(E, args)
    rep = typicality.coded_fidelity_audit(E, K, args.n, args.delta,
                                          seed=args.seed)
    run.manifest_extra["rates"] = {
        "classical_leading": rep.classical_leading,
        "classical_total": rep.classical_rate,
        "quantum_leading": rep.quantum_leading,
        "quantum_total": rep.quantum_rate,
    }
    run.emit(["sample", "p_typical_J", "overlap", "fidelity_lb", "bound"],
             [(i, e["p_typical_J"], e["overlap"], e["fidelity_lb"], rep.bound)
              for i, e in enumerate(rep.per_I)])


def cmd_oracle(args, run):
    E, _ = load_ensemble(args.ensemble)
    fn = oracle.brute_force_N if args.N_mode else oracle.brute_force_M
    val = fn(E, args.R, J_max=args.J_max, steps=args.steps)
    run.emit(["R", "value", "steps", "mode"],
             [(float(args.R), float(val), args.steps,
               "N" if args.N_mode else "M")])


def build_parser():
    parser = argparse.ArgumentParser(
        prog="qctradeoff",
        description="Quantum-classical trade-off curves for pure-state sources")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, seeded=False):
        p.add_argument("--output", help="CSV output path (default stdout)")
        p.add_argument("--manifest", help="JSON manifest path (default stderr)")
        p.add_argument("--threads", type=int,
                       default=os.cpu_count(),
                       help="parallelism cap for internal sweeps")
        if seeded:
            env = os.environ.get("TRADEOFF_SEED")
            p.add_argument("--seed", type=int,
                           default=int(env) if env else 0)

    p = sub.add_parser("curve", help="trade-off curve for an ensemble file")
    p.add_argument("--ensemble", required=True)
    p.add_argument("--samples", type=int, default=21)
    p.add_argument("--grid-k", type=int)
    p.add_argument("--no-refine", action="store_true")
    common(p, seeded=True)
    p.set_defaults(func=cmd_curve)

    p = sub.add_parser("point", help="single M/X/N value")
    p.add_argument("--ensemble", required=True)
    p.add_argument("--R", type=float, required=True)
    p.add_argument("--quantity", choices=["M", "X", "N"], default="M")
    p.add_argument("--grid-k", type=int)
    common(p, seeded=True)
    p.set_defaults(func=cmd_point)

    p = sub.add_parser("avs", help="AVS supremum over priors")
    p.add_argument("--ensemble", required=True)
    p.add_argument("--R", type=float, required=True)
    p.add_argument("--vertices", help="JSON list of prior vertices "
                   "(default: all point masses)")
    p.add_argument("--mesh", type=int, default=16)
    common(p, seeded=True)
    p.set_defaults(func=cmd_avs)

    p = sub.add_parser("blind", help="blind rate and irreducible components")
    p.add_argument("--ensemble", required=True)
    common(p)
    p.set_defaults(func=cmd_blind)

    p = sub.add_parser("tensor", help="combine two curve CSV files")
    p.add_argument("--curve1", required=True)
    p.add_argument("--curve2", required=True)
    p.add_argument("--R", type=float, required=True)
    common(p)
    p.set_defaults(func=cmd_tensor)

    p = sub.add_parser("uniform-qubit",
                       help="closed-form samples / discretized cross-check")
    p.add_argument("--samples", type=int, default=41)
    p.add_argument("--discretize", type=int,
                   help="discretize with this many states and compare")
    p.add_argument("--R-min", type=float, default=0.1)
    p.add_argument("--R-max", type=float, default=2.0)
    common(p)
    p.set_defaults(func=cmd_uniform_qubit)

    p = sub.add_parser("simulate-rst", help="reverse Shannon simulation")
    p.add_argument("--bsc", type=float, help="binary symmetric channel flip")
    p.add_argument("--W", help="JSON stochastic matrix file")
    p.add_argument("--P", help="JSON prior file (default uniform)")
    p.add_argument("--n", type=int, default=400)
    p.add_argument("--delta", type=float, default=8.0)
    common(p, seeded=True)
    p.set_defaults(func=cmd_simulate_rst)

    p = sub.add_parser("audit-coding", help="finite-n fidelity audit")
    p.add_argument("--ensemble", required=True)
    p.add_argument("--kernel", help="JSON kernel matrix file")
    p.add_argument("--partition", help="comma list mapping state -> symbol")
    p.add_argument("--n", type=int, default=200)
    p.add_argument("--delta", type=float, default=20.0)
    common(p, seeded=True)
    p.set_defaults(func=cmd_audit_coding)

    p = sub.add_parser("oracle", help="brute-force reference value")
    p.add_argument("--ensemble", required=True)
    p.add_argument("--R", type=float, required=True)
    p.add_argument("--steps", type=int, default=40)
    p.add_argument("--J-max", type=int)
    p.add_argument("--N-mode", action="store_true")
    common(p, seeded=True)
    p.set_defaults(func=cmd_oracle)
    return parser


def run(argv) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_MALFORMED if exc.code not in (0, None) else 0
    runner = Runner(args, args.command)
    try:
        args.func(args, runner)
        runner.finish()
    except MalformedInputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_MALFORMED
    except (ValueError,) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_MALFORMED
    except oracle.BudgetExceededError as exc:
        print(f"budget exceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except Exception as exc:
        from .simplexlp import InfeasibleError
        if isinstance(exc, InfeasibleError):
            print(f"infeasible: {exc}", file=sys.stderr)
            return EXIT_INFEASIBLE
        raise
    return 0


def main():
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
