"""Command-line pipeline: signal generation, prediction systems, fitting,
frequency sweeps, state preparation and root recovery.

Every output file starts with ``#`` comments echoing the resolved
configuration, so a result documents the invocation that produced it and
identical invocations produce byte-identical files. Error paths print a
single line ``error: <exit-code>: <detail>`` on stderr: exit 2 flags bad
usage, 1 I/O or format problems, 3 a genericity failure (margin included in
the message) and 4 an impossible conditioning step.
"""
from __future__ import annotations

import argparse
import math
import sys
from pathlib import Path

import numpy as np

from . import matio, prony
from .errors import (GenericityViolated, NonGeneric, ResofitError,
                     ZeroProbability)
from .fitting import FitProblem, augment, ls_solve, solver_report, tls_closed_form, tls_solve
from .hamiltonian import embed_vector, make_embedding, reference_b, reference_ls
from .numerics import hermitian_eig
from .resonance import (SweepPlan, algorithm2_iterate, apply_sampling,
                        collapse_algorithm1, sweep_algorithm1,
                        sweep_algorithm2, sweep_csv)


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        print(f"error: 2: {message}", file=sys.stderr)
        raise SystemExit(2)


def _usage_error(message: str) -> int:
    print(f"error: 2: {message}", file=sys.stderr)
    return 2


def _render(value) -> str:
    if isinstance(value, float):
        return matio.format_float(value)
    return str(value)


def _config_comments(command: str, resolved: dict) -> list[str]:
    lines = [f"resofit {command}"]
    for key in sorted(resolved):
        if resolved[key] is not None:
            lines.append(f"{key}={_render(resolved[key])}")
    return lines


def _print_report(report: dict) -> None:
    for key, value in report.items():
        print(f"{key}={matio.format_float(value)}")


def _load_problem(args) -> FitProblem:
    return FitProblem(matio.read_matrix(args.A), matio.read_vector(args.b))


def _reference(problem, emb, ref: str, algorithm: int) -> tuple[str, np.ndarray]:
    if ref == "default":
        ref = "b" if algorithm == 1 else "ls"
    if ref == "b":
        return ref, reference_b(problem, emb)
    if ref == "ls":
        return ref, reference_ls(problem, emb, augmented=False)
    if ref == "ls-aug":
        return ref, reference_ls(problem, emb, augmented=True)
    if ref.startswith("file:"):
        v = matio.read_vector(ref[len("file:"):])
        norm = np.linalg.norm(v)
        if norm == 0.0:
            raise ValueError("reference state file holds a zero vector")
        return ref, embed_vector(v / norm, emb)
    raise ValueError(f"unknown reference {ref!r}")


def cmd_prony_gen(args) -> int:
    if (args.preset is None) == (args.params is None):
        return _usage_error("exactly one of --preset or --params is required")
    if args.preset is not None:
        params = prony.PRESETS[args.preset]()
    else:
        params = prony.read_params(args.params)
    samples = prony.gen_signal(params, args.count)
    resolved = {"preset": args.preset, "params": args.params,
                "count": args.count, "out": args.out}
    prony.write_signal(args.out, samples, _config_comments("prony-gen", resolved))
    return 0


def cmd_lp_build(args) -> int:
    samples = prony.read_signal(args.signal)
    problem = prony.build_lp_system(samples, args.N, args.M)
    resolved = {"signal": args.signal, "N": args.N, "M": args.M,
                "out_A": args.out_A, "out_b": args.out_b}
    comments = _config_comments("lp-build", resolved)
    matio.write_matrix(args.out_A, problem.a, comments)
    matio.write_vector(args.out_b, problem.b, comments)
    return 0


def cmd_fit(args) -> int:
    problem = _load_problem(args)
    report = solver_report(problem)
    if args.method == "ls":
        x = ls_solve(problem)
    elif args.method == "tls":
        x = tls_solve(problem).x_tls
    else:  # tls-closed
        x = tls_closed_form(problem, report["sigma_min"])
    resolved = {"A": args.A, "b": args.b, "method": args.method, "out": args.out}
    matio.write_vector(args.out, x, _config_comments("fit", resolved))
    _print_report(report)
    return 0


def cmd_sweep(args) -> int:
    if args.time is None:
        if args.algorithm == 1:
            return _usage_error("--time is required for algorithm 1")
        args.time = math.pi / (2.0 * args.coupling)
    if args.mode == "sampled" and args.shots is None:
        return _usage_error("--shots is required in sampled mode")
    problem = _load_problem(args)
    emb = make_embedding(problem, args.embedding)
    ref_name, ref = _reference(problem, emb, args.ref, args.algorithm)
    plan = SweepPlan(args.omega_min, args.omega_max, args.points,
                     args.epsilon0, args.coupling, args.time)
    if args.algorithm == 1:
        result = sweep_algorithm1(problem, plan, psi=ref, emb=emb)
    else:
        result = sweep_algorithm2(problem, plan, phi0=ref, emb=emb)
    if args.mode == "sampled":
        result = apply_sampling(result, args.shots, args.seed)
    resolved = {"A": args.A, "b": args.b, "algorithm": args.algorithm,
                "epsilon0": args.epsilon0, "coupling": args.coupling,
                "time": args.time, "omega_min": args.omega_min,
                "omega_max": args.omega_max, "points": args.points,
                "mode": args.mode, "shots": args.shots, "seed": args.seed,
                "embedding": args.embedding, "ref": ref_name, "out": args.out}
    Path(args.out).write_text(sweep_csv(result, _config_comments("sweep", resolved)))
    return 0


def cmd_prepare(args) -> int:
    if args.algorithm == 1 and args.time is None:
        return _usage_error("--time is required for algorithm 1")
    problem = _load_problem(args)
    emb = make_embedding(problem, args.embedding)
    ref_name, ref = _reference(problem, emb, args.ref, args.algorithm)
    if args.algorithm == 1:
        res = collapse_algorithm1(problem, args.omega, args.epsilon0,
                                  args.coupling, args.time, psi=ref, emb=emb)
        state, fidelity, success = res.state, res.fidelity, res.p_success
        time = args.time
    else:
        res = algorithm2_iterate(problem, ref, args.epsilon0, args.coupling,
                                 args.iterations, omega=args.omega,
                                 tau=args.time, emb=emb)
        state, fidelity, success = res.state, res.fidelity, res.success_prob
        time = args.time if args.time is not None else math.pi / (2.0 * args.coupling)
    resolved = {"A": args.A, "b": args.b, "algorithm": args.algorithm,
                "omega": args.omega, "epsilon0": args.epsilon0,
                "coupling": args.coupling, "time": time,
                "iterations": args.iterations if args.algorithm == 2 else None,
                "embedding": args.embedding, "ref": ref_name, "out": args.out}
    matio.write_vector(args.out, state, _config_comments("prepare", resolved))
    print(f"fidelity={matio.format_float(fidelity)}")
    print(f"success_prob={matio.format_float(success)}")
    return 0


def cmd_roots(args) -> int:
    x = matio.read_vector(args.x)
    for z, lam in prony.recover_modes(x, args.T):
        print(f"{matio.format_float(z.real)} {matio.format_float(z.imag)} "
              f"{matio.format_float(lam.real)} {matio.format_float(lam.imag)}")
    return 0


def cmd_eig(args) -> int:
    problem = _load_problem(args)
    for value in hermitian_eig(augment(problem).d).eigenvalues:
        print(matio.format_float(value))
    return 0


def _add_problem_flags(parser) -> None:
    parser.add_argument("--A", required=True, help="observation matrix file")
    parser.add_argument("--b", required=True, help="observation vector file")


def _add_physics_flags(parser) -> None:
    parser.add_argument("--algorithm", type=int, choices=(1, 2), required=True)
    parser.add_argument("--epsilon0", type=float, required=True,
                        help="reference level parameter")
    parser.add_argument("--coupling", type=float, required=True,
                        help="probe-register coupling strength")
    parser.add_argument("--time", type=float, default=None,
                        help="evolution time (algorithm 2 defaults to pi/(2c))")
    parser.add_argument("--embedding", choices=("exact", "qubit"), default="exact")
    parser.add_argument("--ref", default="default",
                        help="register reference: b, ls, ls-aug or file:<path> "
                             "(default: b for algorithm 1, ls for algorithm 2)")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="resofit",
                     description="total-least-squares fitting and resonant-transition simulation")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("prony-gen", help="generate a damped-exponential signal file")
    p.add_argument("--preset", choices=sorted(prony.PRESETS))
    p.add_argument("--params", help="mode parameter file")
    p.add_argument("--count", type=int, required=True, help="number of samples")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_prony_gen)

    p = sub.add_parser("lp-build", help="build the Hankel prediction system from a signal")
    p.add_argument("--signal", required=True)
    p.add_argument("--N", type=int, required=True, help="predictor order (columns)")
    p.add_argument("--M", type=int, required=True, help="window count (rows)")
    p.add_argument("--out-A", required=True)
    p.add_argument("--out-b", required=True)
    p.set_defaults(func=cmd_lp_build)

    p = sub.add_parser("fit", help="solve the fitting problem")
    _add_problem_flags(p)
    p.add_argument("--method", choices=("ls", "tls", "tls-closed"), required=True)
    p.add_argument("--out", required=True, help="solution vector file")
    p.set_defaults(func=cmd_fit)

    p = sub.add_parser("sweep", help="scan the probe frequency and record decay probabilities")
    _add_problem_flags(p)
    _add_physics_flags(p)
    p.add_argument("--omega-min", type=float, required=True)
    p.add_argument("--omega-max", type=float, required=True)
    p.add_argument("--points", type=int, required=True)
    p.add_argument("--mode", choices=("deterministic", "sampled"), default="deterministic")
    p.add_argument("--shots", type=int, default=None)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", required=True, help="spectrum file")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("prepare", help="prepare the register in the TLS ground vector")
    _add_problem_flags(p)
    _add_physics_flags(p)
    p.add_argument("--omega", type=float, required=True, help="resonant probe frequency")
    p.add_argument("--iterations", type=int, default=1,
                   help="successful measurements required (algorithm 2)")
    p.add_argument("--out", required=True, help="register state file")
    p.set_defaults(func=cmd_prepare)

    p = sub.add_parser("roots", help="characteristic roots of a predictor vector")
    p.add_argument("--x", required=True, help="predictor coefficient file")
    p.add_argument("--T", type=float, required=True, help="sample interval")
    p.set_defaults(func=cmd_roots)

    p = sub.add_parser("eig", help="eigenvalues of the augmented Gram matrix")
    _add_problem_flags(p)
    p.set_defaults(func=cmd_eig)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except GenericityViolated as exc:
        print(f"error: 3: genericity violated: margin={matio.format_float(exc.margin)}",
              file=sys.stderr)
        return 3
    except NonGeneric as exc:
        print(f"error: 3: {exc}", file=sys.stderr)
        return 3
    except ZeroProbability as exc:
        print(f"error: 4: {exc}", file=sys.stderr)
        return 4
    except (OSError, ValueError, ResofitError) as exc:
        print(f"error: 1: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
