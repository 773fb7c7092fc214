"""Command-line interface.

Exit codes: 0 success, 1 domain error, 2 usage error. Vectors, matrices
and partitions are given inline as JSON or as paths to JSON files.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Sequence

from . import jsonio
from .entanglement import conversion_plan, ce_ocr_state
from .errors import LatticeError
from .lattice import EXACT, FLOAT, compare, join, meet
from .mixed import (
    block_decompose,
    deterministic_mixed_feasible,
    diagonal_vector,
    ensemble_ocr_probability,
    mixed_pct_plan,
    ocr_state,
    search_partition,
)
from .protocols import compare_protocols, greedy_plan, thrifty_plan
from .simulate import PROTOCOLS, SimConfig, simulate
from .transform import (
    failure_operator,
    intermediate_state,
    ladder,
    max_probability,
    residual_state,
    success_operator,
)

EXIT_OK, EXIT_DOMAIN, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _vec(args, source: str):
    try:
        return jsonio.read_vector(jsonio.load(source), args.mode)
    except (json.JSONDecodeError, KeyError, TypeError, OSError) as exc:
        raise UsageError(f"cannot read vector {source!r}: {exc}") from exc


def _load(source: str):
    try:
        return jsonio.load(source)
    except (json.JSONDecodeError, OSError) as exc:
        raise UsageError(f"cannot read {source!r}: {exc}") from exc


def _fmt(x) -> str:
    return str(jsonio.scalar(x))


def _fmt_vec(p) -> str:
    return "(" + ", ".join(_fmt(c) for c in p.components) + ")"


def cmd_compare(args):
    a, b = (_vec(args, s) for s in args.inputs)
    order = compare(a, b)
    doc = jsonio.document(command="compare", a=jsonio.vector(a), b=jsonio.vector(b), order=order.value)
    return doc, order.value


def cmd_lattice(args):
    vecs = [_vec(args, s) for s in args.inputs]
    op = meet if args.command == "meet" else join
    out = op(vecs)
    doc = jsonio.document(command=args.command, inputs=[jsonio.vector(v) for v in vecs], result=jsonio.vector(out))
    return doc, _fmt_vec(out)


def cmd_ladder(args):
    psi, phi = _vec(args, args.psi), _vec(args, args.phi)
    lad = ladder(psi, phi)
    fields = dict(command="ladder", ladder=jsonio.ladder(lad), max_probability=jsonio.scalar(max_probability(psi, phi)),
                  intermediate=jsonio.vector(intermediate_state(phi, lad)))
    if not lad.deterministic:
        M = success_operator(lad)
        fields.update(success_operator=jsonio.operator(M), failure_operator=jsonio.operator(failure_operator(M)),
                      residual=jsonio.vector(residual_state(intermediate_state(phi, lad), lad)))
    text = "; ".join(f"q={_fmt(q)} l={l}" for q, l in lad.steps)
    return jsonio.document(**fields), text


def cmd_plan(args):
    psi, phi = _vec(args, args.psi), _vec(args, args.phi)
    if args.protocol == "both":
        c = compare_protocols(psi, phi)
        doc = jsonio.document(command="plan", protocol="both", comparison=jsonio.comparison(c))
        text = (f"q1={_fmt(c.greedy.success_probability)} residuals_ordered={c.residuals_ordered} "
                f"entropy_gap={c.entropy_gap:.6f}")
        return doc, text
    p = greedy_plan(psi, phi) if args.protocol == "greedy" else thrifty_plan(psi, phi)
    doc = jsonio.document(command="plan", protocol=args.protocol, plan=jsonio.plan(p))
    text = f"{p.kind}: q1={_fmt(p.success_probability)} intermediate={_fmt_vec(p.intermediate)}"
    if p.residual is not None:
        text += f" residual={_fmt_vec(p.residual)}"
    return doc, text


def cmd_simulate(args):
    psi, phi = _vec(args, args.psi), _vec(args, args.phi)
    try:
        cfg = SimConfig(seed=args.seed, trials=args.trials, protocol=args.protocol,
                        record_outcomes=args.record_outcomes)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    report = simulate(psi, phi, cfg)
    doc = jsonio.document(command="simulate", source=jsonio.vector(psi), target=jsonio.vector(phi),
                          report=jsonio.sim_report(report))
    text = f"success rate {report.success_rate:.6f} (q1={_fmt(report.success_probability)}, trials={report.trials})"
    for s in report.stats:
        if s.mean_failure_entropy is not None:
            text += f"\n  {s.protocol}: mean failure entropy {s.mean_failure_entropy:.6f}"
    return doc, text


def cmd_mixed(args):
    rho = jsonio.read_matrix(_load(args.rho))
    sigma = jsonio.read_matrix(_load(args.sigma))
    part = jsonio.read_partition(_load(args.partition)) if args.partition else search_partition(rho)
    feasible = deterministic_mixed_feasible(rho, sigma, part)
    fields = dict(command="mixed-check", partition=jsonio.partition(part), feasible=feasible,
                  target=jsonio.vector(diagonal_vector(sigma)))
    try:
        block_decompose(rho, part)
    except LatticeError:
        fields["blocks_pure"] = False
    else:
        fields["blocks_pure"] = True
        fields["plan"] = jsonio.mixed_plan(mixed_pct_plan(rho, sigma, part))
    return jsonio.document(**fields), f"partition={jsonio.partition(part)} feasible={feasible}"


def cmd_ensemble(args):
    psi = _vec(args, args.psi)
    targets = [_vec(args, t) for t in args.targets]
    q = ensemble_ocr_probability(psi, targets)
    doc = jsonio.document(command="ensemble-ocr", source=jsonio.vector(psi),
                          targets=[jsonio.vector(t) for t in targets],
                          ocr_state=jsonio.vector(ocr_state([psi, *targets])), probability=jsonio.scalar(q))
    return doc, f"q={_fmt(q)}"


def cmd_ent(args):
    psi, lam = _vec(args, args.psi), _vec(args, args.schmidt)
    plan = conversion_plan(psi, lam)
    doc = jsonio.document(
        command="ent-convert",
        probability=jsonio.scalar(plan.probability),
        ocr_state=jsonio.vector(ce_ocr_state(psi, lam)),
        plan=None if plan.plan is None else jsonio.plan(plan.plan),
        success=None if plan.success is None else {"schmidt": jsonio.vector(plan.success.schmidt)["components"],
                                                   "entropy": plan.success.entropy},
        failure=None if plan.failure is None else {"schmidt": jsonio.vector(plan.failure.schmidt)["components"],
                                                   "entropy": plan.failure.entropy},
    )
    return doc, f"p={_fmt(plan.probability)}"


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--mode", choices=(EXACT, FLOAT), default=EXACT)
    common.add_argument("--json", action="store_true", help="emit a JSON document")
    common.add_argument("--out", help="write output to this path instead of stdout")

    parser = argparse.ArgumentParser(prog="coherence-lattice",
                                     description="Majorization-lattice coherence transformation toolkit.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("compare", parents=[common], help="majorization order of two vectors")
    p.add_argument("--inputs", nargs=2, required=True, metavar="VEC")
    p.set_defaults(func=cmd_compare)

    for name in ("meet", "join"):
        p = sub.add_parser(name, parents=[common], help=f"lattice {name} of vectors")
        p.add_argument("--inputs", nargs="+", required=True, metavar="VEC")
        p.set_defaults(func=cmd_lattice)

    p = sub.add_parser("ladder", parents=[common], help="transformation ladder and operators")
    p.add_argument("--psi", required=True)
    p.add_argument("--phi", required=True)
    p.set_defaults(func=cmd_ladder)

    p = sub.add_parser("plan", parents=[common], help="greedy / thrifty protocol plan")
    p.add_argument("--psi", required=True)
    p.add_argument("--phi", required=True)
    p.add_argument("--protocol", choices=("greedy", "thrifty", "both"), default="thrifty")
    p.set_defaults(func=cmd_plan)

    p = sub.add_parser("simulate", parents=[common], help="seeded Monte Carlo run")
    p.add_argument("--psi", required=True)
    p.add_argument("--phi", required=True)
    p.add_argument("--protocol", choices=PROTOCOLS, default="both")
    p.add_argument("--seed", type=int, default=42)
    p.add_argument("--trials", type=int, default=10_000)
    p.add_argument("--record-outcomes", action="store_true")
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("mixed-check", parents=[common], help="mixed-state deterministic feasibility")
    p.add_argument("--rho", required=True)
    p.add_argument("--sigma", required=True)
    p.add_argument("--partition", help="list of 1-based index lists; searched when omitted")
    p.set_defaults(func=cmd_mixed)

    p = sub.add_parser("ensemble-ocr", parents=[common], help="probability of reaching the ensemble OCR state")
    p.add_argument("--psi", required=True)
    p.add_argument("--targets", nargs="+", required=True)
    p.set_defaults(func=cmd_ensemble)

    p = sub.add_parser("ent-convert", parents=[common], help="coherence to entanglement conversion")
    p.add_argument("--psi", required=True)
    p.add_argument("--schmidt", required=True)
    p.set_defaults(func=cmd_ent)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        doc, text = args.func(args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except LatticeError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except ValueError as exc:
        # malformed numbers or matrices that never reach the domain layer
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE

    out = jsonio.dumps(doc) if args.json else text
    if args.out:
        Path(args.out).write_text(out + "\n")
    else:
        print(out)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
