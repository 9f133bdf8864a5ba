"""Batch command-line front end with deterministic, re-parseable reports.

Exit codes: 0 success / all PASS, 1 malformed input, 2 violated precondition,
3 unavailable strategy or exhausted budget, 4 a FAIL verdict in a report.
Reports are byte-identical across runs unless ``--timings`` is requested.
"""

import argparse
import sys
import time

from .counterexample import build, full_verification
from .errors import (
    BudgetExceeded,
    GroundTooLarge,
    MalformedInstance,
    PreconditionViolated,
    StrategyUnavailable,
    TropmatroidError,
)
from .instances import (
    bseries_json,
    build_diff_poly,
    build_family,
    build_ode,
    build_trop_solutions,
    build_trop_system,
    canonical_json,
    load_instance,
    parse_query,
    series_text,
    support_json,
)
from .matroid import (
    AXIOM_GROUND_CAP,
    BRUTE_FORCE,
    DEFAULT_BRUTE_BUDGET,
    dual_check,
    verify_circuit_axioms,
    verify_scrawl_axioms,
)
from .series import ode_solution_basis
from .tropical import is_trop_solution, semigroup_check, tropicalize

EXIT_OK = 0
EXIT_MALFORMED = 1
EXIT_PRECONDITION = 2
EXIT_STRATEGY = 3
EXIT_FAIL = 4

COMMANDS = (
    "circuits",
    "cocircuits",
    "independent",
    "scrawl-check",
    "supports",
    "axioms",
    "dual-check",
    "ode-basis",
    "tropicalize",
    "trop-check",
    "semigroup-check",
    "counterexample",
)


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        # flag misuse counts as malformed input, not a violated precondition
        self.exit(EXIT_MALFORMED, f"{self.prog}: error: {message}\n")


def _monomial_json(mono):
    return [
        {"var": i, "J": list(J), "pow": p} for i, J, p in mono.factors
    ]


def _handle_circuits(data, args):
    fam = build_family(data, "circuits")
    lines = [f"circuits: {len(fam.circuits())}"]
    for k, c in enumerate(fam.circuits()):
        lines.append(f"circuit {k}: {canonical_json(support_json(c))}")
    return lines, []


def _handle_cocircuits(data, args):
    fam = build_family(data, "cocircuits")
    cocs = fam.cocircuits()
    lines = [f"cocircuits: {len(cocs)}"]
    for k, c in enumerate(cocs):
        lines.append(f"cocircuit {k}: {canonical_json(support_json(c))}")
    return lines, []


def _handle_independent(data, args):
    fam = build_family(data, "independent")
    query = parse_query(data, fam.window, "independent")
    verdict = fam.is_independent(query)
    return [
        f"query: {canonical_json(support_json(query))}",
        f"independent: {'yes' if verdict else 'no'}",
    ], []


def _handle_scrawl_check(data, args):
    fam = build_family(data, "scrawl-check")
    query = parse_query(data, fam.window, "scrawl-check")
    closure = fam.scrawl_closure(query)
    return [
        f"query: {canonical_json(support_json(query))}",
        f"scrawl closure: {canonical_json(support_json(closure))}",
        f"is scrawl: {'yes' if closure.members == query.members else 'no'}",
    ], []


def _handle_supports(data, args):
    fam = build_family(data, "supports")
    if args.strategy == BRUTE_FORCE:
        sets = fam.supports_enumerate(args.budget)
    else:
        sets = fam.supports_via_psi()
    lines = [f"strategy: {args.strategy}", f"supports: {len(sets)}"]
    for k, s in enumerate(sets):
        lines.append(f"support {k}: {canonical_json(support_json(s))}")
    return lines, []


def _handle_axioms(data, args):
    fam = build_family(data, "axioms")
    if fam.window.size > AXIOM_GROUND_CAP:
        raise GroundTooLarge(
            f"axiom verification capped at window size {AXIOM_GROUND_CAP}"
        )
    circuit_report = verify_circuit_axioms(
        fam.window.size, [c.members for c in fam.circuits()]
    )
    reports = [circuit_report]
    lines = []
    if fam.cardinality_condition():
        supports = fam.supports_via_psi()
        reports.append(
            verify_scrawl_axioms(fam.window.size, [s.members for s in supports])
        )
    else:
        lines.append(
            "scrawl axioms skipped: cardinality condition fails on this window"
        )
    return lines, reports


def _handle_dual_check(data, args):
    fam = build_family(data, "dual-check")
    return [], [dual_check(fam)]


def _handle_ode_basis(data, args):
    alphas = build_ode(data, "ode-basis")
    order = args.order if args.order is not None else alphas[0].bounds[0] - 1
    basis = ode_solution_basis(alphas, order)
    lines = [f"order: {order}", f"dimension: {len(basis)}"]
    for k, sol in enumerate(basis):
        lines.append(f"solution {k}: {series_text(sol)}")
    return lines, []


def _handle_tropicalize(data, args):
    poly = build_diff_poly(data, "tropicalize")
    trop = tropicalize(poly)
    lines = [f"terms: {len(trop.terms)}"]
    for k, (coeff, mono) in enumerate(trop.terms):
        lines.append(
            f"term {k}: monomial {canonical_json(_monomial_json(mono))} "
            f"coeff {canonical_json(bseries_json(coeff))}"
        )
    return lines, []


def _handle_trop_check(data, args):
    from .reports import Report

    system = build_trop_system(data, "trop-check")
    solutions = build_trop_solutions(data, "trop-check")
    report = Report("tropical solution check")
    for si, sol in enumerate(solutions):
        for pi, p in enumerate(system):
            report.add(
                f"candidate {si} solves polynomial {pi}",
                is_trop_solution(p, sol),
            )
    return [], [report]


def _handle_semigroup_check(data, args):
    system = build_trop_system(data, "semigroup-check")
    solutions = build_trop_solutions(data, "semigroup-check")
    return [], [semigroup_check(system, solutions)]


def _handle_counterexample(args):
    inst = build(args.order, args.b0, args.c0)
    report, gap_table = full_verification(
        inst, args.derivative_bound, args.samples, args.seed
    )
    lines = [
        f"order: {inst.order}",
        f"requested seeds: b0={inst.requested_seeds[0]} c0={inst.requested_seeds[1]}",
        f"forced seeds: b0={inst.forced_seeds[0]} c0={inst.forced_seeds[1]}",
        "beta coefficients: " + ", ".join(str(x) for x in inst.b),
        "gamma coefficients: " + ", ".join(str(x) for x in inst.c),
        "gap table (lam1, lam2, predicted, scanned, certified):",
    ]
    for row in gap_table:
        lines.append(
            f"  {row['lam1']}, {row['lam2']} -> {row['predicted']}, "
            f"scan {row['scanned']}, certified {'yes' if row['certified'] else 'no'}"
        )
    return lines, [report]


_HANDLERS = {
    "circuits": _handle_circuits,
    "cocircuits": _handle_cocircuits,
    "independent": _handle_independent,
    "scrawl-check": _handle_scrawl_check,
    "supports": _handle_supports,
    "axioms": _handle_axioms,
    "dual-check": _handle_dual_check,
    "ode-basis": _handle_ode_basis,
    "tropicalize": _handle_tropicalize,
    "trop-check": _handle_trop_check,
    "semigroup-check": _handle_semigroup_check,
}


def build_parser():
    parser = _Parser(
        prog="tropmatroid",
        description="support matroids, tropical vanishing, and the order-two "
        "counterexample instance, on file-described inputs",
    )
    parser.add_argument("command", choices=COMMANDS)
    parser.add_argument("instance", nargs="?", help="instance file (JSON)")
    parser.add_argument("--out", help="write the report here instead of stdout")
    parser.add_argument("--order", "--N", type=int, default=None,
                        help="truncation / solution order")
    parser.add_argument("--derivative-bound", type=int, default=5)
    parser.add_argument("--samples", type=int, default=50)
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--strategy", choices=("psi", "brute"), default="brute")
    parser.add_argument("--budget", type=int, default=DEFAULT_BRUTE_BUDGET)
    parser.add_argument("--b0", type=int, default=0)
    parser.add_argument("--c0", type=int, default=0)
    parser.add_argument("--timings", action="store_true",
                        help="append elapsed time (breaks byte-determinism)")
    return parser


def run(args):
    """Execute one command; returns (report_text, exit_code)."""
    started = time.perf_counter()
    if args.command == "counterexample":
        if args.order is None:
            args.order = 40
        echo = {
            "command": "counterexample",
            "order": args.order,
            "derivative_bound": args.derivative_bound,
            "samples": args.samples,
            "seed": args.seed,
            "b0": args.b0,
            "c0": args.c0,
        }
        results, reports = _handle_counterexample(args)
    else:
        if not args.instance:
            raise MalformedInstance(f"command {args.command!r} needs an instance file")
        data = load_instance(args.instance)
        echo = data
        results, reports = _HANDLERS[args.command](data, args)

    lines = ["tropmatroid report", f"command: {args.command}"]
    lines.append(f"instance: {canonical_json(echo)}")
    if results:
        lines.append("-- results --")
        lines.extend(results)
    for report in reports:
        lines.append("-- checks --")
        lines.extend(report.lines())
    if args.timings:
        lines.append(f"elapsed: {time.perf_counter() - started:.3f}s")
    text = "\n".join(lines) + "\n"
    code = EXIT_OK if all(r.passed for r in reports) else EXIT_FAIL
    return text, code


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        text, code = run(args)
    except MalformedInstance as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_MALFORMED
    except (StrategyUnavailable, BudgetExceeded) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_STRATEGY
    except PreconditionViolated as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION
    except TropmatroidError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION
    if args.out:
        with open(args.out, "w", encoding="utf-8") as handle:
            handle.write(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
