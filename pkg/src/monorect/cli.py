"""Command-line interface.

Exit codes: 0 success (and, for check/fuzz, all checks passed);
1 verification failure; 2 input error; 3 enumeration cap exceeded.
"""

from __future__ import annotations

import argparse
import random
import sys
from pathlib import Path

from .circuit import Literal, Pool, Term, condition
from .classifier import Classifier, as_instance, fact_formula, is_positive
from .dtree import attach_label, circuit_to_dt, dt_rectify, dt_to_circuit
from .errors import (
    BuildError,
    CapExceededError,
    CertificationError,
    ParseError,
    RectifyError,
)
from .formats import (
    parse_problem,
    parse_tree_file,
    print_circuit,
    print_dtree,
)
from .randgen import random_classifier, random_problem, random_theory
from .rectify import classify_rectified, rectify
from .semantics import DEFAULT_VAR_CAP, Assignment, equivalent, evaluate
from .verify import check_postulates, dalal_rectify, oracle_rectify


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return args.func(args)
    except CapExceededError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except (ParseError, BuildError, CertificationError, RectifyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (ValueError, TypeError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="monorect",
        description="Rectify single-label Boolean classifiers against background knowledge.",
    )
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument(
        "--max-vars",
        type=int,
        default=DEFAULT_VAR_CAP,
        help=f"enumeration cap for brute-force checks (default {DEFAULT_VAR_CAP})",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("rectify", parents=[common], help="print the rectified classifier")
    p.add_argument("--problem", required=True, help="problem file")
    p.add_argument("--out", choices=("circuit", "dtree"), default="circuit")
    p.add_argument(
        "--simplify",
        action="store_true",
        help="print semantically reduced output (circuit output is rebuilt "
        "from its decision-tree expansion; dtree output is always reduced)",
    )
    p.set_defaults(func=_cmd_rectify)

    p = sub.add_parser("classify", parents=[common], help="classify one instance")
    p.add_argument("--problem", required=True)
    p.add_argument("--instance", required=True, help="instance word such as 110")
    p.set_defaults(func=_cmd_classify)

    p = sub.add_parser("table", parents=[common], help="one row per instance")
    p.add_argument("--problem", required=True)
    p.set_defaults(func=_cmd_table)

    p = sub.add_parser("check", parents=[common], help="run the postulate battery")
    p.add_argument("--problem", required=True)
    p.add_argument("--rewrites", type=int, default=5, help="syntactic variants to try")
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=_cmd_check)

    p = sub.add_parser("dt-rectify", parents=[common], help="rectify a decision tree")
    p.add_argument("--sigma", required=True, help="classifier tree file")
    p.add_argument("--theory", required=True, help="background-knowledge tree file")
    p.set_defaults(func=_cmd_dt_rectify)

    p = sub.add_parser("fuzz", parents=[common], help="random oracle-equivalence battery")
    p.add_argument("--vars", type=int, default=6, help="number of features")
    p.add_argument("--iters", type=int, default=100)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=_cmd_fuzz)

    return parser


def _load(args):
    return parse_problem(Path(args.problem).read_text(encoding="utf-8"))


def _certify(pf, cap: int) -> Classifier:
    clf = Classifier(pf.problem, pf.sigma, cap=cap)
    if not clf.certified:
        raise CertificationError(
            "sigma is not a classification circuit: some instance lacks a unique label assignment"
        )
    return clf


def _cmd_rectify(args) -> int:
    pf = _load(args)
    clf = _certify(pf, args.max_vars)
    result = rectify(clf, pf.theory)
    if args.out == "circuit":
        accepted = result.positive
        full = result.rectified.circuit
        if args.simplify:
            feats = pf.problem.features
            accepted = _via_tree(accepted, feats, pf.pool, args.max_vars)
            full = _via_tree(full, pf.problem.all_vars, pf.pool, args.max_vars)
        print(f"positive: {print_circuit(accepted)}")
        print(f"rectified: {print_circuit(full)}")
    else:
        tree = circuit_to_dt(result.positive, pf.problem.features, cap=args.max_vars)
        print(f"positive: {print_dtree(tree)}")
        print(f"rectified: {print_dtree(attach_label(tree, pf.problem.label))}")
    return 0


def _via_tree(circ, order, pool, cap):
    return dt_to_circuit(circuit_to_dt(circ, order, cap=cap), pool)


def _cmd_classify(args) -> int:
    pf = _load(args)
    clf = _certify(pf, args.max_vars)
    result = rectify(clf, pf.theory)
    inst = as_instance(pf.problem, args.instance)
    before = "pos" if is_positive(clf, inst) else "neg"
    after = "pos" if classify_rectified(result, inst) else "neg"
    print(f"sigma: {before}, rectified: {after}")
    return 0


def _cmd_table(args) -> int:
    pf = _load(args)
    if not pf.problem.mono_label:
        raise ValueError("the table command needs a single-label problem")
    clf = _certify(pf, args.max_vars)
    result = rectify(clf, pf.theory)
    label = pf.problem.label
    feats = pf.problem.features
    theory_pos = condition(pf.theory, Term([Literal(label, True)]))
    theory_neg = condition(pf.theory, Term([Literal(label, False)]))
    for i in range(1 << len(feats)):
        inst = Assignment.from_index(i, feats)
        before = "y" if is_positive(clf, inst) else "!y"
        allows_pos = evaluate(theory_pos, inst) == 1
        allows_neg = evaluate(theory_neg, inst) == 1
        if allows_pos and allows_neg:
            verdict = "T"
        elif allows_pos:
            verdict = "y"
        elif allows_neg:
            verdict = "!y"
        else:
            verdict = "F"
        facts = fact_formula(pf.theory, inst, pf.problem, cap=args.max_vars)
        if facts.trivial:
            forced = "T"
        else:
            (lit,) = facts.term.literals
            forced = "y" if lit.positive else "!y"
        after = "y" if classify_rectified(result, inst) else "!y"
        print(f"{inst.word} {before} {verdict} {forced} {after}")
    return 0


def _cmd_check(args) -> int:
    pf = _load(args)
    clf = _certify(pf, args.max_vars)
    result = rectify(clf, pf.theory)
    report = check_postulates(
        clf,
        pf.theory,
        result,
        cap=args.max_vars,
        rewrites=args.rewrites,
        rng=random.Random(args.seed),
    )
    print(report.render())
    if report.all_passed:
        print("all postulates hold")
        return 0
    print("postulate battery failed", file=sys.stderr)
    return 1


def _cmd_dt_rectify(args) -> int:
    sigma_file = parse_tree_file(Path(args.sigma).read_text(encoding="utf-8"))
    theory_file = parse_tree_file(Path(args.theory).read_text(encoding="utf-8"))
    if sigma_file.problem != theory_file.problem:
        raise ValueError("sigma and theory files declare different variables")
    out = dt_rectify(
        sigma_file.tree, theory_file.tree, sigma_file.problem, cap=args.max_vars
    )
    print(print_dtree(out))
    return 0


def _cmd_fuzz(args) -> int:
    rng = random.Random(args.seed)
    for i in range(args.iters):
        pool = Pool()
        problem = random_problem(pool, args.vars)
        clf = random_classifier(pool, problem, 40, rng)
        theory = random_theory(pool, problem, 40, rng)
        result = rectify(clf, theory)
        reference = oracle_rectify(clf, theory, cap=args.max_vars)
        distance = condition(
            dalal_rectify(clf, theory, cap=args.max_vars),
            Term([Literal(problem.label, True)]),
        )
        pairs = (
            ("construction", result.positive, "instance oracle", reference),
            ("construction", result.positive, "distance oracle", distance),
            ("instance oracle", reference, "distance oracle", distance),
        )
        for name_a, a, name_b, b in pairs:
            if not equivalent(a, b, cap=args.max_vars):
                print(f"mismatch at iteration {i}: {name_a} != {name_b}", file=sys.stderr)
                print(f"sigma positive region: {print_circuit(result.positive)}", file=sys.stderr)
                print(f"theory: {print_circuit(theory)}", file=sys.stderr)
                return 1
    print(f"fuzz: {args.iters} iterations over {args.vars} features, no mismatches")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
