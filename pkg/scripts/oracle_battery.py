#!/usr/bin/env python3
"""Random-corpus battery: oracle agreement, postulates, and size statistics.

Generates seeded random classifier/theory pairs, rectifies each with the
structural construction, and cross-checks the outcome against the two
enumeration oracles plus the six-postulate battery.  Also reports how
tight the linear size bound is in practice.

Usage: python scripts/oracle_battery.py [--pairs N] [--features-max K] [--seed S]
"""

import argparse
import random
import time

from monorect import (
    Literal,
    Pool,
    Term,
    check_postulates,
    condition,
    dalal_rectify,
    equivalent,
    oracle_rectify,
    rectify,
)
from monorect.randgen import random_classifier, random_problem, random_theory


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--pairs", type=int, default=300)
    parser.add_argument("--features-min", type=int, default=3)
    parser.add_argument("--features-max", type=int, default=8)
    parser.add_argument("--gates", type=int, default=40)
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args()

    rng = random.Random(args.seed)
    mismatches = postulate_failures = 0
    slack = []
    begin = time.perf_counter()
    for i in range(args.pairs):
        pool = Pool()
        problem = random_problem(
            pool, rng.randint(args.features_min, args.features_max)
        )
        clf = random_classifier(pool, problem, rng.randint(5, args.gates), rng)
        theory = random_theory(pool, problem, rng.randint(5, args.gates), rng)
        result = rectify(clf, theory)

        reference = oracle_rectify(clf, theory)
        distance = condition(
            dalal_rectify(clf, theory), Term([Literal(problem.label, True)])
        )
        agree = equivalent(result.positive, reference) and equivalent(
            result.positive, distance
        )
        if not agree:
            mismatches += 1
            print(f"pair {i}: oracle mismatch")

        report = check_postulates(
            clf, theory, result, rewrites=5, rng=random.Random(args.seed + i)
        )
        if not report.all_passed:
            postulate_failures += 1
            print(f"pair {i}: postulate failure\n{report.render()}")

        bound = clf.circuit.size + 2 * theory.size + 16
        slack.append(bound - result.rectified.circuit.size)
    elapsed = time.perf_counter() - begin

    print(f"pairs:               {args.pairs}")
    print(f"oracle mismatches:   {mismatches}")
    print(f"postulate failures:  {postulate_failures}")
    print(f"size-bound slack:    min {min(slack)}, mean {sum(slack) / len(slack):.1f} arcs")
    print(f"elapsed:             {elapsed:.1f}s")
    return 1 if (mismatches or postulate_failures) else 0


if __name__ == "__main__":
    raise SystemExit(main())
