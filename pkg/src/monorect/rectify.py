"""The single-label rectification construction.

Rectifying a certified classifier against a trusted theory yields the
unique classifier that adopts the theory's verdict wherever the theory
decides an instance one way only, and keeps the original verdict
everywhere else.  The construction is purely structural: two
conditionings of the theory, a handful of fixed gates, and no model
enumeration, so both the work and the output size are linear in the
input sizes.
"""

from __future__ import annotations

from dataclasses import dataclass

from .circuit import Circuit, Literal, Term, condition, conjoin, disjoin, negate
from .classifier import Classifier, ClassificationProblem, as_instance, positive_circuit
from .errors import CapExceededError
from .semantics import Assignment, evaluate, forget


@dataclass(frozen=True)
class RectificationResult:
    """Outcome of one rectification.

    positive         circuit over the features; its models are the instances
                     the rectified classifier accepts
    rectified        the rectified classifier itself (positive <=> label)
    forces_positive  instances the theory decisively classifies as positive
    forces_negative  instances the theory decisively classifies as negative
    """

    positive: Circuit
    rectified: Classifier
    forces_positive: Circuit
    forces_negative: Circuit


def decisive_circuits(
    theory: Circuit, problem: ClassificationProblem
) -> tuple[Circuit, Circuit]:
    """Feature-space circuits for the instances the theory decides.

    An instance is forced positive when the theory is satisfiable there
    with a positive label but not with a negative one; forced negative is
    the mirror image.  Instances where the theory allows both labels or
    neither are decided by neither circuit.
    """
    label = problem.label
    allowed = set(problem.features) | {label}
    extra = theory.vars() - allowed
    if extra:
        names = ", ".join(sorted(v.name for v in extra))
        raise ValueError(
            f"theory mentions variables outside the problem ({names}); "
            "apply preprocess_project first"
        )
    with_pos = condition(theory, Term([Literal(label, True)]))
    with_neg = condition(theory, Term([Literal(label, False)]))
    forces_pos = conjoin(with_pos, negate(with_neg))
    forces_neg = conjoin(with_neg, negate(with_pos))
    return forces_pos, forces_neg


def rectify(
    clf: Classifier,
    theory: Circuit,
    *,
    project: bool = False,
    max_forget: int = 8,
) -> RectificationResult:
    """Build the rectified classifier.

    The accepted region is (old positives minus the theory's forced
    negatives) plus the theory's forced positives.  A contradictory or
    tautological theory forces nothing, so the classifier comes back
    unchanged.  With project=True, variables outside the problem are
    forgotten first (see preprocess_project); otherwise they are an error.
    """
    clf.require_certified()
    problem = clf.problem
    if not problem.mono_label:
        raise ValueError("rectification is defined for single-label classifiers only")
    if project:
        theory = preprocess_project(theory, problem, max_forget=max_forget)
    forces_pos, forces_neg = decisive_circuits(theory, problem)
    kept = conjoin(positive_circuit(clf), negate(forces_neg))
    accepted = disjoin(kept, forces_pos)
    rectified = Classifier.from_positive_circuit(problem, accepted)
    return RectificationResult(accepted, rectified, forces_pos, forces_neg)


def preprocess_project(
    circ: Circuit, problem: ClassificationProblem, max_forget: int = 8
) -> Circuit:
    """Forget every variable outside the problem's features and labels.

    Each forgotten variable can double the circuit, hence the hard cap.
    """
    extra = sorted(circ.vars() - set(problem.all_vars), key=lambda v: v.index)
    if not extra:
        return circ
    if len(extra) > max_forget:
        raise CapExceededError(
            f"{len(extra)} auxiliary variables exceed the forgetting cap of {max_forget}"
        )
    return forget(circ, extra)


def classify_rectified(result: RectificationResult, x) -> int:
    """Model-check the accepted-region circuit at the instance (linear time)."""
    inst: Assignment = as_instance(result.rectified.problem, x)
    return evaluate(result.positive, inst)
