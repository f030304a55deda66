"""Classification semantics over a feature/label variable split.

A classifier is a circuit over features X and labels Y that assigns every
feature vector exactly one label assignment (the label-uniqueness
property).  Checking that property is brute force; classifiers cache the
verdict so downstream operations can fail fast on uncertified inputs.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence, Union

from .circuit import Circuit, Literal, Pool, Term, VarId, condition, negate
from .errors import CertificationError
from .semantics import (
    DEFAULT_VAR_CAP,
    Assignment,
    ensure_cap,
    truth_mask,
    var_masks,
)

Instance = Union[Assignment, Term, str, Sequence[int]]


@dataclass(frozen=True)
class ClassificationProblem:
    """Ordered feature variables and ordered label variables, disjoint."""

    features: tuple[VarId, ...]
    labels: tuple[VarId, ...]

    def __post_init__(self):
        object.__setattr__(self, "features", tuple(self.features))
        object.__setattr__(self, "labels", tuple(self.labels))
        if not self.features:
            raise ValueError("a classification problem needs at least one feature")
        if not self.labels:
            raise ValueError("a classification problem needs at least one label")
        if set(self.features) & set(self.labels):
            raise ValueError("features and labels must be disjoint")

    @property
    def mono_label(self) -> bool:
        return len(self.labels) == 1

    @property
    def label(self) -> VarId:
        if not self.mono_label:
            raise ValueError("this operation needs a single-label problem")
        return self.labels[0]

    @property
    def all_vars(self) -> tuple[VarId, ...]:
        return self.features + self.labels


@dataclass(frozen=True)
class FactFormula:
    """Conjunction of label literals forced at one instance; empty = no constraint."""

    term: Term

    @property
    def trivial(self) -> bool:
        return len(self.term) == 0

    def to_circuit(self, pool: Pool) -> Circuit:
        if self.trivial:
            return pool.const(1)
        parts = [pool.literal(lit.var, lit.positive) for lit in self.term.literals]
        return parts[0] if len(parts) == 1 else pool.and_(parts)

    def __str__(self):
        if self.trivial:
            return "T"
        return " & ".join(str(lit) for lit in self.term.literals)


def as_instance(problem: ClassificationProblem, x: Instance) -> Assignment:
    """Normalize a word, bit sequence, canonical term, or assignment to the feature order."""
    feats = problem.features
    if isinstance(x, Assignment):
        if x.vars == feats:
            return x
        if set(x.vars) == set(feats):
            return Assignment(feats, tuple(x.value(v) for v in feats))
        raise ValueError("instance assignment must cover exactly the features")
    if isinstance(x, Term):
        if x.vars() != set(feats):
            raise ValueError("instance term must mention every feature exactly once")
        return Assignment(feats, tuple(1 if x.value(v) else 0 for v in feats))
    if isinstance(x, str):
        return Assignment.from_word(x, feats)
    if isinstance(x, Sequence):
        return Assignment(feats, tuple(x))
    raise TypeError(f"cannot interpret {type(x).__name__} as an instance")


def _check_problem_vars(circ: Circuit, problem: ClassificationProblem, what: str):
    extra = circ.vars() - set(problem.all_vars)
    if extra:
        names = ", ".join(sorted(v.name for v in extra))
        raise ValueError(
            f"{what} mentions variables outside features and labels ({names}); "
            "forget them first"
        )


# Bytes whose 2-bit (resp. 4-bit) groups each contain exactly one set bit.
def _exact_one_bytes(block_bits: int) -> frozenset[int]:
    good = []
    for byte in range(256):
        groups = [
            (byte >> shift) & ((1 << block_bits) - 1)
            for shift in range(0, 8, block_bits)
        ]
        if all(g.bit_count() == 1 for g in groups):
            good.append(byte)
    return frozenset(good)


_EXACT_ONE = {2: _exact_one_bytes(2), 4: _exact_one_bytes(4)}


def _one_model_per_block(mask: int, n_blocks: int, block_bits: int) -> bool:
    """Every aligned block of the truth table holds exactly one set bit."""
    total = n_blocks * block_bits
    if total < 8:
        block = (1 << block_bits) - 1
        return all(
            ((mask >> (i * block_bits)) & block).bit_count() == 1
            for i in range(n_blocks)
        )
    data = mask.to_bytes(total // 8, "little")
    if block_bits in _EXACT_ONE:
        good = _EXACT_ONE[block_bits]
        return all(byte in good for byte in data)
    if block_bits == 8:
        return all(byte.bit_count() == 1 for byte in data)
    span = block_bits // 8
    return all(
        int.from_bytes(data[i * span : (i + 1) * span], "little").bit_count() == 1
        for i in range(n_blocks)
    )


def check_xy_property(
    circ: Circuit, problem: ClassificationProblem, cap: int = DEFAULT_VAR_CAP
) -> bool:
    """Brute-force label uniqueness: every instance fixes exactly one label assignment."""
    over = problem.all_vars
    ensure_cap(len(over), cap)
    _check_problem_vars(circ, problem, "classifier circuit")
    mask = truth_mask(circ, over)
    return _one_model_per_block(
        mask, 1 << len(problem.features), 1 << len(problem.labels)
    )


class Classifier:
    """A classification circuit with its cached certification verdict.

    The plain constructor runs the brute-force uniqueness check once.
    `from_positive_circuit` builds a single-label classifier that is a
    classification circuit by construction, with no enumeration at all.
    """

    __slots__ = ("problem", "circuit", "certified")

    def __init__(
        self,
        problem: ClassificationProblem,
        circuit: Circuit,
        *,
        cap: int = DEFAULT_VAR_CAP,
    ):
        _check_problem_vars(circuit, problem, "classifier circuit")
        self.problem = problem
        self.circuit = circuit
        self.certified = check_xy_property(circuit, problem, cap=cap)

    @classmethod
    def from_positive_circuit(
        cls, problem: ClassificationProblem, positive: Circuit
    ) -> "Classifier":
        """Single-label classifier accepting exactly the models of `positive`.

        Encoded as a decision gate on the label whose high branch is the
        accepted region and whose low branch is its complement, which has
        the uniqueness property structurally.
        """
        label = problem.label
        extra = positive.vars() - set(problem.features)
        if extra:
            names = ", ".join(sorted(v.name for v in extra))
            raise ValueError(f"positive circuit mentions non-features: {names}")
        circuit = positive.pool.decision(label, negate(positive), positive)
        clf = object.__new__(cls)
        clf.problem = problem
        clf.circuit = circuit
        clf.certified = True
        return clf

    def require_certified(self):
        if not self.certified:
            raise CertificationError(
                "classifier is not certified: some instance has no unique label assignment"
            )

    def __repr__(self):
        status = "certified" if self.certified else "uncertified"
        return f"<Classifier {len(self.problem.features)}+{len(self.problem.labels)} vars, {status}>"


def classify(clf: Classifier, x: Instance) -> Assignment:
    """The unique label assignment for the instance."""
    clf.require_certified()
    inst = as_instance(clf.problem, x)
    labels = clf.problem.labels
    mask = truth_mask(condition(clf.circuit, inst.to_term()), labels)
    if mask.bit_count() != 1:
        raise CertificationError(
            f"instance {inst.word} does not have a unique label assignment"
        )
    return Assignment.from_index(mask.bit_length() - 1, labels)


def is_positive(clf: Classifier, x: Instance) -> bool:
    """Single-label convenience: is the instance classified into the concept?"""
    label = clf.problem.label
    return classify(clf, x).value(label) == 1


def fact_formula(
    theory: Circuit,
    x: Instance,
    problem: ClassificationProblem,
    cap: int = DEFAULT_VAR_CAP,
) -> FactFormula:
    """All label literals the theory forces at the instance.

    If the theory is contradictory at the instance the formula is empty
    (no constraint); otherwise it conjoins every label literal entailed by
    the conditioned theory, found by brute force over the labels.
    """
    labels = problem.labels
    ensure_cap(len(labels), cap)
    inst = as_instance(problem, x)
    at_x = condition(theory, inst.to_term())
    extra = at_x.vars() - set(labels)
    if extra:
        names = ", ".join(sorted(v.name for v in extra))
        raise ValueError(
            f"theory mentions variables outside features and labels ({names}); "
            "forget them first"
        )
    mask = truth_mask(at_x, labels)
    if mask == 0:
        return FactFormula(Term())
    full = (1 << (1 << len(labels))) - 1
    masks = var_masks(labels)
    found = []
    for label in labels:
        holds = masks[label]
        if mask & ~holds & full == 0:
            found.append(Literal(label, True))
        elif mask & holds == 0:
            found.append(Literal(label, False))
    return FactFormula(Term(found))


def is_fact_compliant(
    clf: Classifier,
    theory: Circuit,
    x: Instance,
    cap: int = DEFAULT_VAR_CAP,
) -> bool:
    """Does the classifier's verdict at x entail every fact the theory forces there?"""
    clf.require_certified()
    inst = as_instance(clf.problem, x)
    facts = fact_formula(theory, inst, clf.problem, cap=cap)
    if facts.trivial:
        return True
    labels = clf.problem.labels
    verdict = truth_mask(condition(clf.circuit, inst.to_term()), labels)
    forced = truth_mask(facts.to_circuit(clf.circuit.pool), labels)
    return verdict & ~forced == 0


def positive_circuit(clf: Classifier) -> Circuit:
    """Feature-space circuit whose models are the positively classified instances.

    Single-label only: conditioning the classifier on a positive label
    leaves exactly the accepted region.
    """
    clf.require_certified()
    label = clf.problem.label
    return condition(clf.circuit, Term([Literal(label, True)]))
