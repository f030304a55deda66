import itertools
import random

import pytest
from hypothesis import given, strategies as st

from monorect import (
    Assignment,
    CertificationError,
    ClassificationProblem,
    Classifier,
    Literal,
    Pool,
    RandomForest,
    attach_label,
    circuit_to_dt,
    condition,
    dt_check_classification,
    dt_condition,
    dt_conjoin,
    dt_disjoin,
    dt_eval,
    dt_negate,
    dt_rectify,
    dt_simplify,
    dt_to_circuit,
    dt_vars,
    equivalent,
    is_read_once,
    is_simplified,
    parse_dtree,
    rectify,
    rf_classify,
    rf_rectify,
)
from monorect.dtree import DTNode, LEAF0, LEAF1, decision_count, node_count
from monorect.randgen import random_tree

from conftest import (
    DEMO_SIGMA_AST,
    DEMO_THEORY_AST,
    REDUCED_TREE_TEXT,
    SIGMA_TREE_TEXT,
    THEORY_TREE_TEXT,
    tree_from_spec,
    tree_specs,
)

NAMES = ("x1", "x2", "x3")

# Intermediate trees of the worked example, by pipeline stage.
FORCES_NEG_TEXT = "(x1 (x2 1 0) (x3 0 (x2 1 0)))"
FORCES_POS_TEXT = "(x2 0 (x1 0 (x3 1 0)))"
KEPT_RAW_TEXT = (
    "(x1 (x2 (x1 (x2 0 1) (x3 1 (x2 0 1))) 0)"
    " (x3 0 (x1 (x2 0 1) (x3 1 (x2 0 1)))))"
)
KEPT_REDUCED_TEXT = "(x1 0 (x3 0 (x2 0 1)))"
ACCEPTED_RAW_TEXT = (
    "(x1 (x2 0 (x1 0 (x3 1 0)))"
    " (x3 (x2 0 (x1 0 (x3 1 0))) (x2 (x2 0 (x1 0 (x3 1 0))) 1)))"
)


@pytest.fixture
def trees():
    pool = Pool()
    features = pool.declare(*NAMES)
    labels = pool.declare("y")
    problem = ClassificationProblem(features, labels)
    parse = lambda text: parse_dtree(text, pool)
    return pool, problem, parse


def test_condition_on_label_selects_subtree(trees):
    pool, problem, parse = trees
    theory = parse(THEORY_TREE_TEXT)
    label = problem.label
    assert dt_condition(theory, Literal(label, True)) == parse("(x2 0 1)")
    assert dt_condition(theory, Literal(label, False)) == parse("(x1 1 (x3 0 1))")


def test_condition_on_leaf_is_identity(trees):
    pool, problem, parse = trees
    assert dt_condition(LEAF1, Literal(problem.label)) == LEAF1


def test_conditioned_classifier_tree_matches_accepted_region(trees):
    pool, problem, parse = trees
    sigma_tree = parse(SIGMA_TREE_TEXT)
    region_tree = dt_condition(sigma_tree, Literal(problem.label, True))
    expected = pool.build(
        ["or", ["and", ["not", "x1"], ["not", "x2"]], ["and", "x1", "x3"]]
    )
    assert equivalent(dt_to_circuit(region_tree, pool), expected)


def test_negate_swaps_leaves(trees):
    pool, problem, parse = trees
    assert dt_negate(LEAF1) == LEAF0
    theory = parse(THEORY_TREE_TEXT)
    assert dt_negate(dt_negate(theory)) == theory
    negated_pos = dt_negate(dt_condition(theory, Literal(problem.label, True)))
    assert equivalent(dt_to_circuit(negated_pos, pool), pool.build(["not", "x2"]))


def test_combinations_reproduce_the_worked_pipeline(trees):
    pool, problem, parse = trees
    label = problem.label
    sigma_x = dt_condition(parse(SIGMA_TREE_TEXT), Literal(label, True))
    theory = parse(THEORY_TREE_TEXT)
    th_pos = dt_condition(theory, Literal(label, True))
    th_neg = dt_condition(theory, Literal(label, False))

    forces_neg = dt_conjoin(th_neg, dt_negate(th_pos))
    assert forces_neg == parse(FORCES_NEG_TEXT)
    forces_pos = dt_conjoin(th_pos, dt_negate(th_neg))
    assert forces_pos == parse(FORCES_POS_TEXT)

    kept_raw = dt_conjoin(sigma_x, dt_negate(forces_neg))
    assert kept_raw == parse(KEPT_RAW_TEXT)
    kept = dt_simplify(kept_raw)
    assert kept == parse(KEPT_REDUCED_TEXT)
    assert decision_count(kept) == 3

    accepted_raw = dt_disjoin(kept, forces_pos)
    assert accepted_raw == parse(ACCEPTED_RAW_TEXT)
    assert dt_simplify(accepted_raw) == parse(REDUCED_TREE_TEXT)


def test_conjoin_with_true_leaf_is_identity(trees):
    pool, problem, parse = trees
    theory = parse(THEORY_TREE_TEXT)
    assert dt_conjoin(theory, LEAF1) == theory
    assert dt_disjoin(theory, LEAF0) == theory


def test_simplify_merges_identical_children(trees):
    pool, problem, parse = trees
    x1 = pool.var("x1")
    assert dt_simplify(DTNode(x1, LEAF0, LEAF0)) == LEAF0


def test_rectify_pipeline_end_to_end(trees):
    pool, problem, parse = trees
    out = dt_rectify(parse(SIGMA_TREE_TEXT), parse(THEORY_TREE_TEXT), problem)
    region = dt_condition(out, Literal(problem.label, True))
    assert region == parse(REDUCED_TREE_TEXT)
    circuit = dt_to_circuit(out, pool)
    clf = Classifier(problem, pool.build(DEMO_SIGMA_AST))
    result = rectify(clf, pool.build(DEMO_THEORY_AST))
    assert equivalent(circuit, result.rectified.circuit)


def test_rectify_by_constant_theories_changes_nothing(trees):
    pool, problem, parse = trees
    sigma_tree = parse(SIGMA_TREE_TEXT)
    for leaf in (LEAF1, LEAF0):
        out = dt_rectify(sigma_tree, leaf, problem)
        assert equivalent(dt_to_circuit(out, pool), dt_to_circuit(sigma_tree, pool))


def test_rectify_rejects_uncertified_trees(trees):
    pool, problem, parse = trees
    not_a_classifier = parse("(x1 0 1)")  # never touches the label
    with pytest.raises(CertificationError):
        dt_rectify(not_a_classifier, LEAF1, problem)


def test_tree_certification(trees):
    pool, problem, parse = trees
    assert dt_check_classification(parse(SIGMA_TREE_TEXT), problem)
    assert not dt_check_classification(parse("(x1 0 1)"), problem)
    assert not dt_check_classification(LEAF1, problem)


def test_attach_label_convention(trees):
    pool, problem, parse = trees
    label = problem.label
    attached = attach_label(parse(REDUCED_TREE_TEXT), label)
    assert attached == parse("(x1 (y 1 0) (x2 (y 1 0) (y 0 1)))")
    assert dt_check_classification(attached, problem)


def test_circuit_round_trips(trees):
    pool, problem, parse = trees
    assert dt_to_circuit(LEAF1, pool) == pool.const(1)
    tree = parse(THEORY_TREE_TEXT)
    back = circuit_to_dt(dt_to_circuit(tree, pool), pool.variables)
    assert equivalent(dt_to_circuit(back, pool), dt_to_circuit(tree, pool))


def test_expansion_of_conjunction(trees):
    pool, problem, parse = trees
    circ = pool.build(["and", "x1", "x2"])
    assert circuit_to_dt(circ, problem.features) == parse(REDUCED_TREE_TEXT)


class TestForest:
    def test_singleton_matches_tree_rectify(self, trees):
        pool, problem, parse = trees
        sigma_tree = parse(SIGMA_TREE_TEXT)
        theory_tree = parse(THEORY_TREE_TEXT)
        forest = rf_rectify(RandomForest((sigma_tree,)), theory_tree, problem)
        assert forest.trees == (dt_rectify(sigma_tree, theory_tree, problem),)

    def test_identical_trees_stay_identical(self, trees):
        pool, problem, parse = trees
        sigma_tree = parse(SIGMA_TREE_TEXT)
        theory_tree = parse(THEORY_TREE_TEXT)
        forest = rf_rectify(
            RandomForest((sigma_tree,) * 3), theory_tree, problem
        )
        assert len(set(forest.trees)) == 1

    def test_vote_ties_break_negative(self, trees):
        pool, problem, parse = trees
        always_yes = attach_label(LEAF1, problem.label)
        always_no = attach_label(LEAF0, problem.label)
        even = RandomForest((always_yes, always_no))
        assert rf_classify(even, "000", problem) == 0
        majority = RandomForest((always_yes, always_yes, always_no))
        assert rf_classify(majority, "000", problem) == 1

    def test_empty_forest_rejected(self):
        with pytest.raises(ValueError):
            RandomForest(())

    def test_shipped_forest_file_rectifies(self):
        from pathlib import Path

        from monorect import is_fact_compliant, parse_problem

        path = Path(__file__).resolve().parent.parent / "problems" / "forest.sexp"
        pf = parse_problem(path.read_text())
        theory_tree = circuit_to_dt(pf.theory, pf.problem.all_vars)
        rectified = rf_rectify(RandomForest(pf.forest), theory_tree, pf.problem)
        for tree in rectified.trees:
            clf = Classifier(pf.problem, dt_to_circuit(tree, pf.pool))
            for word in ("000", "001", "010", "011", "100", "101", "110", "111"):
                assert is_fact_compliant(clf, pf.theory, word)
        # the highlighted instance flips to positive for every tree, so the vote does too
        assert rf_classify(rectified, "110", pf.problem) == 1


# ----------------------------------------------------------------------
# properties


def _tree_setting(spec_a=None, spec_b=None):
    pool = Pool()
    pool.declare(*NAMES)
    a = tree_from_spec(pool, spec_a) if spec_a is not None else None
    b = tree_from_spec(pool, spec_b) if spec_b is not None else None
    return pool, a, b


def _exhaustive_same(pool, tree, circ):
    over = pool.variables
    for bits in itertools.product((0, 1), repeat=len(over)):
        omega = Assignment(over, bits)
        from monorect import evaluate

        if dt_eval(tree, omega) != evaluate(circ, omega):
            return False
    return True


@given(spec=tree_specs(NAMES), positive=st.booleans(), name=st.sampled_from(NAMES))
def test_dt_condition_matches_circuit_condition(spec, positive, name):
    pool, tree, _ = _tree_setting(spec)
    lit = Literal(pool.var(name), positive)
    conditioned = dt_condition(tree, lit)
    assert lit.var not in dt_vars(conditioned)
    from monorect import Term

    expected = condition(dt_to_circuit(tree, pool), Term([lit]))
    assert _exhaustive_same(pool, conditioned, expected)


@given(spec=tree_specs(NAMES))
def test_dt_negate_matches_circuit_negate(spec):
    pool, tree, _ = _tree_setting(spec)
    from monorect import negate

    assert _exhaustive_same(pool, dt_negate(tree), negate(dt_to_circuit(tree, pool)))


@given(a=tree_specs(NAMES, max_leaves=8), b=tree_specs(NAMES, max_leaves=8))
def test_dt_combinations_match_circuit_combinations(a, b):
    from monorect import conjoin, disjoin

    pool, ta, tb = _tree_setting(a, b)
    ca, cb = dt_to_circuit(ta, pool), dt_to_circuit(tb, pool)
    assert _exhaustive_same(pool, dt_conjoin(ta, tb), conjoin(ca, cb))
    assert _exhaustive_same(pool, dt_disjoin(ta, tb), disjoin(ca, cb))
    bound = node_count(ta) + node_count(ta) * node_count(tb)
    assert node_count(dt_conjoin(ta, tb)) <= bound
    assert node_count(dt_disjoin(ta, tb)) <= bound


@given(spec=tree_specs(NAMES, max_leaves=16))
def test_dt_simplify_normal_form_and_equivalence(spec):
    pool, tree, _ = _tree_setting(spec)
    reduced = dt_simplify(tree)
    assert is_read_once(reduced)
    assert is_simplified(reduced)
    assert _exhaustive_same(pool, reduced, dt_to_circuit(tree, pool))


@given(spec=tree_specs(NAMES, max_leaves=10))
def test_circuit_to_dt_round_trip(spec):
    pool, tree, _ = _tree_setting(spec)
    circ = dt_to_circuit(tree, pool)
    back = circuit_to_dt(circ, pool.variables)
    assert is_simplified(back)
    assert _exhaustive_same(pool, back, circ)


def test_combination_growth_stays_polynomial():
    # with eager simplification, each combination stays under the product
    # bound of its (simplified) operands
    rng = random.Random(91)
    for _ in range(150):
        pool = Pool()
        over = pool.declare(*(f"v{i}" for i in range(rng.randint(3, 8))))
        a = dt_simplify(random_tree(over, rng, depth=6))
        b = dt_simplify(random_tree(over, rng, depth=6))
        for combined in (dt_conjoin(a, b), dt_disjoin(a, b)):
            reduced = dt_simplify(combined)
            assert node_count(reduced) <= node_count(a) * node_count(b) + node_count(a)
