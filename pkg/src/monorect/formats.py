"""Text formats: circuit expressions, decision trees, and problem files.

Everything is an s-expression over UTF-8 text; `;` starts a comment that
runs to the end of the line.

Circuit expressions::

    expr    := 'true' | 'false' | NAME
             | '(' 'not' expr ')'
             | '(' 'and' expr+ ')' | '(' 'or' expr+ ')'
             | '(' 'imp' expr expr ')' | '(' 'iff' expr expr ')'
             | '(' 'dec' NAME expr expr ')'          low branch first
             | '(' 'let' '(' binding+ ')' expr ')'
    binding := '(' NAME expr ')'                     shared subcircuit

Decision trees::

    tree := '0' | '1' | '(' NAME tree tree ')'       low (NAME = 0) first

Problem files are a sequence of top-level forms, in any order::

    (features NAME+)     required
    (labels NAME+)       required, disjoint from the features
    (sigma EXPR)         required: the classifier circuit
    (theory EXPR)        required: the background knowledge
    (forest TREE+)       optional: classification trees over features+labels

Decision-tree files (inputs of the dt-rectify command)::

    (features NAME+)
    (labels NAME)
    (tree TREE)

Printers emit a canonical single-space form; reparsing printed output
reproduces the original structure exactly (interning re-shares any
subcircuit the printer had to spell out twice).
"""

from __future__ import annotations

from dataclasses import dataclass

from .circuit import CONST, DEC, NOT, VAR
from .circuit import Circuit, Gate, Pool
from .classifier import ClassificationProblem
from .dtree import DecisionTree, DTLeaf, DTNode
from .errors import ParseError


@dataclass(frozen=True)
class _Token:
    text: str
    line: int
    col: int


def _tokenize(text: str) -> list[_Token]:
    tokens = []
    line, col, i = 1, 1, 0
    n = len(text)
    while i < n:
        ch = text[i]
        if ch == "\n":
            line += 1
            col = 1
            i += 1
        elif ch in " \t\r":
            col += 1
            i += 1
        elif ch == ";":
            while i < n and text[i] != "\n":
                i += 1
        elif ch in "()":
            tokens.append(_Token(ch, line, col))
            col += 1
            i += 1
        else:
            j = i
            while j < n and text[j] not in " \t\r\n();":
                j += 1
            tokens.append(_Token(text[i:j], line, col))
            col += j - i
            i = j
    return tokens


def _read(tokens: list[_Token], pos: int):
    if pos >= len(tokens):
        raise ParseError("unexpected end of input")
    tok = tokens[pos]
    if tok.text == "(":
        items = []
        pos += 1
        while True:
            if pos >= len(tokens):
                raise ParseError("missing ')'", tok.line, tok.col)
            if tokens[pos].text == ")":
                return items, pos + 1
            item, pos = _read(tokens, pos)
            items.append(item)
    if tok.text == ")":
        raise ParseError("unexpected ')'", tok.line, tok.col)
    return tok.text, pos + 1


def _read_all(text: str) -> list:
    tokens = _tokenize(text)
    forms = []
    pos = 0
    while pos < len(tokens):
        form, pos = _read(tokens, pos)
        forms.append(form)
    return forms


def _read_one(text: str):
    forms = _read_all(text)
    if not forms:
        raise ParseError("empty input")
    if len(forms) > 1:
        raise ParseError("expected exactly one expression")
    return forms[0]


# ----------------------------------------------------------------------
# circuits


def parse_circuit(text: str, pool: Pool) -> Circuit:
    """Parse one circuit expression against the pool's variable table."""
    return pool.build(_read_one(text))


def print_circuit(circ: Circuit) -> str:
    """Canonical text for a circuit; shared gates are spelled out each time."""
    return _gate_text(circ.root)


def _gate_text(gate: Gate) -> str:
    kind = gate.kind
    if kind == CONST:
        return "true" if gate.payload else "false"
    if kind == VAR:
        return gate.payload.name
    if kind == NOT:
        return f"(not {_gate_text(gate.children[0])})"
    if kind == DEC:
        low, high = gate.children
        return f"(dec {gate.payload.name} {_gate_text(low)} {_gate_text(high)})"
    body = " ".join(_gate_text(c) for c in gate.children)
    return f"({kind} {body})"


# ----------------------------------------------------------------------
# decision trees


def parse_dtree(text: str, pool: Pool) -> DecisionTree:
    """Parse one decision tree against the pool's variable table."""
    return _tree_from(_read_one(text), pool)


def _tree_from(node, pool: Pool) -> DecisionTree:
    if isinstance(node, str):
        if node == "0":
            return DTLeaf(0)
        if node == "1":
            return DTLeaf(1)
        raise ParseError(f"decision-tree leaf must be 0 or 1, got {node!r}")
    if len(node) != 3 or not isinstance(node[0], str):
        raise ParseError("decision-tree node must be (variable low high)")
    return DTNode(pool.var(node[0]), _tree_from(node[1], pool), _tree_from(node[2], pool))


def print_dtree(tree: DecisionTree) -> str:
    if isinstance(tree, DTLeaf):
        return str(tree.value)
    return f"({tree.var.name} {print_dtree(tree.low)} {print_dtree(tree.high)})"


# ----------------------------------------------------------------------
# problem and tree files


@dataclass(frozen=True)
class ProblemFile:
    pool: Pool
    problem: ClassificationProblem
    sigma: Circuit
    theory: Circuit
    forest: tuple[DecisionTree, ...] | None


@dataclass(frozen=True)
class TreeFile:
    pool: Pool
    problem: ClassificationProblem
    tree: DecisionTree


_PROBLEM_SECTIONS = ("features", "labels", "sigma", "theory", "forest")
_TREE_SECTIONS = ("features", "labels", "tree")


def _sections(text: str, known: tuple[str, ...], required: tuple[str, ...]) -> dict:
    seen: dict[str, list] = {}
    for form in _read_all(text):
        if not isinstance(form, list) or not form or not isinstance(form[0], str):
            raise ParseError("top-level forms must look like (keyword ...)")
        key = form[0]
        if key not in known:
            raise ParseError(f"unknown section {key!r}")
        if key in seen:
            raise ParseError(f"duplicate section {key!r}")
        seen[key] = form[1:]
    for key in required:
        if key not in seen:
            raise ParseError(f"missing section {key!r}")
    return seen


def _names(section: list, what: str) -> list[str]:
    if not section or not all(isinstance(item, str) for item in section):
        raise ParseError(f"{what} must be a non-empty list of names")
    return section


def _single(section: list, what: str):
    if len(section) != 1:
        raise ParseError(f"section {what!r} needs exactly one entry")
    return section[0]


def parse_problem(text: str) -> ProblemFile:
    """Parse a problem file into a fresh pool."""
    seen = _sections(text, _PROBLEM_SECTIONS, ("features", "labels", "sigma", "theory"))
    pool = Pool()
    features = pool.declare(*_names(seen["features"], "features"))
    labels = pool.declare(*_names(seen["labels"], "labels"))
    problem = ClassificationProblem(features, labels)
    sigma = pool.build(_single(seen["sigma"], "sigma"))
    theory = pool.build(_single(seen["theory"], "theory"))
    forest = None
    if "forest" in seen:
        if not seen["forest"]:
            raise ParseError("section 'forest' needs at least one tree")
        forest = tuple(_tree_from(t, pool) for t in seen["forest"])
    return ProblemFile(pool, problem, sigma, theory, forest)


def parse_tree_file(text: str) -> TreeFile:
    """Parse a decision-tree file into a fresh pool."""
    seen = _sections(text, _TREE_SECTIONS, _TREE_SECTIONS)
    pool = Pool()
    features = pool.declare(*_names(seen["features"], "features"))
    label_names = _names(seen["labels"], "labels")
    if len(label_names) != 1:
        raise ParseError("decision-tree files declare exactly one label")
    labels = pool.declare(*label_names)
    problem = ClassificationProblem(features, labels)
    tree = _tree_from(_single(seen["tree"], "tree"), pool)
    return TreeFile(pool, problem, tree)
