"""Immutable Boolean circuits over a shared, hash-consed gate pool.

A circuit is a rooted DAG of gates: constants, variable leaves, negation,
n-ary conjunction/disjunction, and decision gates.  A decision gate over x
with children (low, high) is sugar for (!x & low) | (x & high); every
operation treats it by that reading.  Gates are interned per pool, so
building the same gate twice yields the same object and syntactically
identical subcircuits are shared automatically.

Circuits are values: operations never mutate, they return new circuits
whose gates live in the same (append-only) pool.  Size is the number of
arcs in the reachable DAG, counting a shared gate's outgoing arcs once.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable

from .errors import BuildError

CONST = "const"
VAR = "var"
NOT = "not"
AND = "and"
OR = "or"
DEC = "dec"

_NAME_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_]*\Z")
_KEYWORDS = frozenset({"not", "and", "or", "imp", "iff", "dec", "let", "true", "false"})


@dataclass(frozen=True)
class VarId:
    """A declared variable: its position in the pool's order plus its name."""

    index: int
    name: str

    def __str__(self):
        return self.name


@dataclass(frozen=True)
class Literal:
    var: VarId
    positive: bool = True

    def negated(self):
        return Literal(self.var, not self.positive)

    def __str__(self):
        return self.var.name if self.positive else "!" + self.var.name


class Term:
    """A consistent conjunction of literals (no variable in both polarities)."""

    __slots__ = ("_value",)

    def __init__(self, literals: Iterable[Literal] = ()):
        value: dict[VarId, bool] = {}
        for lit in literals:
            old = value.get(lit.var)
            if old is not None and old != lit.positive:
                raise ValueError(
                    f"inconsistent term: {lit.var.name} occurs with both polarities"
                )
            value[lit.var] = lit.positive
        self._value = value

    @property
    def literals(self) -> tuple[Literal, ...]:
        items = sorted(self._value.items(), key=lambda kv: kv[0].index)
        return tuple(Literal(var, pos) for var, pos in items)

    def value(self, var: VarId):
        """True/False if the term fixes the variable, None otherwise."""
        return self._value.get(var)

    def vars(self) -> frozenset[VarId]:
        return frozenset(self._value)

    def __len__(self):
        return len(self._value)

    def __eq__(self, other):
        return isinstance(other, Term) and self._value == other._value

    def __hash__(self):
        return hash(frozenset(self._value.items()))

    def __repr__(self):
        body = " ".join(str(lit) for lit in self.literals)
        return f"Term({body})" if body else "Term()"


class Gate:
    """One pooled gate.  Never constructed directly; identity is equality."""

    __slots__ = ("kind", "payload", "children", "uid")

    def __init__(self, kind, payload, children, uid):
        self.kind = kind
        self.payload = payload
        self.children = children
        self.uid = uid

    def __repr__(self):
        if self.kind == CONST:
            return f"Gate(const {self.payload})"
        if self.kind == VAR:
            return f"Gate(var {self.payload.name})"
        if self.kind == DEC:
            return f"Gate(dec {self.payload.name})"
        return f"Gate({self.kind}/{len(self.children)})"


class Circuit:
    """A rooted view into a pool's gate DAG.

    Equality is root identity: thanks to interning, two circuits from the
    same pool are == exactly when they are syntactically identical.
    """

    __slots__ = ("pool", "root", "_size", "_vars")

    def __init__(self, pool: "Pool", root: Gate):
        self.pool = pool
        self.root = root
        self._size = None
        self._vars = None

    @property
    def size(self) -> int:
        """Number of arcs reachable from the root (shared gates counted once)."""
        if self._size is None:
            self._size = sum(len(g.children) for g in iter_gates(self))
        return self._size

    def vars(self) -> frozenset[VarId]:
        """Variables occurring in the circuit, including decision-gate variables."""
        if self._vars is None:
            found = set()
            for gate in iter_gates(self):
                if gate.kind == VAR or gate.kind == DEC:
                    found.add(gate.payload)
            self._vars = frozenset(found)
        return self._vars

    def __eq__(self, other):
        return (
            isinstance(other, Circuit)
            and self.pool is other.pool
            and self.root is other.root
        )

    def __hash__(self):
        return hash((id(self.pool), self.root.uid))

    def __repr__(self):
        return f"<Circuit {self.root.kind} size={self.size}>"


class Pool:
    """Variable table plus append-only interned gate storage.

    All circuits combined by the module's operations must come from the
    same pool.  Construction of a pool is single-writer; once built, gates
    are immutable and safe to read from anywhere.
    """

    def __init__(self):
        self._by_name: dict[str, VarId] = {}
        self._order: list[VarId] = []
        self._interned: dict[tuple, Gate] = {}
        self._count = 0

    # ------------------------------------------------------------------
    # variables

    def declare(self, *names: str) -> tuple[VarId, ...]:
        """Declare variables in order; returns their ids."""
        out = []
        for name in names:
            if not isinstance(name, str) or not _NAME_RE.match(name):
                raise BuildError(f"invalid variable name {name!r}")
            if name in _KEYWORDS:
                raise BuildError(f"variable name {name!r} is a reserved word")
            if name in self._by_name:
                raise BuildError(f"duplicate variable {name!r}")
            vid = VarId(len(self._order), name)
            self._by_name[name] = vid
            self._order.append(vid)
            out.append(vid)
        return tuple(out)

    def var(self, name: str) -> VarId:
        try:
            return self._by_name[name]
        except KeyError:
            raise BuildError(f"unknown identifier {name!r}") from None

    @property
    def variables(self) -> tuple[VarId, ...]:
        return tuple(self._order)

    def fresh(self, stem: str = "aux") -> VarId:
        """Declare and return a variable with an unused name."""
        i = 0
        while f"{stem}_{i}" in self._by_name:
            i += 1
        return self.declare(f"{stem}_{i}")[0]

    # ------------------------------------------------------------------
    # gate construction (arity checks only; no logical simplification)

    def _gate(self, kind, payload, children: tuple[Gate, ...]) -> Gate:
        key = (kind, payload, tuple(c.uid for c in children))
        gate = self._interned.get(key)
        if gate is None:
            gate = Gate(kind, payload, children, self._count)
            self._count += 1
            self._interned[key] = gate
        return gate

    def _owned(self, *circuits: Circuit):
        for c in circuits:
            if c.pool is not self:
                raise ValueError("circuit belongs to a different pool")

    def _known(self, var: VarId) -> VarId:
        if self._by_name.get(var.name) != var:
            raise BuildError(f"variable {var.name!r} is not declared in this pool")
        return var

    def const(self, value: int) -> Circuit:
        if value not in (0, 1):
            raise BuildError(f"constant must be 0 or 1, got {value!r}")
        return Circuit(self, self._gate(CONST, value, ()))

    def literal(self, var: VarId, positive: bool = True) -> Circuit:
        leaf = self._gate(VAR, self._known(var), ())
        if positive:
            return Circuit(self, leaf)
        return Circuit(self, self._gate(NOT, None, (leaf,)))

    def not_(self, c: Circuit) -> Circuit:
        self._owned(c)
        return Circuit(self, self._gate(NOT, None, (c.root,)))

    def and_(self, parts: Iterable[Circuit]) -> Circuit:
        return self._nary(AND, parts)

    def or_(self, parts: Iterable[Circuit]) -> Circuit:
        return self._nary(OR, parts)

    def _nary(self, kind, parts) -> Circuit:
        roots = []
        for c in parts:
            self._owned(c)
            roots.append(c.root)
        if not roots:
            raise BuildError(f"zero-arity {kind!r} gate")
        if len(roots) == 1:
            return Circuit(self, roots[0])
        return Circuit(self, self._gate(kind, None, tuple(roots)))

    def decision(self, var: VarId, low: Circuit, high: Circuit) -> Circuit:
        self._owned(low, high)
        return Circuit(self, self._gate(DEC, self._known(var), (low.root, high.root)))

    # ------------------------------------------------------------------
    # building from expressions

    def build(self, expr) -> Circuit:
        """Build a circuit from a nested-list expression.

        Accepted forms (names are declared variables or let-bound names):

            True | False | "true" | "false" | "name"
            ["not", e]
            ["and", e, ...]   ["or", e, ...]        at least one argument
            ["imp", a, b]     ["iff", a, b]
            ["dec", "name", low, high]
            ["let", [["name", e], ...], body]       bindings see earlier ones

        Let-bound subexpressions become shared DAG nodes (interning makes
        any repeated subexpression shared, bindings just make it explicit).
        """
        return self._build(expr, {})

    def _build(self, expr, env) -> Circuit:
        if isinstance(expr, bool):
            return self.const(int(expr))
        if isinstance(expr, str):
            if expr == "true":
                return self.const(1)
            if expr == "false":
                return self.const(0)
            bound = env.get(expr)
            if bound is not None:
                return bound
            return self.literal(self.var(expr))
        if isinstance(expr, (list, tuple)) and expr and isinstance(expr[0], str):
            head = expr[0]
            if head == "not":
                _arity(expr, 1)
                return self.not_(self._build(expr[1], env))
            if head in ("and", "or"):
                if len(expr) < 2:
                    raise BuildError(f"zero-arity {head!r} gate")
                parts = [self._build(e, env) for e in expr[1:]]
                return self.and_(parts) if head == "and" else self.or_(parts)
            if head == "imp":
                _arity(expr, 2)
                a = self._build(expr[1], env)
                b = self._build(expr[2], env)
                return self.or_([self.not_(a), b])
            if head == "iff":
                _arity(expr, 2)
                a = self._build(expr[1], env)
                b = self._build(expr[2], env)
                return self.or_(
                    [self.and_([a, b]), self.and_([self.not_(a), self.not_(b)])]
                )
            if head == "dec":
                _arity(expr, 3)
                name = expr[1]
                if not isinstance(name, str) or name in env:
                    raise BuildError("decision gate needs a declared variable")
                return self.decision(
                    self.var(name),
                    self._build(expr[2], env),
                    self._build(expr[3], env),
                )
            if head == "let":
                _arity(expr, 2)
                bindings = expr[1]
                if not isinstance(bindings, (list, tuple)):
                    raise BuildError("let bindings must be a list of (name expr) pairs")
                inner = dict(env)
                for pair in bindings:
                    if (
                        not isinstance(pair, (list, tuple))
                        or len(pair) != 2
                        or not isinstance(pair[0], str)
                    ):
                        raise BuildError(
                            "let bindings must be a list of (name expr) pairs"
                        )
                    name, sub = pair
                    if name in inner or name in self._by_name or name in _KEYWORDS:
                        raise BuildError(f"duplicate let binding {name!r}")
                    inner[name] = self._build(sub, inner)
                return self._build(expr[2], inner)
            raise BuildError(f"unknown operator {head!r}")
        raise BuildError(f"malformed expression {expr!r}")


def _arity(expr, n):
    if len(expr) != n + 1:
        raise BuildError(f"{expr[0]!r} expects {n} argument(s), got {len(expr) - 1}")


def iter_gates(circ: Circuit) -> list[Gate]:
    """Reachable gates in dependency order: children before parents, once each."""
    seen = set()
    out = []
    stack: list[tuple[Gate, bool]] = [(circ.root, False)]
    while stack:
        gate, ready = stack.pop()
        if ready:
            out.append(gate)
            continue
        if gate.uid in seen:
            continue
        seen.add(gate.uid)
        stack.append((gate, True))
        stack.extend((c, False) for c in gate.children)
    return out


def condition(circ: Circuit, assumption: Term) -> Circuit:
    """Substitute the term's literals into the circuit.

    Variable leaves fixed by the term become constants, decision gates over
    a fixed variable collapse to the selected child, and constants are
    folded locally on the way up (a false child kills a conjunction, true
    children are dropped, and dually for disjunctions).  The result never
    mentions a variable of the term and is never larger than the input.
    """
    if not isinstance(assumption, Term):
        raise TypeError("condition expects a Term")
    if len(assumption) == 0:
        return circ
    pool = circ.pool
    true_gate = pool._gate(CONST, 1, ())
    false_gate = pool._gate(CONST, 0, ())
    memo: dict[int, Gate] = {}
    for gate in iter_gates(circ):
        kind = gate.kind
        if kind == CONST:
            new = gate
        elif kind == VAR:
            fixed = assumption.value(gate.payload)
            if fixed is None:
                new = gate
            else:
                new = true_gate if fixed else false_gate
        elif kind == NOT:
            child = memo[gate.children[0].uid]
            if child.kind == CONST:
                new = false_gate if child.payload else true_gate
            elif child is gate.children[0]:
                new = gate
            else:
                new = pool._gate(NOT, None, (child,))
        elif kind == AND or kind == OR:
            new = _fold_nary(pool, gate, memo, true_gate, false_gate)
        else:  # DEC
            fixed = assumption.value(gate.payload)
            low = memo[gate.children[0].uid]
            high = memo[gate.children[1].uid]
            if fixed is True:
                new = high
            elif fixed is False:
                new = low
            elif low is gate.children[0] and high is gate.children[1]:
                new = gate
            else:
                new = pool._gate(DEC, gate.payload, (low, high))
        memo[gate.uid] = new
    return Circuit(pool, memo[circ.root.uid])


def _fold_nary(pool, gate, memo, true_gate, false_gate):
    absorbing = false_gate if gate.kind == AND else true_gate
    neutral = true_gate if gate.kind == AND else false_gate
    kids = []
    changed = False
    for child in gate.children:
        new = memo[child.uid]
        if new is not child:
            changed = True
        if new is absorbing:
            return absorbing
        if new is neutral:
            continue
        kids.append(new)
    if len(kids) == len(gate.children) and not changed:
        return gate
    if not kids:
        return neutral
    if len(kids) == 1:
        return kids[0]
    return pool._gate(gate.kind, None, tuple(kids))


def negate(circ: Circuit) -> Circuit:
    """Complement as a wrapper gate; double negation and constants fold away."""
    root = circ.root
    if root.kind == NOT:
        return Circuit(circ.pool, root.children[0])
    if root.kind == CONST:
        return circ.pool.const(1 - root.payload)
    return circ.pool.not_(circ)


def conjoin(a: Circuit, b: Circuit) -> Circuit:
    """Conjunction; adds at most two arcs over the inputs."""
    return _combine(AND, a, b)


def disjoin(a: Circuit, b: Circuit) -> Circuit:
    """Disjunction; adds at most two arcs over the inputs."""
    return _combine(OR, a, b)


def _combine(kind, a, b):
    a.pool._owned(b)
    absorbing = 0 if kind == AND else 1
    for first, second in ((a, b), (b, a)):
        if first.root.kind == CONST:
            return first if first.root.payload == absorbing else second
    if a.root is b.root:
        return a
    return Circuit(a.pool, a.pool._gate(kind, None, (a.root, b.root)))
