"""Desk-scale model theory: evaluation, enumeration, entailment, forgetting.

Enumeration is truth-table based: a circuit over an ordered tuple of n
variables maps to a 2**n-bit integer whose bit i is the circuit's value
under the i-th assignment.  Assignments are ordered lexicographically by
their word (first variable = leftmost character = most significant bit),
so bit i corresponds to the word format(i, f"0{n}b").  Bitwise integer
operations then implement every gate over all assignments at once.

All enumerating operations refuse to run past a variable cap
(DEFAULT_VAR_CAP unless the caller overrides it).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

from .circuit import AND, CONST, DEC, NOT, OR, VAR
from .circuit import Circuit, Literal, Term, VarId, condition, disjoin, iter_gates
from .errors import CapExceededError

DEFAULT_VAR_CAP = 20


@dataclass(frozen=True)
class Assignment:
    """A total assignment over an ordered tuple of variables."""

    vars: tuple[VarId, ...]
    bits: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "vars", tuple(self.vars))
        object.__setattr__(self, "bits", tuple(int(b) for b in self.bits))
        if len(self.vars) != len(self.bits):
            raise ValueError("assignment needs one bit per variable")
        if any(b not in (0, 1) for b in self.bits):
            raise ValueError("assignment bits must be 0 or 1")
        if len(set(self.vars)) != len(self.vars):
            raise ValueError("duplicate variable in assignment")

    @classmethod
    def from_word(cls, word: str, over: Sequence[VarId]) -> "Assignment":
        over = tuple(over)
        if len(word) != len(over) or any(ch not in "01" for ch in word):
            raise ValueError(
                f"instance word must be {len(over)} characters of 0/1, got {word!r}"
            )
        return cls(over, tuple(int(ch) for ch in word))

    @classmethod
    def from_index(cls, i: int, over: Sequence[VarId]) -> "Assignment":
        over = tuple(over)
        n = len(over)
        return cls(over, tuple((i >> (n - 1 - j)) & 1 for j in range(n)))

    @property
    def word(self) -> str:
        return "".join(str(b) for b in self.bits)

    @cached_property
    def _table(self) -> dict[VarId, int]:
        return dict(zip(self.vars, self.bits))

    def value(self, var: VarId) -> int:
        return self._table[var]

    __getitem__ = value

    def to_term(self) -> Term:
        return Term(Literal(v, bool(b)) for v, b in zip(self.vars, self.bits))

    def extended(self, var: VarId, bit: int) -> "Assignment":
        return Assignment(self.vars + (var,), self.bits + (bit,))

    def __str__(self):
        return self.word


def ensure_cap(count: int, cap: int):
    if count > cap:
        raise CapExceededError(
            f"{count} variables exceed the enumeration cap of {cap}"
        )


def _position_mask(p: int, n: int) -> int:
    # bit i of the result is (i >> p) & 1, for all i < 2**n
    block = ((1 << (1 << p)) - 1) << (1 << p)
    width = 1 << (p + 1)
    total = 1 << n
    while width < total:
        block |= block << width
        width <<= 1
    return block


def var_masks(over: Sequence[VarId]) -> dict[VarId, int]:
    """Truth-table mask of each variable itself, under the given order."""
    over = tuple(over)
    n = len(over)
    return {v: _position_mask(n - 1 - j, n) for j, v in enumerate(over)}


def truth_mask(circ: Circuit, over: Sequence[VarId]) -> int:
    """The circuit's full truth table over the given variable order, as an int."""
    over = tuple(over)
    if len(set(over)) != len(over):
        raise ValueError("duplicate variables in enumeration order")
    missing = circ.vars() - set(over)
    if missing:
        names = ", ".join(sorted(v.name for v in missing))
        raise ValueError(f"circuit mentions variables outside the order: {names}")
    full = (1 << (1 << len(over))) - 1
    masks = var_masks(over)
    memo: dict[int, int] = {}
    for gate in iter_gates(circ):
        kind = gate.kind
        if kind == CONST:
            m = full if gate.payload else 0
        elif kind == VAR:
            m = masks[gate.payload]
        elif kind == NOT:
            m = full ^ memo[gate.children[0].uid]
        elif kind == AND:
            m = full
            for child in gate.children:
                m &= memo[child.uid]
        elif kind == OR:
            m = 0
            for child in gate.children:
                m |= memo[child.uid]
        else:  # DEC
            sel = masks[gate.payload]
            m = (memo[gate.children[1].uid] & sel) | (
                memo[gate.children[0].uid] & ~sel & full
            )
        memo[gate.uid] = m
    return memo[circ.root.uid]


def evaluate(circ: Circuit, omega: Assignment) -> int:
    """Classical Boolean evaluation under a total assignment."""
    memo: dict[int, int] = {}
    try:
        for gate in iter_gates(circ):
            kind = gate.kind
            if kind == CONST:
                v = gate.payload
            elif kind == VAR:
                v = omega.value(gate.payload)
            elif kind == NOT:
                v = 1 - memo[gate.children[0].uid]
            elif kind == AND:
                v = 1
                for child in gate.children:
                    v &= memo[child.uid]
            elif kind == OR:
                v = 0
                for child in gate.children:
                    v |= memo[child.uid]
            else:  # DEC
                branch = gate.children[omega.value(gate.payload)]
                v = memo[branch.uid]
            memo[gate.uid] = v
    except KeyError as exc:
        raise ValueError(
            f"assignment is not total over the circuit's variables (missing {exc})"
        ) from None
    return memo[circ.root.uid]


def models(
    circ: Circuit, over: Sequence[VarId], cap: int = DEFAULT_VAR_CAP
) -> list[Assignment]:
    """All satisfying assignments over `over`, in lexicographic word order."""
    over = tuple(over)
    ensure_cap(len(over), cap)
    mask = truth_mask(circ, over)
    out = []
    while mask:
        low = mask & -mask
        out.append(Assignment.from_index(low.bit_length() - 1, over))
        mask ^= low
    return out


def _ordered(vs: Iterable[VarId]) -> tuple[VarId, ...]:
    return tuple(sorted(vs, key=lambda v: v.index))


def is_consistent(circ: Circuit, cap: int = DEFAULT_VAR_CAP) -> bool:
    over = _ordered(circ.vars())
    ensure_cap(len(over), cap)
    return truth_mask(circ, over) != 0


def entails(a: Circuit, b: Circuit, cap: int = DEFAULT_VAR_CAP) -> bool:
    """a |= b, i.e. a & !b has no model over the union of their variables."""
    over = _ordered(a.vars() | b.vars())
    ensure_cap(len(over), cap)
    return truth_mask(a, over) & ~truth_mask(b, over) == 0


def equivalent(a: Circuit, b: Circuit, cap: int = DEFAULT_VAR_CAP) -> bool:
    """Same models over the union of the two variable sets."""
    over = _ordered(a.vars() | b.vars())
    ensure_cap(len(over), cap)
    return truth_mask(a, over) == truth_mask(b, over)


def forget(circ: Circuit, vs: Iterable[VarId]) -> Circuit:
    """Existential abstraction: strongest consequence independent of vs.

    Applies the one-variable rule (low cofactor or high cofactor) once per
    variable, so the result can grow by a factor of two per forgotten
    variable; callers keep vs small.
    """
    out = circ
    for v in _ordered(frozenset(vs)):
        out = disjoin(
            condition(out, Term([Literal(v, False)])),
            condition(out, Term([Literal(v, True)])),
        )
    return out
