"""Group words, their evaluation and verbal subgroups."""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from typing import Iterable, Sequence

from .groups import FiniteGroup, Subgroup, closure, derived_term, power

DEFAULT_SCAN_BUDGET = 250_000


class ArityTooLarge(ValueError):
    pass


class WordSyntaxError(ValueError):
    pass


def _reduce(syllables: Iterable[tuple[int, int]]) -> tuple[tuple[int, int], ...]:
    out: list[tuple[int, int]] = []
    for var, exp in syllables:
        if exp == 0:
            continue
        if out and out[-1][0] == var:
            e = out[-1][1] + exp
            out.pop()
            if e:
                out.append((var, e))
        else:
            out.append((var, exp))
    return tuple(out)


@dataclass(frozen=True)
class GroupWord:
    """A freely reduced word; syllable (i, e) stands for x_(i+1)^e."""

    arity: int
    syllables: tuple[tuple[int, int], ...] = ()

    def __post_init__(self):
        red = _reduce(self.syllables)
        object.__setattr__(self, "syllables", red)
        if any(not 0 <= v < self.arity for v, _ in red):
            raise ValueError("variable index out of range")

    @classmethod
    def var(cls, i: int, arity: int | None = None) -> "GroupWord":
        return cls(i + 1 if arity is None else arity, ((i, 1),))

    def __mul__(self, other: "GroupWord") -> "GroupWord":
        return GroupWord(max(self.arity, other.arity), self.syllables + other.syllables)

    def inverse(self) -> "GroupWord":
        return GroupWord(self.arity, tuple((v, -e) for v, e in reversed(self.syllables)))

    def shift(self, k: int) -> "GroupWord":
        """Rename x_i to x_(i+k)."""
        return GroupWord(self.arity + k, tuple((v + k, e) for v, e in self.syllables))

    def __str__(self) -> str:
        if not self.syllables:
            return "1"
        return "*".join(f"x{v + 1}" if e == 1 else f"x{v + 1}^{e}" for v, e in self.syllables)


def word_commutator(u: GroupWord, v: GroupWord) -> GroupWord:
    return u.inverse() * v.inverse() * u * v


def evaluate(w: GroupWord, g: FiniteGroup, assignment: Sequence[int]) -> int:
    if len(assignment) != w.arity:
        raise ValueError(f"expected {w.arity} values, got {len(assignment)}")
    out = 0
    t, inv = g.table, g.inv
    for var, exp in w.syllables:
        a = assignment[var]
        if exp == 1:
            out = t[out][a]
        elif exp == -1:
            out = t[out][inv[a]]
        else:
            out = t[out][power(g, a, exp)]
    return out


def verbal_subgroup(g: FiniteGroup, words: Sequence[GroupWord],
                    budget: int = DEFAULT_SCAN_BUDGET) -> Subgroup:
    """Subgroup generated by all values of the words, by scanning every assignment."""
    for w in words:
        if g.order ** w.arity > budget:
            raise ArityTooLarge(f"{g.order}^{w.arity} assignments exceed budget {budget}")
    values = set()
    for w in words:
        values.update(evaluate(w, g, a)
                      for a in itertools.product(range(g.order), repeat=w.arity))
    return closure(g, values)


def derived_word(k: int) -> GroupWord:
    """delta_1 = x1, delta_(k+1) = [delta_k(first half), delta_k(second half)]."""
    if k < 1:
        raise ValueError("k must be at least 1")
    w = GroupWord.var(0)
    for _ in range(k - 1):
        w = word_commutator(w, w.shift(w.arity))
    return w


def derived_word_set(k: int) -> list[GroupWord]:
    return [derived_word(k)]


def derived_verbal_subgroup(g: FiniteGroup, k: int,
                            budget: int = DEFAULT_SCAN_BUDGET) -> Subgroup:
    """G^(k) as the verbal subgroup of delta_k.

    Falls back to iterated commutator subgroups (the same subgroup) when the
    assignment scan would exceed the budget.
    """
    w = derived_word(k)
    if g.order ** w.arity <= budget:
        return verbal_subgroup(g, [w], budget)
    return derived_term(g, k)


_TOKEN = re.compile(r"\s*(?:(x)(\d+)|(\[)|(\])|(,)|(\*)|(\^)(-?\d+)|(\()|(\))|(1))")


def parse_word(text: str) -> GroupWord:
    """Parse words like ``x1^-1*x2*[x1,x2]``; juxtaposition is not allowed."""
    tokens = []
    pos = 0
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise WordSyntaxError(f"unexpected input at {pos}: {text[pos:]!r}")
        pos = m.end()
        if m.group(1):
            idx = int(m.group(2))
            if idx < 1:
                raise WordSyntaxError("variables are numbered from x1")
            tokens.append(("var", idx - 1))
        elif m.group(7):
            tokens.append(("pow", int(m.group(8))))
        else:
            tokens.append((next(s for s in m.groups() if s), None))
    tokens.append(("end", None))
    i = 0

    def peek():
        return tokens[i][0]

    def take(kind):
        nonlocal i
        if tokens[i][0] != kind:
            raise WordSyntaxError(f"expected {kind!r}, found {tokens[i][0]!r}")
        i += 1
        return tokens[i - 1][1]

    def product():
        w = factor()
        while peek() == "*":
            take("*")
            w = w * factor()
        return w

    def factor():
        kind = peek()
        if kind == "var":
            w = GroupWord.var(take("var"))
        elif kind == "1":
            take("1")
            w = GroupWord(0)
        elif kind == "(":
            take("(")
            w = product()
            take(")")
        elif kind == "[":
            take("[")
            u = product()
            take(",")
            v = product()
            take("]")
            w = word_commutator(u, v)
        else:
            raise WordSyntaxError(f"unexpected {kind!r}")
        while peek() == "pow":
            e = take("pow")
            base = w.inverse() if e < 0 else w
            w = GroupWord(w.arity)
            for _ in range(abs(e)):
                w = w * base
        return w

    w = product()
    take("end")
    return w
