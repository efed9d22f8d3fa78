"""Memorability of stored register values.

A value ``a`` stored at a state is ell-memorable when some continuation
``w`` of length at least ell, together with a replacement value ``b`` that
leaves the joint word type unchanged, flips acceptance between reading
``w`` and reading ``w`` with every occurrence of ``a`` replaced by ``b``.

The search runs both readings side by side from the same configuration.
A node records the two current states and the joint type of both register
words followed by the two pivot values ``a`` and ``b``.  The replacement
preserves the type exactly when no input equals ``b`` or falls strictly
between ``a`` and ``b`` (equality domain: no input equals ``b``), so that
condition is enforced one letter at a time.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .automaton import Automaton
from .equivalence import completed
from .typegraph import (
    SymbolicGraph,
    fire,
    explore,
    kept_positions,
    reachable_at_length_ge,
)
from .wordtypes import (
    Domain,
    ExtensionChoice,
    WordType,
    extend,
    extensions,
    gap_choice,
    project,
    realize,
    type_of,
)


@dataclass(frozen=True, slots=True)
class PivotedNode:
    a: str
    b: str
    combined: WordType  # regs of run 1, regs of run 2, pivot a, pivot b
    n1: int
    n2: int

    @property
    def pivot_a(self) -> int:
        return self.n1 + self.n2

    @property
    def pivot_b(self) -> int:
        return self.n1 + self.n2 + 1

    def __str__(self) -> str:
        c = self.combined.codes
        r1 = ".".join(map(str, c[: self.n1])) or "-"
        r2 = ".".join(map(str, c[self.n1: self.n1 + self.n2])) or "-"
        return f"({self.a}, {self.b}, {r1}|{r2}|a={c[self.pivot_a]},b={c[self.pivot_b]})"


def pivot_patterns(u: tuple, index: int, domain: Domain) -> list:
    """Replacement values b for u[index-1] that keep the type of u unchanged
    (up to the renaming a -> b): just below or just above a in the dense
    order, or a fresh value in the equality domain."""
    a = u[index - 1]
    if domain is Domain.EQUALITY:
        return [max(u) + 1]
    vals = sorted(set(u))
    i = vals.index(a)
    below = vals[i - 1] if i > 0 else a - 2
    above = vals[i + 1] if i + 1 < len(vals) else a + 2
    return [(below + a) / 2, (a + above) / 2]


def _allowed(v: PivotedNode, ch: ExtensionChoice, domain: Domain) -> bool:
    cb = v.combined.codes[v.pivot_b]
    if ch.kind == "eq":
        return ch.index != cb
    if domain is Domain.DENSE:
        ca = v.combined.codes[v.pivot_a]
        return ch != gap_choice(max(ca, cb))  # the open interval between a and b
    return True


def pivoted_successors(A: Automaton, v: PivotedNode) -> list:
    n = len(v.combined)
    r1 = list(range(v.n1))
    r2 = list(range(v.n1, v.n1 + v.n2))
    ca = v.combined.codes[v.pivot_a]
    out = []
    for ch in extensions(v.combined):
        if not _allowed(v, ch, A.domain):
            continue
        ext = extend(v.combined, ch)
        # the second run reads b wherever the first reads a
        second_input = v.pivot_b if ch.kind == "eq" and ch.index == ca else n
        t1 = fire(A, v.a, project(ext, r1 + [n]))
        t2 = fire(A, v.b, project(ext, r2 + [second_input]))
        k1 = kept_positions(t1, r1, n)
        k2 = kept_positions(t2, r2, second_input)
        node = PivotedNode(t1.dst, t2.dst, project(ext, k1 + k2 + [v.pivot_a, v.pivot_b]), len(k1), len(k2))
        out.append((ch, node))
    return out


def pivoted_graph(A: Automaton, state: str, registers: tuple, index: int, b: Fraction) -> SymbolicGraph:
    """Both readings start at (state, registers); a = registers[index-1]."""
    A = completed(A)
    u = tuple(registers)
    joint = u + u + (u[index - 1], b)
    start = PivotedNode(state, state, type_of(joint, A.domain), len(u), len(u))
    return explore(start, lambda v: pivoted_successors(A, v))


def ell_memorable(A: Automaton, state: str, index: int, ell: int,
                  registers: Optional[tuple] = None) -> bool:
    """Whether register ``index`` (1-based) of ``state`` is ell-memorable.

    ``registers`` defaults to the canonical realization of the state's
    register type.
    """
    A = completed(A)
    u = tuple(registers) if registers is not None else realize(A.regtype(state))
    if not 1 <= index <= len(u):
        raise ValueError(f"register index {index} out of range for {state}")
    for b in pivot_patterns(u, index, A.domain):
        g = pivoted_graph(A, state, u, index, b)
        if any(A.accepting(v.a) != A.accepting(v.b) for v in reachable_at_length_ge(g, ell)):
            return True
    return False


def memorable_set(A: Automaton, state: str, ell: int, registers: Optional[tuple] = None) -> set:
    A = completed(A)
    n = len(registers) if registers is not None else A.arity(state)
    return {i for i in range(1, n + 1) if ell_memorable(A, state, i, ell, registers)}


def len_squared(A: Automaton) -> int:
    """Two-run pumping bound n^2 * (2k)! of an automaton."""
    return A.n ** 2 * math.factorial(2 * A.k)
