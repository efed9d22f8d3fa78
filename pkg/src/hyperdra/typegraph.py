"""Finite symbolic graphs over combined register types.

Two runs of (possibly different) automata on the same input are tracked by
the pair of current states together with the word type of the concatenated
register contents.  History values never enter the node, which is what keeps
the graph finite; every symbolic edge is realizable by a concrete value since
the dense order has no gaps to run out of and the equality domain has
infinitely many fresh values.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass, field
from typing import Callable, Hashable, Iterable, Optional

from .automaton import Automaton, Configuration, Transition, step
from .graphs import downstream_of_cycles
from .wordtypes import WordType, extend, extensions, project, type_of, value_for_choice


class IncompleteAutomaton(ValueError):
    pass


@dataclass(frozen=True, slots=True)
class ProductNode:
    a: str
    b: str
    combined: WordType
    split: int  # number of leading positions that belong to the first run

    def __str__(self) -> str:
        c = self.combined.codes
        left = ".".join(map(str, c[: self.split])) or "-"
        right = ".".join(map(str, c[self.split:])) or "-"
        return f"({self.a}, {self.b}, {left}|{right})"


@dataclass
class SymbolicGraph:
    """Explicit graph with labelled edges and reachability annotations."""

    start: Hashable
    edges: dict  # node -> list of (label, node)
    depth: dict = field(default_factory=dict)
    parent: dict = field(default_factory=dict)
    unbounded: set = field(default_factory=set)

    @property
    def nodes(self) -> list:
        return list(self.edges)

    def __len__(self) -> int:
        return len(self.edges)

    def succ(self) -> dict:
        return {v: [w for _, w in es] for v, es in self.edges.items()}


def explore(start: Hashable, successors: Callable[[Hashable], Iterable]) -> SymbolicGraph:
    """BFS closure of ``start`` under ``successors`` (yielding (label, node))."""
    edges: dict = {}
    depth = {start: 0}
    parent: dict = {start: None}
    todo = deque([start])
    while todo:
        v = todo.popleft()
        out = list(successors(v))
        edges[v] = out
        for label, w in out:
            if w not in depth:
                depth[w] = depth[v] + 1
                parent[w] = (v, label)
                todo.append(w)
    g = SymbolicGraph(start, edges, depth, parent)
    return reach_info(g)


def reach_info(g: SymbolicGraph) -> SymbolicGraph:
    """Fill in the set of nodes reachable by a path that repeats a node."""
    g.unbounded = downstream_of_cycles(g.succ(), g.start)
    return g


def reachable_at_length_ge(g: SymbolicGraph, ell: int) -> set:
    """Nodes that end some path from the start of length at least ``ell``."""
    if ell < 0:
        raise ValueError("ell must be non-negative")
    if ell == 0:
        return set(g.edges)
    if ell > len(g):
        return set(g.unbounded)
    succ = g.succ()
    seen = {(g.start, 0)}
    todo = deque(seen)
    while todo:
        v, d = todo.popleft()
        nd = min(d + 1, ell)
        for w in succ[v]:
            if (w, nd) not in seen:
                seen.add((w, nd))
                todo.append((w, nd))
    return {v for v, d in seen if d == ell}


def path_with_length_ge(g: SymbolicGraph, target: Hashable, ell: int) -> Optional[list]:
    """Edge labels of a shortest path to ``target`` having length at least ``ell``."""
    succ = g.edges
    start = (g.start, 0)
    parent = {start: None}
    todo = deque([start])
    while todo:
        v, d = todo.popleft()
        if v == target and d == ell:
            labels = []
            key = (v, d)
            while parent[key] is not None:
                key, label = parent[key]
                labels.append(label)
            return labels[::-1]
        nd = min(d + 1, ell)
        for label, w in succ[v]:
            if (w, nd) not in parent:
                parent[(w, nd)] = ((v, d), label)
                todo.append((w, nd))
    return None


def path_to(g: SymbolicGraph, target: Hashable) -> list:
    """Edge labels along the BFS tree path from the start to ``target``."""
    labels = []
    v = target
    while g.parent[v] is not None:
        v, label = g.parent[v]
        labels.append(label)
    return labels[::-1]


# -- two-run product -------------------------------------------------------------

def fire(a: Automaton, sid: str, guard: WordType) -> Transition:
    t = a.lookup(sid, guard)
    if t is None:
        raise IncompleteAutomaton(f"{a.name}: no transition from {sid} on guard {guard}")
    return t


def kept_positions(t: Transition, block: Iterable[int], input_pos: int) -> list:
    """Positions (0-based, in the joint word) that survive ``t``.

    ``block`` lists the joint positions of the source registers in order;
    the guard's last position is the input at ``input_pos``.
    """
    block = list(block)
    return [block[j - 1] if j <= len(block) else input_pos for j in t.kept]


def product_successors(A: Automaton, B: Automaton, v: ProductNode) -> list:
    n = len(v.combined)
    left = range(v.split)
    right = range(v.split, n)
    out = []
    for ch in extensions(v.combined):
        ext = extend(v.combined, ch)
        ta = fire(A, v.a, project(ext, list(left) + [n]))
        tb = fire(B, v.b, project(ext, list(right) + [n]))
        ka = kept_positions(ta, left, n)
        kb = kept_positions(tb, right, n)
        out.append((ch, ProductNode(ta.dst, tb.dst, project(ext, ka + kb), len(ka))))
    return out


def product_graph(A: Automaton, pA: str, B: Automaton, pB: str, combined: WordType,
                  split: Optional[int] = None) -> SymbolicGraph:
    """Product graph from states pA, pB whose joint registers have type ``combined``."""
    if A.domain is not B.domain:
        raise ValueError("automata over different domains")
    if split is None:
        split = A.arity(pA)
    start = ProductNode(pA, pB, combined, split)
    return explore(start, lambda v: product_successors(A, B, v))


def product_graph_from_configs(A: Automaton, cA: Configuration, B: Automaton,
                               cB: Configuration) -> SymbolicGraph:
    combined = type_of(cA.registers + cB.registers, A.domain)
    return product_graph(A, cA.state, B, cB.state, combined, len(cA.registers))


def differing(A: Automaton, B: Automaton, v: ProductNode) -> bool:
    return A.accepting(v.a) != B.accepting(v.b)


def node_bound(m: int, n: int, kA: int, kB: int) -> int:
    """State pairs times (kA + kB)!, the usual two-run pumping bound."""
    return m * n * math.factorial(kA + kB)


def interleavings(kA: int, kB: int) -> int:
    """Joint types of two duplicate-free register words of fixed types with
    kA and kB values (values may coincide across the two words)."""
    # Delannoy numbers: each step places the next value of one word, or one of each tied
    return sum(math.comb(kA, i) * math.comb(kB, i) * 2 ** i for i in range(min(kA, kB) + 1))


def tight_node_bound(m: int, n: int, kA: int, kB: int) -> int:
    return m * n * interleavings(kA, kB)


def realize_path(A: Automaton, cA: Configuration, B: Automaton, cB: Configuration,
                 choices: Iterable) -> tuple:
    """Concrete input word following ``choices`` from the two configurations.

    Returns (word, final configuration of A, final configuration of B).
    """
    w = []
    for ch in choices:
        x = value_for_choice(cA.registers + cB.registers, A.domain, ch)
        cA, cB = step(A, cA, x), step(B, cB, x)
        if cA is None or cB is None:
            raise IncompleteAutomaton("run got stuck while realizing a symbolic path")
        w.append(x)
    return tuple(w), cA, cB


def to_dot(g: SymbolicGraph, highlight: Callable[[Hashable], bool] = lambda v: False) -> str:
    ids = {v: i for i, v in enumerate(g.edges)}
    lines = ["digraph product {", "  rankdir=LR;"]
    for v, i in ids.items():
        attrs = [f'label="{v}"']
        if v == g.start:
            attrs.append("shape=box")
        if highlight(v):
            attrs.append("color=red")
        lines.append(f"  n{i} [{', '.join(attrs)}];")
    for v, es in g.edges.items():
        for label, w in es:
            lines.append(f'  n{ids[v]} -> n{ids[w]} [label="{label}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"
