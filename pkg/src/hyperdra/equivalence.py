"""Equivalence and almost-equivalence of configurations, states and automata.

Two configurations disagree on finitely many word types exactly when no
product node with differing acceptance can be reached by a path that
repeats a node; they are equivalent when no such node is reachable at all.
State-level questions reduce to configuration questions over a finite
witness alphabet built around one representative register word.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Optional

from .automaton import Automaton, Configuration, accepts, complete, initial_configuration
from .typegraph import (
    ProductNode,
    SymbolicGraph,
    differing,
    path_to,
    path_with_length_ge,
    product_graph_from_configs,
    realize_path,
)
from .wordtypes import Domain, WordType, format_word, realize, type_of


@dataclass(frozen=True)
class Witness:
    node: ProductNode
    word: tuple
    accepted_by_a: bool

    def word_type(self, domain: Domain, prefix: tuple = ()) -> WordType:
        return type_of(prefix + self.word, domain)

    def __str__(self) -> str:
        side = "first" if self.accepted_by_a else "second"
        return f"word {format_word(self.word) or 'ε'} accepted only by the {side} automaton, reaching {self.node}"


@dataclass(frozen=True)
class EquivVerdict:
    answer: bool
    witness: Optional[Witness] = None
    nodes: int = 0

    def __bool__(self) -> bool:
        return self.answer


@lru_cache(maxsize=512)
def completed(a: Automaton) -> Automaton:
    return complete(a)


def _graph(A, cA, B, cB) -> tuple:
    A, B = completed(A), completed(B)
    return A, B, product_graph_from_configs(A, cA, B, cB)


def _witness(A, cA, B, cB, g: SymbolicGraph, node, labels) -> Witness:
    w, _, _ = realize_path(A, cA, B, cB, labels)
    in_a = accepts(A, w, cA)
    # the symbolic disagreement must be a concrete one
    assert in_a != accepts(B, w, cB), "symbolic witness failed concrete re-check"
    return Witness(node, w, in_a)


def config_equiv(A: Automaton, cA: Configuration, B: Automaton, cB: Configuration,
                 witness: bool = True) -> EquivVerdict:
    A, B, g = _graph(A, cA, B, cB)
    bad = [v for v in g.edges if differing(A, B, v)]
    if not bad:
        return EquivVerdict(True, None, len(g))
    if not witness:
        return EquivVerdict(False, None, len(g))
    v = min(bad, key=lambda v: g.depth[v])
    return EquivVerdict(False, _witness(A, cA, B, cB, g, v, path_to(g, v)), len(g))


def config_almost_equiv(A: Automaton, cA: Configuration, B: Automaton, cB: Configuration,
                        witness: bool = True) -> EquivVerdict:
    A, B, g = _graph(A, cA, B, cB)
    bad = [v for v in g.edges if v in g.unbounded and differing(A, B, v)]
    if not bad:
        return EquivVerdict(True, None, len(g))
    if not witness:
        return EquivVerdict(False, None, len(g))
    # a disagreement longer than the node count, so it lies past a cycle
    v = min(bad, key=lambda v: g.depth[v])
    labels = path_with_length_ge(g, v, len(g) + 1)
    return EquivVerdict(False, _witness(A, cA, B, cB, g, v, labels), len(g))


# -- witness alphabets -------------------------------------------------------------

@dataclass(frozen=True)
class WitnessAlphabet:
    values: tuple
    source: tuple
    target_length: int

    def gaps(self) -> list:
        """Fresh values grouped by the open interval of the source they fall in."""
        src = sorted(set(self.source))
        bounds = [None] + src + [None]
        out = []
        for lo, hi in zip(bounds, bounds[1:]):
            out.append([x for x in self.values if x not in src
                        and (lo is None or x > lo) and (hi is None or x < hi)])
        return out


def witness_alphabet(u, eta_length: int, domain: Domain) -> WitnessAlphabet:
    u = tuple(Fraction(x) for x in u)
    if len(set(u)) != len(u):
        raise ValueError("register word must be duplicate-free")
    k = eta_length
    if domain is Domain.EQUALITY:
        top = max(u, default=Fraction(-1))
        fresh = [top + j for j in range(1, k + 1)]
        return WitnessAlphabet(u + tuple(fresh), u, k)
    vals = sorted(u)
    fresh = []
    if not vals:
        fresh = [Fraction(j) for j in range(k)]
    else:
        fresh += [vals[0] - j for j in range(k, 0, -1)]
        for lo, hi in zip(vals, vals[1:]):
            step = (hi - lo) / (k + 1)
            fresh += [lo + j * step for j in range(1, k + 1)]
        fresh += [vals[-1] + j for j in range(1, k + 1)]
    return WitnessAlphabet(tuple(sorted(set(vals) | set(fresh))), u, k)


def candidate_registers(u: tuple, eta: WordType) -> list:
    """Register words v' of type ``eta`` over the witness alphabet of ``u``,
    one per joint type of u·v'."""
    alphabet = witness_alphabet(u, len(eta), eta.domain)
    seen = set()
    out = []
    for v in itertools.permutations(alphabet.values, len(eta)):
        if type_of(v, eta.domain) != eta:
            continue
        key = type_of(u + v, eta.domain)
        if key not in seen:
            seen.add(key)
            out.append(v)
    return out


def _state_relation(check, A: Automaton, p: str, B: Automaton, q: str) -> bool:
    u = realize(A.regtype(p))
    cA = Configuration(p, u)
    for v in candidate_registers(u, B.regtype(q)):
        if check(A, cA, B, Configuration(q, v), witness=False):
            return True
    return False


def state_almost_equiv(A: Automaton, p: str, q: str, B: Optional[Automaton] = None) -> bool:
    return _state_relation(config_almost_equiv, A, p, B if B is not None else A, q)


def state_equiv(A: Automaton, p: str, q: str, B: Optional[Automaton] = None) -> bool:
    return _state_relation(config_equiv, A, p, B if B is not None else A, q)


def automata_almost_equiv(A: Automaton, B: Automaton, witness: bool = True) -> EquivVerdict:
    return config_almost_equiv(A, initial_configuration(A), B, initial_configuration(B), witness)


def automata_equiv(A: Automaton, B: Automaton, witness: bool = True) -> EquivVerdict:
    return config_equiv(A, initial_configuration(A), B, initial_configuration(B), witness)
