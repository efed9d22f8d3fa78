"""Cross-checks of the symbolic procedures against the brute-force oracle
on one random instance at a time."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .automaton import Automaton, StateKind, classify_states, initial_configuration, shortest_words, step
from .equivalence import automata_almost_equiv, automata_equiv, completed, config_almost_equiv, state_equiv
from .memorability import ell_memorable, memorable_set
from .minimize import Report, hyper_minimize, merge_fixpoint_violations, minimize
from .oracle import (
    Classification,
    GenParams,
    brute_ell_memorable,
    brute_equiv_diff,
    candidate_values,
    classify_disagreements,
    random_dra,
)
from .typegraph import node_bound, product_graph_from_configs
from .wordtypes import Domain


@dataclass
class Findings:
    seed: int
    domain: Domain
    checks: dict = field(default_factory=dict)  # name -> number of comparisons
    failures: list = field(default_factory=list)

    def count(self, name: str, ok: bool, detail: str = "") -> None:
        self.checks[name] = self.checks.get(name, 0) + 1
        if not ok:
            self.failures.append(f"{name}: seed={self.seed} {self.domain.value} {detail}")

    @property
    def ok(self) -> bool:
        return not self.failures


def instance(seed: int, domain: Domain, max_states: int = 4, max_registers: int = 2) -> Automaton:
    return random_dra(GenParams(seed=seed, max_states=max_states, max_registers=max_registers, domain=domain))


def configurations(a: Automaton) -> list:
    """One reachable configuration per state (shortest input, canonical values)."""
    return [c for _, c in shortest_words(a).values()]


def check_bound(f: Findings, A: Automaton, cA, B: Automaton, cB) -> int:
    A, B = completed(A), completed(B)
    g = product_graph_from_configs(A, cA, B, cB)
    bound = node_bound(A.n, B.n, A.max_arity, B.max_arity)
    f.count("node_bound", len(g) <= bound, f"{len(g)} nodes > bound {bound}")
    return len(g)


def check_almost_equiv(f: Findings, A, cA, B, cB) -> bool:
    v = config_almost_equiv(A, cA, B, cB)
    n = v.nodes
    cls = classify_disagreements(completed(A), completed(B), n, 2 * n + 2, cA, cB)
    f.count("almost_equiv_vs_oracle", v.answer == (cls is Classification.BOUNDED_ONLY),
            f"{cA} vs {cB}: symbolic {v.answer}, oracle {cls.value}")
    return v.answer


def check_successor_closure(f: Findings, A, cA, B, cB) -> None:
    A, B = completed(A), completed(B)
    for x in candidate_values(cA.registers + cB.registers, A.domain):
        dA, dB = step(A, cA, x), step(B, cB, x)
        f.count("successor_closure", bool(config_almost_equiv(A, dA, B, dB, witness=False)),
                f"{cA} ~ {cB} but successors on {x} differ")


def check_memorability(f: Findings, A: Automaton, ells=(0, 1, 2, 3)) -> None:
    A = completed(A)
    for c in configurations(A):
        if c.state == A.sink:
            continue
        for i in range(1, len(c.registers) + 1):
            for ell in ells:
                sym = ell_memorable(A, c.state, i, ell, c.registers)
                brute = brute_ell_memorable(A, c.state, i, ell, c.registers)
                f.count("memorable_vs_oracle", sym == brute,
                        f"{c} register {i} ell={ell}: symbolic {sym}, oracle {brute}")


def check_minimize(f: Findings, A: Automaton, oracle_len: int) -> Automaton:
    m = minimize(A)
    f.count("minimize_idempotent", minimize(m) == m)
    f.count("minimize_equivalent", bool(automata_equiv(A, m, witness=False)))
    f.count("minimize_oracle", not brute_equiv_diff(A, m, oracle_len).disagreements)
    ids = [s.id for s in m.states]
    for p, q in itertools.combinations(ids, 2):
        if m.regtype(p) == m.regtype(q):
            f.count("minimize_no_equivalent_pair", not state_equiv(m, p, q), f"{p} = {q}")
    return m


def check_hyper_minimize(f: Findings, A: Automaton) -> Automaton:
    report = Report()
    h = hyper_minimize(A, report=report, self_check=False)
    f.count("hypermin_almost_equivalent", bool(automata_almost_equiv(A, h, witness=False)))
    cA, cB = initial_configuration(completed(A)), initial_configuration(completed(h))
    n = product_graph_from_configs(completed(A), cA, completed(h), cB).__len__()
    cls = classify_disagreements(completed(A), completed(h), n, 2 * n + 2)
    f.count("hypermin_oracle", cls is Classification.BOUNDED_ONLY)
    f.count("hypermin_fixpoint", not merge_fixpoint_violations(h), str(merge_fixpoint_violations(h)))
    f.count("hypermin_not_larger", h.n <= A.n and h.max_arity <= A.max_arity)
    kinds = classify_states(h)
    for c in configurations(h):
        if kinds[c.state] is StateKind.PREAMBLE and c.registers:
            mem = memorable_set(h, c.state, report.ell, c.registers)
            f.count("hypermin_preamble_memorable", mem == set(range(1, len(c.registers) + 1)),
                    f"{c.state} keeps {len(c.registers)} registers, memorable {sorted(mem)}")
    return h


def run_instance(seed: int, domain: Domain, max_states: int = 4, max_registers: int = 2,
                 oracle_len: int = 5) -> Findings:
    f = Findings(seed, domain)
    A = instance(seed, domain, max_states, max_registers)
    B = instance(seed + 100_000, domain, max_states, max_registers)
    pairs = [(A, initial_configuration(A), B, initial_configuration(B))]
    confs = configurations(completed(A))
    pairs += [(A, c, A, d) for c, d in itertools.combinations(confs, 2)]
    for X, cX, Y, cY in pairs:
        check_bound(f, X, cX, Y, cY)
        if check_almost_equiv(f, X, cX, Y, cY):
            check_successor_closure(f, X, cX, Y, cY)
    check_memorability(f, A)
    check_minimize(f, A, oracle_len)
    check_hyper_minimize(f, A)
    return f
