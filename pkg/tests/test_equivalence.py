import itertools
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hyperdra import fixtures
from hyperdra.automaton import Configuration, State, accepts, initial_configuration, step, validate
from hyperdra.equivalence import (
    automata_almost_equiv,
    automata_equiv,
    candidate_registers,
    completed,
    config_almost_equiv,
    config_equiv,
    state_almost_equiv,
    state_equiv,
    witness_alphabet,
)
from hyperdra.oracle import Classification, brute_equiv_diff, candidate_values, classify_disagreements
from hyperdra.wordtypes import Domain, parse_type, type_of, word

from .strategies import automata, order_preserving_maps

D, E = Domain.DENSE, Domain.EQUALITY


class TestWitnessAlphabet:
    def test_dense_worked_example(self):
        w = witness_alphabet(word([3, 7]), 2, D)
        assert len(w.values) == 8
        assert {Fraction(3), Fraction(7)} <= set(w.values)
        assert [len(g) for g in w.gaps()] == [2, 2, 2]

    def test_equality(self):
        w = witness_alphabet(word([3, 7]), 2, E)
        assert set(w.values) == set(word([3, 7, 8, 9]))

    def test_empty_source(self):
        assert len(witness_alphabet((), 1, D).values) == 1
        assert len(witness_alphabet((), 3, D).values) == 3

    def test_duplicates_refused(self):
        with pytest.raises(ValueError):
            witness_alphabet(word([1, 1]), 1, D)

    @given(st.lists(st.integers(-5, 5), unique=True, max_size=3), st.integers(0, 3))
    def test_covers_every_joint_type(self, u, k):
        # every joint type of u.v with |v| = k is realized over the alphabet
        u = word(u)
        for dom in Domain:
            alphabet = witness_alphabet(u, k, dom).values
            pool = candidate_values(u, dom) + [x + Fraction(1, 3) for x in candidate_values(u, dom)]
            wanted = set()
            for v in itertools.product(pool + [max(pool, default=0) + j for j in range(1, k + 1)], repeat=k):
                if len(set(v)) == k:
                    wanted.add(type_of(u + v, dom))
            got = {type_of(u + v, dom) for v in itertools.permutations(alphabet, k)}
            assert wanted <= got

    def test_candidate_registers_one_per_joint_type(self):
        eta = parse_type("0.1", D)
        cands = candidate_registers(word([3, 7]), eta)
        joint = [type_of(word([3, 7]) + v, D) for v in cands]
        assert len(set(joint)) == len(joint)
        assert all(type_of(v, D) == eta for v in cands)


class TestExamples:
    def test_mid_vs_empty_witness(self, mid, empty):
        v = automata_equiv(mid, empty)
        assert not v
        assert str(type_of(v.witness.word, D)) == "0.2.1" and v.witness.accepted_by_a

    def test_mid_almost_equiv_empty(self, mid, empty):
        # finitely many word types: only 0.2.1
        assert automata_almost_equiv(mid, empty)

    def test_even5_parity(self, even5, parity):
        assert not automata_equiv(even5, parity)
        assert automata_almost_equiv(even5, parity)

    def test_parity_vs_empty_not_almost(self, parity, empty):
        v = automata_almost_equiv(parity, empty)
        assert not v
        w = v.witness.word
        assert len(w) > v.nodes and accepts(parity, w)

    def test_mid_plus_states(self, mid_plus):
        # s and t are accepting, but only s keeps accepting
        assert not state_almost_equiv(mid_plus, "s", "t")

    def test_monotone_constructions_equivalent(self):
        a = fixtures.monotone_one_register(4)
        b = fixtures.monotone_many_registers(4)
        assert automata_equiv(a, b)
        assert not brute_equiv_diff(a, b, 6).disagreements

    def test_clone_is_equivalent(self, mid_plus):
        clone = mid_plus.replace(
            states=mid_plus.states + (State("s2", True, mid_plus.regtype("s"), mid_plus.arity("s")),),
            transitions=mid_plus.transitions + tuple(
                t.__class__("s2", t.guard, t.drop, "s2" if t.dst == "s" else t.dst)
                for t in mid_plus.outgoing("s")))
        clone = validate(clone)
        assert state_equiv(clone, "s", "s2") and state_equiv(clone, "s2", "s")

    def test_domain_mismatch(self, mid):
        with pytest.raises(ValueError):
            automata_equiv(mid, fixtures.empty(E))


class TestRelationProperties:
    @given(automata())
    def test_reflexive(self, a):
        c = initial_configuration(a)
        assert config_equiv(a, c, a, c) and config_almost_equiv(a, c, a, c)

    @given(automata(), automata())
    def test_symmetric(self, a, b):
        if a.domain is not b.domain:
            return
        assert bool(automata_equiv(a, b)) == bool(automata_equiv(b, a))
        assert bool(automata_almost_equiv(a, b)) == bool(automata_almost_equiv(b, a))

    @given(automata(), automata(), automata())
    @settings(max_examples=30)
    def test_transitive(self, a, b, c):
        if not a.domain is b.domain is c.domain:
            return
        for rel in (automata_equiv, automata_almost_equiv):
            if rel(a, b, witness=False) and rel(b, c, witness=False):
                assert rel(a, c, witness=False)

    @given(automata())
    def test_equiv_implies_almost(self, a):
        a = completed(a)
        confs = list({c for c in _configs(a)})[:4]
        for c, d in itertools.combinations(confs, 2):
            if config_equiv(a, c, a, d, witness=False):
                assert config_almost_equiv(a, c, a, d, witness=False)


def _configs(a):
    layer, seen = {initial_configuration(a)}, set()
    for _ in range(3):
        seen |= layer
        layer = {step(a, c, x) for c in layer for x in candidate_values(c.registers, a.domain)}
    return sorted(seen, key=str)


@given(automata(), order_preserving_maps())
def test_verdicts_invariant_under_order_preserving_maps(a, f):
    a = completed(a)
    for c, d in itertools.combinations(_configs(a)[:4], 2):
        fc = Configuration(c.state, tuple(map(f, c.registers)))
        fd = Configuration(d.state, tuple(map(f, d.registers)))
        assert bool(config_equiv(a, c, a, d)) == bool(config_equiv(a, fc, a, fd))
        assert bool(config_almost_equiv(a, c, a, d)) == bool(config_almost_equiv(a, fc, a, fd))


@given(automata())
@settings(max_examples=40)
def test_successors_of_almost_equivalent_pairs(a):
    a = completed(a)
    for c, d in itertools.combinations(_configs(a)[:5], 2):
        if not config_almost_equiv(a, c, a, d, witness=False):
            continue
        for x in candidate_values(c.registers + d.registers, a.domain):
            assert config_almost_equiv(a, step(a, c, x), a, step(a, d, x), witness=False)


@given(automata(), automata())
def test_equiv_matches_oracle(a, b):
    if a.domain is not b.domain:
        return
    v = automata_equiv(a, b)
    cap = 5
    if v:
        assert not brute_equiv_diff(a, b, cap).disagreements
        return
    w = v.witness.word
    # the witness is a shortest disagreement
    assert accepts(a, w) != accepts(b, w)
    shorter = brute_equiv_diff(a, b, min(len(w) - 1, cap)) if w else None
    assert shorter is None or not shorter.disagreements
    if len(w) <= cap:
        assert type_of(w, a.domain) in brute_equiv_diff(a, b, len(w)).types


@given(automata(max_states=3), automata(max_states=3))
@settings(max_examples=25)
def test_almost_equiv_matches_oracle(a, b):
    if a.domain is not b.domain:
        return
    v = automata_almost_equiv(a, b)
    n = v.nodes
    cls = classify_disagreements(completed(a), completed(b), n, 2 * n + 2)
    assert v.answer == (cls is Classification.BOUNDED_ONLY)
    if not v:
        assert len(v.witness.word) > n
