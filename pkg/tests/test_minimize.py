import pytest
from hypothesis import given, settings

from hyperdra import fixtures
from hyperdra.automaton import StateKind, ValidationError, classify_states, validate
from hyperdra.equivalence import automata_almost_equiv, automata_equiv, state_equiv
from hyperdra.memorability import len_squared, memorable_set
from hyperdra.minimize import (
    Justification,
    MergePlan,
    RegisterTypeMismatch,
    Report,
    SelfMerge,
    WellTypednessConflict,
    drop_register_positions,
    drop_registers,
    guarded_drops,
    hyper_data_minimize,
    hyper_minimize,
    merge,
    merge_fixpoint_violations,
    minimize,
)
from hyperdra.oracle import brute_equiv_diff
from hyperdra.textformat import parse_automaton
from hyperdra.wordtypes import parse_type

from .strategies import automata

THREE = """\
dra three
domain dense
k 3
state q0 initial
state q1
state q2
state q3
state lo accepting
state hi
trans q0 0 drop {} -> q1
trans q1 0.1 drop {} -> q2
trans q2 0.1.2 drop {} -> q3
trans q3 0.2.3.1 drop {1,2,3,4} -> lo
trans q3 0.1.3.2 drop {1,2,3,4} -> hi
"""


class TestMerge:
    def test_self_merge(self, mid):
        with pytest.raises(SelfMerge):
            merge(mid, MergePlan("q1", "q1"))

    def test_register_types_must_match(self, mid):
        with pytest.raises(RegisterTypeMismatch):
            merge(mid, MergePlan("q1", "q2"))

    def test_preamble_justification_checked(self, parity):
        # both parity states lie on a cycle
        with pytest.raises(ValueError, match="not a preamble"):
            merge(parity, MergePlan("q1", "q0", Justification.ALMOST_EQ_PREAMBLE))

    def test_redirects_and_deletes(self, parity):
        out = merge(parity, MergePlan("q1", "q0"))
        assert out.ids == ["q0"]
        assert [(t.src, t.dst) for t in out.transitions] == [("q0", "q0")]

    def test_initial_moves(self, parity):
        out = merge(parity, MergePlan("q0", "q1"))
        assert out.initial == "q1"


class TestDropRegisters:
    def test_coinciding_guards_keep_least_code(self):
        a = validate(parse_automaton(THREE))
        assert str(a.regtype("q3")) == "0.1.2"
        out = drop_register_positions(a, "q3", {2})
        assert str(out.regtype("q3")) == "0.1"
        [t] = out.outgoing("q3")
        assert t.guard == parse_type("0.2.1", a.domain) and t.dst == "hi"
        # the incoming transition no longer stores the middle value
        [inc] = out.outgoing("q2")
        assert inc.drop == {2}

    def test_empty_drop_is_identity(self, mid):
        assert drop_registers(mid, {}) == mid
        assert drop_registers(mid, {"q2": set()}) == mid

    def test_out_of_range(self, mid):
        with pytest.raises(ValueError):
            drop_register_positions(mid, "q1", {2})

    def test_forwarding_conflict(self, mid):
        # q2 keeps the value q1 would forget
        with pytest.raises(WellTypednessConflict):
            drop_register_positions(mid, "q1", {1})

    def test_guarded_drops_cancel_with_diagnostic(self, mid):
        r = Report()
        assert guarded_drops(mid, {"q1": {1}}, r) == {"q1": set()}
        assert r.diagnostics and "q1" in r.diagnostics[0]

    def test_consistent_chain(self, mid):
        out = drop_registers(mid, {"q1": {1}, "q2": {1}})
        assert out.arity("q1") == 0 and out.arity("q2") == 1


class TestMinimize:
    def test_mid_is_minimal(self, mid):
        assert minimize(mid) == mid

    def test_even5(self, even5):
        m = minimize(even5)
        assert m.ids == ["q0", "c1", "c2", "c3", "c4", "c5", "even", "odd"]
        assert m.arity("c5") == 0
        assert automata_equiv(m, even5)

    def test_monotone_merges_final_states(self):
        a = fixtures.monotone_one_register(4)
        m = minimize(a)
        assert m.n == 7 and automata_equiv(a, m)

    def test_untyped_input_refused(self):
        with pytest.raises(ValidationError):
            minimize(fixtures.monotone_many_registers(4))

    def test_report(self, even5):
        r = Report()
        minimize(even5, r)
        assert {s["step"] for s in r.steps} == {"drop", "merge"}
        assert sum(s["step"] == "merge" for s in r.steps) == 5

    @given(automata())
    @settings(max_examples=40)
    def test_idempotent_and_equivalent(self, a):
        m = minimize(a)
        assert minimize(m) == m
        assert automata_equiv(a, m)
        assert m.n <= a.n + 1 and m.max_arity <= a.max_arity

    @given(automata())
    @settings(max_examples=30)
    def test_no_equivalent_pair_left(self, a):
        m = minimize(a)
        for i, p in enumerate(m.ids):
            for q in m.ids[i + 1:]:
                if m.regtype(p) == m.regtype(q):
                    assert not state_equiv(m, p, q)

    @given(automata())
    @settings(max_examples=30)
    def test_registers_all_memorable(self, a):
        m = minimize(a)
        for s in m.ids:
            if s != m.sink:
                assert memorable_set(m, s, 0) == set(range(1, m.arity(s) + 1))


class TestHyperDataMinimize:
    def test_even5_counting_registers_dropped(self, even5):
        m = minimize(even5)
        r = Report()
        h = hyper_data_minimize(m, len_squared(m), r)
        assert [s["state"] for s in r.steps] == ["c1", "c2", "c3", "c4"]
        assert h.max_arity == 0
        assert automata_almost_equiv(h, even5)

    def test_short_threshold_keeps_registers(self, even5):
        m = minimize(even5)
        h = hyper_data_minimize(m, 3)
        # c1 and c2 still matter for continuations of length 3
        assert h.arity("c1") == 1 and h.arity("c2") == 1 and h.arity("c3") == 0

    def test_kernel_registers_untouched(self, mid_plus):
        h = hyper_data_minimize(mid_plus)
        assert h.arity("s") == 2


class TestHyperMinimize:
    def test_even5_two_states_no_registers(self, even5, parity):
        h = hyper_minimize(even5)
        assert h.n == 2 and h.k == 0 and h.max_arity == 0
        assert automata_equiv(h, parity)
        diff = brute_equiv_diff(even5, h, 6)
        assert [str(t) for t in diff.types] == ["0.0.0.0.0"]

    def test_mid_plus_drops_detour(self, mid_plus):
        r = Report()
        h = hyper_minimize(mid_plus, report=r)
        assert h.ids == ["init", "r", "s"]
        assert r.steps[0] == {"step": "remove", "states": ["p", "t"],
                              "reason": "finitely many accepted continuations"}
        assert r.ell == 3 * 3 * 24

    def test_parsed_basis(self, even5):
        r = Report()
        h = hyper_minimize(even5, basis="parsed", report=r)
        assert r.ell == 13 * 13 * 2 and r.basis == "parsed"
        assert h.n == 2

    def test_bad_basis(self, even5):
        with pytest.raises(ValueError):
            hyper_minimize(even5, basis="other")

    def test_report_serializes(self, even5):
        r = Report()
        hyper_minimize(even5, report=r)
        assert '"ell": 128' in r.to_json()
        assert r.to_text().startswith("ell = 128")

    def test_no_merge_into_a_state_that_reaches_the_source(self):
        # q0 -> q1 -> q2 -> q3 (accepting loop): length at least 3.  Merging q1
        # into q0 would close a loop on q0 and reject everything.
        a = validate(parse_automaton(
            "dra chain\ndomain equality\nk 0\nstate q0 initial\nstate q1\nstate q2\nstate q3 accepting\n"
            "trans q0 0 drop {1} -> q1\ntrans q1 0 drop {1} -> q2\n"
            "trans q2 0 drop {1} -> q3\ntrans q3 0 drop {1} -> q3\n"))
        h = hyper_minimize(a, self_check=False)
        assert automata_almost_equiv(a, h)
        assert h.n == 1 and h.accepting(h.initial)

    def test_already_hyper_minimal(self, parity):
        assert hyper_minimize(parity) == parity

    @given(automata())
    @settings(max_examples=30)
    def test_properties(self, a):
        r = Report()
        h = hyper_minimize(a, report=r)
        assert automata_almost_equiv(a, h)
        assert merge_fixpoint_violations(h) == []
        assert h.n <= minimize(a).n and h.max_arity <= a.max_arity
        kinds = classify_states(h)
        for s in h.ids:
            if kinds[s] is StateKind.PREAMBLE and s != h.sink:
                assert memorable_set(h, s, r.ell) == set(range(1, h.arity(s) + 1))

    @given(automata())
    @settings(max_examples=20)
    def test_idempotent_size(self, a):
        h = hyper_minimize(a)
        again = hyper_minimize(h)
        assert again.n == h.n and again.max_arity == h.max_arity
