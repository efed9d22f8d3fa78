"""Reference automata used by the tests, scripts and data files."""

from __future__ import annotations

from .automaton import Automaton, State, Transition, complete, validate
from .textformat import parse_automaton
from .wordtypes import Domain, WordType

# Three letters a1 a2 a3 with a1 < a3 < a2.
MID = """\
dra mid
domain dense
k 2
state q0 initial
state q1
state q2
state q3 accepting
trans q0 0 drop {} -> q1
trans q1 0.1 drop {} -> q2
trans q2 0.2.1 drop {1,2,3} -> q3
"""

# Either every later letter lies strictly between a1 < a2, or exactly three
# letters with a2 < a3 < a1 (through p).
MID_PLUS = """\
dra mid_plus
domain dense
k 2
state init initial
state r
state s accepting
state p
state t accepting
trans init 0 drop {} -> r
trans r 0.1 drop {} -> s
trans r 1.0 drop {} -> p
trans s 0.2.1 drop {3} -> s
trans p 2.0.1 drop {1,2,3} -> t
"""

# Words of even length, plus the constant words of length 5.  The counting
# states c1..c5 remember the first letter while all letters are equal.
EVEN5 = """\
dra even5
domain dense
k 1
state q0 initial accepting
state c1
state c2 accepting
state c3
state c4 accepting
state c5 accepting
state x2 accepting
state x3
state x4 accepting
state x5
state x6 accepting
state even accepting
state odd
trans q0 0 drop {} -> c1
trans c1 0.0 drop {1} -> c2
trans c2 0.0 drop {1} -> c3
trans c3 0.0 drop {1} -> c4
trans c4 0.0 drop {1} -> c5
trans c5 0.0 drop {1,2} -> x6
trans c1 0.1 drop {1,2} -> x2
trans c1 1.0 drop {1,2} -> x2
trans c2 0.1 drop {1,2} -> x3
trans c2 1.0 drop {1,2} -> x3
trans c3 0.1 drop {1,2} -> x4
trans c3 1.0 drop {1,2} -> x4
trans c4 0.1 drop {1,2} -> x5
trans c4 1.0 drop {1,2} -> x5
trans c5 0.1 drop {1,2} -> x6
trans c5 1.0 drop {1,2} -> x6
trans x2 0 drop {1} -> x3
trans x3 0 drop {1} -> x4
trans x4 0 drop {1} -> x5
trans x5 0 drop {1} -> x6
trans x6 0 drop {1} -> odd
trans odd 0 drop {1} -> even
trans even 0 drop {1} -> odd
"""

# Target of hyper-minimizing EVEN5: even length, no registers.
PARITY = """\
dra parity
domain dense
k 0
state q0 initial accepting
state q1
trans q0 0 drop {1} -> q1
trans q1 0 drop {1} -> q0
"""

EMPTY = """\
dra empty
domain dense
k 0
state q0 initial
"""


def mid() -> Automaton:
    return validate(parse_automaton(MID))


def mid_plus() -> Automaton:
    return validate(parse_automaton(MID_PLUS))


def even5() -> Automaton:
    return validate(parse_automaton(EVEN5))


def parity() -> Automaton:
    return validate(parse_automaton(PARITY))


def empty(domain: Domain = Domain.DENSE) -> Automaton:
    return validate(parse_automaton(EMPTY.replace("dense", domain.value)))


def monotone_one_register(n: int) -> Automaton:
    """Strictly monotone words of length n, one register holding the last letter.

    States: q0, s1, inc2..inc_n, dec2..dec_n (2n in total).
    """
    if n < 2:
        raise ValueError("n must be at least 2")
    d = Domain.DENSE
    t = lambda *c: WordType(d, c)
    states = [State("q0"), State("s1")]
    trans = [Transition("q0", t(0), frozenset(), "s1"),
             Transition("s1", t(0, 1), frozenset({1}), "inc2"),
             Transition("s1", t(1, 0), frozenset({1}), "dec2")]
    for i in range(2, n + 1):
        states += [State(f"inc{i}", i == n), State(f"dec{i}", i == n)]
        if i < n:
            trans += [Transition(f"inc{i}", t(0, 1), frozenset({1}), f"inc{i + 1}"),
                      Transition(f"dec{i}", t(1, 0), frozenset({1}), f"dec{i + 1}")]
    return validate(Automaton(f"monotone{n}_1reg", d, 1, tuple(states), "q0", tuple(trans)))


def monotone_many_registers(n: int) -> Automaton:
    """Same language with n-1 registers storing every letter but the last.

    States l0..l_n count the length, plus a rejecting sink (n+2 in total).
    A state holds either an increasing or a decreasing register word, so the
    automaton is not well-typed.
    """
    if n < 3:
        raise ValueError("n must be at least 3")
    d = Domain.DENSE
    t = lambda *c: WordType(d, tuple(c))
    k = n - 1
    states = [State(f"l{i}", i == n) for i in range(n + 1)] + [State("sink", False, t(), 0)]
    trans = [Transition("l0", t(0), frozenset(), "l1"),
             Transition("l1", t(0, 1), frozenset(), "l2"),
             Transition("l1", t(1, 0), frozenset(), "l2")]
    for i in range(2, n):
        inc = t(*range(i + 1))
        dec = t(*range(i, -1, -1))
        drop = frozenset(range(1, i + 2)) if i == k else frozenset()
        trans += [Transition(f"l{i}", inc, drop, f"l{i + 1}"),
                  Transition(f"l{i}", dec, drop, f"l{i + 1}")]
    a = Automaton(f"monotone{n}_{k}reg", d, k, tuple(states), "l0", tuple(trans), "sink")
    return complete(validate(a, well_typed=False))


ALL = {
    "mid": mid,
    "mid_plus": mid_plus,
    "even5": even5,
    "parity": parity,
    "empty": empty,
    "monotone4_1reg": lambda: monotone_one_register(4),
    "monotone4_3reg": lambda: monotone_many_registers(4),
}
