"""Deterministic register automata: data model, validation and run semantics.

A transition ``(src, guard, drop, dst)`` fires on input x from configuration
``(src, regs)`` when ``type_of(regs + (x,)) == guard``; the new registers are
``regs + (x,)`` with the 1-based positions in ``drop`` removed.
"""

from __future__ import annotations

import dataclasses
import enum
from collections import defaultdict, deque
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Optional, Sequence

from .graphs import cyclic_nodes, reachable, reverse
from .wordtypes import (
    Domain,
    WordType,
    empty_type,
    extend,
    extensions,
    project,
    restrict,
    type_of,
    value_for_choice,
)


@dataclass(frozen=True)
class State:
    id: str
    accepting: bool = False
    regtype: Optional[WordType] = None
    arity: Optional[int] = None


@dataclass(frozen=True)
class Transition:
    src: str
    guard: WordType
    drop: frozenset
    dst: str

    @property
    def kept(self) -> list:
        """1-based guard positions that survive into the target registers."""
        return [j for j in range(1, len(self.guard) + 1) if j not in self.drop]

    def target_type(self) -> WordType:
        return restrict(self.guard, self.kept)

    def sort_key(self):
        return (self.src, len(self.guard), self.guard.codes)


@dataclass(frozen=True)
class Automaton:
    name: str
    domain: Domain
    k: int
    states: tuple
    initial: str
    transitions: tuple
    sink: Optional[str] = None

    @cached_property
    def _by_id(self) -> dict:
        return {s.id: s for s in self.states}

    @cached_property
    def _table(self) -> dict:
        return {(t.src, t.guard): t for t in self.transitions}

    @cached_property
    def successors(self) -> dict:
        succ = {s.id: set() for s in self.states}
        for t in self.transitions:
            succ[t.src].add(t.dst)
        return succ

    def state(self, sid: str) -> State:
        return self._by_id[sid]

    def __contains__(self, sid: str) -> bool:
        return sid in self._by_id

    def lookup(self, sid: str, guard: WordType) -> Optional[Transition]:
        return self._table.get((sid, guard))

    def accepting(self, sid: str) -> bool:
        return self._by_id[sid].accepting

    def regtype(self, sid: str) -> WordType:
        rt = self._by_id[sid].regtype
        if rt is None:
            raise NotWellTyped(f"state {sid} has no unique register type")
        return rt

    def arity(self, sid: str) -> int:
        s = self._by_id[sid]
        if s.arity is not None:
            return s.arity
        if s.regtype is not None:
            return len(s.regtype)
        raise ValueError(f"arity of {sid} unknown; validate the automaton first")

    def outgoing(self, sid: str) -> list:
        return [t for t in self.transitions if t.src == sid]

    @property
    def ids(self) -> list:
        return [s.id for s in self.states]

    @property
    def n(self) -> int:
        return len(self.states)

    @property
    def max_arity(self) -> int:
        return max((self.arity(s.id) for s in self.states), default=0)

    @property
    def well_typed(self) -> bool:
        return all(s.regtype is not None for s in self.states)

    def replace(self, **changes) -> "Automaton":
        return dataclasses.replace(self, **changes)


@dataclass(frozen=True)
class Configuration:
    state: str
    registers: tuple = ()

    def __str__(self) -> str:
        regs = "·".join(str(v) for v in self.registers) or "ε"
        return f"({self.state}, {regs})"


@dataclass
class RunResult:
    accepted: bool
    trace: list = field(default_factory=list)
    stuck_at: Optional[int] = None


# -- diagnostics ---------------------------------------------------------------

class NotWellTyped(ValueError):
    pass


@dataclass(frozen=True)
class Diagnostic:
    kind: str
    message: str

    def __str__(self) -> str:
        return f"{self.kind}: {self.message}"


class ValidationError(ValueError):
    def __init__(self, diagnostics: Sequence[Diagnostic]):
        self.diagnostics = list(diagnostics)
        super().__init__("; ".join(map(str, self.diagnostics)))

    def kinds(self) -> set:
        return {d.kind for d in self.diagnostics}


WELL_TYPEDNESS = "WellTypednessConflict"
NONDETERMINISM = "NondeterministicPair"
DUPLICATION = "DuplicationRuleViolation"
OVERFLOW = "OverflowRuleViolation"
UNREACHABLE = "UnreachableUntypedState"
GUARD_SHAPE = "GuardShapeError"


def _propagate(a: Automaton) -> dict:
    """Register types that can occur at each state, seeded at the initial
    state (empty registers) and at states with a declared type."""
    out = defaultdict(list)
    for t in a.transitions:
        out[t.src].append(t)
    types = {s.id: set() for s in a.states}
    todo = deque()

    def add(sid, rt):
        if rt not in types[sid]:
            types[sid].add(rt)
            todo.append((sid, rt))

    add(a.initial, empty_type(a.domain))
    for s in a.states:
        if s.regtype is not None:
            add(s.id, s.regtype)
    while todo:
        sid, rt = todo.popleft()
        n = len(rt)
        for t in out[sid]:
            if len(t.guard) != n + 1 or project(t.guard, range(n)) != rt:
                continue
            if any(not 1 <= j <= n + 1 for j in t.drop):
                continue
            add(t.dst, t.target_type())
    return types


def register_types(a: Automaton) -> dict:
    """State id -> set of register types reachable there."""
    if a.well_typed:
        return {s.id: {s.regtype} for s in a.states}
    return _propagate(a)


def validate(a: Automaton, well_typed: bool = True) -> Automaton:
    """Infer register types and check the structural rules of a DRA.

    Returns a copy whose states carry their inferred arity (and register type
    when unique).  With ``well_typed=False`` states may carry several register
    types of one length.  Raises ValidationError listing every problem found.
    """
    diags: list = []
    ids = {s.id for s in a.states}
    for t in a.transitions:
        for sid in (t.src, t.dst):
            if sid not in ids:
                diags.append(Diagnostic(GUARD_SHAPE, f"transition refers to unknown state {sid}"))
    if a.initial not in ids:
        diags.append(Diagnostic(GUARD_SHAPE, f"unknown initial state {a.initial}"))
    if diags:
        raise ValidationError(diags)

    init = a.state(a.initial)
    if init.regtype is not None and len(init.regtype) != 0:
        diags.append(Diagnostic(WELL_TYPEDNESS, f"initial state {a.initial} declared with non-empty registers"))

    types = _propagate(a)
    arity: dict = {}
    for s in a.states:
        ts = sorted(types[s.id], key=lambda t: (len(t), t.codes))
        if not ts:
            diags.append(Diagnostic(UNREACHABLE, f"state {s.id} is unreachable and has no declared register type"))
            continue
        lengths = {len(t) for t in ts}
        if len(lengths) > 1 or (well_typed and len(ts) > 1):
            diags.append(Diagnostic(
                WELL_TYPEDNESS, f"state {s.id} receives register types {ts[0]} and {ts[1]}"))
        arity[s.id] = len(ts[0])
        if s.regtype is not None and types[s.id] != {s.regtype}:
            other = next(t for t in ts if t != s.regtype)
            diags.append(Diagnostic(
                WELL_TYPEDNESS, f"state {s.id} declared {s.regtype} but receives {other}"))

    seen: dict = {}
    deduped = []
    for t in a.transitions:
        n = len(t.guard)
        if t.src in arity:
            if n != arity[t.src] + 1:
                diags.append(Diagnostic(
                    GUARD_SHAPE, f"guard {t.guard} from {t.src} has length {n}, expected {arity[t.src] + 1}"))
                continue
            if project(t.guard, range(n - 1)) not in types[t.src]:
                diags.append(Diagnostic(
                    GUARD_SHAPE, f"guard {t.guard} from {t.src} does not extend its register type"))
        if any(not 1 <= j <= n for j in t.drop):
            diags.append(Diagnostic(GUARD_SHAPE, f"drop set {sorted(t.drop)} out of range for guard {t.guard}"))
            continue
        last = t.guard.codes[-1]
        ties = {j + 1 for j in range(n - 1) if t.guard.codes[j] == last}
        if not ties <= t.drop:
            diags.append(Diagnostic(
                DUPLICATION, f"{t.src} --{t.guard}--> {t.dst} keeps a register equal to the input"))
        if t.src in arity and (arity[t.src] == a.k and not t.drop or n - len(t.drop) > a.k):
            diags.append(Diagnostic(
                OVERFLOW, f"{t.src} --{t.guard}--> {t.dst} stores more than k={a.k} values"))
        key = (t.src, t.guard)
        if key in seen:
            if (seen[key].drop, seen[key].dst) != (t.drop, t.dst):
                diags.append(Diagnostic(
                    NONDETERMINISM, f"two transitions from {t.src} on guard {t.guard}"))
            continue
        seen[key] = t
        deduped.append(t)

    if diags:
        raise ValidationError(diags)

    states = []
    for s in a.states:
        ts = types[s.id]
        rt = next(iter(ts)) if len(ts) == 1 else None
        states.append(dataclasses.replace(s, regtype=rt, arity=arity[s.id]))
    return a.replace(states=tuple(states), transitions=tuple(deduped))


# -- run semantics ---------------------------------------------------------------

def step(a: Automaton, c: Configuration, x) -> Optional[Configuration]:
    """Successor configuration on input x, or None when no transition applies."""
    x = Fraction(x)
    full = c.registers + (x,)
    t = a.lookup(c.state, type_of(full, a.domain))
    if t is None:
        return None
    return Configuration(t.dst, tuple(v for j, v in enumerate(full, 1) if j not in t.drop))


def initial_configuration(a: Automaton) -> Configuration:
    return Configuration(a.initial, ())


def run(a: Automaton, w: Iterable, start: Optional[Configuration] = None) -> RunResult:
    c = start if start is not None else initial_configuration(a)
    trace = [c]
    for i, x in enumerate(w):
        nxt = step(a, c, x)
        if nxt is None:
            return RunResult(False, trace, stuck_at=i)
        c = nxt
        trace.append(c)
    return RunResult(a.accepting(c.state), trace)


def accepts(a: Automaton, w: Iterable, start: Optional[Configuration] = None) -> bool:
    return run(a, w, start).accepted


# -- structural transformations ----------------------------------------------------

def _fresh_id(a: Automaton, base: str) -> str:
    sid, i = base, 0
    while sid in a:
        i += 1
        sid = f"{base}_{i}"
    return sid


def _sink_loop(domain: Domain, sink: str) -> Transition:
    return Transition(sink, WordType(domain, (0,)), frozenset({1}), sink)


def complete(a: Automaton) -> Automaton:
    """Route every missing guard to a non-accepting sink that forgets everything."""
    types = register_types(a)
    sink = a.sink or _fresh_id(a, "sink")
    missing = []
    for s in a.states:
        if s.id == sink:
            continue
        for rt in sorted(types[s.id], key=lambda t: t.codes):
            for ch in extensions(rt):
                g = extend(rt, ch)
                if a.lookup(s.id, g) is None:
                    missing.append(Transition(s.id, g, frozenset(range(1, len(g) + 1)), sink))
    loop = _sink_loop(a.domain, sink)
    if a.sink is not None:
        if a.lookup(sink, loop.guard) is None:
            missing.append(loop)
        if not missing:
            return a
        return a.replace(transitions=a.transitions + tuple(missing))
    if not missing:
        return a
    sink_state = State(sink, False, empty_type(a.domain), 0)
    return a.replace(
        states=a.states + (sink_state,),
        transitions=a.transitions + tuple(missing) + (loop,),
        sink=sink,
    )


def is_complete(a: Automaton) -> bool:
    types = register_types(a)
    return all(
        a.lookup(s.id, extend(rt, ch)) is not None
        for s in a.states
        for rt in types[s.id]
        for ch in extensions(rt)
    )


def restrict_states(a: Automaton, keep: Iterable[str]) -> Automaton:
    keep = set(keep) | {a.initial}
    states = tuple(s for s in a.states if s.id in keep)
    trans = tuple(t for t in a.transitions if t.src in keep and t.dst in keep)
    sink = a.sink if a.sink in keep else None
    return a.replace(states=states, transitions=trans, sink=sink)


def trim(a: Automaton) -> Automaton:
    """Drop states that are unreachable or cannot reach an accepting state.

    The initial state and the sink always stay.
    """
    fwd = reachable(a.successors, [a.initial])
    acc = [s.id for s in a.states if s.accepting]
    bwd = reachable(reverse(a.successors), acc)
    keep = fwd & bwd
    if a.sink is not None:
        keep.add(a.sink)
    return restrict_states(a, keep)


def strip_sink(a: Automaton) -> Automaton:
    """Remove the sink and every transition into it (language unchanged)."""
    if a.sink is None:
        return a
    return restrict_states(a, [s.id for s in a.states if s.id != a.sink])


class StateKind(enum.Enum):
    PREAMBLE = "preamble"
    KERNEL = "kernel"


def classify_states(a: Automaton) -> dict:
    """Preamble iff only finitely many paths lead from the initial state to it."""
    reach = reachable(a.successors, [a.initial])
    cyc = cyclic_nodes(a.successors, reach)
    kernel = reachable(a.successors, cyc)
    return {s.id: StateKind.KERNEL if s.id in kernel else StateKind.PREAMBLE for s in a.states}


def finite_future_states(a: Automaton) -> set:
    """States from which only finitely many paths reach an accepting state."""
    succ = a.successors
    acc = [s.id for s in a.states if s.accepting]
    coreach = reachable(reverse(succ), acc)
    useful_cycles = cyclic_nodes(succ, coreach)
    infinite = reachable(reverse(succ), useful_cycles)
    return {s.id for s in a.states if s.id not in infinite}


def remove_finite_future_preambles(a: Automaton) -> Automaton:
    """Delete preamble states that accept only finitely many continuations.

    Only finitely many word types pass through such a state, so the result is
    almost-equivalent to the input.  A removed initial state is replaced by a
    bare rejecting one.
    """
    kinds = classify_states(a)
    doomed = {
        sid for sid in finite_future_states(a)
        if kinds[sid] is StateKind.PREAMBLE and sid != a.sink
    }
    if not doomed:
        return trim(a)
    if a.initial in doomed:
        init = a.state(a.initial)
        bare = dataclasses.replace(init, accepting=False)
        states = tuple(bare if s.id == a.initial else s for s in a.states if s.id not in doomed - {a.initial})
        trans = tuple(t for t in a.transitions if t.src != a.initial and t.src not in doomed and t.dst not in doomed)
        return trim(a.replace(states=states, transitions=trans, sink=a.sink))
    return trim(restrict_states(a, [s.id for s in a.states if s.id not in doomed]))


def shortest_words(a: Automaton) -> dict:
    """State id -> (word, configuration) reached by a shortest path from the
    initial state, realizing each guard with concrete values."""
    start = initial_configuration(a)
    found = {a.initial: ((), start)}
    todo = deque([a.initial])
    while todo:
        sid = todo.popleft()
        w, c = found[sid]
        for t in sorted(a.outgoing(sid), key=Transition.sort_key):
            if t.dst in found:
                continue
            x = _value_for_guard(a, c.registers, t.guard)
            nxt = step(a, c, x)
            found[t.dst] = (w + (x,), nxt)
            todo.append(t.dst)
    return found


def _value_for_guard(a, regs, guard):
    rt = type_of(regs, a.domain)
    for ch in extensions(rt):
        if extend(rt, ch) == guard:
            return value_for_choice(regs, a.domain, ch)
    raise ValueError(f"guard {guard} does not extend register type {rt}")
