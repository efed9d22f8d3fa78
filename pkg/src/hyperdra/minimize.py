"""Merging, register dropping, minimization and hyper-minimization."""

from __future__ import annotations

import dataclasses
import enum
import itertools
import json
from dataclasses import dataclass, field
from typing import Optional

from .automaton import (
    Automaton,
    Configuration,
    StateKind,
    Transition,
    ValidationError,
    classify_states,
    complete,
    remove_finite_future_preambles,
    shortest_words,
    strip_sink,
    trim,
    validate,
)
from .equivalence import (
    automata_almost_equiv,
    config_almost_equiv,
    config_equiv,
    state_almost_equiv,
    state_equiv,
)
from .graphs import reachable
from .memorability import len_squared, memorable_set
from .wordtypes import realize, restrict


class RegisterTypeMismatch(ValueError):
    pass


class SelfMerge(ValueError):
    pass


class WellTypednessConflict(ValueError):
    pass


class Justification(enum.Enum):
    ALMOST_EQ_PREAMBLE = "almost-equivalent preamble"
    EXACT = "equivalent"


@dataclass(frozen=True)
class MergePlan:
    source: str
    target: str
    justification: Justification = Justification.EXACT


@dataclass
class Report:
    """Step log of a pipeline run."""

    steps: list = field(default_factory=list)
    diagnostics: list = field(default_factory=list)
    ell: Optional[int] = None
    basis: Optional[str] = None

    def log(self, **entry) -> None:
        self.steps.append(entry)

    def warn(self, message: str) -> None:
        self.diagnostics.append(message)

    def to_dict(self) -> dict:
        return {"ell": self.ell, "basis": self.basis, "steps": self.steps, "diagnostics": self.diagnostics}

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)

    def to_text(self) -> str:
        lines = []
        if self.ell is not None:
            lines.append(f"ell = {self.ell} (basis: {self.basis})")
        for s in self.steps:
            lines.append(" ".join(f"{k}={v}" for k, v in s.items()))
        for d in self.diagnostics:
            lines.append(f"diagnostic: {d}")
        return "\n".join(lines) + "\n"


# -- merging -----------------------------------------------------------------------

def merge(a: Automaton, plan: MergePlan) -> Automaton:
    """Redirect every transition into ``plan.source`` to ``plan.target`` and
    delete the source."""
    p, q = plan.source, plan.target
    if p == q:
        raise SelfMerge(f"cannot merge {p} into itself")
    if a.regtype(p) != a.regtype(q):
        raise RegisterTypeMismatch(f"{p} has registers {a.regtype(p)} but {q} has {a.regtype(q)}")
    if plan.justification is Justification.ALMOST_EQ_PREAMBLE and classify_states(a)[p] is not StateKind.PREAMBLE:
        raise ValueError(f"{p} is not a preamble state")
    trans = tuple(
        dataclasses.replace(t, dst=q) if t.dst == p else t
        for t in a.transitions if t.src != p
    )
    states = tuple(s for s in a.states if s.id != p)
    initial = q if a.initial == p else a.initial
    sink = a.sink if a.sink != p else None
    return trim(a.replace(states=states, transitions=trans, initial=initial, sink=sink))


# -- register dropping ---------------------------------------------------------------

def _forwarding_conflicts(a: Automaton, drops: dict) -> list:
    """(state, position, transition) where a dropped register still flows
    into a register the successor keeps."""
    out = []
    for t in a.transitions:
        ps = drops.get(t.src, set())
        if not ps:
            continue
        pd = drops.get(t.dst, set())
        for j, g in enumerate(t.kept, 1):
            if g in ps and j not in pd:
                out.append((t.src, g, t))
    return out


def drop_registers(a: Automaton, drops: dict) -> Automaton:
    """Forget the given 1-based register positions at several states at once.

    Incoming transitions stop storing the forgotten values; outgoing guards
    are restricted to the remaining registers.  Outgoing transitions whose
    restricted guards coincide are resolved by keeping the one with the
    least original guard code.
    """
    drops = {s: set(ps) for s, ps in drops.items() if ps}
    if not drops:
        return a
    for s, ps in drops.items():
        if not ps <= set(range(1, a.arity(s) + 1)):
            raise ValueError(f"positions {sorted(ps)} out of range for {s}")
    conflicts = _forwarding_conflicts(a, drops)
    if conflicts:
        s, g, t = conflicts[0]
        raise WellTypednessConflict(
            f"register {g} of {s} is forgotten but {t.dst} keeps it via guard {t.guard}")

    best: dict = {}
    for t in a.transitions:
        ps = drops.get(t.src, set())
        pd = drops.get(t.dst, set())
        drop = set(t.drop) | {t.kept[j - 1] for j in pd}
        n = len(t.guard)
        remain = [i for i in range(1, n + 1) if i not in ps]
        renum = {old: new for new, old in enumerate(remain, 1)}
        guard = restrict(t.guard, remain)
        nt = Transition(t.src, guard, frozenset(renum[i] for i in drop if i in renum), t.dst)
        key = (t.src, guard)
        if key not in best or t.guard.codes < best[key][0]:
            best[key] = (t.guard.codes, nt)
    order = {}
    for t in a.transitions:
        ps = drops.get(t.src, set())
        key = (t.src, restrict(t.guard, [i for i in range(1, len(t.guard) + 1) if i not in ps]))
        order.setdefault(key, len(order))
    trans = tuple(best[key][1] for key in sorted(order, key=order.get))

    states = []
    for s in a.states:
        ps = drops.get(s.id, set())
        if ps:
            rt = restrict(a.regtype(s.id), [i for i in range(1, a.arity(s.id) + 1) if i not in ps])
            s = dataclasses.replace(s, regtype=rt, arity=len(rt))
        states.append(s)
    out = a.replace(states=tuple(states), transitions=trans)
    try:
        return validate(out)
    except ValidationError as e:
        raise WellTypednessConflict(str(e)) from None


def drop_register_positions(a: Automaton, p: str, positions) -> Automaton:
    return drop_registers(a, {p: set(positions)})


def guarded_drops(a: Automaton, drops: dict, report: Optional[Report] = None) -> dict:
    """Cancel drops that would feed a register a successor keeps.

    Runs to a fixpoint since a cancelled drop can create a new conflict
    upstream.  Each cancellation is recorded as a diagnostic.
    """
    drops = {s: set(ps) for s, ps in drops.items() if ps}
    while True:
        conflicts = _forwarding_conflicts(a, drops)
        if not conflicts:
            return drops
        for s, g, t in conflicts:
            if g in drops.get(s, set()):
                drops[s].discard(g)
                if report is not None:
                    report.warn(f"kept register {g} of {s}: forwarded into {t.dst} which keeps it")


def tighten(a: Automaton) -> Automaton:
    """Lower k to the largest arity actually used."""
    return a.replace(k=a.max_arity)


# -- minimization --------------------------------------------------------------------

def _identity_redirect_ok(relation, a: Automaton, p: str, q: str) -> bool:
    u = realize(a.regtype(p))
    return bool(relation(a, Configuration(p, u), a, Configuration(q, u), witness=False))


def exact_mergeable(a: Automaton, p: str, q: str) -> bool:
    return (a.regtype(p) == a.regtype(q) and state_equiv(a, p, q)
            and _identity_redirect_ok(config_equiv, a, p, q))


def almost_mergeable(a: Automaton, p: str, q: str) -> bool:
    return (a.regtype(p) == a.regtype(q) and state_almost_equiv(a, p, q)
            and _identity_redirect_ok(config_almost_equiv, a, p, q))


def minimize(a: Automaton, report: Optional[Report] = None) -> Automaton:
    """Drop registers that never matter and merge equivalent states, to a fixpoint."""
    a = complete(trim(validate(a)))
    while True:
        changed = False
        drops = {}
        for s in a.states:
            if s.id == a.sink or a.arity(s.id) == 0:
                continue
            useless = set(range(1, a.arity(s.id) + 1)) - memorable_set(a, s.id, 0)
            if useless:
                drops[s.id] = useless
        drops = guarded_drops(a, drops, report=report)
        if drops:
            a = drop_registers(a, drops)
            for s, ps in sorted(drops.items()):
                if report is not None:
                    report.log(step="drop", state=s, positions=sorted(ps), reason="not memorable")
            changed = True

        ids = sorted(s.id for s in a.states if s.id != a.sink)
        for p, q in itertools.combinations(ids, 2):
            if p in a and q in a and exact_mergeable(a, q, p):
                a = complete(merge(a, MergePlan(q, p, Justification.EXACT)))
                if report is not None:
                    report.log(step="merge", source=q, target=p, reason=Justification.EXACT.value)
                changed = True
        if not changed:
            break
    return tighten(validate(trim(strip_sink(a))))


def hyper_data_minimize(a: Automaton, ell: Optional[int] = None, report: Optional[Report] = None) -> Automaton:
    """Forget, at every preamble state, the registers whose value only
    matters for continuations shorter than ``ell``."""
    a = complete(validate(a))
    if ell is None:
        ell = len_squared(strip_sink(a))
    kinds = classify_states(a)
    words = shortest_words(a)
    drops = {}
    for s in a.states:
        if s.id == a.sink or kinds[s.id] is not StateKind.PREAMBLE or a.arity(s.id) == 0:
            continue
        if s.id not in words:
            continue
        _, c = words[s.id]
        keep = memorable_set(a, s.id, ell, c.registers)
        useless = set(range(1, a.arity(s.id) + 1)) - keep
        if useless:
            drops[s.id] = useless
    drops = guarded_drops(a, drops, report=report)
    if drops:
        a = drop_registers(a, drops)
        if report is not None:
            for s, ps in sorted(drops.items()):
                report.log(step="drop", state=s, positions=sorted(ps), reason=f"not {ell}-memorable")
    return validate(trim(strip_sink(a)))


def _reaches(a: Automaton, q: str, p: str) -> bool:
    return p in reachable(a.successors, [q])


def _almost_merge_ok(a: Automaton, kinds: dict, p: str, q: str) -> bool:
    """Preamble p may go into q when q cannot reach p: otherwise the redirect
    closes a cycle and infinitely many words change their run."""
    return kinds[p] is StateKind.PREAMBLE and not _reaches(a, q, p) and almost_mergeable(a, p, q)


def _merge_candidate(a: Automaton, kinds: dict, x: str, y: str, kernel_only: bool = False) -> Optional[MergePlan]:
    """Merge plan for the unordered pair {x, y}, or None.

    With ``kernel_only`` an almost-equivalence merge must go into a kernel state.
    """
    if a.regtype(x) != a.regtype(y):
        return None
    kx, ky = kinds[x], kinds[y]
    if kx is StateKind.PREAMBLE and ky is StateKind.KERNEL:
        src, dst = x, y
    elif ky is StateKind.PREAMBLE and kx is StateKind.KERNEL:
        src, dst = y, x
    else:
        src, dst = max(x, y), min(x, y)
    for p, q in ((src, dst), (dst, src)):
        if (not kernel_only or kinds[q] is StateKind.KERNEL) and _almost_merge_ok(a, kinds, p, q):
            return MergePlan(p, q, Justification.ALMOST_EQ_PREAMBLE)
        if exact_mergeable(a, p, q):
            return MergePlan(p, q, Justification.EXACT)
    return None


def merge_fixpoint(a: Automaton, report: Optional[Report] = None) -> Automaton:
    a = complete(a)
    while True:
        kinds = classify_states(a)
        ids = sorted(s.id for s in a.states if s.id != a.sink)
        plan = None
        # merges into the kernel first, then among preamble states
        for kernel_only in (True, False):
            for x, y in itertools.combinations(ids, 2):
                plan = _merge_candidate(a, kinds, x, y, kernel_only)
                if plan is not None:
                    break
            if plan is not None:
                break
        if plan is None:
            return a
        before = set(a.ids)
        a = complete(merge(a, plan))
        if report is not None:
            report.log(step="merge", source=plan.source, target=plan.target, reason=plan.justification.value)
            gone = sorted(before - set(a.ids) - {plan.source})
            if gone:
                report.log(step="trim", states=gone, reason="unreachable after merge")


def hyper_minimize(a: Automaton, basis: str = "minimized", report: Optional[Report] = None,
                   self_check: bool = True) -> Automaton:
    """Smallest almost-equivalent automaton: registers first, then states.

    ``basis`` selects which automaton's size fixes the length threshold for
    register dropping: the minimized one (default) or the input as parsed.
    """
    if basis not in ("minimized", "parsed"):
        raise ValueError("basis must be 'minimized' or 'parsed'")
    original = validate(a)
    pre = remove_finite_future_preambles(trim(original))
    if report is not None:
        removed = sorted(set(original.ids) - set(pre.ids))
        if removed:
            report.log(step="remove", states=removed, reason="finitely many accepted continuations")
    m = minimize(pre, report)
    ell = len_squared(m if basis == "minimized" else original)
    if report is not None:
        report.ell, report.basis = ell, basis
    h = hyper_data_minimize(m, ell, report)
    out = tighten(validate(trim(strip_sink(merge_fixpoint(h, report)))))
    if self_check:
        verdict = automata_almost_equiv(original, out)
        if not verdict:
            raise AssertionError(f"hyper-minimization changed the language beyond finitely many types: {verdict.witness}")
    return out


def merge_fixpoint_violations(a: Automaton) -> list:
    """Pairs that the merge loop would still merge (empty at a fixpoint)."""
    a = complete(a)
    kinds = classify_states(a)
    ids = sorted(s.id for s in a.states if s.id != a.sink)
    out = []
    for x, y in itertools.combinations(ids, 2):
        for p, q in ((x, y), (y, x)):
            if a.regtype(p) != a.regtype(q):
                continue
            if _almost_merge_ok(a, kinds, p, q) or exact_mergeable(a, p, q):
                out.append((p, q))
    return out
