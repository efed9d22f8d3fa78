"""Brute-force ground truth over concrete data words.

Nothing here builds symbolic graphs: word types are enumerated from set
partitions, languages are compared by running both automata on concrete
representative words, and bounded searches move through concrete
configurations (renamed to small canonical values to keep layers finite).
"""

from __future__ import annotations

import enum
import itertools
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator, Optional

from .automaton import (
    Automaton,
    Configuration,
    State,
    Transition,
    initial_configuration,
    run,
    step,
    validate,
)
from .wordtypes import Domain, WordType, extend, extensions, realize, restrict, type_of


# -- word type enumeration ------------------------------------------------------------

def _set_partitions(n: int) -> Iterator[tuple]:
    """Restricted growth strings of length n (first-occurrence block ids)."""
    if n == 0:
        yield ()
        return

    def rec(prefix, m):
        if len(prefix) == n:
            yield tuple(prefix)
            return
        for c in range(m + 1):
            prefix.append(c)
            yield from rec(prefix, max(m, c + 1))
            prefix.pop()

    yield from rec([0], 1)


def enumerate_word_types(domain: Domain, max_len: int) -> Iterator[WordType]:
    """Every word type of length 0..max_len exactly once, shortest first."""
    if max_len < 0:
        raise ValueError("max_len must be non-negative")
    for n in range(max_len + 1):
        for rgs in _set_partitions(n):
            if domain is Domain.EQUALITY:
                yield WordType(domain, rgs)
                continue
            m = max(rgs) + 1 if rgs else 0
            # an ordering of the blocks assigns each block its rank
            for ranks in itertools.permutations(range(m)):
                yield WordType(domain, tuple(ranks[c] for c in rgs))


def count_word_types(domain: Domain, n: int) -> int:
    """Number of word types of length exactly n, by recurrence."""
    # S(n, m): Stirling numbers of the second kind
    S = [[0] * (n + 1) for _ in range(n + 1)]
    S[0][0] = 1
    for i in range(1, n + 1):
        for m in range(1, i + 1):
            S[i][m] = m * S[i - 1][m] + S[i - 1][m - 1]
    if domain is Domain.EQUALITY:
        return sum(S[n])
    fact = 1
    total = 0
    for m in range(n + 1):
        if m:
            fact *= m
        total += S[n][m] * fact
    return total


# -- concrete candidate values -------------------------------------------------------

def candidate_values(values, domain: Domain) -> list:
    """One value for each way a new letter can relate to ``values``."""
    vals = sorted(set(values))
    if not vals:
        return [Fraction(0)]
    out = list(vals)
    out.append(vals[-1] + 1)
    if domain is Domain.DENSE:
        out.append(vals[0] - 1)
        out += [(x + y) / 2 for x, y in zip(vals, vals[1:])]
    return out


def _normalize(regs_a: tuple, regs_b: tuple, domain: Domain, extra: tuple = ()) -> tuple:
    joint = regs_a + regs_b + extra
    canon = realize(type_of(joint, domain))
    i, j = len(regs_a), len(regs_a) + len(regs_b)
    return canon[:i], canon[i:j], canon[j:]


def _advance(a: Automaton, c: Optional[Configuration], x) -> Optional[Configuration]:
    return None if c is None else step(a, c, x)


def _acc(a: Automaton, c: Optional[Configuration]) -> bool:
    return c is not None and a.accepting(c.state)


# -- language difference -------------------------------------------------------------

@dataclass
class DiffReport:
    disagreements: list = field(default_factory=list)  # (WordType, accepted by first)
    max_len: int = 0
    exhausted: bool = True

    @property
    def types(self) -> list:
        return [t for t, _ in self.disagreements]

    def lengths(self) -> set:
        return {len(t) for t, _ in self.disagreements}

    def to_text(self) -> str:
        lines = [f"searched all word types up to length {self.max_len}"
                 + ("" if self.exhausted else " (truncated)"),
                 f"{len(self.disagreements)} disagreement type(s)"]
        for t, in_a in self.disagreements:
            lines.append(f"  {t}  accepted by {'first' if in_a else 'second'}")
        return "\n".join(lines) + "\n"

    def to_dict(self) -> dict:
        return {
            "max_len": self.max_len,
            "exhausted": self.exhausted,
            "disagreements": [{"type": str(t), "length": len(t), "accepted_by_first": in_a}
                              for t, in_a in self.disagreements],
        }


def brute_equiv_diff(A: Automaton, B: Automaton, max_len: int, limit: Optional[int] = None) -> DiffReport:
    """Compare acceptance on one concrete word per word type up to ``max_len``."""
    if A.domain is not B.domain:
        raise ValueError("automata over different domains")
    domain = A.domain
    report = DiffReport(max_len=max_len)
    found = []
    visited = 0

    def dfs(w, ca, cb):
        nonlocal visited
        visited += 1
        if limit is not None and visited > limit:
            report.exhausted = False
            return
        if _acc(A, ca) != _acc(B, cb):
            found.append((w, _acc(A, ca)))
        if len(w) == max_len:
            return
        for x in candidate_values(w, domain):
            dfs(w + (x,), _advance(A, ca, x), _advance(B, cb, x))

    dfs((), initial_configuration(A), initial_configuration(B))
    for w, in_a in sorted(found, key=lambda e: (len(e[0]), type_of(e[0], domain).codes)):
        t = type_of(w, domain)
        # re-check on the canonical realization of the type
        ra, rb = run(A, realize(t)).accepted, run(B, realize(t)).accepted
        if (ra, rb) != (in_a, not in_a):
            raise AssertionError(f"acceptance of type {t} depends on the representative")
        report.disagreements.append((t, in_a))
    return report


def accepted_types(A: Automaton, max_len: int) -> list:
    return [t for t in enumerate_word_types(A.domain, max_len) if run(A, realize(t)).accepted]


# -- bounded classification -------------------------------------------------------------

class Classification(enum.Enum):
    BOUNDED_ONLY = "BoundedOnly"
    RECURRING = "RecurringBeyondThreshold"


def disagreement_lengths(A: Automaton, cA: Configuration, B: Automaton, cB: Configuration,
                         max_len: int) -> list:
    """Lengths d <= max_len at which some continuation of length d is
    accepted from exactly one configuration."""
    domain = A.domain
    ra, rb, _ = _normalize(cA.registers, cB.registers, domain)
    layer = {(cA.state, ra, cB.state, rb)}
    out = []
    for d in range(max_len + 1):
        if any(_acc(A, _conf(sa, xa)) != _acc(B, _conf(sb, xb)) for sa, xa, sb, xb in layer):
            out.append(d)
        if d == max_len:
            break
        nxt = set()
        for sa, xa, sb, xb in layer:
            ca, cb = _conf(sa, xa), _conf(sb, xb)
            for x in candidate_values((xa or ()) + (xb or ()), domain):
                na, nb = _advance(A, ca, x), _advance(B, cb, x)
                ya, yb, _ = _normalize(na.registers if na else (), nb.registers if nb else (), domain)
                nxt.add((na.state if na else None, ya if na else None,
                         nb.state if nb else None, yb if nb else None))
        layer = nxt
    return out


def _conf(state, regs) -> Optional[Configuration]:
    return None if state is None else Configuration(state, regs)


def classify_disagreements(A: Automaton, B: Automaton, threshold: int, max_len: int,
                           cA: Optional[Configuration] = None,
                           cB: Optional[Configuration] = None) -> Classification:
    if threshold >= max_len:
        raise ValueError("threshold must be below max_len")
    cA = cA if cA is not None else initial_configuration(A)
    cB = cB if cB is not None else initial_configuration(B)
    lengths = disagreement_lengths(A, cA, B, cB, max_len)
    if all(d <= threshold for d in lengths):
        return Classification.BOUNDED_ONLY
    return Classification.RECURRING


# -- memorability ---------------------------------------------------------------------

def replacement_candidates(u: tuple, index: int, domain: Domain) -> list:
    """Values b with u ~ u[a/b] for a = u[index-1], one per relative position."""
    a = u[index - 1]
    out = []
    for b in candidate_values(u, domain):
        if b == a:
            continue
        swapped = tuple(b if v == a else v for v in u)
        if type_of(swapped, domain) == type_of(u, domain):
            out.append(b)
    return out


def brute_ell_memorable(A: Automaton, state: str, index: int, ell: int,
                        registers: Optional[tuple] = None, max_len: int = 200) -> bool:
    """Layered search over pairs of runs reading w and w[a/b].

    A letter x different from a must relate to a exactly as it relates to b;
    together with u ~ u[a/b] this is equivalent to the whole-word condition
    u.w ~ (u.w)[a/b].  Layers are kept until one at depth >= ell repeats an
    earlier layer at depth >= ell, after which they cycle.
    """
    domain = A.domain
    u = tuple(registers) if registers is not None else realize(A.regtype(state))
    a = u[index - 1]
    for b in replacement_candidates(u, index, domain):
        r1, r2, (pa, pb) = _normalize(u, u, domain, (a, b))
        layer = frozenset({(state, r1, state, r2, pa, pb)})
        seen: dict = {}
        for d in range(max_len + 1):
            if d >= ell:
                if any(_acc(A, _conf(s1, x1)) != _acc(A, _conf(s2, x2)) for s1, x1, s2, x2, _, _ in layer):
                    return True
                if layer in seen:
                    break
                seen[layer] = d
            nxt = set()
            for s1, x1, s2, x2, pa, pb in layer:
                c1, c2 = _conf(s1, x1), _conf(s2, x2)
                for x in candidate_values((x1 or ()) + (x2 or ()) + (pa, pb), domain):
                    if x == pa:
                        x_second = pb
                    elif type_of((pa, x), domain) == type_of((pb, x), domain):
                        x_second = x
                    else:
                        continue
                    n1, n2 = _advance(A, c1, x), _advance(A, c2, x_second)
                    y1, y2, (qa, qb) = _normalize(n1.registers if n1 else (), n2.registers if n2 else (),
                                                  domain, (pa, pb))
                    nxt.add((n1.state if n1 else None, y1 if n1 else None,
                             n2.state if n2 else None, y2 if n2 else None, qa, qb))
            layer = frozenset(nxt)
        else:
            raise RuntimeError("layer sequence did not become periodic within max_len")
    return False


def brute_memorable_witness_ok(u: tuple, w: tuple, a, b, domain: Domain) -> bool:
    """Literal check of u.w ~ (u.w)[a/b]."""
    uw = u + w
    return type_of(uw, domain) == type_of(tuple(b if v == a else v for v in uw), domain)


# -- random automata ---------------------------------------------------------------------

@dataclass(frozen=True)
class GenParams:
    seed: int = 0
    max_states: int = 4
    max_registers: int = 2
    accepting_probability: float = 0.4
    domain: Domain = Domain.DENSE

    def __post_init__(self):
        if not 0 <= self.max_registers <= 3:
            raise ValueError("max_registers must be between 0 and 3")
        if self.max_states < 1:
            raise ValueError("max_states must be positive")


def random_dra(p: GenParams) -> Automaton:
    """A random complete, deterministic, well-typed automaton."""
    rng = random.Random(p.seed)
    k = p.max_registers
    dom = p.domain
    states = [State("q0", rng.random() < p.accepting_probability, WordType(dom, ()), 0)]
    by_type: dict = {WordType(dom, ()): ["q0"]}
    trans = []
    need_sink = False
    i = 0
    while i < len(states):
        s = states[i]
        i += 1
        rt = s.regtype
        n = len(rt)
        for ch in extensions(rt):
            g = extend(rt, ch)
            last = g.codes[-1]
            forced = {j + 1 for j in range(n) if g.codes[j] == last}
            free = [j for j in range(1, n + 2) if j not in forced]
            drop = set(forced)
            for j in free:
                if rng.random() < 0.4:
                    drop.add(j)
            while n + 1 - len(drop) > k or (n == k and not drop):
                drop.add(rng.choice([j for j in range(1, n + 2) if j not in drop]))
            target_type = restrict(g, [j for j in range(1, n + 2) if j not in drop])
            pool = by_type.get(target_type, [])
            if len(states) < p.max_states and (not pool or rng.random() < 0.5):
                sid = f"q{len(states)}"
                states.append(State(sid, rng.random() < p.accepting_probability, target_type, len(target_type)))
                by_type.setdefault(target_type, []).append(sid)
                dst = sid
            elif pool:
                dst = rng.choice(pool)
            else:
                drop = set(range(1, n + 2))
                dst = "sink"
                need_sink = True
            trans.append(Transition(s.id, g, frozenset(drop), dst))
    sink = None
    if need_sink:
        sink = "sink"
        states.append(State("sink", False, WordType(dom, ()), 0))
        trans.append(Transition("sink", WordType(dom, (0,)), frozenset({1}), "sink"))
    name = f"random{p.seed}"
    return validate(Automaton(name, dom, k, tuple(states), "q0", tuple(trans), sink))
