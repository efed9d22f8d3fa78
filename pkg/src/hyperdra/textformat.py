"""Line-oriented ``.dra`` file format.

::

    # comments run to end of line
    dra fig1
    domain dense
    k 2
    state q0 initial
    state q1
    state q3 accepting
    state dead sink regs -
    trans q0 0 drop {} -> q1
    trans q2 0.2.1 drop {1,2,3} -> q3

``regs <type>`` declares a state's register type (checked by validation);
``arity <n>`` records the arity of a state that has several register types.
"""

from __future__ import annotations

import re
from pathlib import Path

from .automaton import Automaton, State, Transition
from .wordtypes import Domain, parse_type


class ParseError(ValueError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


_TRANS = re.compile(r"^trans\s+(\S+)\s+(\S+)\s+drop\s+\{([^}]*)\}\s*->\s*(\S+)$")


def parse_automaton(text: str) -> Automaton:
    name = None
    domain = None
    k = None
    states: list = []
    seen_ids: set = set()
    initial = None
    sink = None
    raw_trans: list = []

    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        head, *rest = line.split()
        if head == "dra":
            if len(rest) != 1:
                raise ParseError("expected 'dra <name>'", lineno)
            name = rest[0]
        elif head == "domain":
            if len(rest) != 1:
                raise ParseError("expected 'domain dense|equality'", lineno)
            try:
                domain = Domain.parse(rest[0])
            except ValueError as e:
                raise ParseError(str(e), lineno) from None
        elif head == "k":
            if len(rest) != 1 or not rest[0].isdigit():
                raise ParseError("expected 'k <int>'", lineno)
            k = int(rest[0])
        elif head == "state":
            if domain is None:
                raise ParseError("'domain' must precede state declarations", lineno)
            if not rest:
                raise ParseError("state without id", lineno)
            sid, flags = rest[0], rest[1:]
            if sid in seen_ids:
                raise ParseError(f"duplicate state {sid}", lineno)
            seen_ids.add(sid)
            accepting = False
            regtype = None
            arity = None
            i = 0
            while i < len(flags):
                f = flags[i]
                if f == "initial":
                    if initial is not None:
                        raise ParseError("more than one initial state", lineno)
                    initial = sid
                elif f == "accepting":
                    accepting = True
                elif f == "sink":
                    sink = sid
                elif f in ("regs", "arity") and i + 1 < len(flags):
                    i += 1
                    try:
                        if f == "regs":
                            regtype = parse_type(flags[i], domain)
                        else:
                            arity = int(flags[i])
                    except ValueError as e:
                        raise ParseError(str(e), lineno) from None
                else:
                    raise ParseError(f"unknown state flag {f!r}", lineno)
                i += 1
            if regtype is not None:
                arity = len(regtype)
            states.append(State(sid, accepting, regtype, arity))
        elif head == "trans":
            m = _TRANS.match(line)
            if not m:
                raise ParseError("expected 'trans <src> <guard> drop {i,...} -> <dst>'", lineno)
            if domain is None:
                raise ParseError("'domain' must precede transitions", lineno)
            src, code, drop, dst = m.groups()
            try:
                guard = parse_type(code, domain)
                drop_set = frozenset(int(x) for x in drop.replace(" ", "").split(",") if x)
            except ValueError as e:
                raise ParseError(str(e), lineno) from None
            raw_trans.append((lineno, Transition(src, guard, drop_set, dst)))
        else:
            raise ParseError(f"unknown directive {head!r}", lineno)

    if name is None:
        raise ParseError("missing 'dra <name>' header")
    if domain is None:
        raise ParseError("missing 'domain' line")
    if k is None:
        raise ParseError("missing 'k' line")
    if initial is None:
        raise ParseError("no initial state")

    by_id = {s.id: s for s in states}
    for lineno, t in raw_trans:
        for sid in (t.src, t.dst):
            if sid not in by_id:
                raise ParseError(f"unknown state {sid}", lineno)
        src = by_id[t.src]
        if src.arity is not None and len(t.guard) != src.arity + 1:
            raise ParseError(
                f"guard {t.guard} has length {len(t.guard)} but {t.src} holds {src.arity} registers", lineno)
    return Automaton(name, domain, k, tuple(states), initial,
                     tuple(t for _, t in raw_trans), sink)


def serialize(a: Automaton) -> str:
    lines = [f"dra {a.name}", f"domain {a.domain.value}", f"k {a.k}"]
    for s in a.states:
        parts = ["state", s.id]
        if s.id == a.initial:
            parts.append("initial")
        if s.accepting:
            parts.append("accepting")
        if s.id == a.sink:
            parts.append("sink")
        if s.regtype is not None:
            parts += ["regs", str(s.regtype)]
        elif s.arity is not None:
            parts += ["arity", str(s.arity)]
        lines.append(" ".join(parts))
    for t in a.transitions:
        drop = ",".join(str(j) for j in sorted(t.drop))
        lines.append(f"trans {t.src} {t.guard} drop {{{drop}}} -> {t.dst}")
    return "\n".join(lines) + "\n"


def load(path) -> Automaton:
    return parse_automaton(Path(path).read_text(encoding="utf-8"))


def dump(a: Automaton, path) -> None:
    Path(path).write_text(serialize(a), encoding="utf-8")
