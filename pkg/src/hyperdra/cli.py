"""Command-line front end: ``dra <subcommand> ...``.

Exit codes: 0 yes / success, 1 no, 2 usage or parse error, 3 invariant
violation (diagnostics on stderr).
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .automaton import (
    ValidationError,
    classify_states,
    complete,
    initial_configuration,
    run,
    trim,
    validate,
)
from .equivalence import automata_almost_equiv, automata_equiv, completed
from .memorability import ell_memorable
from .minimize import Report, WellTypednessConflict, hyper_minimize, minimize
from .oracle import Classification, GenParams, brute_equiv_diff, classify_disagreements, random_dra
from .textformat import ParseError, dump, load, serialize
from .typegraph import differing, product_graph_from_configs, to_dot
from .wordtypes import Domain, format_word, parse_word, type_of


class UsageError(Exception):
    pass


def _load(path: str, well_typed: bool = True):
    if not Path(path).exists():
        raise UsageError(f"no such file: {path}")
    return validate(load(path), well_typed=well_typed)


def _emit(args, data: dict, text: str) -> None:
    if args.json:
        print(json.dumps(data, indent=2))
    else:
        print(text, end="" if text.endswith("\n") else "\n")


def _write(args, a) -> None:
    validate(a, well_typed=a.well_typed)
    if args.output:
        dump(a, args.output)
    else:
        sys.stdout.write(serialize(a))


def _word(text: str):
    try:
        return parse_word(text)
    except (ValueError, ZeroDivisionError):
        raise UsageError(f"malformed data word {text!r}") from None


def cmd_validate(args) -> int:
    a = _load(args.file, not args.allow_untyped)
    data = {"name": a.name, "domain": a.domain.value, "k": a.k, "well_typed": a.well_typed,
            "states": [{"id": s.id, "arity": s.arity,
                        "regtype": None if s.regtype is None else str(s.regtype)} for s in a.states]}
    lines = [f"{a.name}: valid ({a.n} states, k={a.k}, {'well-typed' if a.well_typed else 'not well-typed'})"]
    lines += [f"  {s.id}: registers {s.regtype if s.regtype is not None else '?'}" for s in a.states]
    _emit(args, data, "\n".join(lines))
    return 0


def cmd_run(args) -> int:
    a = _load(args.file, not args.allow_untyped)
    w = _word(args.word)
    r = run(a, w)
    verdict = "ACCEPT" if r.accepted else "REJECT"
    steps = [str(r.trace[0])] + [f"--{format_word([x])}--> {c}" for x, c in zip(w, r.trace[1:])]
    text = verdict + "\n" + "\n".join("  " + s for s in steps)
    if r.stuck_at is not None:
        text += f"\n  stuck at letter {r.stuck_at + 1}"
    _emit(args, {"accepted": r.accepted, "trace": [str(c) for c in r.trace], "stuck_at": r.stuck_at}, text)
    return 0 if r.accepted else 1


def cmd_typeof(args) -> int:
    t = type_of(_word(args.word), Domain.parse(args.domain))
    _emit(args, {"type": str(t), "domain": t.domain.value}, str(t))
    return 0


def cmd_complete(args) -> int:
    a = _load(args.file, not args.allow_untyped)
    _write(args, complete(a))
    return 0


def cmd_trim(args) -> int:
    _write(args, trim(_load(args.file)))
    return 0


def cmd_states(args) -> int:
    a = _load(args.file)
    kinds = classify_states(a)
    rows = [{"id": s.id, "kind": kinds[s.id].value, "accepting": s.accepting, "initial": s.id == a.initial,
             "regtype": str(s.regtype)} for s in a.states]
    text = "\n".join(f"{r['id']}\t{r['kind']}\t{'accepting' if r['accepting'] else '-'}\t{r['regtype']}"
                     for r in rows)
    _emit(args, {"states": rows}, text)
    return 0


def cmd_memorable(args) -> int:
    a = _load(args.file)
    if args.state not in a:
        raise UsageError(f"unknown state {args.state}")
    verdicts = {i: ell_memorable(a, args.state, i, args.ell) for i in range(1, a.arity(args.state) + 1)}
    text = "\n".join(f"register {i}: {'memorable' if v else 'not memorable'}" for i, v in verdicts.items())
    _emit(args, {"state": args.state, "ell": args.ell, "memorable": {str(i): v for i, v in verdicts.items()}},
          text or f"{args.state} holds no registers")
    return 0


def cmd_minimize(args) -> int:
    _write(args, minimize(_load(args.file)))
    return 0


def cmd_hypermin(args) -> int:
    report = Report()
    out = hyper_minimize(_load(args.file), basis=args.alg2_basis, report=report)
    _write(args, out)
    if args.emit_report:
        Path(args.emit_report).write_text(report.to_json() if args.json else report.to_text(), encoding="utf-8")
    return 0


def _decide(args, check) -> int:
    a, b = _load(args.first, not args.allow_untyped), _load(args.second, not args.allow_untyped)
    if a.domain is not b.domain:
        raise UsageError("the two automata use different domains")
    v = check(a, b)
    if args.dot:
        ca, cb = completed(a), completed(b)
        g = product_graph_from_configs(ca, initial_configuration(ca), cb, initial_configuration(cb))
        Path(args.dot).write_text(to_dot(g, lambda n: differing(ca, cb, n)), encoding="utf-8")
    data = {"answer": v.answer, "product_nodes": v.nodes}
    text = "yes" if v.answer else "no"
    if v.witness is not None:
        t = type_of(v.witness.word, a.domain)
        data["witness"] = {"type": str(t), "word": format_word(v.witness.word),
                           "accepted_by_first": v.witness.accepted_by_a}
        text += (f"\nwitness type {t}\nwitness word {format_word(v.witness.word) or '(empty)'}"
                 f"\naccepted by the {'first' if v.witness.accepted_by_a else 'second'} automaton only")
    _emit(args, data, text)
    return 0 if v.answer else 1


def cmd_equiv(args) -> int:
    return _decide(args, automata_equiv)


def cmd_almost_equiv(args) -> int:
    return _decide(args, automata_almost_equiv)


def cmd_oracle_diff(args) -> int:
    a, b = _load(args.first, not args.allow_untyped), _load(args.second, not args.allow_untyped)
    if a.domain is not b.domain:
        raise UsageError("the two automata use different domains")
    rep = brute_equiv_diff(a, b, args.max_len)
    data = rep.to_dict()
    text = rep.to_text()
    ok = not rep.disagreements
    if args.threshold is not None:
        if args.threshold >= args.max_len:
            raise UsageError("--threshold must be below --max-len")
        cls = classify_disagreements(a, b, args.threshold, args.max_len)
        data["classification"] = cls.value
        text += f"classification: {cls.value}\n"
        ok = cls is Classification.BOUNDED_ONLY
    _emit(args, data, text)
    return 0 if ok else 1


def cmd_gen(args) -> int:
    try:
        p = GenParams(args.seed, args.max_states, args.max_registers, args.accepting_probability,
                      Domain.parse(args.domain))
    except ValueError as e:
        raise UsageError(str(e)) from None
    _write(args, random_dra(p))
    return 0


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("--allow-untyped", action="store_true",
                        help="accept automata whose states carry several register types")
    out = argparse.ArgumentParser(add_help=False)
    out.add_argument("-o", "--output", help="output file (default: stdout)")

    p = argparse.ArgumentParser(prog="dra", description="Deterministic register automata toolkit")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("validate", parents=[common], help="check structure and infer register types")
    s.add_argument("file")
    s.set_defaults(func=cmd_validate)

    s = sub.add_parser("run", parents=[common], help="run on a data word")
    s.add_argument("file")
    s.add_argument("--word", required=True, help="comma-separated rationals, e.g. 3,9,7")
    s.set_defaults(func=cmd_run)

    s = sub.add_parser("typeof", parents=[common], help="word type of a data word")
    s.add_argument("--word", required=True)
    s.add_argument("--domain", default="dense")
    s.set_defaults(func=cmd_typeof)

    for name, func, help_ in (("complete", cmd_complete, "add a rejecting sink"),
                              ("trim", cmd_trim, "remove useless states"),
                              ("minimize", cmd_minimize, "minimal equivalent automaton")):
        s = sub.add_parser(name, parents=[common, out], help=help_)
        s.add_argument("file")
        s.set_defaults(func=func)

    s = sub.add_parser("states", parents=[common], help="list states with preamble/kernel kind")
    s.add_argument("file")
    s.set_defaults(func=cmd_states)

    s = sub.add_parser("memorable", parents=[common], help="ell-memorability of each register")
    s.add_argument("file")
    s.add_argument("--state", required=True)
    s.add_argument("--ell", type=int, default=0)
    s.set_defaults(func=cmd_memorable)

    s = sub.add_parser("hypermin", parents=[common, out], help="hyper-minimize")
    s.add_argument("file")
    s.add_argument("--emit-report", metavar="PATH", help="write the step log here")
    s.add_argument("--alg2-basis", choices=["minimized", "parsed"], default="minimized",
                   help="automaton whose size sets the length threshold for register dropping")
    s.set_defaults(func=cmd_hypermin)

    for name, func, help_ in (("equiv", cmd_equiv, "same language?"),
                              ("almost-equiv", cmd_almost_equiv, "languages differ on finitely many types?")):
        s = sub.add_parser(name, parents=[common], help=help_)
        s.add_argument("first")
        s.add_argument("second")
        s.add_argument("--dot", metavar="PATH", help="write the product graph in DOT format")
        s.set_defaults(func=func)

    s = sub.add_parser("oracle-diff", parents=[common], help="brute-force language difference")
    s.add_argument("first")
    s.add_argument("second")
    s.add_argument("--max-len", type=int, required=True)
    s.add_argument("--threshold", type=int)
    s.set_defaults(func=cmd_oracle_diff)

    s = sub.add_parser("gen", parents=[common, out], help="random well-typed automaton")
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--max-states", type=int, default=4)
    s.add_argument("--max-registers", type=int, default=2)
    s.add_argument("--accepting-probability", type=float, default=0.4)
    s.add_argument("--domain", default="dense")
    s.set_defaults(func=cmd_gen)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return 2 if e.code else 0
    try:
        return args.func(args)
    except (UsageError, ParseError, OSError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    except ValidationError as e:
        for d in e.diagnostics:
            print(f"invalid: {d}", file=sys.stderr)
        return 3
    except (WellTypednessConflict, AssertionError) as e:
        print(f"invariant violated: {e}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
