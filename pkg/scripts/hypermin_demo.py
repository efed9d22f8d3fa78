"""Hyper-minimize the reference automata and show what changed."""

from hyperdra import fixtures
from hyperdra.equivalence import automata_almost_equiv
from hyperdra.minimize import Report, hyper_minimize
from hyperdra.oracle import brute_equiv_diff
from hyperdra.textformat import serialize


def show(name, a, max_len=6):
    report = Report()
    h = hyper_minimize(a, report=report)
    print(f"== {name}: {a.n} states, k={a.k} -> {h.n} states, k={h.k}")
    print(report.to_text(), end="")
    print(serialize(h), end="")
    diff = brute_equiv_diff(a, h, max_len)
    print(f"almost equivalent: {bool(automata_almost_equiv(a, h))}")
    print(diff.to_text())


def main():
    show("even5", fixtures.even5(), 8)
    show("mid_plus", fixtures.mid_plus())
    show("mid", fixtures.mid())


if __name__ == "__main__":
    main()
