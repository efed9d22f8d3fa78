"""Run the differential checks on a range of random automata.

    python3 scripts/differential.py --count 200 --start 0
"""

import argparse
import time

from hyperdra.differential import run_instance
from hyperdra.wordtypes import Domain


def main():
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--count", type=int, default=50)
    p.add_argument("--start", type=int, default=0)
    p.add_argument("--max-states", type=int, default=4)
    p.add_argument("--max-registers", type=int, default=2)
    args = p.parse_args()

    totals: dict = {}
    failures = []
    t0 = time.perf_counter()
    for seed in range(args.start, args.start + args.count):
        dom = Domain.DENSE if seed % 2 == 0 else Domain.EQUALITY
        f = run_instance(seed, dom, args.max_states, args.max_registers)
        for name, n in f.checks.items():
            totals[name] = totals.get(name, 0) + n
        failures += f.failures
        if not f.ok:
            print("\n".join(f.failures))
    for name, n in sorted(totals.items()):
        print(f"{name:32s} {n:6d}")
    print(f"{len(failures)} failures over {args.count} instances in {time.perf_counter() - t0:.0f}s")
    raise SystemExit(1 if failures else 0)


if __name__ == "__main__":
    main()
