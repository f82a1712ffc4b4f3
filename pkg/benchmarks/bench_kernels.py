#!/usr/bin/env python3
"""Time the compiled enumeration kernel against its pure-Python twin.

Runs the same table builds on both backends (when the extension is
available), checks the results agree, and prints a small table of wall
times with speedups. Useful after touching either kernel or the build.

    python3 benchmarks/bench_kernels.py [--max-len L] [--repeat N]
"""

from __future__ import annotations

import argparse
import time

from algstat.enumeration import build_table
from algstat.kernel import HAVE_COMPILED
from algstat.machine import Condition
from algstat.models_prob import parse_distlang


def _cases(L: int) -> list[tuple[str, int, Condition | None]]:
    return [
        ("plain", L, None),
        ("plain deep", L + 4, None),
        ("str cond", L, Condition.string("1011" * 3)),
        ("model cond", L, Condition.of_model(parse_distlang("bern:8,1/4"))),
    ]


def _time_build(L: int, cond: Condition | None, backend: str, repeat: int) -> tuple[float, int]:
    best = float("inf")
    outputs = 0
    for _ in range(repeat):
        start = time.perf_counter()
        table = build_table(L, cond, backend=backend)
        best = min(best, time.perf_counter() - start)
        outputs = len(table.sorted_outputs())
    return best, outputs


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--max-len", type=int, default=18, metavar="L")
    parser.add_argument("--repeat", type=int, default=3, metavar="N")
    args = parser.parse_args()

    backends = ["py"] + (["c"] if HAVE_COMPILED else [])
    if not HAVE_COMPILED:
        print("compiled kernel not built; timing the pure-Python kernel only\n")

    header = f"{'case':<12} {'L':>3} {'outputs':>8} " + " ".join(f"{b:>10}" for b in backends)
    if len(backends) == 2:
        header += f" {'speedup':>9}"
    print(header)
    print("-" * len(header))
    for name, L, cond in _cases(args.max_len):
        times = {}
        outputs = {}
        for b in backends:
            times[b], outputs[b] = _time_build(L, cond, b, args.repeat)
        if len(set(outputs.values())) != 1:
            raise SystemExit(f"backends disagree on {name!r}: {outputs}")
        row = f"{name:<12} {L:>3} {next(iter(outputs.values())):>8} "
        row += " ".join(f"{times[b] * 1e3:>8.1f}ms" for b in backends)
        if len(backends) == 2:
            row += f" {times['py'] / times['c']:>8.1f}x"
        print(row)
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
