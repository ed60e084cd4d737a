#!/usr/bin/env python3
"""Benchmark the compiled word kernel against the pure-Python twin.

The workloads mirror what the verification harness actually does: ball
enumeration (one braid-class saturation per Cayley edge) and full
reduced-expression class generation.  Run after `pip install -e .`:

    python benchmarks/bench_kernels.py
"""

import time

from coxruins import catalog
from coxruins._wordcore_py import WordKernel as PyKernel
from coxruins.words import WordEngine

try:
    from coxruins._wordcore import WordKernel as CyKernel
except ImportError:
    CyKernel = None

WORKLOADS = [
    ("ball(example_triple, 11)", "example_triple", 11, "ball"),
    ("ball(square_all_4, 8)", "square_all_4", 8, "ball"),
    ("ball(book, 11)", "book", 11, "ball"),
    ("ball(cross_polytope_4, 6)", "cross_polytope_4", 6, "ball"),
    ("classes(example_triple, 9)", "example_triple", 9, "classes"),
    ("classes(square_all_4, 7)", "square_all_4", 7, "classes"),
]


def run(kernel_cls, system_name, radius, mode):
    M = catalog.NAMED[system_name]()
    engine = WordEngine(M)
    engine._kernel = kernel_cls(M.kernel_rows())
    start = time.perf_counter()
    ball = engine.ball(radius)
    count = len(ball)
    if mode == "classes":
        count = sum(len(engine.reduced_expressions(w)) for w in ball)
    return time.perf_counter() - start, count


def main():
    kernels = [("python", PyKernel)]
    if CyKernel is not None:
        kernels.insert(0, ("cython", CyKernel))
    else:
        print("compiled kernel unavailable; timing the fallback only\n")
    width = max(len(w[0]) for w in WORKLOADS)
    header = f"{'workload':<{width}}  {'items':>9}"
    for name, _ in kernels:
        header += f"  {name:>9}"
    if len(kernels) == 2:
        header += f"  {'speedup':>8}"
    print(header)
    print("-" * len(header))
    for label, system_name, radius, mode in WORKLOADS:
        times = []
        count = 0
        for _, kernel_cls in kernels:
            seconds, count = run(kernel_cls, system_name, radius, mode)
            times.append(seconds)
        line = f"{label:<{width}}  {count:>9}"
        for seconds in times:
            line += f"  {seconds:>8.3f}s"
        if len(times) == 2:
            line += f"  {times[1] / times[0]:>7.1f}x"
        print(line)


if __name__ == "__main__":
    main()
