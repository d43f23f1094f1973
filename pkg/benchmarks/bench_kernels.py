"""Compare the compiled elimination kernels against the pure-Python ones.

Runs the two workloads that dominate real usage: building every dictionary
of a Klee-Minty cube (big integers) and of a batch of random instances
(mixed rationals).  Usage: python benchmarks/bench_kernels.py [m_klee]
"""

import sys
import time
from itertools import combinations

from pnormsimplex import _purecore, klee_minty, random_lp

try:
    from pnormsimplex import _exactcore
except ImportError:
    _exactcore = None


def dictionaries_workload(lp):
    """(A, b, c, basis0) tuples for every m-subset of columns."""
    return [
        (lp.A, lp.b, lp.c, [j - 1 for j in combo])
        for combo in combinations(range(1, lp.n + 1), lp.m)
    ]


def run(backend, workloads):
    start = time.perf_counter()
    built = 0
    for args in workloads:
        if backend.dictionary_arrays(*args) is not None:
            built += 1
    return time.perf_counter() - start, built


def main():
    m_klee = int(sys.argv[1]) if len(sys.argv) > 1 else 7
    suites = {
        f"klee-minty m={m_klee}": dictionaries_workload(klee_minty(m_klee).lp),
        "random 5x10 (seeds 1-3)": [
            args
            for seed in (1, 2, 3)
            for args in dictionaries_workload(random_lp(5, 10, seed).lp)
        ],
    }

    print(f"{'workload':<28} {'dictionaries':>12} {'pure (s)':>10} "
          f"{'compiled (s)':>13} {'speedup':>8}")
    for name, workloads in suites.items():
        pure_t, built = run(_purecore, workloads)
        if _exactcore is None:
            print(f"{name:<28} {built:>12} {pure_t:>10.3f} "
                  f"{'unavailable':>13} {'-':>8}")
            continue
        fast_t, built2 = run(_exactcore, workloads)
        assert built == built2, "backends disagree on singularity"
        print(f"{name:<28} {built:>12} {pure_t:>10.3f} "
              f"{fast_t:>13.3f} {pure_t / fast_t:>7.1f}x")


if __name__ == "__main__":
    main()
