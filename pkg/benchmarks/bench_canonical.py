#!/usr/bin/env python3
"""Benchmark the canonical-labeling kernels: compiled extension vs the
pure-Python fallback, on the workloads that dominate real runs.

Usage: python benchmarks/bench_canonical.py [--repeat N]
"""

import argparse
import random
import time

from chordal import _canon_py

try:
    from chordal import _canon_cy
except ImportError:
    _canon_cy = None


def random_pairing(m, t, rng):
    H = m + 3 * t
    hs = list(range(H))
    rng.shuffle(hs)
    pairing = [0] * H
    for i in range(0, H, 2):
        a, b = hs[i], hs[i + 1]
        pairing[a], pairing[b] = b, a
    return tuple(pairing)


def corpus():
    """Mixed workload: closed diagrams of the sizes met while assembling
    the order-4 quotients, plus free-mode connected pieces."""
    rng = random.Random(20240601)
    jobs = []
    for _ in range(300):
        t = rng.choice([2, 3, 4, 5, 6])
        m = rng.choice([2, 3, 4]) if (rng.random() < 0.7) else 8 - (3 * t) % 2
        if (m + 3 * t) % 2:
            m += 1
        jobs.append((m, t, random_pairing(m, t, rng), 0))
    for _ in range(200):
        t = rng.choice([2, 3, 4])
        m = rng.choice([2, 4])
        if (m + 3 * t) % 2:
            m += 1
        jobs.append((m, t, random_pairing(m, t, rng), 2))
    for _ in range(200):
        t = rng.choice([1, 2, 3])
        m = (3 * t) % 2 + rng.choice([2, 4])
        if (m + 3 * t) % 2:
            m += 1
        jobs.append((m, t, random_pairing(m, t, rng), 1))
    return jobs


def run(kernel, jobs, repeat):
    best = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        for m, t, pairing, mode in jobs:
            kernel(m, t, pairing, mode)
        dt = time.perf_counter() - t0
        best = dt if best is None else min(best, dt)
    return best


def enumeration_workload():
    """End-to-end: enumerate the closed diagrams of order 3 with a cold
    cache, which exercises canonicalization through the whole stack."""
    import chordal.diagrams as D

    for fn in (D.enumerate_chords, D._open_level, D.open_structural,
               D.enumerate_jacobi, D._closed_levels, D.open_connected):
        fn.cache_clear()
    t0 = time.perf_counter()
    D.enumerate_jacobi("closed", 3)
    return time.perf_counter() - t0


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()

    jobs = corpus()
    print("canonical-search corpus: %d diagrams" % len(jobs))
    t_py = run(_canon_py.canonical_search, jobs, args.repeat)
    print("  pure python : %8.4f s" % t_py)
    if _canon_cy is not None:
        t_cy = run(_canon_cy.canonical_search, jobs, args.repeat)
        print("  compiled    : %8.4f s" % t_cy)
        print("  speedup     : %8.1f x" % (t_py / t_cy))
    else:
        print("  compiled    : not built")

    import chordal.canonical as sel

    print("selected backend at import: %s" % sel.backend)
    dt = enumeration_workload()
    print("order-3 closed enumeration, cold caches (%s backend): %.3f s"
          % (sel.backend, dt))


if __name__ == "__main__":
    main()
