"""Compare the compiled search kernel with the pure-Python fallback.

    python benchmarks/bench_search.py [--repeat N]
"""
import argparse
import random
import timeit

from conjforge import search
from conjforge.core import FiniteStructure, c3
from conjforge.composite import composite_structure


def random_digraph(n, rng, p=0.5):
    edges = [(u, v) if rng.random() < 0.5 else (v, u)
             for u in range(n) for v in range(u + 1, n) if rng.random() < p]
    return FiniteStructure.digraph(range(n), edges)


def cases():
    rng = random.Random(0)
    g = composite_structure(3, 3)
    yield "automorphisms of 3.K3", lambda b: search.find_maps([g.rows], [g.rows], len(g), len(g), True, backend=b)
    host = random_digraph(40, rng)
    yield "C3 embeddings in a 40-vertex digraph", lambda b: search.find_maps(
        [c3().rows], [host.rows], 3, 40, False, backend=b)
    big = composite_structure(4, 2)
    yield "automorphisms of 4.K2", lambda b: search.find_maps(
        [big.rows], [big.rows], len(big), len(big), True, backend=b)
    nums = sorted(rng.sample(range(1, 10 ** 6), 400))
    yield "relate table, 400 points", lambda b: search.relate_table(nums, 10 ** 6 + 1, 3, backend=b)


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    if search.BACKEND != "compiled":
        print("compiled extension not available; only the python backend can run")
    print(f"{'case':40} {'python':>10} {'compiled':>10} {'speedup':>8}")
    for name, fn in cases():
        py = min(timeit.repeat(lambda: fn("python"), number=1, repeat=args.repeat))
        if search.BACKEND == "compiled":
            assert fn("python") == fn("compiled"), name
            cy = min(timeit.repeat(lambda: fn("compiled"), number=1, repeat=args.repeat))
            print(f"{name:40} {py:10.4f} {cy:10.4f} {py / cy:8.1f}x")
        else:
            print(f"{name:40} {py:10.4f} {'-':>10} {'-':>8}")


if __name__ == "__main__":
    main()
