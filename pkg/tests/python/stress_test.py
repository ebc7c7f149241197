import sys
import os
import resource
import time
import random
import math

# Ensure we can import the local module
sys.path.append(os.path.join(os.getcwd(), "python"))

from gizatullin import enumerate_sweep, standardize, symmetry_group, toric_report, CStarPoint, PointSet
from gizatullin.zigzag import elementary_shift


def get_memory_usage():
    """Returns RSS memory usage in MB"""
    usage = resource.getrusage(resource.RUSAGE_SELF).ru_maxrss
    return usage / 1024.0


def stress_long_chain_standardization():
    print("\n--- Long Chain Standardization ---")
    rng = random.Random(7)
    weights = (0, 0) + tuple(rng.randint(-5, -2) for _ in range(20))
    chain = weights
    for _ in range(12):
        zeros = [i for i, w in enumerate(chain) if w == 0]
        chain = elementary_shift(chain, rng.choice(zeros), rng.choice(["left", "right"])).weights

    start_time = time.time()
    result = standardize(chain)
    duration = time.time() - start_time

    print(f"Standardized a chain of length {len(chain)} in {duration:.4f}s ({len(result.log)} moves)")
    assert result.chain.is_standard()
    print("Pass: long chain reached standard form")


def stress_large_point_sets():
    print("\n--- Large Point Sets ---")
    order = 60
    points = PointSet(
        frozenset(CStarPoint(r) * CStarPoint.root_of_unity(k, order) for r in (1, 2, 3) for k in range(order))
    )
    start_time = time.time()
    data = symmetry_group(points)
    duration = time.time() - start_time
    print(f"Stabilizer of {len(points)} points: d = {data.d} in {duration:.4f}s")
    assert data.d == order
    print("Pass: stabilizer found")


def stress_toric_sweep():
    print("\n--- Toric Sweep d <= 80 ---")
    start_time = time.time()
    count = 0
    for d in range(2, 81):
        for e in range(1, d):
            if math.gcd(d, e) != 1:
                continue
            toric_report(d, e)
            count += 1
    duration = time.time() - start_time
    print(f"Built {count} toric reports in {duration:.4f}s")


def stress_full_sweep():
    print("\n--- Exhaustive Sweep at the Configured Bound ---")
    initial_mem = get_memory_usage()
    for prop in ("claim3", "odd-n-symmetry", "exceptional-invariants", "determinants"):
        start_time = time.time()
        summary = enumerate_sweep(9, prop)
        duration = time.time() - start_time
        print(f"{prop}: {summary.checked} chains in {duration:.2f}s, ok={summary.ok}")
        assert summary.ok, summary.counterexamples[:3]
    growth = get_memory_usage() - initial_mem
    print(f"Memory Growth: {growth:.2f} MB")


if __name__ == "__main__":
    try:
        stress_long_chain_standardization()
        stress_large_point_sets()
        stress_toric_sweep()
        stress_full_sweep()
        print("\n=== All Stress Tests Passed ===")
    except Exception as e:
        print(f"\nFAIL: {e}")
        sys.exit(1)
