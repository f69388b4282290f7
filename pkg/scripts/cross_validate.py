"""Compare closed-form solvers against brute-force enumeration for determinants 2, 3 and 4.

Prints one line per (d, D) with the number of targets, how many are attained,
mismatches, and how often several table families give the same parameters.
"""
import argparse
import itertools
import time
from collections import defaultdict

from hnfdelta.classifier import HnfEnumSpec, classify_by_solvers, enumerate_hnf, solve
from hnfdelta.delta import DeltaVector, delta_from_hnf


def sweep(d, D):
    spec = HnfEnumSpec(d, D)
    by_delta = defaultdict(set)
    for m in enumerate_hnf(spec):
        by_delta[delta_from_hnf(m)].add(m)
    stats = defaultdict(int)
    for exps in itertools.combinations_with_replacement(range(1, d + 1), D - 1):
        target = DeltaVector.from_exponents(d, exps)
        stats["targets"] += 1
        stats["attained"] += target in by_delta
        stats["mismatch"] += set(classify_by_solvers(spec, target)) != by_delta.get(target, set())
        for sol in solve(d, target):
            stats["solutions"] += 1
            stats["multi_family"] += len(sol.family_ids) > 1
    return stats


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--max-dim", type=int, default=6)
    args = parser.parse_args(argv)
    bad = 0
    for d in range(1, args.max_dim + 1):
        for D in (2, 3, 4):
            t0 = time.perf_counter()
            s = sweep(d, D)
            bad += s["mismatch"]
            print(f"d={d} D={D} targets={s['targets']} attained={s['attained']} "
                  f"solutions={s['solutions']} multi_family={s['multi_family']} "
                  f"mismatch={s['mismatch']} ({time.perf_counter() - t0:.2f}s)")
    return 1 if bad else 0


if __name__ == "__main__":
    raise SystemExit(main())
