"""Random oracle-versus-engine comparisons on disguised HNFs."""
import argparse
import random
import time

from hnfdelta.classifier import diagonals
from hnfdelta.delta import delta_from_hnf
from hnfdelta.lattice import IntMatrix, elementary_unimodular, hermite_normal_form, product
from hnfdelta.oracle import OracleConfig, check_reciprocity, delta_bruteforce


def random_matrix(rng, max_dim, max_det, steps):
    d = rng.randint(1, max_dim)
    D = rng.randint(1, max_det)
    diag = rng.choice(list(diagonals(d, D)))
    rows = [[rng.randrange(diag[i]) if j < i else (diag[i] if j == i else 0) for j in range(d)]
            for i in range(d)]
    ops = []
    for _ in range(steps if d > 1 else 0):
        i, j = rng.sample(range(d), 2)
        ops.append(elementary_unimodular(d, rng.choice(["add", "swap", "negate"]), i, j,
                                         rng.choice([-1, 1])))
    return IntMatrix.of(rows) @ product(ops, d)


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--samples", type=int, default=200)
    parser.add_argument("--max-dim", type=int, default=5)
    parser.add_argument("--max-det", type=int, default=8)
    parser.add_argument("--steps", type=int, default=2, help="elementary column operations per sample")
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args(argv)

    rng = random.Random(args.seed)
    config = OracleConfig.from_env()
    bad = 0
    t0 = time.perf_counter()
    for k in range(args.samples):
        m = random_matrix(rng, args.max_dim, args.max_det, args.steps)
        engine = delta_from_hnf(hermite_normal_form(m))
        oracle = delta_bruteforce(m, config)
        recip = check_reciprocity(m, m.dim + 2, config)
        if engine != oracle or not recip:
            bad += 1
            print(f"sample {k}: {m.to_lists()} engine={engine} oracle={oracle} reciprocity={recip}")
    print(f"{args.samples} samples, {bad} failures, {time.perf_counter() - t0:.1f}s")
    return 1 if bad else 0


if __name__ == "__main__":
    raise SystemExit(main())
