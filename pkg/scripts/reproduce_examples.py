"""Recompute every published worked example and print it next to the quoted value."""
import argparse
import json

from hnfdelta.classifier import HnfEnumSpec, classify, enumerate_hnf, realizable, solve
from hnfdelta.delta import (
    DeltaVector,
    check_hibi,
    check_stanley,
    delta_all_Dminus1,
    delta_from_hnf,
    is_shifted_symmetric,
    s_value,
)
from hnfdelta.lattice import IntMatrix
from hnfdelta.oracle import delta_bruteforce

GOLDEN_MATRIX = IntMatrix.of([[1, 0, 0, 0], [0, 1, 0, 0], [1, 1, 2, 0], [1, 0, 1, 3]])


def examples():
    """Yield ``(label, computed, quoted)`` triples."""
    yield "4x4 example delta", str(delta_from_hnf(GOLDEN_MATRIX)), "1,0,3,2,0"
    yield "4x4 example oracle", str(delta_bruteforce(GOLDEN_MATRIX)), "1,0,3,2,0"
    svals = [s_value(GOLDEN_MATRIX, (1, 1, i, j)) for j in (1, 2, 3) for i in (1, 2)]
    yield "s_11 s_21 s_12 s_22 s_13 s_23", svals, [2, 3, 2, 3, 3, 5]

    v = delta_all_Dminus1(6, 3)
    yield "all-(D-1) row, D=6 d=3", f"{v} symmetric={is_shifted_symmetric(v)}", "1,2,2,1 symmetric=False"

    def params(d, exps, shape="one-row"):
        t = DeltaVector.from_exponents(d, exps)
        return sorted(s.params for s in solve(d, t) if s.shape == shape)

    yield "volume 2, d=4 i=2", params(4, (2,)), [(2,), (3,)]
    yield "volume 2, d=3 i=2", params(3, (2,)), [(2,)]
    yield "volume 2, d=3 i=3", params(3, (3,)), []
    yield "volume 4 one-row, d=7 (6,4,2)", params(7, (6, 4, 2)), [(0, 0, 6)]
    yield "volume 4 two-row, d=6 (2,3,5)", params(6, (2, 3, 5), "two-row"), [(4, 4, 0)]

    yield "example (a), d=6", params(6, (2, 3, 5)), [(0, 0, 5), (0, 1, 4)]
    b = DeltaVector((1, 0, 1, 0, 1, 1, 0, 0))
    vb = realizable(7, b)
    yield "example (b), d=7", (vb.realizable, check_stanley(b), check_hibi(b)), (False, True, True)
    c = DeltaVector((1, 0, 1, 0, 1, 1, 0, 0, 0))
    yield "example (b), d=8", realizable(8, c).realizable, True

    target = DeltaVector((1, 3, 1))
    hits = [m for m in enumerate_hnf(HnfEnumSpec(2, 5)) if delta_bruteforce(m) == target]
    yield "(1,3,1) from a triangle", len(hits) + len(classify(HnfEnumSpec(2, 5), target)), 0


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--json", action="store_true")
    args = parser.parse_args(argv)
    rows = [(label, got, want, got == want) for label, got, want in examples()]
    if args.json:
        print(json.dumps([{"example": l, "computed": repr(g), "quoted": repr(w), "match": m}
                          for l, g, w, m in rows], indent=1))
    else:
        for label, got, want, ok in rows:
            print(f"{'ok ' if ok else 'BAD'} {label}: {got} (quoted: {want})")
    return 0 if all(r[3] for r in rows) else 1


if __name__ == "__main__":
    raise SystemExit(main())
