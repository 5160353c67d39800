"""Run the EKR checks on seeded maximal intersecting families, one line per (n, k) cell.

    python3 scripts/ekr_corpus.py --n-max 12 --samples 20 --seed 0
"""

import argparse
import math
import time

from ekrtools.algebra import ekr_matrix_proof, polynomials_independent
from ekrtools.oracle import derive_seed, random_maximal_intersecting
from ekrtools.pipeline import ExtremalKind, check_intersection_identity, classify_extremal, decompose, run_chain


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--n-min", type=int, default=4)
    parser.add_argument("--n-max", type=int, default=12)
    parser.add_argument("--samples", type=int, default=20)
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--no-algebra", action="store_true", help="skip the matrix and polynomial checks")
    args = parser.parse_args()

    print(f"{'n':>3} {'k':>3} {'bound':>6} {'min':>5} {'max':>5} {'stars':>5} {'fail':>5} {'sec':>6}")
    total_fail = 0
    for n in range(args.n_min, args.n_max + 1):
        for k in range(2, n // 2 + 1):
            start = time.perf_counter()
            sizes, stars, fail = [], 0, 0
            for s in range(args.samples):
                f = random_maximal_intersecting(n, k, derive_seed(args.seed, n, k, s))
                sizes.append(len(f))
                stars += classify_extremal(f).kind is ExtremalKind.STAR
                d = decompose(f)
                ok = run_chain(d).all_steps and check_intersection_identity(d)[0]
                if not args.no_algebra:
                    ok = ok and ekr_matrix_proof(d) and polynomials_independent(f)
                fail += not ok
            total_fail += fail
            print(f"{n:>3} {k:>3} {math.comb(n - 1, k - 1):>6} {min(sizes):>5} {max(sizes):>5} "
                  f"{stars:>5} {fail:>5} {time.perf_counter() - start:>6.2f}")
    print(f"failures: {total_fail}")
    raise SystemExit(1 if total_fail else 0)


if __name__ == "__main__":
    main()
