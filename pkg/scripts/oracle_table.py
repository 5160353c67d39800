"""Exact maximum t-intersecting family sizes from the clique oracle.

Default cells are the small EKR cases and two t = 2 cells on either side of
the (t+1)(k-t+1) threshold.

    python3 scripts/oracle_table.py
    python3 scripts/oracle_table.py --cell 7 3 1 --cell 8 3 2 --max-binom 56
"""

import argparse
import math

from ekrtools.oracle import max_t_intersecting_bruteforce

DEFAULT_CELLS = [(4, 2, 1), (5, 2, 1), (6, 2, 1), (7, 2, 1), (6, 3, 1), (7, 3, 1), (5, 3, 2), (8, 3, 2)]


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--cell", nargs=3, type=int, action="append", metavar=("N", "K", "T"))
    parser.add_argument("--max-binom", type=int, default=56)
    args = parser.parse_args()

    print(f"{'n':>3} {'k':>3} {'t':>3} {'max':>5} {'C(n-t,k-t)':>10} {'count':>6} {'stars':>6} {'sec':>7}")
    for n, k, t in args.cell or DEFAULT_CELLS:
        r = max_t_intersecting_bruteforce(n, k, t, args.max_binom)
        count = "-" if r.num_maximum_families is None else r.num_maximum_families
        print(f"{n:>3} {k:>3} {t:>3} {r.max_size:>5} {math.comb(n - t, k - t):>10} {count:>6} "
              f"{str(r.all_maximum_are_stars):>6} {r.elapsed:>7.3f}")


if __name__ == "__main__":
    main()
