"""Exhaustive Katona sweep over every nonempty subfamily of ([n] choose a).

Prints the violation count, the equality count, and how many equality cases
fall outside the three named classes, split by the minimum intersection b.

    python3 scripts/katona_exhaustive.py --n 6 --a 3
"""

import argparse
import json
import time

from ekrtools.setcore import min_pairwise_intersection
from ekrtools.shadows import katona_check, katona_exhaustive


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--n", type=int, default=6)
    parser.add_argument("--a", type=int, default=3)
    parser.add_argument("--max-binom", type=int, default=20)
    args = parser.parse_args()

    start = time.perf_counter()
    sweep = katona_exhaustive(args.n, args.a, args.max_binom)
    elapsed = time.perf_counter() - start
    out = {
        "n": args.n,
        "a": args.a,
        "families": sweep.families,
        "violations": sweep.violations,
        "equalities": sweep.equalities,
        "equalities_by_class": dict(sweep.by_class),
        "unclassified_by_b": {str(b): c for b, c in sorted(sweep.unclassified_by_b.items())},
        "seconds": round(elapsed, 3),
    }
    if sweep.first_unclassified is not None:
        f = sweep.subfamily(sweep.first_unclassified)
        report = katona_check(f, min_pairwise_intersection(f))
        out["first_unclassified"] = {"family": f.to_lists(), "report": report.to_dict()}
    print(json.dumps(out, indent=1, sort_keys=True))


if __name__ == "__main__":
    main()
