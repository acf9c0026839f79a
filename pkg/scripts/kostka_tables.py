"""Print multivariate q,t-Kostka tables for every family up to a size.

    python3 scripts/kostka_tables.py --r 2 --max-size 4
"""
import argparse
import time

from qtmac.kostka import audit, multivariate_kostka
from qtmac.partitions import family_text, multisets_of_partitions


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--r", type=int, default=2)
    ap.add_argument("--max-size", type=int, default=4)
    args = ap.parse_args()

    t0 = time.perf_counter()
    bad = 0
    fams = sorted(multisets_of_partitions(args.r, args.max_size), key=lambda f: (sum(map(sum, f)), f))
    for fam in fams:
        table = multivariate_kostka(fam)
        a = audit(table)
        bad += not (a.integrality_ok and a.nonnegative)
        print(f"K[mu; {family_text(fam)}]")
        for mu, c in table.rows():
            print(f"  {mu:<10} {c}")
        print(f"  -> {a.line()}")
    print(f"{len(fams)} families, {bad} with a non-integral or negative entry, {time.perf_counter() - t0:.1f}s")


if __name__ == "__main__":
    main()
