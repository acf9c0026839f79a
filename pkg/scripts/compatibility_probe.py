"""Does the N+1 variable interpolation polynomial restrict to the N variable one?

Tries every point convention for all lam with |lam| <= --max-size and
len(lam) <= N <= --max-n, and prints one line per case plus a tally.
"""
import argparse
from collections import Counter

from qtmac.macdonald import Points, compatibility_probe
from qtmac.partitions import enumerate_up_to


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max-size", type=int, default=3)
    ap.add_argument("--max-n", type=int, default=3)
    ap.add_argument("--quiet", action="store_true")
    args = ap.parse_args()

    tally = Counter()
    for points in Points:
        for lam in enumerate_up_to(args.max_size):
            if not lam:
                continue
            for N in range(len(lam), args.max_n + 1):
                rep = compatibility_probe(lam, N, points)
                tally[points.value, rep.passed] += 1
                if not args.quiet:
                    print(rep.line())
    for points in Points:
        ok, bad = tally[points.value, True], tally[points.value, False]
        print(f"{points.value:>9}: {ok} compatible, {bad} not")


if __name__ == "__main__":
    main()
