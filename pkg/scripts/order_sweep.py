"""How far above the required order do cumulants vanish at q = 1?

For each family, prints the achieved ord_at_q1 of kappa_[r] for J (and
the interpolation polynomials at N = |lam^[r]|) next to the hook-family
T_[r] order, then a histogram of the excess over r - 1.
"""
import argparse
from collections import Counter

from qtmac import cumulants as cu
from qtmac.partitions import family_text, multisets_of_partitions


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--r", type=int, default=3)
    ap.add_argument("--max-size", type=int, default=5)
    ap.add_argument("--interp-max", type=int, default=4)
    args = ap.parse_args()

    excess = Counter()
    for r in range(2, args.r + 1):
        for fam in sorted(multisets_of_partitions(r, args.max_size), key=lambda f: (sum(map(sum, f)), f)):
            size = sum(map(sum, fam))
            kj = cu.check_small_cumulant("J", fam).orders[cu.full(r)]
            hook = cu.hook_T_order(fam, cu.full(r))
            row = f"{family_text(fam):<16} J:{kj}  hook-T:{hook}"
            excess["J", kj - (r - 1)] += 1
            if size <= args.interp_max:
                ki = cu.check_small_cumulant("interp", fam).orders[cu.full(r)]
                row += f"  interp:{ki}"
                excess["interp", ki - (r - 1)] += 1
            print(row)
    print("excess over r-1:")
    for (kind, e), n in sorted(excess.items(), key=lambda kv: (kv[0][0], str(kv[0][1]))):
        print(f"  {kind:<7} +{e}: {n}")


if __name__ == "__main__":
    main()
