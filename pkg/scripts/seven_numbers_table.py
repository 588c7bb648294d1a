"""Tabulate the seven counts for projective spaces at several levels and small Grassmannians."""

import argparse

from csgeom.models import Grassmann, ProjSpace
from csgeom.verify import seven_numbers

HEADER = ("model", "max_orth", "sections", "weyl_dim", "min_N", "morse", "euler", "cells", "equal")


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--max-level", type=int, default=3)
    args = ap.parse_args()

    models = [ProjSpace(n, m) for n in (1, 2) for m in range(1, args.max_level + 1)]
    models += [Grassmann(2, 4), Grassmann(2, 5)]
    print("  ".join(f"{h:>10}" for h in HEADER))
    for model in models:
        rep = seven_numbers(model, seed=args.seed)
        row = (model.spec, *rep.numbers, "yes" if rep.all_equal else "no")
        print("  ".join(f"{x:>10}" for x in row))


if __name__ == "__main__":
    main()
