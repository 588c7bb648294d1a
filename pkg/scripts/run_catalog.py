"""Run every identity check over the model catalog and print one line per (check, model)."""

import argparse
import time

from csgeom.models import Disc, Grassmann, ProjSpace
from csgeom.verify import (
    check_anandan_aharonov,
    check_bargmann_bounds,
    check_cauchy,
    check_diastasis,
    check_geodesic_additivity,
    check_injectivity,
)

COMPACT = [ProjSpace(1, 1), ProjSpace(1, 2), ProjSpace(1, 3), ProjSpace(2, 1), Grassmann(2, 4)]
DISCS = [Disc(1), Disc(2), Disc(4)]


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--trials", type=int, default=1000)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--threads", type=int, default=1)
    args = ap.parse_args()
    kw = dict(trials=args.trials, seed=args.seed, threads=args.threads)

    jobs = [(check_cauchy, m) for m in COMPACT]
    jobs += [(check_diastasis, m) for m in COMPACT + DISCS]
    jobs += [(check_injectivity, m) for m in COMPACT]
    failures = 0
    for fn, model in jobs:
        t0 = time.perf_counter()
        rep = fn(model, **kw)
        failures += not rep.passed
        print(f"{rep.check_name:<12} {rep.model:<14} err={rep.max_abs_error:.3e} "
              f"tol={rep.tolerance:.0e} {'ok' if rep.passed else 'FAIL'} ({time.perf_counter() - t0:.2f}s)")
    for fn in (check_geodesic_additivity, check_anandan_aharonov, check_bargmann_bounds):
        rep = fn(dim=4, trials=args.trials, seed=args.seed)
        failures += not rep.passed
        print(f"{rep.check_name:<12} {rep.model:<14} err={rep.max_abs_error:.3e} "
              f"tol={rep.tolerance:.0e} {'ok' if rep.passed else 'FAIL'}")
    raise SystemExit(1 if failures else 0)


if __name__ == "__main__":
    main()
