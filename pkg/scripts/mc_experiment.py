"""Seeded middle-convolution experiment on random irreducible tuples.

For each sample: apply mc twice and test equivalence with the input, check
irreducibility of the output, compare its residue data with the combinatorial
prediction s_t(alpha), and check QP = -xi Id on the canonical datum.

Usage: python3 scripts/mc_experiment.py [--samples 100] [--seed 20240601]
"""
from __future__ import annotations

import argparse
import random
import sys
import time

from spectra.cli import verify_instance, _report_ok
from spectra.mc_matrix import choice_of
from spectra.sampling import random_mc_instance


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--samples", type=int, default=100)
    ap.add_argument("--seed", type=int, default=20240601)
    args = ap.parse_args(argv)
    rng = random.Random(args.seed)
    t0 = time.perf_counter()
    bad = 0
    ranks: dict[tuple[int, int], int] = {}
    for k in range(args.samples):
        inst = random_mc_instance(rng, max_rank=4, max_points=3, max_pole=3)
        ch = choice_of(inst.data, inst.choice)
        r = verify_instance(inst.tuple, inst.data, inst.choice, ch, args.seed)
        key = (r["rank_in"], r["rank_out"])
        ranks[key] = ranks.get(key, 0) + 1
        if not _report_ok(r):
            bad += 1
            print(f"sample {k}: FAILED {r}")
    dt = time.perf_counter() - t0
    print(f"{args.samples - bad}/{args.samples} samples verified ({dt:.1f}s)")
    for (n, n2), c in sorted(ranks.items()):
        print(f"  rank {n} -> {n2}: {c}")
    return 0 if bad == 0 else 1


if __name__ == "__main__":
    sys.exit(main())
