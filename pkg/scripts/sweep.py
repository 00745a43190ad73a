#!/usr/bin/env python3
"""Run the systematic pre-prolongation sweep and report the landscape.

For every generated pre-prolongation this computes the obstruction class,
attempts the crossed-product construction, runs the exhaustive covering
search, and cross-checks the three answers.  It also tallies where the
constructed coverings fail to be central extensions (exactly the cases with
a nontrivial induced action on the kernel).

Usage: python scripts/sweep.py [--max-kernel 3] [--max-cokernel 3]
"""

from __future__ import annotations

import argparse
import time
from collections import Counter

from prolong.classify import brute_force_coverings, enumerate_classes
from prolong.cohomology import cohomology_group
from prolong.errors import ObstructionNonzero
from prolong.extensions import is_central
from prolong.obstruction import build_prolongation, derive, obstruction_class
from prolong.sweep import SweepConfig, generate_pre_prolongations


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--max-kernel", type=int, default=3)
    parser.add_argument("--max-cokernel", type=int, default=3)
    parser.add_argument("--max-e0", type=int, default=8)
    parser.add_argument("--max-total", type=int, default=16)
    args = parser.parse_args()

    cfg = SweepConfig(max_kernel=args.max_kernel, max_cokernel=args.max_cokernel,
                      max_e0=args.max_e0, max_total=args.max_total)
    t0 = time.time()
    pres = generate_pre_prolongations(cfg)
    print(f"generated {len(pres)} pre-prolongations in {time.time() - t0:.1f}s")

    t1 = time.time()
    stats = Counter()
    noncentral = []
    for idx, pre in enumerate(pres):
        res = obstruction_class(pre)
        try:
            built = build_prolongation(pre)
            constructed = True
        except ObstructionNonzero:
            constructed = False
        coverings = brute_force_coverings(pre)
        assert constructed == res.vanishes == bool(coverings), f"disagreement at {idx}"
        if not res.vanishes:
            stats["obstructed"] += 1
            continue
        stats["vanishing"] += 1
        classes = enumerate_classes(pre)
        h2 = cohomology_group(2, derive(pre).module)
        assert len(classes) == len(coverings) == h2.order, f"count mismatch at {idx}"
        stats[f"{len(classes)} class(es)"] += 1
        trivial_action = all(
            p == tuple(range(pre.a.order)) for p in derive(pre).module.action)
        central = is_central(built.prolongation.e)
        assert central == trivial_action, f"centrality/action mismatch at {idx}"
        if not central:
            noncentral.append((idx, built.prolongation.e.b.order_profile()))

    print(f"processed in {time.time() - t1:.1f}s")
    for key in sorted(stats):
        print(f"  {key}: {stats[key]}")
    print(f"noncentral coverings (nontrivial kernel action): {len(noncentral)}")
    for idx, profile in noncentral:
        print(f"  sweep index {idx}: middle-group order profile {profile}")


if __name__ == "__main__":
    main()
