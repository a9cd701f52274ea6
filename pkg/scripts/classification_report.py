"""Enumerate fundamental spectral types at idx 0 and -2, compare with the
fixture tables, and run the saturation check at widened bounds.

Usage: python3 scripts/classification_report.py [--idx 0 -2] [--skip-saturation]
Exit status 0 iff every table matches and saturation holds.
"""
from __future__ import annotations

import argparse
import sys
import time

from spectra.enumerate_fund import SearchBounds, compare_with_fixture, enumerate_fundamental, load_fixtures


def report(idx: int, tables, saturation: bool) -> bool:
    t0 = time.perf_counter()
    base = enumerate_fundamental(idx)
    diff = compare_with_fixture(base, tables[idx])
    print(f"idx {idx}: {len(base.keys())} shapes, {len(base.spectral_types())} types "
          f"({time.perf_counter() - t0:.1f}s)")
    for line in diff.lines():
        print("  " + line)
    print(f"  fixture: {len(diff.matched)}/{len(tables[idx].entries)} matched, ok={diff.ok}")
    ok = diff.ok
    if saturation:
        t0 = time.perf_counter()
        wide = enumerate_fundamental(idx, SearchBounds().widened())
        new_shapes = wide.keys() - base.keys()
        new_types = sorted(set(wide.spectral_types()) - set(base.spectral_types()))
        print(f"  saturation: {len(new_shapes)} new shapes, {len(new_types)} new types in known shapes "
              f"({time.perf_counter() - t0:.1f}s)")
        for s in new_types:
            print(f"    + {s}")
        ok &= not new_shapes
    return ok


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--idx", type=int, nargs="+", default=[0, -2])
    ap.add_argument("--skip-saturation", action="store_true")
    args = ap.parse_args(argv)
    tables = load_fixtures()
    ok = True
    for idx in args.idx:
        ok &= report(idx, tables, not args.skip_saturation)
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())
