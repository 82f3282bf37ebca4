"""Write the order-8 skew brace catalog used by ``tables --orders 8``.

Skew braces with additive group A correspond to maps lambda: A -> Aut(A)
satisfying lambda_{a + lambda_a(b)} = lambda_a lambda_b; this script finds
them all for each group of order 8 and keeps one per isomorphism class.
"""
from __future__ import annotations

import argparse
import json
import sys
import time
from pathlib import Path

from ybreflect.braces import BraceCatalogEntry, export_braces, regular_subgroup_braces
from ybreflect.groups import groups_of_order

DEFAULT_OUT = Path(__file__).resolve().parents[1] / "src" / "ybreflect" / "data" / "braces_order8.json"


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("-o", "--output", type=Path, default=DEFAULT_OUT)
    ap.add_argument("--order", type=int, default=8)
    args = ap.parse_args(argv)

    entries = []
    for A in groups_of_order(args.order):
        t0 = time.perf_counter()
        found = regular_subgroup_braces(A)
        print(f"{A.name:>9}: {len(found):3d} braces ({time.perf_counter() - t0:.1f}s)", file=sys.stderr)
        for B in found:
            i = len(entries) + 1
            entries.append(BraceCatalogEntry(B.n, i, B, B.A.name, B.G.name, "built_in",
                                             f"{B.A.name}/{B.G.name}#{i}"))
    args.output.parent.mkdir(parents=True, exist_ok=True)
    args.output.write_text(json.dumps(export_braces(entries), separators=(",", ":")) + "\n")
    print(f"wrote {len(entries)} entries to {args.output}", file=sys.stderr)
    return 0


if __name__ == "__main__":
    sys.exit(main())
