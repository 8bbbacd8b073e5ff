#!/usr/bin/env python3
"""Generate a directory of decomposition fixtures for `relfact verify`.

Writes the bridge decomposition plus seeded random decompositions for each
boundary size, including an all-terminal batch so the verify harness also
exercises the random-cluster identities.

Usage:
  python3 scripts/make_fixtures.py --out fixtures --seed 2027 --per-n 3
"""

import argparse
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from relfact import jsonio
from relfact.corpus import bridge_decomposition, corpus


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--out", default="fixtures", help="output directory")
    parser.add_argument("--seed", type=int, default=2027)
    parser.add_argument("--per-n", type=int, default=3, help="fixtures per boundary size")
    parser.add_argument("--max-n", type=int, default=3)
    args = parser.parse_args()

    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)

    def write(name, d):
        path = out / f"{name}.json"
        path.write_text(jsonio.dumps_canonical(jsonio.decomposition_to_obj(d)))
        print(f"wrote {path}")

    write("bridge", bridge_decomposition())
    for n in range(1, args.max_n + 1):
        for i, d in enumerate(corpus(args.seed, n, args.per_n)):
            write(f"cut{n}_{i}", d)
        for i, d in enumerate(corpus(args.seed + 1, n, max(1, args.per_n // 2), terminal_mode="all")):
            write(f"allterm{n}_{i}", d)
    print(f"done; run: relfact verify --input {out}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
