"""Brute-force search for 1-dimensional algebras in every family.

Lists how many tables with structure constants in {-1, 0, 1} satisfy
pi o pi = 0, and shows the densest ones (the catalog picks from these).

    python3 scripts/search_fixtures.py [--show 3]
"""

import argparse

from lodaydef.algebra import search_one_dimensional
from lodaydef.shapes import FAMILIES


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--show", type=int, default=3, help="densest solutions to print per family")
    args = ap.parse_args()
    for family in FAMILIES:
        found = search_one_dimensional(family)
        print(f"{family}: {len(found)} solutions")
        dense = sorted(found, key=lambda t: -sum(1 for v in t.values() if v))
        for table in dense[:args.show]:
            print("   ", "  ".join(f"{k}={v}" for k, v in table.items()))


if __name__ == "__main__":
    main()
