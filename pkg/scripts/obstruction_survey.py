"""Which fixtures carry obstructed deformations?

For every catalog algebra, start from each basis 2-cocycle (and pairwise
sums) as infinitesimal and extend order by order; report where the
obstruction class is nonzero.

    python3 scripts/obstruction_survey.py [--max-order 4]
"""

import argparse
import itertools

from lodaydef.deformation import Obstructed, TruncatedDeformation, extend_deformation, operad_complex
from lodaydef.fixtures import all_fixtures


def starts(spec):
    zs = operad_complex(spec).cocycle_basis(2)
    yield from ((k,) for k in range(len(zs)))
    yield from itertools.combinations(range(len(zs)), 2)


def first_obstructed(spec, max_order=4):
    """(cocycle indices, order) of the first obstructed start, or None."""
    zs = operad_complex(spec).cocycle_basis(2)
    for idx in starts(spec):
        pi1 = sum((zs[k] for k in idx[1:]), zs[idx[0]])
        defo = TruncatedDeformation(spec, (spec.pi, pi1))
        try:
            while defo.order < max_order:
                defo = extend_deformation(defo)
        except Obstructed as exc:
            return idx, exc.order + 1, exc
    return None


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--max-order", type=int, default=4)
    args = ap.parse_args()
    for name, spec in all_fixtures().items():
        cx = operad_complex(spec)
        h = [cx.dims(n)[2] for n in (1, 2, 3)]
        hit = first_obstructed(spec, args.max_order)
        where = "none" if hit is None else f"cocycles {hit[0]} blocked at order {hit[1]}"
        print(f"{name:22s} H1..H3={h}  obstructed: {where}")


if __name__ == "__main__":
    main()
