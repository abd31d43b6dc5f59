"""Compare the representation coboundary delta with d_pi on C^n(A, A).

For each catalog fixture and n = 1..3 prints the sign s with delta = s d_pi,
"0" when both maps vanish on the sampled cochains, and "?" if neither sign fits.

    python3 scripts/sign_table.py [--samples 3]
"""

import argparse

import numpy as np

from lodaydef.algebra import adjoint_representation
from lodaydef.cohomology import coboundary
from lodaydef.deformation import operad_complex
from lodaydef.fixtures import all_fixtures


def sign(spec, n, rng, samples):
    op, cx, rep = spec.operad(), operad_complex(spec), adjoint_representation(spec)
    allowed = {1, -1}
    for _ in range(samples):
        f = op.random(n, rng)
        d, delta = cx.d(f), coboundary(rep, f)
        allowed &= {s for s in (1, -1) if delta == d * s}
    if allowed == {1, -1}:
        return "0"
    return {frozenset({1}): "+1", frozenset({-1}): "-1"}.get(frozenset(allowed), "?")


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--samples", type=int, default=3)
    args = ap.parse_args()
    rng = np.random.default_rng(0)
    print(f"{'fixture':22s} s_1  s_2  s_3")
    for name, spec in all_fixtures().items():
        print(f"{name:22s} " + "  ".join(f"{sign(spec, n, rng, args.samples):>3s}" for n in (1, 2, 3)))


if __name__ == "__main__":
    main()
