"""Write the example input files in data/ from the fixture catalog.

    python3 scripts/make_examples.py [outdir]
"""

import sys
from pathlib import Path

import numpy as np

from lodaydef import io
from lodaydef.algebra import AlgebraSpec
from lodaydef.deformation import TruncatedDeformation, operad_complex
from lodaydef.fixtures import (d1, euler_derivation, grading_map, idempotent, tridendriform_two,
                               truncated_polynomial)
from lodaydef.algebra import trivial_representation
from lodaydef.cohomology import CochainComplex
from lodaydef.operad import Operad
from lodaydef.twisted import twisted_spec

sys.path.insert(0, str(Path(__file__).parent))
from obstruction_survey import first_obstructed  # noqa: E402


def write(out: Path, name: str, obj):
    (out / name).write_text(io.dumps(obj) + "\n")
    print("wrote", out / name)


def main():
    out = Path(sys.argv[1] if len(sys.argv) > 1 else "data")
    out.mkdir(exist_ok=True)
    write(out, "d1.json", io.algebra_to_json(d1()))
    write(out, "idempotent.json", io.algebra_to_json(idempotent()))
    poly = truncated_polynomial()
    write(out, "poly3.json", io.algebra_to_json(poly))
    g = grading_map()
    op = Operad("associative", 3)
    twisted = AlgebraSpec(poly.family, poly.dim, poly.pi, op.from_matrix(g), op.from_matrix(g))
    write(out, "poly3_grading.json", io.algebra_to_json(twisted))
    write(out, "poly3_twisted.json", io.algebra_to_json(twisted_spec(poly, g, g)))
    write(out, "euler.json", {"D": io.matrix_to_json(euler_derivation()), "Dbar": io.matrix_to_json(euler_derivation())})

    # d1 with pi_1 = pi: a deformation that extends
    spec = d1()
    write(out, "d1_def.json", io.deformation_to_json(TruncatedDeformation(spec, (spec.pi, spec.pi))))

    # an obstructed order-1 deformation
    tri = tridendriform_two()
    idx, _, _ = first_obstructed(tri)
    zs = operad_complex(tri).cocycle_basis(2)
    pi1 = sum((zs[k] for k in idx[1:]), zs[idx[0]])
    write(out, "tri2_obstructed.json", io.deformation_to_json(TruncatedDeformation(tri, (tri.pi, pi1))))

    write(out, "id_idempotent.json", {"source": "idempotent.json", "target": "idempotent.json", "matrix": [["1"]]})
    write(out, "id_idempotent_def.json", {"source": "idempotent.json", "target": "idempotent.json",
                                          "fterms": [[["1"]]]})
    f = CochainComplex(trivial_representation(spec, 1)).cocycle_basis(2)[-1]
    write(out, "d1_cocycle.json", io.cochain_to_json(f))


if __name__ == "__main__":
    main()
