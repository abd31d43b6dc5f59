"""Small named algebras used by the tests, scripts and CLI examples.

The 1-dimensional quadri and ennea tables come from
``search_one_dimensional`` (entries in {-1, 0, 1}, most nonzeros first);
see scripts/search_fixtures.py.
"""

from __future__ import annotations

from .algebra import (AlgebraSpec, RotaBaxterSpec, adjoint_representation, rota_baxter_to_tridendriform,
                      semidirect_product, tridendriform_to_dendriform)


def idempotent() -> AlgebraSpec:
    """Associative, d = 1, e * e = e."""
    return AlgebraSpec.from_products("associative", 1, {"*": [[[1]]]})


def truncated_polynomial(k: int = 3) -> AlgebraSpec:
    """Associative Q[x]/(x^k) on the basis 1, x, .., x^(k-1)."""
    table = [[[1 if i + j == c else 0 for c in range(k)] for j in range(k)] for i in range(k)]
    return AlgebraSpec.from_products("associative", k, {"*": table})


def grading_map(k: int = 3, scale: int = 2) -> list[list[int]]:
    """x^i -> scale^i x^i, an algebra endomorphism of Q[x]/(x^k)."""
    return [[scale ** i if i == j else 0 for j in range(k)] for i in range(k)]


def euler_derivation(k: int = 3) -> list[list[int]]:
    """x^i -> i x^i."""
    return [[i if i == j else 0 for j in range(k)] for i in range(k)]


def d1() -> AlgebraSpec:
    """Dendriform, d = 1, e < e = e, e > e = 0."""
    return AlgebraSpec.from_products("dendriform", 1, {"1": [[[1]]], "2": [[[0]]]})


def rb_idempotent() -> RotaBaxterSpec:
    """e^2 = e with R = id of weight -1."""
    return RotaBaxterSpec(idempotent(), [[1]], -1)


def tridendriform_one() -> AlgebraSpec:
    """e < e = e > e = e, e . e = -e (from rb_idempotent)."""
    return rota_baxter_to_tridendriform(rb_idempotent())


def dialgebra_one() -> AlgebraSpec:
    return AlgebraSpec.from_products("dialgebra", 1, {"(L,(L,L))": [[[1]]], "((L,L),L)": [[[1]]]})


def trialgebra_one() -> AlgebraSpec:
    return AlgebraSpec.from_products("trialgebra", 1,
                                     {"(L,(L,L))": [[[1]]], "((L,L),L)": [[[1]]], "(L,L,L)": [[[1]]]})


def quadri_one() -> AlgebraSpec:
    return AlgebraSpec.from_products("quadri", 1, {"(1,1)": [[[1]]], "(1,2)": [[[-1]]], "(2,1)": [[[0]]],
                                                   "(2,2)": [[[1]]]})


def ennea_one() -> AlgebraSpec:
    values = {"({1},{1})": 1, "({1},{2})": 1, "({1},{1,2})": -1,
              "({2},{1})": 1, "({2},{2})": 1, "({2},{1,2})": -1,
              "({1,2},{1})": -1, "({1,2},{2})": -1, "({1,2},{1,2})": 1}
    return AlgebraSpec.from_products("ennea", 1, {k: [[[v]]] for k, v in values.items()})


def dual_numbers_rb() -> RotaBaxterSpec:
    """Q[x]/(x^2) with the weight-0 operator 1 -> x, x -> 0."""
    return RotaBaxterSpec(truncated_polynomial(2), [[0, 0], [1, 0]], 0)


def tridendriform_two() -> AlgebraSpec:
    return rota_baxter_to_tridendriform(dual_numbers_rb())


def dendriform_two() -> AlgebraSpec:
    """D1 semidirect its adjoint representation."""
    spec = d1()
    return semidirect_product(spec, adjoint_representation(spec))


ONE_DIMENSIONAL = {
    "associative": idempotent,
    "dendriform": d1,
    "tridendriform": tridendriform_one,
    "dialgebra": dialgebra_one,
    "trialgebra": trialgebra_one,
    "quadri": quadri_one,
    "ennea": ennea_one,
}

CATALOG = {
    "idempotent": idempotent,
    "truncated-polynomial": truncated_polynomial,
    "d1": d1,
    "tridendriform-one": tridendriform_one,
    "dialgebra-one": dialgebra_one,
    "trialgebra-one": trialgebra_one,
    "quadri-one": quadri_one,
    "ennea-one": ennea_one,
    "tridendriform-two": tridendriform_two,
    "dendriform-two": dendriform_two,
    "dendriform-from-rb": lambda: tridendriform_to_dendriform(tridendriform_two()),
}


def all_fixtures() -> dict[str, AlgebraSpec]:
    return {name: make() for name, make in CATALOG.items()}
