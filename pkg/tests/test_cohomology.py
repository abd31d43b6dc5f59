import numpy as np
import pytest
from hypothesis import given, strategies as st

from lodaydef import fixtures
from lodaydef.algebra import (AlgebraSpec, adjoint_representation, check_morphism, identity_matrix, map_inputs,
                              map_output, semidirect_product, trivial_representation, validate_algebra, zero_algebra)
from lodaydef.cohomology import (CochainComplex, check_extension, coboundary, coboundary_matrix,
                                 cocycle_from_extension, cohomology_dims, derivation_basis, extension_from_cocycle,
                                 extensions_equivalent, is_cocycle, random_cochain, zero_cochain)
from lodaydef.deformation import operad_complex
from lodaydef.operad import Element, Operad

import oracles

# (H^1, H^2, H^3) with adjoint coefficients, frozen from the exact computation
# and cross-checked against the Hochschild oracle on the associative entries
EXPECTED_H = {
    "idempotent": (0, 0, 0),
    "truncated-polynomial": (2, 2, 2),
    "d1": (0, 0, 0),
    "tridendriform-one": (0, 0, 0),
    "dialgebra-one": (0, 0, 0),
    "trialgebra-one": (0, 0, 0),
    "quadri-one": (0, 0, 0),
    "ennea-one": (0, 0, 0),
    "tridendriform-two": (2, 5, 10),
    "dendriform-two": (1, 1, 1),
    "dendriform-from-rb": (2, 3, 4),
}


def _table(spec):
    return [[[spec.pi.data[0, i, j, k] for k in range(spec.dim)] for j in range(spec.dim)] for i in range(spec.dim)]


def test_d1_coboundary_of_identity_multiple():
    rep = adjoint_representation(fixtures.d1())
    f = Operad("dendriform", 1).identity() * 3
    df = coboundary(rep, f)
    assert df.data[:, 0, 0, 0].tolist() == [3, 0]
    assert coboundary_matrix(rep, 1).to_dense() == [[1], [0]]
    assert cohomology_dims(rep, 1) == (0, 0, 0)
    assert derivation_basis(rep) == []


def test_zero_cochain_and_zero_algebra():
    rep = adjoint_representation(zero_algebra("dendriform", 1))
    assert coboundary(rep, zero_cochain(rep, 2)).is_zero()
    assert coboundary_matrix(rep, 2).nnz() == 0
    assert cohomology_dims(rep, 1) == (1, 0, 1)
    zero3 = adjoint_representation(zero_algebra("associative", 3))
    assert len(derivation_basis(zero3)) == 9


@pytest.mark.parametrize("name", sorted(EXPECTED_H))
def test_frozen_cohomology(name):
    spec = fixtures.CATALOG[name]()
    rep = adjoint_representation(spec)
    assert tuple(cohomology_dims(rep, n)[2] for n in (1, 2, 3)) == EXPECTED_H[name]
    cx = operad_complex(spec)
    assert tuple(cx.dims(n)[2] for n in (1, 2, 3)) == EXPECTED_H[name]


@pytest.mark.parametrize("spec", [fixtures.idempotent(), fixtures.truncated_polynomial(2),
                                  fixtures.truncated_polynomial(3)], ids=["idem", "poly2", "poly3"])
def test_associative_matches_hochschild_oracle(spec):
    rep = adjoint_representation(spec)
    for n in (1, 2, 3):
        assert cohomology_dims(rep, n) == oracles.hochschild_dims(_table(spec), n)


def _reps():
    out = []
    for name in sorted(fixtures.CATALOG):
        spec = fixtures.CATALOG[name]()
        out.append((name + "/adjoint", adjoint_representation(spec)))
        out.append((name + "/trivial", trivial_representation(spec, 1)))
    return out


@pytest.mark.parametrize("label,rep", _reps(), ids=[label for label, _ in _reps()])
def test_delta_squared_matrices(label, rep):
    for n in (1, 2):
        prod = coboundary_matrix(rep, n + 1).matmul(coboundary_matrix(rep, n))
        assert prod.nnz() == 0


@given(st.sampled_from(sorted(fixtures.CATALOG)), st.integers(1, 3), st.integers(0, 2 ** 16))
def test_delta_squared_random(name, n, seed):
    spec = fixtures.CATALOG[name]()
    if spec.dim > 2 and n == 3:
        n = 2
    rep = adjoint_representation(spec)
    f = random_cochain(rep, n, np.random.default_rng(seed))
    assert coboundary(rep, coboundary(rep, f)).is_zero()


SIGNS = {1: 1, 2: -1, 3: 1}


@pytest.mark.parametrize("name", sorted(fixtures.CATALOG))
def test_sign_relating_delta_and_d(name):
    spec = fixtures.CATALOG[name]()
    rep = adjoint_representation(spec)
    cx = operad_complex(spec)
    for n, s in SIGNS.items():
        if spec.dim ** (n + 1) * spec.operad().n_shapes(n) > 400:
            continue
        delta = coboundary_matrix(rep, n).to_dense()
        d = cx.d_matrix(n).to_dense()
        assert delta == [[s * x for x in row] for row in d]


def test_euler_derivation():
    spec = fixtures.truncated_polynomial()
    rep = adjoint_representation(spec)
    D = spec.operad().from_matrix(fixtures.euler_derivation())
    assert is_cocycle(rep, D)
    basis = derivation_basis(rep)
    assert len(basis) == 2
    from lodaydef import linalg
    assert linalg.rank_of_columns([b.vector() for b in basis] + [D.vector()], len(D.vector())) == 2


def test_is_cocycle_witness():
    rep = adjoint_representation(fixtures.d1())
    check = is_cocycle(rep, Operad("dendriform", 1).identity())
    assert not check and check.witness is not None


def _permuted(spec, perm):
    P = np.zeros((spec.dim, spec.dim), dtype=object)
    P[...] = 0
    for i, j in enumerate(perm):
        P[j, i] = 1
    Pinv = P.T.copy()
    arr = map_output(map_inputs(spec.pi.data, Pinv, 2), P)
    return AlgebraSpec(spec.family, spec.dim, Element(spec.family, 2, arr))


def test_dims_independent_of_basis_order():
    spec = fixtures.tridendriform_two()
    other = _permuted(spec, [1, 0])
    assert validate_algebra(other) and other != spec
    for n in (1, 2, 3):
        assert cohomology_dims(adjoint_representation(spec), n) == cohomology_dims(adjoint_representation(other), n)


def test_extension_of_zero_cocycle_is_semidirect():
    spec = fixtures.d1()
    rep = adjoint_representation(spec)
    ext = extension_from_cocycle(rep, zero_cochain(rep, 2))
    assert ext.total == semidirect_product(spec, rep)
    f, induced = cocycle_from_extension(ext)
    assert f.is_zero()
    assert np.array_equal(induced.theta1, rep.theta1) and np.array_equal(induced.theta2, rep.theta2)


def test_extension_rejects_non_cocycles():
    spec = fixtures.d1()
    rep = adjoint_representation(spec)
    # Z^2 is one-dimensional inside the two-dimensional C^2
    bad = next(e for e in Operad("dendriform", 1).basis(2).unbatch() if not is_cocycle(rep, e))
    with pytest.raises(ValueError):
        extension_from_cocycle(rep, bad)


@pytest.mark.parametrize("kind", ["trivial", "adjoint"])
def test_extension_round_trip(kind):
    spec = fixtures.d1()
    rep = trivial_representation(spec, 1) if kind == "trivial" else adjoint_representation(spec)
    cx = CochainComplex(rep)
    basis = cx.cocycle_basis(2)
    rng = np.random.default_rng(11)
    for _ in range(5):
        f = sum((b * int(rng.integers(-3, 4)) for b in basis[1:]), basis[0] * int(rng.integers(-3, 4)))
        ext = extension_from_cocycle(rep, f)
        assert check_extension(ext) and validate_algebra(ext.total)
        back, _ = cocycle_from_extension(ext)
        assert cx.solve(f - back) is not None


def test_section_shift_changes_cocycle_by_coboundary():
    spec = fixtures.dendriform_two()
    rep = adjoint_representation(spec)
    cx = CochainComplex(rep)
    rng = np.random.default_rng(12)
    f = cx.cocycle_basis(2)[-1]
    ext = extension_from_cocycle(rep, f)
    g = random_cochain(rep, 1, rng)
    # s'(a) = s(a) + i(g(a)); g as a matrix [out][in]
    G = g.data[0].T
    shifted = ext.with_section(ext.section + ext.inclusion.dot(G))
    f2, _ = cocycle_from_extension(shifted)
    assert f2 - f == coboundary(rep, g)
    found = extensions_equivalent(shifted, ext)
    assert found is not None and coboundary(rep, found) == f2 - f


def test_bad_extension_is_reported():
    spec = fixtures.d1()
    rep = trivial_representation(spec, 1)
    ext = extension_from_cocycle(rep, zero_cochain(rep, 2))
    broken = ext.with_section([[2], [0]])
    assert not check_extension(broken)
    with pytest.raises(ValueError):
        cocycle_from_extension(broken)


def test_projection_is_a_morphism():
    spec = fixtures.d1()
    rep = trivial_representation(spec, 1)
    f = CochainComplex(rep).cocycle_basis(2)[0]
    ext = extension_from_cocycle(rep, f)
    from lodaydef.algebra import MorphismSpec
    assert check_morphism(MorphismSpec(ext.total, spec, ext.projection))


def test_twisted_algebras_rejected():
    spec = fixtures.truncated_polynomial()
    from lodaydef.twisted import twisted_spec
    tw = twisted_spec(spec, identity_matrix(3), identity_matrix(3))
    with pytest.raises(ValueError):
        CochainComplex(adjoint_representation(tw))
