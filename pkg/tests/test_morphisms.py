import numpy as np
import pytest

from lodaydef import fixtures
from lodaydef.algebra import (MorphismSpec, adjoint_representation, check_representation, identity_morphism,
                              trivial_representation, zero_algebra)
from lodaydef.cohomology import coboundary, cochain_dim
from lodaydef.deformation import FormalAutomorphism, TruncatedDeformation
from lodaydef.morphisms import (MorphismComplex, MorphismDeformation, apply_morphism_equivalence, delta_f,
                                extend_morphism_deformation, is_morphism_deformation, morphism_cohomology_dims,
                                morphism_obstruction, pullback_representation, theta_f)
from lodaydef.operad import Element


def _rng(seed):
    return np.random.default_rng(seed)


def _morphisms():
    d1, big = fixtures.d1(), fixtures.dendriform_two()
    poly = fixtures.truncated_polynomial(2)
    return {
        "id-d1": identity_morphism(d1),
        "id-idempotent": identity_morphism(fixtures.idempotent()),
        "id-poly2": identity_morphism(poly),
        "inclusion": MorphismSpec(d1, big, [[1], [0]]),
        "projection": MorphismSpec(big, d1, [[1, 0]]),
        "zero": MorphismSpec(d1, big, [[0], [0]]),
    }


MORPHISMS = _morphisms()


def _order_one(cx, vec):
    """Morphism deformation of order 1 whose linear part has the given coordinates."""
    c = cx.from_vector(2, vec)
    f = cx.f
    return MorphismDeformation(f, TruncatedDeformation.from_gamma(f.source, [c.phi]),
                               TruncatedDeformation.from_gamma(f.target, [c.psi]),
                               (f.matrix, c.zeta.data[0].T))


def test_pullback_examples():
    d1 = fixtures.d1()
    rep = pullback_representation(identity_morphism(d1))
    adj = adjoint_representation(d1)
    assert np.array_equal(rep.theta1, adj.theta1) and np.array_equal(rep.theta2, adj.theta2)
    zero = pullback_representation(MORPHISMS["zero"])
    triv = trivial_representation(d1, 2)
    assert np.array_equal(zero.theta1, triv.theta1) and np.array_equal(zero.theta2, triv.theta2)
    assert check_representation(pullback_representation(MORPHISMS["inclusion"]))
    with pytest.raises(ValueError):
        pullback_representation(MorphismSpec(d1, d1, [[2]]))


@pytest.mark.parametrize("name", sorted(MORPHISMS))
def test_delta_f_squared(name):
    cx = MorphismComplex(MORPHISMS[name])
    rng = _rng(1)
    for n in (1, 2):
        for _ in range(3):
            c = cx.random(n, rng)
            assert cx.delta(cx.delta(c)).is_zero()
        assert cx.matrix(n + 1).matmul(cx.matrix(n)).nnz() == 0


@pytest.mark.parametrize("name", sorted(MORPHISMS))
def test_matrix_matches_delta(name):
    cx = MorphismComplex(MORPHISMS[name])
    rng = _rng(2)
    for n in (1, 2):
        c = cx.random(n, rng)
        assert cx.matrix(n).matvec(c.vector()) == cx.delta(c).vector()


@pytest.mark.parametrize("name", sorted(MORPHISMS))
def test_push_and_pull_commute_with_coboundaries(name):
    f = MORPHISMS[name]
    cx = MorphismComplex(f)
    rng = _rng(3)
    fam = f.source.family
    for n in (1, 2):
        c = cx.random(n, rng)
        dphi = coboundary(cx.cA.rep, c.phi)
        assert Element(fam, n + 1, cx.push(dphi)) == coboundary(cx.rep, Element(fam, n, cx.push(c.phi)))
        dpsi = coboundary(cx.cB.rep, c.psi)
        assert Element(fam, n + 1, cx.pull(dpsi)) == coboundary(cx.rep, Element(fam, n, cx.pull(c.psi)))


def test_delta_f_examples():
    f = MORPHISMS["id-d1"]
    cx = MorphismComplex(f)
    assert cx.delta(cx.zero(2)).is_zero()
    assert delta_f(f, cx.zero(1)).is_zero()
    # (phi, psi, 0) with cocycle entries: third slot is f o phi - psi o f
    f = MORPHISMS["inclusion"]
    cx = MorphismComplex(f)
    phi = cx.cA.cocycle_basis(2)[0]
    psi = cx.cB.cocycle_basis(2)[0]
    c = cx.from_vector(2, phi.vector() + psi.vector() + [0] * cx.slot_dims(2)[2])
    out = cx.delta(c)
    assert out.phi.is_zero() and out.psi.is_zero()
    assert np.array_equal(out.zeta.data, cx.push(phi) - cx.pull(psi))


def test_degree_one_has_no_zeta_slot():
    cx = MorphismComplex(MORPHISMS["id-d1"])
    assert cx.slot_dims(1)[2] == 0 and cx.zero(1).zeta is None


@pytest.mark.parametrize("name", sorted(MORPHISMS))
def test_cochain_dimensions_add_up(name):
    f = MORPHISMS[name]
    cx = MorphismComplex(f)
    for n in (1, 2, 3):
        expected = (cochain_dim(adjoint_representation(f.source), n) + cochain_dim(adjoint_representation(f.target), n)
                    + (cochain_dim(pullback_representation(f), n - 1) if n > 1 else 0))
        assert cx.cochain_dim(n) == expected


def test_frozen_morphism_cohomology():
    assert [morphism_cohomology_dims(MORPHISMS["id-idempotent"], n) for n in (1, 2, 3)] == \
        [(0, 0, 0), (2, 2, 0), (1, 1, 0)]
    assert [morphism_cohomology_dims(MORPHISMS["id-d1"], n) for n in (1, 2, 3)] == [(0, 0, 0), (2, 2, 0), (3, 3, 0)]


def test_zero_algebras_have_full_cohomology():
    z = zero_algebra("tridendriform", 1)
    f = MorphismSpec(z, z, [[0]])
    cx = MorphismComplex(f)
    for n in (1, 2):
        assert cx.dims(n)[2] == cx.cochain_dim(n)


def test_vanishing_constituents_give_vanishing_cohomology():
    f = MORPHISMS["id-idempotent"]
    cx = MorphismComplex(f)
    for n in (2, 3):
        parts = (cx.cA.dims(n)[2], cx.cB.dims(n)[2], cx.cAB.dims(n - 1)[2])
        if parts == (0, 0, 0):
            assert cx.dims(n)[2] == 0


def test_constant_deformation():
    md = MorphismDeformation.constant(MORPHISMS["inclusion"], 2)
    assert is_morphism_deformation(md)
    assert morphism_obstruction(md).is_zero()
    with pytest.raises(ValueError):
        MorphismDeformation(md.f, md.defA, md.defB, md.fterms[:2])


@pytest.mark.parametrize("name", ["id-poly2", "inclusion", "id-d1"])
def test_linear_part_of_order_one_deformation_is_cocycle(name):
    cx = MorphismComplex(MORPHISMS[name])
    from lodaydef import linalg
    for vec in linalg.kernel_basis(cx.matrix(2)):
        md = _order_one(cx, vec)
        assert is_morphism_deformation(md)
        assert cx.delta(md.linear_part()).is_zero()


def test_perturbed_f1_fails():
    cx = MorphismComplex(MORPHISMS["id-poly2"])
    from lodaydef import linalg
    md = _order_one(cx, linalg.kernel_basis(cx.matrix(2))[0])
    bumped = md.fterms[1].copy()
    bumped[0, 0] += 1
    bad = MorphismDeformation(md.f, md.defA, md.defB, (md.fterms[0], bumped))
    check = is_morphism_deformation(bad)
    assert not check and check.witness["component"] == "f"


def test_identity_on_idempotent_always_extends():
    f = MORPHISMS["id-idempotent"]
    cx = MorphismComplex(f)
    rng = _rng(4)
    for _ in range(3):
        md = _order_one(cx, cx.matrix(1).matvec(cx.random(1, rng).vector()))
        for _ in range(3):
            md = extend_morphism_deformation(md, cx)
            assert is_morphism_deformation(md)
    md = extend_morphism_deformation(MorphismDeformation.constant(f, 1), cx)
    assert md.order == 2 and all(not m.any() for m in md.fterms[1:])


def test_obstruction_slots():
    f = MORPHISMS["id-poly2"]
    cx = MorphismComplex(f)
    from lodaydef import linalg
    from lodaydef.deformation import obstruction
    for vec in linalg.kernel_basis(cx.matrix(2)):
        md = _order_one(cx, vec)
        ob = morphism_obstruction(md)
        assert ob.phi == obstruction(md.defA) and ob.psi == obstruction(md.defB)
        assert ob.zeta == -theta_f(md)
        assert cx.delta(ob).is_zero()


def test_unnegated_theta_is_not_a_cocycle():
    # the third slot must be -theta(f); with +theta the cocycle condition breaks
    cx = MorphismComplex(MORPHISMS["id-poly2"])
    from lodaydef import linalg
    from lodaydef.morphisms import MorphismCochain
    kernel = linalg.kernel_basis(cx.matrix(2))
    rng = _rng(7)
    broken = 0
    for _ in range(10):
        coeffs = [int(c) for c in rng.integers(-2, 3, len(kernel))]
        vec = [sum(c * k[j] for c, k in zip(coeffs, kernel)) for j in range(len(kernel[0]))]
        md = _order_one(cx, vec)
        ob = morphism_obstruction(md)
        assert cx.delta(ob).is_zero()
        # the two triples differ by (0, 0, 2 theta), so the flipped one is a
        # cocycle exactly when delta(theta) vanishes
        flipped_ok = cx.delta(MorphismCochain(3, ob.phi, ob.psi, -ob.zeta)).is_zero()
        assert flipped_ok == coboundary(cx.rep, theta_f(md)).is_zero()
        broken += not flipped_ok
    assert broken >= 5


def test_equivalent_morphism_deformations_have_cohomologous_linear_parts():
    f = MORPHISMS["id-poly2"]
    cx = MorphismComplex(f)
    from lodaydef import linalg
    rng = _rng(5)
    opA, opB = f.source.operad(), f.target.operad()
    for vec in linalg.kernel_basis(cx.matrix(2))[:3]:
        md = _order_one(cx, vec)
        phiA = FormalAutomorphism.from_terms(opA, [opA.random(1, rng)])
        phiB = FormalAutomorphism.from_terms(opB, [opB.random(1, rng)])
        moved = apply_morphism_equivalence(md, phiA, phiB)
        assert is_morphism_deformation(moved)
        assert cx.solve(moved.linear_part() - md.linear_part()) is not None


def test_coboundary_linear_part_can_be_removed():
    f = MORPHISMS["inclusion"]
    cx = MorphismComplex(f)
    rng = _rng(6)
    x = cx.random(1, rng)
    md = _order_one(cx, cx.delta(x).vector())
    assert is_morphism_deformation(md)
    opA, opB = f.source.operad(), f.target.operad()
    moved = apply_morphism_equivalence(md, FormalAutomorphism.from_terms(opA, [-x.phi]),
                                       FormalAutomorphism.from_terms(opB, [-x.psi]))
    assert moved.linear_part().is_zero()
