import numpy as np
import pytest
from hypothesis import given, strategies as st

from lodaydef import fixtures
from lodaydef.algebra import AlgebraSpec
from lodaydef.operad import Operad, check_operad_axioms
from lodaydef.shapes import FAMILIES

import oracles


def _rng(seed):
    return np.random.default_rng(seed)


@given(st.sampled_from(FAMILIES), st.integers(1, 2), st.integers(1, 3), st.integers(1, 3), st.integers(0, 2 ** 16))
def test_partial_compose_matches_loop_oracle(family, d, m, n, seed):
    if d == 2 and m + n > 4:
        n = max(1, 4 - m)
    rng = _rng(seed)
    op = Operad(family, d)
    f, g = op.random(m, rng), op.random(n, rng)
    i = int(rng.integers(1, m + 1))
    assert np.array_equal(op.partial_compose(f, g, i).data, oracles.loop_compose(family, f.data, m, g.data, n, i))


@pytest.mark.parametrize("family", FAMILIES)
def test_axioms_small_sample(family):
    rng = _rng(7)
    op = Operad(family, 2 if family not in ("ennea", "trialgebra") else 1)
    sample = [tuple(op.random(a, rng) for a in arities) for arities in [(2, 2, 1), (2, 1, 2), (1, 2, 2), (2, 2, 2)]]
    report = check_operad_axioms(op, sample)
    assert report.ok, report.violations
    assert report.checked > 0


class _SkewedOperad(Operad):
    """Composition into the second slot of an arity-3 element is doubled."""

    def partial_compose(self, f, g, i):
        h = super().partial_compose(f, g, i)
        return h * 2 if i == 2 and f.arity == 3 else h


def test_axiom_checker_catches_a_broken_composition():
    op = _SkewedOperad("dendriform", 1)
    rng = _rng(3)
    sample = [tuple(op.random(2, rng) for _ in range(3))]
    assert not check_operad_axioms(op, sample).ok


def test_unit_and_gamma_examples():
    rng = _rng(1)
    for family in FAMILIES:
        op = Operad(family, 1)
        f = op.random(3, rng)
        ident = op.identity()
        assert op.partial_compose(ident, f, 1) == f
        assert op.gamma(f, [ident] * 3) == f
        assert op.gamma(ident, [f]) == f
        pi = op.random(2, rng)
        assert op.gamma(pi, [pi, ident]) == op.partial_compose(pi, pi, 1)
        with pytest.raises(ValueError):
            op.gamma(pi, [pi])


def test_d1_compositions():
    spec = fixtures.d1()
    op, pi = spec.operad(), spec.pi
    assert op.partial_compose(pi, pi, 1).data[0, 0, 0, 0, 0] == 1
    assert op.partial_compose(pi, pi, 2).data[0, 0, 0, 0, 0] == 1
    assert op.circle(pi, pi).is_zero()
    assert op.is_multiplication(pi)
    ident_cup = op.cup(pi, op.identity(), op.identity())
    assert ident_cup.data[0, 0, 0, 0] == -1
    assert -ident_cup == pi


def test_associative_composition():
    spec = fixtures.idempotent()
    op = spec.operad()
    assert op.partial_compose(spec.pi, spec.pi, 1).data[0, 0, 0, 0, 0] == 1


def test_brace_examples():
    rng = _rng(2)
    op = Operad("tridendriform", 1)
    f, pi, g = op.random(3, rng), op.random(2, rng), op.random(2, rng)
    ident = op.identity()
    assert op.brace(f, []) == f
    assert op.brace(pi, [ident, ident]) == pi
    assert op.brace(pi, [g]) == op.partial_compose(pi, g, 1) - op.partial_compose(pi, g, 2)
    assert op.brace(pi, [g]) == op.circle(pi, g)
    too_many = op.brace(pi, [ident, ident, ident])
    assert too_many.is_zero() and too_many.arity == 2


def test_circle_examples():
    rng = _rng(4)
    op = Operad("quadri", 2)
    a, b = op.random(1, rng), op.random(1, rng)
    assert op.circle(a, b) == op.partial_compose(a, b, 1)
    g = op.random(3, rng)
    assert op.circle(op.identity(), g) == g
    assert op.circle(g, op.identity()) == g * 3


def test_bracket_examples():
    rng = _rng(5)
    op = Operad("dendriform", 2)
    # [f, f] vanishes in even degree and doubles the circle square in odd degree
    f = op.random(3, rng)
    assert op.lie_bracket(f, f).is_zero()
    f = op.random(2, rng)
    assert op.lie_bracket(f, f) == op.circle(f, f) * 2
    pi = fixtures.dendriform_two().pi
    assert op.lie_bracket(pi, pi) == op.circle(pi, pi) * 2
    g = op.random(3, rng)
    assert op.lie_bracket(op.identity(), g) == g - g * 3


def test_cup_of_zero():
    op = Operad("ennea", 1)
    pi = fixtures.ennea_one().pi
    rng = _rng(6)
    assert op.cup(pi, op.zero(2), op.random(2, rng)).is_zero()


def test_differential_examples():
    for spec in fixtures.all_fixtures().values():
        op = spec.operad()
        assert op.differential(spec.pi, op.identity()) == spec.pi
        assert op.differential(spec.pi, spec.pi).is_zero()


@pytest.mark.parametrize("name", ["d1", "tridendriform-two", "dendriform-two", "trialgebra-one", "truncated-polynomial"])
def test_d_squared(name):
    spec = fixtures.CATALOG[name]()
    op = spec.operad()
    rng = _rng(8)
    for n in (1, 2):
        f = op.random(n, rng)
        assert op.differential(spec.pi, op.differential(spec.pi, f)).is_zero()


def test_is_multiplication_witness():
    bad = AlgebraSpec.from_products("dendriform", 1, {"1": [[[1]]], "2": [[[1]]]})
    check = bad.operad().is_multiplication(bad.pi)
    assert not check
    assert check.witness["shape"] in ("1", "2", "3")
    assert Operad("trialgebra", 2).is_multiplication(Operad("trialgebra", 2).zero(2))


@given(st.sampled_from(FAMILIES), st.integers(0, 2 ** 16),
       st.tuples(st.integers(1, 3), st.integers(1, 3), st.integers(1, 3)))
def test_pre_lie(family, seed, arities):
    rng = _rng(seed)
    op = Operad(family, 1)
    f, g, h = (op.random(a, rng) for a in arities)
    c = op.circle
    lhs = c(c(f, g), h) - c(f, c(g, h))
    rhs = c(c(f, h), g) - c(f, c(h, g))
    assert lhs == (rhs if (g.degree * h.degree) % 2 == 0 else -rhs)


@given(st.sampled_from(FAMILIES), st.integers(0, 2 ** 16), st.integers(1, 3), st.integers(1, 3))
def test_bracket_antisymmetry(family, seed, m, n):
    rng = _rng(seed)
    op = Operad(family, 1)
    f, g = op.random(m, rng), op.random(n, rng)
    sign = -1 if (f.degree * g.degree) % 2 == 0 else 1
    assert op.lie_bracket(f, g) == op.lie_bracket(g, f) * sign


@pytest.mark.parametrize("name", ["d1", "tridendriform-one", "dendriform-two", "truncated-polynomial"])
def test_leibniz_rule_in_degree_one(name):
    # d(f o g) = d(f) o g - f o d(g) + g.f - f.g for f, g in O(2)
    spec = fixtures.CATALOG[name]()
    op, pi = spec.operad(), spec.pi
    rng = _rng(9)
    for _ in range(3):
        f, g = op.random(2, rng), op.random(2, rng)
        d = lambda x: op.differential(pi, x)
        lhs = d(op.circle(f, g))
        rhs = op.circle(d(f), g) - op.circle(f, d(g)) + op.cup(pi, g, f) - op.cup(pi, f, g)
        assert lhs == rhs


def test_context_errors():
    a, b = Operad("dendriform", 1), Operad("dendriform", 2)
    with pytest.raises(ValueError):
        a.partial_compose(a.identity(), b.identity(), 1)
    with pytest.raises(ValueError):
        a.circle(a.identity(), Operad("quadri", 1).identity())
    with pytest.raises(IndexError):
        a.partial_compose(a.identity(), a.identity(), 2)
    with pytest.raises(ValueError):
        Operad("dendriform", 0)


def test_element_arithmetic_and_vectors():
    op = Operad("tridendriform", 2)
    rng = _rng(10)
    f = op.random(2, rng)
    assert op.from_vector(2, f.vector()) == f
    assert (f - f).is_zero()
    assert f * 0 == op.zero(2)
    with pytest.raises(TypeError):
        f * True
    w = (f - f + op.basis(2).unbatch()[5]).nonzero_witness()
    assert w is not None and w["shape"] == "{1,2}" and w["value"] == ["0", "1"]


def test_complex_on_idempotent():
    from lodaydef.operad import OperadComplex
    spec = fixtures.idempotent()
    cx = OperadComplex(spec.operad(), spec.pi)
    assert [cx.dims(n)[2] for n in (1, 2, 3)] == [0, 0, 0]
    assert cx.is_coboundary(spec.pi)
    with pytest.raises(ValueError):
        cx.dims(0)
