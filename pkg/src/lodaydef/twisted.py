"""Twisted operads O_{alpha,beta} and the Yau twist.

An :class:`~lodaydef.operad.Operad` carrying ``alpha``/``beta`` already
composes with the twisted rule; this module supplies the subspace
O_{alpha,beta}(n), membership checks and the twist construction.
"""

from __future__ import annotations

from fractions import Fraction

import numpy as np

from . import linalg
from .linalg import QMatrix
from .operad import Check, Element, Operad, check_operad_axioms, raw_partial_compose


def _constraints(operad: Operad, f: Element) -> tuple[Element, Element]:
    """(gamma(f; a..a) - a o f, gamma(f; b..b) - b o f) with untwisted compositions."""
    out = []
    for t in (operad.alpha, operad.beta):
        h = f
        for slot in range(f.arity, 0, -1):
            h = raw_partial_compose(h, t, slot)
        out.append(h - raw_partial_compose(t, f, 1))
    return out[0], out[1]


def twist_pair_check(operad: Operad) -> Check:
    """alpha o beta = beta o alpha."""
    if not operad.twisted:
        return Check(True)
    ab = raw_partial_compose(operad.alpha, operad.beta, 1)
    ba = raw_partial_compose(operad.beta, operad.alpha, 1)
    w = (ab - ba).nonzero_witness()
    return Check(w is None, None if w is None else {"identity": "alpha o beta = beta o alpha", **w})


def in_twisted_subspace(operad: Operad, f: Element) -> Check:
    if not operad.twisted:
        return Check(True)
    for name, diff in zip(("alpha", "beta"), _constraints(operad, f)):
        w = diff.nonzero_witness()
        if w is not None:
            return Check(False, {"identity": f"gamma(f; {name}, ..) = {name} o f", **w})
    return Check(True)


def twisted_subspace_basis(operad: Operad, n: int) -> QMatrix:
    """Columns spanning O_{alpha,beta}(n) inside O(n)."""
    basis = operad.basis(n)
    ca, cb = _constraints(operad, basis)
    size = basis.data.shape[0]
    stacked = np.concatenate([ca.data.reshape(size, -1), cb.data.reshape(size, -1)], axis=1)
    cols = [{int(r): Fraction(row[r]) for r in np.flatnonzero(row)} for row in stacked]
    kernel = linalg.kernel_basis(QMatrix(stacked.shape[1], size, cols))
    return QMatrix(size, len(kernel), [{r: v for r, v in enumerate(vec) if v} for vec in kernel])


def random_twisted_element(operad: Operad, n: int, rng: np.random.Generator, values=(-2, -1, 0, 1, 2)) -> Element:
    """Random integer combination of the subspace basis."""
    sub = twisted_subspace_basis(operad, n)
    coeffs = [int(c) for c in rng.choice(values, size=sub.cols)] if sub.cols else []
    return operad.from_vector(n, sub.matvec(coeffs) if sub.cols else [0] * operad.space_dim(n))


def twisted_partial_compose(operad: Operad, f: Element, g: Element, i: int) -> Element:
    """f o'_i g, refusing inputs outside the twisted subspace."""
    for x in (f, g):
        ok = in_twisted_subspace(operad, x)
        if not ok:
            raise ValueError(f"element not in the twisted subspace: {ok.witness}")
    return operad.partial_compose(f, g, i)


def yau_twist(pi: Element, alpha: Element, beta: Element) -> Element:
    """pi'(r; a, b) = pi(r; alpha a, beta b), after checking that pi is a
    multiplication and alpha, beta are commuting algebra endomorphisms."""
    op = Operad(pi.family, pi.dim)
    ok = op.is_multiplication(pi)
    if not ok:
        raise ValueError(f"not a multiplication: {ok.witness}")
    tw = Operad(pi.family, pi.dim, alpha, beta)
    ok = twist_pair_check(tw)
    if not ok:
        raise ValueError(f"twisting maps do not commute: {ok.witness}")
    for name, t in (("alpha", alpha), ("beta", beta)):
        w = (op.gamma(pi, [t, t]) - raw_partial_compose(t, pi, 1)).nonzero_witness()
        if w is not None:
            raise ValueError(f"{name} is not an algebra endomorphism: {w}")
    return op.gamma(pi, [alpha, beta])


def twisted_spec(spec, alpha_matrix, beta_matrix):
    """The BiHom-type algebra obtained by Yau-twisting an untwisted spec."""
    from .algebra import AlgebraSpec
    op = Operad(spec.family, spec.dim)
    a, b = op.from_matrix(alpha_matrix), op.from_matrix(beta_matrix)
    return AlgebraSpec(spec.family, spec.dim, yau_twist(spec.pi, a, b), a, b)


def validate_twisted(spec) -> Check:
    """Twist pair commutes, pi lies in O_{alpha,beta}(2) and pi o' pi = 0."""
    op = spec.operad()
    for check in (twist_pair_check(op), in_twisted_subspace(op, spec.pi), op.is_multiplication(spec.pi)):
        if not check:
            return check
    return Check(True)


def check_twisted_axioms(operad: Operad, arities, rng: np.random.Generator, count: int = 5):
    """Operad axioms for o' on random elements of the twisted subspaces."""
    sample = []
    for _ in range(count):
        sample.append(tuple(random_twisted_element(operad, k, rng) for k in arities))
    return check_operad_axioms(operad, sample)
