"""Cohomology of a Loday-type algebra with coefficients in a representation,
and the correspondence between 2-cocycles and abelian extensions.

An M-valued n-cochain is an :class:`Element` with input dimensions ``d`` and
output dimension ``m``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import linalg
from .algebra import (AlgebraSpec, RepresentationSpec, as_matrix, check_morphism, identity_matrix, map_input,
                      map_output, semidirect_product, MorphismSpec, zero_algebra)
from .linalg import QMatrix
from .operad import Check, Element, basis_batch, compose_blocks, element_from_vector, zeros_array


def _check_cochain(rep: RepresentationSpec, f: Element):
    d, m = rep.base.dim, rep.mdim
    if f.family != rep.base.family or f.out_dim != m or any(k != d for k in f.in_dims):
        raise ValueError(f"{f!r} is not a cochain on ({d}-dim algebra, {m}-dim module)")


def cochain_dim(rep: RepresentationSpec, n: int) -> int:
    return zeros_array(rep.base.family, n, (rep.base.dim,) * n, rep.mdim).size


def zero_cochain(rep: RepresentationSpec, n: int) -> Element:
    return Element(rep.base.family, n, zeros_array(rep.base.family, n, (rep.base.dim,) * n, rep.mdim))


def cochain_from_vector(rep: RepresentationSpec, n: int, vector) -> Element:
    return element_from_vector(rep.base.family, n, rep.base.dim, vector, out_dim=rep.mdim)


def random_cochain(rep: RepresentationSpec, n: int, rng: np.random.Generator, values=(-2, -1, 0, 1, 2)) -> Element:
    shape = zeros_array(rep.base.family, n, (rep.base.dim,) * n, rep.mdim).shape
    arr = np.vectorize(int, otypes=[object])(rng.choice(values, size=shape))
    return Element(rep.base.family, n, arr)


def coboundary(rep: RepresentationSpec, f: Element) -> Element:
    """delta f = theta1 o_2 f + sum_i (-1)^i f o_i pi + (-1)^(n+1) theta2 o_1 f.

    Batched cochains give batched results.
    """
    _check_cochain(rep, f)
    fam = rep.base.family
    n, b = f.arity, f.batch
    total = compose_blocks(fam, rep.theta1, 2, f.data, n, 2, 0, b)
    for i in range(1, n + 1):
        term = compose_blocks(fam, f.data, n, rep.base.pi.data, 2, i, b, 0)
        total = total - term if i % 2 else total + term
    last = compose_blocks(fam, rep.theta2, 2, f.data, n, 1, 0, b)
    total = total + last if (n + 1) % 2 == 0 else total - last
    return Element(fam, n + 1, total)


class CochainComplex:
    """Matrices of delta: C^n(A, M) -> C^{n+1}(A, M), cached per degree."""

    def __init__(self, rep: RepresentationSpec):
        if rep.base.twisted:
            raise ValueError("cohomology with coefficients is defined for untwisted algebras")
        self.rep = rep
        self._mats: dict[int, QMatrix] = {}

    def matrix(self, n: int) -> QMatrix:
        if n not in self._mats:
            rep = self.rep
            basis = basis_batch(rep.base.family, n, (rep.base.dim,) * n, rep.mdim)
            self._mats[n] = coboundary(rep, basis).columns()
        return self._mats[n]

    def dims(self, n: int) -> tuple[int, int, int]:
        if n < 1:
            raise ValueError("degree must be >= 1")
        z = cochain_dim(self.rep, n) - linalg.rank(self.matrix(n))
        b = linalg.rank(self.matrix(n - 1)) if n > 1 else 0
        return z, b, z - b

    def solve(self, target: Element) -> Element | None:
        """Some g with delta g = target, or None."""
        n = target.arity - 1
        if n < 1:
            return None if not target.is_zero() else target
        x = linalg.solve(self.matrix(n), target.vector())
        return None if x is None else cochain_from_vector(self.rep, n, x)

    def cocycle_basis(self, n: int) -> list[Element]:
        return [cochain_from_vector(self.rep, n, v) for v in linalg.kernel_basis(self.matrix(n))]


def coboundary_matrix(rep: RepresentationSpec, n: int) -> QMatrix:
    return CochainComplex(rep).matrix(n)


def cohomology_dims(rep: RepresentationSpec, n: int) -> tuple[int, int, int]:
    """(dim Z^n, dim B^n, dim H^n); B^1 = 0 since the complex starts at C^1."""
    return CochainComplex(rep).dims(n)


def derivation_basis(rep: RepresentationSpec) -> list[Element]:
    return CochainComplex(rep).cocycle_basis(1)


def is_cocycle(rep: RepresentationSpec, f: Element) -> Check:
    w = coboundary(rep, f).nonzero_witness()
    return Check(w is None, w)


# ---------------------------------------------------------------------------
# abelian extensions


@dataclass(frozen=True, eq=False)
class ExtensionSpec:
    """0 -> M -i-> E -j-> A -> 0 with a linear section s of j.

    Matrices follow the ``[out][in]`` convention: ``inclusion`` is D x m,
    ``projection`` d x D, ``section`` D x d with D = dim E.
    """
    base: AlgebraSpec
    total: AlgebraSpec
    mdim: int
    inclusion: np.ndarray
    projection: np.ndarray
    section: np.ndarray

    def __post_init__(self):
        D, d, m = self.total.dim, self.base.dim, self.mdim
        object.__setattr__(self, "inclusion", as_matrix(self.inclusion, D, m))
        object.__setattr__(self, "projection", as_matrix(self.projection, d, D))
        object.__setattr__(self, "section", as_matrix(self.section, D, d))

    def with_section(self, section) -> "ExtensionSpec":
        return ExtensionSpec(self.base, self.total, self.mdim, self.inclusion, self.projection, section)


def _qmatrix(M: np.ndarray) -> QMatrix:
    return QMatrix.from_dense(M.tolist()) if M.size else QMatrix.zeros(*M.shape)


def check_extension(ext: ExtensionSpec) -> Check:
    """j s = id, j i = 0, i injective, j a morphism and pi_E(i M, i M) = 0."""
    d, m = ext.base.dim, ext.mdim
    js = ext.projection.dot(ext.section) if d else np.zeros((0, 0), dtype=object)
    if d and np.any(js != identity_matrix(d)):
        return Check(False, {"identity": "j o s = id"})
    if m and d and np.any(ext.projection.dot(ext.inclusion) != 0):
        return Check(False, {"identity": "j o i = 0"})
    if linalg.rank(_qmatrix(ext.inclusion)) != m:
        return Check(False, {"identity": "i injective"})
    if ext.total.dim != d + m:
        return Check(False, {"identity": "dim E = dim A + dim M"})
    ok = check_morphism(MorphismSpec(ext.total, ext.base, ext.projection))
    if not ok:
        return Check(False, {"identity": "j is a morphism", **ok.witness})
    # i is a morphism from M with zero products
    ok = check_morphism(MorphismSpec(zero_algebra(ext.base.family, m), ext.total, ext.inclusion))
    if not ok:
        return Check(False, {"identity": "i is a morphism", **ok.witness})
    return Check(True)


def _retraction(ext: ExtensionSpec) -> np.ndarray:
    """p: E -> M with p i = id and p s = 0, i.e. p(e) = i^{-1}(e - s j e)."""
    D, m = ext.total.dim, ext.mdim
    Q = _qmatrix(ext.inclusion)
    complement = identity_matrix(D) - ext.section.dot(ext.projection)
    P = np.zeros((m, D), dtype=object)
    for k in range(D):
        x = linalg.solve(Q, list(complement[:, k]))
        if x is None:
            raise ValueError("e - s(j(e)) is not in the image of i")
        P[:, k] = x
    return P


def extension_from_cocycle(rep: RepresentationSpec, f: Element, check: bool = True) -> ExtensionSpec:
    """E = A + M with pi_E((a,m),(b,n)) = (pi(a,b), theta1(a,n) + theta2(m,b) + f(a,b))."""
    _check_cochain(rep, f)
    if f.arity != 2:
        raise ValueError("an extension is built from a 2-cochain")
    if check:
        ok = is_cocycle(rep, f)
        if not ok:
            raise ValueError(f"not a 2-cocycle: {ok.witness}")
    spec = rep.base
    E = semidirect_product(spec, rep, check=check)
    d, m = spec.dim, rep.mdim
    arr = E.pi.data.copy()
    arr[:, :d, :d, d:] = f.data
    total = AlgebraSpec(spec.family, d + m, Element(spec.family, 2, arr))
    inc = np.zeros((d + m, m), dtype=object)
    proj = np.zeros((d, d + m), dtype=object)
    sec = np.zeros((d + m, d), dtype=object)
    for k in range(m):
        inc[d + k, k] = 1
    for k in range(d):
        proj[k, k] = 1
        sec[k, k] = 1
    return ExtensionSpec(spec, total, m, inc, proj, sec)


def cocycle_from_extension(ext: ExtensionSpec, check: bool = True) -> tuple[Element, RepresentationSpec]:
    """The 2-cocycle p(pi_E(s a, s b)) and the induced representation
    theta1(a, m) = p(pi_E(s a, i m)), theta2(m, a) = p(pi_E(i m, s a))."""
    if check:
        ok = check_extension(ext)
        if not ok:
            raise ValueError(f"invalid extension: {ok.witness}")
    P = _retraction(ext)
    S, I = ext.section, ext.inclusion
    pe = ext.total.pi.data
    f = map_output(map_input(map_input(pe, S, 1), S, 2), P)
    t1 = map_output(map_input(map_input(pe, S, 1), I, 2), P)
    t2 = map_output(map_input(map_input(pe, I, 1), S, 2), P)
    rep = RepresentationSpec(ext.base, ext.mdim, t1, t2)
    return Element(ext.base.family, 2, f), rep


def extensions_equivalent(ext1: ExtensionSpec, ext2: ExtensionSpec) -> Element | None:
    """A 1-cochain g with f1 - f2 = delta g, or None.

    Both extensions must induce the same representation on M.  In canonical
    coordinates the equivalence is (a, m) -> (a, m + g(a)).
    """
    f1, rep1 = cocycle_from_extension(ext1)
    f2, rep2 = cocycle_from_extension(ext2)
    if not (np.array_equal(rep1.theta1, rep2.theta1) and np.array_equal(rep1.theta2, rep2.theta2)):
        raise ValueError("extensions induce different representations")
    return CochainComplex(rep1).solve(f1 - f2)
