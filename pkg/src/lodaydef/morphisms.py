"""Deformation complex of a morphism f: A -> B and deformations of f.

C^n(f, f) = C^n(A, A) x C^n(B, B) x C^{n-1}(A, B), where B is an
A-representation through f.  Coordinates of a cochain are the concatenation
of the three slot vectors; for n = 1 the third slot is empty.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from . import linalg
from .algebra import (MorphismSpec, RepresentationSpec, adjoint_representation, as_matrix, check_morphism,
                      check_representation, map_input, map_inputs, map_output)
from .cohomology import CochainComplex, coboundary, cochain_dim
from .deformation import Obstructed, TruncatedDeformation, is_deformation, obstruction, apply_equivalence
from .deformation import FormalAutomorphism, invert_automorphism
from .linalg import QMatrix
from .operad import Check, Element, basis_batch, element_from_vector


def pullback_representation(f: MorphismSpec, check: bool = True) -> RepresentationSpec:
    """theta1(r; a, b) = pi_B(r; f a, b) and theta2(r; b, a) = pi_B(r; b, f a)."""
    if check:
        ok = check_morphism(f)
        if not ok:
            raise ValueError(f"not a morphism: {ok.witness}")
    pb = f.target.pi.data
    return RepresentationSpec(f.source, f.target.dim, map_input(pb, f.matrix, 1), map_input(pb, f.matrix, 2))


@dataclass(frozen=True, eq=False)
class MorphismCochain:
    degree: int
    phi: Element
    psi: Element
    zeta: Element | None

    def __post_init__(self):
        n = self.degree
        if self.phi.arity != n or self.psi.arity != n:
            raise ValueError("phi and psi must have arity equal to the degree")
        if n == 1:
            if self.zeta is not None:
                raise ValueError("degree-1 cochains have no zeta slot")
        elif self.zeta is None or self.zeta.arity != n - 1:
            raise ValueError(f"zeta must have arity {n - 1}")

    def parts(self) -> list[Element]:
        return [self.phi, self.psi] + ([self.zeta] if self.zeta is not None else [])

    def vector(self) -> list[Fraction]:
        return [x for p in self.parts() for x in p.vector()]

    def is_zero(self) -> bool:
        return all(p.is_zero() for p in self.parts())

    def _combine(self, other, op):
        if other.degree != self.degree:
            raise ValueError("degree mismatch")
        z = None if self.zeta is None else op(self.zeta, other.zeta)
        return MorphismCochain(self.degree, op(self.phi, other.phi), op(self.psi, other.psi), z)

    def __add__(self, other):
        return self._combine(other, lambda a, b: a + b)

    def __sub__(self, other):
        return self._combine(other, lambda a, b: a - b)

    def __neg__(self):
        return MorphismCochain(self.degree, -self.phi, -self.psi, None if self.zeta is None else -self.zeta)

    def __eq__(self, other):
        if not isinstance(other, MorphismCochain):
            return NotImplemented
        return self.degree == other.degree and self.vector() == other.vector()

    __hash__ = None

    def witness(self) -> dict | None:
        for name, p in zip(("phi", "psi", "zeta"), self.parts()):
            w = p.nonzero_witness()
            if w is not None:
                return {"slot": name, **w}
        return None


class MorphismComplex:
    """delta_f and its matrices, with the three constituent complexes cached."""

    def __init__(self, f: MorphismSpec):
        self.f = f
        self.rep = pullback_representation(f)
        self.cA = CochainComplex(adjoint_representation(f.source))
        self.cB = CochainComplex(adjoint_representation(f.target))
        self.cAB = CochainComplex(self.rep)
        self._mats: dict[int, QMatrix] = {}

    # sizes

    def slot_dims(self, n: int) -> tuple[int, int, int]:
        return (cochain_dim(self.cA.rep, n), cochain_dim(self.cB.rep, n),
                cochain_dim(self.rep, n - 1) if n > 1 else 0)

    def cochain_dim(self, n: int) -> int:
        return sum(self.slot_dims(n))

    # cochains

    def zero(self, n: int) -> MorphismCochain:
        return self.from_vector(n, [0] * self.cochain_dim(n))

    def from_vector(self, n: int, vec: Sequence) -> MorphismCochain:
        a, b, c = self.slot_dims(n)
        if len(vec) != a + b + c:
            raise ValueError(f"vector length {len(vec)} != {a + b + c}")
        fam = self.f.source.family
        dA, dB = self.f.source.dim, self.f.target.dim
        phi = element_from_vector(fam, n, dA, vec[:a])
        psi = element_from_vector(fam, n, dB, vec[a:a + b])
        zeta = element_from_vector(fam, n - 1, dA, vec[a + b:], out_dim=dB) if n > 1 else None
        return MorphismCochain(n, phi, psi, zeta)

    def random(self, n: int, rng: np.random.Generator, values=(-2, -1, 0, 1, 2)) -> MorphismCochain:
        return self.from_vector(n, [int(x) for x in rng.choice(values, size=self.cochain_dim(n))])

    # the differential

    def push(self, phi: Element) -> np.ndarray:
        """f o phi, shapewise."""
        return map_output(phi.data, self.f.matrix)

    def pull(self, psi: Element) -> np.ndarray:
        """psi o f^{(x)n}, shapewise."""
        return map_inputs(psi.data, self.f.matrix, psi.arity)

    def delta(self, c: MorphismCochain) -> MorphismCochain:
        """(delta_A phi, delta_B psi, f o phi - psi o f^n - delta zeta)."""
        n = c.degree
        third = self.push(c.phi) - self.pull(c.psi)
        if c.zeta is not None:
            third = third - coboundary(self.rep, c.zeta).data
        fam = self.f.source.family
        return MorphismCochain(n + 1, coboundary(self.cA.rep, c.phi), coboundary(self.cB.rep, c.psi),
                               Element(fam, n, third))

    def matrix(self, n: int) -> QMatrix:
        if n not in self._mats:
            fam = self.f.source.family
            dA, dB = self.f.source.dim, self.f.target.dim
            bA = basis_batch(fam, n, (dA,) * n, dA)
            bB = basis_batch(fam, n, (dB,) * n, dB)
            F = Element(fam, n, self.push(bA)).columns()
            G = Element(fam, n, self.pull(bB)).columns().scale(-1)
            rows, cols = self.slot_dims(n + 1), self.slot_dims(n)
            grid = [[self.cA.matrix(n), None, None],
                    [None, self.cB.matrix(n), None],
                    [F, G, self.cAB.matrix(n - 1).scale(-1) if n > 1 else None]]
            if n == 1:
                grid = [row[:2] for row in grid]
                cols = cols[:2]
            self._mats[n] = QMatrix.block(grid, rows, cols)
        return self._mats[n]

    def dims(self, n: int) -> tuple[int, int, int]:
        if n < 1:
            raise ValueError("degree must be >= 1")
        z = self.cochain_dim(n) - linalg.rank(self.matrix(n))
        b = linalg.rank(self.matrix(n - 1)) if n > 1 else 0
        return z, b, z - b

    def solve(self, target: MorphismCochain) -> MorphismCochain | None:
        n = target.degree - 1
        x = linalg.solve(self.matrix(n), target.vector())
        return None if x is None else self.from_vector(n, x)

    def class_coordinates(self, cocycle: MorphismCochain) -> list[Fraction]:
        n = cocycle.degree
        cocycles = linalg.kernel_basis(self.matrix(n))
        bmat = self.matrix(n - 1) if n > 1 else QMatrix.zeros(self.cochain_dim(n), 0)
        boundary = [bmat.column(c) for c in range(bmat.cols)]
        zcols = [{r: v for r, v in enumerate(z) if v} for z in cocycles]
        length = self.cochain_dim(n)
        m = QMatrix(length, len(boundary) + len(zcols), boundary + zcols)
        created = {max(comb) for _, _, comb in m._reduce()[0]}
        reps = [z for k, z in enumerate(zcols) if len(boundary) + k in created]
        x = linalg.solve(QMatrix(length, len(boundary) + len(reps), boundary + reps), cocycle.vector())
        if x is None:
            raise ValueError("not a cocycle")
        return x[len(boundary):]


def delta_f(f: MorphismSpec, c: MorphismCochain) -> MorphismCochain:
    return MorphismComplex(f).delta(c)


def morphism_cohomology_dims(f: MorphismSpec, n: int) -> tuple[int, int, int]:
    return MorphismComplex(f).dims(n)


# ---------------------------------------------------------------------------
# deformations of morphisms


@dataclass(frozen=True, eq=False)
class MorphismDeformation:
    """(pi_{A,t}, pi_{B,t}, f_t) truncated at a common order; matrices are
    d_B x d_A, ``[out][in]``."""
    f: MorphismSpec
    defA: TruncatedDeformation
    defB: TruncatedDeformation
    fterms: tuple

    def __post_init__(self):
        fterms = tuple(as_matrix(m, self.f.target.dim, self.f.source.dim) for m in self.fterms)
        object.__setattr__(self, "fterms", fterms)
        if not (self.defA.order == self.defB.order == len(fterms) - 1):
            raise ValueError("orders of the three components differ")
        if not np.array_equal(fterms[0], self.f.matrix):
            raise ValueError("f_0 must equal the morphism")
        if self.defA.base != self.f.source or self.defB.base != self.f.target:
            raise ValueError("deformations must start at the source and target algebras")

    @classmethod
    def constant(cls, f: MorphismSpec, order: int) -> "MorphismDeformation":
        zero = np.zeros(f.matrix.shape, dtype=object)
        return cls(f, TruncatedDeformation.constant(f.source, order), TruncatedDeformation.constant(f.target, order),
                   (f.matrix,) + (zero,) * order)

    @property
    def order(self) -> int:
        return self.defA.order

    def linear_part(self, k: int = 1) -> MorphismCochain:
        fam = self.f.source.family
        arr = np.zeros((1, self.f.source.dim, self.f.target.dim), dtype=object)
        arr[0] = self.fterms[k].T
        return MorphismCochain(2, self.defA.terms[k], self.defB.terms[k], Element(fam, 1, arr))

    def extended(self, piA: Element, piB: Element, fmat) -> "MorphismDeformation":
        return MorphismDeformation(self.f, self.defA.extended(piA), self.defB.extended(piB),
                                   self.fterms + (fmat,))


def _convolution(md: MorphismDeformation, n: int, skip_top: bool = False) -> np.ndarray:
    """sum_{i+j=n} f_i(pi_{A,j}) - sum_{i+j+k=n} pi_{B,i}(f_j, f_k).

    With ``skip_top`` the terms containing an index equal to n are left out
    (this is theta(f) of the obstruction)."""
    N = md.order
    top = n if skip_top else n + 1
    shape = md.defA.terms[0].data.shape[:-1] + (md.f.target.dim,)
    acc = np.zeros(shape, dtype=object)
    for i in range(min(n, N) + 1):
        j = n - i
        if j > N or (skip_top and (i == n or j == n)):
            continue
        acc = acc + map_output(md.defA.terms[j].data, md.fterms[i])
    for i in range(min(n, N) + 1):
        if i >= top:
            continue
        for j in range(min(n - i, N) + 1):
            k = n - i - j
            if k > N or j >= top or k >= top:
                continue
            acc = acc - map_input(map_input(md.defB.terms[i].data, md.fterms[j], 1), md.fterms[k], 2)
    return acc


def is_morphism_deformation(md: MorphismDeformation, order: int | None = None) -> Check:
    k = md.order if order is None else order
    for name, d in (("A", md.defA), ("B", md.defB)):
        ok = is_deformation(d, k)
        if not ok:
            return Check(False, {"component": name, **ok.witness})
    fam = md.f.source.family
    for n in range(k + 1):
        w = Element(fam, 2, _convolution(md, n)).nonzero_witness()
        if w is not None:
            return Check(False, {"component": "f", "order": n, **w})
    return Check(True)


def theta_f(md: MorphismDeformation) -> Element:
    """theta(f) = sum_{i=1}^n f_i(pi_{A,n+1-i}) - sum_{i+j+k=n+1, all < n+1} pi_{B,i}(f_j, f_k)."""
    return Element(md.f.source.family, 2, _convolution(md, md.order + 1, skip_top=True))


def morphism_obstruction(md: MorphismDeformation, check: bool = True) -> MorphismCochain:
    """(Ob_A, Ob_B, -theta(f)) in C^3(f, f).

    The third slot carries a minus sign: with delta_A = -d_pi on C^2, the
    order-(n+1) equations read delta_f(pi_{A,n+1}, pi_{B,n+1}, f_{n+1}) =
    (Ob_A, Ob_B, -theta(f)), and that triple is the 3-cocycle.
    """
    if check:
        ok = is_morphism_deformation(md)
        if not ok:
            raise ValueError(f"not a morphism deformation to order {md.order}: {ok.witness}")
    obA = obstruction(md.defA, check=False)
    obB = obstruction(md.defB, check=False)
    return MorphismCochain(3, obA, obB, -theta_f(md))


def extend_morphism_deformation(md: MorphismDeformation, complex_: MorphismComplex | None = None
                                ) -> MorphismDeformation:
    """Solve delta_f(x) = Ob for the next coefficients, or raise Obstructed."""
    cx = complex_ or MorphismComplex(md.f)
    ob = morphism_obstruction(md)
    x = cx.solve(ob)
    if x is None:
        raise Obstructed(ob, md.order, cx.class_coordinates(ob))
    fmat = x.zeta.data[0].T.copy()
    return md.extended(x.phi, x.psi, fmat)


def apply_morphism_equivalence(md: MorphismDeformation, phiA: FormalAutomorphism,
                               phiB: FormalAutomorphism) -> MorphismDeformation:
    """(phiA . pi_A, phiB . pi_B, phiB^{-1} o f_t o phiA)."""
    N = md.order
    psiB = invert_automorphism(phiB).terms
    A = [t.data[0].T for t in phiA.terms]
    Binv = [t.data[0].T for t in psiB]
    fterms = []
    for n in range(N + 1):
        acc = np.zeros(md.f.matrix.shape, dtype=object)
        for a in range(n + 1):
            for b in range(n + 1 - a):
                acc = acc + Binv[a].dot(md.fterms[b]).dot(A[n - a - b])
        fterms.append(acc)
    return MorphismDeformation(md.f, apply_equivalence(phiA, md.defA), apply_equivalence(phiB, md.defB), fterms)
