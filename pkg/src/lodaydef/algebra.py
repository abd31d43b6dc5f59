"""Finite-dimensional Loday-type algebras given by structure constants.

Conventions
-----------
* ``pi.data[s, i, j, k]`` is the e_k-coordinate of pi(s; e_i, e_j).
* ``theta1[s, i, j, k]`` is the m_k-coordinate of theta_1(s; e_i, m_j) and
  ``theta2[s, j, i, k]`` the m_k-coordinate of theta_2(s; m_j, e_i).
* User-facing matrices are ``matrix[out][in]``: column ``i`` is the image of
  basis vector ``i``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence

import numpy as np

from .linalg import exact_array
from .operad import Check, Element, Operad, compose_blocks, zeros_array
from .shapes import get_family, _enumerate


# ---------------------------------------------------------------------------
# tensor helpers


def as_matrix(matrix, rows: int | None = None, cols: int | None = None) -> np.ndarray:
    arr = np.array([[_scalar(x) for x in row] for row in matrix], dtype=object)
    if arr.ndim != 2 and not (arr.size == 0):
        raise ValueError("expected a matrix")
    if rows is not None and cols is not None and arr.size == 0:
        return np.zeros((rows, cols), dtype=object)
    if (rows is not None and arr.shape[0] != rows) or (cols is not None and arr.shape[1] != cols):
        raise ValueError(f"expected a {rows}x{cols} matrix, got {arr.shape[0]}x{arr.shape[1] if arr.ndim == 2 else 0}")
    return arr


def identity_matrix(n: int) -> np.ndarray:
    out = np.zeros((n, n), dtype=object)
    for k in range(n):
        out[k, k] = 1
    return out


def map_output(arr: np.ndarray, M: np.ndarray) -> np.ndarray:
    """Post-compose the output axis with ``M`` (``M[out][in]``)."""
    return np.tensordot(arr, M, axes=([arr.ndim - 1], [1]))


def map_input(arr: np.ndarray, M: np.ndarray, axis: int) -> np.ndarray:
    """Pre-compose one input axis with ``M``: new[.., i, ..] = sum_k M[k][i] arr[.., k, ..]."""
    out = np.tensordot(arr, M, axes=([axis], [0]))
    return np.moveaxis(out, -1, axis)


def map_inputs(arr: np.ndarray, M: np.ndarray, n: int) -> np.ndarray:
    for l in range(n):
        arr = map_input(arr, M, arr.ndim - 1 - n + l)
    return arr


def _nonzero_witness(arr: np.ndarray, family: str, arity: int, label: str) -> dict | None:
    nz = np.argwhere(arr != 0)
    if len(nz) == 0:
        return None
    s, *inputs, _ = (int(x) for x in nz[0])
    shape = _enumerate(family, arity)[s]
    return {"identity": label, "shape": get_family(family).format(shape), "inputs": inputs,
            "difference": [str(Fraction(v)) for v in arr[(s, *inputs)]]}


# ---------------------------------------------------------------------------
# specs


@dataclass(frozen=True)
class AlgebraSpec:
    family: str
    dim: int
    pi: Element
    alpha: Element | None = None
    beta: Element | None = None

    def __post_init__(self):
        object.__setattr__(self, "family", get_family(self.family).name)
        object.__setattr__(self, "pi", Element(self.pi.family, self.pi.arity, exact_array(self.pi.data)))
        if self.pi.arity != 2 or self.pi.dim != self.dim or self.pi.family != self.family or self.pi.batch:
            raise ValueError("pi must be an arity-2 element on the algebra")

    @classmethod
    def from_products(cls, family: str, dim: int, products: Mapping, alpha=None, beta=None) -> "AlgebraSpec":
        """``products[shape][i][j]`` = coordinates of pi(shape; e_i, e_j).

        Shapes may be given as canonical strings or shape values; every shape
        of U_2 must be present.
        """
        fam = get_family(family)
        arr = zeros_array(fam.name, 2, (dim, dim), dim)
        shapes = _enumerate(fam.name, 2)
        given = {}
        for key, table in products.items():
            shape = fam.parse(key, 2) if isinstance(key, str) else key
            if shape not in shapes:
                raise ValueError(f"{key!r} is not a {fam.name} shape of U_2")
            given[shape] = table
        for s, shape in enumerate(shapes):
            if shape not in given:
                raise ValueError(f"missing product for shape {fam.format(shape)}")
            table = given[shape]
            if len(table) != dim or any(len(row) != dim for row in table):
                raise ValueError(f"product table for {fam.format(shape)} must be {dim}x{dim}")
            for i in range(dim):
                for j in range(dim):
                    vec = table[i][j]
                    if len(vec) != dim:
                        raise ValueError(f"product {fam.format(shape)}(e{i}, e{j}) needs {dim} coordinates")
                    for k in range(dim):
                        arr[s, i, j, k] = _scalar(vec[k])
        op = Operad(fam.name, dim)
        a = op.from_matrix(alpha) if alpha is not None else None
        b = op.from_matrix(beta) if beta is not None else None
        return cls(fam.name, dim, Element(fam.name, 2, arr), a, b)

    @property
    def twisted(self) -> bool:
        return self.alpha is not None

    def operad(self) -> Operad:
        return Operad(self.family, self.dim, self.alpha, self.beta)

    def shapes(self) -> list:
        return list(_enumerate(self.family, 2))

    def product(self, shape, x: Sequence, y: Sequence) -> list:
        """pi(shape; x, y) for coordinate vectors x, y."""
        fam = get_family(self.family)
        if isinstance(shape, str):
            shape = fam.parse(shape, 2)
        block = self.pi.data[fam.index(2, shape)]
        return [sum((Fraction(x[i]) * y[j] * block[i, j, k] for i in range(self.dim) for j in range(self.dim)),
                    Fraction(0)) for k in range(self.dim)]

    def products(self) -> dict:
        fam = get_family(self.family)
        return {fam.format(s): [[[Fraction(v) for v in self.pi.data[k, i, j]] for j in range(self.dim)]
                                for i in range(self.dim)]
                for k, s in enumerate(self.shapes())}

    def with_pi(self, pi: Element) -> "AlgebraSpec":
        return AlgebraSpec(self.family, self.dim, pi, self.alpha, self.beta)

    def untwisted(self) -> "AlgebraSpec":
        return AlgebraSpec(self.family, self.dim, self.pi)


def _scalar(v):
    from .linalg import parse_rational
    x = parse_rational(v)
    return int(x) if x.denominator == 1 else x


def zero_algebra(family: str, dim: int) -> AlgebraSpec:
    return AlgebraSpec(get_family(family).name, dim, Operad(family, dim).zero(2))


def validate_algebra(spec: AlgebraSpec) -> Check:
    """pi o pi = 0 in the (possibly twisted) operad."""
    return spec.operad().is_multiplication(spec.pi)


@dataclass(frozen=True, eq=False)
class RepresentationSpec:
    base: AlgebraSpec
    mdim: int
    theta1: np.ndarray  # (U_2, d, m, m)
    theta2: np.ndarray  # (U_2, m, d, m)

    def __post_init__(self):
        n2 = len(_enumerate(self.base.family, 2))
        d, m = self.base.dim, self.mdim
        if self.theta1.shape != (n2, d, m, m) or self.theta2.shape != (n2, m, d, m):
            raise ValueError("representation tensors have the wrong shape")
        object.__setattr__(self, "theta1", exact_array(self.theta1))
        object.__setattr__(self, "theta2", exact_array(self.theta2))

    @classmethod
    def from_tables(cls, base: AlgebraSpec, mdim: int, theta1: Mapping, theta2: Mapping) -> "RepresentationSpec":
        fam = get_family(base.family)
        d, m = base.dim, mdim
        t1 = zeros_array(fam.name, 2, (d, m), m)
        t2 = zeros_array(fam.name, 2, (m, d), m)
        for arr, table, dims, name in ((t1, theta1, (d, m), "theta1"), (t2, theta2, (m, d), "theta2")):
            seen = set()
            for key, rows in table.items():
                shape = fam.parse(key, 2) if isinstance(key, str) else key
                s = fam.index(2, shape)
                seen.add(s)
                if len(rows) != dims[0] or any(len(r) != dims[1] for r in rows):
                    raise ValueError(f"{name}[{fam.format(shape)}] must be {dims[0]}x{dims[1]}")
                for i in range(dims[0]):
                    for j in range(dims[1]):
                        if len(rows[i][j]) != m:
                            raise ValueError(f"{name}[{fam.format(shape)}][{i}][{j}] needs {m} coordinates")
                        for k in range(m):
                            arr[s, i, j, k] = _scalar(rows[i][j][k])
            if len(seen) != arr.shape[0]:
                raise ValueError(f"{name} is missing shapes of U_2")
        return cls(base, mdim, t1, t2)

    def theta1_element(self) -> Element:
        return Element(self.base.family, 2, self.theta1)

    def theta2_element(self) -> Element:
        return Element(self.base.family, 2, self.theta2)


def adjoint_representation(spec: AlgebraSpec) -> RepresentationSpec:
    return RepresentationSpec(spec, spec.dim, spec.pi.data.copy(), spec.pi.data.copy())


def trivial_representation(spec: AlgebraSpec, m: int) -> RepresentationSpec:
    fam = spec.family
    return RepresentationSpec(spec, m, zeros_array(fam, 2, (spec.dim, m), m), zeros_array(fam, 2, (m, spec.dim), m))


def representation_defects(rep: RepresentationSpec) -> list[tuple[str, np.ndarray]]:
    """The three families of representation identities, as LHS - RHS over U_3."""
    fam = rep.base.family
    pi = rep.base.pi.data
    t1, t2 = rep.theta1, rep.theta2
    # theta1(R0(2;1,2)y; a, theta1(R2 y; b, m)) = theta1(R0(2;2,1)y; pi(R1 y; a, b), m)
    left_action = compose_blocks(fam, t1, 2, t1, 2, 2) - compose_blocks(fam, t1, 2, pi, 2, 1)
    # theta2(R0(2;1,2)y; m, pi(R2 y; a, b)) = theta2(R0(2;2,1)y; theta2(R1 y; m, a), b)
    right_action = compose_blocks(fam, t2, 2, pi, 2, 2) - compose_blocks(fam, t2, 2, t2, 2, 1)
    # theta1(R0(2;1,2)y; a, theta2(R2 y; m, b)) = theta2(R0(2;2,1)y; theta1(R1 y; a, m), b)
    middle = compose_blocks(fam, t1, 2, t2, 2, 2) - compose_blocks(fam, t2, 2, t1, 2, 1)
    return [("(a,b,m)", left_action), ("(m,a,b)", right_action), ("(a,m,b)", middle)]


def check_representation(rep: RepresentationSpec) -> Check:
    """All 3 * #U_3 identities, on basis elements."""
    if rep.base.twisted:
        raise ValueError("representations are defined for untwisted algebras only")
    for label, defect in representation_defects(rep):
        w = _nonzero_witness(defect, rep.base.family, 3, label)
        if w is not None:
            return Check(False, w)
    return Check(True)


def semidirect_product(spec: AlgebraSpec, rep: RepresentationSpec, check: bool = True) -> AlgebraSpec:
    """Algebra on A + M with pi((a,m),(b,n)) = (pi(a,b), theta1(a,n) + theta2(m,b))."""
    if rep.base is not spec and rep.base != spec:
        raise ValueError("representation belongs to a different algebra")
    if check:
        ok = check_representation(rep)
        if not ok:
            raise ValueError(f"invalid representation: {ok.witness}")
    d, m = spec.dim, rep.mdim
    D = d + m
    arr = zeros_array(spec.family, 2, (D, D), D)
    arr[:, :d, :d, :d] = spec.pi.data
    arr[:, :d, d:, d:] = rep.theta1
    arr[:, d:, :d, d:] = rep.theta2
    return AlgebraSpec(spec.family, D, Element(spec.family, 2, arr))


# ---------------------------------------------------------------------------
# morphisms


@dataclass(frozen=True, eq=False)
class MorphismSpec:
    source: AlgebraSpec
    target: AlgebraSpec
    matrix: np.ndarray  # d_B x d_A

    def __post_init__(self):
        if self.source.family != self.target.family:
            raise ValueError("morphisms connect algebras of the same family")
        object.__setattr__(self, "matrix", as_matrix(self.matrix, self.target.dim, self.source.dim))

    def apply(self, x: Sequence) -> list:
        return [sum((Fraction(self.matrix[k, i]) * x[i] for i in range(self.source.dim)), Fraction(0))
                for k in range(self.target.dim)]


def check_morphism(f: MorphismSpec) -> Check:
    """f(pi_A(r; a, a')) = pi_B(r; f a, f a') on all shapes and basis pairs."""
    lhs = map_output(f.source.pi.data, f.matrix)
    rhs = map_inputs(f.target.pi.data, f.matrix, 2)
    w = _nonzero_witness(lhs - rhs, f.source.family, 2, "morphism")
    return Check(w is None, w)


def identity_morphism(spec: AlgebraSpec) -> MorphismSpec:
    return MorphismSpec(spec, spec, identity_matrix(spec.dim))


# ---------------------------------------------------------------------------
# Rota-Baxter constructions


@dataclass(frozen=True, eq=False)
class RotaBaxterSpec:
    algebra: AlgebraSpec
    operator: np.ndarray
    weight: Fraction

    def __post_init__(self):
        if self.algebra.family != "associative":
            raise ValueError("Rota-Baxter operators live on associative algebras")
        object.__setattr__(self, "operator", as_matrix(self.operator, self.algebra.dim, self.algebra.dim))
        object.__setattr__(self, "weight", Fraction(self.weight))


def rota_baxter_check(rb: RotaBaxterSpec) -> Check:
    """mu(Rx, Ry) = R(mu(x, Ry) + mu(Rx, y) + lambda mu(x, y)) on basis pairs."""
    mu = rb.algebra.pi.data
    R = rb.operator
    lhs = map_inputs(mu, R, 2)
    inner = map_input(mu, R, 2) + map_input(mu, R, 1) + mu * rb.weight
    rhs = map_output(inner, R)
    w = _nonzero_witness(lhs - rhs, "associative", 2, "rota-baxter")
    return Check(w is None, w)


def rota_baxter_to_tridendriform(rb: RotaBaxterSpec, check: bool = True) -> AlgebraSpec:
    """x < y = mu(x, Ry), x > y = mu(Rx, y), x . y = lambda mu(x, y)."""
    if check:
        ok = rota_baxter_check(rb)
        if not ok:
            raise ValueError(f"not a Rota-Baxter operator: {ok.witness}")
    mu = rb.algebra.pi.data[0]
    R = rb.operator
    d = rb.algebra.dim
    fam = get_family("tridendriform")
    arr = zeros_array("tridendriform", 2, (d, d), d)
    arr[fam.index(2, (1,))] = map_input(mu, R, 1)
    arr[fam.index(2, (2,))] = map_input(mu, R, 0)
    arr[fam.index(2, (1, 2))] = mu * rb.weight
    return AlgebraSpec("tridendriform", d, Element("tridendriform", 2, arr))


def tridendriform_to_dendriform(spec: AlgebraSpec) -> AlgebraSpec:
    """x <' y = x < y + x . y and x >' y = x > y."""
    if spec.family != "tridendriform":
        raise ValueError("expected a tridendriform algebra")
    tri = get_family("tridendriform")
    p = spec.pi.data
    left, right, mid = p[tri.index(2, (1,))], p[tri.index(2, (2,))], p[tri.index(2, (1, 2))]
    arr = zeros_array("dendriform", 2, (spec.dim, spec.dim), spec.dim)
    den = get_family("dendriform")
    arr[den.index(2, 1)] = left + mid
    arr[den.index(2, 2)] = right
    return AlgebraSpec("dendriform", spec.dim, Element("dendriform", 2, arr))


def _sum_to_associative(spec: AlgebraSpec, family: str) -> AlgebraSpec:
    if spec.family != family:
        raise ValueError(f"expected a {family} algebra")
    arr = spec.pi.data.sum(axis=0)[None]
    return AlgebraSpec("associative", spec.dim, Element("associative", 2, arr))


def dendriform_to_associative(spec: AlgebraSpec) -> AlgebraSpec:
    """a * b = a < b + a > b."""
    return _sum_to_associative(spec, "dendriform")


def tridendriform_to_associative(spec: AlgebraSpec) -> AlgebraSpec:
    """a * b = a < b + a > b + a . b."""
    return _sum_to_associative(spec, "tridendriform")


def associative_to_family(spec: AlgebraSpec, family: str) -> AlgebraSpec:
    """Degenerate embedding: every operation equals the associative product
    (meaningful for dialgebra and trialgebra)."""
    if spec.family != "associative":
        raise ValueError("expected an associative algebra")
    n2 = len(_enumerate(get_family(family).name, 2))
    arr = np.repeat(spec.pi.data, n2, axis=0)
    return AlgebraSpec(family, spec.dim, Element(get_family(family).name, 2, arr))


# ---------------------------------------------------------------------------
# brute-force search


def search_one_dimensional(family: str, values: Sequence[int] = (-1, 0, 1)) -> list[dict]:
    """All 1-dimensional multiplications with structure constants in ``values``.

    Works directly with the scalar form of pi o_1 pi = pi o_2 pi at d = 1,
    independently of the tensor machinery: for each y in U_3,
    pi[R_0 y] * sum(pi[R_1 y]) == pi[R_0' y] * sum(pi[R_2' y]).
    """
    fam = get_family(family)
    u2 = fam.enumerate(2)
    u3 = fam.enumerate(3)
    idx = {s: k for k, s in enumerate(u2)}
    eqs = []
    for y in u3:
        left = (idx[fam.r0(2, 2, 1, y)], [(idx[s], c) for s, c in fam.ri(2, 2, 1, y)])
        right = (idx[fam.r0(2, 2, 2, y)], [(idx[s], c) for s, c in fam.ri(2, 2, 2, y)])
        eqs.append((left, right))
    found = []
    for vals in itertools.product(values, repeat=len(u2)):
        ok = True
        for (o1, t1), (o2, t2) in eqs:
            if vals[o1] * sum(c * vals[s] for s, c in t1) != vals[o2] * sum(c * vals[s] for s, c in t2):
                ok = False
                break
        if ok:
            found.append({fam.format(s): vals[k] for k, s in enumerate(u2)})
    return found
