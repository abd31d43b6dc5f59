"""Multiplicative operad calculus for O(n) = Hom(K[U_n] (x) A^{(x)n}, A).

An :class:`Element` stores its coefficients as a numpy object array of
exact rationals with axes ``(shape, input_1, ..., input_n, output)``.  A
leading *batch* axis is allowed: a batched element represents a whole list
of elements at once (typically a basis), which is how linear maps such as
``d_pi`` are turned into matrices without a Python loop over columns.

All compositions go through :func:`compose_blocks`, the literal form of the
Loday-type partial composition

    (f o_i g)(r; a) = f(R_0 r; a_1, .., g(R_i r; a_i, .., a_{i+n-1}), .., a_{m+n-1}).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import NamedTuple, Sequence

import numpy as np

from . import linalg
from .linalg import QMatrix
from .shapes import get_family, routing_table, _enumerate


class Check(NamedTuple):
    """Outcome of an identity check; falsy when the identity fails."""
    ok: bool
    witness: dict | None = None

    def __bool__(self):
        return self.ok


# ---------------------------------------------------------------------------
# raw tensor composition


def compose_blocks(family: str, F: np.ndarray, m: int, G: np.ndarray, n: int, i: int,
                   bf: int = 0, bg: int = 0) -> np.ndarray:
    """Partial composition of raw coefficient arrays.

    ``F`` has axes ``[batch]*bf + (shape, in_1..in_m, out)`` and ``G`` has
    ``[batch]*bg + (shape, in_1..in_n, out)``; the output dimension of ``G``
    must equal the dimension of input slot ``i`` of ``F``.  The result has
    axes ``[F batch] + [G batch] + (shape, f_in_<i, g_in, f_in_>i, f_out)``.
    Input dimensions may differ slot by slot (used for module-valued
    cochains).
    """
    if not 1 <= i <= m:
        raise IndexError(f"slot {i} out of range 1..{m}")
    f_in = F.shape[bf + 1: bf + 1 + m]
    g_in = G.shape[bg + 1: bg + 1 + n]
    if G.shape[-1] != f_in[i - 1]:
        raise ValueError(f"output dimension {G.shape[-1]} does not match slot {i} of dimension {f_in[i - 1]}")
    fam = get_family(family).name
    table = routing_table(fam, m, n, i)
    n_out = len(_enumerate(fam, m + n - 1))
    res_shape = F.shape[:bf] + G.shape[:bg] + (n_out,) + f_in[:i - 1] + g_in + f_in[i:] + (F.shape[-1],)
    result = np.zeros(res_shape, dtype=object)

    # axis permutation from tensordot layout to result layout
    fr = bf + m  # axes kept from F: batch, m-1 inputs, out
    perm = (list(range(bf)) + list(range(fr, fr + bg)) + list(range(bf, bf + i - 1))
            + list(range(fr + bg, fr + bg + n)) + list(range(bf + i - 1, bf + m - 1)) + [bf + m - 1])

    g_total = None
    g_cache: dict = {}
    block_cache: dict = {}
    lead = (slice(None),) * (bf + bg)
    n_shapes_g = G.shape[bg]
    for r, (out_idx, terms) in enumerate(table):
        key = (out_idx, terms)
        block = block_cache.get(key)
        if block is None:
            gsum = g_cache.get(terms)
            if gsum is None:
                if len(terms) == n_shapes_g and all(c == 1 for _, c in terms):
                    if g_total is None:
                        g_total = G.sum(axis=bg)
                    gsum = g_total
                else:
                    gsum = None
                    for s, c in terms:
                        part = np.take(G, s, axis=bg)
                        if c != 1:
                            part = part * c
                        gsum = part if gsum is None else gsum + part
                g_cache[terms] = gsum
            fblock = np.take(F, out_idx, axis=bf)
            block = np.tensordot(fblock, gsum, axes=([bf + i - 1], [bg + n]))
            block = np.transpose(block, perm)
            block_cache[key] = block
        result[lead + (r,)] = block
    return result


# ---------------------------------------------------------------------------
# elements


@dataclass(frozen=True, eq=False)
class Element:
    """Element of O(n) (or a module-valued cochain when the output dimension
    differs from the input dimension)."""
    family: str
    arity: int
    data: np.ndarray = field(repr=False)

    def __post_init__(self):
        if self.arity < 1:
            raise ValueError("arity must be >= 1")
        expected = len(_enumerate(self.family, self.arity))
        if self.data.ndim < self.arity + 2:
            raise ValueError("coefficient array has too few axes")
        if self.data.shape[self.batch] != expected:
            raise ValueError(f"expected {expected} shapes for arity {self.arity}, got {self.data.shape[self.batch]}")

    @property
    def batch(self) -> int:
        return self.data.ndim - self.arity - 2

    @property
    def degree(self) -> int:
        return self.arity - 1

    @property
    def in_dims(self) -> tuple:
        return self.data.shape[-1 - self.arity:-1]

    @property
    def out_dim(self) -> int:
        return self.data.shape[-1]

    @property
    def dim(self) -> int:
        return self.data.shape[-1]

    def shapes(self) -> list:
        return list(_enumerate(self.family, self.arity))

    # arithmetic

    def _like(self, data):
        return Element(self.family, self.arity, data)

    def _check_compatible(self, other):
        if not isinstance(other, Element):
            raise TypeError(f"expected Element, got {type(other).__name__}")
        if other.family != self.family or other.arity != self.arity:
            raise ValueError(f"incompatible elements: {self.family}/{self.arity} vs {other.family}/{other.arity}")
        if other.in_dims != self.in_dims or other.out_dim != self.out_dim:
            raise ValueError("dimension mismatch")

    def __add__(self, other):
        self._check_compatible(other)
        return self._like(self.data + other.data)

    def __sub__(self, other):
        self._check_compatible(other)
        return self._like(self.data - other.data)

    def __neg__(self):
        return self._like(-self.data)

    def __mul__(self, scalar):
        if isinstance(scalar, Element):
            raise TypeError("use cup() or circle() to multiply elements")
        return self._like(self.data * linalg.exact(_as_scalar(scalar)))

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, Element):
            return NotImplemented
        return (self.family == other.family and self.arity == other.arity
                and self.data.shape == other.data.shape and bool(np.all(self.data == other.data)))

    def __hash__(self):
        return hash((self.family, self.arity, self.data.shape, tuple(Fraction(x) for x in self.data.ravel())))

    def is_zero(self) -> bool:
        return not self.data.any()

    def vector(self) -> list:
        if self.batch:
            raise ValueError("batched element has no single coordinate vector")
        return [Fraction(x) for x in self.data.ravel()]

    def nonzero_witness(self) -> dict | None:
        """First nonzero coordinate block, reported as shape + input basis indices."""
        if self.batch:
            raise ValueError("witness of a batched element")
        nz = np.argwhere(self.data != 0)
        if len(nz) == 0:
            return None
        s, *inputs, _ = (int(x) for x in nz[0])
        fam = get_family(self.family)
        shape = _enumerate(self.family, self.arity)[s]
        value = [Fraction(x) for x in self.data[(s, *inputs)]]
        return {"shape": fam.format(shape), "inputs": inputs, "value": [str(v) for v in value]}

    def unbatch(self) -> list["Element"]:
        if self.batch != 1:
            raise ValueError("expected exactly one batch axis")
        return [self._like(self.data[k]) for k in range(self.data.shape[0])]

    def columns(self) -> QMatrix:
        """Matrix whose columns are the coordinate vectors of a batched element."""
        if self.batch != 1:
            raise ValueError("expected exactly one batch axis")
        flat = self.data.reshape(self.data.shape[0], -1)
        cols = [{int(r): Fraction(row[r]) for r in np.flatnonzero(row)} for row in flat]
        return QMatrix(flat.shape[1], flat.shape[0], cols)

    def __repr__(self):
        b = f", batch={self.data.shape[0]}" if self.batch else ""
        return f"Element({self.family}, arity={self.arity}, in={self.in_dims}, out={self.out_dim}{b})"

    def __str__(self):
        if self.batch:
            return repr(self)
        fam = get_family(self.family)
        lines = []
        for s, shape in enumerate(self.shapes()):
            for idx in itertools.product(*(range(k) for k in self.in_dims)):
                vec = self.data[(s, *idx)]
                if any(vec):
                    coords = " ".join(str(Fraction(v)) for v in vec)
                    lines.append(f"{fam.format(shape)} {list(idx)} -> [{coords}]")
        return "\n".join(lines) if lines else "0"


def _as_scalar(x):
    if isinstance(x, (int, Fraction)) and not isinstance(x, bool):
        return x
    if isinstance(x, str):
        return linalg.parse_rational(x)
    raise TypeError(f"scalar must be int or Fraction, got {type(x).__name__}")


def zeros_array(family: str, arity: int, in_dims: Sequence[int], out_dim: int, batch: Sequence[int] = ()) -> np.ndarray:
    n_shapes = len(_enumerate(get_family(family).name, arity))
    return np.zeros(tuple(batch) + (n_shapes,) + tuple(in_dims) + (out_dim,), dtype=object)


def element_from_vector(family: str, arity: int, dim: int, vector: Sequence, out_dim: int | None = None,
                        in_dims: Sequence[int] | None = None) -> Element:
    out_dim = dim if out_dim is None else out_dim
    in_dims = (dim,) * arity if in_dims is None else tuple(in_dims)
    arr = zeros_array(family, arity, in_dims, out_dim)
    if len(vector) != arr.size:
        raise ValueError(f"vector length {len(vector)} != {arr.size}")
    flat = np.array([linalg.exact(_as_scalar(v)) for v in vector], dtype=object)
    return Element(get_family(family).name, arity, flat.reshape(arr.shape))


def basis_batch(family: str, arity: int, in_dims: Sequence[int], out_dim: int) -> Element:
    """All standard basis cochains at once (batch axis first)."""
    fam = get_family(family).name
    size = zeros_array(fam, arity, in_dims, out_dim).size
    eye = np.zeros((size, size), dtype=object)
    for k in range(size):
        eye[k, k] = 1
    shape = (size,) + zeros_array(fam, arity, in_dims, out_dim).shape
    return Element(fam, arity, eye.reshape(shape))


def raw_partial_compose(f: Element, g: Element, i: int) -> Element:
    if f.family != g.family:
        raise ValueError(f"family mismatch: {f.family} vs {g.family}")
    if not 1 <= i <= f.arity:
        raise IndexError(f"composition slot {i} out of range 1..{f.arity}")
    data = compose_blocks(f.family, f.data, f.arity, g.data, g.arity, i, f.batch, g.batch)
    return Element(f.family, f.arity + g.arity - 1, data)


# ---------------------------------------------------------------------------
# operads


@dataclass(frozen=True)
class Operad:
    """The operad O for a shape family on a ``dim``-dimensional space.

    With ``alpha``/``beta`` set, compositions are the twisted ones of
    O_{alpha,beta}; every derived operation (braces, circle product, d_pi,
    ...) follows the chosen composition rule.
    """
    family: str
    dim: int
    alpha: Element | None = None
    beta: Element | None = None

    def __post_init__(self):
        object.__setattr__(self, "family", get_family(self.family).name)
        if self.dim < 1:
            raise ValueError("dimension must be >= 1")
        if (self.alpha is None) != (self.beta is None):
            raise ValueError("alpha and beta must be given together")
        for t in (self.alpha, self.beta):
            if t is not None and (t.arity != 1 or t.dim != self.dim or t.family != self.family):
                raise ValueError("twisting maps must be arity-1 elements of the same operad")

    @property
    def twisted(self) -> bool:
        return self.alpha is not None

    def untwisted(self) -> "Operad":
        return Operad(self.family, self.dim)

    # constructors

    def n_shapes(self, n: int) -> int:
        return len(_enumerate(self.family, n))

    def space_dim(self, n: int) -> int:
        return self.n_shapes(n) * self.dim ** (n + 1)

    def zero(self, n: int) -> Element:
        return Element(self.family, n, zeros_array(self.family, n, (self.dim,) * n, self.dim))

    def identity(self) -> Element:
        arr = zeros_array(self.family, 1, (self.dim,), self.dim)
        for k in range(self.dim):
            arr[0, k, k] = 1
        return Element(self.family, 1, arr)

    def from_matrix(self, matrix) -> Element:
        """Arity-1 element from a d x d matrix, ``matrix[out][in]``."""
        mat = [[linalg.exact(_as_scalar(x)) for x in row] for row in matrix]
        if len(mat) != self.dim or any(len(row) != self.dim for row in mat):
            raise ValueError(f"expected a {self.dim}x{self.dim} matrix")
        arr = zeros_array(self.family, 1, (self.dim,), self.dim)
        for o in range(self.dim):
            for i in range(self.dim):
                arr[0, i, o] = mat[o][i]
        return Element(self.family, 1, arr)

    def from_vector(self, n: int, vector: Sequence) -> Element:
        return element_from_vector(self.family, n, self.dim, vector)

    def basis(self, n: int) -> Element:
        return basis_batch(self.family, n, (self.dim,) * n, self.dim)

    def random(self, n: int, rng: np.random.Generator, values=(-2, -1, 0, 1, 2)) -> Element:
        shape = zeros_array(self.family, n, (self.dim,) * n, self.dim).shape
        arr = np.array(rng.choice(values, size=shape), dtype=object)
        arr = np.vectorize(int, otypes=[object])(arr)
        return Element(self.family, n, arr)

    def _check(self, *elements):
        for e in elements:
            if not isinstance(e, Element):
                raise TypeError(f"expected Element, got {type(e).__name__}")
            if e.family != self.family or e.out_dim != self.dim or any(k != self.dim for k in e.in_dims):
                raise ValueError(f"{e!r} does not belong to {self}")

    # compositions

    def power(self, phi: Element, k: int) -> Element:
        """k-fold composite of an arity-1 element (phi^0 = id)."""
        if phi.arity != 1:
            raise ValueError("powers are defined for arity-1 elements")
        out = self.identity()
        for _ in range(k):
            out = raw_partial_compose(phi, out, 1)
        return out

    @cached_property
    def _twist_powers(self):
        return {}

    def _twist_power(self, which: str, k: int) -> Element:
        key = (which, k)
        cache = self._twist_powers
        if key not in cache:
            cache[key] = self.power(self.alpha if which == "a" else self.beta, k)
        return cache[key]

    def partial_compose(self, f: Element, g: Element, i: int) -> Element:
        self._check(f, g)
        if not 1 <= i <= f.arity:
            raise IndexError(f"composition slot {i} out of range 1..{f.arity}")
        if not self.twisted or g.arity == 1:
            return raw_partial_compose(f, g, i)
        a = self._twist_power("a", g.arity - 1)
        b = self._twist_power("b", g.arity - 1)
        h = f
        for slot in range(f.arity, 0, -1):
            x = g if slot == i else (a if slot < i else b)
            h = raw_partial_compose(h, x, slot)
        return h

    def gamma(self, f: Element, gs: Sequence[Element]) -> Element:
        """Full composition as the right-to-left fold of partial compositions."""
        if len(gs) != f.arity:
            raise ValueError(f"gamma needs {f.arity} arguments, got {len(gs)}")
        h = f
        for k in range(f.arity, 0, -1):
            h = self.partial_compose(h, gs[k - 1], k)
        return h

    def brace(self, f: Element, gs: Sequence[Element]) -> Element:
        """{f}{g_1,..,g_k}: signed sum over order-preserving substitutions.

        The sign of a term is sum_p |g_p| * (inputs in front of g_p), where the
        inputs in front of g_p number (position_p - 1) + sum_{l<p} |g_l|.
        """
        self._check(f, *gs)
        k = len(gs)
        if k == 0:
            return f
        out_arity = f.arity + sum(g.degree for g in gs)
        if k > f.arity:
            return self.zero(out_arity)
        total = None
        for positions in itertools.combinations(range(1, f.arity + 1), k):
            eps = 0
            shift = 0
            for g, pos in zip(gs, positions):
                eps += g.degree * (pos - 1 + shift)
                shift += g.degree
            h = f
            for g, pos in reversed(list(zip(gs, positions))):
                h = self.partial_compose(h, g, pos)
            term = -h if eps % 2 else h
            total = term if total is None else total + term
        return total

    def circle(self, f: Element, g: Element) -> Element:
        self._check(f, g)
        total = None
        for i in range(1, f.arity + 1):
            term = self.partial_compose(f, g, i)
            if ((i - 1) * g.degree) % 2:
                term = -term
            total = term if total is None else total + term
        return total

    def lie_bracket(self, f: Element, g: Element) -> Element:
        fg = self.circle(f, g)
        gf = self.circle(g, f)
        return fg + gf if (f.degree * g.degree) % 2 else fg - gf

    def cup(self, pi: Element, f: Element, g: Element) -> Element:
        b = self.brace(pi, [f, g])
        return b if (f.degree + 1) % 2 == 0 else -b

    def differential(self, pi: Element, f: Element) -> Element:
        a = self.circle(pi, f)
        b = self.circle(f, pi)
        return a - b if f.degree % 2 == 0 else a + b

    def is_multiplication(self, pi: Element) -> Check:
        if pi.arity != 2:
            raise ValueError("a multiplication has arity 2")
        sq = self.circle(pi, pi)
        w = sq.nonzero_witness()
        return Check(w is None, w)

    def __repr__(self):
        tw = ", twisted" if self.twisted else ""
        return f"Operad({self.family}, dim={self.dim}{tw})"


# ---------------------------------------------------------------------------
# untwisted functional interface


def _operad_of(e: Element) -> Operad:
    return Operad(e.family, e.dim)


def partial_compose(f: Element, g: Element, i: int) -> Element:
    return _operad_of(f).partial_compose(f, g, i)


def gamma_compose(f: Element, gs: Sequence[Element]) -> Element:
    return _operad_of(f).gamma(f, gs)


def brace(f: Element, gs: Sequence[Element]) -> Element:
    return _operad_of(f).brace(f, gs)


def circle(f: Element, g: Element) -> Element:
    return _operad_of(f).circle(f, g)


def lie_bracket(f: Element, g: Element) -> Element:
    return _operad_of(f).lie_bracket(f, g)


def cup(pi: Element, f: Element, g: Element) -> Element:
    return _operad_of(pi).cup(pi, f, g)


def differential(pi: Element, f: Element) -> Element:
    return _operad_of(pi).differential(pi, f)


def is_multiplication(pi: Element) -> Check:
    return _operad_of(pi).is_multiplication(pi)


# ---------------------------------------------------------------------------
# axiom checks


@dataclass
class AxiomReport:
    checked: int = 0
    violations: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def __bool__(self):
        return self.ok


def check_operad_axioms(operad: Operad, sample: Sequence[tuple[Element, Element, Element]]) -> AxiomReport:
    """Sequential, parallel and unit axioms on each (f, g, h) triple."""
    report = AxiomReport()
    pc = operad.partial_compose
    ident = operad.identity()
    for f, g, h in sample:
        m, n = f.arity, g.arity
        for i in range(1, m + 1):
            fg = pc(f, g, i)
            for j in range(1, n + 1):
                report.checked += 1
                if pc(fg, h, i + j - 1) != pc(f, pc(g, h, j), i):
                    report.violations.append(f"sequential: arities {m},{n},{h.arity} i={i} j={j}")
            for j in range(i + 1, m + 1):
                report.checked += 1
                if pc(fg, h, j + n - 1) != pc(pc(f, h, j), g, i):
                    report.violations.append(f"parallel: arities {m},{n},{h.arity} i={i} j={j}")
        for e in (f, g, h):
            report.checked += 1
            if pc(ident, e, 1) != e or any(pc(e, ident, k) != e for k in range(1, e.arity + 1)):
                report.violations.append(f"unit: arity {e.arity}")
    return report


# ---------------------------------------------------------------------------
# the complex (O, d_pi)


class OperadComplex:
    """Cochain complex (O(n), d_pi), optionally restricted to the twisted
    subspaces O_{alpha,beta}(n).  Matrices are built once per degree."""

    def __init__(self, operad: Operad, pi: Element):
        operad._check(pi)
        self.operad = operad
        self.pi = pi
        self._d: dict[int, QMatrix] = {}
        self._sub: dict[int, QMatrix | None] = {}
        self._restricted: dict[int, QMatrix] = {}

    def d(self, f: Element) -> Element:
        return self.operad.differential(self.pi, f)

    def d_matrix(self, n: int) -> QMatrix:
        """Matrix of d_pi: O(n) -> O(n+1) in the canonical coordinates."""
        if n not in self._d:
            self._d[n] = self.d(self.operad.basis(n)).columns()
        return self._d[n]

    def subspace(self, n: int) -> QMatrix | None:
        """Basis (as columns) of O_{alpha,beta}(n), or None when untwisted."""
        if not self.operad.twisted:
            return None
        if n not in self._sub:
            from .twisted import twisted_subspace_basis
            self._sub[n] = twisted_subspace_basis(self.operad, n)
        return self._sub[n]

    def _restricted_d(self, n: int) -> QMatrix:
        if n not in self._restricted:
            sub = self.subspace(n)
            d = self.d_matrix(n)
            self._restricted[n] = d if sub is None else d.matmul(sub)
        return self._restricted[n]

    def cochain_dim(self, n: int) -> int:
        sub = self.subspace(n)
        return self.operad.space_dim(n) if sub is None else sub.cols

    def dims(self, n: int) -> tuple[int, int, int]:
        """(dim Z^n, dim B^n, dim H^n); the complex starts in degree 1."""
        if n < 1:
            raise ValueError("degree must be >= 1")
        z = self.cochain_dim(n) - linalg.rank(self._restricted_d(n))
        b = linalg.rank(self._restricted_d(n - 1)) if n > 1 else 0
        return z, b, z - b

    def cocycle_basis(self, n: int) -> list[Element]:
        sub = self.subspace(n)
        out = []
        for v in linalg.kernel_basis(self._restricted_d(n)):
            if sub is not None:
                v = sub.matvec(v)
            out.append(self.operad.from_vector(n, v))
        return out

    def solve(self, n: int, target: Element) -> Element | None:
        """Some x in degree n with d_pi(x) = target, or None."""
        if target.arity != n + 1:
            raise ValueError("target has the wrong arity")
        x = linalg.solve(self._restricted_d(n), target.vector())
        if x is None:
            return None
        sub = self.subspace(n)
        if sub is not None:
            x = sub.matvec(x)
        return self.operad.from_vector(n, x)

    def is_coboundary(self, target: Element) -> bool:
        if target.arity == 1:
            return target.is_zero()
        return self.solve(target.arity - 1, target) is not None

    def class_representatives(self, n: int) -> list[Element]:
        """Cocycles whose classes form a basis of H^n (greedy completion of B^n)."""
        cocycles = self.cocycle_basis(n)
        if n > 1:
            bmat = self._restricted_d(n - 1)
            boundary = [bmat.column(c) for c in range(bmat.cols)]
        else:
            boundary = []
        cols = boundary + [{r: v for r, v in enumerate(z.vector()) if v} for z in cocycles]
        first = len(boundary)
        m = QMatrix(self.operad.space_dim(n), len(cols), cols)
        created = {max(comb) for _, _, comb in m._reduce()[0]}
        return [z for k, z in enumerate(cocycles) if first + k in created]

    def class_coordinates(self, cocycle: Element) -> list[Fraction]:
        """Coordinates of [cocycle] in the basis given by class_representatives."""
        n = cocycle.arity
        reps = self.class_representatives(n)
        if n > 1:
            bmat = self._restricted_d(n - 1)
            boundary = [bmat.column(c) for c in range(bmat.cols)]
        else:
            boundary = []
        cols = boundary + [{r: v for r, v in enumerate(z.vector()) if v} for z in reps]
        x = linalg.solve(QMatrix(self.operad.space_dim(n), len(cols), cols), cocycle.vector())
        if x is None:
            raise ValueError("not a cocycle of the complex")
        return x[len(boundary):]
