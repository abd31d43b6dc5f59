"""Formal deformations of a multiplication, truncated mod t^(N+1).

A deformation is the list [pi_0 = pi, pi_1, .., pi_N] of arity-2 elements;
it is valid to order k when sum_{i+j=n} pi_i o pi_j = 0 for n <= k.  The
group H of formal automorphisms id + phi_1 t + .. acts by
pi'_t = phi_t^{-1} o {pi_t}{phi_t, phi_t}.  Every operation runs in the
operad of the base spec, so twisted (BiHom) algebras are handled by the same
code.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

from .algebra import AlgebraSpec
from .operad import Check, Element, Operad, OperadComplex, raw_partial_compose


class Obstructed(Exception):
    """No extension exists: the obstruction is not a coboundary."""

    def __init__(self, obstruction, order: int, coordinates: list[Fraction] | None = None):
        self.obstruction = obstruction
        self.order = order
        self.coordinates = coordinates
        coords = "" if coordinates is None else " class coordinates [" + " ".join(str(c) for c in coordinates) + "]"
        super().__init__(f"obstruction at order {order + 1} is not a coboundary;{coords}")


@lru_cache(maxsize=32)
def operad_complex(spec: AlgebraSpec) -> OperadComplex:
    return OperadComplex(spec.operad(), spec.pi)


# ---------------------------------------------------------------------------
# data types


@dataclass(frozen=True, eq=False)
class TruncatedDeformation:
    base: AlgebraSpec
    terms: tuple

    def __post_init__(self):
        terms = tuple(self.terms)
        object.__setattr__(self, "terms", terms)
        if not terms:
            raise ValueError("a deformation needs at least pi_0")
        op = self.base.operad()
        for k, t in enumerate(terms):
            if t.arity != 2:
                raise ValueError(f"pi_{k} must have arity 2")
            op._check(t)
        if terms[0] != self.base.pi:
            raise ValueError("pi_0 must equal the base multiplication")

    @classmethod
    def constant(cls, base: AlgebraSpec, order: int) -> "TruncatedDeformation":
        zero = base.operad().zero(2)
        return cls(base, (base.pi,) + (zero,) * order)

    @classmethod
    def from_gamma(cls, base: AlgebraSpec, gamma: Sequence[Element]) -> "TruncatedDeformation":
        """pi + gamma_1 t + gamma_2 t^2 + .."""
        return cls(base, (base.pi,) + tuple(gamma))

    @property
    def order(self) -> int:
        return len(self.terms) - 1

    @property
    def operad(self) -> Operad:
        return self.base.operad()

    def gamma(self) -> tuple:
        return self.terms[1:]

    def truncate(self, k: int) -> "TruncatedDeformation":
        return TruncatedDeformation(self.base, self.terms[:k + 1])

    def extended(self, term: Element) -> "TruncatedDeformation":
        return TruncatedDeformation(self.base, self.terms + (term,))

    def padded(self, order: int) -> "TruncatedDeformation":
        zero = self.operad.zero(2)
        return TruncatedDeformation(self.base, self.terms + (zero,) * max(0, order - self.order))

    def __eq__(self, other):
        if not isinstance(other, TruncatedDeformation):
            return NotImplemented
        return self.base == other.base and self.terms == other.terms

    __hash__ = None


@dataclass(frozen=True, eq=False)
class FormalAutomorphism:
    """phi_t = id + phi_1 t + .. + phi_N t^N."""
    terms: tuple

    def __post_init__(self):
        terms = tuple(self.terms)
        object.__setattr__(self, "terms", terms)
        if not terms:
            raise ValueError("an automorphism needs phi_0")
        first = terms[0]
        if any(t.arity != 1 or t.family != first.family or t.dim != first.dim for t in terms):
            raise ValueError("automorphism terms must be arity-1 elements of one operad")
        if first != Operad(first.family, first.dim).identity():
            raise ValueError("phi_0 must be the identity")

    @classmethod
    def identity(cls, family: str, dim: int, order: int) -> "FormalAutomorphism":
        op = Operad(family, dim)
        return cls((op.identity(),) + (op.zero(1),) * order)

    @classmethod
    def from_terms(cls, operad: Operad, phis: Sequence[Element]) -> "FormalAutomorphism":
        return cls((operad.identity(),) + tuple(phis))

    @property
    def order(self) -> int:
        return len(self.terms) - 1

    def __eq__(self, other):
        if not isinstance(other, FormalAutomorphism):
            return NotImplemented
        return self.terms == other.terms

    __hash__ = None


@dataclass(frozen=True, eq=False)
class Degree0Series:
    """x_1 t + .. + x_N t^N with arity-1 coefficients (no constant term)."""
    terms: tuple

    def __post_init__(self):
        object.__setattr__(self, "terms", tuple(self.terms))
        if any(t.arity != 1 for t in self.terms):
            raise ValueError("degree-0 series have arity-1 coefficients")

    @property
    def order(self) -> int:
        return len(self.terms)

    def __eq__(self, other):
        if not isinstance(other, Degree0Series):
            return NotImplemented
        return self.terms == other.terms

    __hash__ = None


# ---------------------------------------------------------------------------
# arity-1 power series


def _series_mul(a: Sequence[Element], b: Sequence[Element], order: int) -> list[Element]:
    """(a o b)_n = sum_{i+j=n} a_i o b_j for series indexed from t^0."""
    out = []
    for n in range(order + 1):
        acc = None
        for i in range(n + 1):
            j = n - i
            if i < len(a) and j < len(b) and not a[i].is_zero() and not b[j].is_zero():
                term = raw_partial_compose(a[i], b[j], 1)
                acc = term if acc is None else acc + term
        out.append(acc if acc is not None else a[0] * 0)
    return out


def compose_automorphisms(phi: FormalAutomorphism, psi: FormalAutomorphism) -> FormalAutomorphism:
    """phi o psi mod t^(N+1)."""
    order = min(phi.order, psi.order)
    return FormalAutomorphism(_series_mul(phi.terms, psi.terms, order))


def invert_automorphism(phi: FormalAutomorphism) -> FormalAutomorphism:
    """psi with phi o psi = id: psi_n = -sum_{k=1}^n phi_k o psi_{n-k}."""
    psi = [phi.terms[0]]
    for n in range(1, phi.order + 1):
        acc = phi.terms[0] * 0
        for k in range(1, n + 1):
            acc = acc - raw_partial_compose(phi.terms[k], psi[n - k], 1)
        psi.append(acc)
    return FormalAutomorphism(psi)


def exp_series(x: Degree0Series) -> FormalAutomorphism:
    """sum_k x^k / k! truncated at the order of x."""
    if not x.terms:
        raise ValueError("empty series")
    N = x.order
    ident = Operad(x.terms[0].family, x.terms[0].dim).identity()
    xs = [ident * 0] + list(x.terms)
    total = [ident] + [ident * 0] * N
    power = [ident] + [ident * 0] * N
    for k in range(1, N + 1):
        power = _series_mul(power, xs, N)
        total = [t + p * Fraction(1, math.factorial(k)) for t, p in zip(total, power)]
    return FormalAutomorphism(total)


def log_series(h: FormalAutomorphism) -> Degree0Series:
    """sum_k (-1)^(k+1) (h - id)^k / k."""
    N = h.order
    zero = h.terms[0] * 0
    y = [zero] + list(h.terms[1:])
    total = [zero] * (N + 1)
    power = [h.terms[0]] + [zero] * N
    for k in range(1, N + 1):
        power = _series_mul(power, y, N)
        c = Fraction((-1) ** (k + 1), k)
        total = [t + p * c for t, p in zip(total, power)]
    return Degree0Series(total[1:])


# ---------------------------------------------------------------------------
# deformation equations


def deformation_equation(defo: TruncatedDeformation, n: int) -> Element:
    """sum_{i+j=n} pi_i o pi_j (terms beyond the order count as 0)."""
    op = defo.operad
    acc = op.zero(3)
    for i in range(max(0, n - defo.order), min(n, defo.order) + 1):
        a, b = defo.terms[i], defo.terms[n - i]
        if not a.is_zero() and not b.is_zero():
            acc = acc + op.circle(a, b)
    return acc


def is_deformation(defo: TruncatedDeformation, order: int | None = None) -> Check:
    k = defo.order if order is None else order
    if k > defo.order:
        raise ValueError(f"order {k} exceeds the truncation order {defo.order}")
    for n in range(k + 1):
        w = deformation_equation(defo, n).nonzero_witness()
        if w is not None:
            return Check(False, {"order": n, **w})
    return Check(True)


def mc_check(spec: AlgebraSpec, gamma: Sequence[Element]) -> Check:
    """gamma = sum f_k t^k is Maurer-Cartan: d f_k + 1/2 sum_{i+j=k} [f_i, f_j] = 0.

    Both this form and the deformation equations of pi + gamma are computed;
    they must agree term by term.
    """
    op = spec.operad()
    cx = operad_complex(spec)
    defo = TruncatedDeformation.from_gamma(spec, gamma)
    result = Check(True)
    for k in range(1, len(gamma) + 1):
        mc = cx.d(gamma[k - 1])
        for i in range(1, k):
            mc = mc + op.lie_bracket(gamma[i - 1], gamma[k - i - 1]) * Fraction(1, 2)
        eq = deformation_equation(defo, k)
        if mc != eq:
            raise AssertionError(f"Maurer-Cartan form and deformation equation disagree at order {k}")
        w = mc.nonzero_witness()
        if w is not None and result.ok:
            result = Check(False, {"order": k, **w})
    return result


@dataclass(frozen=True)
class Infinitesimal:
    order: int
    term: Element
    is_cocycle: bool


def infinitesimal(defo: TruncatedDeformation) -> Infinitesimal | None:
    """First nonzero pi_p (p >= 1) and whether d_pi(pi_p) = 0; None if trivial."""
    for p in range(1, defo.order + 1):
        term = defo.terms[p]
        if not term.is_zero():
            return Infinitesimal(p, term, operad_complex(defo.base).d(term).is_zero())
    return None


# ---------------------------------------------------------------------------
# equivalences


def _check_membership(defo: TruncatedDeformation, phi: FormalAutomorphism):
    op = defo.operad
    if phi.terms[0].family != op.family or phi.terms[0].dim != op.dim:
        raise ValueError("automorphism and deformation live in different operads")
    if op.twisted:
        from .twisted import in_twisted_subspace
        for k, t in enumerate(phi.terms):
            ok = in_twisted_subspace(op, t)
            if not ok:
                raise ValueError(f"phi_{k} is not in the twisted subspace: {ok.witness}")


def apply_equivalence(phi: FormalAutomorphism, defo: TruncatedDeformation) -> TruncatedDeformation:
    """pi'_t = phi_t^{-1} o {pi_t}{phi_t, phi_t} mod t^(N+1)."""
    if phi.order != defo.order:
        raise ValueError(f"orders differ: automorphism {phi.order}, deformation {defo.order}")
    _check_membership(defo, phi)
    op = defo.operad
    N = defo.order
    psi = invert_automorphism(phi).terms
    # X_k = sum_{b+c+e=k} gamma(pi_b; phi_c, phi_e)
    X = [op.zero(2) for _ in range(N + 1)]
    for b in range(N + 1):
        if defo.terms[b].is_zero():
            continue
        for c in range(N + 1 - b):
            if phi.terms[c].is_zero():
                continue
            left = op.partial_compose(defo.terms[b], phi.terms[c], 1)
            for e in range(N + 1 - b - c):
                if not phi.terms[e].is_zero():
                    X[b + c + e] = X[b + c + e] + op.partial_compose(left, phi.terms[e], 2)
    terms = []
    for n in range(N + 1):
        acc = op.zero(2)
        for a in range(n + 1):
            if not psi[a].is_zero() and not X[n - a].is_zero():
                acc = acc + op.partial_compose(psi[a], X[n - a], 1)
        terms.append(acc)
    return TruncatedDeformation(defo.base, terms)


def are_equivalent(def1: TruncatedDeformation, def2: TruncatedDeformation) -> FormalAutomorphism | None:
    """phi with apply_equivalence(phi, def1) == def2, found order by order.

    At order n the unknown phi_n enters only through d_pi(phi_n), so each
    step is one linear solve.  The choice of phi_n is not unique (it is
    determined up to a 1-cocycle), so ``None`` proves non-equivalence only
    when it happens at order 1 or when Z^1 = 0.
    """
    if def1.base != def2.base:
        raise ValueError("deformations of different multiplications")
    if def1.order != def2.order:
        raise ValueError("orders differ")
    N = def1.order
    op = def1.operad
    cx = operad_complex(def1.base)
    phis = [op.identity()] + [op.zero(1)] * N
    for n in range(1, N + 1):
        current = apply_equivalence(FormalAutomorphism(phis), def1)
        x = cx.solve(1, def2.terms[n] - current.terms[n])
        if x is None:
            return None
        phis[n] = x
    phi = FormalAutomorphism(phis)
    if apply_equivalence(phi, def1) != def2:
        raise AssertionError("order-by-order solution does not reproduce the target")
    return phi


def normalize(defo: TruncatedDeformation) -> tuple[TruncatedDeformation, FormalAutomorphism]:
    """Push coboundary infinitesimals away with phi = id + phi_p t^p until the
    first nonzero term is a non-coboundary cocycle (or everything vanishes)."""
    cx = operad_complex(defo.base)
    op = defo.operad
    total = FormalAutomorphism.identity(op.family, op.dim, defo.order)
    while True:
        inf = infinitesimal(defo)
        if inf is None:
            return defo, total
        x = cx.solve(1, -inf.term)
        if x is None:
            return defo, total
        step = [op.identity()] + [op.zero(1)] * defo.order
        step[inf.order] = x
        step = FormalAutomorphism(step)
        defo = apply_equivalence(step, defo)
        total = compose_automorphisms(total, step)


# ---------------------------------------------------------------------------
# obstructions and extension


def obstruction(defo: TruncatedDeformation, check: bool = True) -> Element:
    """sum_{i+j=N+1, i,j>=1} pi_i o pi_j for a deformation valid to its order N."""
    if check:
        ok = is_deformation(defo)
        if not ok:
            raise ValueError(f"not a deformation to order {defo.order}: {ok.witness}")
    op = defo.operad
    n = defo.order + 1
    acc = op.zero(3)
    for i in range(1, n):
        a, b = defo.terms[i], defo.terms[n - i]
        if not a.is_zero() and not b.is_zero():
            acc = acc + op.circle(a, b)
    return acc


def extend_deformation(defo: TruncatedDeformation) -> TruncatedDeformation:
    """Append pi_{N+1} solving -d_pi(pi_{N+1}) = obstruction, or raise Obstructed."""
    ob = obstruction(defo)
    cx = operad_complex(defo.base)
    x = cx.solve(2, -ob)
    if x is None:
        raise Obstructed(ob, defo.order, cx.class_coordinates(ob))
    return defo.extended(x)


# ---------------------------------------------------------------------------
# universal formula


def universal_deformation(spec: AlgebraSpec, D: Element, Dbar: Element, order: int) -> TruncatedDeformation:
    """pi_n = -(1/n!) D^n . Dbar^n for commuting 1-cocycles D, Dbar."""
    op = spec.operad()
    cx = operad_complex(spec)
    for name, x in (("D", D), ("Dbar", Dbar)):
        op._check(x)
        if x.arity != 1:
            raise ValueError(f"{name} must have arity 1")
        w = cx.d(x).nonzero_witness()
        if w is not None:
            raise ValueError(f"{name} is not a 1-cocycle: {w}")
    w = (op.circle(D, Dbar) - op.circle(Dbar, D)).nonzero_witness()
    if w is not None:
        raise ValueError(f"D and Dbar do not commute: {w}")
    terms = []
    dn, dbn = op.identity(), op.identity()
    for n in range(order + 1):
        if n:
            dn, dbn = op.circle(D, dn), op.circle(Dbar, dbn)
        terms.append(-op.cup(spec.pi, dn, dbn) * Fraction(1, math.factorial(n)))
    return TruncatedDeformation(spec, terms)


def rigidity_verdict(spec: AlgebraSpec) -> tuple[int, str]:
    """dim H^2 and the implication it supports."""
    h2 = operad_complex(spec).dims(2)[2]
    if h2 == 0:
        return h2, "H^2 = 0, hence every deformation is equivalent to the constant one (rigid)"
    return h2, f"dim H^2 = {h2}; rigidity is not implied by cohomology"
