"""Index sets U_n and structure functions for the Loday-type operads.

Every family exposes the same interface: ``enumerate(n)``, ``r0`` and ``ri``
(the routing maps used by the partial compositions), plus canonical string
formatting/parsing.  Shapes are plain hashable Python values:

============== ==================================================
family         shape value
============== ==================================================
associative    ``"*"``
dendriform     ``k`` (int, 1 <= k <= n)
tridendriform  sorted tuple of ints (non-empty subset of 1..n)
quadri         ``(r, s)``
ennea          ``(X, Y)`` with X, Y tridendriform shapes
dialgebra      nested tuples; a leaf is ``()``; internal nodes binary
trialgebra     nested tuples; internal nodes have >= 2 children
============== ==================================================
"""

from __future__ import annotations

import itertools
from functools import lru_cache
from typing import Hashable, Sequence

Shape = Hashable
ShapeSum = tuple  # tuple of (shape, coefficient) pairs

FAMILIES = ("associative", "dialgebra", "trialgebra", "dendriform", "tridendriform", "quadri", "ennea")


class ShapeSyntaxError(ValueError):
    def __init__(self, message: str, text: str, position: int):
        super().__init__(f"{message} at position {position} in {text!r}")
        self.text = text
        self.position = position


# ---------------------------------------------------------------------------
# planar trees


LEAF = ()


def leaf_count(tree) -> int:
    return 1 if tree == LEAF else sum(leaf_count(c) for c in tree)


def _binary_trees(leaves: int) -> list:
    if leaves == 1:
        return [LEAF]
    out = []
    for k in range(1, leaves):
        for left in _binary_trees(k):
            for right in _binary_trees(leaves - k):
                out.append((left, right))
    return out


def _compositions(total: int, min_parts: int):
    """Ordered compositions of ``total`` into at least ``min_parts`` positive parts."""
    def rec(rest):
        if rest == 0:
            yield ()
            return
        for first in range(1, rest + 1):
            for tail in rec(rest - first):
                yield (first,) + tail
    for comp in rec(total):
        if len(comp) >= min_parts:
            yield comp


def _planar_trees(leaves: int) -> list:
    if leaves == 1:
        return [LEAF]
    out = []
    for comp in _compositions(leaves, 2):
        for children in itertools.product(*(_planar_trees(k) for k in comp)):
            out.append(tuple(children))
    return out


def face(tree, i: int):
    """Delete leaf ``i`` (leaves numbered 0.. from the left).

    A parent left with a single child is contracted, so binary trees stay
    binary and planar trees keep every vertex at least binary.
    """
    n_leaves = leaf_count(tree)
    if n_leaves < 2:
        raise ValueError("cannot delete a leaf from a tree with fewer than 2 leaves")
    if not 0 <= i < n_leaves:
        raise IndexError(f"leaf index {i} out of range 0..{n_leaves - 1}")

    def rec(t, i):
        # returns the new subtree, or None when t was the deleted leaf
        if t == LEAF:
            return None
        kids = []
        for c in t:
            k = leaf_count(c)
            if 0 <= i < k:
                new = rec(c, i)
                if new is not None:
                    kids.append(new)
            else:
                kids.append(c)
            i -= k
        if len(kids) == 1:
            return kids[0]
        return tuple(kids)

    return rec(tree, i)


def format_tree(tree) -> str:
    if tree == LEAF:
        return "L"
    return "(" + ",".join(format_tree(c) for c in tree) + ")"


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def error(self, msg):
        raise ShapeSyntaxError(msg, self.text, self.pos)

    def peek(self):
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def expect(self, ch):
        if self.peek() != ch:
            self.error(f"expected {ch!r}")
        self.pos += 1

    def end(self):
        if self.pos != len(self.text):
            self.error("trailing characters")

    def integer(self) -> int:
        start = self.pos
        while self.peek().isdigit():
            self.pos += 1
        if start == self.pos:
            self.error("expected integer")
        return int(self.text[start:self.pos])

    def tree(self):
        if self.peek() == "L":
            self.pos += 1
            return LEAF
        self.expect("(")
        kids = [self.tree()]
        while self.peek() == ",":
            self.pos += 1
            kids.append(self.tree())
        if len(kids) < 2:
            self.error("internal vertex needs at least two children")
        self.expect(")")
        return tuple(kids)

    def subset(self):
        self.expect("{")
        items = [self.integer()]
        while self.peek() == ",":
            self.pos += 1
            items.append(self.integer())
        self.expect("}")
        if list(items) != sorted(set(items)):
            self.error("subset elements must be strictly increasing")
        return tuple(items)


# ---------------------------------------------------------------------------
# families


class ShapeFamily:
    name: str = ""

    def __repr__(self):
        return f"<ShapeFamily {self.name}>"

    # subclasses implement _raw_enumerate, r0, ri, format, _parse, _valid

    def enumerate(self, n: int) -> list:
        return list(_enumerate(self.name, n))

    def count(self, n: int) -> int:
        return len(_enumerate(self.name, n))

    def index(self, n: int, shape) -> int:
        try:
            return _index(self.name, n)[shape]
        except KeyError:
            raise ValueError(f"{shape!r} is not a {self.name} shape of arity {n}") from None

    def format(self, shape) -> str:
        raise NotImplementedError

    def parse(self, text: str, n: int | None = None):
        p = _Parser(text.replace(" ", ""))
        shape = self._parse(p)
        p.end()
        if n is not None and shape not in _index(self.name, n):
            raise ShapeSyntaxError(f"not a {self.name} shape of arity {n}", text, 0)
        return shape


class Associative(ShapeFamily):
    name = "associative"

    def _raw_enumerate(self, n):
        return ["*"]

    def r0(self, m, n, i, r):
        return "*"

    def ri(self, m, n, i, r):
        return (("*", 1),)

    def format(self, shape):
        return "*"

    def _parse(self, p):
        p.expect("*")
        return "*"


def _box(m, n, i, r):
    """Number of the box containing ``r`` when 1..m+n-1 is split into m boxes."""
    if r <= i - 1:
        return r
    if r <= i + n - 1:
        return i
    return r - n + 1


class Dendriform(ShapeFamily):
    name = "dendriform"

    def _raw_enumerate(self, n):
        return list(range(1, n + 1))

    def r0(self, m, n, i, r):
        return _box(m, n, i, r)

    def ri(self, m, n, i, r):
        if i <= r <= i + n - 1:
            return ((r - i + 1, 1),)
        return tuple((k, 1) for k in range(1, n + 1))

    def format(self, shape):
        return str(shape)

    def _parse(self, p):
        return p.integer()


class Tridendriform(ShapeFamily):
    name = "tridendriform"

    def _raw_enumerate(self, n):
        out = []
        for k in range(1, n + 1):
            out.extend(itertools.combinations(range(1, n + 1), k))
        return out

    def r0(self, m, n, i, X):
        return tuple(sorted({_box(m, n, i, x) for x in X}))

    def ri(self, m, n, i, X):
        inside = [x - (i - 1) for x in X if i <= x <= i + n - 1]
        if inside:
            return ((tuple(inside), 1),)
        return tuple((S, 1) for S in self._raw_enumerate(n))

    def format(self, shape):
        return "{" + ",".join(map(str, shape)) + "}"

    def _parse(self, p):
        return p.subset()


class _Product(ShapeFamily):
    """Cartesian square of a base family: structure functions act componentwise."""
    base: ShapeFamily

    def _raw_enumerate(self, n):
        b = self.base._raw_enumerate(n)
        return [(x, y) for x in b for y in b]

    def r0(self, m, n, i, r):
        return (self.base.r0(m, n, i, r[0]), self.base.r0(m, n, i, r[1]))

    def ri(self, m, n, i, r):
        left = self.base.ri(m, n, i, r[0])
        right = self.base.ri(m, n, i, r[1])
        return tuple(((u, v), a * b) for u, a in left for v, b in right)

    def format(self, shape):
        return "(" + self.base.format(shape[0]) + "," + self.base.format(shape[1]) + ")"

    def _parse(self, p):
        p.expect("(")
        x = self.base._parse(p)
        p.expect(",")
        y = self.base._parse(p)
        p.expect(")")
        return (x, y)


class Quadri(_Product):
    name = "quadri"
    base = Dendriform()


class Ennea(_Product):
    name = "ennea"
    base = Tridendriform()


class _Trees(ShapeFamily):
    """Trees with n+1 leaves; routing maps are composites of face maps."""

    def r0(self, m, n, i, r):
        # d_i o d_{i+1} o ... o d_{i+n-2}, rightmost map applied first
        t = r
        for k in range(i + n - 2, i - 1, -1):
            t = face(t, k)
        return t

    def ri(self, m, n, i, r):
        # d_0 o ... o d_{i-2} o d_{i+n} o ... o d_{m+n-1}, rightmost map first
        t = r
        for k in list(range(m + n - 1, i + n - 1, -1)) + list(range(i - 2, -1, -1)):
            t = face(t, k)
        return ((t, 1),)

    def format(self, shape):
        return format_tree(shape)


class Dialgebra(_Trees):
    name = "dialgebra"

    def _raw_enumerate(self, n):
        return _binary_trees(n + 1)

    def _parse(self, p):
        t = p.tree()
        if not _is_binary(t):
            p.error("dialgebra shapes must be binary trees")
        return t


class Trialgebra(_Trees):
    name = "trialgebra"

    def _raw_enumerate(self, n):
        return _planar_trees(n + 1)

    def _parse(self, p):
        return p.tree()


def _is_binary(t) -> bool:
    return t == LEAF or (len(t) == 2 and all(_is_binary(c) for c in t))


_FAMILY_OBJECTS = {cls.name: cls() for cls in (Associative, Dialgebra, Trialgebra, Dendriform,
                                                Tridendriform, Quadri, Ennea)}


def get_family(family) -> ShapeFamily:
    if isinstance(family, ShapeFamily):
        return family
    try:
        return _FAMILY_OBJECTS[family]
    except KeyError:
        raise ValueError(f"unknown family {family!r}; expected one of {', '.join(FAMILIES)}") from None


@lru_cache(maxsize=None)
def _enumerate(name: str, n: int) -> tuple:
    if n < 1:
        raise ValueError("arity must be >= 1")
    fam = _FAMILY_OBJECTS[name]
    shapes = fam._raw_enumerate(n)
    return tuple(sorted(shapes, key=fam.format))


@lru_cache(maxsize=None)
def _index(name: str, n: int) -> dict:
    return {s: k for k, s in enumerate(_enumerate(name, n))}


# ---------------------------------------------------------------------------
# public functional interface


def enumerate_shapes(family, n: int) -> list:
    return get_family(family).enumerate(n)


def r0(family, m: int, n: int, i: int, r):
    fam = get_family(family)
    _check_route(fam, m, n, i, r)
    return fam.r0(m, n, i, r)


def ri(family, m: int, n: int, i: int, r) -> ShapeSum:
    fam = get_family(family)
    _check_route(fam, m, n, i, r)
    return fam.ri(m, n, i, r)


def _check_route(fam, m, n, i, r):
    if m < 1 or n < 1 or not 1 <= i <= m:
        raise ValueError(f"bad routing indices m={m}, n={n}, i={i}")
    if r not in _index(fam.name, m + n - 1):
        raise ValueError(f"{r!r} is not a {fam.name} shape of arity {m + n - 1}")


def parse_shape(family, text: str, n: int | None = None):
    return get_family(family).parse(text, n)


def format_shape(family, shape) -> str:
    return get_family(family).format(shape)


@lru_cache(maxsize=None)
def routing_table(name: str, m: int, n: int, i: int) -> tuple:
    """For every r in U_{m+n-1} (canonical order): (index of r0(r) in U_m,
    ((index in U_n, coeff), ...) for ri(r))."""
    fam = _FAMILY_OBJECTS[name]
    idx_m = _index(name, m)
    idx_n = _index(name, n)
    table = []
    for r in _enumerate(name, m + n - 1):
        out = idx_m[fam.r0(m, n, i, r)]
        terms: dict[int, int] = {}
        for s, c in fam.ri(m, n, i, r):
            terms[idx_n[s]] = terms.get(idx_n[s], 0) + c
        table.append((out, tuple(sorted(terms.items()))))
    return tuple(table)


def catalan(n: int) -> int:
    from math import comb
    return comb(2 * n, n) // (n + 1)


def shape_sum_str(family, terms: Sequence) -> str:
    fam = get_family(family)
    return " + ".join((f"{c}*" if c != 1 else "") + fam.format(s) for s, c in terms)
