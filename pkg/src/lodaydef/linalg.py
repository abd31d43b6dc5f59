"""Exact rational linear algebra on sparse matrices.

Scalars are :class:`fractions.Fraction` (plain ``int`` is accepted wherever a
rational is expected).  A :class:`QMatrix` is immutable; its column echelon
form is computed lazily once and shared by :func:`rank`,
:func:`kernel_basis` and :func:`solve`.
"""

from __future__ import annotations

import numbers
import re
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

Rational = Fraction

_RATIONAL_RE = re.compile(r"^\s*(-?\d+)(?:\s*/\s*(\d+))?\s*$")


def parse_rational(value) -> Fraction:
    """Parse ``"p/q"``, ``"p"`` or a Python int into a reduced Fraction."""
    if isinstance(value, bool):
        raise ValueError(f"not a rational: {value!r}")
    if isinstance(value, numbers.Integral):
        return Fraction(int(value))
    if isinstance(value, Fraction):
        return value
    if not isinstance(value, str):
        raise ValueError(f"not a rational: {value!r}")
    m = _RATIONAL_RE.match(value)
    if m is None:
        raise ValueError(f"not a rational: {value!r}")
    den = int(m.group(2)) if m.group(2) is not None else 1
    if den == 0:
        raise ValueError(f"zero denominator: {value!r}")
    return Fraction(int(m.group(1)), den)


def format_rational(x) -> str:
    return str(Fraction(x))


def exact(x):
    """Integral rationals as ``int`` (much faster inside object arrays)."""
    if type(x) is int:
        return x
    x = parse_rational(x)
    return x.numerator if x.denominator == 1 else x


def exact_array(arr):
    """Copy of an object array with integral entries stored as ``int``."""
    import numpy as np
    out = np.empty(arr.shape, dtype=object)
    flat_in = arr.ravel()
    flat_out = out.ravel()
    for k in range(flat_in.size):
        flat_out[k] = exact(flat_in[k])
    return out


class QMatrix:
    """Sparse matrix over Q, stored column-wise as ``{row: value}`` dicts."""

    __slots__ = ("rows", "cols", "_columns", "_echelon")

    def __init__(self, rows: int, cols: int, columns: Sequence[Mapping[int, Fraction]] | None = None):
        if rows < 0 or cols < 0:
            raise ValueError("negative dimension")
        self.rows = rows
        self.cols = cols
        if columns is None:
            columns = [{} for _ in range(cols)]
        if len(columns) != cols:
            raise ValueError("column count mismatch")
        cleaned = []
        for col in columns:
            c = {}
            for r, v in col.items():
                if not 0 <= r < rows:
                    raise IndexError(f"row index {r} out of range")
                if v:
                    c[r] = Fraction(v)
            cleaned.append(c)
        self._columns = tuple(cleaned)
        self._echelon = None

    # construction ---------------------------------------------------------

    @classmethod
    def from_dense(cls, data: Sequence[Sequence]) -> "QMatrix":
        rows = len(data)
        cols = len(data[0]) if rows else 0
        columns = [{} for _ in range(cols)]
        for r, row in enumerate(data):
            if len(row) != cols:
                raise ValueError("ragged matrix")
            for c, v in enumerate(row):
                if v:
                    columns[c][r] = Fraction(v)
        return cls(rows, cols, columns)

    @classmethod
    def from_entries(cls, rows: int, cols: int, entries: Mapping[tuple[int, int], Fraction]) -> "QMatrix":
        columns = [{} for _ in range(cols)]
        for (r, c), v in entries.items():
            if not 0 <= c < cols:
                raise IndexError(f"column index {c} out of range")
            if v:
                columns[c][r] = columns[c].get(r, 0) + Fraction(v)
        return cls(rows, cols, columns)

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "QMatrix":
        return cls(rows, cols)

    @classmethod
    def identity(cls, n: int) -> "QMatrix":
        return cls(n, n, [{i: Fraction(1)} for i in range(n)])

    @classmethod
    def hstack(cls, blocks: Sequence["QMatrix"]) -> "QMatrix":
        if not blocks:
            raise ValueError("nothing to stack")
        rows = blocks[0].rows
        if any(b.rows != rows for b in blocks):
            raise ValueError("row count mismatch")
        columns = [c for b in blocks for c in b._columns]
        return cls(rows, len(columns), columns)

    @classmethod
    def block(cls, grid: Sequence[Sequence["QMatrix | None"]], row_sizes: Sequence[int],
              col_sizes: Sequence[int]) -> "QMatrix":
        """Assemble a block matrix; ``None`` blocks are zero."""
        row_off = [sum(row_sizes[:k]) for k in range(len(row_sizes))]
        columns: list[dict[int, Fraction]] = [{} for _ in range(sum(col_sizes))]
        for bi, line in enumerate(grid):
            for bj, blk in enumerate(line):
                if blk is None:
                    continue
                if blk.rows != row_sizes[bi] or blk.cols != col_sizes[bj]:
                    raise ValueError(f"block ({bi},{bj}) has wrong size")
                c0 = sum(col_sizes[:bj])
                for c, col in enumerate(blk._columns):
                    target = columns[c0 + c]
                    for r, v in col.items():
                        target[r + row_off[bi]] = v
        return cls(sum(row_sizes), sum(col_sizes), columns)

    # access ---------------------------------------------------------------

    def column(self, c: int) -> dict[int, Fraction]:
        return dict(self._columns[c])

    def entry(self, r: int, c: int) -> Fraction:
        return self._columns[c].get(r, Fraction(0))

    def to_dense(self) -> list[list[Fraction]]:
        out = [[Fraction(0)] * self.cols for _ in range(self.rows)]
        for c, col in enumerate(self._columns):
            for r, v in col.items():
                out[r][c] = v
        return out

    def nnz(self) -> int:
        return sum(len(c) for c in self._columns)

    def __repr__(self):
        return f"QMatrix({self.rows}x{self.cols}, nnz={self.nnz()})"

    def __eq__(self, other):
        if not isinstance(other, QMatrix):
            return NotImplemented
        return (self.rows, self.cols, self._columns) == (other.rows, other.cols, other._columns)

    def __hash__(self):
        return hash((self.rows, self.cols, tuple(tuple(sorted(c.items())) for c in self._columns)))

    # arithmetic -----------------------------------------------------------

    def matvec(self, x: Sequence) -> list[Fraction]:
        if len(x) != self.cols:
            raise ValueError(f"vector length {len(x)} != {self.cols} columns")
        out = [Fraction(0)] * self.rows
        for c, col in enumerate(self._columns):
            xc = x[c]
            if xc:
                for r, v in col.items():
                    out[r] += v * xc
        return out

    def matmul(self, other: "QMatrix") -> "QMatrix":
        if self.cols != other.rows:
            raise ValueError("inner dimension mismatch")
        columns = []
        for ocol in other._columns:
            acc: dict[int, Fraction] = {}
            for k, w in ocol.items():
                for r, v in self._columns[k].items():
                    acc[r] = acc.get(r, 0) + v * w
            columns.append(acc)
        return QMatrix(self.rows, other.cols, columns)

    def transpose(self) -> "QMatrix":
        columns: list[dict[int, Fraction]] = [{} for _ in range(self.rows)]
        for c, col in enumerate(self._columns):
            for r, v in col.items():
                columns[r][c] = v
        return QMatrix(self.cols, self.rows, columns)

    def scale(self, s) -> "QMatrix":
        s = Fraction(s)
        return QMatrix(self.rows, self.cols, [{r: v * s for r, v in c.items()} for c in self._columns])

    # elimination ----------------------------------------------------------

    def _reduce(self):
        """Column echelon form.

        Returns ``(basis, kernel)``: ``basis`` is a list of
        ``(vector, pivot_row, combination)`` where ``vector`` equals the
        combination of original columns; vectors vanish at the pivots of all
        earlier basis entries.  ``kernel`` holds combinations mapping to 0.
        """
        if self._echelon is not None:
            return self._echelon
        basis: list[tuple[dict[int, Fraction], int, dict[int, Fraction]]] = []
        kernel: list[dict[int, Fraction]] = []
        for j, col in enumerate(self._columns):
            vec = dict(col)
            comb = {j: Fraction(1)}
            _eliminate(vec, comb, basis)
            if vec:
                # sparsest-first would only change speed; lowest row keeps it deterministic
                pivot = min(vec)
                basis.append((vec, pivot, comb))
            else:
                kernel.append(comb)
        self._echelon = (basis, kernel)
        return self._echelon


def _eliminate(vec: dict, comb: dict | None, basis) -> None:
    for bvec, p, bcomb in basis:
        x = vec.get(p)
        if not x:
            continue
        factor = x / bvec[p]
        for r, v in bvec.items():
            nv = vec.get(r, 0) - factor * v
            if nv:
                vec[r] = nv
            else:
                vec.pop(r, None)
        if comb is not None:
            for k, v in bcomb.items():
                nv = comb.get(k, 0) - factor * v
                if nv:
                    comb[k] = nv
                else:
                    comb.pop(k, None)


def rank(m: QMatrix) -> int:
    return len(m._reduce()[0])


def kernel_basis(m: QMatrix) -> list[list[Fraction]]:
    """Exact basis of the null space; ``len == m.cols - rank(m)``."""
    out = []
    for comb in m._reduce()[1]:
        v = [Fraction(0)] * m.cols
        for k, x in comb.items():
            v[k] = x
        out.append(v)
    return out


def image_basis(m: QMatrix) -> list[dict[int, Fraction]]:
    return [dict(vec) for vec, _, _ in m._reduce()[0]]


def solve(m: QMatrix, b: Sequence) -> list[Fraction] | None:
    """Some ``x`` with ``m x = b``, or ``None`` when ``b`` is not in the image."""
    if len(b) != m.rows:
        raise ValueError(f"right-hand side has length {len(b)}, expected {m.rows}")
    basis = m._reduce()[0]
    vec = {r: Fraction(v) for r, v in enumerate(b) if v}
    # the combination of b itself is tracked with a sentinel column -1
    comb = {-1: Fraction(1)}
    _eliminate(vec, comb, basis)
    if vec:
        return None
    x = [Fraction(0)] * m.cols
    for k, v in comb.items():
        if k >= 0:
            x[k] = -v
    return x


def in_image(m: QMatrix, b: Sequence) -> bool:
    return solve(m, b) is not None


def rank_of_columns(vectors: Iterable[Sequence], length: int) -> int:
    cols = [{r: Fraction(v) for r, v in enumerate(vec) if v} for vec in vectors]
    return rank(QMatrix(length, len(cols), cols))
