"""Exact dense linear algebra over Q(i).

Every rank decision downstream is made here, so nothing in this module uses
floating point.  The workhorse is :class:`RowSpace`, an incrementally
maintained reduced row echelon form over sparse rows; :func:`rref`,
:func:`nullspace` and the subspace operations are thin layers on top of it.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Sequence

from .scalar import GaussianRational, Value, normalize

SparseRow = dict  # column index -> nonzero exact value


def div(a, b) -> Value:
    """Exact quotient; ``int / int`` stays rational instead of becoming float."""
    if isinstance(a, int) and isinstance(b, int):
        q = Fraction(a, b)
        return q.numerator if q.denominator == 1 else q
    return normalize(a / b)


def _clean(x):
    if isinstance(x, Fraction) and x.denominator == 1:
        return x.numerator
    if isinstance(x, GaussianRational):
        return normalize(x)
    return x


class DimensionMismatch(ValueError):
    pass


# ---------------------------------------------------------------------------
# DenseMatrix


@dataclass(frozen=True)
class Matrix:
    """Row-major dense matrix of exact scalars."""

    rows: int
    cols: int
    entries: tuple

    def __post_init__(self):
        if len(self.entries) != self.rows * self.cols:
            raise ValueError(
                f"{self.rows}x{self.cols} matrix needs {self.rows * self.cols} entries, got {len(self.entries)}"
            )

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence], cols: int | None = None) -> "Matrix":
        rows = [list(r) for r in rows]
        if cols is None:
            if not rows:
                raise ValueError("cannot infer column count of an empty matrix")
            cols = len(rows[0])
        for r in rows:
            if len(r) != cols:
                raise ValueError("ragged rows")
        return cls(len(rows), cols, tuple(normalize(x) for r in rows for x in r))

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "Matrix":
        return cls(rows, cols, (0,) * (rows * cols))

    @classmethod
    def identity(cls, n: int) -> "Matrix":
        return cls(n, n, tuple(1 if i == j else 0 for i in range(n) for j in range(n)))

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> tuple:
        return self.entries[i * self.cols:(i + 1) * self.cols]

    def column(self, j: int) -> tuple:
        return tuple(self.entries[i * self.cols + j] for i in range(self.rows))

    def to_lists(self) -> list[list]:
        return [list(self.row(i)) for i in range(self.rows)]

    def transpose(self) -> "Matrix":
        return Matrix.from_rows([self.column(j) for j in range(self.cols)], cols=self.rows)

    def __matmul__(self, other):
        if isinstance(other, Matrix):
            if self.cols != other.rows:
                raise DimensionMismatch(f"cannot multiply {self.rows}x{self.cols} by {other.rows}x{other.cols}")
            out = matmul(self.to_lists(), other.to_lists(), other.cols)
            return Matrix.from_rows(out, cols=other.cols)
        v = list(other)
        if len(v) != self.cols:
            raise DimensionMismatch("vector length does not match column count")
        return tuple(
            normalize(sum((a * b for a, b in zip(self.row(i), v) if a and b), 0)) for i in range(self.rows)
        )

    def is_zero(self) -> bool:
        return not any(self.entries)


def matmul(a: list[list], b: list[list], bcols: int) -> list[list]:
    """Product of two list-of-lists matrices, skipping zero entries."""
    out = []
    for arow in a:
        acc = [0] * bcols
        for k, x in enumerate(arow):
            if not x:
                continue
            brow = b[k]
            for j in range(bcols):
                y = brow[j]
                if y:
                    acc[j] += x * y
        out.append(acc)
    return out


# ---------------------------------------------------------------------------
# incremental RREF


class RowSpace:
    """Row space kept in reduced row echelon form as rows are added.

    Pivot rows are stored sparsely and stay fully reduced against each other,
    so reducing an incoming row needs one pass over the pivot columns it
    touches.
    """

    def __init__(self, ncols: int, rows: Iterable = ()):
        self.ncols = ncols
        self._rows: dict[int, SparseRow] = {}
        for r in rows:
            self.add(r)

    @property
    def rank(self) -> int:
        return len(self._rows)

    @property
    def pivots(self) -> list[int]:
        return sorted(self._rows)

    def _sparse(self, row) -> SparseRow:
        if isinstance(row, dict):
            for c in row:
                if not 0 <= c < self.ncols:
                    raise DimensionMismatch(f"column {c} outside 0..{self.ncols - 1}")
            return {c: v for c, v in row.items() if v}
        if len(row) != self.ncols:
            raise DimensionMismatch(f"row has {len(row)} entries, expected {self.ncols}")
        return {c: v for c, v in enumerate(row) if v}

    def reduce(self, row) -> SparseRow:
        """Remainder of ``row`` after elimination against the stored pivots."""
        r = self._sparse(row)
        rows = self._rows
        for p in [c for c in r if c in rows]:
            f = r.pop(p)
            for c, v in rows[p].items():
                if c == p:
                    continue
                nv = r.get(c, 0) - f * v
                if nv:
                    r[c] = nv
                else:
                    r.pop(c, None)
        return r

    def contains(self, row) -> bool:
        return not self.reduce(row)

    def add(self, row) -> bool:
        """Add a row; return True iff the rank grew."""
        r = self.reduce(row)
        if not r:
            return False
        p = min(r)
        lead = r[p]
        if lead != 1:
            r = {c: _clean(div(v, lead)) for c, v in r.items()}
        else:
            r = {c: _clean(v) for c, v in r.items()}
        for q in self._rows.values():
            f = q.get(p)
            if f is None:
                continue
            del q[p]
            for c, v in r.items():
                if c == p:
                    continue
                nv = _clean(q.get(c, 0) - f * v)
                if nv:
                    q[c] = nv
                else:
                    q.pop(c, None)
        self._rows[p] = r
        return True

    def extend(self, rows: Iterable) -> int:
        return sum(1 for r in rows if self.add(r))

    def copy(self) -> "RowSpace":
        other = RowSpace(self.ncols)
        other._rows = {p: dict(r) for p, r in self._rows.items()}
        return other

    def dense_rows(self) -> list[tuple]:
        out = []
        for p in sorted(self._rows):
            r = self._rows[p]
            out.append(tuple(r.get(c, 0) for c in range(self.ncols)))
        return out

    def basis(self) -> "SubspaceBasis":
        return SubspaceBasis(self.ncols, tuple(self.dense_rows()))

    def nullspace(self) -> "SubspaceBasis":
        """Canonical basis of ``{v : r.v = 0 for every stored row r}``."""
        pivots = set(self._rows)
        vecs = []
        for f in range(self.ncols):
            if f in pivots:
                continue
            v = [0] * self.ncols
            v[f] = 1
            for p, r in self._rows.items():
                x = r.get(f)
                if x:
                    v[p] = -x
            vecs.append(v)
        return SubspaceBasis.span(vecs, self.ncols)


# ---------------------------------------------------------------------------
# SubspaceBasis


@dataclass(frozen=True)
class SubspaceBasis:
    """A subspace of Q(i)^n held as its unique RREF basis.

    Two instances describe the same subspace exactly when they compare equal.
    Build them with :meth:`span`; the raw constructor trusts its input.
    """

    ambient_dim: int
    basis: tuple

    @classmethod
    def span(cls, vectors: Iterable, ambient_dim: int) -> "SubspaceBasis":
        rs = RowSpace(ambient_dim)
        for v in vectors:
            rs.add(v)
        return rs.basis()

    @classmethod
    def full(cls, n: int) -> "SubspaceBasis":
        return cls(n, tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n)))

    @classmethod
    def zero(cls, n: int) -> "SubspaceBasis":
        return cls(n, ())

    @property
    def dim(self) -> int:
        return len(self.basis)

    def __len__(self):
        return len(self.basis)

    def __iter__(self) -> Iterator[tuple]:
        return iter(self.basis)

    def pivots(self) -> list[int]:
        return [next(i for i, x in enumerate(v) if x) for v in self.basis]

    def row_space(self) -> RowSpace:
        return RowSpace(self.ambient_dim, self.basis)

    def coordinates(self, v) -> tuple:
        """Coordinates of a member ``v`` in this basis (read off the pivots)."""
        if not subspace_member(self, v):
            raise ValueError("vector is not in the subspace")
        return tuple(v[p] for p in self.pivots())

    def combine(self, coeffs: Sequence) -> tuple:
        if len(coeffs) != self.dim:
            raise DimensionMismatch("coefficient count does not match dimension")
        out = [0] * self.ambient_dim
        for c, v in zip(coeffs, self.basis):
            if c:
                for i, x in enumerate(v):
                    if x:
                        out[i] += c * x
        return tuple(normalize(x) for x in out)

    def annihilator(self) -> "SubspaceBasis":
        """``{w : w.v = 0 for all v in self}`` (bilinear pairing, no conjugation)."""
        return self.row_space().nullspace()

    def __contains__(self, v) -> bool:
        return subspace_member(self, v)


# ---------------------------------------------------------------------------
# operations


def rref(m: Matrix) -> Matrix:
    """Reduced row echelon form of ``m``; zero rows are kept at the bottom."""
    rs = RowSpace(m.cols)
    for i in range(m.rows):
        rs.add(m.row(i))
    rows = rs.dense_rows()
    rows += [(0,) * m.cols] * (m.rows - len(rows))
    return Matrix(m.rows, m.cols, tuple(x for r in rows for x in r))


def rank(m: Matrix) -> int:
    rs = RowSpace(m.cols)
    for i in range(m.rows):
        rs.add(m.row(i))
    return rs.rank


def nullspace(m: Matrix) -> SubspaceBasis:
    rs = RowSpace(m.cols)
    for i in range(m.rows):
        rs.add(m.row(i))
    return rs.nullspace()


def _same_ambient(a: SubspaceBasis, b: SubspaceBasis):
    if a.ambient_dim != b.ambient_dim:
        raise DimensionMismatch(f"ambient dimensions differ: {a.ambient_dim} vs {b.ambient_dim}")


def subspace_equal(a: SubspaceBasis, b: SubspaceBasis) -> bool:
    _same_ambient(a, b)
    return a.basis == b.basis


def subspace_member(s: SubspaceBasis, v) -> bool:
    if len(v) != s.ambient_dim:
        raise DimensionMismatch(f"vector has {len(v)} coordinates, expected {s.ambient_dim}")
    return s.row_space().contains(v)


def subspace_contains(big: SubspaceBasis, small: SubspaceBasis) -> bool:
    """True iff ``small`` is a subspace of ``big``."""
    _same_ambient(big, small)
    rs = big.row_space()
    return all(rs.contains(v) for v in small.basis)


def subspace_sum(a: SubspaceBasis, b: SubspaceBasis) -> SubspaceBasis:
    _same_ambient(a, b)
    return SubspaceBasis.span(list(a.basis) + list(b.basis), a.ambient_dim)


def subspace_intersect(a: SubspaceBasis, b: SubspaceBasis) -> SubspaceBasis:
    """``a ∩ b``, as the common null space of both annihilators."""
    _same_ambient(a, b)
    rs = RowSpace(a.ambient_dim)
    rs.extend(a.annihilator().basis)
    rs.extend(b.annihilator().basis)
    return rs.nullspace()


def solve_linear(rows: Sequence[Sequence], rhs: Sequence) -> tuple | None:
    """One solution of ``A x = b`` (free variables set to zero), or None."""
    if len(rows) != len(rhs):
        raise DimensionMismatch("row count and right-hand side length differ")
    if not rows:
        return None
    n = len(rows[0])
    rs = RowSpace(n + 1)
    for r, b in zip(rows, rhs):
        rs.add(list(r) + [b])
    if n in rs._rows:
        return None
    x = [0] * n
    for p, r in rs._rows.items():
        x[p] = normalize(r.get(n, 0))
    return tuple(x)
