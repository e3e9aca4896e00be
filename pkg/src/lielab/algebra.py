"""Finite-dimensional associative algebras given by structure constants.

An :class:`Algebra` stores ``e_i e_j = sum_k c[i][j][k] e_k`` sparsely.  Most
functions here come in two flavours: methods on :class:`Algebra` that work on
raw coordinate tuples (used in the hot loops of the condition solver) and
module-level functions taking :class:`AlgebraElement` values.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Mapping, Sequence

from .linalg import Matrix, RowSpace, SubspaceBasis, matmul, solve_linear
from .scalar import normalize


class AlgebraError(ValueError):
    pass


class AssociativityViolation(AlgebraError):
    def __init__(self, i, j, k, left, right):
        self.triple = (i, j, k)
        self.left = left
        self.right = right
        super().__init__(f"(e_{i} e_{j}) e_{k} = {list(left)} but e_{i} (e_{j} e_{k}) = {list(right)}")


class UnitViolation(AlgebraError):
    def __init__(self, i):
        self.index = i
        super().__init__(f"declared unit does not act as identity on basis element {i}")


class AlreadyUnital(AlgebraError):
    pass


class AlgebraMismatch(ValueError):
    pass


LEFT, RIGHT = "left", "right"


def _check_side(side: str) -> str:
    if side not in (LEFT, RIGHT):
        raise ValueError(f"side must be 'left' or 'right', got {side!r}")
    return side


class Algebra:
    """Associative algebra over Q(i) on the basis ``e_0..e_{d-1}``.

    Build instances with :func:`make_algebra`, which validates the axioms;
    the constructor itself trusts its input.
    """

    def __init__(self, dim, table, unit=None, basis_labels=None, label="", matrix_size=None):
        self.dim = dim
        # table[i][j] -> tuple of (k, c) with c != 0
        self._table = table
        self.unit = None if unit is None else tuple(normalize(x) for x in unit)
        self.basis_labels = tuple(basis_labels) if basis_labels else tuple(f"e{i}" for i in range(dim))
        self.label = label
        # k when this is the full matrix algebra M_k in matrix-unit order
        self.matrix_size = matrix_size
        self._ops = {}

    def __repr__(self):
        return f"Algebra({self.label!r}, dim={self.dim}, unital={self.unit is not None})"

    @property
    def structure(self) -> tuple:
        """Dense ``c[i][j][k]`` as nested tuples."""
        d = self.dim
        out = []
        for i in range(d):
            row = []
            for j in range(d):
                v = [0] * d
                for k, c in self._table[i][j]:
                    v[k] = c
                row.append(tuple(v))
            out.append(tuple(row))
        return tuple(out)

    def nonzero_structure(self):
        for i in range(self.dim):
            for j in range(self.dim):
                for k, c in self._table[i][j]:
                    yield i, j, k, c

    # raw-coordinate arithmetic ------------------------------------------

    def basis_vector(self, i: int) -> tuple:
        v = [0] * self.dim
        v[i] = 1
        return tuple(v)

    def zero_vector(self) -> tuple:
        return (0,) * self.dim

    def mul(self, x, y) -> tuple:
        out = [0] * self.dim
        table = self._table
        ys = [(j, b) for j, b in enumerate(y) if b]
        for i, a in enumerate(x):
            if not a:
                continue
            ti = table[i]
            for j, b in ys:
                ab = a * b
                for k, c in ti[j]:
                    out[k] += ab * c
        return tuple(out)

    def bracket(self, x, y) -> tuple:
        p = self.mul(x, y)
        q = self.mul(y, x)
        return tuple(a - b for a, b in zip(p, q))

    def pn(self, args) -> tuple:
        if not args:
            raise ValueError("p_n needs at least one argument")
        acc = tuple(args[0])
        for a in args[1:]:
            acc = self.bracket(acc, a)
        return acc

    def product(self, args) -> tuple:
        if not args:
            raise ValueError("empty product")
        acc = tuple(args[0])
        for a in args[1:]:
            acc = self.mul(acc, a)
        return acc

    def left_op(self, x) -> list[list]:
        """Matrix (list of rows) of ``y -> x y``."""
        d = self.dim
        m = [[0] * d for _ in range(d)]
        for i, a in enumerate(x):
            if not a:
                continue
            for j in range(d):
                for k, c in self._table[i][j]:
                    m[k][j] += a * c
        return m

    def right_op(self, x) -> list[list]:
        """Matrix of ``y -> y x``."""
        d = self.dim
        m = [[0] * d for _ in range(d)]
        for j, a in enumerate(x):
            if not a:
                continue
            for i in range(d):
                for k, c in self._table[i][j]:
                    m[k][i] += a * c
        return m

    def ad_right(self, x) -> list[list]:
        """Matrix of ``y -> [y, x]``."""
        lo, ro = self.left_op(x), self.right_op(x)
        return [[r - l for r, l in zip(rr, lr)] for rr, lr in zip(ro, lo)]

    def ad_left(self, x) -> list[list]:
        """Matrix of ``y -> [x, y]``."""
        lo, ro = self.left_op(x), self.right_op(x)
        return [[l - r for r, l in zip(rr, lr)] for rr, lr in zip(ro, lo)]

    def basis_op(self, kind: str, i: int) -> list[list]:
        """Cached operator of basis element ``i``; kind in left/right/ad_right/ad_left."""
        key = (kind, i)
        op = self._ops.get(key)
        if op is None:
            op = getattr(self, kind if kind.startswith("ad") else f"{kind}_op")(self.basis_vector(i))
            self._ops[key] = op
        return op

    def element(self, coords) -> "AlgebraElement":
        return AlgebraElement(self, tuple(normalize(x) for x in coords))

    def basis(self) -> list["AlgebraElement"]:
        return [self.element(self.basis_vector(i)) for i in range(self.dim)]

    def zero(self) -> "AlgebraElement":
        return self.element(self.zero_vector())

    def one(self) -> "AlgebraElement":
        if self.unit is None:
            raise AlgebraError(f"{self.label or 'algebra'} has no unit")
        return self.element(self.unit)

    def is_commutative(self) -> bool:
        return all(self._table[i][j] == self._table[j][i] for i in range(self.dim) for j in range(i))


@dataclass(frozen=True, eq=False)
class AlgebraElement:
    algebra: Algebra
    coords: tuple

    def __post_init__(self):
        if len(self.coords) != self.algebra.dim:
            raise ValueError(f"element needs {self.algebra.dim} coordinates, got {len(self.coords)}")

    def _same(self, other: "AlgebraElement"):
        if not isinstance(other, AlgebraElement):
            return False
        if other.algebra is not self.algebra:
            raise AlgebraMismatch("elements belong to different algebras")
        return True

    def __eq__(self, other):
        if not isinstance(other, AlgebraElement):
            return NotImplemented
        return other.algebra is self.algebra and self.coords == other.coords

    def __hash__(self):
        return hash((id(self.algebra), self.coords))

    def __add__(self, other):
        if not self._same(other):
            return NotImplemented
        return self.algebra.element(a + b for a, b in zip(self.coords, other.coords))

    def __sub__(self, other):
        if not self._same(other):
            return NotImplemented
        return self.algebra.element(a - b for a, b in zip(self.coords, other.coords))

    def __neg__(self):
        return self.algebra.element(-a for a in self.coords)

    def __mul__(self, other):
        if isinstance(other, AlgebraElement):
            return multiply(self, other)
        return self.algebra.element(a * other for a in self.coords)

    def __rmul__(self, scalar):
        return self.algebra.element(scalar * a for a in self.coords)

    def is_zero(self) -> bool:
        return not any(self.coords)

    def __repr__(self):
        terms = [f"{c}*{lab}" for c, lab in zip(self.coords, self.algebra.basis_labels) if c]
        return " + ".join(terms) if terms else "0"


@dataclass(frozen=True)
class ModuleAction:
    """A one-sided module over an acting algebra, given by matrices.

    ``matrices[i]`` is the ``m x m`` matrix of the action of basis element
    ``i`` on column vectors.  For a right module the matrix of ``a``
    represents ``x -> x.a``.
    """

    space_dim: int
    matrices: tuple
    side: str = LEFT

    def act(self, i: int, x) -> tuple:
        m = self.matrices[i]
        return tuple(sum((m[r][c] * x[c] for c in range(self.space_dim) if x[c]), 0) for r in range(self.space_dim))

    def validate(self, acting: Algebra):
        _check_side(self.side)
        if len(self.matrices) != acting.dim:
            raise AlgebraError(f"need one action matrix per basis element ({acting.dim}), got {len(self.matrices)}")
        m = self.space_dim
        for mat in self.matrices:
            if len(mat) != m or any(len(r) != m for r in mat):
                raise AlgebraError(f"action matrices must be {m}x{m}")
        for i in range(acting.dim):
            for j in range(acting.dim):
                expect = [[0] * m for _ in range(m)]
                for k, c in acting._table[i][j]:
                    mk = self.matrices[k]
                    for r in range(m):
                        for s in range(m):
                            if mk[r][s]:
                                expect[r][s] += c * mk[r][s]
                if self.side == LEFT:
                    got = matmul(self.matrices[i], self.matrices[j], m)
                else:
                    # x.(e_i e_j) = (x.e_i).e_j
                    got = matmul(self.matrices[j], self.matrices[i], m)
                if got != expect:
                    raise AlgebraError(f"action does not respect the product e_{i} e_{j}")


def regular_action(alg: Algebra, side: str = LEFT) -> ModuleAction:
    """The algebra acting on itself by left or right multiplication."""
    _check_side(side)
    kind = "left" if side == LEFT else "right"
    mats = tuple(tuple(tuple(r) for r in alg.basis_op(kind, i)) for i in range(alg.dim))
    return ModuleAction(alg.dim, mats, side)


# ---------------------------------------------------------------------------
# construction and validation


def _table_from(dim: int, structure) -> list:
    table = [[[0] * dim for _ in range(dim)] for _ in range(dim)]
    if isinstance(structure, Mapping):
        for (i, j, k), c in structure.items():
            table[i][j][k] = normalize(c)
    else:
        flat = list(structure)
        if len(flat) == dim ** 3 and not (dim and isinstance(flat[0], (list, tuple))):
            for idx, c in enumerate(flat):
                i, rem = divmod(idx, dim * dim)
                j, k = divmod(rem, dim)
                table[i][j][k] = normalize(c)
        else:
            if len(flat) != dim or any(len(r) != dim for r in flat) or any(
                len(v) != dim for r in flat for v in r
            ):
                raise AlgebraError(f"structure must have {dim}^3 = {dim ** 3} entries")
            for i in range(dim):
                for j in range(dim):
                    for k in range(dim):
                        table[i][j][k] = normalize(flat[i][j][k])
    return [[tuple((k, c) for k, c in enumerate(table[i][j]) if c) for j in range(dim)] for i in range(dim)]


def find_unit(alg: Algebra) -> tuple | None:
    """Solve ``u e_i = e_i = e_i u`` for all i; None if the algebra has no unit."""
    d = alg.dim
    if d == 0:
        return ()
    rows, rhs = [], []
    for i in range(d):
        lo = alg.basis_op("right", i)  # u -> u e_i
        ro = alg.basis_op("left", i)  # u -> e_i u
        for k in range(d):
            rows.append(lo[k])
            rhs.append(1 if k == i else 0)
            rows.append(ro[k])
            rhs.append(1 if k == i else 0)
    return solve_linear(rows, rhs)


def make_algebra(dim: int, structure, unit=None, labels=None, label: str = "", matrix_size=None) -> Algebra:
    """Validated algebra from structure constants.

    ``structure`` may be nested ``[i][j][k]`` lists, a flat list of ``dim**3``
    values, or a mapping ``{(i, j, k): c}``.  Associativity is checked on every
    basis triple.  A declared unit is checked on every basis element; when no
    unit is declared one is detected if it exists.

    Raises:
        AssociativityViolation: some basis triple fails ``(ab)c = a(bc)``.
        UnitViolation: the declared unit is not a two-sided identity.
    """
    if dim < 0:
        raise AlgebraError("dimension must be non-negative")
    if labels is not None and len(labels) != dim:
        raise AlgebraError(f"expected {dim} basis labels, got {len(labels)}")
    table = _table_from(dim, structure)
    alg = Algebra(dim, table, None, labels, label, matrix_size)
    for i, j, k in itertools.product(range(dim), repeat=3):
        e = alg.basis_vector
        left = alg.mul(alg.mul(e(i), e(j)), e(k))
        right = alg.mul(e(i), alg.mul(e(j), e(k)))
        if left != right:
            raise AssociativityViolation(i, j, k, left, right)
    if unit is not None:
        unit = tuple(normalize(x) for x in unit)
        if len(unit) != dim:
            raise AlgebraError(f"unit needs {dim} coordinates")
        for i in range(dim):
            e = alg.basis_vector(i)
            if alg.mul(unit, e) != e or alg.mul(e, unit) != e:
                raise UnitViolation(i)
        alg.unit = unit
    else:
        alg.unit = find_unit(alg) if dim else None
    return alg


# ---------------------------------------------------------------------------
# element-level operations


def _owner(*elements: AlgebraElement) -> Algebra:
    alg = elements[0].algebra
    for e in elements[1:]:
        if e.algebra is not alg:
            raise AlgebraMismatch("elements belong to different algebras")
    return alg


def multiply(a: AlgebraElement, b: AlgebraElement) -> AlgebraElement:
    alg = _owner(a, b)
    return alg.element(alg.mul(a.coords, b.coords))


def bracket(a: AlgebraElement, b: AlgebraElement) -> AlgebraElement:
    alg = _owner(a, b)
    return alg.element(alg.bracket(a.coords, b.coords))


def p_n(args: Sequence[AlgebraElement]) -> AlgebraElement:
    """The nested commutator ``[...[[a_1, a_2], a_3], ..., a_n]``; ``p_1(a) = a``."""
    if not args:
        raise ValueError("p_n needs at least one argument")
    alg = _owner(*args)
    return alg.element(alg.pn([a.coords for a in args]))


def center(alg: Algebra) -> SubspaceBasis:
    """Canonical basis of ``{x : [x, e_i] = 0 for all i}``."""
    rs = RowSpace(alg.dim)
    for i in range(alg.dim):
        rs.extend(alg.basis_op("ad_right", i))
    return rs.nullspace()


def mult_operator(a: AlgebraElement, side: str) -> Matrix:
    """Matrix of ``x -> a x`` (side='left') or ``x -> x a`` (side='right')."""
    _check_side(side)
    alg = a.algebra
    m = alg.left_op(a.coords) if side == LEFT else alg.right_op(a.coords)
    return Matrix.from_rows(m, cols=alg.dim)


def annihilator(a: AlgebraElement, side: str) -> SubspaceBasis:
    """Right annihilator ``{b : ab = 0}`` or left annihilator ``{b : ba = 0}``."""
    _check_side(side)
    alg = a.algebra
    m = alg.left_op(a.coords) if side == RIGHT else alg.right_op(a.coords)
    return RowSpace(alg.dim, m).nullspace()


def sandwich_matrix(alg: Algebra, p, s) -> list[list]:
    """Matrix of ``x -> p x s`` on raw coordinates; ``None`` means no factor."""
    d = alg.dim
    if p is None and s is None:
        return [[1 if i == j else 0 for j in range(d)] for i in range(d)]
    if p is None:
        return alg.right_op(s)
    if s is None:
        return alg.left_op(p)
    return matmul(alg.left_op(p), alg.right_op(s), d)


def sandwich_kernel(p: AlgebraElement | None, s: AlgebraElement | None) -> SubspaceBasis:
    """``{x : p x s = 0}``."""
    owners = [e for e in (p, s) if e is not None]
    if not owners:
        raise ValueError("at least one of p, s is required")
    alg = _owner(*owners)
    m = sandwich_matrix(alg, None if p is None else p.coords, None if s is None else s.coords)
    return RowSpace(alg.dim, m).nullspace()


def unitize(alg: Algebra) -> Algebra:
    """Adjoin a two-sided identity as a new last basis element."""
    if alg.unit is not None:
        raise AlreadyUnital(f"{alg.label or 'algebra'} already has a unit")
    d = alg.dim
    sc = {}
    for i, j, k, c in alg.nonzero_structure():
        sc[(i, j, k)] = c
    for i in range(d + 1):
        sc[(d, i, i)] = 1
        sc[(i, d, i)] = 1
    unit = tuple(1 if i == d else 0 for i in range(d + 1))
    labels = list(alg.basis_labels) + ["1"]
    return make_algebra(d + 1, sc, unit=unit, labels=labels, label=f"{alg.label}#")


def embed_in_unitization(x: AlgebraElement, unitization: Algebra) -> AlgebraElement:
    if unitization.dim != x.algebra.dim + 1:
        raise AlgebraMismatch("target is not the unitization of the element's algebra")
    return unitization.element(tuple(x.coords) + (0,))
