"""Linear-map conditions as exact linear constraints.

A linear map ``phi`` on a d-dimensional algebra is a d x d coordinate matrix
whose columns are the images of the basis elements.  Its d^2 entries are the
unknowns, ordered column-major: unknown ``c*d + r`` is ``phi[r][c]``.  Every
condition handled here is linear in ``phi`` once the algebra arguments are
fixed, so a condition becomes a set of rows over those unknowns.

Two regimes:

* multilinear or diagonal conditions (Lie n-centralizer, n-commuting,
  commuting, centralizing, derivation) have a finite complete row set and
  are solved exactly;
* the zero-product families T, Tl, Tr (``a1 a2 = 0``) and N, Nl, Nr
  (``a1 a2 ... an = 0``) quantify over a variety.  They are solved from
  sampled tuples with stabilization and verification.  Every sampled row is
  a genuine consequence of the condition, so the returned space always
  contains the true solution space.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from enum import Enum
from typing import Iterator, Optional, Sequence

from .algebra import Algebra, AlgebraElement, AlgebraMismatch, center, matmul, sandwich_matrix
from .constructions import rank_one_idempotents
from .linalg import Matrix, RowSpace, SubspaceBasis, div
from .scalar import normalize


class Kind(str, Enum):
    LIE_N = "lie-n"
    N_COMMUTING = "n-commuting"
    COMMUTING = "commuting"
    CENTRALIZING = "centralizing"
    DERIVATION = "derivation"
    T = "T"
    TL = "Tl"
    TR = "Tr"
    N = "N"
    NL = "Nl"
    NR = "Nr"


BOTH, LEFT, RIGHT = "both", "left", "right"
T_FAMILY = {Kind.T: BOTH, Kind.TL: LEFT, Kind.TR: RIGHT}
N_FAMILY = {Kind.N: BOTH, Kind.NL: LEFT, Kind.NR: RIGHT}
EXACT_KINDS = (Kind.LIE_N, Kind.N_COMMUTING, Kind.COMMUTING, Kind.CENTRALIZING, Kind.DERIVATION)
SIX_CONDITIONS = (Kind.T, Kind.TL, Kind.TR, Kind.N, Kind.NL, Kind.NR)
_ORDERLESS = (Kind.COMMUTING, Kind.CENTRALIZING, Kind.DERIVATION)
# names the n = 2 cases go by
_N2_ALIAS = {Kind.T: "C", Kind.N: "C", Kind.TL: "C1", Kind.NL: "C1", Kind.TR: "C2", Kind.NR: "C2"}


class ProductNotZero(ValueError):
    pass


class AmbiguousLambda(ValueError):
    """The scalar part of a proper form is undetermined (every basis element is central)."""


@dataclass(frozen=True)
class ConditionSpec:
    kind: Kind
    n: int = 2

    def __post_init__(self):
        object.__setattr__(self, "kind", Kind(self.kind))
        if self.kind in _ORDERLESS:
            object.__setattr__(self, "n", 2)
        elif self.n < 2:
            raise ValueError(f"order n must be >= 2, got {self.n}")

    @property
    def sides(self) -> str:
        if self.kind in T_FAMILY:
            return T_FAMILY[self.kind]
        if self.kind in N_FAMILY:
            return N_FAMILY[self.kind]
        return LEFT

    @property
    def exact(self) -> bool:
        return self.kind in EXACT_KINDS

    def alias(self) -> Optional[str]:
        """Name of the classical condition this coincides with at n = 2, if any."""
        return _N2_ALIAS.get(self.kind) if self.n == 2 else None

    def __str__(self):
        return self.kind.value if self.kind in _ORDERLESS else f"{self.kind.value}(n={self.n})"


@dataclass(frozen=True)
class SolveConfig:
    seed: int = 0xC0FFEE
    coord_bound: int = 10
    batch_size: int = 32
    stable_rounds: int = 5
    verify_trials: int = 200
    max_rounds: int = 200

    def __post_init__(self):
        if self.coord_bound < 1 or self.batch_size < 1 or self.stable_rounds < 1:
            raise ValueError("coord_bound, batch_size and stable_rounds must be >= 1")
        if self.verify_trials < 0 or self.max_rounds < 1:
            raise ValueError("verify_trials must be >= 0 and max_rounds >= 1")

    def rng(self, *tags) -> random.Random:
        return random.Random(":".join(str(t) for t in (self.seed,) + tags))


# ---------------------------------------------------------------------------
# LinearMap


@dataclass(frozen=True, eq=False)
class LinearMap:
    """Linear self-map of an algebra; ``matrix`` column j is the image of e_j."""

    algebra: Algebra
    matrix: Matrix

    def __post_init__(self):
        d = self.algebra.dim
        if self.matrix.rows != d or self.matrix.cols != d:
            raise ValueError(f"map matrix must be {d}x{d}, got {self.matrix.rows}x{self.matrix.cols}")
        object.__setattr__(self, "_cols", [self.matrix.column(j) for j in range(d)])

    @classmethod
    def from_rows(cls, alg: Algebra, rows) -> "LinearMap":
        return cls(alg, Matrix.from_rows(rows, cols=alg.dim))

    @classmethod
    def from_function(cls, alg: Algebra, f) -> "LinearMap":
        """Map fixed by ``f`` on basis coordinate tuples (``f(e_j)`` gives column j)."""
        cols = [tuple(f(alg.basis_vector(j))) for j in range(alg.dim)]
        return cls.from_rows(alg, [[cols[j][i] for j in range(alg.dim)] for i in range(alg.dim)])

    @classmethod
    def from_vector(cls, alg: Algebra, vec) -> "LinearMap":
        d = alg.dim
        if len(vec) != d * d:
            raise ValueError(f"expected {d * d} unknowns")
        return cls.from_rows(alg, [[vec[c * d + r] for c in range(d)] for r in range(d)])

    @classmethod
    def identity(cls, alg: Algebra) -> "LinearMap":
        return cls(alg, Matrix.identity(alg.dim))

    @classmethod
    def zero(cls, alg: Algebra) -> "LinearMap":
        return cls(alg, Matrix.zeros(alg.dim, alg.dim))

    def to_vector(self) -> tuple:
        return tuple(x for col in self._cols for x in col)

    def apply(self, x) -> tuple:
        out = [0] * self.algebra.dim
        for c, a in enumerate(x):
            if a:
                for r, m in enumerate(self._cols[c]):
                    if m:
                        out[r] += a * m
        return tuple(out)

    def __call__(self, x: AlgebraElement) -> AlgebraElement:
        if x.algebra is not self.algebra:
            raise AlgebraMismatch("element is not in the map's algebra")
        return self.algebra.element(self.apply(x.coords))

    def __add__(self, other: "LinearMap") -> "LinearMap":
        return LinearMap(self.algebra, Matrix(self.matrix.rows, self.matrix.cols, tuple(
            normalize(a + b) for a, b in zip(self.matrix.entries, other.matrix.entries))))

    def __sub__(self, other: "LinearMap") -> "LinearMap":
        return self + (-1) * other

    def __rmul__(self, s) -> "LinearMap":
        return LinearMap(self.algebra, Matrix(self.matrix.rows, self.matrix.cols, tuple(
            normalize(s * a) for a in self.matrix.entries)))

    def __eq__(self, other):
        if not isinstance(other, LinearMap):
            return NotImplemented
        return self.algebra is other.algebra and self.matrix == other.matrix

    def __hash__(self):
        return hash((id(self.algebra), self.matrix.entries))


# ---------------------------------------------------------------------------
# constraint rows


def _term_rows(d: int, terms) -> list[dict]:
    """Rows of ``sum sign * A phi b`` as d sparse rows over the d^2 unknowns.

    Each term is ``(sign, A, b)`` with ``A`` a d x d list matrix or None for
    the identity.  Uses ``vec(A phi b) = (b^T kron A) vec(phi)``.
    """
    rows = [dict() for _ in range(d)]
    for sign, A, b in terms:
        bs = [(c, x if sign > 0 else -x) for c, x in enumerate(b) if x]
        if not bs:
            continue
        if A is None:
            for k in range(d):
                row = rows[k]
                for c, x in bs:
                    idx = c * d + k
                    row[idx] = row.get(idx, 0) + x
            continue
        for k in range(d):
            Ak = A[k]
            row = rows[k]
            for r in range(d):
                a = Ak[r]
                if not a:
                    continue
                for c, x in bs:
                    idx = c * d + r
                    row[idx] = row.get(idx, 0) + a * x
    out = []
    for row in rows:
        row = {i: v for i, v in row.items() if v}
        if row:
            out.append(row)
    return out


def _matvec(m, v) -> tuple:
    return tuple(sum((a * x for a, x in zip(row, v) if a and x), 0) for row in m)


class _Ops:
    """Cached operator algebra used to build rows quickly."""

    def __init__(self, alg: Algebra):
        self.alg = alg
        self.d = alg.dim
        self._tails = {(): None}

    def tail(self, idx: tuple):
        """Matrix of ``x -> [...[x, e_i1], ..., e_ik]`` for basis indices ``idx``."""
        t = self._tails.get(idx)
        if t is None and idx:
            prev = self.tail(idx[:-1])
            op = self.alg.basis_op("ad_right", idx[-1])
            t = op if prev is None else matmul(op, prev, self.d)
            self._tails[idx] = t
        return t

    def compose(self, tail, op):
        return op if tail is None else matmul(tail, op, self.d)

    def tail_of(self, elems):
        t = None
        for a in elems:
            op = self.alg.ad_right(a)
            t = op if t is None else matmul(op, t, self.d)
        return t

    def side_terms(self, args, tail, sides: str):
        """Terms of ``phi(p_n(args)) - p_n(..phi(a_s)..)`` for the requested sides.

        ``tail`` is the operator for slots 3..n (None when n = 2).
        """
        alg = self.alg
        a1, a2 = args[0], args[1]
        op1 = self.compose(tail, alg.ad_right(a2))
        v = _matvec(op1, a1)
        out = []
        if sides in (LEFT, BOTH):
            out.append([(1, None, v), (-1, op1, a1)])
        if sides in (RIGHT, BOTH):
            op2 = self.compose(tail, alg.ad_left(a1))
            out.append([(1, None, v), (-1, op2, a2)])
        return out

    def rows_for_tuple(self, args, sides: str) -> list[dict]:
        tail = self.tail_of(args[2:]) if len(args) > 2 else None
        rows = []
        for terms in self.side_terms(args, tail, sides):
            rows.extend(_term_rows(self.d, terms))
        return rows

    def rows_for_pair(self, a1, a2, n: int, sides: str) -> list[dict]:
        """Rows for (a1, a2, e_i3, ..., e_in) over every basis choice of slots 3..n."""
        rows = []
        for idx in itertools.product(range(self.d), repeat=n - 2):
            for terms in self.side_terms((a1, a2), self.tail(idx), sides):
                rows.extend(_term_rows(self.d, terms))
        return rows


def _product_zero(alg: Algebra, args) -> bool:
    return not any(alg.product(args))


def tuple_constraint_rows(alg: Algebra, spec: ConditionSpec, args: Sequence, side: str | None = None) -> list[dict]:
    """Constraint rows one tuple imposes on ``phi``.

    Rows are sparse dicts over the d^2 unknowns.  ``side`` chooses the
    identity: left ``phi(p_n(a)) = p_n(phi(a1), a2, ...)``, right
    ``phi(p_n(a)) = p_n(a1, phi(a2), ...)``, or both; it defaults to the
    sides of ``spec``.

    Raises:
        ProductNotZero: a T-family tuple has ``a1 a2 != 0`` or an N-family
            tuple has nonzero full product.
    """
    coords = [a.coords if isinstance(a, AlgebraElement) else tuple(a) for a in args]
    if len(coords) != spec.n:
        raise ValueError(f"{spec} needs {spec.n} arguments, got {len(coords)}")
    if spec.kind in T_FAMILY and not _product_zero(alg, coords[:2]):
        raise ProductNotZero("a1 a2 != 0")
    if spec.kind in N_FAMILY and not _product_zero(alg, coords):
        raise ProductNotZero("a1 a2 ... an != 0")
    if spec.kind not in T_FAMILY and spec.kind not in N_FAMILY and spec.kind is not Kind.LIE_N:
        raise ValueError(f"{spec} is not a tuple condition")
    return _Ops(alg).rows_for_tuple(coords, side or spec.sides)


def _multisets(d: int, n: int):
    return itertools.combinations_with_replacement(range(d), n)


def _diagonal_terms(ops: _Ops, ms: tuple) -> list:
    """Terms of the coefficient of the monomial ``ms`` in ``p_n(phi(a), a, ..., a)``.

    The coefficient is the sum of ``p_n(phi(e_s1), e_s2, ..., e_sn)`` over the
    distinct arrangements ``s`` of the multiset; grouping by the first slot
    gives one summed tail operator per index.
    """
    d = ops.d
    terms = []
    for i in sorted(set(ms)):
        rest = list(ms)
        rest.remove(i)
        acc = None
        for arr in set(itertools.permutations(rest)):
            t = ops.tail(arr)
            acc = [row[:] for row in t] if acc is None else [
                [x + y for x, y in zip(ra, rt)] for ra, rt in zip(acc, t)
            ]
        e = [0] * d
        e[i] = 1
        terms.append((1, acc, e))
    return terms


def _diagonal_block(ops: _Ops, ms: tuple) -> list[dict]:
    """All d output-coordinate rows for one multiset, empty rows kept as {}."""
    d = ops.d
    rows = [dict() for _ in range(d)]
    for _, A, b in _diagonal_terms(ops, ms):
        c = b.index(1)
        for k in range(d):
            for r, a in enumerate(A[k]):
                if a:
                    idx = c * d + r
                    rows[k][idx] = rows[k].get(idx, 0) + a
    return [{i: v for i, v in r.items() if v} for r in rows]


def _diagonal_rows(ops: _Ops, n: int) -> Iterator[list[dict]]:
    """Polarized rows of ``p_n(phi(a), a, ..., a) = 0``, one block per multiset.

    Over a field of characteristic 0 a polynomial identity holds for every
    ``a`` exactly when each monomial coefficient vanishes.
    """
    for ms in _multisets(ops.d, n):
        yield [r for r in _diagonal_block(ops, ms) if r]


def _center_projector(alg: Algebra) -> list[list]:
    """Rows q with ``q.z = 0`` exactly for z in the centre."""
    return [list(r) for r in center(alg).annihilator().basis]


def polarized_constraints(alg: Algebra, spec: ConditionSpec) -> list[dict]:
    """Complete finite row set for an exactly solvable condition."""
    ops = _Ops(alg)
    d = alg.dim
    kind = spec.kind
    rows: list[dict] = []
    if kind is Kind.LIE_N:
        # tuple (e_i1, e_i2..e_in): phi(T e_i1) - T phi(e_i1) with T the tail op
        for idx in itertools.product(range(d), repeat=spec.n - 1):
            T = ops.tail(idx)
            for i1 in range(d):
                col = [T[k][i1] for k in range(d)]
                e = [0] * d
                e[i1] = 1
                rows.extend(_term_rows(d, [(1, None, col), (-1, T, e)]))
    elif kind in (Kind.N_COMMUTING, Kind.COMMUTING):
        n = 2 if kind is Kind.COMMUTING else spec.n
        for block in _diagonal_rows(ops, n):
            rows.extend(block)
    elif kind is Kind.CENTRALIZING:
        # [phi(a), a] only has to vanish modulo the centre
        Q = _center_projector(alg)
        for ms in _multisets(d, 2):
            block = _diagonal_block(ops, ms)
            for q in Q:
                acc = {}
                for k, r in enumerate(block):
                    if q[k]:
                        for i, v in r.items():
                            acc[i] = acc.get(i, 0) + q[k] * v
                acc = {i: v for i, v in acc.items() if v}
                if acc:
                    rows.append(acc)
    elif kind is Kind.DERIVATION:
        for i in range(d):
            for j in range(d):
                ei = alg.basis_vector(i)
                ej = alg.basis_vector(j)
                rows.extend(_term_rows(d, [
                    (1, None, alg.mul(ei, ej)),
                    (-1, alg.basis_op("left", i), ej),
                    (-1, alg.basis_op("right", j), ei),
                ]))
    else:
        raise ValueError(f"{spec} has no finite complete constraint set")
    return rows


# ---------------------------------------------------------------------------
# sampling


def _rand_vec(rng: random.Random, d: int, bound: int, style: str = "mixed") -> list:
    if style == "mixed":
        style = rng.choice(("dense", "sparse"))
    if style == "dense":
        return [rng.randint(-bound, bound) for _ in range(d)]
    v = [0] * d
    for i in rng.sample(range(d), min(d, rng.randint(1, 2))):
        v[i] = rng.choice([x for x in range(-bound, bound + 1) if x])
    return v


def _rand_in(rng: random.Random, space: SubspaceBasis, bound: int) -> tuple:
    if not space.dim:
        return (0,) * space.ambient_dim
    coeffs = _rand_vec(rng, space.dim, bound)
    if not any(coeffs):
        coeffs[rng.randrange(space.dim)] = 1
    return space.combine(coeffs)


def _idempotents(alg: Algebra) -> list[tuple]:
    """Idempotents used for structured pairs; the unit is skipped (its pairs are trivial)."""
    if alg.matrix_size and alg.matrix_size >= 2:
        return [e.coords for e in rank_one_idempotents(alg)]
    out = []
    for i in range(alg.dim):
        e = alg.basis_vector(i)
        if tuple(alg.mul(e, e)) == e and e != alg.unit:
            out.append(e)
    return out


def _sub(x, y) -> tuple:
    return tuple(normalize(a - b) for a, b in zip(x, y))


class _Sampler:
    """Draws tuples whose relevant product vanishes, as raw coordinate tuples."""

    def __init__(self, alg: Algebra, rng: random.Random, bound: int, retries: int = 8):
        self.alg = alg
        self.d = alg.dim
        self.rng = rng
        self.bound = bound
        self.retries = retries
        self.idem = _idempotents(alg)

    def vec(self, style="mixed") -> tuple:
        alg, rng = self.alg, self.rng
        if style == "thin" and self.d:
            # x e_i y: usually rank-deficient, so kernels below are non-trivial
            i = rng.randrange(self.d)
            v = alg.mul(alg.mul(self.vec("sparse"), alg.basis_vector(i)), self.vec("sparse"))
            if any(v):
                return tuple(normalize(x) for x in v)
            style = "sparse"
        return tuple(_rand_vec(rng, self.d, self.bound, style))

    def basis_zero_pairs(self) -> list[tuple]:
        alg = self.alg
        out = []
        for i in range(self.d):
            for j in range(self.d):
                ei, ej = alg.basis_vector(i), alg.basis_vector(j)
                if not any(alg.mul(ei, ej)):
                    out.append((ei, ej))
        return out

    def basis_zero_tuples(self, n: int, cap: int = 20000) -> list[tuple]:
        if self.d ** n > cap:
            return []
        alg = self.alg
        out = []
        for idx in itertools.product(range(self.d), repeat=n):
            t = tuple(alg.basis_vector(i) for i in idx)
            if _product_zero(alg, t):
                out.append(t)
        return out

    def idempotent_pairs(self) -> list[tuple]:
        """``(x - xE, E)``, ``(xE, y - Ey)``, ``(E, y - Ey)``, ``(x - xE, Ey)`` per idempotent."""
        alg = self.alg
        out = []
        for E in self.idem:
            x, y = self.vec(), self.vec()
            xE = alg.mul(x, E)
            Ey = alg.mul(E, y)
            out.append((_sub(x, xE), E))
            out.append((tuple(map(normalize, xE)), _sub(y, Ey)))
            out.append((E, _sub(y, Ey)))
            out.append((_sub(x, xE), tuple(map(normalize, Ey))))
        return out

    def random_pair(self) -> tuple:
        alg, rng = self.alg, self.rng
        left = rng.random() < 0.5
        for attempt in range(self.retries):
            a = self.vec("mixed" if attempt == 0 else rng.choice(("sparse", "thin")))
            op = alg.left_op(a) if left else alg.right_op(a)
            ker = RowSpace(self.d, op).nullspace()
            if ker.dim:
                b = _rand_in(rng, ker, self.bound)
                return (a, b) if left else (b, a)
        if self.idem:
            return rng.choice(self.idempotent_pairs())
        return (a, (0,) * self.d) if left else ((0,) * self.d, a)

    def random_tuple(self, n: int) -> tuple:
        alg, rng = self.alg, self.rng
        for attempt in range(self.retries):
            j = rng.randrange(n)
            style = "mixed" if attempt == 0 else rng.choice(("sparse", "thin"))
            others = [self.vec(style) for _ in range(n - 1)]
            pre, post = others[:j], others[j:]
            p = alg.product(pre) if pre else None
            s = alg.product(post) if post else None
            ker = RowSpace(self.d, sandwich_matrix(alg, p, s)).nullspace()
            if ker.dim:
                t = tuple(pre) + (_rand_in(rng, ker, self.bound),) + tuple(post)
                break
        else:
            # adjacent zero pair at (j, j+1), other slots arbitrary
            j = rng.randrange(n - 1)
            a, b = self.random_pair()
            t = tuple(self.vec() for _ in range(j)) + (a, b) + tuple(self.vec() for _ in range(n - j - 2))
        if not _product_zero(alg, t):
            raise AssertionError("sampler produced a tuple with nonzero product")
        return t


def zero_pair_generators(alg: Algebra, count: int, rng: random.Random, bound: int = 10) -> Iterator[tuple]:
    """Pairs ``(a1, a2)`` with ``a1 a2 = 0``.

    Yields every basis pair with zero product, one round of idempotent pairs,
    then ``count`` random pairs with ``a2`` drawn from the right annihilator
    of ``a1`` (or ``a1`` from the left annihilator of ``a2``).
    """
    s = _Sampler(alg, rng, bound)
    pairs = itertools.chain(s.basis_zero_pairs(), s.idempotent_pairs(), (s.random_pair() for _ in range(count)))
    for a, b in pairs:
        if any(alg.mul(a, b)):
            raise AssertionError("generated pair has nonzero product")
        yield alg.element(a), alg.element(b)


def zero_nproduct_generators(alg: Algebra, n: int, count: int, rng: random.Random, bound: int = 10) -> Iterator[tuple]:
    """n-tuples with ``a1 a2 ... an = 0``: zero basis tuples, then ``count`` sampled ones."""
    if n < 2:
        raise ValueError("n must be >= 2")
    s = _Sampler(alg, rng, bound)
    for t in itertools.chain(s.basis_zero_tuples(n), (s.random_tuple(n) for _ in range(count))):
        yield tuple(alg.element(a) for a in t)


# ---------------------------------------------------------------------------
# outcomes


@dataclass(frozen=True)
class Witness:
    """Arguments on which an identity fails, with both evaluated sides."""

    args: tuple
    lhs: AlgebraElement
    rhs: AlgebraElement
    identity: str


@dataclass(frozen=True)
class Verification:
    trials: int
    failures: int
    witness: Optional[Witness] = None
    repairs: int = 0

    @property
    def passed(self) -> bool:
        return self.failures == 0


@dataclass(frozen=True, eq=False)
class SolveOutcome:
    algebra: Algebra
    spec: ConditionSpec
    space: SubspaceBasis
    mode: str
    rounds_used: int
    constraints_used: int
    verification: Verification
    config: SolveConfig
    complete: bool = True

    @property
    def dim(self) -> int:
        return self.space.dim

    def basis_maps(self) -> list[LinearMap]:
        return [LinearMap.from_vector(self.algebra, v) for v in self.space.basis]

    def contains(self, phi: LinearMap) -> bool:
        return phi.to_vector() in self.space


@dataclass(frozen=True)
class CheckOutcome:
    passed: bool
    witness: Optional[Witness] = None

    @property
    def verdict(self) -> str:
        return "pass" if self.passed else "fail"


class MaxRoundsExceeded(RuntimeError):
    def __init__(self, outcome: SolveOutcome):
        super().__init__(f"{outcome.spec} on {outcome.algebra.label} did not stabilize "
                         f"within {outcome.config.max_rounds} rounds")
        self.outcome = outcome


# ---------------------------------------------------------------------------
# direct evaluation (independent of the row construction)


def _identity_failure(alg: Algebra, phi: LinearMap, args, sides: str) -> Optional[Witness]:
    lhs = phi.apply(alg.pn(args))
    checks = []
    if sides in (LEFT, BOTH):
        checks.append((LEFT, lambda: alg.pn([phi.apply(args[0])] + list(args[1:]))))
    if sides in (RIGHT, BOTH):
        checks.append((RIGHT, lambda: alg.pn([args[0], phi.apply(args[1])] + list(args[2:]))))
    for name, rhs_fn in checks:
        rhs = rhs_fn()
        if any(normalize(a - b) for a, b in zip(lhs, rhs)):
            el = alg.element
            return Witness(tuple(el(a) for a in args), el(lhs), el(rhs), name)
    return None


def _diagonal_value(alg: Algebra, phi: LinearMap, a, n: int) -> tuple:
    return alg.pn([phi.apply(a)] + [a] * (n - 1))


def _diagonal_failure(alg: Algebra, phi: LinearMap, a, spec: ConditionSpec, zc=None) -> Optional[Witness]:
    """Witness if ``p_n(phi(a), a, ..., a)`` is nonzero (non-central for centralizing)."""
    n = 2 if spec.kind in (Kind.COMMUTING, Kind.CENTRALIZING) else spec.n
    v = _diagonal_value(alg, phi, a, n)
    bad = v not in zc if spec.kind is Kind.CENTRALIZING else any(v)
    if not bad:
        return None
    name = "central" if spec.kind is Kind.CENTRALIZING else "zero"
    return Witness((alg.element(a),), alg.element(v), alg.zero(), name)


def _leibniz_failure(alg: Algebra, phi: LinearMap, a, b) -> Optional[Witness]:
    lhs = phi.apply(alg.mul(a, b))
    rhs = tuple(x + y for x, y in zip(alg.mul(a, phi.apply(b)), alg.mul(phi.apply(a), b)))
    if any(normalize(x - y) for x, y in zip(lhs, rhs)):
        el = alg.element
        return Witness((el(a), el(b)), el(lhs), el(rhs), "leibniz")
    return None


def _random_failure(alg, phi, spec, sampler: _Sampler, zc) -> Optional[Witness]:
    """Evaluate ``phi`` against one fresh random instance of the condition."""
    kind, n = spec.kind, spec.n
    if kind is Kind.DERIVATION:
        return _leibniz_failure(alg, phi, sampler.vec(), sampler.vec())
    if kind in (Kind.N_COMMUTING, Kind.COMMUTING, Kind.CENTRALIZING):
        return _diagonal_failure(alg, phi, sampler.vec(), spec, zc)
    if kind is Kind.LIE_N:
        return _identity_failure(alg, phi, [sampler.vec() for _ in range(n)], LEFT)
    if kind in T_FAMILY:
        a, b = sampler.random_pair()
        return _identity_failure(alg, phi, [a, b] + [sampler.vec() for _ in range(n - 2)], spec.sides)
    return _identity_failure(alg, phi, list(sampler.random_tuple(n)), spec.sides)


# ---------------------------------------------------------------------------
# solving

# exact solves are complete by construction; the random spot check only guards the code
_EXACT_SPOT_CHECKS = 20


def _exact_solve(alg: Algebra, spec: ConditionSpec, config: SolveConfig) -> SolveOutcome:
    d = alg.dim
    rows = polarized_constraints(alg, spec)
    rs = RowSpace(d * d)
    rs.extend(rows)
    space = rs.nullspace()
    sampler = _Sampler(alg, config.rng("spot", alg.label, spec), config.coord_bound)
    zc = center(alg) if spec.kind is Kind.CENTRALIZING else None
    maps = [LinearMap.from_vector(alg, v) for v in space.basis]
    trials = min(config.verify_trials, _EXACT_SPOT_CHECKS)
    for _ in range(trials):
        for phi in maps:
            w = _random_failure(alg, phi, spec, sampler, zc)
            if w is not None:
                raise AssertionError(f"exact solve of {spec} produced a map violating it: {w}")
    return SolveOutcome(alg, spec, space, "exact", 1, len(rows), Verification(trials, 0), config)


def _randomized_solve(alg: Algebra, spec: ConditionSpec, config: SolveConfig) -> SolveOutcome:
    d = alg.dim
    n, sides = spec.n, spec.sides
    tfam = spec.kind in T_FAMILY
    ops = _Ops(alg)
    sampler = _Sampler(alg, config.rng("solve", alg.label, spec), config.coord_bound)
    checker = _Sampler(alg, config.rng("verify", alg.label, spec), config.coord_bound)
    rs = RowSpace(d * d)
    used = 0

    def add(t) -> None:
        nonlocal used
        used += 1
        if tfam:
            rs.extend(ops.rows_for_pair(t[0], t[1], n, sides))
        else:
            rs.extend(ops.rows_for_tuple(t, sides))

    def structured():
        if tfam:
            return sampler.basis_zero_pairs() + sampler.idempotent_pairs()
        out = list(sampler.basis_zero_tuples(n))
        for a, b in sampler.idempotent_pairs():
            j = sampler.rng.randrange(n - 1)
            out.append(tuple(sampler.vec() for _ in range(j)) + (a, b)
                       + tuple(sampler.vec() for _ in range(n - j - 2)))
        return out

    for t in structured():
        add(t)
    rounds, repairs = 0, 0
    witness = None
    while True:
        stable = 0
        while stable < config.stable_rounds:
            if rounds >= config.max_rounds:
                partial = SolveOutcome(alg, spec, rs.nullspace(), "randomized", rounds, used,
                                       Verification(0, repairs, witness, repairs), config, complete=False)
                raise MaxRoundsExceeded(partial)
            rounds += 1
            before = rs.rank
            batch = [sampler.random_pair() if tfam else sampler.random_tuple(n) for _ in range(config.batch_size)]
            if rounds % 2 == 0 and sampler.idem:
                # refresh the idempotent pairs with new random factors
                batch += structured()[-4 * len(sampler.idem):]
            for t in batch:
                add(t)
            stable = stable + 1 if rs.rank == before else 0
        space = rs.nullspace()
        maps = [LinearMap.from_vector(alg, v) for v in space.basis]
        failures = 0
        for _ in range(config.verify_trials):
            if tfam:
                a, b = checker.random_pair()
                args = [a, b] + [checker.vec() for _ in range(n - 2)]
            else:
                args = list(checker.random_tuple(n))
            for phi in maps:
                w = _identity_failure(alg, phi, args, sides)
                if w is not None:
                    failures += 1
                    witness = w
                    add(args[:2] if tfam else args)
                    break
        if failures == 0:
            return SolveOutcome(alg, spec, space, "randomized", rounds, used,
                                Verification(config.verify_trials, 0, None, repairs), config)
        repairs += failures


_SOLVE_CACHE: dict = {}


def solve_space(alg: Algebra, spec: ConditionSpec, config: SolveConfig | None = None) -> SolveOutcome:
    """Space of all linear maps satisfying ``spec``, as d^2-dimensional vectors.

    Exact kinds: the null space of the complete polarized row set.  T/N
    families: rows from structured and random zero-product tuples, added in
    batches until the rank is unchanged for ``stable_rounds`` batches, then
    each basis map is checked on ``verify_trials`` fresh tuples; a failure
    adds that tuple's rows and resumes.  The result always contains the true
    solution space.

    Raises:
        MaxRoundsExceeded: the round cap was hit; ``exc.outcome`` holds the
            partial (still over-approximating) space.
    """
    config = config or SolveConfig()
    key = (id(alg), spec, config)
    hit = _SOLVE_CACHE.get(key)
    if hit is not None and hit.algebra is alg:
        return hit
    out = _exact_solve(alg, spec, config) if spec.exact else _randomized_solve(alg, spec, config)
    _SOLVE_CACHE[key] = out
    return out


def clear_cache() -> None:
    """Forget memoized solves (used to time solves from scratch)."""
    _SOLVE_CACHE.clear()


def derivation_space(alg: Algebra, config: SolveConfig | None = None) -> SolveOutcome:
    return solve_space(alg, ConditionSpec(Kind.DERIVATION), config)


# ---------------------------------------------------------------------------
# checking


def _row_value(row: dict, vec) -> object:
    return normalize(sum((v * vec[i] for i, v in row.items()), 0))


def check_map(alg: Algebra, phi: LinearMap, spec: ConditionSpec, config: SolveConfig | None = None) -> CheckOutcome:
    """Decide whether ``phi`` satisfies ``spec``; on failure return a witness.

    Exact kinds are decided exactly.  T/N families are tested on every
    structured tuple and ``verify_trials`` random ones, so a pass there means
    no violation was found.
    """
    if phi.algebra is not alg:
        raise AlgebraMismatch("map is defined on a different algebra")
    config = config or SolveConfig()
    d, kind, n = alg.dim, spec.kind, spec.n
    sampler = _Sampler(alg, config.rng("check", alg.label, spec), config.coord_bound)
    if kind is Kind.LIE_N:
        for idx in itertools.product(range(d), repeat=n):
            w = _identity_failure(alg, phi, [alg.basis_vector(i) for i in idx], LEFT)
            if w:
                return CheckOutcome(False, w)
        return CheckOutcome(True)
    if kind is Kind.DERIVATION:
        for i in range(d):
            for j in range(d):
                w = _leibniz_failure(alg, phi, alg.basis_vector(i), alg.basis_vector(j))
                if w:
                    return CheckOutcome(False, w)
        return CheckOutcome(True)
    if kind in (Kind.N_COMMUTING, Kind.COMMUTING, Kind.CENTRALIZING):
        vec = phi.to_vector()
        if not any(_row_value(r, vec) for r in polarized_constraints(alg, spec)):
            return CheckOutcome(True)
        zc = center(alg) if kind is Kind.CENTRALIZING else None
        for a in _witness_candidates(alg, sampler, spec):
            w = _diagonal_failure(alg, phi, a, spec, zc)
            if w:
                return CheckOutcome(False, w)
        raise AssertionError("polarized rows fail but no witness element was found")
    tfam = kind in T_FAMILY
    if tfam:
        for a, b in sampler.basis_zero_pairs() + sampler.idempotent_pairs():
            for idx in itertools.product(range(d), repeat=n - 2):
                w = _identity_failure(alg, phi, [a, b] + [alg.basis_vector(i) for i in idx], spec.sides)
                if w:
                    return CheckOutcome(False, w)
    else:
        for t in sampler.basis_zero_tuples(n):
            w = _identity_failure(alg, phi, list(t), spec.sides)
            if w:
                return CheckOutcome(False, w)
    for _ in range(config.verify_trials):
        w = _random_failure(alg, phi, spec, sampler, None)
        if w:
            return CheckOutcome(False, w)
    return CheckOutcome(True)


def _witness_candidates(alg: Algebra, sampler: _Sampler, spec: ConditionSpec):
    d = alg.dim
    yield from (alg.basis_vector(i) for i in range(d))
    for i, j in itertools.combinations(range(d), 2):
        v = [0] * d
        v[i] = v[j] = 1
        yield tuple(v)
    # a nonzero polynomial is nonzero at most integer points of a large enough box
    for _ in range(2000):
        yield sampler.vec("dense")


# ---------------------------------------------------------------------------
# proper form, spans, unitization


@dataclass(frozen=True)
class ProperForm:
    """``phi(a) = lam * a + mu(a)`` with ``mu`` valued in ``center``.

    ``mu`` is a (dim center) x d matrix taking coordinates of ``a`` to
    coordinates of ``mu(a)`` in the canonical basis of ``center``.
    """

    lam: object
    mu: Matrix
    center: SubspaceBasis

    def mu_of(self, a) -> tuple:
        coeffs = self.mu @ a
        return self.center.combine(coeffs) if self.center.dim else (0,) * len(a)

    def apply(self, a) -> tuple:
        m = self.mu_of(a)
        return tuple(normalize(self.lam * x + y) for x, y in zip(a, m))


def proper_form(alg: Algebra, phi: LinearMap, central: SubspaceBasis | None = None) -> Optional[ProperForm]:
    """Write ``phi = lam * id + mu`` with ``mu`` into ``central`` (default: the centre).

    Returns None when no such decomposition exists.

    Raises:
        AmbiguousLambda: every basis element lies in ``central``, so ``lam``
            is not determined.
    """
    Z = central if central is not None else center(alg)
    Q = [list(q) for q in Z.annihilator().basis]
    cols = [phi.apply(alg.basis_vector(i)) for i in range(alg.dim)]

    def proj(v):
        return [normalize(sum((a * b for a, b in zip(q, v) if a and b), 0)) for q in Q]

    lam = None
    for i in range(alg.dim):
        pe = proj(alg.basis_vector(i))
        for k, x in enumerate(pe):
            if x:
                lam = div(proj(cols[i])[k], x)
                break
        if lam is not None:
            break
    if lam is None:
        raise AmbiguousLambda("every basis element is central; lambda is undetermined")
    mu_cols = []
    for i in range(alg.dim):
        rest = _sub(cols[i], [lam * x for x in alg.basis_vector(i)])
        if rest not in Z:
            return None
        mu_cols.append(Z.coordinates(rest))
    mu = Matrix.from_rows([[mu_cols[j][r] for j in range(alg.dim)] for r in range(Z.dim)], cols=alg.dim)
    return ProperForm(normalize(lam), mu, Z)


FAMILIES = ("all", "zero-pair", "zero-nproduct")


def pn_span(alg: Algebra, n: int, family: str = "all", config: SolveConfig | None = None) -> SubspaceBasis:
    """Span of ``p_n(a1, ..., an)`` over all tuples, zero pairs or zero n-products.

    ``all`` is exact.  The constrained families are sampled until the span
    is stable and then checked on fresh tuples, so the result is contained
    in the true span.
    """
    if n < 2:
        raise ValueError("n must be >= 2")
    if family not in FAMILIES:
        raise ValueError(f"unknown family {family!r}; expected one of {', '.join(FAMILIES)}")
    config = config or SolveConfig()
    d = alg.dim
    if family == "all":
        return _bracket_closure(alg, SubspaceBasis.full(d), n - 1)
    sampler = _Sampler(alg, config.rng("span", alg.label, n, family), config.coord_bound)
    checker = _Sampler(alg, config.rng("span-verify", alg.label, n, family), config.coord_bound)
    if family == "zero-pair":
        # slots 3..n are unconstrained: span p_2 over zero pairs, then bracket with the basis
        first = sampler.basis_zero_pairs() + sampler.idempotent_pairs()
        draw, fresh = sampler.random_pair, checker.random_pair
        value_of = lambda t: alg.bracket(*t)
        finish = lambda w: _bracket_closure(alg, w, n - 2)
    else:
        first = sampler.basis_zero_tuples(n)
        draw, fresh = (lambda: sampler.random_tuple(n)), (lambda: checker.random_tuple(n))
        value_of = alg.pn
        finish = lambda w: w
    rs = RowSpace(d)
    for t in first:
        rs.add(value_of(t))
    rounds = 0
    while True:
        stable = 0
        while stable < config.stable_rounds and rounds < config.max_rounds:
            rounds += 1
            before = rs.rank
            for _ in range(config.batch_size):
                rs.add(value_of(draw()))
            stable = stable + 1 if rs.rank == before else 0
        grew = sum(rs.add(value_of(fresh())) for _ in range(config.verify_trials))
        if not grew or rounds >= config.max_rounds:
            return finish(rs.basis())


def _bracket_closure(alg: Algebra, start: SubspaceBasis, times: int) -> SubspaceBasis:
    """``[...[S, U], ..., U]`` with ``times`` brackets against the whole algebra."""
    span = start
    for _ in range(times):
        span = SubspaceBasis.span(
            (alg.bracket(v, alg.basis_vector(j)) for v in span.basis for j in range(alg.dim)), alg.dim)
    return span


def extend_to_unitization(phi: LinearMap, unitization: Algebra | None = None) -> LinearMap:
    """``phi_hat(a + g 1) = phi(a)`` on the unitization (the new unit is the last basis element)."""
    from .algebra import unitize

    alg = phi.algebra
    target = unitization if unitization is not None else unitize(alg)
    if target.dim != alg.dim + 1:
        raise AlgebraMismatch("target is not the unitization of the map's algebra")
    d = alg.dim
    rows = [[phi.matrix[r, c] if r < d and c < d else 0 for c in range(d + 1)] for r in range(d + 1)]
    return LinearMap.from_rows(target, rows)
