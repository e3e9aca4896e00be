"""Concrete algebras: matrix algebras, the triangular constructions and built-ins."""

from __future__ import annotations

import re
from functools import lru_cache

from .algebra import (
    LEFT,
    RIGHT,
    Algebra,
    AlgebraElement,
    AlgebraError,
    ModuleAction,
    make_algebra,
    matmul,
    regular_action,
    unitize,
)
from .linalg import solve_linear
from .scalar import normalize


def matrix_algebra(k: int) -> Algebra:
    """M_k on the matrix units ``e_ij`` (index ``i*k + j``), with unit ``sum e_ii``."""
    if k < 1:
        raise AlgebraError("matrix size must be at least 1")
    sc = {}
    for i in range(k):
        for j in range(k):
            for m in range(k):
                sc[(i * k + j, j * k + m, i * k + m)] = 1
    unit = [0] * (k * k)
    for i in range(k):
        unit[i * k + i] = 1
    labels = [f"e{i + 1}{j + 1}" for i in range(k) for j in range(k)]
    return make_algebra(k * k, sc, unit=unit, labels=labels, label=f"M{k}", matrix_size=k)


def tri_left(v: Algebra, m: ModuleAction | None = None, label: str | None = None) -> Algebra:
    """Matrices ``[[a, x], [0, 0]]``: coordinates (a in V, then x in M).

    Product ``(a, x)(b, y) = (ab, a.y)``.  ``m`` defaults to the left regular
    action of ``v`` on itself.
    """
    if m is None:
        m = regular_action(v, LEFT)
    if m.side != LEFT:
        raise AlgebraError("tri_left needs a left module")
    m.validate(v)
    dv, dm = v.dim, m.space_dim
    sc = {}
    for i, j, k, c in v.nonzero_structure():
        sc[(i, j, k)] = c
    for i in range(dv):
        mat = m.matrices[i]
        for j in range(dm):
            for r in range(dm):
                if mat[r][j]:
                    sc[(i, dv + j, dv + r)] = mat[r][j]
    labels = [f"a.{s}" for s in v.basis_labels] + [f"x.{i}" for i in range(dm)]
    return make_algebra(dv + dm, sc, labels=labels, label=label or f"Tl({v.label})")


def tri_right(v: Algebra, n: ModuleAction | None = None, label: str | None = None) -> Algebra:
    """Matrices ``[[0, y], [0, a]]``: coordinates (y in N, then a in V).

    Product ``(y1, a1)(y2, a2) = (y1.a2, a1 a2)``.  ``n`` defaults to the
    right regular action of ``v`` on itself.
    """
    if n is None:
        n = regular_action(v, RIGHT)
    if n.side != RIGHT:
        raise AlgebraError("tri_right needs a right module")
    n.validate(v)
    dv, dn = v.dim, n.space_dim
    sc = {}
    for i, j, k, c in v.nonzero_structure():
        sc[(dn + i, dn + j, dn + k)] = c
    for j in range(dv):
        mat = n.matrices[j]
        for i in range(dn):
            for r in range(dn):
                if mat[r][i]:
                    sc[(i, dn + j, r)] = mat[r][i]
    labels = [f"y.{i}" for i in range(dn)] + [f"a.{s}" for s in v.basis_labels]
    return make_algebra(dn + dv, sc, labels=labels, label=label or f"Tr({v.label})")


def algebra_from_matrices(mats, labels=None, label: str = "") -> Algebra:
    """Subalgebra of M_k spanned by the given (linearly independent) matrices.

    Structure constants come from multiplying the matrices and solving for
    the product in the span; a product leaving the span is an error.
    """
    mats = [[list(map(normalize, r)) for r in m] for m in mats]
    d = len(mats)
    if d == 0:
        return make_algebra(0, {}, label=label)
    k = len(mats[0])
    flat = [[x for r in m for x in r] for m in mats]
    cols = [[flat[b][e] for b in range(d)] for e in range(k * k)]  # (k*k) x d system
    sc = {}
    for i in range(d):
        for j in range(d):
            prod = matmul(mats[i], mats[j], k)
            rhs = [x for r in prod for x in r]
            sol = solve_linear(cols, rhs)
            if sol is None:
                raise AlgebraError(f"product of basis matrices {i},{j} leaves the span")
            for t, c in enumerate(sol):
                if c:
                    sc[(i, j, t)] = c
    return make_algebra(d, sc, labels=labels, label=label)


def _unit_matrix(k, i, j):
    m = [[0] * k for _ in range(k)]
    m[i][j] = 1
    return m


def nilpotent_upper_v4() -> Algebra:
    """The 4-dimensional algebra ``{[[l, g, z], [0, l, x], [0, 0, l]]}`` in M_3.

    Basis order (I, N12, N13, N23) matches coordinates (l, g, z, x).
    """
    eye = [[1 if i == j else 0 for j in range(3)] for i in range(3)]
    mats = [eye, _unit_matrix(3, 0, 1), _unit_matrix(3, 0, 2), _unit_matrix(3, 1, 2)]
    return algebra_from_matrices(mats, labels=["I", "N12", "N13", "N23"], label="V")


def example_38_algebra() -> Algebra:
    """``{[[l, q], [0, p]] : l in C, q in (u), p in C[x]/(x^3)}`` with ``u = x + (x^3)``.

    Basis (E, q.u, q.u2, p.1, p.u, p.u2).  Written down by hand from
    ``(l1, q1, p1)(l2, q2, p2) = (l1 l2, l1 q2 + q1 p2, p1 p2)``; the test suite
    rebuilds it from a 4x4 matrix model.
    """
    E, QU, QU2, P1, PU, PU2 = range(6)
    sc = {
        (E, E, E): 1,
        (E, QU, QU): 1,
        (E, QU2, QU2): 1,
        (QU, P1, QU): 1,
        (QU, PU, QU2): 1,
        (QU2, P1, QU2): 1,
        (P1, P1, P1): 1,
        (P1, PU, PU): 1,
        (P1, PU2, PU2): 1,
        (PU, P1, PU): 1,
        (PU, PU, PU2): 1,
        (PU2, P1, PU2): 1,
    }
    return make_algebra(
        6, sc, unit=(1, 0, 0, 1, 0, 0), labels=["E", "q.u", "q.u2", "p.1", "p.u", "p.u2"], label="Ex3.8"
    )


def example_38_literal_algebra() -> Algebra:
    """Variant with ``q in C[x]/(x^3)`` and ``p in (u)``; non-unital, centre zero.

    Basis (E, q.1, q.u, q.u2, p.u, p.u2).  Kept to document that the map of
    the example is not a Lie centralizer under this reading.
    """
    E, Q1, QU, QU2, PU, PU2 = range(6)
    sc = {
        (E, E, E): 1,
        (E, Q1, Q1): 1,
        (E, QU, QU): 1,
        (E, QU2, QU2): 1,
        (Q1, PU, QU): 1,
        (Q1, PU2, QU2): 1,
        (QU, PU, QU2): 1,
        (PU, PU, PU2): 1,
    }
    return make_algebra(6, sc, labels=["E", "q.1", "q.u", "q.u2", "p.u", "p.u2"], label="Ex3.8-literal")


def _is_matrix_algebra(alg: Algebra) -> int:
    if not alg.matrix_size:
        raise AlgebraError(f"{alg.label or 'algebra'} is not a matrix algebra")
    return alg.matrix_size


def rank_one_idempotents(alg: Algebra) -> list[AlgebraElement]:
    """``e_ii`` for all i, then ``e_ii + e_ij`` for i != j, in M_k with k >= 2."""
    k = _is_matrix_algebra(alg)
    if k < 2:
        raise AlgebraError("off-diagonal idempotents need k >= 2")
    out = []
    for i in range(k):
        v = [0] * (k * k)
        v[i * k + i] = 1
        out.append(alg.element(v))
    for i in range(k):
        for j in range(k):
            if i != j:
                v = [0] * (k * k)
                v[i * k + i] = 1
                v[i * k + j] = 1
                out.append(alg.element(v))
    return out


def idempotent_combination(a: AlgebraElement) -> list[tuple]:
    """Write ``a`` as ``sum c * E`` over :func:`rank_one_idempotents`.

    Uses ``e_ij = (e_ii + e_ij) - e_ii``; coefficients that cancel are dropped.
    """
    alg = a.algebra
    gens = rank_one_idempotents(alg)
    k = alg.matrix_size
    coeff = [0] * len(gens)
    offdiag = {}
    idx = k
    for i in range(k):
        for j in range(k):
            if i != j:
                offdiag[(i, j)] = idx
                idx += 1
    for i in range(k):
        for j in range(k):
            x = a.coords[i * k + j]
            if not x:
                continue
            if i == j:
                coeff[i] += x
            else:
                coeff[offdiag[(i, j)]] += x
                coeff[i] -= x
    return [(normalize(c), g) for c, g in zip(coeff, gens) if c]


# ---------------------------------------------------------------------------
# built-in registry

_BUILDERS = {
    "TlCC": lambda: tri_left(matrix_algebra(1), label="TlCC"),
    "TrCC": lambda: tri_right(matrix_algebra(1), label="TrCC"),
    "V": nilpotent_upper_v4,
    "TlVV": lambda: tri_left(nilpotent_upper_v4(), label="TlVV"),
    "TrVV": lambda: tri_right(nilpotent_upper_v4(), label="TrVV"),
    "Tl-TrCC": lambda: tri_left(builtin("TrCC"), label="Tl-TrCC"),
    "Ex3.8": example_38_algebra,
    "Ex3.8-literal": example_38_literal_algebra,
}

BUILTIN_NAMES = ("M1", "M2", "M3", "TlCC", "TrCC", "V", "TlVV", "TrVV", "Tl-TrCC", "Ex3.8", "Ex3.8-literal")
NON_UNITAL_BUILTINS = ("TlCC", "TrCC", "TlVV", "TrVV", "Tl-TrCC")


def builtin(name: str) -> Algebra:
    """Resolve a built-in name such as ``M2``, ``TlCC`` or ``builtin:TlCC#``.

    ``M<k>`` gives any matrix algebra; a trailing ``#`` requests the
    unitization (an error for algebras that already have a unit).  Repeated
    lookups return the same object.
    """
    if name.startswith("builtin:"):
        name = name[len("builtin:"):]
    return _builtin(name)


@lru_cache(maxsize=None)
def _builtin(name: str) -> Algebra:
    if name.endswith("#"):
        return unitize(builtin(name[:-1]))
    mk = re.fullmatch(r"M(\d+)", name)
    if mk:
        return matrix_algebra(int(mk.group(1)))
    try:
        return _BUILDERS[name]()
    except KeyError:
        raise KeyError(f"unknown built-in algebra {name!r}; known: {', '.join(BUILTIN_NAMES)}") from None
