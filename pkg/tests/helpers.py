"""Independent oracles: plain nested-list matrices and the matrix models of the built-ins.

Nothing here goes through the library's structure constants, so agreement
with :mod:`lielab` is a genuine cross-check.
"""

import random
from fractions import Fraction


def mm(a, b):
    return [[sum(a[i][t] * b[t][j] for t in range(len(b))) for j in range(len(b[0]))] for i in range(len(a))]


def madd(a, b):
    return [[x + y for x, y in zip(r, s)] for r, s in zip(a, b)]


def msub(a, b):
    return [[x - y for x, y in zip(r, s)] for r, s in zip(a, b)]


def comm(a, b):
    return msub(mm(a, b), mm(b, a))


def pn(mats):
    acc = mats[0]
    for m in mats[1:]:
        acc = comm(acc, m)
    return acc


def prod(mats):
    acc = mats[0]
    for m in mats[1:]:
        acc = mm(acc, m)
    return acc


def zeros(k):
    return [[0] * k for _ in range(k)]


def block(a, b, c, d):
    return [ra + rb for ra, rb in zip(a, b)] + [rc + rd for rc, rd in zip(c, d)]


def v_matrix(c):
    """(l, g, z, x) -> [[l, g, z], [0, l, x], [0, 0, l]]."""
    lam, g, z, x = c
    return [[lam, g, z], [0, lam, x], [0, 0, lam]]


def matrix_model(name, coords):
    """Matrix of a built-in algebra element, read off its coordinates."""
    c = list(coords)
    if name.startswith("M"):
        k = int(name[1:])
        return [c[i * k:(i + 1) * k] for i in range(k)]
    if name == "TlCC":
        return [[c[0], c[1]], [0, 0]]
    if name == "TrCC":
        return [[0, c[0]], [0, c[1]]]
    if name == "V":
        return v_matrix(c)
    if name == "TlVV":
        return block(v_matrix(c[:4]), v_matrix(c[4:]), zeros(3), zeros(3))
    if name == "TrVV":
        return block(zeros(3), v_matrix(c[:4]), zeros(3), v_matrix(c[4:]))
    if name == "Tl-TrCC":
        r, s = matrix_model("TrCC", c[:2]), matrix_model("TrCC", c[2:])
        return block(r, s, zeros(2), zeros(2))
    if name == "Ex3.8":
        # [[l, q], [0, p]] with q in (u), p in C[x]/(x^3); q as a row vector on (1, u, u^2),
        # p as right multiplication on row vectors
        lam, qu, qu2, p1, pu, pu2 = c
        mp = [[p1, pu, pu2], [0, p1, pu], [0, 0, p1]]
        return block([[lam]], [[0, qu, qu2]], [[0], [0], [0]], mp)
    if name == "Ex3.8-literal":
        lam, q1, qu, qu2, pu, pu2 = c
        mp = [[0, pu, pu2], [0, 0, pu], [0, 0, 0]]
        return block([[lam]], [[q1, qu, qu2]], [[0], [0], [0]], mp)
    raise KeyError(name)


MODELLED = ("M1", "M2", "M3", "TlCC", "TrCC", "V", "TlVV", "TrVV", "Tl-TrCC", "Ex3.8", "Ex3.8-literal")


def rand_coords(rng, d, bound=10):
    return tuple(rng.randint(-bound, bound) for _ in range(d))


def rand_fraction_coords(rng, d, bound=6):
    return tuple(Fraction(rng.randint(-bound, bound), rng.randint(1, bound)) for _ in range(d))


def rng(seed=0):
    return random.Random(seed)


# closed forms for the triangular algebras, written with plain scalars


def tlcc_closed(tuples):
    """(product, p_n) in T_l(C, C) for coordinates (lam_i, gam_i)."""
    lam = [t[0] for t in tuples]
    gam = [t[1] for t in tuples]
    n = len(tuples)
    p_lam = 1
    for x in lam:
        p_lam *= x
    head = 1
    for x in lam[:-1]:
        head *= x
    tail = 1
    for x in lam[2:]:
        tail *= x
    product = (p_lam, head * gam[-1])
    p = (0, (-1) ** n * tail * (lam[0] * gam[1] - lam[1] * gam[0]))
    return product, p


def trcc_closed(tuples):
    """(product, p_n) in T_r(C, C) for coordinates (gam_i, lam_i)."""
    gam = [t[0] for t in tuples]
    lam = [t[1] for t in tuples]
    rest = 1
    for x in lam[1:]:
        rest *= x
    all_lam = lam[0] * rest
    tail = 1
    for x in lam[2:]:
        tail *= x
    product = (gam[0] * rest, all_lam)
    p = ((gam[0] * lam[1] - gam[1] * lam[0]) * tail, 0)
    return product, p


def v_coords(m):
    return (m[0][0], m[0][1], m[0][2], m[1][2])


def tri_left_closed(tuples):
    """Block formulas in T_l(V, V): product (a1..an, a1..a_{n-1} x_n), corner of p_n is p_n(a)."""
    a = [v_matrix(t[:4]) for t in tuples]
    x = v_matrix(tuples[-1][4:])
    head = prod(a[:-1]) if len(a) > 1 else None
    product = v_coords(prod(a)) + v_coords(mm(head, x))
    return product, v_coords(pn(a))


def tri_right_closed(tuples):
    """Block formulas in T_r(V, V): product (y1 a2..an, a1..an), corner of p_n is p_n(a)."""
    y = v_matrix(tuples[0][:4])
    a = [v_matrix(t[4:]) for t in tuples]
    product = v_coords(mm(y, prod(a[1:]))) + v_coords(prod(a))
    return product, v_coords(pn(a))
