import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from helpers import rand_coords, rng
from lielab.algebra import center, unitize
from lielab.conditions import (
    SIX_CONDITIONS,
    AmbiguousLambda,
    ConditionSpec,
    Kind,
    LinearMap,
    MaxRoundsExceeded,
    ProductNotZero,
    SolveConfig,
    check_map,
    derivation_space,
    extend_to_unitization,
    pn_span,
    polarized_constraints,
    proper_form,
    solve_space,
    tuple_constraint_rows,
    zero_nproduct_generators,
    zero_pair_generators,
)
from lielab.constructions import BUILTIN_NAMES, builtin
from lielab.linalg import SubspaceBasis, subspace_contains, subspace_equal, subspace_intersect
from lielab.suite import example, standard_space

OTHER_SEED = SolveConfig(seed=12345)


def lmap(alg, cols):
    d = alg.dim
    return LinearMap.from_rows(alg, [[cols.get(j, (0,) * d)[i] for j in range(d)] for i in range(d)])


def row_value(row, vec):
    return sum(v * vec[i] for i, v in row.items())


def test_condition_spec():
    assert ConditionSpec("T", 2).alias() == "C"
    assert ConditionSpec("Nr", 2).alias() == "C2"
    assert ConditionSpec("Tl", 3).alias() is None
    assert ConditionSpec("commuting", 5).n == 2
    with pytest.raises(ValueError):
        ConditionSpec("Tl", 1)
    with pytest.raises(ValueError):
        ConditionSpec("bogus", 2)


def test_solve_config_validation():
    with pytest.raises(ValueError):
        SolveConfig(coord_bound=0)
    with pytest.raises(ValueError):
        SolveConfig(verify_trials=-1)


def test_linear_map_roundtrip():
    alg = builtin("M2")
    phi = lmap(alg, {1: (1, 0, 0, 1), 2: (0, 3, 0, 0)})
    assert LinearMap.from_vector(alg, phi.to_vector()) == phi
    assert phi(alg.basis()[1]) == alg.one()
    assert (phi + phi) == 2 * phi
    assert (phi - phi) == LinearMap.zero(alg)
    with pytest.raises(ValueError):
        LinearMap.from_rows(alg, [[1, 0], [0, 1]])


# tuple rows


def test_zero_first_slot_gives_no_rows():
    alg = builtin("TlCC")
    assert tuple_constraint_rows(alg, ConditionSpec("Tl", 2), [(0, 0), (1, 0)]) == []


def test_example_33_rows():
    alg = builtin("TlCC")
    phi = example("3.3").map.to_vector()
    t = [(0, 1), (1, 0)]
    left = tuple_constraint_rows(alg, ConditionSpec("T", 2), t, side="left")
    right = tuple_constraint_rows(alg, ConditionSpec("T", 2), t, side="right")
    assert all(row_value(r, phi) == 0 for r in left)
    assert any(row_value(r, phi) != 0 for r in right)


def test_rows_scale_with_slot():
    alg = builtin("M2")
    spec = ConditionSpec("lie-n", 3)
    t = [(1, 2, 0, -1), (0, 1, 1, 0), (2, 0, 0, 1)]
    t3 = [(3, 6, 0, -3)] + t[1:]
    base = tuple_constraint_rows(alg, spec, t)
    scaled = tuple_constraint_rows(alg, spec, t3)
    assert [{k: 3 * v for k, v in r.items()} for r in base] == scaled


def test_product_not_zero():
    alg = builtin("M2")
    with pytest.raises(ProductNotZero):
        tuple_constraint_rows(alg, ConditionSpec("T", 2), [(1, 0, 0, 0), (1, 0, 0, 0)])
    with pytest.raises(ProductNotZero):
        tuple_constraint_rows(alg, ConditionSpec("N", 3), [(1, 0, 0, 0)] * 3)


# polarization


def test_commuting_polarization_matches_hand_rows():
    """[phi(e_i), e_j] + [phi(e_j), e_i] = 0 for i <= j, built by hand."""
    alg = builtin("M2")
    d = alg.dim
    auto = SubspaceBasis.span(
        [[r.get(c, 0) for c in range(d * d)] for r in polarized_constraints(alg, ConditionSpec("commuting"))], d * d)
    hand = []
    for i, j in itertools.combinations_with_replacement(range(d), 2):
        for k in range(d):
            row = [0] * (d * d)
            # coefficient of phi[r][c]: [e_r, e_j]_k when c = i, plus [e_r, e_i]_k when c = j
            for r in range(d):
                row[i * d + r] += alg.bracket(alg.basis_vector(r), alg.basis_vector(j))[k]
                row[j * d + r] += alg.bracket(alg.basis_vector(r), alg.basis_vector(i))[k]
            hand.append(row)
    assert auto == SubspaceBasis.span(hand, d * d)


def test_exact_dimensions_on_m2():
    alg = builtin("M2")
    assert solve_space(alg, ConditionSpec("lie-n", 2)).dim == 2
    assert solve_space(alg, ConditionSpec("n-commuting", 3)).dim == 5
    assert solve_space(alg, ConditionSpec("lie-n", 2)).space == standard_space(alg)


@pytest.mark.parametrize("name", ["M2", "TlCC", "Tl-TrCC", "V"])
@pytest.mark.parametrize("kind, n", [("n-commuting", 2), ("n-commuting", 3), ("commuting", 2), ("centralizing", 2)])
def test_polarization_soundness(name, kind, n):
    """Members satisfy the diagonal identity; random non-members are caught."""
    alg = builtin(name)
    spec = ConditionSpec(kind, n)
    space = solve_space(alg, spec).space
    z = center(alg)
    r = rng(hash((name, kind, n)) % 1000)
    d = alg.dim
    nn = 2 if kind != "n-commuting" else n

    def diag(phi, a):
        return alg.pn([phi.apply(a)] + [a] * (nn - 1))

    def ok(v):
        return v in z if kind == "centralizing" else not any(v)

    for _ in range(10):
        phi = LinearMap.from_vector(alg, space.combine([r.randint(-5, 5) for _ in range(space.dim)])) \
            if space.dim else LinearMap.zero(alg)
        assert all(ok(diag(phi, rand_coords(r, d))) for _ in range(100))
    outside = 0
    for _ in range(10):
        phi = LinearMap.from_vector(alg, rand_coords(r, d * d))
        if phi.to_vector() in space:
            continue
        outside += 1
        assert any(not ok(diag(phi, rand_coords(r, d))) for _ in range(100))
    assert outside or space.dim == d * d


# generators


@pytest.mark.parametrize("name", ["M2", "M3", "TlCC", "TrVV", "Ex3.8"])
def test_zero_pairs(name):
    alg = builtin(name)
    pairs = list(zero_pair_generators(alg, 40, rng(1)))
    assert pairs
    for a, b in pairs:
        assert (a * b).is_zero()


def test_zero_pairs_include_basis_pair_and_idempotent_pair():
    t = builtin("TlCC")
    coords = [(a.coords, b.coords) for a, b in zero_pair_generators(t, 0, rng(0))]
    assert ((0, 1), (1, 0)) in coords
    m2 = builtin("M2")
    e11 = (1, 0, 0, 0)
    assert any(b.coords == e11 and not a.is_zero() for a, b in zero_pair_generators(m2, 0, rng(0)))


@pytest.mark.parametrize("name, n", [("M2", 3), ("M3", 3), ("TlCC", 3), ("Tl-TrCC", 4), ("V", 2)])
def test_zero_ntuples(name, n):
    alg = builtin(name)
    tuples = list(zero_nproduct_generators(alg, n, 40, rng(2)))
    for t in tuples:
        assert len(t) == n
        assert not any(alg.product([a.coords for a in t]))
    nonzero = [t for t in tuples[-40:] if all(not a.is_zero() for a in t)]
    assert len(nonzero) > 20


def test_example_33_witness_tuple_is_generated():
    t = builtin("TlCC")
    target = ((1, 0), (0, 1), (1, 0))
    assert target in [tuple(a.coords for a in tt) for tt in zero_nproduct_generators(t, 3, 0, rng(0))]


# solving and checking


def test_example_32_map_in_n_space():
    case = example("3.2")
    for n in (2, 3):
        out = solve_space(case.algebra, ConditionSpec("N", n))
        assert out.mode == "randomized"
        assert out.contains(case.map)


@pytest.mark.parametrize("n", [2, 3])
def test_example_32_witness(n):
    case = example("3.2")
    res = check_map(case.algebra, case.map, ConditionSpec("n-commuting", n))
    assert not res.passed
    w = res.witness
    assert w.args[0].coords == (1, 0)
    assert w.lhs.coords == (0, (-1) ** (n + 1))
    # the witness reproduces the violation
    phi, a = case.map, w.args[0]
    assert case.algebra.pn([phi.apply(a.coords)] + [a.coords] * (n - 1)) == w.lhs.coords


def test_example_36_nr_passes():
    case = example("3.6")
    assert check_map(case.algebra, case.map, ConditionSpec("Nr", 2)).passed


@pytest.mark.parametrize("name", BUILTIN_NAMES)
def test_identity_passes_everything(name):
    alg = builtin(name)
    ident = LinearMap.identity(alg)
    for kind in Kind:
        if kind is Kind.DERIVATION:
            continue
        assert check_map(alg, ident, ConditionSpec(kind, 3), SolveConfig(verify_trials=20)).passed, kind


def test_failed_check_witness_is_reproducible():
    case = example("3.4")
    res = check_map(case.algebra, case.map, ConditionSpec("Tl", 3))
    w = res.witness
    alg = case.algebra
    args = [a.coords for a in w.args]
    assert (alg.product(args[:2]) == (0,) * alg.dim)
    assert case.map.apply(alg.pn(args)) == w.lhs.coords
    assert alg.pn([case.map.apply(args[0])] + args[1:]) == w.rhs.coords
    assert w.lhs != w.rhs


@pytest.mark.parametrize("name", ["M2", "TlCC", "TrCC", "Tl-TrCC", "TlVV"])
@pytest.mark.parametrize("kind", [k.value for k in SIX_CONDITIONS])
def test_solved_basis_passes_check_under_other_seed(name, kind):
    alg = builtin(name)
    for n in (2, 3):
        spec = ConditionSpec(kind, n)
        for phi in solve_space(alg, spec).basis_maps():
            assert check_map(alg, phi, spec, OTHER_SEED).passed


def test_solve_is_deterministic():
    alg = builtin("TlVV")
    spec = ConditionSpec("Nr", 3)
    a = solve_space(alg, spec, SolveConfig(seed=99))
    from lielab.conditions import clear_cache
    clear_cache()
    b = solve_space(alg, spec, SolveConfig(seed=99))
    assert a is not b
    assert a.space == b.space and a.rounds_used == b.rounds_used


def test_round_cap():
    alg = builtin("M3")
    with pytest.raises(MaxRoundsExceeded) as exc:
        solve_space(alg, ConditionSpec("N", 3), SolveConfig(seed=5, max_rounds=1, stable_rounds=3))
    out = exc.value.outcome
    assert not out.complete
    assert subspace_contains(out.space, standard_space(alg))


@pytest.mark.parametrize("k", [2, 3])
def test_matrix_algebra_six_spaces(k):
    alg = builtin(f"M{k}")
    for n in (2, 3):
        for kind in SIX_CONDITIONS:
            assert solve_space(alg, ConditionSpec(kind, n)).space == standard_space(alg)


@pytest.mark.parametrize("name", BUILTIN_NAMES)
def test_implication_lattice(name):
    alg = builtin(name)
    for n in (2, 3):
        s = {k: solve_space(alg, ConditionSpec(k, n)).space for k in ("lie-n",) + tuple(k.value for k in SIX_CONDITIONS)}
        assert subspace_contains(s["Nl"], s["N"]) and subspace_contains(s["Tl"], s["Nl"])
        assert subspace_contains(s["Nr"], s["N"]) and subspace_contains(s["Tr"], s["Nr"])
        assert subspace_contains(s["T"], s["N"])
        assert subspace_contains(subspace_intersect(s["Tl"], s["Tr"]), s["T"])
        for v in s.values():
            assert subspace_contains(v, s["lie-n"])


@pytest.mark.parametrize("k", [2, 3])
def test_n_commuting_equals_commuting_on_matrices(k):
    alg = builtin(f"M{k}")
    comm = solve_space(alg, ConditionSpec("commuting")).space
    for n in (2, 3, 4) if k == 2 else (2, 3):
        assert subspace_equal(solve_space(alg, ConditionSpec("n-commuting", n)).space, comm)


def test_monotone_under_more_constraints():
    alg = builtin("M2")
    spec = ConditionSpec("Tl", 2)
    from lielab.linalg import RowSpace
    rs = RowSpace(16)
    dims = []
    for a, b in zero_pair_generators(alg, 30, rng(3)):
        rs.extend(tuple_constraint_rows(alg, spec, [a, b]))
        dims.append(rs.nullspace().dim)
    assert dims == sorted(dims, reverse=True)
    assert subspace_contains(rs.nullspace(), standard_space(alg))


# derivations


def test_derivation_dims():
    assert derivation_space(builtin("M2")).dim == 3
    assert derivation_space(builtin("TlCC")).dim == 2
    assert derivation_space(builtin("M3")).dim == 8
    alg = builtin("M2")
    assert not check_map(alg, LinearMap.identity(alg), ConditionSpec("derivation")).passed


@pytest.mark.parametrize("name", ["M2", "TlCC", "Ex3.8", "V"])
def test_derivations_satisfy_leibniz(name):
    alg = builtin(name)
    r = rng(4)
    d = alg.dim
    for delta in derivation_space(alg).basis_maps():
        for _ in range(100):
            a, b = rand_coords(r, d), rand_coords(r, d)
            lhs = delta.apply(alg.mul(a, b))
            rhs = tuple(x + y for x, y in zip(alg.mul(a, delta.apply(b)), alg.mul(delta.apply(a), b)))
            assert lhs == rhs
    assert LinearMap.zero(alg).to_vector() in derivation_space(alg).space


def test_inner_derivations_of_m2():
    alg = builtin("M2")
    space = derivation_space(alg).space
    for x in alg.basis():
        ad = LinearMap.from_rows(alg, alg.ad_left(x.coords))
        assert ad.to_vector() in space


# proper form


def test_proper_form_inverts_construction():
    alg = builtin("M2")
    trace = lmap(alg, {0: alg.unit, 3: alg.unit})
    phi = 3 * LinearMap.identity(alg) + trace
    pf = proper_form(alg, phi)
    assert pf.lam == 3
    for i in range(alg.dim):
        e = alg.basis_vector(i)
        assert pf.apply(e) == phi.apply(e)
        assert pf.mu_of(e) == trace.apply(e)


def test_transpose_is_not_proper():
    alg = builtin("M2")
    transpose = lmap(alg, {0: (1, 0, 0, 0), 1: (0, 0, 1, 0), 2: (0, 1, 0, 0), 3: (0, 0, 0, 1)})
    assert proper_form(alg, transpose) is None


def test_example_38_form():
    case = example("3.8")
    alg = case.algebra
    assert proper_form(alg, case.map, central=SubspaceBasis.span([alg.unit], alg.dim)) is None
    # relative to the full centre the map is lambda = 0 plus a central-valued mu
    pf = proper_form(alg, case.map)
    assert pf is not None and pf.lam == 0


def test_ex38_literal_map_is_not_a_lie_centralizer():
    alg = builtin("Ex3.8-literal")
    phi = lmap(alg, {0: (0, 0, 0, 0, 0, 1)})
    assert not check_map(alg, phi, ConditionSpec("lie-n", 2)).passed


def test_ambiguous_lambda():
    alg = builtin("M1")
    with pytest.raises(AmbiguousLambda):
        proper_form(alg, LinearMap.identity(alg))


@pytest.mark.parametrize("k", [2, 3])
def test_proper_form_reconstructs_n_commuting_members(k):
    alg = builtin(f"M{k}")
    space = solve_space(alg, ConditionSpec("n-commuting", 3)).space
    r = rng(k)
    z = center(alg)
    for _ in range(10):
        phi = LinearMap.from_vector(alg, space.combine([r.randint(-4, 4) for _ in range(space.dim)]))
        pf = proper_form(alg, phi)
        assert pf is not None
        for i in range(alg.dim):
            e = alg.basis_vector(i)
            assert pf.apply(e) == phi.apply(e)
            assert pf.mu_of(e) in z


# spans


def test_pn_span_examples():
    m2 = builtin("M2")
    assert pn_span(m2, 2, "all").dim == 3
    assert pn_span(m2, 3, "zero-pair") == pn_span(m2, 3, "all")
    assert pn_span(builtin("TlCC"), 2, "all").basis == ((0, 1),)
    with pytest.raises(ValueError):
        pn_span(m2, 2, "bogus")


@pytest.mark.parametrize("name", ["M2", "TlCC", "Tl-TrCC", "TrVV"])
@pytest.mark.parametrize("family", ["zero-pair", "zero-nproduct"])
def test_constrained_spans_sit_inside_all(name, family):
    alg = builtin(name)
    for n in (2, 3):
        assert subspace_contains(pn_span(alg, n, "all"), pn_span(alg, n, family))


# unitization extension


@pytest.mark.parametrize("name", ["TlCC", "TrCC", "Tl-TrCC"])
def test_extension_stays_n_commuting(name):
    alg = builtin(name)
    ua = unitize(alg)
    r = rng(9)
    for n in (2, 3):
        space = solve_space(alg, ConditionSpec("n-commuting", n)).space
        for _ in range(5):
            phi = LinearMap.from_vector(alg, space.combine([r.randint(-5, 5) for _ in range(space.dim)]))
            hat = extend_to_unitization(phi, ua)
            assert hat.apply(ua.unit) == (0,) * ua.dim
            assert check_map(ua, hat, ConditionSpec("n-commuting", n)).passed


@settings(max_examples=25)
@given(st.lists(st.integers(-3, 3), min_size=4, max_size=4))
def test_check_agrees_with_solve_for_tlcc(v):
    """On T_l(C, C) a map passes Tl (n=2) exactly when it lies in the solved space."""
    alg = builtin("TlCC")
    phi = LinearMap.from_vector(alg, v)
    spec = ConditionSpec("Tl", 2)
    assert check_map(alg, phi, spec).passed == solve_space(alg, spec).contains(phi)
