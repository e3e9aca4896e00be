"""The worked examples and theorem scenarios, with their expected verdicts.

Each example fixes an algebra, a map and a list of (condition, expected
verdict) claims; :func:`run_example` checks every claim with
:func:`~lielab.conditions.check_map`.  Scenarios assert the finite-dimensional
content of the theorems on M_2 and M_3 by solving for whole spaces.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Callable

from .algebra import Algebra, center, unitize
from .conditions import (
    SIX_CONDITIONS,
    ConditionSpec,
    Kind,
    LinearMap,
    SolveConfig,
    check_map,
    derivation_space,
    extend_to_unitization,
    pn_span,
    proper_form,
    solve_space,
)
from .constructions import NON_UNITAL_BUILTINS, builtin
from .linalg import SubspaceBasis, subspace_contains, subspace_equal, subspace_intersect

SUITE_VERSION = "1"


@dataclass(frozen=True)
class Assertion:
    desc: str
    expected: Any
    actual: Any

    @property
    def passed(self) -> bool:
        return self.expected == self.actual

    def to_json(self) -> dict:
        return {"desc": self.desc, "expected": self.expected, "actual": self.actual, "pass": self.passed}


@dataclass(frozen=True)
class ScenarioResult:
    id: str
    assertions: tuple

    @property
    def passed(self) -> bool:
        return all(a.passed for a in self.assertions)

    def failures(self) -> list[Assertion]:
        return [a for a in self.assertions if not a.passed]

    def to_json(self) -> dict:
        return {"id": self.id, "assertions": [a.to_json() for a in self.assertions]}


# ---------------------------------------------------------------------------
# examples


@dataclass(frozen=True)
class ExampleCase:
    id: str
    title: str
    algebra: Algebra
    map: LinearMap
    n_range: tuple
    # (kind, n values the claim is made for, expected to pass)
    expected: tuple
    extra: Callable[["ExampleCase", SolveConfig], list] | None = field(default=None, compare=False)

    def claims(self):
        for kind, ns, verdict in self.expected:
            for n in ns:
                yield ConditionSpec(kind, n), verdict


def _map_from_columns(alg: Algebra, cols: dict) -> LinearMap:
    """Map with ``phi(e_j) = cols[j]`` (missing columns are zero)."""
    d = alg.dim
    return LinearMap.from_rows(alg, [[cols.get(j, (0,) * d)[i] for j in range(d)] for i in range(d)])


def _unit(d: int, i: int) -> tuple:
    return tuple(1 if k == i else 0 for k in range(d))


def _ex31():
    # smallest instance: M_2, e = e11, a = e12, mu = coefficient of e12
    alg = builtin("M2")
    phi = _map_from_columns(alg, {1: alg.unit})
    return ExampleCase("3.1", "n-commuting but neither Tl nor Tr", alg, phi, (2, 3), (
        (Kind.N_COMMUTING, (2, 3), True),
        (Kind.TL, (2, 3), False),
        (Kind.TR, (2, 3), False),
    ), _ex31_hypotheses)


def _ex31_hypotheses(case: ExampleCase, config: SolveConfig) -> list:
    alg = case.algebra
    e, a, one = alg.element(_unit(4, 0)), alg.element(_unit(4, 1)), alg.one()
    w = e * a * (one - e)
    return [
        Assertion("e = e11 is a non-trivial idempotent", True, e * e == e and e != one and not e.is_zero()),
        Assertion("e a (1 - e) != 0", True, not w.is_zero()),
        Assertion("mu(e a (1 - e)) != 0", True, w.coords[1] != 0),
    ]


def _ex32():
    alg = builtin("TlCC")
    phi = _map_from_columns(alg, {0: (0, 1)})
    return ExampleCase("3.2", "(N) but not n-commuting", alg, phi, (2, 3), (
        (Kind.N, (2, 3), True),
        (Kind.NL, (2, 3), True),
        (Kind.NR, (2, 3), True),
        (Kind.T, (2, 3), True),
        (Kind.TL, (2, 3), True),
        (Kind.TR, (2, 3), True),
        (Kind.N_COMMUTING, (2, 3), False),
    ), _ex32_witness)


def _ex32_witness(case: ExampleCase, config: SolveConfig) -> list:
    out = []
    for n in case.n_range:
        res = check_map(case.algebra, case.map, ConditionSpec(Kind.N_COMMUTING, n), config)
        w = res.witness
        got = None if w is None else [list(w.args[0].coords), list(w.lhs.coords)]
        out.append(Assertion(f"n={n}: witness a=(1,0) with p_n(phi(a),a,...,a) = (0,(-1)^(n+1))",
                             [[1, 0], [0, (-1) ** (n + 1)]], got))
    return out


def _ex33():
    alg = builtin("TlCC")
    phi = _map_from_columns(alg, {0: (1, 1)})
    return ExampleCase("3.3", "Tl but not Nl (n>=3) and not Tr", alg, phi, (2, 3), (
        (Kind.TL, (2, 3), True),
        (Kind.NL, (3,), False),
        (Kind.TR, (2, 3), False),
    ))


def _ex34():
    alg = builtin("TlVV")
    phi = _map_from_columns(alg, {i: _unit(8, 4 + i) for i in range(4)})
    return ExampleCase("3.4", "Tr but not Tl, not Nr (n>=3)", alg, phi, (3,), (
        (Kind.TR, (3,), True),
        (Kind.TL, (3,), False),
        (Kind.NR, (3,), False),
    ))


def _ex35():
    alg = builtin("TrVV")
    phi = _map_from_columns(alg, {4 + i: _unit(8, i) for i in range(4)})
    return ExampleCase("3.5", "Nl but not Tr (n>=3)", alg, phi, (3,), (
        (Kind.NL, (3,), True),
        (Kind.TR, (3,), False),
    ))


def _ex36():
    alg = builtin("TrCC")
    phi = _map_from_columns(alg, {1: (1, 1)})
    return ExampleCase("3.6", "Nr but not Tl", alg, phi, (2, 3), (
        (Kind.NR, (2, 3), True),
        (Kind.TL, (2, 3), False),
    ))


def _ex37():
    # coordinates (gamma, lambda | gamma', lambda'); phi puts lambda into the lambda' slot
    alg = builtin("Tl-TrCC")
    phi = _map_from_columns(alg, {1: _unit(4, 3)})
    return ExampleCase("3.7", "T but not Nl, not Nr (n>=3)", alg, phi, (3,), (
        (Kind.T, (3,), True),
        (Kind.NL, (3,), False),
        (Kind.NR, (3,), False),
    ))


def _ex38():
    alg = builtin("Ex3.8")
    phi = _map_from_columns(alg, {0: _unit(6, 5)})
    return ExampleCase("3.8", "Lie centralizer not of the form lambda a + mu(a) 1", alg, phi, (2, 3), (
        (Kind.LIE_N, (2, 3), True),
    ), _ex38_form)


def _ex38_form(case: ExampleCase, config: SolveConfig) -> list:
    alg = case.algebra
    scalars = SubspaceBasis.span([alg.unit], alg.dim)
    # the claim is about mu(a) a multiple of the identity; this algebra's centre is larger
    return [
        Assertion("phi has the form lambda a + mu(a) 1", False,
                  proper_form(alg, case.map, central=scalars) is not None),
        Assertion("centre dimension (identity plus the u^2 corner)", 2, center(alg).dim),
    ]


_EXAMPLES = {
    "3.1": _ex31, "3.2": _ex32, "3.3": _ex33, "3.4": _ex34,
    "3.5": _ex35, "3.6": _ex36, "3.7": _ex37, "3.8": _ex38,
}
EXAMPLE_IDS = tuple(_EXAMPLES)


def example(id: str) -> ExampleCase:
    try:
        return _EXAMPLES[id]()
    except KeyError:
        raise KeyError(f"unknown example {id!r}; known: {', '.join(EXAMPLE_IDS)}") from None


def run_example(id: str, config: SolveConfig | None = None) -> ScenarioResult:
    config = config or SolveConfig()
    case = example(id)
    out = []
    for spec, verdict in case.claims():
        res = check_map(case.algebra, case.map, spec, config)
        out.append(Assertion(f"{case.algebra.label}: {spec} {'holds' if verdict else 'fails'}", verdict, res.passed))
    if case.extra is not None:
        out.extend(case.extra(case, config))
    return ScenarioResult(id, tuple(out))


# ---------------------------------------------------------------------------
# scenarios

MATRIX_CASES = (("M2", 2), ("M2", 3), ("M3", 2), ("M3", 3))
POSNER_LIST = (Kind.LIE_N,) + SIX_CONDITIONS + (Kind.N_COMMUTING, Kind.COMMUTING, Kind.CENTRALIZING)


def _space(alg, kind, n, config) -> SubspaceBasis:
    return solve_space(alg, ConditionSpec(kind, n), config).space


def standard_space(alg: Algebra) -> SubspaceBasis:
    """``{lam id + c trace(.) 1}`` on M_k, as vectors of map unknowns."""
    k = alg.matrix_size
    d = alg.dim
    ident = LinearMap.identity(alg).to_vector()
    trace_cols = {i * k + i: alg.unit for i in range(k)}
    tr = _map_from_columns(alg, trace_cols).to_vector()
    return SubspaceBasis.span([ident, tr], d * d)


def _t41(config):
    out = []
    for name, n in MATRIX_CASES:
        alg = builtin(name)
        ncomm = ConditionSpec(Kind.N_COMMUTING, n)
        for kind in SIX_CONDITIONS:
            maps = solve_space(alg, ConditionSpec(kind, n), config).basis_maps()
            ok = all(check_map(alg, m, ncomm, config).passed for m in maps)
            out.append(Assertion(f"{name} n={n}: basis of {kind.value} is n-commuting", True, ok))
    return out


def _t41_negative(config):
    case = example("3.2")
    out = []
    for n in (2, 3):
        outcome = solve_space(case.algebra, ConditionSpec(Kind.N, n), config)
        out.append(Assertion(f"TlCC n={n}: example 3.2 map lies in the solved N space", True,
                             outcome.contains(case.map)))
        out.append(Assertion(f"TlCC n={n}: example 3.2 map is n-commuting", False,
                             check_map(case.algebra, case.map, ConditionSpec(Kind.N_COMMUTING, n), config).passed))
    return out


def _equal_family(kinds, label, cases=MATRIX_CASES):
    def run(config):
        out = []
        for name, n in cases:
            alg = builtin(name)
            spaces = [_space(alg, k, n, config) for k in kinds]
            same = all(subspace_equal(spaces[0], s) for s in spaces[1:])
            out.append(Assertion(f"{name} n={n}: {label} spaces equal", True, same))
            out.append(Assertion(f"{name} n={n}: {label} dimension", 2, spaces[0].dim))
        return out
    return run


def _posner(config):
    out = []
    for name in ("M2", "M3"):
        alg = builtin(name)
        k = alg.matrix_size
        der = derivation_space(alg, config).space
        out.append(Assertion(f"{name}: derivation space dimension", k * k - 1, der.dim))
        for n in (2, 3):
            for kind in POSNER_LIST:
                if kind in (Kind.COMMUTING, Kind.CENTRALIZING) and n != 2:
                    continue
                meet = subspace_intersect(der, _space(alg, kind, n, config))
                label = str(ConditionSpec(kind, n))
                out.append(Assertion(f"{name}: derivations meet {label} in 0", 0, meet.dim))
    return out


def _p51(config):
    out = []
    for name, n in MATRIX_CASES:
        alg = builtin(name)
        lie = _space(alg, Kind.LIE_N, n, config)
        out.append(Assertion(f"{name} n={n}: Lie n-centralizers are lambda id + c trace 1", True,
                             subspace_equal(lie, standard_space(alg))))
        # mu = c trace kills every p_n, so the unrestricted p_n span is the traceless part
        span = pn_span(alg, n, "all", config)
        out.append(Assertion(f"{name} n={n}: p_n span is the traceless subspace", alg.dim - 1, span.dim))
    return out


def _p53(config):
    out = []
    kinds = (Kind.LIE_N,) + SIX_CONDITIONS
    for name, n in MATRIX_CASES:
        alg = builtin(name)
        target = standard_space(alg)
        same = all(subspace_equal(_space(alg, kind, n, config), target) for kind in kinds)
        out.append(Assertion(f"{name} n={n}: seven spaces equal lambda id + c trace 1", True, same))
        nc = _space(alg, Kind.N_COMMUTING, n, config)
        out.append(Assertion(f"{name} n={n}: n-commuting dimension", alg.dim + 1, nc.dim))
        out.append(Assertion(f"{name} n={n}: n-commuting strictly contains the seven", True,
                             subspace_contains(nc, target) and nc.dim > target.dim))
    return out


def _ext(config):
    out = []
    rng = config.rng("ext")
    for name in NON_UNITAL_BUILTINS:
        alg = builtin(name)
        ua = unitize(alg)
        for n in (2, 3):
            space = _space(alg, Kind.N_COMMUTING, n, config)
            spec = ConditionSpec(Kind.N_COMMUTING, n)
            fails = 0
            for _ in range(20):
                coeffs = [rng.randint(-config.coord_bound, config.coord_bound) for _ in range(space.dim)]
                phi = LinearMap.from_vector(alg, space.combine(coeffs) if space.dim else (0,) * alg.dim ** 2)
                if not check_map(ua, extend_to_unitization(phi, ua), spec, config).passed:
                    fails += 1
            out.append(Assertion(f"{name} n={n}: extensions of 20 n-commuting maps stay n-commuting", 0, fails))
    return out


_SCENARIOS = {
    "T4.1": _t41,
    "T4.1-NEG": _t41_negative,
    "T4.2": _equal_family((Kind.T, Kind.TL, Kind.TR), "T/Tl/Tr"),
    "T4.3": _equal_family((Kind.N, Kind.NL, Kind.NR), "N/Nl/Nr"),
    "C4.4": _equal_family(SIX_CONDITIONS, "C/C1/C2", cases=(("M2", 2), ("M3", 2))),
    "POSNER": _posner,
    "P5.1": _p51,
    "P5.3": _p53,
    "EXT": _ext,
}
SCENARIO_IDS = tuple(_SCENARIOS)


def scenario(id: str, config: SolveConfig | None = None) -> ScenarioResult:
    try:
        run = _SCENARIOS[id]
    except KeyError:
        raise KeyError(f"unknown scenario {id!r}; known: {', '.join(SCENARIO_IDS)}") from None
    return ScenarioResult(id, tuple(run(config or SolveConfig())))


def full_report(config: SolveConfig | None = None) -> dict:
    config = config or SolveConfig()
    results = [run_example(i, config) for i in EXAMPLE_IDS] + [scenario(i, config) for i in SCENARIO_IDS]
    return {
        "suite_version": SUITE_VERSION,
        "seed": config.seed,
        "results": [r.to_json() for r in results],
        "aggregate": "pass" if all(r.passed for r in results) else "fail",
    }
