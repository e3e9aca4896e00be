"""Triangular algebras where zero-product conditions do not force the standard form.

On T_l(C, C) = {[[l, g], [0, 0]]} we take the map that sends the (1,1) unit to
the corner e12 and kills everything else.  It satisfies condition (N) for every
n, yet it is not even commuting: the witness is the idempotent e11.
"""

from lielab import ConditionSpec, Kind, builtin, check_map, solve_space
from lielab.suite import example

alg = builtin("TlCC")
phi = example("3.2").map
print("algebra:", alg.label, "dim", alg.dim, "unital:", alg.unit is not None)
print("map matrix rows:", [phi.matrix.row(i) for i in range(alg.dim)])

for n in (2, 3):
    space = solve_space(alg, ConditionSpec(Kind.N, n))
    print(f"\n(N) with n={n}: solution space dim {space.dim}, contains the map: {space.contains(phi)}")
    res = check_map(alg, phi, ConditionSpec(Kind.N_COMMUTING, n))
    w = res.witness
    print(f"  n-commuting check: {res.verdict}")
    print(f"  witness a = {w.args[0].coords}, p_n(phi(a), a, ..., a) = {w.lhs.coords}")

# the rest of the verdict matrix for this family of algebras
for id in ("3.3", "3.4", "3.5", "3.6", "3.7"):
    case = example(id)
    verdicts = ", ".join(f"{spec}: {'yes' if ok else 'no'}" for spec, ok in case.claims())
    print(f"\n{id} on {case.algebra.label}: {verdicts}")
    for spec, ok in case.claims():
        assert check_map(case.algebra, case.map, spec).passed == ok
print("\nall verdicts reproduced")
