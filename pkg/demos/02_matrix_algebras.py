"""On full matrix algebras every condition collapses to the standard form.

For M_2 and M_3 the Lie n-centralizers and the six zero-product conditions all
cut out the same two-dimensional space spanned by the identity and
A -> trace(A) I.  The n-commuting maps form a larger space: lambda id plus any
functional times I.  No nonzero derivation lives in any of these spaces.
"""

from lielab import ConditionSpec, Kind, builtin, derivation_space, proper_form, solve_space, subspace_intersect
from lielab.conditions import SIX_CONDITIONS
from lielab.suite import standard_space

for name in ("M2", "M3"):
    alg = builtin(name)
    std = standard_space(alg)
    der = derivation_space(alg).space
    print(f"\n{name}: dim {alg.dim}, derivations dim {der.dim}")
    for n in (2, 3):
        dims = {}
        for kind in (Kind.LIE_N,) + SIX_CONDITIONS + (Kind.N_COMMUTING,):
            out = solve_space(alg, ConditionSpec(kind, n))
            dims[kind.value] = out.dim
            if kind is not Kind.N_COMMUTING:
                assert out.space == std
            assert subspace_intersect(der, out.space).dim == 0
        print(f"  n={n}:", "  ".join(f"{k}={v}" for k, v in dims.items()))

    # decompose one n-commuting map as lambda id + mu(.) I
    nc = solve_space(alg, ConditionSpec(Kind.N_COMMUTING, 3))
    phi = nc.basis_maps()[0]
    pf = proper_form(alg, phi)
    print(f"  first n-commuting basis map: lambda = {pf.lam}, mu row = {pf.mu.row(0)}")
