"""Extending n-commuting maps from a non-unital algebra to its unitization.

A map phi on U extends to U# = C1 + U by sending 1 to 0.  Because p_n ignores
scalar multiples of 1 in every slot, the extension is n-commuting whenever
phi is.  The demo samples members of the solved space and checks this.
"""

import random

from lielab import ConditionSpec, Kind, LinearMap, builtin, center, check_map, extend_to_unitization, solve_space, unitize
from lielab.constructions import NON_UNITAL_BUILTINS

rng = random.Random(2024)
for name in NON_UNITAL_BUILTINS:
    alg = builtin(name)
    ua = unitize(alg)
    print(f"\n{name}: dim {alg.dim} -> unitization dim {ua.dim}, centre dim {center(alg).dim} -> {center(ua).dim}")
    for n in (2, 3):
        spec = ConditionSpec(Kind.N_COMMUTING, n)
        space = solve_space(alg, spec).space
        ok = 0
        for _ in range(20):
            v = space.combine([rng.randint(-5, 5) for _ in range(space.dim)]) if space.dim else (0,) * alg.dim ** 2
            ok += check_map(ua, extend_to_unitization(LinearMap.from_vector(alg, v), ua), spec).passed
        print(f"  n={n}: n-commuting space dim {space.dim}, extensions passing {ok}/20")
