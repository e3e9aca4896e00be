"""Exact computations with Lie n-centralizers and related maps on finite-dimensional algebras."""

from .algebra import (
    Algebra,
    AlgebraElement,
    AlgebraError,
    AlreadyUnital,
    AssociativityViolation,
    ModuleAction,
    UnitViolation,
    annihilator,
    bracket,
    center,
    make_algebra,
    mult_operator,
    multiply,
    p_n,
    sandwich_kernel,
    unitize,
)
from .conditions import (
    AmbiguousLambda,
    CheckOutcome,
    ConditionSpec,
    Kind,
    LinearMap,
    MaxRoundsExceeded,
    ProductNotZero,
    ProperForm,
    SolveConfig,
    SolveOutcome,
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
from .constructions import (
    builtin,
    idempotent_combination,
    matrix_algebra,
    nilpotent_upper_v4,
    rank_one_idempotents,
    tri_left,
    tri_right,
)
from .linalg import (
    Matrix,
    SubspaceBasis,
    nullspace,
    rank,
    rref,
    subspace_contains,
    subspace_equal,
    subspace_intersect,
    subspace_member,
)
from .scalar import GaussianRational, Scalar, scalar

__version__ = "0.1.0"
