"""Exact workbench for finite-dimensional BiHom-associative supertrialgebras.

Everything runs over the rationals: structure constants, twist maps, and
the linear algebra behind operator spaces are all exact, so checks are
decision procedures rather than numerical estimates.
"""

__version__ = "0.1.0"

from .constructions import (
    BracketPairSpec,
    CommutatorResult,
    GraphCheckResult,
    InduceResult,
    SumProductResult,
    SwapResult,
    TotalProductResult,
    TwistResult,
    averaging_check,
    commutator_construct,
    conjugate_automorphism,
    direct_sum,
    graph_subalgebra_check,
    rota_baxter_check,
    rota_baxter_induce,
    sum_product_construct,
    swap_construct,
    total_product_construct,
    yau_twist,
)
from .core import (
    PRODUCT_TAGS,
    CheckReport,
    LinearMap,
    StructureTensor,
    SuperBasis,
    SuperalgebraSpec,
    TrialgebraSpec,
    Violation,
    center,
    centralizer,
    check_bihom,
    check_hom,
    check_morphism,
    check_multiplicative,
    check_superalgebra,
    identity_map,
    product_eval,
)
from .errors import (
    AlgebraError,
    CommutationError,
    InputError,
    ModeError,
    NotAutomorphismError,
    ParityError,
    SingularMapError,
)
from .fixtures import FIXTURE_NAMES, builtin, corpus, inject_violation
from .linalg import (
    Matrix,
    canonical_span,
    frac,
    invert,
    nullspace_basis,
    rank,
    rref,
    solve_in_span,
)
from .serialize import (
    emit_algebra,
    emit_bracket_pair,
    emit_map,
    emit_superalgebra,
    parse_algebra,
    parse_map,
    parse_rational,
    parse_superalgebra,
    rational_str,
)
from .spaces import (
    SPACE_KINDS,
    BatteryLine,
    BatteryReport,
    ContainmentResult,
    GradedOperator,
    OperatorSpace,
    TwistPower,
    central_derivation_space,
    centroid,
    derivation_space,
    generalized_derivation_space,
    graded_split,
    proposition_battery,
    quasicentroid,
    quasiderivation_space,
    space_contains,
    supercommutator,
)

__all__ = [
    "__version__",
    "AlgebraError",
    "BatteryLine",
    "BatteryReport",
    "BracketPairSpec",
    "CheckReport",
    "CommutationError",
    "CommutatorResult",
    "ContainmentResult",
    "FIXTURE_NAMES",
    "GradedOperator",
    "GraphCheckResult",
    "InduceResult",
    "InputError",
    "LinearMap",
    "Matrix",
    "ModeError",
    "NotAutomorphismError",
    "OperatorSpace",
    "PRODUCT_TAGS",
    "ParityError",
    "SPACE_KINDS",
    "SingularMapError",
    "StructureTensor",
    "SumProductResult",
    "SuperBasis",
    "SuperalgebraSpec",
    "SwapResult",
    "TotalProductResult",
    "TrialgebraSpec",
    "TwistPower",
    "TwistResult",
    "Violation",
    "averaging_check",
    "builtin",
    "canonical_span",
    "center",
    "centralizer",
    "central_derivation_space",
    "centroid",
    "check_bihom",
    "check_hom",
    "check_morphism",
    "check_multiplicative",
    "check_superalgebra",
    "commutator_construct",
    "conjugate_automorphism",
    "corpus",
    "derivation_space",
    "direct_sum",
    "emit_algebra",
    "emit_bracket_pair",
    "emit_map",
    "emit_superalgebra",
    "frac",
    "generalized_derivation_space",
    "graded_split",
    "graph_subalgebra_check",
    "identity_map",
    "inject_violation",
    "invert",
    "nullspace_basis",
    "parse_algebra",
    "parse_map",
    "parse_rational",
    "parse_superalgebra",
    "product_eval",
    "proposition_battery",
    "quasicentroid",
    "quasiderivation_space",
    "rank",
    "rational_str",
    "rota_baxter_check",
    "rota_baxter_induce",
    "rref",
    "solve_in_span",
    "space_contains",
    "sum_product_construct",
    "supercommutator",
    "swap_construct",
    "total_product_construct",
    "yau_twist",
]
