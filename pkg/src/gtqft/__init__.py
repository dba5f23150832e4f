"""Exact-arithmetic engine for graded Frobenius algebras over finite groups
and the two-dimensional equivariant field theories they generate.

The package verifies the defining laws of such an algebra, derives the
coproduct and pairing structure from its trace, evaluates combinatorially
described labelled surfaces to exact rational linear maps, and machine
checks that the value of a surface is independent of how it is decomposed.
"""

from .algebra import (
    DerivedStructure,
    GFrobeniusAlgebra,
    action_on_dual_basis_check,
    check_axioms,
    check_cocommutativity,
    check_frobenius_diagram,
    derive,
    dual_numbers_algebra,
    frobenius_untwisted,
    group_algebra,
    load_algebra,
    save_algebra,
)
from .cobordism import (
    Cobordism,
    Piece,
    PieceKind,
    cap,
    cerf_case_words,
    compose,
    cup,
    cyl,
    dual,
    id_piece,
    identity_word,
    merge,
    normalize_cylinder,
    parse,
    random_cobordism,
    rewrite_equivalent,
    split,
    swap,
    tensor,
)
from .errors import (
    BudgetExceeded,
    CoproductMismatch,
    DegeneratePairing,
    DimensionMismatch,
    EngineError,
    FlatnessViolation,
    NotAGroup,
    NotClosed,
    ParseError,
    SchemaError,
    ShapeError,
    SignatureMismatch,
    SingularMatrix,
    UnknownElement,
    UnknownGroup,
)
from .exactlin import Matrix, Scalar, Tensor3, contract, kron, mat_inverse
from .groups import ConjugacyData, FiniteGroup, builtin, builtin_from_string, conjugacy, from_table
from .orbifold import (
    OrbifoldAlgebra,
    orbifold_algebra,
    project_invariants,
    sector_isomorphism,
)
from .report import CheckEntry, CheckReport, Witness
from .tqft import (
    BlockLinearMap,
    Evaluator,
    cerf_check,
    closed_invariant,
    closed_surface_word,
    dehn_invariance_check,
    evaluate,
    hom_count_oracle,
    pants_ordering_check,
)

__version__ = "0.1.0"

__all__ = [
    "BlockLinearMap",
    "BudgetExceeded",
    "CheckEntry",
    "CheckReport",
    "Cobordism",
    "ConjugacyData",
    "CoproductMismatch",
    "DegeneratePairing",
    "DerivedStructure",
    "DimensionMismatch",
    "EngineError",
    "Evaluator",
    "FiniteGroup",
    "FlatnessViolation",
    "GFrobeniusAlgebra",
    "Matrix",
    "NotAGroup",
    "NotClosed",
    "OrbifoldAlgebra",
    "ParseError",
    "Piece",
    "PieceKind",
    "Scalar",
    "SchemaError",
    "ShapeError",
    "SignatureMismatch",
    "SingularMatrix",
    "Tensor3",
    "UnknownElement",
    "UnknownGroup",
    "Witness",
    "action_on_dual_basis_check",
    "builtin",
    "builtin_from_string",
    "cap",
    "cerf_case_words",
    "cerf_check",
    "check_axioms",
    "check_cocommutativity",
    "check_frobenius_diagram",
    "closed_invariant",
    "closed_surface_word",
    "compose",
    "conjugacy",
    "contract",
    "cup",
    "cyl",
    "dehn_invariance_check",
    "derive",
    "dual",
    "dual_numbers_algebra",
    "evaluate",
    "frobenius_untwisted",
    "from_table",
    "group_algebra",
    "hom_count_oracle",
    "id_piece",
    "identity_word",
    "kron",
    "load_algebra",
    "mat_inverse",
    "merge",
    "normalize_cylinder",
    "orbifold_algebra",
    "pants_ordering_check",
    "parse",
    "project_invariants",
    "random_cobordism",
    "rewrite_equivalent",
    "save_algebra",
    "sector_isomorphism",
    "split",
    "swap",
    "tensor",
]
