"""Exact gradings of matrix algebras and sl(n) by finite abelian groups."""

__version__ = "0.1.0"

from .cyclo import (
    CycNum,
    Mat,
    Subspace,
    bracket,
    cyc,
    cyclotomic_poly,
    field_degree,
    linear_solve,
    nullspace,
    rref,
    span,
    span_mats,
    subspace_eq,
    subspace_intersect,
    subspace_sum,
    zero_subspace,
    zeta,
)
from .errors import (
    BadEmbedding,
    BadMarker,
    BadSquare,
    DimensionMismatch,
    DivisionByZero,
    GroupMismatch,
    IncompatibleTuple,
    InvalidConductor,
    InvalidGroup,
    InvalidOrder,
    InvalidTuple,
    KindMismatch,
    MatgradeError,
    MixedSymmetry,
    NotInAlgebra,
    NotInvolutionGrading,
    NotInvolutionStable,
    NotStable,
    ParseError,
    SingularForm,
    SupportClash,
    TooSmall,
)
from .groups import (
    Character,
    FinAbGroup,
    GroupElem,
    Subgroup,
    all_subgroups,
    annihilator,
    char_eval,
    dual_group,
    make_group,
    quotient,
    subgroup_generated,
)
from .matalg import (
    Grading,
    VerificationReport,
    Violation,
    chi_action,
    clock_shift,
    coarsen,
    decompose,
    elementary_grading,
    epsilon_grading,
    homogeneous_projection,
    support,
    tensor_grading,
    verify_assoc,
)
from .invol import (
    InvolutedGrading,
    Involution,
    SignFunction,
    apply_involution,
    elementary_involution_grading,
    involution_tensor,
    make_involution,
    pauli_involution_case,
    sym_skew_split,
    verify_involution_grading,
)
from .liegrad import (
    ObstructionReport,
    OuterDatum,
    fine_outer,
    mixed_type2,
    recover_from_factor,
    traceless_subspace,
    type1,
    type1_obstruction,
    type2,
    verify_lie,
)
from .jsonio import dump, load, parse_text, serialize
