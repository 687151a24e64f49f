"""Truncated-operator toolkit for shift-invariant subspace verification."""

from .symbols import (
    CompletionFrame,
    IsometryClass,
    IsometryKind,
    LaurentSymbol,
    RankProfile,
    block_symbol,
    classify_isometry,
    coeff_distance,
    complementary_completion,
    constant_symbol,
    identity_symbol,
    make_cyclic_symbol,
    make_symbol,
    monomial_symbol,
    rank_profile,
    submatrix,
    symbol_mul,
    unit_circle_points,
    zero_symbol,
)
from .operators import (
    NehariBracket,
    OperatorMatrix,
    ProductSpace,
    ShiftOps,
    SubspaceBasis,
    SvdReport,
    TruncatedSpace,
    build_kernel_operator,
    build_range_operator,
    export_matrix,
    hankel_op,
    import_matrix,
    intertwining_residual,
    mixed_shift_pair,
    nehari_bounds,
    shift_ops,
    svd_analysis,
    toeplitz_op,
)
from .subspaces import (
    CheckResult,
    InvariantSubspaceSpec,
    RoundtripResult,
    SpecValidationError,
    SplitProfile,
    SplittingResult,
    UnitaryMatchResult,
    VerificationReport,
    analytic_ambient,
    bilateral_ambient,
    bilateral_roundtrip,
    bilateral_subspace,
    classify_type,
    constant_unitary_match,
    coordinate_split_profile,
    default_window,
    invariance_check,
    kernel_representation_check,
    kernel_subspace,
    kernel_symbol_from_u,
    mixed_from_bilateral,
    mixed_invariant_subspace,
    model_space_basis,
    range_representation_check,
    range_symbol_from_u,
    range_window_basis,
    splitting_check_scalar,
    twocond_check,
)
from .linalg import principal_angle_distance, principal_angles

__all__ = [name for name in dir() if not name.startswith("_")]
