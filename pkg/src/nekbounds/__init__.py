"""Infinity-norm bounds for the inverse of Nekrasov matrices."""

from .bounds import (
    BoundReport,
    CaseTag,
    MuSweep,
    OptimalMu,
    ParamBound,
    bound_baseline_diff,
    bound_baseline_ratio,
    bound_param_diff,
    bound_param_ratio,
    full_report,
    mu_sweep,
    optimal_mu_diff,
    optimal_mu_ratio,
    varah_bound,
)
from .errors import (
    DimensionTooSmall,
    EmptyGrid,
    MuOutOfRange,
    NearSingularWarning,
    NekboundsError,
    NotNekrasov,
    NotSDD,
    ParseError,
    Singular,
    ZeroDiagonal,
)
from .fixtures import fixture_path, load_fixture
from .matrix import (
    MatrixFormat,
    SquareMatrix,
    comparison_matrix,
    deleted_row_sum,
    parse_matrix,
    read_matrix,
    render_plain,
    triangular_split,
)
from .nekrasov import (
    NekrasovProfile,
    Verdict,
    classify,
    compute_h_by_solve,
    compute_h_recursive,
    compute_z,
    szulc_check,
)
from .oracle import (
    BoundKind,
    ExactNorm,
    GeneratorConfig,
    brute_force_bound_min,
    exact_inverse_inf_norm,
    generate_nekrasov,
)

__version__ = "0.1.0"
