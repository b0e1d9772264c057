"""Cokernel bounds for KH_{-1} of cyclic quotient singularities."""

from .linalg import IntMatrix, NotUnimodular, coxeter_phi, determinant, m_matrix, unimodular_inverse
from .path_algebra import (
    DEFAULT_PATH_BUDGET,
    PathBudgetExceeded,
    cartan_matrix_normal_form,
    cartan_matrix_oracle,
    enumerate_paths,
)
from .pipeline import (
    Config,
    EngineDisagreement,
    Report,
    SweepFailure,
    compute,
    enumerate_valid_params,
    kleinian_sweep,
    run_pipeline,
    sweep,
)
from .quiver import (
    CyclicParams,
    GcdViolation,
    RangeViolation,
    SumViolation,
    TooSmall,
    ValidationError,
    build_full_quiver,
    build_quiver,
    prune_decreasing_arrows,
    remove_vertex_zero,
    validate_params,
)
from .smith import (
    INFINITE,
    AbelianGroup,
    DimensionMismatch,
    SnfResult,
    cokernel,
    element_order,
    is_generating_set,
    smith_normal_form,
)

__version__ = "0.1.0"
