"""Evaluate, certify and maximize the permanental polynomial of a non-negative matrix."""
from ._backend import available_backends, backend_name, get_backend, set_backend
from .core_eval import (
    DimensionError,
    DomainError,
    EvalValue,
    NonNegMatrix,
    eval_F_bruteforce,
    eval_F_complex,
    eval_F_fast,
    eval_R,
    grad_F,
    grad_log_F,
    is_zero_polynomial,
    permanent_square,
)
from .matrix_io import ParseError, parse_matrix
from .simplex_opt import MaximizeConfig, MaximizeReport, fw_gap, grid_search_oracle, maximize_log_F
from .stability import (
    CertifyConfig,
    CertifyReport,
    RootCertificate,
    certify_all,
    certify_dominance,
    certify_log_concavity,
    certify_roots,
    restrict_bivariate,
)

__version__ = "0.1.0"
