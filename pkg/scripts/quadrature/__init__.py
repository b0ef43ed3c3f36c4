"""
Oscillatory product-rule quadrature.

Evaluates int_{-a}^{a} kappa(omega (y - x)) f(x) dx from equispaced samples of
f, combining generalized Bernstein approximation of f with partitioned
Gauss-Legendre evaluation of the modified moments.
"""

from .bernstein_gb import (
    BooleanSumMatrix,
    EquispacedGrid,
    GridFunction,
    approximation_error,
    basis_eval,
    basis_eval_all,
    basis_matrix,
    build_A,
    build_C,
    gb_eval,
    gb_eval_many,
    make_grid,
    node_operator,
    sample,
)
from .errors import (
    ConvergenceError,
    DimensionError,
    DomainError,
    QuadratureError,
    SampleFileError,
    UnknownFunctionError,
)
from .functions import BUILTIN_FUNCTIONS, get_function
from .gauss_legendre import GaussRule, gl_rule
from .oracle import (
    ReferenceConfig,
    ReferenceResult,
    reference_integral,
    reference_levels,
    reference_q,
)
from .product_rule import (
    MomentTable,
    OscillatoryKernel,
    Partition,
    RuleWeights,
    compute_weights,
    compute_weights_many,
    default_points,
    integrate,
    integrate_many,
    make_partition,
    moment,
    moment_table,
    moment_tables,
)
from .sample_file import read_sample_file, write_sample_file

__all__ = [
    'BooleanSumMatrix',
    'EquispacedGrid',
    'GridFunction',
    'approximation_error',
    'basis_eval',
    'basis_eval_all',
    'basis_matrix',
    'build_A',
    'build_C',
    'gb_eval',
    'gb_eval_many',
    'make_grid',
    'node_operator',
    'sample',
    'ConvergenceError',
    'DimensionError',
    'DomainError',
    'QuadratureError',
    'SampleFileError',
    'UnknownFunctionError',
    'BUILTIN_FUNCTIONS',
    'get_function',
    'GaussRule',
    'gl_rule',
    'ReferenceConfig',
    'ReferenceResult',
    'reference_integral',
    'reference_levels',
    'reference_q',
    'MomentTable',
    'OscillatoryKernel',
    'Partition',
    'RuleWeights',
    'compute_weights',
    'compute_weights_many',
    'default_points',
    'integrate',
    'integrate_many',
    'make_partition',
    'moment',
    'moment_table',
    'moment_tables',
    'read_sample_file',
    'write_sample_file',
]
