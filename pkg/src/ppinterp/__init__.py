"""Exact tools for partial polynomial interpolation.

Predict the dimension of spaces of polynomials with assigned values and
first-derivative data, solve the interpolation problem exactly, and verify
the structural dimension claims by seeded rank measurements over a prime
field.
"""

from .gf import DEFAULT_PRIME
from .interp import Interpolant, predict_then_solve, solve
from .linalg import KERNEL, nullspace_dim, rank, solve_square
from .monomials import (
    CoordinateSubspace,
    MonomialBasis,
    build_basis,
    derivative_row,
    eval_row,
    jacobian_block,
    vanishing_basis,
)
from .schemes import (
    ComponentSpec,
    InterpolationProblem,
    SchemeInstance,
    condition_matrix_affine,
    condition_matrix_projective,
    hilbert_function,
    random_instance,
)
from .theory import (
    Prediction,
    delta_affine,
    delta_scheme,
    enumerate_quadric_exceptions,
    enumerate_triple_partitions,
    enumerate_xo_partitions,
    predict_general,
    predict_profile,
    predict_quadric_affine,
    predict_quadric_scheme,
)
from .verify import TrialPolicy, run_suite

__version__ = "0.1.0"
