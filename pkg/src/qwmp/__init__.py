"""Weighted Moore-Penrose inverses of quaternion matrices.

Exact rational determinantal formulas built on row/column determinants,
cross-checked against spectral routes through the complex adjoint embedding.
"""
from .cramer import LeftSystem, RightSystem, solve_left, solve_right
from .errors import *  # noqa: F401,F403
from .qmatrix import QMatrix, complex_embed, complex_unembed, conj_transpose, inverse, is_hermitian, matmul, rank
from .quaternion import Quaternion, quat_conj, quat_inv, quat_mul
from .rcdet import (
    CharPolyCoeffs,
    bordered_minor_sum_col,
    bordered_minor_sum_row,
    cdet,
    charpoly_border_coeffs,
    cofactors,
    det_hermitian,
    hermitian_inverse,
    minor_sum,
    principal_minor_sums,
    rdet,
)
from .spectral import (
    HermitianEig,
    Inertia,
    WSVDResult,
    eig_hermitian,
    inertia,
    inv_sqrt_pd,
    is_positive_definite,
    qsvd,
    sqrt_pd,
    wmp_limit,
    wmp_wsvd,
    wsvd,
)
from .verify import PenroseResiduals, brute_force_mp, cross_check, penrose_residuals
from .weights import WeightPair
from .wmp import (
    WmpReport,
    mp_det,
    projection_P,
    projection_Q,
    reduction_route,
    sharp_hermitian_flags,
    weighted_adjoint,
    wmp,
    wmp_det_general_col,
    wmp_det_general_row,
    wmp_det_hermitian_col,
    wmp_det_hermitian_row,
)

__version__ = "0.1.0"
