"""Cramer-type rules for the weighted Moore-Penrose solutions of ``Ax = b`` and ``xA = b``.

Each unknown is a bordered principal-minor sum over a Gram matrix whose
anchored column (row) is replaced by a transformed right-hand side, so no
inverse is ever formed.
"""
from __future__ import annotations

from dataclasses import dataclass

from .errors import DimensionMismatch
from .qmatrix import QMatrix, is_hermitian
from .quaternion import DEFAULT_TOL
from .rcdet import bordered_minor_sum_col, bordered_minor_sum_row
from .weights import WeightPair
from .wmp import _denominator, _divide, _match, _rank, weighted_adjoint


@dataclass(frozen=True)
class RightSystem:
    """``A x = b`` with ``b`` an m x 1 column."""

    A: QMatrix
    b: QMatrix
    weights: WeightPair | None = None

    def __post_init__(self):
        if self.b.shape != (self.A.rows, 1):
            raise DimensionMismatch(f"right-hand side must be {self.A.rows}x1, got {self.b.shape}")
        if self.weights is not None:
            self.weights.check_shape(self.A)


@dataclass(frozen=True)
class LeftSystem:
    """``x A = b`` with ``b`` a 1 x n row."""

    A: QMatrix
    b: QMatrix
    weights: WeightPair | None = None

    def __post_init__(self):
        if self.b.shape != (1, self.A.cols):
            raise DimensionMismatch(f"right-hand side must be 1x{self.A.cols}, got {self.b.shape}")
        if self.weights is not None:
            self.weights.check_shape(self.A)


def _w(sys):
    return sys.weights or WeightPair.identity(sys.A.rows, sys.A.cols)


def _col_solve(G, f, r):
    n = G.rows
    d = _denominator(G, r)
    return _divide([[bordered_minor_sum_col(G, f, i + 1, r)] for i in range(n)], d)


def _row_solve(H, g, r):
    m = H.rows
    d = _denominator(H, r)
    return _divide([[bordered_minor_sum_row(H, g, j + 1, r) for j in range(m)]], d)


def solve_right(sys, rank=None, method="auto", tol=DEFAULT_TOL):
    """Minimal ``N``-norm least-squares (``M``) solution ``x = A+ b`` as an n x 1 column.

    ``method="hermitian"`` uses ``A#A`` with ``f = A# b``; ``"general"`` uses
    ``N^(-1/2) A* M A N^(-1/2)`` with ``f = N^(-1/2) A* M b`` (or ``A*MA`` and
    ``A*M b`` at full column rank).  ``"auto"`` takes the Hermitian form
    whenever ``A#A`` is Hermitian.
    """
    W = _w(sys)
    A, b = sys.A, sys.b
    r = _rank(A, rank)
    if r == 0:
        return QMatrix.zeros(A.cols, 1, exact=A.is_exact and b.is_exact)
    if method in ("auto", "hermitian"):
        S = weighted_adjoint(A, W)
        A_, S_, b_ = _match(A, S, b)
        G = S_ @ A_
        if is_hermitian(G, tol):
            return _col_solve(G, S_ @ b_, r)
        if method == "hermitian":
            from .errors import NotHermitianSharp

            raise NotHermitianSharp("A#A is not Hermitian")
    elif method != "general":
        raise ValueError(f"unknown method {method!r}")
    if r == A.cols:
        A_, M, b_ = _match(A, W.M, b)
        AsM = A_.H @ M
        return _col_solve(AsM @ A_, AsM @ b_, r)
    A_, M, R, b_ = _match(A, W.M, W.N_inv_sqrt, b)
    g = R @ A_.H @ M
    return R @ _col_solve(g @ A_ @ R, g @ b_, r)


def solve_left(sys, rank=None, method="auto", tol=DEFAULT_TOL):
    """``x = b A+`` as a 1 x m row; mirror of :func:`solve_right` over ``AA#``."""
    W = _w(sys)
    A, b = sys.A, sys.b
    r = _rank(A, rank)
    if r == 0:
        return QMatrix.zeros(1, A.rows, exact=A.is_exact and b.is_exact)
    if method in ("auto", "hermitian"):
        S = weighted_adjoint(A, W)
        A_, S_, b_ = _match(A, S, b)
        H = A_ @ S_
        if is_hermitian(H, tol):
            return _row_solve(H, b_ @ S_, r)
        if method == "hermitian":
            from .errors import NotHermitianSharp

            raise NotHermitianSharp("AA# is not Hermitian")
    elif method != "general":
        raise ValueError(f"unknown method {method!r}")
    if r == A.rows:
        A_, Ninv, b_ = _match(A, W.N_inv, b)
        NAs = Ninv @ A_.H
        return _row_solve(A_ @ NAs, b_ @ NAs, r)
    A_, Ninv, Ms, b_ = _match(A, W.N_inv, W.M_sqrt, b)
    h = Ninv @ A_.H @ Ms
    return _row_solve(Ms @ A_ @ h, b_ @ h, r) @ Ms
