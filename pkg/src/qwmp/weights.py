"""Hermitian positive-definite weight pairs ``(M, N)``."""
from __future__ import annotations

from functools import cached_property

from .errors import DimensionMismatch, NotPositiveDefinite
from .qmatrix import QMatrix, inverse, is_hermitian
from .quaternion import DEFAULT_TOL


class WeightPair:
    """Weights ``M`` (m x m) and ``N`` (n x n); either ``N`` or ``N^-1`` may be supplied.

    Inverses and square roots are computed on first use.  Exactly-identity
    weights keep exact identity roots, so unweighted problems stay rational.
    """

    def __init__(self, M, N=None, N_inv=None, check=True, tol=DEFAULT_TOL):
        if (N is None) == (N_inv is None):
            raise ValueError("supply exactly one of N and N_inv")
        self.M = M
        self._given_N = N
        self._given_N_inv = N_inv
        self.tol = tol
        if check:
            self._check()

    @classmethod
    def identity(cls, m, n):
        return cls(QMatrix.identity(m), QMatrix.identity(n), check=False)

    @property
    def m(self):
        return self.M.rows

    @property
    def n(self):
        src = self._given_N if self._given_N is not None else self._given_N_inv
        return src.rows

    def _check(self):
        from .spectral import is_positive_definite

        for name, W in (("M", self.M), ("N", self._given_N), ("N^-1", self._given_N_inv)):
            if W is None:
                continue
            if not W.is_square:
                raise DimensionMismatch(f"weight {name} must be square, got {W.shape}")
            if not is_hermitian(W, self.tol) or not is_positive_definite(W, self.tol):
                raise NotPositiveDefinite(f"weight {name} is not Hermitian positive definite")

    def check_shape(self, A):
        if self.m != A.rows or self.n != A.cols:
            raise DimensionMismatch(f"weights of orders ({self.m}, {self.n}) do not fit a {A.rows}x{A.cols} matrix")

    @cached_property
    def N(self):
        if self._given_N is not None:
            return self._given_N
        return _hermitian_part(inverse(self._given_N_inv))

    @cached_property
    def N_inv(self):
        if self._given_N_inv is not None:
            return self._given_N_inv
        return _hermitian_part(inverse(self._given_N))

    @property
    def is_identity(self):
        return _is_identity(self.M) and _is_identity(self.N)

    @cached_property
    def M_sqrt(self):
        return self._root(self.M, "sqrt")

    @cached_property
    def M_inv_sqrt(self):
        return self._root(self.M, "inv_sqrt")

    @cached_property
    def N_sqrt(self):
        if self._given_N is None:
            return self._root(self._given_N_inv, "inv_sqrt")
        return self._root(self._given_N, "sqrt")

    @cached_property
    def N_inv_sqrt(self):
        if self._given_N is None:
            return self._root(self._given_N_inv, "sqrt")
        return self._root(self._given_N, "inv_sqrt")

    @staticmethod
    def _root(W, kind):
        from .spectral import inv_sqrt_pd, sqrt_pd

        if _is_identity(W):
            return QMatrix.identity(W.rows, exact=W.is_exact)
        return sqrt_pd(W) if kind == "sqrt" else inv_sqrt_pd(W)

    def to_float(self):
        N, Ninv = self._given_N, self._given_N_inv
        return WeightPair(
            self.M.to_float(),
            None if N is None else N.to_float(),
            None if Ninv is None else Ninv.to_float(),
            check=False,
            tol=self.tol,
        )

    def __repr__(self):
        return f"WeightPair(m={self.m}, n={self.n})"


def _hermitian_part(X):
    if X.is_exact:
        return X
    return QMatrix._wrap((X.data + X.H.data) / 2)


def _is_identity(W):
    return W.is_square and W == QMatrix.identity(W.rows, exact=W.is_exact)
