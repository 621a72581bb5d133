"""Penrose-axiom residuals, cross-method comparison and independent oracles."""
from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatch
from .qmatrix import QMatrix, complex_embed, complex_unembed


@dataclass(frozen=True)
class PenroseResiduals:
    """Max-entry quaternion norms of the four weighted Penrose defects."""

    rho1: float
    rho2: float
    rho3M: float
    rho4N: float
    exact_zero: bool = False

    def max(self):
        return max(self.rho1, self.rho2, self.rho3M, self.rho4N)

    def as_dict(self):
        return {"rho1": self.rho1, "rho2": self.rho2, "rho3M": self.rho3M, "rho4N": self.rho4N}

    def ok(self, tol=1e-8, exact=False):
        if exact:
            return self.exact_zero
        return self.max() <= tol


def penrose_residuals(A, W, X):
    """Residuals of ``AXA = A``, ``XAX = X``, ``(MAX)* = MAX`` and ``(NXA)* = NXA``.

    When every operand is rational the defects are formed exactly and
    ``exact_zero`` records whether all four vanish identically.
    """
    if W is None:
        from .weights import WeightPair

        W = WeightPair.identity(A.rows, A.cols)
    m, n = A.shape
    if X.shape != (n, m):
        raise DimensionMismatch(f"candidate inverse must be {n}x{m}, got {X.shape}")
    W.check_shape(A)
    M, N = W.M, W.N
    AX = A @ X
    XA = X @ A
    MAX = M @ AX
    NXA = N @ XA
    defects = [AX @ A - A, XA @ X - X, MAX.H - MAX, NXA.H - NXA]
    exact = all(D.is_exact for D in defects)
    return PenroseResiduals(
        *(D.max_norm() for D in defects),
        exact_zero=exact and all(D.is_zero() for D in defects),
    )


def cross_check(A, W=None, methods=("hermitian_col", "wsvd", "limit", "reduction"), **kwargs):
    """Run several methods, record their residuals and pairwise distances."""
    from .wmp import wmp

    if len(methods) < 2:
        raise ValueError("cross_check needs at least two methods")
    return wmp(A, W, method=tuple(methods), **kwargs)


def max_pairwise_distance(results):
    """Largest entrywise quaternion-norm distance between any two results."""
    best = 0.0
    pairs = {}
    for (a, X), (b, Y) in itertools.combinations(results.items(), 2):
        d = X.distance(Y)
        pairs[(a, b)] = d
        best = max(best, d)
    return best, pairs


def brute_force_mp(A):
    """Unweighted Moore-Penrose inverse computed entirely on the complex embedding."""
    C = complex_embed(A.to_float())
    return complex_unembed(np.linalg.pinv(C), tol=1e-8)


# ---------------------------------------------------------------------------
# random instances


def random_qmatrix(rng, m, n, low=-3, high=3, rank=None):
    """Integer quaternion matrix, optionally forced to a given rank by a product."""
    if rank is None:
        data = rng.integers(low, high + 1, size=(m, n, 4))
        return QMatrix(data)
    left = QMatrix(rng.integers(low, high + 1, size=(m, rank, 4)))
    right = QMatrix(rng.integers(low, high + 1, size=(rank, n, 4)))
    return left @ right


def random_hpd(rng, n, low=-1, high=1):
    """``B* B + I`` with small integer ``B``."""
    B = QMatrix(rng.integers(low, high + 1, size=(n, n, 4)))
    return B.H @ B + QMatrix.identity(n)


def random_hermitian(rng, n, low=-3, high=3):
    B = QMatrix(rng.integers(low, high + 1, size=(n, n, 4)))
    return B + B.H


@dataclass(frozen=True)
class Instance:
    A: QMatrix
    W: object
    label: str


def random_instances(count, seed=0, max_dim=5):
    """Reproducible mix of weighted problems.

    Each instance draws ``m, n <= max_dim``.  Weights cycle through identity,
    scalar (which keeps the Hermitian-case formulas applicable) and general
    ``B*B + I``; roughly a third of the matrices are rank deficient.
    """
    from .weights import WeightPair

    rng = np.random.default_rng(seed)
    out = []
    for t in range(count):
        m, n = (int(x) for x in rng.integers(1, max_dim + 1, size=2))
        if t % 3 == 2 and min(m, n) > 1:
            A = random_qmatrix(rng, m, n, rank=int(rng.integers(1, min(m, n))))
        else:
            A = random_qmatrix(rng, m, n)
        kind = ("identity", "scalar", "general")[t % 3]
        if kind == "identity":
            W = WeightPair.identity(m, n)
        elif kind == "scalar":
            a, b = (int(x) for x in rng.integers(1, 5, size=2))
            W = WeightPair(QMatrix.diag([a] * m), QMatrix.diag([b] * n), check=False)
        else:
            W = WeightPair(random_hpd(rng, m), random_hpd(rng, n))
        out.append(Instance(A, W, f"#{t} {m}x{n} {kind} weights"))
    return out
