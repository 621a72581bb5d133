"""Floating-point spectral routines built on the complex adjoint embedding.

A complex vector ``(u; v)`` of length ``2n`` stands for the quaternion vector
``u - conj(v) j``; its partner ``J(u; v) = (-conj(v); conj(u))`` represents the
same vector times ``j``.  Quaternion orthonormal bases are produced by
Gram-Schmidt in the complex domain that always admits a vector together with
its ``J``-partner.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .errors import (
    DimensionMismatch,
    EmbeddingPairingFailure,
    NonConvergence,
    NotHermitian,
    NotPositiveDefinite,
    ScheduleEmpty,
)
from .qmatrix import QMatrix, complex_embed, complex_unembed, inverse, is_hermitian
from .quaternion import DEFAULT_TOL

PAIR_TOL = 1e-8
DEFAULT_SCHEDULE = tuple(10.0 ** -k for k in range(1, 9))


# ---------------------------------------------------------------------------
# complex <-> quaternion vectors


def _j_partner(c):
    n = c.shape[0] // 2
    return np.concatenate([-c[n:].conj(), c[:n].conj()])


def _to_quaternion_columns(cols):
    """Stack complex representatives (``2n x k``) into an ``n x k`` quaternion matrix."""
    n = cols.shape[0] // 2
    u, v = cols[:n], cols[n:]
    data = np.stack([u.real, u.imag, -v.real, v.imag], axis=-1)
    return QMatrix._wrap(np.ascontiguousarray(data))


def _to_complex_columns(Q):
    d = Q.to_float().data
    u = d[..., 0] + 1j * d[..., 1]
    v = -d[..., 2] + 1j * d[..., 3]
    return np.concatenate([u, v], axis=0)


def _j_gram_schmidt(candidates, count, basis=None, accept=0.5):
    """Extend a ``J``-closed orthonormal set with candidate columns.

    Returns ``(reps, basis)``: ``reps`` holds one representative per accepted
    quaternion direction (``2n x count``), ``basis`` the full ``J``-closed set.
    """
    dim = candidates.shape[0]
    basis = np.zeros((dim, 0), dtype=complex) if basis is None else basis
    reps = []
    for c in candidates.T:
        if len(reps) == count:
            break
        c = c.astype(complex)
        norm0 = np.linalg.norm(c)
        if norm0 == 0:
            continue
        for _ in range(2):
            c = c - basis @ (basis.conj().T @ c)
        norm = np.linalg.norm(c)
        if norm <= accept * norm0:
            continue
        c = c / norm
        reps.append(c)
        basis = np.column_stack([basis, c, _j_partner(c)])
    if len(reps) < count:
        raise EmbeddingPairingFailure(f"could only build {len(reps)} of {count} quaternion directions")
    return np.column_stack(reps) if reps else np.zeros((dim, 0), dtype=complex), basis


def _pair(values, tol):
    """Collapse a sorted sequence of doubled values to one per pair."""
    values = np.asarray(values, dtype=float)
    if values.size % 2:
        raise EmbeddingPairingFailure("odd number of embedded values")
    a, b = values[0::2], values[1::2]
    spread = max(1.0, float(np.abs(values).max(initial=0.0)))
    gap = float(np.abs(a - b).max(initial=0.0))
    if gap > tol * spread:
        raise EmbeddingPairingFailure(f"embedded values fail to pair (gap {gap:.3g})")
    return (a + b) / 2


# ---------------------------------------------------------------------------
# Hermitian eigendecomposition


@dataclass(frozen=True)
class HermitianEig:
    """Descending real eigenvalues and a unitary matrix of right eigenvectors."""

    eigenvalues: np.ndarray
    eigenvectors: QMatrix

    def reconstruct(self):
        U = self.eigenvectors
        return U @ QMatrix.diag([float(x) for x in self.eigenvalues], exact=False) @ U.H

    def apply(self, fn):
        """``U diag(fn(lambda)) U*`` for a scalar function ``fn``."""
        U = self.eigenvectors
        vals = [float(fn(x)) for x in self.eigenvalues]
        S = U @ QMatrix.diag(vals, exact=False) @ U.H
        return _hermitize(S)


def _hermitize(S):
    return QMatrix._wrap((S.data + S.H.data) / 2)


def eig_hermitian(A, tol=DEFAULT_TOL):
    if not A.is_square:
        raise DimensionMismatch(f"square matrix required, got {A.shape}")
    if not is_hermitian(A, tol):
        raise NotHermitian("eig_hermitian needs a Hermitian matrix")
    n = A.rows
    if n == 0:
        return HermitianEig(np.zeros(0), QMatrix.zeros(0, 0, exact=False))
    w, vecs = np.linalg.eigh(complex_embed(A))
    order = np.argsort(w)[::-1]
    w, vecs = w[order], vecs[:, order]
    values = _pair(w, PAIR_TOL)
    reps, _ = _j_gram_schmidt(vecs, n)
    return HermitianEig(values, _to_quaternion_columns(reps))


@dataclass(frozen=True)
class Inertia:
    positive: int
    negative: int
    zero: int

    def __iter__(self):
        return iter((self.positive, self.negative, self.zero))


def inertia(A, tol=DEFAULT_TOL):
    """Counts of positive, negative and zero eigenvalues (``|lambda| <= tol * max|lambda|`` is zero)."""
    lam = eig_hermitian(A, tol).eigenvalues
    scale = float(np.abs(lam).max(initial=0.0))
    zero = np.abs(lam) <= tol * scale
    return Inertia(int(np.sum((lam > 0) & ~zero)), int(np.sum((lam < 0) & ~zero)), int(np.sum(zero)))


def is_positive_definite(A, tol=DEFAULT_TOL):
    """All leading principal minors positive, and (float input) all eigenvalues positive.

    Leading minors are taken with the Hermitian determinant on the input's own
    backend, so rational weights are certified exactly.  Orders beyond the
    permutation-expansion cap are decided by the eigenvalues alone.
    """
    from .rcdet import det_hermitian, size_cap

    if not A.is_square:
        raise DimensionMismatch(f"square matrix required, got {A.shape}")
    if not is_hermitian(A, tol):
        raise NotHermitian("positive definiteness is defined for Hermitian matrices")
    n = A.rows
    for k in range(1, min(n, size_cap()) + 1):
        lead = A[list(range(k)), list(range(k))]
        if not det_hermitian(lead, tol) > 0:
            return False
    if A.is_exact and n <= size_cap():
        return True
    lam = eig_hermitian(A, tol).eigenvalues
    return bool(lam.size == 0 or lam.min() > tol * max(1.0, float(np.abs(lam).max())))


def _require_pd(A, what="matrix"):
    if not A.is_square or not is_hermitian(A) or not is_positive_definite(A):
        raise NotPositiveDefinite(f"{what} is not Hermitian positive definite")


def sqrt_pd(A):
    """Unique Hermitian positive-definite square root."""
    _require_pd(A)
    return eig_hermitian(A).apply(np.sqrt)


def inv_sqrt_pd(A):
    _require_pd(A)
    return eig_hermitian(A).apply(lambda x: 1.0 / np.sqrt(x))


# ---------------------------------------------------------------------------
# singular value decompositions


@dataclass(frozen=True)
class QSVD:
    """``A = V diag(sigma) W*`` with ``V`` (m x m) and ``W`` (n x n) unitary."""

    V: QMatrix
    sigma: np.ndarray
    W: QMatrix
    rank: int

    @property
    def Sigma(self):
        m, n = self.V.rows, self.W.rows
        data = np.zeros((m, n, 4))
        for k, s in enumerate(self.sigma):
            data[k, k, 0] = s
        return QMatrix._wrap(data)

    def __iter__(self):
        return iter((self.V, self.Sigma, self.W))


def _numerical_rank(sigma, shape, tol):
    if sigma.size == 0 or sigma[0] == 0:
        return 0
    return int(np.sum(sigma > tol * sigma[0] * max(shape)))


def qsvd(A, tol=DEFAULT_TOL):
    A = A.to_float()
    m, n = A.shape
    C = complex_embed(A)
    if min(m, n) == 0:
        return QSVD(QMatrix.identity(m, exact=False), np.zeros(0), QMatrix.identity(n, exact=False), 0)
    Uc, s, Vch = np.linalg.svd(C)
    sigma = _pair(s[: 2 * min(m, n)], PAIR_TOL)
    sigma = np.clip(sigma, 0.0, None)
    r = _numerical_rank(sigma, (m, n), tol)
    right, _ = _j_gram_schmidt(Vch.conj().T, n)
    W = _to_quaternion_columns(right)
    if r:
        scale = QMatrix.diag([1.0 / x for x in sigma[:r]], exact=False)
        left = A @ W[:, list(range(r))] @ scale
        head, basis = _j_gram_schmidt(_to_complex_columns(left), r)
    else:
        head, basis = np.zeros((2 * m, 0), dtype=complex), None
    tail, _ = _j_gram_schmidt(Uc, m - r, basis)
    V = _to_quaternion_columns(np.column_stack([head, tail]))
    return QSVD(V, sigma, W, r)


@dataclass(frozen=True)
class WSVDResult:
    """``A = U D V*`` with ``U* M U = I`` and ``V* N^-1 V = I``."""

    U: QMatrix
    V: QMatrix
    sigma: np.ndarray
    r: int

    @property
    def D(self):
        data = np.zeros((self.U.rows, self.V.rows, 4))
        for k in range(self.r):
            data[k, k, 0] = self.sigma[k]
        return QMatrix._wrap(data)

    def reconstruct(self):
        return self.U @ self.D @ self.V.H


def _weights(A, W):
    from .weights import WeightPair

    if W is None:
        W = WeightPair.identity(A.rows, A.cols)
    W.check_shape(A)
    return W


def wsvd(A, W=None, tol=DEFAULT_TOL):
    """Weighted SVD through the unweighted SVD of ``M^(1/2) A N^(-1/2)``."""
    W = _weights(A, W)
    At = W.M_sqrt @ A.to_float() @ W.N_inv_sqrt
    svd = qsvd(At, tol)
    U = W.M_inv_sqrt @ svd.V
    V = W.N_sqrt @ svd.W
    return WSVDResult(U, V, svd.sigma[: svd.rank].copy(), svd.rank)


def wmp_wsvd(A, W=None, tol=DEFAULT_TOL):
    """Weighted MP inverse ``N^-1 V diag(1/sigma, 0) U* M`` from the weighted SVD."""
    W = _weights(A, W)
    res = wsvd(A, W, tol)
    m, n = A.shape
    if res.r == 0:
        return QMatrix.zeros(n, m, exact=False)
    Dplus = np.zeros((n, m, 4))
    for k in range(res.r):
        Dplus[k, k, 0] = 1.0 / res.sigma[k]
    return W.N_inv.to_float() @ res.V @ QMatrix._wrap(Dplus) @ res.U.H @ W.M.to_float()


@dataclass
class LimitResult:
    """Last iterate of the limit representation and its convergence trace."""

    inverse: QMatrix
    lambdas: tuple
    distances: tuple
    reference: QMatrix = field(repr=False)


def _tikhonov(T, lam):
    """``(lam I + T*T)^-1 T*`` by least squares on ``[T; sqrt(lam) I]`` in the complex domain."""
    C = complex_embed(T)
    rows, cols = C.shape
    stacked = np.vstack([C, np.sqrt(lam) * np.eye(cols)])
    rhs = np.vstack([np.eye(rows), np.zeros((cols, rows))])
    X = np.linalg.lstsq(stacked, rhs, rcond=None)[0]
    return complex_unembed(X, tol=1e-6)


def _limit_iterate(A, S, W, lam, side, solver):
    m, n = A.shape
    if solver == "exact":
        lam_q = Fraction(repr(lam))
        if side == "right":
            return inverse(S @ A + QMatrix.identity(n) * lam_q) @ S
        return S @ inverse(A @ S + QMatrix.identity(m) * lam_q)
    if solver == "direct":
        if side == "right":
            return inverse(S @ A + QMatrix.identity(n, exact=False) * lam) @ S
        return S @ inverse(A @ S + QMatrix.identity(m, exact=False) * lam)
    # same quantities rewritten through T = M^(1/2) A N^(-1/2):
    # (lam + A#A)^-1 A# = N^(-1/2) (lam + T*T)^-1 T* M^(1/2), and the left form
    # equals N^(-1/2) T* (lam + TT*)^-1 M^(1/2) = N^(-1/2) [(lam + TT*)^-1 T]* M^(1/2)
    T = W.M_sqrt.to_float() @ A @ W.N_inv_sqrt.to_float()
    if solver == "lstsq":
        core = _tikhonov(T, lam) if side == "right" else _tikhonov(T.H, lam).H
    else:
        core = _filtered(T, lam)
    return W.N_inv_sqrt.to_float() @ core @ W.M_sqrt.to_float()


def _filtered(T, lam, tol=DEFAULT_TOL):
    """``W diag(s / (s^2 + lam)) V*`` from ``T = V diag(s) W*``; singular values below rank are zero."""
    svd = qsvd(T, tol)
    m, n = T.shape
    data = np.zeros((n, m, 4))
    for k in range(svd.rank):
        s = svd.sigma[k]
        data[k, k, 0] = s / (s * s + lam)
    return svd.W @ QMatrix._wrap(data) @ svd.V.H


def wmp_limit(A, W=None, side="right", schedule=None, reference=None, tol=DEFAULT_TOL, solver="auto"):
    """Weighted MP inverse as a limit over a decreasing ``lambda`` schedule.

    ``side="right"`` evaluates ``(lambda I + A# A)^-1 A#``, ``side="left"``
    evaluates ``A# (lambda I + A A#)^-1``.  ``solver`` picks how:

    * ``"exact"`` solves in rationals, reading each ``lambda`` as its shortest
      decimal (default for rational input);
    * ``"filter"`` applies the factors ``s / (s^2 + lambda)`` to the singular
      values of ``T = M^(1/2) A N^(-1/2)``, which is the same quantity,
      with singular values below the numerical rank treated as zero (default
      for float input);
    * ``"lstsq"`` solves the regularized least-squares problem on ``T``;
    * ``"direct"`` inverts the shifted Gram matrix in floats.

    The last two lose about ``eps / lambda`` to rounding and stall for small
    ``lambda``.

    The distance of each iterate to ``reference`` (the weighted-SVD inverse
    unless given) is recorded; the last three distances must strictly
    decrease.
    """
    from .wmp import weighted_adjoint

    W = _weights(A, W)
    schedule = DEFAULT_SCHEDULE if schedule is None else tuple(float(x) for x in schedule)
    if not schedule:
        raise ScheduleEmpty("lambda schedule is empty")
    if any(x <= 0 for x in schedule) or any(b >= a for a, b in zip(schedule, schedule[1:])):
        raise ValueError("lambda schedule must be strictly decreasing positive reals")
    if side not in ("left", "right"):
        raise ValueError(f"side must be 'left' or 'right', got {side!r}")
    exact = A.is_exact and W.M.is_exact and W.N_inv.is_exact
    if solver == "auto":
        solver = "exact" if exact else "filter"
    if solver not in ("exact", "filter", "lstsq", "direct"):
        raise ValueError(f"unknown solver {solver!r}")
    if solver == "exact" and not exact:
        raise ValueError("the exact solver needs rational A and weights")
    if solver == "exact":
        S = weighted_adjoint(A, W)
    else:
        A = A.to_float()
        S = weighted_adjoint(A, W).to_float()
    if reference is None:
        reference = wmp_wsvd(A, W, tol)
    X = None
    distances = []
    for lam in schedule:
        X = _limit_iterate(A, S, W, lam, side, solver).to_float()
        distances.append(X.distance(reference))
    # an exact hit (e.g. A = 0) counts as converged
    if len(distances) >= 3 and distances[-1] != 0 and not distances[-3] > distances[-2] > distances[-1]:
        raise NonConvergence(
            "limit iterates stopped approaching the reference: "
            + ", ".join(f"{d:.3g}" for d in distances[-3:])
        )
    return LimitResult(X, schedule, tuple(distances), reference)
