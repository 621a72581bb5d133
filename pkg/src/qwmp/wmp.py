"""Weighted Moore-Penrose inverse by determinantal formulas, plus the method dispatcher.

Two regimes are covered.  When ``A#A`` (or ``AA#``) is Hermitian, with
``A# = N^-1 A* M``, every entry is a bordered principal-minor sum of that
Gram matrix divided by the sum of its order-``r`` principal minors; this path
is exact on rational input.  The general regime applies the same kernels to
``N^(-1/2) A* M A N^(-1/2)`` (columns) or ``M^(1/2) A N^-1 A* M^(1/2)``
(rows), which needs the weight roots and hence floats unless a weight is the
identity or ``A`` has full rank on the relevant side.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .errors import (
    AxiomViolation,
    NotHermitianSharp,
    SizeCapExceeded,
    ZeroDenominator,
)
from .qmatrix import QMatrix, is_hermitian
from .quaternion import DEFAULT_TOL
from .rcdet import bordered_minor_sum_col, bordered_minor_sum_row, minor_sum
from .spectral import wmp_limit, wmp_wsvd
from .verify import PenroseResiduals, max_pairwise_distance, penrose_residuals
from .weights import WeightPair

AXIOM_TOL = 1e-8
# the limit route carries an O(lambda) truncation bias, so its residuals are
# held to the same bound as its distance to the exact inverse
LIMIT_AXIOM_TOL = 1e-5

METHODS = ("hermitian_col", "hermitian_row", "general_col", "general_row", "wsvd", "limit", "reduction")


def _weights(A, W):
    if W is None:
        W = WeightPair.identity(A.rows, A.cols)
    W.check_shape(A)
    return W


def _match(A, *mats):
    """Bring every operand onto one backend (exact only if all are exact)."""
    if A.is_exact and all(X.is_exact for X in mats):
        return (A, *mats)
    return tuple(X.to_float() for X in (A, *mats))


def weighted_adjoint(A, W=None):
    """``A# = N^-1 A* M`` (n x m)."""
    W = _weights(A, W)
    A, Ninv, M = _match(A, W.N_inv, W.M)
    return Ninv @ A.H @ M


def sharp_hermitian_flags(A, W=None, tol=DEFAULT_TOL):
    """``(A#A Hermitian, AA# Hermitian)``."""
    S = weighted_adjoint(A, W)
    A = A.to_float() if not S.is_exact else A
    return is_hermitian(S @ A, tol), is_hermitian(A @ S, tol)


def _rank(A, rank):
    return A.rank() if rank is None else int(rank)


def _divide(entries, d):
    """Entry array of quaternions divided by the real scalar ``d``."""
    rows, cols = len(entries), len(entries[0]) if entries else 0
    exact = isinstance(d, Fraction)
    data = np.empty((rows, cols, 4), dtype=object if exact else np.float64)
    for i, row in enumerate(entries):
        for j, q in enumerate(row):
            data[i, j] = [c / d for c in q.components]
    return QMatrix._wrap(data)


def _nonzero(d, what, scale=1.0):
    if isinstance(d, Fraction):
        if d == 0:
            raise ZeroDenominator(f"{what} vanished")
    elif not abs(d) > 1e-12 * scale:
        raise ZeroDenominator(f"{what} is numerically zero ({d:.3g})")
    return d


def _denominator(G, r):
    d = minor_sum(G, r)
    scale = max(1.0, G.max_norm()) ** r
    return _nonzero(d if G.is_exact else float(d), f"sum of order-{r} principal minors", scale)


def _col_formula(G, B, r):
    """``X_ij = colsum(G, B_.j, i, r) / d_r(G)`` for an n x n Gram ``G`` and n x m ``B``."""
    d = _denominator(G, r)
    n, m = B.shape
    cols = [B.col(j) for j in range(m)]
    entries = [[bordered_minor_sum_col(G, cols[j], i + 1, r) for j in range(m)] for i in range(n)]
    return _divide(entries, d)


def _row_formula(H, B, r):
    """``X_ij = rowsum(H, B_i., j, r) / d_r(H)`` for an m x m Gram ``H`` and n x m ``B``."""
    d = _denominator(H, r)
    n, m = B.shape
    rows = [B.row(i) for i in range(n)]
    entries = [[bordered_minor_sum_row(H, rows[i], j + 1, r) for j in range(m)] for i in range(n)]
    return _divide(entries, d)


def _zero_inverse(A):
    return QMatrix.zeros(A.cols, A.rows, exact=A.is_exact)


# ---------------------------------------------------------------------------
# Hermitian regime


def wmp_det_hermitian_col(A, W=None, rank=None, tol=DEFAULT_TOL):
    """Column-side formula over ``A#A``; needs ``A#A`` Hermitian."""
    W = _weights(A, W)
    S = weighted_adjoint(A, W)
    A = A if S.is_exact else A.to_float()
    G = S @ A
    if not is_hermitian(G, tol):
        raise NotHermitianSharp("A#A is not Hermitian; use the general formulas")
    r = _rank(A, rank)
    if r == 0:
        return _zero_inverse(A)
    return _col_formula(G, S, r)


def wmp_det_hermitian_row(A, W=None, rank=None, tol=DEFAULT_TOL):
    """Row-side formula over ``AA#``; needs ``AA#`` Hermitian."""
    W = _weights(A, W)
    S = weighted_adjoint(A, W)
    A = A if S.is_exact else A.to_float()
    H = A @ S
    if not is_hermitian(H, tol):
        raise NotHermitianSharp("AA# is not Hermitian; use the general formulas")
    r = _rank(A, rank)
    if r == 0:
        return _zero_inverse(A)
    return _row_formula(H, S, r)


def mp_det(A, side="col", rank=None):
    """Unweighted Moore-Penrose inverse from ``A*A`` (``"col"``) or ``AA*`` (``"row"``)."""
    r = _rank(A, rank)
    if r == 0:
        return _zero_inverse(A)
    if side == "col":
        return _col_formula(A.H @ A, A.H, r)
    if side == "row":
        return _row_formula(A @ A.H, A.H, r)
    raise ValueError(f"side must be 'col' or 'row', got {side!r}")


# ---------------------------------------------------------------------------
# general regime


def wmp_det_general_col(A, W=None, rank=None):
    W = _weights(A, W)
    r = _rank(A, rank)
    if r == 0:
        return _zero_inverse(A)
    n = A.cols
    if r == n:
        A_, M = _match(A, W.M)
        AsM = A_.H @ M
        return _col_formula(AsM @ A_, AsM, r)
    A_, M, R = _match(A, W.M, W.N_inv_sqrt)
    g = R @ A_.H @ M
    G = g @ A_ @ R
    return R @ _col_formula(G, g, r)


def wmp_det_general_row(A, W=None, rank=None):
    W = _weights(A, W)
    r = _rank(A, rank)
    if r == 0:
        return _zero_inverse(A)
    m = A.rows
    if r == m:
        A_, Ninv = _match(A, W.N_inv)
        NAs = Ninv @ A_.H
        return _row_formula(A_ @ NAs, NAs, r)
    A_, Ninv, Ms = _match(A, W.N_inv, W.M_sqrt)
    h = Ninv @ A_.H @ Ms
    H = Ms @ A_ @ h
    return _row_formula(H, h, r) @ Ms


def reduction_route(A, W=None, rank=None, inner="det"):
    """``N^(-1/2) (M^(1/2) A N^(-1/2))^+ M^(1/2)`` with the inner inverse by ``mp_det`` or ``qsvd``."""
    W = _weights(A, W)
    A_, Ms, Nis = _match(A, W.M_sqrt, W.N_inv_sqrt)
    At = Ms @ A_ @ Nis
    if inner == "det":
        X = mp_det(At, "col", rank if rank is not None else At.rank())
    elif inner == "svd":
        X = wmp_wsvd(At, None)
    else:
        raise ValueError(f"inner must be 'det' or 'svd', got {inner!r}")
    return Nis @ X @ Ms


# ---------------------------------------------------------------------------
# projections


def projection_P(A, W=None, rank=None, tol=DEFAULT_TOL):
    """``A+ A`` from bordered minors of ``A#A`` with its own columns."""
    W = _weights(A, W)
    S = weighted_adjoint(A, W)
    A = A if S.is_exact else A.to_float()
    G = S @ A
    if not is_hermitian(G, tol):
        raise NotHermitianSharp("A#A is not Hermitian")
    r = _rank(A, rank)
    if r == 0:
        return QMatrix.zeros(A.cols, A.cols, exact=A.is_exact)
    return _col_formula(G, G, r)


def projection_Q(A, W=None, rank=None, tol=DEFAULT_TOL):
    """``A A+`` from bordered minors of ``AA#`` with its own rows."""
    W = _weights(A, W)
    S = weighted_adjoint(A, W)
    A = A if S.is_exact else A.to_float()
    H = A @ S
    if not is_hermitian(H, tol):
        raise NotHermitianSharp("AA# is not Hermitian")
    r = _rank(A, rank)
    if r == 0:
        return QMatrix.zeros(A.rows, A.rows, exact=A.is_exact)
    return _row_formula(H, H, r)


# ---------------------------------------------------------------------------
# dispatcher


@dataclass
class WmpReport:
    """Result of :func:`wmp`: the chosen inverse plus everything computed on the way."""

    inverse: QMatrix
    method: str
    rank: int
    results: dict = field(default_factory=dict)
    residuals: dict = field(default_factory=dict)
    discrepancy: float | None = None
    pairwise: dict = field(default_factory=dict)
    failures: dict = field(default_factory=dict)
    limit_trace: object = None

    @property
    def exact(self):
        return self.inverse.is_exact

    @property
    def penrose(self) -> PenroseResiduals:
        return self.residuals[self.method]


def _normalize(method):
    return method.replace("-", "_")


def _run(method, A, W, r, tol, schedule):
    if method == "hermitian_col":
        return wmp_det_hermitian_col(A, W, r, tol), None
    if method == "hermitian_row":
        return wmp_det_hermitian_row(A, W, r, tol), None
    if method == "general_col":
        return wmp_det_general_col(A, W, r), None
    if method == "general_row":
        return wmp_det_general_row(A, W, r), None
    if method == "wsvd":
        return wmp_wsvd(A, W, tol), None
    if method == "reduction":
        return reduction_route(A, W, r), None
    if method == "limit":
        trace = wmp_limit(A, W, "right", schedule=schedule, tol=tol)
        return trace.inverse, trace
    raise ValueError(f"unknown method {method!r}")


def _auto_order(A, W, tol):
    exact = A.is_exact and W.M.is_exact and W.N_inv.is_exact
    order = []
    if exact:
        left, right = sharp_hermitian_flags(A, W, tol)
        if left:
            order.append("hermitian_col")
        elif right:
            order.append("hermitian_row")
    order.append("general_col" if A.cols <= A.rows else "general_row")
    order.append("wsvd")
    return order


def _applicable(A, W, tol):
    left, right = sharp_hermitian_flags(A, W, tol)
    out = []
    if left:
        out.append("hermitian_col")
    if right:
        out.append("hermitian_row")
    return out + ["general_col", "general_row", "wsvd", "reduction", "limit"]


def wmp(A, W=None, method="auto", tol=DEFAULT_TOL, axiom_tol=AXIOM_TOL, backend=None, schedule=None):
    """Weighted Moore-Penrose inverse with Penrose verification.

    ``method`` is one name from :data:`METHODS`, ``"auto"``, ``"all"`` or a
    sequence of names.  ``"auto"`` prefers the exact Hermitian-case formula,
    then the general determinantal formula for the shape, and falls back to
    the weighted SVD when the minor order exceeds the expansion cap.  Every
    result is checked against the four axioms: rational results must satisfy
    them exactly, float results within ``axiom_tol`` (the limit route within
    :data:`LIMIT_AXIOM_TOL`).
    """
    W = _weights(A, W)
    if backend == "float":
        A, W = A.to_float(), W.to_float()
    elif backend == "rational":
        A = A.to_exact()
    elif backend is not None:
        raise ValueError(f"backend must be 'rational' or 'float', got {backend!r}")
    r = A.rank(tol)

    if isinstance(method, str):
        method = _normalize(method)
        if method == "auto":
            requested, fallback = [], _auto_order(A, W, tol)
        elif method == "all":
            requested, fallback = _applicable(A, W, tol), []
        else:
            requested, fallback = [method], []
    else:
        requested, fallback = [_normalize(x) for x in method], []
    for name in requested:
        if name not in METHODS:
            raise ValueError(f"unknown method {name!r}")

    report = WmpReport(inverse=None, method=None, rank=r)
    if fallback:
        for name in fallback:
            try:
                X, _ = _run(name, A, W, r, tol, schedule)
            except (SizeCapExceeded, NotHermitianSharp):
                continue
            report.results[name] = X
            break
    else:
        for name in requested:
            X, trace = _run(name, A, W, r, tol, schedule)
            report.results[name] = X
            if trace is not None:
                report.limit_trace = trace

    for name, X in report.results.items():
        res = penrose_residuals(A, W, X)
        report.residuals[name] = res
        if X.is_exact and not res.exact_zero:
            report.failures[name] = res
        elif not X.is_exact and res.max() > (max(axiom_tol, LIMIT_AXIOM_TOL) if name == "limit" else axiom_tol):
            report.failures[name] = res

    report.method = next(iter(report.results))
    report.inverse = report.results[report.method]
    if len(report.results) > 1:
        report.discrepancy, report.pairwise = max_pairwise_distance(report.results)
    if report.failures:
        worst = ", ".join(f"{k}: {v.max():.3g}" for k, v in report.failures.items())
        raise AxiomViolation(f"Penrose residuals exceed tolerance ({worst})", report)
    return report


__all__ = [
    "AXIOM_TOL",
    "LIMIT_AXIOM_TOL",
    "METHODS",
    "WmpReport",
    "mp_det",
    "projection_P",
    "projection_Q",
    "reduction_route",
    "sharp_hermitian_flags",
    "weighted_adjoint",
    "wmp",
    "wmp_det_general_col",
    "wmp_det_general_row",
    "wmp_det_hermitian_col",
    "wmp_det_hermitian_row",
]
