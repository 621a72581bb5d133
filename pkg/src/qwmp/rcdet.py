"""Row and column determinants of quaternion matrices and the sums built from them.

Indices in this module are 1-based, matching the usual mathematical
statement of the determinant expansions.  Every function accepts both scalar
backends; rational inputs are evaluated exactly.

The full permutation expansion costs ``n!`` terms, so the order of any matrix
expanded here is capped (``QWMP_SIZE_CAP``, default 8).
"""
from __future__ import annotations

import itertools
import math
import os
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import _kernels
from .errors import (
    AxiomViolation,
    DimensionMismatch,
    IndexOutOfRange,
    NotHermitian,
    RankOutOfRange,
    SingularMatrix,
    SizeCapExceeded,
)
from .qmatrix import QMatrix, is_hermitian
from .quaternion import DEFAULT_TOL, Quaternion

DEFAULT_SIZE_CAP = 8


def size_cap():
    """Current cap on the order of a fully expanded determinant."""
    return int(os.environ.get("QWMP_SIZE_CAP", DEFAULT_SIZE_CAP))


def _debug():
    return os.environ.get("QWMP_DEBUG", "").strip() not in ("", "0")


def _check_order(n):
    cap = size_cap()
    if n > cap:
        raise SizeCapExceeded(f"order {n} exceeds the expansion cap {cap} (set QWMP_SIZE_CAP)")


def _square(A):
    if not A.is_square:
        raise DimensionMismatch(f"square matrix required, got {A.shape}")
    return A.rows


def _index(i, n, what="index"):
    if not isinstance(i, (int, np.integer)) or not 1 <= i <= n:
        raise IndexOutOfRange(f"{what} {i} outside 1..{n}")
    return int(i) - 1


def _expand(data, anchor, kind):
    n = data.shape[0]
    if n == 0:
        return np.array([1, 0, 0, 0], dtype=data.dtype)
    _check_order(n)
    return _kernels.det_expansion(data, anchor, kind)


def rdet(i, A):
    """Row determinant anchored at row ``i``."""
    n = _square(A)
    return Quaternion._raw(_expand(A.data, _index(i, n), "row"))


def cdet(j, A):
    """Column determinant anchored at column ``j``."""
    n = _square(A)
    return Quaternion._raw(_expand(A.data, _index(j, n), "col"))


def _real_part(q, tol):
    """Real part of a value expected to be real; exact zero check on rationals."""
    a0, a1, a2, a3 = q
    if isinstance(a0, Fraction):
        if a1 or a2 or a3:
            raise NotHermitian("determinant has a nonzero imaginary part")
        return a0
    imag = math.sqrt(float(a1 * a1 + a2 * a2 + a3 * a3))
    if imag > max(tol, 1e-9) * (1 + abs(float(a0))):
        raise NotHermitian(f"determinant has imaginary part of size {imag:.3g}")
    return float(a0)


def det_hermitian(A, tol=DEFAULT_TOL, verify=None):
    """Determinant of a Hermitian matrix, returned as a real scalar.

    With ``verify=True`` (or ``QWMP_DEBUG`` set) all ``2n`` row and column
    expansions are evaluated and required to agree.
    """
    n = _square(A)
    if not is_hermitian(A, tol):
        raise NotHermitian("det_hermitian needs a Hermitian matrix")
    if n == 0:
        return Fraction(1) if A.is_exact else 1.0
    value = _real_part(_expand(A.data, 0, "row"), tol)
    if verify or (verify is None and _debug()):
        for anchor in range(n):
            for kind in ("row", "col"):
                other = _real_part(_expand(A.data, anchor, kind), tol)
                if A.is_exact:
                    ok = other == value
                else:
                    ok = abs(other - value) <= tol * (1 + abs(value)) * 10 ** n
                if not ok:
                    raise AxiomViolation(f"{kind} expansion at {anchor + 1} gives {other}, expected {value}")
    return value


def _minor_det(data, idx):
    sub = data[np.ix_(idx, idx)]
    return _expand(sub, 0, "row")[0]


# ---------------------------------------------------------------------------
# cofactors and the Hermitian inverse


def _scaled(data):
    """Integer-scaled copy of a rational array and its scale, or ``(data, 1)`` for floats."""
    if data.dtype == np.float64:
        return data, 1
    D = _kernels._common_denominator(data.ravel())
    out = np.empty(data.shape, dtype=object)
    for idx, v in enumerate(data.ravel()):
        out.ravel()[idx] = int(v * D)
    return out, D


def _unscale(values, D, power, exact):
    if not exact:
        return values
    scale = D**power
    out = np.empty(values.shape, dtype=object)
    for idx, v in enumerate(values.ravel()):
        out.ravel()[idx] = Fraction(int(v), scale)
    return out


def _cofactor_array(data, kind):
    """``C[anchor, k]`` so that the ``anchor`` expansion equals the sum over ``k``."""
    n = data.shape[0]
    exact = data.dtype == object
    Z, D = _scaled(data)
    out = np.empty((n, n, 4), dtype=Z.dtype)
    out[...] = 0
    for anchor in range(n):
        rows, cols, signs = _kernels.expansion_terms(n, anchor, kind)
        F = Z[rows, cols]
        if n == 1:
            P = np.zeros((F.shape[0], 4), dtype=Z.dtype)
            P[:, 0] = 1
        elif kind == "row":
            P = F[:, 1]
            for f in range(2, n):
                P = _kernels.qmul(P, F[:, f])
        else:
            P = F[:, 0]
            for f in range(1, n - 1):
                P = _kernels.qmul(P, F[:, f])
        s = signs.astype(Z.dtype)[:, None]
        # row cofactors pair with the first factor's column, column cofactors
        # with the last factor's row
        key = cols[:, 0] if kind == "row" else rows[:, -1]
        for k in range(n):
            mask = key == k
            if mask.any():
                out[anchor, k] = (s[mask] * P[mask]).sum(axis=0)
    return _unscale(out, D, n - 1, exact)


def cofactors(A):
    """Right cofactors ``R`` and left cofactors ``L`` of a square matrix.

    ``rdet_i A = sum_j a_ij R_ij`` and ``cdet_j A = sum_i L_ij a_ij``.
    """
    n = _square(A)
    _check_order(n)
    if n == 0:
        return A, A
    R = _cofactor_array(A.data, "row")
    Lt = _cofactor_array(A.data, "col")
    # Lt[j, i] holds L_ij
    L = np.ascontiguousarray(Lt.transpose(1, 0, 2))
    return QMatrix._wrap(R), QMatrix._wrap(L)


def hermitian_inverse(A, tol=DEFAULT_TOL):
    """Inverse of a nonsingular Hermitian matrix from its cofactors.

    Entry ``(i, j)`` is ``R_ji / det A``; the left-cofactor form
    ``L_ji / det A`` is computed as well and must agree.
    """
    n = _square(A)
    if not is_hermitian(A, tol):
        raise NotHermitian("hermitian_inverse needs a Hermitian matrix")
    d = det_hermitian(A, tol)
    if d == 0 or (not A.is_exact and abs(d) <= tol * max(1.0, A.max_norm()) ** n):
        raise SingularMatrix("Hermitian matrix has zero determinant")
    R, L = cofactors(A)
    right = R.data.transpose(1, 0, 2) / d
    left = L.data.transpose(1, 0, 2) / d
    Xr = QMatrix._wrap(np.ascontiguousarray(right))
    Xl = QMatrix._wrap(np.ascontiguousarray(left))
    if A.is_exact:
        agree = Xr == Xl
    else:
        agree = Xr.allclose(Xl, max(tol, 1e-9))
    if not agree:
        raise AxiomViolation("row- and column-cofactor inverses disagree")
    return Xr


# ---------------------------------------------------------------------------
# principal-minor sums


def index_sets(n, r, containing=None):
    """Strictly increasing 0-based index tuples of length ``r`` (optionally containing one index)."""
    for beta in itertools.combinations(range(n), r):
        if containing is None or containing in beta:
            yield beta


def _check_rank(r, n):
    if not isinstance(r, (int, np.integer)) or not 1 <= r <= n:
        raise RankOutOfRange(f"minor order {r} outside 1..{n}")
    _check_order(int(r))


def minor_sum(A, r):
    """Sum of all ``r x r`` principal minors (as a real scalar on Hermitian input)."""
    n = _square(A)
    if r == 0:
        return Fraction(1) if A.is_exact else 1.0
    _check_rank(r, n)
    total = Fraction(0) if A.is_exact else 0.0
    for beta in index_sets(n, r):
        total += _minor_det(A.data, list(beta))
    return total


@dataclass(frozen=True)
class CharPolyCoeffs:
    """Principal-minor sums ``d_1 .. d_n`` of a Hermitian matrix.

    They satisfy ``det(tI + A) = t^n + d_1 t^(n-1) + ... + d_n``; the
    coefficients of ``det(tI - A)`` are ``(-1)^k d_k``.
    """

    d: tuple

    def __getitem__(self, k):
        return 1 if k == 0 else self.d[k - 1]

    @property
    def order(self):
        return len(self.d)

    def coefficients(self, convention="plus"):
        """``(1, c_1, ..., c_n)`` for ``det(tI + A)`` (``"plus"``) or ``det(tI - A)`` (``"minus"``)."""
        if convention not in ("plus", "minus"):
            raise ValueError(convention)
        sign = -1 if convention == "minus" else 1
        return (1,) + tuple(sign**k * x for k, x in enumerate(self.d, start=1))

    def evaluate(self, t, convention="plus"):
        n = self.order
        return sum(c * t ** (n - k) for k, c in enumerate(self.coefficients(convention)))


def principal_minor_sums(A, tol=DEFAULT_TOL):
    n = _square(A)
    if not is_hermitian(A, tol):
        raise NotHermitian("principal_minor_sums needs a Hermitian matrix")
    _check_order(n)
    d = []
    for k in range(1, n + 1):
        s = minor_sum(A, k)
        d.append(s if A.is_exact else float(s))
    return CharPolyCoeffs(tuple(d))


# ---------------------------------------------------------------------------
# bordered minor sums: principal minors with one column (row) swapped out


def _vector(b, n, backend_exact):
    if isinstance(b, QMatrix):
        if b.rows * b.cols != n:
            raise DimensionMismatch(f"vector of length {n} expected, got {b.shape}")
        vec = b
    else:
        vec = QMatrix.column(list(b))
        if vec.rows != n:
            raise DimensionMismatch(f"vector of length {n} expected, got {vec.rows}")
    if vec.is_exact and not backend_exact:
        vec = vec.to_float()
    return vec.data.reshape(n, 4)


def _bordered(G, b, pos, r, kind):
    n = _square(G)
    p = _index(pos, n)
    _check_rank(r, n)
    exact = G.is_exact and (not isinstance(b, QMatrix) or b.is_exact)
    data = G.data if exact or not G.is_exact else G.to_float().data
    vec = _vector(b, n, exact)
    if exact and vec.dtype != object:
        data = G.to_float().data
        exact = False
    total = np.zeros(4, dtype=object if exact else np.float64)
    if exact:
        total[:] = Fraction(0)
    for beta in index_sets(n, int(r), p):
        idx = list(beta)
        sub = data[np.ix_(idx, idx)].copy()
        at = idx.index(p)
        if kind == "col":
            sub[:, at] = vec[idx]
        else:
            sub[at, :] = vec[idx]
        total = total + _expand(sub, at, kind)
    return Quaternion._raw(total)


def bordered_minor_sum_col(G, b, i, r):
    """Sum of ``cdet`` over order-``r`` principal minors containing ``i``, column ``i`` replaced by ``b``."""
    return _bordered(G, b, i, r, "col")


def bordered_minor_sum_row(G, b, j, r):
    """Row analogue of :func:`bordered_minor_sum_col`, using ``rdet``."""
    return _bordered(G, b, j, r, "row")


def charpoly_border_coeffs(G, b, i):
    """``[c_1, ..., c_n]`` with ``cdet_i((tI + G)_{.i}(b)) = sum_k c_k t^(n-k)``."""
    n = _square(G)
    return [bordered_minor_sum_col(G, b, i, k) for k in range(1, n + 1)]
