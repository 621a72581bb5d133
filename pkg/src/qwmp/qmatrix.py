"""Dense quaternion matrices.

A :class:`QMatrix` wraps a read-only numpy array of shape ``(m, n, 4)``.  The
dtype picks the scalar backend: ``float64`` for binary floats, ``object``
holding ``Fraction`` for exact rationals.  Binary operations between the two
backends fall back to floats.
"""
from __future__ import annotations

from fractions import Fraction

import numpy as np

from . import _kernels
from .errors import DimensionMismatch, NotInImage
from .quaternion import DEFAULT_TOL, Quaternion, format_quaternion, to_real


def _as_quaternion(x):
    if isinstance(x, Quaternion):
        return x
    if isinstance(x, str):
        return Quaternion.parse(x)
    if isinstance(x, (tuple, list, np.ndarray)) and len(x) == 4:
        return Quaternion(*x)
    return Quaternion(x)


def _exact_array(data):
    out = np.empty(data.shape, dtype=object)
    flat_in = data.ravel()
    flat_out = out.ravel()
    for idx, v in enumerate(flat_in):
        flat_out[idx] = to_real(v, True)
    return out


class QMatrix:
    """Immutable ``m x n`` quaternion matrix."""

    __slots__ = ("_data", "_H", "_rank")

    def __init__(self, data, exact=None):
        data = np.asarray(data)
        if data.ndim != 3 or data.shape[2] != 4:
            raise DimensionMismatch(f"expected an (m, n, 4) array, got shape {data.shape}")
        if exact is None:
            exact = data.dtype == object or np.issubdtype(data.dtype, np.integer)
        if exact:
            data = _exact_array(data)
        else:
            data = np.array(data, dtype=np.float64)
        data.setflags(write=False)
        self._data = data
        self._H = None
        self._rank = {}

    @classmethod
    def _wrap(cls, data):
        # trusted constructor: data already on a backend, no copy
        obj = object.__new__(cls)
        data.setflags(write=False)
        obj._data = data
        obj._H = None
        obj._rank = {}
        return obj

    # -- construction -----------------------------------------------------
    @classmethod
    def from_rows(cls, rows, exact=None):
        """Build from nested rows of quaternion-like entries.

        Entries may be :class:`Quaternion`, literal strings (``"1-2i+k"``),
        4-sequences of components, or real numbers.
        """
        qs = [[_as_quaternion(x) for x in row] for row in rows]
        if not qs or any(len(r) != len(qs[0]) for r in qs):
            raise DimensionMismatch("rows must be non-empty and of equal length")
        if exact is None:
            exact = all(q.is_exact for row in qs for q in row)
        data = np.empty((len(qs), len(qs[0]), 4), dtype=object if exact else np.float64)
        for i, row in enumerate(qs):
            for j, q in enumerate(row):
                data[i, j] = [to_real(c, exact) for c in q.components]
        return cls._wrap(data)

    @classmethod
    def zeros(cls, m, n, exact=True):
        if exact:
            data = np.empty((m, n, 4), dtype=object)
            data.fill(Fraction(0))
            return cls._wrap(data)
        return cls._wrap(np.zeros((m, n, 4)))

    @classmethod
    def identity(cls, n, exact=True):
        return cls.diag([1] * n, exact=exact)

    @classmethod
    def diag(cls, values, exact=True):
        n = len(values)
        out = cls.zeros(n, n, exact=exact)._data.copy()
        for i, v in enumerate(values):
            q = _as_quaternion(v)
            out[i, i] = [to_real(c, exact) for c in q.components]
        return cls._wrap(out)

    @classmethod
    def column(cls, entries, exact=None):
        return cls.from_rows([[x] for x in entries], exact=exact)

    @classmethod
    def row_vector(cls, entries, exact=None):
        return cls.from_rows([list(entries)], exact=exact)

    # -- basic properties ---------------------------------------------------
    @property
    def data(self):
        return self._data

    @property
    def shape(self):
        return self._data.shape[:2]

    @property
    def rows(self):
        return self._data.shape[0]

    @property
    def cols(self):
        return self._data.shape[1]

    @property
    def is_exact(self):
        return self._data.dtype == object

    @property
    def is_square(self):
        return self.rows == self.cols

    def to_float(self):
        if not self.is_exact:
            return self
        return QMatrix._wrap(self._data.astype(np.float64))

    def to_exact(self):
        if self.is_exact:
            return self
        return QMatrix._wrap(_exact_array(self._data))

    def like(self, other):
        """Return ``self`` on the backend of ``other`` (exact only if both are)."""
        return self if self.is_exact == other.is_exact or not self.is_exact else self.to_float()

    # -- entry access -------------------------------------------------------
    def __getitem__(self, key):
        if isinstance(key, tuple) and len(key) == 2 and all(isinstance(k, (int, np.integer)) for k in key):
            return Quaternion._raw(self._data[key[0], key[1]])
        if not isinstance(key, tuple):
            key = (key, slice(None))
        i, j = key
        i = [i] if isinstance(i, (int, np.integer)) else i
        j = [j] if isinstance(j, (int, np.integer)) else j
        if isinstance(i, slice):
            sub = self._data[i]
        else:
            sub = self._data[np.asarray(i, dtype=np.int64)]
        if isinstance(j, slice):
            sub = sub[:, j]
        else:
            sub = sub[:, np.asarray(j, dtype=np.int64)]
        return QMatrix._wrap(sub.copy())

    def submatrix(self, rows, cols):
        """Rows ``rows`` and columns ``cols`` (0-based index sequences)."""
        return self[list(rows), list(cols)]

    def col(self, j):
        return self[:, j]

    def row(self, i):
        return self[i, :]

    def with_col(self, j, column):
        """Copy with column ``j`` replaced by the ``m x 1`` matrix ``column``."""
        column = _vector_data(column, self.rows, "column")
        base, column = _common_backend(self, column)
        out = base._data.copy()
        out[:, j] = column.reshape(self.rows, 4)
        return QMatrix._wrap(out)

    def with_row(self, i, row):
        """Copy with row ``i`` replaced by the ``1 x n`` matrix ``row``."""
        row = _vector_data(row, self.cols, "row")
        base, row = _common_backend(self, row)
        out = base._data.copy()
        out[i, :] = row.reshape(self.cols, 4)
        return QMatrix._wrap(out)

    def tolist(self):
        return [[self[i, j] for j in range(self.cols)] for i in range(self.rows)]

    # -- arithmetic ---------------------------------------------------------
    def __matmul__(self, other):
        return matmul(self, other)

    def __add__(self, other):
        a, b = _binary(self, other)
        return QMatrix._wrap(a + b)

    def __sub__(self, other):
        a, b = _binary(self, other)
        return QMatrix._wrap(a - b)

    def __neg__(self):
        return QMatrix._wrap(-self._data)

    def __mul__(self, other):
        """Right multiplication by a quaternion or real scalar."""
        q = _as_quaternion(other)
        return self._scalar(q, right=True)

    def __rmul__(self, other):
        q = _as_quaternion(other)
        return self._scalar(q, right=False)

    def __truediv__(self, other):
        q = _as_quaternion(other)
        return self._scalar(q.inv(), right=True)

    def _scalar(self, q, right):
        data = self._data
        if not q.is_exact and self.is_exact:
            data = data.astype(np.float64)
        exact = data.dtype == object
        qa = np.array([to_real(c, exact) for c in q.components], dtype=data.dtype)
        if right:
            return QMatrix._wrap(_kernels.qmul(data, qa))
        return QMatrix._wrap(_kernels.qmul(qa, data))

    @property
    def H(self):
        """Conjugate transpose (cached)."""
        if self._H is None:
            self._H = conj_transpose(self)
        return self._H

    def rank(self, tol=DEFAULT_TOL):
        if tol not in self._rank:
            self._rank[tol] = rank(self, tol)
        return self._rank[tol]

    def is_hermitian(self, tol=DEFAULT_TOL):
        return is_hermitian(self, tol)

    def norms(self):
        """Entrywise quaternion norms as a float array."""
        d = self._data
        if self.is_exact:
            n2 = (d * d).sum(axis=-1)
            return np.sqrt(n2.astype(np.float64))
        return np.sqrt((d * d).sum(axis=-1))

    def max_norm(self):
        if self.rows == 0 or self.cols == 0:
            return 0.0
        return float(self.norms().max())

    def is_zero(self):
        if self.is_exact:
            return not any(x != 0 for x in self._data.ravel())
        return not np.any(self._data)

    def allclose(self, other, tol=DEFAULT_TOL):
        """``max |self - other| <= tol * (1 + max(|self|, |other|))`` entrywise-norm."""
        if self.shape != other.shape:
            return False
        diff = (self.to_float() - other.to_float()).max_norm()
        return diff <= tol * (1 + max(self.max_norm(), other.max_norm()))

    def distance(self, other):
        """Max entrywise quaternion-norm distance."""
        if self.shape != other.shape:
            raise DimensionMismatch(f"{self.shape} vs {other.shape}")
        return (self.to_float() - other.to_float()).max_norm()

    def __eq__(self, other):
        if not isinstance(other, QMatrix):
            return NotImplemented
        if self.shape != other.shape:
            return False
        if self.is_exact and other.is_exact:
            return bool(np.all(self._data == other._data))
        return bool(np.array_equal(self.to_float()._data, other.to_float()._data))

    __hash__ = None

    def __repr__(self):
        kind = "exact" if self.is_exact else "float"
        return f"QMatrix({self.rows}x{self.cols}, {kind})"

    def __str__(self):
        cells = [[format_quaternion(self._data[i, j]) for j in range(self.cols)] for i in range(self.rows)]
        width = max((len(c) for row in cells for c in row), default=1)
        return "\n".join("[ " + "  ".join(c.rjust(width) for c in row) + " ]" for row in cells)


def _vector_data(v, length, what):
    if isinstance(v, QMatrix):
        if v.rows * v.cols != length:
            raise DimensionMismatch(f"{what} of length {length} expected, got {v.shape}")
        return v
    return QMatrix.column(list(v)) if what == "column" else QMatrix.row_vector(list(v))


def _common_backend(a, b):
    if a.is_exact == b.is_exact:
        return a, b._data
    return a.to_float(), b.to_float()._data


def _binary(a, b):
    if not isinstance(b, QMatrix):
        raise TypeError("QMatrix arithmetic needs another QMatrix")
    if a.shape != b.shape:
        raise DimensionMismatch(f"{a.shape} vs {b.shape}")
    if a.is_exact != b.is_exact:
        a, b = a.to_float(), b.to_float()
    return a._data, b._data


def matmul(A, B):
    """Quaternion matrix product; ``C_ij = sum_k A_ik B_kj`` with factor order kept."""
    if A.cols != B.rows:
        raise DimensionMismatch(f"cannot multiply {A.shape} by {B.shape}")
    if A.is_exact != B.is_exact:
        A, B = A.to_float(), B.to_float()
    if A.cols == 0:
        return QMatrix.zeros(A.rows, B.cols, exact=A.is_exact)
    return QMatrix._wrap(_kernels.qmatmul(A._data, B._data))


def conj_transpose(A):
    return QMatrix._wrap(_kernels.qconj(A._data.transpose(1, 0, 2)).copy())


def is_hermitian(A, tol=DEFAULT_TOL):
    """Exact equality with ``A*`` on rationals; relative max-norm test on floats."""
    if not A.is_square:
        raise DimensionMismatch(f"Hermitian test needs a square matrix, got {A.shape}")
    if A.is_exact:
        return bool(np.all(A._data == A.H._data))
    return (A - A.H).max_norm() <= tol * (1 + A.max_norm())


def rank(A, tol=DEFAULT_TOL):
    """Rank over the quaternions by Gaussian elimination with left row operations.

    Rational matrices pivot on the first nonzero entry and are exact.  Float
    matrices pivot on the largest norm and treat norms below
    ``tol * max|A| * max(m, n)`` as zero.
    """
    m, n = A.shape
    if m == 0 or n == 0:
        return 0
    W = A._data.copy()
    exact = A.is_exact
    if exact:
        thresh = None
    else:
        scale = A.max_norm()
        if scale == 0:
            return 0
        thresh = tol * scale * max(m, n)
    r = 0
    for c in range(n):
        if r == m:
            break
        col = W[r:, c]
        if exact:
            nz = [k for k in range(m - r) if any(x != 0 for x in col[k])]
            if not nz:
                continue
            p = r + nz[0]
        else:
            norms = np.sqrt((col * col).sum(axis=-1))
            k = int(np.argmax(norms))
            if norms[k] <= thresh:
                continue
            p = r + k
        if p != r:
            W[[r, p]] = W[[p, r]]
        piv_inv = Quaternion._raw(W[r, c]).inv().components
        piv_inv = np.array(piv_inv, dtype=W.dtype)
        below = W[r + 1 :, c]
        factors = _kernels.qmul(below, piv_inv)
        W[r + 1 :] = W[r + 1 :] - _kernels.qmul(factors[:, None, :], W[r][None, :, :])
        r += 1
    return r


# ---------------------------------------------------------------------------
# complex adjoint embedding: A = A1 + A2 j  ->  [[A1, A2], [-conj(A2), conj(A1)]]


def complex_embed(A):
    d = A.to_float()._data
    A1 = d[..., 0] + 1j * d[..., 1]
    A2 = d[..., 2] + 1j * d[..., 3]
    return np.block([[A1, A2], [-A2.conj(), A1.conj()]])


def complex_unembed(C, tol=DEFAULT_TOL):
    """Inverse of :func:`complex_embed`; raises :class:`NotInImage` off the image."""
    C = np.asarray(C)
    if C.ndim != 2 or C.shape[0] % 2 or C.shape[1] % 2:
        raise NotInImage(f"embedding has even dimensions, got {C.shape}")
    m, n = C.shape[0] // 2, C.shape[1] // 2
    A1, A2 = C[:m, :n], C[:m, n:]
    B1, B2 = C[m:, :n], C[m:, n:]
    scale = 1 + (np.abs(C).max() if C.size else 0.0)
    err = max(
        np.abs(B1 + A2.conj()).max(initial=0.0),
        np.abs(B2 - A1.conj()).max(initial=0.0),
    )
    if err > tol * scale:
        raise NotInImage(f"block symmetry violated by {err:.3g}")
    data = np.stack([A1.real, A1.imag, A2.real, A2.imag], axis=-1)
    return QMatrix._wrap(np.ascontiguousarray(data, dtype=np.float64))


def inverse(A, tol=DEFAULT_TOL):
    """Two-sided inverse by Gauss-Jordan elimination with left row operations."""
    from .errors import SingularMatrix

    if not A.is_square:
        raise DimensionMismatch(f"square matrix required, got {A.shape}")
    n = A.rows
    exact = A.is_exact
    W = np.concatenate([A.data, QMatrix.identity(n, exact=exact).data], axis=1)
    thresh = None if exact else tol * max(A.max_norm(), 1e-300) * n
    for c in range(n):
        col = W[c:, c]
        if exact:
            nz = [k for k in range(n - c) if any(x != 0 for x in col[k])]
            if not nz:
                raise SingularMatrix("matrix is singular")
            p = c + nz[0]
        else:
            norms = np.sqrt((col * col).sum(axis=-1))
            k = int(np.argmax(norms))
            if norms[k] <= thresh:
                raise SingularMatrix("matrix is numerically singular")
            p = c + k
        if p != c:
            W[[c, p]] = W[[p, c]]
        piv_inv = np.array(Quaternion._raw(W[c, c]).inv().components, dtype=W.dtype)
        W[c] = _kernels.qmul(piv_inv, W[c])
        factors = W[:, c].copy()
        factors[c] = 0
        W = W - _kernels.qmul(factors[:, None, :], W[c][None, :, :])
    return QMatrix._wrap(np.ascontiguousarray(W[:, n:]))
