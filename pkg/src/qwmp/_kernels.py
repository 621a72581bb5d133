"""Hot numeric kernels for quaternion arrays.

Quaternion arrays have shape ``(..., 4)``.  Float64 arrays go through numba
when it is importable and ``QWMP_DISABLE_NUMBA`` is unset; everything else
(object arrays of ``Fraction``/``int`` included) uses the numpy path.  The
module-level ``USE_NUMBA`` is read on every call, so the benchmark can flip it.
"""
from __future__ import annotations

import itertools
import math
import os
from fractions import Fraction
from functools import lru_cache

import numpy as np

try:
    import numba
except ImportError:  # pragma: no cover
    numba = None

_disabled = os.environ.get("QWMP_DISABLE_NUMBA", "").strip().lower() not in ("", "0", "false", "no")
USE_NUMBA = numba is not None and not _disabled


def qmul(a, b):
    """Broadcasting Hamilton product of quaternion arrays."""
    a0, a1, a2, a3 = a[..., 0], a[..., 1], a[..., 2], a[..., 3]
    b0, b1, b2, b3 = b[..., 0], b[..., 1], b[..., 2], b[..., 3]
    return np.stack(
        [
            a0 * b0 - a1 * b1 - a2 * b2 - a3 * b3,
            a0 * b1 + a1 * b0 + a2 * b3 - a3 * b2,
            a0 * b2 - a1 * b3 + a2 * b0 + a3 * b1,
            a0 * b3 + a1 * b2 - a2 * b1 + a3 * b0,
        ],
        axis=-1,
    )


def qconj(a):
    out = a.copy()
    out[..., 1:] = -out[..., 1:]
    return out


def qmatmul_numpy(A, B):
    return qmul(A[:, :, None, :], B[None, :, :, :]).sum(axis=1)


def perm_sum_numpy(A, rows, cols, signs):
    """``sum_t signs[t] * prod_f A[rows[t, f], cols[t, f]]`` with ordered products."""
    F = A[rows, cols]
    P = F[:, 0]
    for f in range(1, rows.shape[1]):
        P = qmul(P, F[:, f])
    return (signs[:, None] * P).sum(axis=0)


if numba is not None:

    @numba.njit(cache=True)
    def _qmatmul_nb(A, B):
        m, k = A.shape[0], A.shape[1]
        n = B.shape[1]
        C = np.zeros((m, n, 4))
        for i in range(m):
            for j in range(n):
                c0 = 0.0
                c1 = 0.0
                c2 = 0.0
                c3 = 0.0
                for l in range(k):
                    a0, a1, a2, a3 = A[i, l, 0], A[i, l, 1], A[i, l, 2], A[i, l, 3]
                    b0, b1, b2, b3 = B[l, j, 0], B[l, j, 1], B[l, j, 2], B[l, j, 3]
                    c0 += a0 * b0 - a1 * b1 - a2 * b2 - a3 * b3
                    c1 += a0 * b1 + a1 * b0 + a2 * b3 - a3 * b2
                    c2 += a0 * b2 - a1 * b3 + a2 * b0 + a3 * b1
                    c3 += a0 * b3 + a1 * b2 - a2 * b1 + a3 * b0
                C[i, j, 0] = c0
                C[i, j, 1] = c1
                C[i, j, 2] = c2
                C[i, j, 3] = c3
        return C

    @numba.njit(cache=True)
    def _perm_sum_nb(A, rows, cols, signs):
        T, n = rows.shape
        o0 = 0.0
        o1 = 0.0
        o2 = 0.0
        o3 = 0.0
        for t in range(T):
            r, c = rows[t, 0], cols[t, 0]
            p0, p1, p2, p3 = A[r, c, 0], A[r, c, 1], A[r, c, 2], A[r, c, 3]
            for f in range(1, n):
                r, c = rows[t, f], cols[t, f]
                b0, b1, b2, b3 = A[r, c, 0], A[r, c, 1], A[r, c, 2], A[r, c, 3]
                p0, p1, p2, p3 = (
                    p0 * b0 - p1 * b1 - p2 * b2 - p3 * b3,
                    p0 * b1 + p1 * b0 + p2 * b3 - p3 * b2,
                    p0 * b2 - p1 * b3 + p2 * b0 + p3 * b1,
                    p0 * b3 + p1 * b2 - p2 * b1 + p3 * b0,
                )
            s = signs[t]
            o0 += s * p0
            o1 += s * p1
            o2 += s * p2
            o3 += s * p3
        out = np.empty(4)
        out[0] = o0
        out[1] = o1
        out[2] = o2
        out[3] = o3
        return out


def qmatmul(A, B):
    if USE_NUMBA and A.dtype == np.float64 and B.dtype == np.float64:
        return _qmatmul_nb(np.ascontiguousarray(A), np.ascontiguousarray(B))
    return qmatmul_numpy(A, B)


# ---------------------------------------------------------------------------
# permutation expansions of the row / column determinants


def _cycles(perm):
    seen = [False] * len(perm)
    cycles = []
    for start in range(len(perm)):
        if seen[start]:
            continue
        cyc = []
        x = start
        while not seen[x]:
            seen[x] = True
            cyc.append(x)
            x = perm[x]
        cycles.append(cyc)
    return cycles


def _walk(perm, start):
    """Factor index pairs of the closed walk ``start -> perm[start] -> ... -> start``."""
    pairs = []
    x = start
    while True:
        y = perm[x]
        pairs.append((x, y))
        x = y
        if x == start:
            return pairs


@lru_cache(maxsize=None)
def expansion_terms(n, anchor, kind):
    """Index tables for ``rdet_anchor`` (``kind="row"``) or ``cdet_anchor`` (``kind="col"``).

    Every permutation is split into disjoint cycles (fixed points included).
    The cycle through ``anchor`` is walked from ``anchor``; every other cycle
    is walked from its smallest element.  Row determinants put the anchor
    cycle first and the rest in increasing order of their smallest element;
    column determinants use the mirrored order, anchor cycle last.
    Returns ``(rows, cols, signs)`` with ``rows``/``cols`` of shape ``(n!, n)``.
    """
    if kind not in ("row", "col"):
        raise ValueError(kind)
    count = math.factorial(n)
    rows = np.empty((count, n), dtype=np.int64)
    cols = np.empty((count, n), dtype=np.int64)
    signs = np.empty(count, dtype=np.int64)
    for t, perm in enumerate(itertools.permutations(range(n))):
        cycles = _cycles(perm)
        others = sorted(min(c) for c in cycles if anchor not in c)
        if kind == "row":
            starts = [anchor] + others
        else:
            starts = others[::-1] + [anchor]
        pairs = [p for s in starts for p in _walk(perm, s)]
        rows[t] = [p[0] for p in pairs]
        cols[t] = [p[1] for p in pairs]
        signs[t] = -1 if (n - len(cycles)) % 2 else 1
    for arr in (rows, cols, signs):
        arr.setflags(write=False)
    return rows, cols, signs


def _common_denominator(values):
    d = 1
    for v in values:
        if isinstance(v, Fraction):
            d = math.lcm(d, v.denominator)
    return d


def det_expansion(A, anchor, kind):
    """Evaluate ``rdet``/``cdet`` of a square quaternion array by full expansion.

    Object arrays of rationals are scaled to integers first (the expansion is
    homogeneous of degree ``n`` in the real scale), evaluated exactly, and
    scaled back.
    """
    n = A.shape[0]
    rows, cols, signs = expansion_terms(n, anchor, kind)
    if A.dtype == np.float64:
        if USE_NUMBA:
            return _perm_sum_nb(np.ascontiguousarray(A), rows, cols, signs)
        return perm_sum_numpy(A, rows, cols, signs)
    D = _common_denominator(A.ravel())
    Z = np.empty(A.shape, dtype=object)
    flat = A.ravel()
    zflat = Z.ravel()
    for idx, v in enumerate(flat):
        zflat[idx] = int(v * D)
    s = perm_sum_numpy(Z, rows, cols, signs.astype(object))
    scale = D**n
    return np.array([Fraction(int(x), scale) for x in s], dtype=object)
