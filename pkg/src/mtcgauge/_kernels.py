"""Hot numeric kernels, each in a numba and a pure-numpy flavour.

The active backend is chosen once at import time from the environment variable
``MTCGAUGE_BACKEND`` (``numba`` or ``numpy``). The default is ``numba`` when it can be
imported. Both flavours are always importable under explicit names
(``lu_pivots_numpy``, ``lu_pivots_numba``, ...) so tests and benchmarks can compare them.
"""

import os
import warnings

import numpy as np

try:
    import numba
except ImportError:  # pragma: no cover - numba is a declared dependency
    numba = None

_requested = os.environ.get("MTCGAUGE_BACKEND", "numba").strip().lower()
if _requested not in ("numba", "numpy"):
    warnings.warn(f"unknown MTCGAUGE_BACKEND={_requested!r}, using numpy")
    _requested = "numpy"
if _requested == "numba" and numba is None:  # pragma: no cover
    _requested = "numpy"

BACKEND = _requested
HAVE_NUMBA = numba is not None


def _jit(func):
    if numba is None:  # pragma: no cover
        return func
    return numba.njit(cache=True)(func)


# ---------------------------------------------------------------------------
# Kronecker product

def kron_numpy(a, b):
    return np.kron(a, b)


def _kron_loops(a, b):
    ra, ca = a.shape
    rb, cb = b.shape
    out = np.empty((ra * rb, ca * cb), dtype=np.complex128)
    for i in range(ra):
        for j in range(ca):
            aij = a[i, j]
            for k in range(rb):
                for l in range(cb):
                    out[i * rb + k, j * cb + l] = aij * b[k, l]
    return out


_kron_numba_raw = _jit(_kron_loops)


def kron_numba(a, b):
    return _kron_numba_raw(np.ascontiguousarray(a, dtype=np.complex128),
                           np.ascontiguousarray(b, dtype=np.complex128))


# ---------------------------------------------------------------------------
# LU with partial pivoting: returns (determinant, min |pivot|, max |pivot|)

def lu_pivots_numpy(m):
    a = np.array(m, dtype=np.complex128, copy=True)
    n = a.shape[0]
    if n == 0:
        return 1.0 + 0.0j, 0.0, 0.0
    det = 1.0 + 0.0j
    pmin = np.inf
    pmax = 0.0
    for k in range(n):
        p = k + int(np.argmax(np.abs(a[k:, k])))
        if p != k:
            a[[k, p]] = a[[p, k]]
            det = -det
        piv = a[k, k]
        apiv = abs(piv)
        pmin = min(pmin, apiv)
        pmax = max(pmax, apiv)
        det *= piv
        if apiv == 0.0:
            continue
        if k + 1 < n:
            f = a[k + 1:, k] / piv
            a[k + 1:, k + 1:] -= np.outer(f, a[k, k + 1:])
    return det, float(pmin), float(pmax)


def _lu_loops(m):
    a = m.copy()
    n = a.shape[0]
    if n == 0:
        return 1.0 + 0.0j, 0.0, 0.0
    det = 1.0 + 0.0j
    pmin = np.inf
    pmax = 0.0
    for k in range(n):
        p = k
        best = abs(a[k, k])
        for i in range(k + 1, n):
            v = abs(a[i, k])
            if v > best:
                best = v
                p = i
        if p != k:
            for j in range(n):
                tmp = a[k, j]
                a[k, j] = a[p, j]
                a[p, j] = tmp
            det = -det
        piv = a[k, k]
        apiv = abs(piv)
        if apiv < pmin:
            pmin = apiv
        if apiv > pmax:
            pmax = apiv
        det *= piv
        if apiv == 0.0:
            continue
        for i in range(k + 1, n):
            f = a[i, k] / piv
            if f != 0:
                for j in range(k + 1, n):
                    a[i, j] -= f * a[k, j]
    return det, pmin, pmax


_lu_numba_raw = _jit(_lu_loops)


def lu_pivots_numba(m):
    det, pmin, pmax = _lu_numba_raw(np.ascontiguousarray(m, dtype=np.complex128))
    return complex(det), float(pmin), float(pmax)


# ---------------------------------------------------------------------------
# Admissible 6-tuples: N[a1,b1,c1] with N[a, b, c] = N_{abc} (all three lower)

def admissible_numpy(n3, dual):
    """All tuples with N_{~1 ~5 2} N_{~1 4 3} N_{2 6 ~3} N_{4 5 6} != 0, lexicographic."""
    nz = n3 != 0
    db = np.asarray(dual)
    # axes: x1 x2 x3 x4 x5 x6
    t1 = nz[db][:, db]                      # t1[x1, x5, x2] = N_{~x1 ~x5 x2}
    t1 = np.transpose(t1, (0, 2, 1))        # -> [x1, x2, x5]
    t2 = nz[db]                             # [x1, x4, x3]
    t2 = np.transpose(t2, (0, 2, 1))        # -> [x1, x3, x4]
    t3 = nz[:, :, db]                       # [x2, x6, x3] = N_{x2 x6 ~x3}
    t3 = np.transpose(t3, (0, 2, 1))        # -> [x2, x3, x6]
    t4 = nz                                 # [x4, x5, x6]
    mask = (t1[:, :, None, None, :, None]
            & t2[:, None, :, :, None, None]
            & t3[None, :, :, None, None, :]
            & t4[None, None, None, :, :, :])
    return np.argwhere(mask).astype(np.int64)


def _admissible_loops(n3, dual):
    r = n3.shape[0]
    cap = 64
    out = np.empty((cap, 6), dtype=np.int64)
    count = 0
    for x1 in range(r):
        b1 = dual[x1]
        for x2 in range(r):
            for x3 in range(r):
                for x4 in range(r):
                    if n3[b1, x4, x3] == 0:
                        continue
                    for x5 in range(r):
                        if n3[b1, dual[x5], x2] == 0:
                            continue
                        for x6 in range(r):
                            if n3[x2, x6, dual[x3]] == 0 or n3[x4, x5, x6] == 0:
                                continue
                            if count == cap:
                                cap *= 2
                                grown = np.empty((cap, 6), dtype=np.int64)
                                grown[:count] = out[:count]
                                out = grown
                            out[count, 0] = x1
                            out[count, 1] = x2
                            out[count, 2] = x3
                            out[count, 3] = x4
                            out[count, 4] = x5
                            out[count, 5] = x6
                            count += 1
    return out[:count].copy()


_admissible_numba_raw = _jit(_admissible_loops)


def admissible_numba(n3, dual):
    return _admissible_numba_raw(np.ascontiguousarray(n3, dtype=np.int64),
                                 np.ascontiguousarray(dual, dtype=np.int64))


# ---------------------------------------------------------------------------
# Sub-block of (S^{(x)6} P - I) on rows ``rows`` and columns ``cols``.
# ``images[j]`` is the image tuple f(cols[j]) of the basis permutation inside P.

def tensor6_block_numpy(s, rows, images):
    block = np.ones((rows.shape[0], images.shape[0]), dtype=np.complex128)
    for k in range(6):
        block *= s[np.ix_(rows[:, k], images[:, k])]
    return block


def _tensor6_block_loops(s, rows, images):
    nr = rows.shape[0]
    nc = images.shape[0]
    block = np.empty((nr, nc), dtype=np.complex128)
    for i in range(nr):
        for j in range(nc):
            acc = 1.0 + 0.0j
            for k in range(6):
                acc *= s[rows[i, k], images[j, k]]
            block[i, j] = acc
    return block


_tensor6_numba_raw = _jit(_tensor6_block_loops)


def tensor6_block_numba(s, rows, images):
    return _tensor6_numba_raw(np.ascontiguousarray(s, dtype=np.complex128),
                              np.ascontiguousarray(rows, dtype=np.int64),
                              np.ascontiguousarray(images, dtype=np.int64))


# np.kron beats the compiled loop nest (see benchmarks/), so it serves both backends
kron = kron_numpy
if BACKEND == "numba":
    lu_pivots = lu_pivots_numba
    admissible = admissible_numba
    tensor6_block = tensor6_block_numba
else:
    lu_pivots = lu_pivots_numpy
    admissible = admissible_numpy
    tensor6_block = tensor6_block_numpy
