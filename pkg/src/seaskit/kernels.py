"""Hot integer kernels over the 2^m subset lattice.

Every kernel exists twice: a numba-compiled loop (``*_numba``) and a
vectorised numpy path (``*_numpy``).  The public wrappers pick one based on
:data:`seaskit._accel.USE_NUMBA`; both paths return bit-identical results.
"""

import numpy as np

from seaskit import _accel
from seaskit._accel import njit


def popcounts(codes):
    """Number of set bits of each entry of a nonnegative integer array."""
    codes = np.asarray(codes)
    return np.bitwise_count(codes.astype(np.uint64, copy=False)).astype(np.uint8)


def subset_sizes(m):
    """Popcount of every code in ``range(2**m)``."""
    return popcounts(np.arange(1 << m, dtype=np.uint64))


# --------------------------------------------------------------------------
# Walsh-Hadamard butterfly
# --------------------------------------------------------------------------


@njit
def _wht_kernel(a):
    size = a.shape[0]
    h = 1
    while h < size:
        for i in range(0, size, 2 * h):
            for j in range(i, i + h):
                x = a[j]
                y = a[j + h]
                a[j] = x + y
                a[j + h] = x - y
        h *= 2


def wht_numba(a):
    _wht_kernel(a)
    return a


def wht_numpy(a):
    size = a.shape[0]
    h = 1
    while h < size:
        v = a.reshape(-1, 2, h)
        lo = v[:, 0, :].copy()
        v[:, 0, :] += v[:, 1, :]
        np.subtract(lo, v[:, 1, :], out=v[:, 1, :])
        h *= 2
    return a


def wht_inplace(a):
    """Unnormalised Walsh-Hadamard transform of ``a`` (length a power of two), in place.

    ``out[S] = sum_r a[r] * (-1)**popcount(r & S)``.  With ``a`` the run-code
    histogram of a design this is the signed J-characteristic of every subset.
    Partial sums never exceed ``sum(|a|)`` so int32 is safe for counts < 2**31.
    """
    if a.shape[0] & (a.shape[0] - 1):
        raise ValueError("transform length must be a power of two")
    if _accel.USE_NUMBA:
        return wht_numba(a)
    return wht_numpy(a)


# --------------------------------------------------------------------------
# depth-first subset enumeration with a running product column
# --------------------------------------------------------------------------


@njit
def _enum_kernel(cols, k_max, total):
    m, n = cols.shape
    codes = np.empty(total, np.int64)
    js = np.empty(total, np.int32)
    prod = np.empty((k_max + 1, n), np.int32)
    prod[0, :] = 1
    nxt = np.zeros(k_max + 1, np.int64)
    code_at = np.zeros(k_max + 1, np.int64)
    depth = 0
    out = 0
    while depth >= 0:
        j = nxt[depth]
        if depth == k_max or j >= m:
            depth -= 1
            continue
        nxt[depth] = j + 1
        s = 0
        for i in range(n):
            v = prod[depth, i] * cols[j, i]
            prod[depth + 1, i] = v
            s += v
        c = code_at[depth] | (np.int64(1) << j)
        codes[out] = c
        js[out] = abs(s)
        out += 1
        depth += 1
        code_at[depth] = c
        nxt[depth] = j + 1
    return codes, js


def enumerate_numba(cols, k_max, total):
    return _enum_kernel(np.ascontiguousarray(cols, dtype=np.int32), k_max, total)


def enumerate_numpy(cols, k_max, total):
    cols = np.asarray(cols, dtype=np.int32)
    m = cols.shape[0]
    codes = np.empty(total, np.int64)
    js = np.empty(total, np.int32)
    pos = 0

    def visit(prod, code, start, depth):
        nonlocal pos
        for j in range(start, m):
            p = prod * cols[j]
            c = code | (1 << j)
            codes[pos] = c
            js[pos] = abs(int(p.sum()))
            pos += 1
            if depth + 1 < k_max:
                visit(p, c, j + 1, depth + 1)

    visit(np.ones(cols.shape[1], dtype=np.int32), 0, 0, 0)
    return codes, js


def enumerate_subsets(cols, k_max, total):
    """Visit every subset of size 1..k_max of the columns depth-first.

    ``cols`` is an (m, n) array of +-1 columns.  Each tree edge costs one
    column multiply.  Returns ``(codes, j_abs)`` in visiting order; ``total``
    is the exact number of subsets and sizes the output buffers.
    """
    if _accel.USE_NUMBA:
        return enumerate_numba(cols, k_max, total)
    return enumerate_numpy(cols, k_max, total)


# --------------------------------------------------------------------------
# per-column (size, |J|) histograms
# --------------------------------------------------------------------------


@njit
def _colhist_kernel(codes, dense, js, sizes, m, n, kcap):
    out = np.zeros((m, kcap + 1, n + 1), np.int64)
    total = js.shape[0]
    for t in range(total):
        k = sizes[t]
        if k == 0 or k > kcap:
            continue
        c = np.int64(t) if dense else codes[t]
        jv = js[t]
        col = 0
        while c:
            if c & 1:
                out[col, k, jv] += 1
            c >>= 1
            col += 1
    return out


def column_histograms_numba(codes, js, sizes, m, n, kcap):
    dense = codes is None
    if dense:
        codes = np.empty(0, np.int64)
    return _colhist_kernel(codes, dense, js, sizes, m, n, kcap)


def column_histograms_numpy(codes, js, sizes, m, n, kcap):
    keep = (sizes > 0) & (sizes <= kcap)
    if codes is None:
        codes = np.flatnonzero(keep).astype(np.int64)
    else:
        codes = codes[keep]
    flat = sizes[keep].astype(np.int64) * (n + 1) + js[keep]
    out = np.zeros((m, kcap + 1, n + 1), np.int64)
    for col in range(m):
        member = ((codes >> col) & 1).astype(bool)
        out[col] = np.bincount(flat[member], minlength=(kcap + 1) * (n + 1)).reshape(
            kcap + 1, n + 1
        )
    return out


def column_histograms(codes, js, sizes, m, n, kcap):
    """Count, per column l, size k and value J, the subsets containing l.

    ``codes=None`` means the spectrum is dense (entry t is subset code t).
    """
    if _accel.USE_NUMBA:
        return column_histograms_numba(codes, js, sizes, m, n, kcap)
    return column_histograms_numpy(codes, js, sizes, m, n, kcap)


def size_histogram(js, sizes, n, kcap):
    """Count subsets per (size k, value J) for k <= kcap."""
    keep = sizes <= kcap
    flat = sizes[keep].astype(np.int64) * (n + 1) + js[keep]
    return np.bincount(flat, minlength=(kcap + 1) * (n + 1)).reshape(kcap + 1, n + 1)
