"""Hot numeric kernels: numba @njit versions with pure-numpy fallbacks.

Set NCSHIFT_NO_NUMBA=1 to force the numpy fallback lane (also used
automatically when numba is not importable).  Both lanes compute the same
integers; tests assert bitwise agreement and benchmarks/bench_kernels.py
compares their speed.
"""

import os

import numpy as np

_want_numba = os.environ.get("NCSHIFT_NO_NUMBA", "") in ("", "0")

try:
    if not _want_numba:
        raise ImportError
    from numba import njit

    HAVE_NUMBA = True
except ImportError:
    HAVE_NUMBA = False


def conv_mod_np(a, b, cayley, p):
    """Group-algebra convolution of coefficient vectors a, b modulo p."""
    out = np.zeros(a.shape[0], dtype=np.int64)
    for u in np.nonzero(a)[0]:
        out[cayley[u]] += int(a[u]) * b
    return out % p


def eliminate_rows_mod_np(rows, pivcols, nrows, v, p):
    """Reduce augmented vector v in place against echelon rows (mod p).

    Rows are pivot-normalized to 1 and sorted by pivot column; a single pass
    in that order fully clears every pivot position of v.
    """
    for r in range(nrows):
        c = v[pivcols[r]]
        if c:
            v -= c * rows[r]
            v %= p


def rref_mod_np(m, p):
    """In-place reduced row echelon form of int64 matrix m over GF(p).

    Returns the array of pivot column indices (length = rank).
    """
    nrows, ncols = m.shape
    piv = []
    r = 0
    for c in range(ncols):
        if r >= nrows:
            break
        hits = np.nonzero(m[r:, c])[0]
        if hits.shape[0] == 0:
            continue
        pr = r + int(hits[0])
        if pr != r:
            m[[r, pr]] = m[[pr, r]]
        m[r] = (m[r] * pow(int(m[r, c]), -1, p)) % p
        col = m[:, c].copy()
        col[r] = 0
        m -= np.outer(col, m[r])
        m %= p
        piv.append(c)
        r += 1
    return np.asarray(piv, dtype=np.int64)


if HAVE_NUMBA:

    @njit(cache=True)
    def _conv_mod_nb(a, b, cayley, p):
        n = a.shape[0]
        out = np.zeros(n, dtype=np.int64)
        for u in range(n):
            au = a[u]
            if au != 0:
                for v in range(n):
                    bv = b[v]
                    if bv != 0:
                        out[cayley[u, v]] += au * bv
        for i in range(n):
            out[i] %= p
        return out

    @njit(cache=True)
    def _eliminate_rows_mod_nb(rows, pivcols, nrows, v, p):
        w = v.shape[0]
        for r in range(nrows):
            c = v[pivcols[r]]
            if c != 0:
                row = rows[r]
                for j in range(w):
                    v[j] = (v[j] - c * row[j]) % p

    @njit(cache=True)
    def _inv_mod_nb(a, p):
        # extended Euclid; a must be nonzero mod p
        lm, hm = 1, 0
        low, high = a % p, p
        while low > 1:
            q = high // low
            lm, hm = hm - lm * q, lm
            low, high = high - low * q, low
        return lm % p

    @njit(cache=True)
    def _rref_mod_nb(m, p):
        nrows, ncols = m.shape
        piv = np.empty(min(nrows, ncols), dtype=np.int64)
        r = 0
        for c in range(ncols):
            if r >= nrows:
                break
            pr = -1
            for i in range(r, nrows):
                if m[i, c] != 0:
                    pr = i
                    break
            if pr < 0:
                continue
            if pr != r:
                for j in range(ncols):
                    t = m[r, j]
                    m[r, j] = m[pr, j]
                    m[pr, j] = t
            inv = _inv_mod_nb(m[r, c], p)
            for j in range(ncols):
                m[r, j] = (m[r, j] * inv) % p
            for i in range(nrows):
                if i != r and m[i, c] != 0:
                    f = m[i, c]
                    for j in range(ncols):
                        m[i, j] = (m[i, j] - f * m[r, j]) % p
            piv[r] = c
            r += 1
        return piv[:r]

    conv_mod = _conv_mod_nb
    eliminate_rows_mod = _eliminate_rows_mod_nb
    rref_mod = _rref_mod_nb
else:
    conv_mod = conv_mod_np
    eliminate_rows_mod = eliminate_rows_mod_np
    rref_mod = rref_mod_np


def backend_name():
    return "numba" if HAVE_NUMBA else "numpy"
