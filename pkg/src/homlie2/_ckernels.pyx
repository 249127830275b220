# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled row reduction over GF(2^k) for k <= 8 using a flat product table."""

from libc.stdlib cimport malloc, free
from libc.string cimport memcpy

from . import _pykernels

_tables = {}


def _table_for(field):
    key = (field.k, field.modulus)
    t = _tables.get(key)
    if t is None:
        q = field.q
        mt = field.mul_table
        flat = bytes(mt[a][b] for a in range(q) for b in range(q))
        inv = bytes([0] + [field.inv(a) for a in range(1, q)])
        t = _tables[key] = (flat, inv)
    return t


def rref_rows(list rows, int ncols, field):
    if field.q > 256 or ncols == 0:
        return _pykernels.rref_rows(rows, ncols, field)
    cdef bytes flat_b, inv_b
    flat_b, inv_b = _table_for(field)
    cdef const unsigned char* mt = flat_b
    cdef const unsigned char* inv = inv_b
    cdef int q = field.q
    cdef int nrows = len(rows)
    cdef int r, c, j, i, prow_idx, rank = 0
    cdef unsigned char a, f
    cdef const unsigned char* mf
    cdef unsigned char* m = <unsigned char*> malloc(max(1, nrows * ncols))
    cdef unsigned char* tmp = <unsigned char*> malloc(ncols)
    if m == NULL or tmp == NULL:
        free(m); free(tmp)
        raise MemoryError()
    try:
        for r in range(nrows):
            row = rows[r]
            for c in range(ncols):
                m[r * ncols + c] = <unsigned char> row[c]
        pivots = []
        for c in range(ncols):
            if rank == nrows:
                break
            prow_idx = -1
            for r in range(rank, nrows):
                if m[r * ncols + c]:
                    prow_idx = r
                    break
            if prow_idx < 0:
                continue
            if prow_idx != rank:
                memcpy(tmp, m + prow_idx * ncols, ncols)
                # keep the remaining rows in their original order
                for r in range(prow_idx, rank, -1):
                    memcpy(m + r * ncols, m + (r - 1) * ncols, ncols)
                memcpy(m + rank * ncols, tmp, ncols)
            a = m[rank * ncols + c]
            if a != 1:
                mf = mt + inv[a] * q
                for j in range(c, ncols):
                    m[rank * ncols + j] = mf[m[rank * ncols + j]]
            for r in range(nrows):
                if r == rank:
                    continue
                f = m[r * ncols + c]
                if f:
                    mf = mt + f * q
                    for j in range(c, ncols):
                        m[r * ncols + j] ^= mf[m[rank * ncols + j]]
            pivots.append(c)
            rank += 1
        out = [[m[r * ncols + j] for j in range(ncols)] for r in range(rank)]
        return out, pivots
    finally:
        free(m)
        free(tmp)
