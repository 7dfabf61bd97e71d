# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled orbit kernels over packed GF(q)^n vectors and projective points.

Mirrors ``_pykernels`` exactly: same point numbering, same BFS visiting
order, same Schreier labels.
"""

import numpy as np
cimport numpy as cnp
from libc.stdint cimport int64_t, int16_t

ctypedef int64_t i64

DEF MAXDIM = 8

cnp.import_array()


cdef struct Spec:
    i64 p
    i64 q
    int ext
    int proj
    int dim
    const i64* inv
    const i64* offsets


cdef inline i64 _fmod(i64 a, i64 p) nogil:
    a = a % p
    if a < 0:
        a += p
    return a


cdef inline i64 _fmul(Spec* s, i64 u, i64 v) nogil:
    cdef i64 p = s.p
    cdef i64 a0, a1, b0, b1
    if not s.ext:
        return (u * v) % p
    a0 = u % p
    a1 = u // p
    b0 = v % p
    b1 = v // p
    return _fmod(a0 * b0 - 2 * a1 * b1, p) + p * ((a0 * b1 + a1 * b0) % p)


cdef inline void _decode(Spec* s, i64 code, i64* v) nogil:
    cdef int i, j
    cdef i64 rem
    if not s.proj:
        for i in range(s.dim):
            v[i] = code % s.q
            code = code // s.q
        return
    j = 0
    while j + 1 < s.dim and s.offsets[j + 1] <= code:
        j += 1
    rem = code - s.offsets[j]
    for i in range(j):
        v[i] = 0
    v[j] = 1
    for i in range(j + 1, s.dim):
        v[i] = rem % s.q
        rem = rem // s.q


cdef inline i64 _encode(Spec* s, i64* v) nogil:
    cdef int i, j
    cdef i64 code = 0, mult = 1, inv
    if not s.proj:
        for i in range(s.dim):
            code += v[i] * mult
            mult *= s.q
        return code
    j = 0
    while v[j] == 0:
        j += 1
    if v[j] != 1:
        inv = s.inv[v[j]]
        for i in range(j + 1, s.dim):
            v[i] = _fmul(s, v[i], inv)
    code = s.offsets[j]
    for i in range(j + 1, s.dim):
        code += v[i] * mult
        mult *= s.q
    return code


cdef inline void _matvec(Spec* s, const i64* m0, const i64* m1, const i64* v, i64* w) nogil:
    cdef int i, j, n = s.dim
    cdef i64 p = s.p, s0, s1, x0, x1
    cdef i64 v0[MAXDIM]
    cdef i64 v1[MAXDIM]
    if not s.ext:
        for i in range(n):
            s0 = 0
            for j in range(n):
                s0 += m0[i * n + j] * v[j]
            w[i] = s0 % p
        return
    for j in range(n):
        v0[j] = v[j] % p
        v1[j] = v[j] // p
    for i in range(n):
        s0 = 0
        s1 = 0
        for j in range(n):
            x0 = m0[i * n + j]
            x1 = m1[i * n + j]
            s0 += x0 * v0[j] - 2 * x1 * v1[j]
            s1 += x0 * v1[j] + x1 * v0[j]
        w[i] = _fmod(s0, p) + p * (s1 % p)


cdef Spec _spec(i64 p, int ext, int proj, int dim, const i64[::1] inv_table, const i64[::1] offsets):
    cdef Spec s
    if dim > MAXDIM:
        raise ValueError("dimension too large for compiled kernels")
    s.p = p
    s.q = p * p if ext else p
    s.ext = ext
    s.proj = proj
    s.dim = dim
    s.inv = &inv_table[0]
    s.offsets = &offsets[0]
    return s


def apply_matrix(const i64[:, ::1] m0, const i64[:, ::1] m1, i64 p, int ext, int proj, int dim,
                 const i64[::1] inv_table, const i64[::1] offsets, const i64[::1] points):
    cdef Spec s = _spec(p, ext, proj, dim, inv_table, offsets)
    cdef Py_ssize_t k, n = points.shape[0]
    out_arr = np.empty(n, dtype=np.int64)
    cdef i64[::1] out = out_arr
    cdef i64 v[MAXDIM]
    cdef i64 w[MAXDIM]
    with nogil:
        for k in range(n):
            _decode(&s, points[k], v)
            _matvec(&s, &m0[0, 0], &m1[0, 0], v, w)
            out[k] = _encode(&s, w)
    return out_arr


def orbit_bfs(const i64[:, :, ::1] g0, const i64[:, :, ::1] g1, const int16_t[::1] gen_ids,
              i64 p, int ext, int proj, int dim,
              const i64[::1] inv_table, const i64[::1] offsets,
              int16_t[::1] labels, i64[::1] orbit, i64 count, i64 start):
    """Breadth-first expansion of ``orbit[start:count]``; returns the new count."""
    cdef Spec s = _spec(p, ext, proj, dim, inv_table, offsets)
    cdef Py_ssize_t ng = g0.shape[0], gi
    cdef i64 pos = start, y
    cdef i64 v[MAXDIM]
    cdef i64 w[MAXDIM]
    if ng == 0:
        return count
    with nogil:
        while pos < count:
            _decode(&s, orbit[pos], v)
            for gi in range(ng):
                _matvec(&s, &g0[gi, 0, 0], &g1[gi, 0, 0], v, w)
                y = _encode(&s, w)
                if labels[y] == -1:
                    labels[y] = gen_ids[gi]
                    orbit[count] = y
                    count += 1
            pos += 1
    return count


def extend_orbit(const i64[:, ::1] m0, const i64[:, ::1] m1, int16_t gen_id,
                 i64 p, int ext, int proj, int dim,
                 const i64[::1] inv_table, const i64[::1] offsets,
                 int16_t[::1] labels, i64[::1] orbit, i64 count):
    """Apply one new generator to the existing ``orbit[:count]``."""
    cdef Spec s = _spec(p, ext, proj, dim, inv_table, offsets)
    cdef i64 pos, y, n_old = count
    cdef i64 v[MAXDIM]
    cdef i64 w[MAXDIM]
    with nogil:
        for pos in range(n_old):
            _decode(&s, orbit[pos], v)
            _matvec(&s, &m0[0, 0], &m1[0, 0], v, w)
            y = _encode(&s, w)
            if labels[y] == -1:
                labels[y] = gen_id
                orbit[count] = y
                count += 1
    return count


def first_moved(const i64[:, ::1] m0, const i64[:, ::1] m1, i64 p, int ext, int proj, int dim,
                const i64[::1] inv_table, const i64[::1] offsets, i64 begin, i64 end):
    """Smallest point index in ``[begin, end)`` not fixed by the matrix, or -1."""
    cdef Spec s = _spec(p, ext, proj, dim, inv_table, offsets)
    cdef i64 x, found = -1
    cdef i64 v[MAXDIM]
    cdef i64 w[MAXDIM]
    with nogil:
        for x in range(begin, end):
            _decode(&s, x, v)
            _matvec(&s, &m0[0, 0], &m1[0, 0], v, w)
            if _encode(&s, w) != x:
                found = x
                break
    return found
