"""Vectorized numpy versions of the orbit kernels.

Point numbering and visiting order match the compiled module exactly: the
frontier is expanded point-major, generator-minor, and only the first
occurrence of each new point is kept.
"""

from __future__ import annotations

import numpy as np

CHUNK = 1 << 17


def _fmul(u, v, p, ext):
    if not ext:
        return u * v % p
    a0, a1 = u % p, u // p
    b0, b1 = v % p, v // p
    return (a0 * b0 - 2 * a1 * b1) % p + p * ((a0 * b1 + a1 * b0) % p)


def _decode(codes, p, ext, proj, dim, offsets):
    q = p * p if ext else p
    v = np.zeros((codes.shape[0], dim), dtype=np.int64)
    if not proj:
        rem = codes.copy()
        for i in range(dim):
            v[:, i] = rem % q
            rem //= q
        return v
    lead = np.searchsorted(offsets[:dim], codes, side="right") - 1
    rem = codes - offsets[lead]
    rows = np.arange(codes.shape[0])
    v[rows, lead] = 1
    # digits fill positions lead+1 .. dim-1
    for i in range(1, dim):
        pos = lead + i
        ok = pos < dim
        v[rows[ok], pos[ok]] = rem[ok] % q
        rem = rem // q
    return v


def _encode(v, p, ext, proj, dim, inv_table, offsets):
    q = p * p if ext else p
    n = v.shape[0]
    if not proj:
        code = np.zeros(n, dtype=np.int64)
        mult = 1
        for i in range(dim):
            code += v[:, i] * mult
            mult *= q
        return code
    nz = v != 0
    lead = np.argmax(nz, axis=1)
    rows = np.arange(n)
    inv = inv_table[v[rows, lead]]
    v = _fmul(v, inv[:, None], p, ext)
    code = offsets[lead].copy()
    mult = np.ones(n, dtype=np.int64)
    for i in range(dim):
        after = i > lead
        code += np.where(after, v[:, i] * mult, 0)
        mult = np.where(after, mult * q, mult)
    return code


def _matvec_rows(m0, m1, v, p, ext):
    if not ext:
        return (v @ m0.T) % p
    v0, v1 = v % p, v // p
    w0 = (v0 @ m0.T - 2 * (v1 @ m1.T)) % p
    w1 = (v1 @ m0.T + v0 @ m1.T) % p
    return w0 + p * w1


def apply_matrix(m0, m1, p, ext, proj, dim, inv_table, offsets, points):
    points = np.asarray(points, dtype=np.int64)
    out = np.empty(points.shape[0], dtype=np.int64)
    for lo in range(0, points.shape[0], CHUNK):
        chunk = points[lo:lo + CHUNK]
        v = _decode(chunk, p, ext, proj, dim, offsets)
        w = _matvec_rows(m0, m1, v, p, ext)
        out[lo:lo + CHUNK] = _encode(w, p, ext, proj, dim, inv_table, offsets)
    return out


def _append_new(images, labs, labels, orbit, count):
    mask = labels[images] == -1
    images, labs = images[mask], labs[mask]
    if images.size == 0:
        return count
    _, first = np.unique(images, return_index=True)
    first.sort()
    new = images[first]
    labels[new] = labs[first]
    orbit[count:count + new.size] = new
    return count + new.size


def orbit_bfs(g0, g1, gen_ids, p, ext, proj, dim, inv_table, offsets, labels, orbit, count, start):
    ng = g0.shape[0]
    if ng == 0:
        return count
    gen_ids = np.asarray(gen_ids, dtype=np.int16)
    while start < count:
        end = count
        for lo in range(start, end, CHUNK):
            hi = min(lo + CHUNK, end)
            front = orbit[lo:hi]
            imgs = np.stack(
                [apply_matrix(g0[i], g1[i], p, ext, proj, dim, inv_table, offsets, front)
                 for i in range(ng)],
                axis=1,
            ).ravel()
            labs = np.tile(gen_ids, hi - lo)
            count = _append_new(imgs, labs, labels, orbit, count)
        start = end
    return count


def extend_orbit(m0, m1, gen_id, p, ext, proj, dim, inv_table, offsets, labels, orbit, count):
    n_old = count
    for lo in range(0, n_old, CHUNK):
        hi = min(lo + CHUNK, n_old)
        imgs = apply_matrix(m0, m1, p, ext, proj, dim, inv_table, offsets, orbit[lo:hi])
        labs = np.full(imgs.shape[0], gen_id, dtype=np.int16)
        count = _append_new(imgs, labs, labels, orbit, count)
    return count


def first_moved(m0, m1, p, ext, proj, dim, inv_table, offsets, begin, end):
    for lo in range(begin, end, CHUNK):
        hi = min(lo + CHUNK, end)
        pts = np.arange(lo, hi, dtype=np.int64)
        moved = np.flatnonzero(
            apply_matrix(m0, m1, p, ext, proj, dim, inv_table, offsets, pts) != pts
        )
        if moved.size:
            return int(pts[moved[0]])
    return -1
