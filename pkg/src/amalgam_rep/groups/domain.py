"""Point sets for matrix actions: nonzero vectors or projective points.

Vectors are numbered ``sum v[i] * q**i`` (index 0 is the zero vector and is
never used).  A projective point is normalized so its first nonzero
coordinate is 1; points are numbered by leading position, then by the
remaining coordinates in base q.
"""

from __future__ import annotations

from typing import Literal

import numpy as np

from ..errors import MemoryBudgetExceeded
from ..fields import FiniteField
from . import kernels

DomainKind = Literal["vectors", "projective"]

# addressable-size guard; real limits come from the memory budget
MAX_POINTS = 1 << 33


class Domain:
    def __init__(self, field: FiniteField, kind: DomainKind = "vectors", dim: int = 5) -> None:
        if kind not in ("vectors", "projective"):
            raise ValueError(f"unknown domain kind {kind!r}")
        self.field = field
        self.kind = kind
        self.dim = dim
        q = field.q
        self.size = q ** dim if kind == "vectors" else (q ** dim - 1) // (q - 1)
        if self.size > MAX_POINTS:
            raise MemoryBudgetExceeded(f"{self.size} points is beyond addressable range")
        self.offsets = np.zeros(dim + 1, dtype=np.int64)
        for j in range(dim):
            self.offsets[j + 1] = self.offsets[j] + q ** (dim - 1 - j)
        if kind == "projective":
            inv = np.zeros(q, dtype=np.int64)
            for e in range(1, q):
                inv[e] = field.inv_packed(e)
            self.inv_table = inv
        else:
            self.inv_table = np.zeros(1, dtype=np.int64)
        self._args = (field.p, int(field.degree == 2), int(kind == "projective"), dim)

    @property
    def proj(self) -> bool:
        return self.kind == "projective"

    def __repr__(self) -> str:
        return f"Domain({self.field!r}, {self.kind!r}, size={self.size})"

    def point_range(self) -> tuple[int, int]:
        return (1, self.size) if self.kind == "vectors" else (0, self.size)

    # --- encoding -----------------------------------------------------------

    def split(self, m: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        p = self.field.p
        m = np.ascontiguousarray(m, dtype=np.int64)
        if self.field.degree == 1:
            return m, np.zeros_like(m)
        return np.ascontiguousarray(m % p), np.ascontiguousarray(m // p)

    def encode(self, vec) -> int:
        v = np.asarray(vec, dtype=np.int64).reshape(1, self.dim)
        p, ext, proj, dim = self._args
        return int(kernels._pykernels._encode(v.copy(), p, ext, proj, dim, self.inv_table, self.offsets)[0])

    def decode(self, idx: int) -> np.ndarray:
        p, ext, proj, dim = self._args
        return kernels._pykernels._decode(
            np.array([idx], dtype=np.int64), p, ext, proj, dim, self.offsets
        )[0]

    def basis_point(self, i: int) -> int:
        v = np.zeros(self.dim, dtype=np.int64)
        v[i] = 1
        return self.encode(v)

    def all_points(self) -> np.ndarray:
        lo, hi = self.point_range()
        return np.arange(lo, hi, dtype=np.int64)

    # --- actions ------------------------------------------------------------

    def apply(self, m: np.ndarray, points) -> np.ndarray:
        m0, m1 = self.split(m)
        pts = np.ascontiguousarray(points, dtype=np.int64)
        return kernels.get().apply_matrix(m0, m1, *self._args, self.inv_table, self.offsets, pts)

    def image(self, m: np.ndarray, point: int) -> int:
        return int(self.apply(m, np.array([point], dtype=np.int64))[0])

    def first_moved(self, m: np.ndarray) -> int:
        m0, m1 = self.split(m)
        lo, hi = self.point_range()
        return int(kernels.get().first_moved(m0, m1, *self._args, self.inv_table, self.offsets, lo, hi))

    def orbit_bfs(self, mats, gen_ids, labels, orbit, count, start) -> int:
        if not len(mats):
            return count
        parts = [self.split(m) for m in mats]
        g0 = np.ascontiguousarray(np.stack([a for a, _ in parts]))
        g1 = np.ascontiguousarray(np.stack([b for _, b in parts]))
        ids = np.ascontiguousarray(gen_ids, dtype=np.int16)
        return int(kernels.get().orbit_bfs(
            g0, g1, ids, *self._args, self.inv_table, self.offsets, labels, orbit, count, start
        ))

    def extend_orbit(self, m, gen_id, labels, orbit, count) -> int:
        m0, m1 = self.split(m)
        return int(kernels.get().extend_orbit(
            m0, m1, np.int16(gen_id), *self._args, self.inv_table, self.offsets, labels, orbit, count
        ))

    def new_labels(self) -> np.ndarray:
        return np.full(self.size, -1, dtype=np.int16)

    def orbit(self, mats, point: int) -> np.ndarray:
        """Orbit of one point, in breadth-first order."""
        labels = self.new_labels()
        buf = np.empty(self.size, dtype=np.int64)
        labels[point] = -2
        buf[0] = point
        n = self.orbit_bfs(list(mats), list(range(len(mats))), labels, buf, 1, 0)
        return buf[:n].copy()
