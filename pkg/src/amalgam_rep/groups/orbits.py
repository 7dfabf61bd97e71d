"""Orbits of matrix groups on the projective points of GF(q)^n."""

from __future__ import annotations

from typing import Sequence

import numpy as np

from ..fields import FiniteField
from .domain import Domain


def contragredient(field: FiniteField, m: np.ndarray) -> np.ndarray:
    """Inverse transpose: the action on hyperplanes, written on normal vectors."""
    return np.ascontiguousarray(field.mat_inv(m).T)


def projective_orbits(gens: Sequence[np.ndarray], field: FiniteField, *, dual: bool = False,
                      dim: int = 5) -> list[np.ndarray]:
    """All orbits on projective points (or hyperplanes when ``dual``), each in
    breadth-first order from its smallest point; orbits sorted by that point."""
    mats = [contragredient(field, g) if dual else np.asarray(g, dtype=np.int64) for g in gens]
    dom = Domain(field, "projective", dim)
    labels = dom.new_labels()
    buf = np.empty(dom.size, dtype=np.int64)
    ids = list(range(len(mats)))
    orbits = []
    nxt = 0
    while nxt < dom.size:
        labels[nxt] = -2
        buf[0] = nxt
        n = dom.orbit_bfs(mats, ids, labels, buf, 1, 0)
        orbits.append(buf[:n].copy())
        free = np.flatnonzero(labels[nxt:] == -1)
        nxt = nxt + int(free[0]) if free.size else dom.size
    return orbits


def orbit_partition(gens: Sequence[np.ndarray], field: FiniteField, *, dual: bool = False,
                    dim: int = 5) -> list[int]:
    """Orbit sizes on the ``(q^n - 1)/(q - 1)`` projective points."""
    return [int(o.size) for o in projective_orbits(gens, field, dual=dual, dim=dim)]
