"""Small permutation groups: Schreier-Sims, transitivity towers, images of
matrix actions on invariant point sets.

Permutations are tuples ``p`` with ``i -> p[i]``; products compose right to
left, ``(p * q)[i] == p[q[i]]``, matching matrices acting on columns.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import prod
from typing import Sequence

import numpy as np

from ..errors import OrbitNotInvariant
from .domain import Domain

Perm = tuple[int, ...]


def perm_mul(p: Perm, q: Perm) -> Perm:
    return tuple(p[i] for i in q)


def perm_inv(p: Perm) -> Perm:
    out = [0] * len(p)
    for i, j in enumerate(p):
        out[j] = i
    return tuple(out)


def is_identity(p: Perm) -> bool:
    return all(i == j for i, j in enumerate(p))


def _check_perm(p: Sequence[int], degree: int) -> Perm:
    p = tuple(int(i) for i in p)
    if len(p) != degree or sorted(p) != list(range(degree)):
        raise ValueError("not a permutation of the right degree")
    return p


class _Chain:
    """Deterministic Schreier-Sims with explicit transversals."""

    def __init__(self, degree: int, base_prefix: Sequence[int] = ()) -> None:
        self.degree = degree
        self.base: list[int] = []
        self.gens: list[list[Perm]] = []
        self.trans: list[dict[int, Perm]] = []
        for b in base_prefix:
            self._new_level(b)

    def _new_level(self, b: int) -> None:
        self.base.append(b)
        self.gens.append([])
        self.trans.append({b: tuple(range(self.degree))})

    def _orbit(self, i: int) -> None:
        trans, b = self.trans[i], self.base[i]
        trans.clear()
        trans[b] = tuple(range(self.degree))
        queue = [b]
        for x in queue:
            ux = trans[x]
            for s in self.gens[i]:
                y = s[x]
                if y not in trans:
                    trans[y] = perm_mul(s, ux)
                    queue.append(y)

    def sift(self, g: Perm, start: int = 0) -> tuple[Perm, int]:
        for i in range(start, len(self.base)):
            y = g[self.base[i]]
            if y not in self.trans[i]:
                return g, i
            g = perm_mul(perm_inv(self.trans[i][y]), g)
        return g, len(self.base)

    def add(self, h: Perm, depth: int) -> None:
        if depth == len(self.base):
            b = next(i for i, j in enumerate(h) if i != j)
            self._new_level(b)
        for i in range(depth + 1):
            self.gens[i].append(h)
            self._orbit(i)

    def run(self, gens: Sequence[Perm]) -> None:
        for g in gens:
            h, j = self.sift(g)
            if not is_identity(h):
                self.add(h, j)
        i = len(self.base) - 1
        while i >= 0:
            grew = self._check(i)
            i = i - 1 if grew is None else grew

    def _check(self, i: int) -> int | None:
        for x, ux in list(self.trans[i].items()):
            for s in list(self.gens[i]):
                y = s[x]
                h = perm_mul(perm_inv(self.trans[i][y]), perm_mul(s, ux))
                r, j = self.sift(h, i + 1)
                if not is_identity(r):
                    self.add(r, j)
                    return j
        return None

    @property
    def order(self) -> int:
        return prod(len(t) for t in self.trans)


@dataclass
class PermGroup:
    degree: int
    gens: tuple[Perm, ...]
    points: tuple[int, ...] = ()  # labels of the permuted objects, if any

    def __post_init__(self) -> None:
        self.gens = tuple(_check_perm(g, self.degree) for g in self.gens)
        self._order = None

    def chain(self, base_prefix: Sequence[int] = ()) -> _Chain:
        ch = _Chain(self.degree, base_prefix)
        ch.run(self.gens)
        return ch

    @property
    def order(self) -> int:
        if self._order is None:
            self._order = self.chain().order
        return self._order

    def orbit(self, x: int) -> set[int]:
        seen, queue = {x}, [x]
        for y in queue:
            for g in self.gens:
                if g[y] not in seen:
                    seen.add(g[y])
                    queue.append(g[y])
        return seen

    def is_transitive(self) -> bool:
        return len(self.orbit(0)) == self.degree


def tower_with_base(g: PermGroup) -> tuple[list[int], list[int]]:
    """Orbit sizes along iterated point stabilizers, and the points fixed.

    Each base point is the smallest point moved by the current stabilizer;
    iteration stops once the stabilizer is trivial, and at least one entry
    is always produced.
    """
    tower: list[int] = []
    base: list[int] = []
    while True:
        ch = g.chain(base)
        depth = len(base)
        stab = ch.gens[depth] if depth < len(ch.gens) else []
        stab = [s for s in stab if not is_identity(s)]
        if not stab:
            if not tower:
                tower.append(1)
            return tower, base
        b = min(i for s in stab for i, j in enumerate(s) if i != j)
        tower.append(len(PermGroup(g.degree, tuple(stab)).orbit(b)))
        base.append(b)


def transitivity_tower(g: PermGroup) -> list[int]:
    return tower_with_base(g)[0]


def stabilizer_order(g: PermGroup, points: Sequence[int]) -> int:
    ch = g.chain(points)
    return prod(len(t) for t in ch.trans[len(points):])


def perm_image(gens: Sequence[np.ndarray], domain: Domain, orbit: Sequence[int]) -> PermGroup:
    """Permutation action of matrices on an invariant set of points."""
    pts = np.unique(np.asarray(orbit, dtype=np.int64))
    perms = []
    for m in gens:
        img = domain.apply(m, pts)
        pos = np.searchsorted(pts, img)
        pos[pos >= pts.size] = 0
        if not np.array_equal(pts[pos], img):
            raise OrbitNotInvariant("point set is not invariant under a generator")
        perms.append(tuple(int(i) for i in pos))
    return PermGroup(int(pts.size), tuple(perms), tuple(int(x) for x in pts))
