"""Stabilizer chains for matrix groups over GF(q) acting on vectors or points.

Orbits are stored as Schreier vectors: ``labels[y]`` is the index of the
strong generator ``s`` with ``y = s(parent)``; coset representatives are
rebuilt on demand by walking back to the base point and memoized.

Order strategy: sift product-replacement random elements until the chain
order reaches a known upper bound (certified by the squeeze
``chain order <= |G| <= target``), otherwise finish with deterministic
Schreier generators when the memory budget allows it.
"""

from __future__ import annotations

import logging
import random
from dataclasses import dataclass, field
from math import prod
from typing import Literal, Sequence

import numpy as np

from ..errors import Inconclusive, MemoryBudgetExceeded
from ..fields import FiniteField
from .domain import Domain, DomainKind
from .formulas import GroupOrderTarget

log = logging.getLogger(__name__)

DEFAULT_MAX_MEM = 2 << 30
REP_BYTES = 400  # one cached 5x5 int64 matrix plus dict overhead
Strategy = Literal["auto", "random", "deterministic"]


@dataclass
class Level:
    base_point: int
    gen_ids: list[int]
    labels: np.ndarray
    orbit: np.ndarray
    reps: dict[int, np.ndarray] = field(default_factory=dict)  # point -> u_x^-1

    @property
    def size(self) -> int:
        return int(self.orbit.shape[0])


class ProductReplacement:
    """Product replacement with an accumulator (rank ``slots``, seeded)."""

    def __init__(self, field: FiniteField, gens: Sequence[np.ndarray], seed: int = 0,
                 slots: int = 10, burn_in: int = 50) -> None:
        self.field = field
        self.rng = random.Random(seed)
        n = max(slots, len(gens))
        self.state = [(gens[i % len(gens)], field.mat_inv(gens[i % len(gens)])) for i in range(n)]
        self.acc = field.identity(gens[0].shape[0])
        for _ in range(burn_in):
            self.next()

    def next(self) -> np.ndarray:
        rng, mul = self.rng, self.field.mat_mul
        i, j = rng.sample(range(len(self.state)), 2)
        si, si_inv = self.state[i]
        sj, sj_inv = self.state[j]
        if rng.random() < 0.5:
            sj, sj_inv = sj_inv, sj
        if rng.random() < 0.5:
            new = (mul(si, sj), mul(sj_inv, si_inv))
        else:
            new = (mul(sj, si), mul(si_inv, sj_inv))
        self.state[i] = new
        self.acc = mul(self.acc, new[0])
        return self.acc


class StabilizerChain:
    """Base and strong generating set for a group of invertible matrices."""

    def __init__(self, domain: Domain, max_mem: int = DEFAULT_MAX_MEM) -> None:
        self.domain = domain
        self.field = domain.field
        self.max_mem = max_mem
        self.gens: list[np.ndarray] = []
        self.gens_inv: list[np.ndarray] = []
        self.depth: list[int] = []
        self.levels: list[Level] = []
        self.scalars: set[int] = {1}  # kernel of the projective action
        self._scratch = None
        self.complete = False
        self._eye = self.field.identity(domain.dim)

    # --- bookkeeping --------------------------------------------------------

    @property
    def base(self) -> list[int]:
        return [lv.base_point for lv in self.levels]

    def base_vectors(self) -> list[np.ndarray]:
        return [self.domain.decode(b) for b in self.base]

    @property
    def orbit_sizes(self) -> list[int]:
        return [lv.size for lv in self.levels]

    @property
    def order(self) -> int:
        return prod(self.orbit_sizes) * len(self.scalars)

    def memory_estimate(self, levels: int | None = None) -> int:
        n = levels if levels is not None else max(len(self.levels), 1)
        return self.domain.size * (2 * n + 8) + REP_BYTES * sum(len(lv.reps) for lv in self.levels)

    def _check_memory(self, levels: int) -> None:
        need = self.domain.size * (2 * levels + 8)
        if need > self.max_mem:
            raise MemoryBudgetExceeded(
                f"{levels} levels over {self.domain.size} points need ~{need} bytes "
                f"(budget {self.max_mem})"
            )

    def _scratch_buf(self) -> np.ndarray:
        if self._scratch is None:
            self._scratch = np.empty(self.domain.size, dtype=np.int64)
        return self._scratch

    # --- identity tests -----------------------------------------------------

    def _scalar_of(self, g: np.ndarray) -> int | None:
        d = g[0, 0]
        if np.array_equal(g, self._eye * d):
            return int(d)
        return None

    def _is_trivial(self, g: np.ndarray) -> bool:
        if self.domain.proj:
            lam = self._scalar_of(g)
            return lam is not None and lam in self.scalars
        return bool(np.array_equal(g, self._eye))

    def _add_scalar(self, lam: int) -> None:
        fld = self.field
        group = set(self.scalars)
        frontier = list(group)
        while frontier:
            x = frontier.pop()
            y = fld.mul_packed(x, lam)
            if y not in group:
                group.add(y)
                frontier.append(y)
        self.scalars = group

    # --- orbits and transversals -------------------------------------------

    def _rep_inv(self, level: Level, x: int) -> np.ndarray:
        """``u_x^-1`` where ``u_x`` maps the base point to ``x``."""
        path = []
        y = x
        while y != level.base_point and y not in level.reps:
            s = int(level.labels[y])
            path.append((y, s))
            y = self.domain.image(self.gens_inv[s], y)
        acc = self._eye if y == level.base_point else level.reps[y]
        for y, s in reversed(path):
            # u_y = s u_parent  =>  u_y^-1 = u_parent^-1 s^-1
            acc = self.field.mat_mul(acc, self.gens_inv[s])
            level.reps[y] = acc
        return acc

    def coset_rep(self, level_index: int, x: int) -> np.ndarray:
        return self.field.mat_inv(self._rep_inv(self.levels[level_index], x))

    def _grow_level(self, level: Level, new_gen: int | None) -> None:
        buf = self._scratch_buf()
        n = level.size
        buf[:n] = level.orbit
        start = n
        if new_gen is not None:
            n = self.domain.extend_orbit(self.gens[new_gen], new_gen, level.labels, buf, n)
        if n > start or new_gen is None:
            mats = [self.gens[i] for i in level.gen_ids]
            n = self.domain.orbit_bfs(mats, level.gen_ids, level.labels, buf, n, start if new_gen is not None else 0)
        level.orbit = buf[:n].copy()

    def _new_level(self, h: np.ndarray) -> None:
        point = self._choose_base_point(h)
        self._check_memory(len(self.levels) + 1)
        labels = self.domain.new_labels()
        labels[point] = -2
        level = Level(point, [], labels, np.array([point], dtype=np.int64))
        self.levels.append(level)

    def _choose_base_point(self, h: np.ndarray) -> int:
        dom = self.domain
        taken = set(self.base)
        for i in range(dom.dim):
            e = dom.basis_point(i)
            if e not in taken and dom.image(h, e) != e:
                return e
        pt = dom.first_moved(h)
        if pt < 0:
            raise AssertionError("element fixes every point but was not trivial")
        return pt

    def add_generator(self, h: np.ndarray, depth: int) -> None:
        """Append strong generator ``h`` fixing the first ``depth`` base points."""
        if self.domain.proj and depth == len(self.levels):
            lam = self._scalar_of(h)
            if lam is not None:
                self._add_scalar(lam)
                return
        if depth == len(self.levels):
            self._new_level(h)
        gid = len(self.gens)
        if gid >= np.iinfo(np.int16).max:
            raise MemoryBudgetExceeded("too many strong generators")
        self.gens.append(h)
        self.gens_inv.append(self.field.mat_inv(h))
        self.depth.append(depth)
        for lv in self.levels[: depth + 1]:
            lv.gen_ids.append(gid)
            self._grow_level(lv, gid)
        self.complete = False

    # --- sifting ------------------------------------------------------------

    def sift(self, g: np.ndarray, start: int = 0) -> tuple[np.ndarray, int]:
        """Strip ``g`` through the chain; returns (residue, level reached)."""
        for i in range(start, len(self.levels)):
            lv = self.levels[i]
            y = self.domain.image(g, lv.base_point)
            if lv.labels[y] == -1:
                return g, i
            if y != lv.base_point:
                g = self.field.mat_mul(self._rep_inv(lv, y), g)
        return g, len(self.levels)

    def contains(self, g: np.ndarray) -> bool:
        h, _ = self.sift(g)
        return self._is_trivial(h)

    def feed(self, g: np.ndarray) -> bool:
        """Sift ``g`` and keep its residue if non-trivial; True if the chain grew."""
        h, j = self.sift(g)
        if self._is_trivial(h):
            return False
        self.add_generator(h, j)
        return True

    # --- deterministic completion -------------------------------------------

    def completion_memory(self) -> int:
        return REP_BYTES * 2 * sum(lv.size for lv in self.levels)

    def schreier_sims(self) -> None:
        """Verify all Schreier generators, extending the chain as needed."""
        i = len(self.levels) - 1
        while i >= 0:
            grew_at = self._check_level(i)
            if grew_at is None:
                i -= 1
            else:
                i = grew_at
            if i >= len(self.levels):
                i = len(self.levels) - 1
        self.complete = True

    def _check_level(self, i: int) -> int | None:
        lv = self.levels[i]
        mul = self.field.mat_mul
        for x in lv.orbit.tolist():
            ux = None
            for s in list(lv.gen_ids):
                y = self.domain.image(self.gens[s], x)
                if ux is None:
                    ux = self.coset_rep(i, x)
                # Schreier generator u_y^-1 s u_x fixes the base point
                h = mul(mul(self._rep_inv(lv, y), self.gens[s]), ux)
                r, j = self.sift(h, i + 1)
                if not self._is_trivial(r):
                    self.add_generator(r, j)
                    return min(j, len(self.levels) - 1)
        return None


@dataclass
class OrderResult:
    order: int
    chain: StabilizerChain
    certified: bool
    method: str
    sifts: int = 0
    target: GroupOrderTarget | None = None

    @property
    def base(self) -> list[int]:
        return self.chain.base


def _check_containment(gens: Sequence[np.ndarray], field: FiniteField, target: GroupOrderTarget) -> None:
    for g in gens:
        if field.mat_det(g) != 1:
            raise ValueError("generator has determinant != 1; target bound does not apply")
        if target.family == "SU":
            gram = field.mat_mul(field.mat_frobenius(g).T.copy(), g)
            if not np.array_equal(gram, field.identity(g.shape[0])):
                raise ValueError("generator is not unitary; SU bound does not apply")
    if target.family == "SU" and field.q != target.q ** 2:
        raise ValueError("SU target must be over GF(q^2)")
    if target.family == "SL" and field.q != target.q:
        raise ValueError("SL target field mismatch")


def matrix_group_order(
    gens: Sequence[np.ndarray],
    field: FiniteField,
    *,
    domain: DomainKind | Literal["auto"] = "vectors",
    strategy: Strategy = "auto",
    target: GroupOrderTarget | None = None,
    seed: int = 0,
    max_mem: int = DEFAULT_MAX_MEM,
    stall: int = 40,
    max_random: int = 5000,
) -> OrderResult:
    """Exact order of the group generated by ``gens`` (packed matrices).

    With a ``target`` (an SL/SU order whose group provably contains the
    generators, checked here) the randomized phase stops as soon as the
    chain order reaches it.  Without one, or if the random phase stalls, the
    chain is completed deterministically when memory allows; otherwise
    :class:`Inconclusive` is raised with the order reached.
    """
    gens = [np.asarray(g, dtype=np.int64) for g in gens]
    if not gens:
        raise ValueError("need generators")
    dim = gens[0].shape[0]
    if domain == "auto":
        domain = "vectors" if Domain(field, "vectors", dim).size * 18 <= max_mem else "projective"
    dom = Domain(field, domain, dim)
    chain = StabilizerChain(dom, max_mem)
    chain._check_memory(1)
    if target is not None:
        _check_containment(gens, field, target)

    for g in gens:
        chain.feed(g)

    sifts = 0
    if strategy in ("auto", "random"):
        pr = ProductReplacement(field, gens, seed=seed)
        quiet = 0
        while sifts < max_random:
            if target is not None and chain.order >= target.value:
                break
            sifts += 1
            if chain.feed(pr.next()):
                quiet = 0
            else:
                quiet += 1
                if quiet >= stall:
                    break
        log.debug("random phase: %d sifts, order %d, orbits %s", sifts, chain.order, chain.orbit_sizes)
        if target is not None and chain.order == target.value:
            return OrderResult(chain.order, chain, True, "random+target", sifts, target)
        if target is not None and chain.order > target.value:
            raise AssertionError("chain order exceeds containing group order")

    need = chain.memory_estimate() + chain.completion_memory()
    if need > max_mem:
        raise Inconclusive(chain.order, f"deterministic completion needs ~{need} bytes, budget {max_mem}")
    chain.schreier_sims()
    return OrderResult(chain.order, chain, True, "schreier-sims", sifts, target)
