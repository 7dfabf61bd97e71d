"""Brute-force closures of small matrix groups and searches inside them."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Sequence

import numpy as np

from ..errors import ClosureExceedsCap
from ..fields import FiniteField
from ..linalg import MatrixR

EXACT_CAP = 10_000
FIELD_CAP = 100_000


class ExactAlgebra:
    """Matrix operations on MatrixR (unitary, so inverse = adjoint)."""

    name = "exact"

    def __init__(self, n: int = 5) -> None:
        self.n = n

    def mul(self, x: MatrixR, y: MatrixR) -> MatrixR:
        return x @ y

    def inv(self, x: MatrixR) -> MatrixR:
        return x.adjoint()

    def identity(self) -> MatrixR:
        return MatrixR.identity(self.n)

    def key(self, x: MatrixR) -> bytes:
        return x.key()


class FieldAlgebra:
    """Matrix operations on packed numpy matrices over a finite field."""

    def __init__(self, field: FiniteField, n: int = 5) -> None:
        self.field = field
        self.n = n
        self.name = repr(field)

    def mul(self, x: np.ndarray, y: np.ndarray) -> np.ndarray:
        return self.field.mat_mul(x, y)

    def inv(self, x: np.ndarray) -> np.ndarray:
        return self.field.mat_inv(x)

    def identity(self) -> np.ndarray:
        return self.field.identity(self.n)

    def key(self, x: np.ndarray) -> bytes:
        return np.ascontiguousarray(x, dtype=np.int32).tobytes()


def algebra_for(sample: Any, field: FiniteField | None = None):
    if isinstance(sample, MatrixR):
        return ExactAlgebra(sample.n)
    if field is None:
        raise ValueError("finite-field matrices need a field")
    return FieldAlgebra(field, np.asarray(sample).shape[0])


@dataclass
class ClosureGroup:
    elements: list
    index: dict[bytes, int]
    algebra: Any
    generator_names: tuple[str, ...] = ()
    cap: int = EXACT_CAP

    def __len__(self) -> int:
        return len(self.elements)

    def __contains__(self, m) -> bool:
        return self.algebra.key(m) in self.index

    def __iter__(self):
        return iter(self.elements)

    def keys(self) -> set[bytes]:
        return set(self.index)


def bfs_closure(gens: Sequence, cap: int | None = None, *, field: FiniteField | None = None,
                names: Sequence[str] = ()) -> ClosureGroup:
    """All products of ``gens``; raises ClosureExceedsCap past ``cap`` elements."""
    if not gens:
        raise ValueError("need at least one generator")
    alg = algebra_for(gens[0], field)
    if cap is None:
        cap = EXACT_CAP if isinstance(alg, ExactAlgebra) else FIELD_CAP
    eye = alg.identity()
    elements = [eye]
    index = {alg.key(eye): 0}
    pos = 0
    while pos < len(elements):
        x = elements[pos]
        for g in gens:
            y = alg.mul(x, g)
            k = alg.key(y)
            if k not in index:
                if len(elements) >= cap:
                    raise ClosureExceedsCap(cap)
                index[k] = len(elements)
                elements.append(y)
        pos += 1
    return ClosureGroup(elements, index, alg, tuple(names), cap)


def is_subgroup_member(m, g: ClosureGroup) -> bool:
    return m in g


def intersection(g1: ClosureGroup, g2: ClosureGroup) -> ClosureGroup:
    small, big = (g1, g2) if len(g1) <= len(g2) else (g2, g1)
    elements = [x for x in small.elements if x in big]
    index = {small.algebra.key(x): i for i, x in enumerate(elements)}
    return ClosureGroup(elements, index, small.algebra, (), small.cap)


def centre(g: ClosureGroup, gens: Sequence) -> list:
    """Elements commuting with every generator."""
    alg = g.algebra
    out = []
    for x in g.elements:
        if all(alg.key(alg.mul(x, s)) == alg.key(alg.mul(s, x)) for s in gens):
            out.append(x)
    return out


def involutions(g: ClosureGroup) -> list:
    alg = g.algebra
    eye = alg.key(alg.identity())
    return [
        x for x in g.elements
        if alg.key(x) != eye and alg.key(alg.mul(x, x)) == eye
    ]


def _commute_table(invs: list, alg) -> np.ndarray:
    n = len(invs)
    if isinstance(alg, FieldAlgebra) and n:
        stack = np.stack(invs)
        xy = alg.field.mat_mul(stack[:, None], stack[None, :])
        yx = np.swapaxes(xy, 0, 1)
        return np.all(xy == yx, axis=(2, 3))
    table = np.zeros((n, n), dtype=bool)
    for i in range(n):
        for j in range(i, n):
            c = alg.key(alg.mul(invs[i], invs[j])) == alg.key(alg.mul(invs[j], invs[i]))
            table[i, j] = table[j, i] = c
    return table


def elementary_abelian_2_rank(g: ClosureGroup) -> int:
    """Largest r with an elementary abelian subgroup of order 2**r in ``g``.

    Depth-first over increasing involution indices: every such subgroup has
    a basis picked greedily by smallest index, so the ordering loses nothing.
    """
    alg = g.algebra
    invs = involutions(g)
    if not invs:
        return 0
    pos = {alg.key(x): i for i, x in enumerate(invs)}
    comm = _commute_table(invs, alg)
    best = 0

    def grow(members: set[int], basis: list[int], last: int) -> None:
        nonlocal best
        best = max(best, len(basis))
        cand = np.flatnonzero(np.all(comm[basis], axis=0)) if basis else np.arange(len(invs))
        for t in cand:
            t = int(t)
            if t <= last or t in members:
                continue
            # members hold the non-identity elements; add t and t * members
            new = {t}
            for m in members:
                new.add(pos[alg.key(alg.mul(invs[t], invs[m]))])
            grow(members | new, basis + [t], t)

    grow(set(), [], -1)
    return best


@dataclass
class PresentationCheck:
    relations: dict[str, bool]
    order: int
    expected_order: int = 48
    noncentral_involution: Any = None
    details: dict[str, str] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return (all(self.relations.values()) and self.order == self.expected_order
                and self.noncentral_involution is not None)

    def witnesses(self) -> list[str]:
        out = [f"{name}: {'ok' if good else 'FAILS'}" for name, good in self.relations.items()]
        out.append(f"|<b,c>| = {self.order} (want {self.expected_order})")
        out.append("non-central involution: " + ("found" if self.noncentral_involution is not None else "none"))
        return out


def verify_presentation_gl23(b, c, *, field: FiniteField | None = None, cap: int | None = None) -> PresentationCheck:
    """Check b^2 = c^3 = (bc)^8 = [b,(bc)^4] = [c,(bc)^4] = 1 and |<b,c>| = 48.

    The closure order rules out proper quotients of the double cover, and a
    non-central involution certifies that transpositions lift to order 2.
    """
    alg = algebra_for(b, field)
    eye = alg.key(alg.identity())

    def power(x, n):
        r = alg.identity()
        for _ in range(n):
            r = alg.mul(r, x)
        return r

    def comm(x, y):
        return alg.mul(alg.mul(alg.inv(x), alg.inv(y)), alg.mul(x, y))

    bc = alg.mul(b, c)
    z = power(bc, 4)
    rels = {
        "b^2": alg.key(power(b, 2)) == eye,
        "c^3": alg.key(power(c, 3)) == eye,
        "(bc)^8": alg.key(power(bc, 8)) == eye,
        "[b,(bc)^4]": alg.key(comm(b, z)) == eye,
        "[c,(bc)^4]": alg.key(comm(c, z)) == eye,
    }
    try:
        h = bfs_closure([b, c], cap if cap is not None else 1000, field=field)
    except ClosureExceedsCap:
        return PresentationCheck(rels, -1)
    z_keys = {alg.key(x) for x in centre(h, [b, c])}
    witness = next((x for x in involutions(h) if alg.key(x) not in z_keys), None)
    return PresentationCheck(rels, len(h), noncentral_involution=witness)
