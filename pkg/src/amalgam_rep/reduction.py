"""Reduction of Z[1/sqrt(-2)] matrices modulo a prime ideal above an odd p."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Literal

import numpy as np

from .errors import UnsupportedPrime, WrongContextKind
from .fields import FiniteField, PrimeField, QuadExt, check_odd_prime, legendre_minus_two, sqrt_mod
from .linalg import MatrixR
from .ring import RingElem

Sign = Literal["plus", "minus"]


@dataclass(frozen=True)
class ReductionContext:
    """Reduction data for one prime ideal.

    ``omega_image`` is the packed image of sqrt(-2): a root of -2 in GF(p)
    for split primes, the generator ``t`` of GF(p^2) for inert ones.
    """

    p: int
    kind: Literal["split", "inert"]
    sign: Sign
    omega_image: int
    field: FiniteField = field(compare=False, repr=False)

    @property
    def q(self) -> int:
        return self.field.q

    def describe(self) -> str:
        if self.kind == "split":
            return f"p={self.p} split, w -> {self.omega_image} (ideal {self.sign})"
        return f"p={self.p} inert, GF({self.p}^2) with t^2 = -2"

    def reduce_elem(self, u: RingElem) -> int:
        p = self.p
        scale = pow(pow(2, u.k, p), -1, p)
        if self.kind == "split":
            return (u.x + u.y * self.omega_image) * scale % p
        return u.x * scale % p + p * (u.y * scale % p)

    def reduce_matrix(self, m: MatrixR) -> np.ndarray:
        return np.array([[self.reduce_elem(v) for v in row] for row in m.rows], dtype=np.int64)


def make_context(p: int, sign: Sign = "plus") -> ReductionContext:
    """Context for the ideal above ``p``.

    For split primes ``sign="plus"`` sends sqrt(-2) to the least root of -2
    mod p and ``"minus"`` to the other one; at p = 3 the ideal (1 + sqrt(-2))
    is ``"minus"`` (sqrt(-2) -> 2).  Inert primes ignore ``sign``.
    """
    if int(p) == 2:
        raise UnsupportedPrime("reduction at p = 2 is not supported")
    p = check_odd_prime(p)
    if sign not in ("plus", "minus"):
        raise ValueError(f"sign must be 'plus' or 'minus', not {sign!r}")
    if legendre_minus_two(p) == "square":
        r = sqrt_mod(-2, p)
        if sign == "minus":
            r = (p - r) % p
        return ReductionContext(p, "split", sign, r, PrimeField(p))
    return ReductionContext(p, "inert", "plus", p, QuadExt(p))


def reduce_matrix(m: MatrixR, ctx: ReductionContext) -> np.ndarray:
    return ctx.reduce_matrix(m)


def check_unitary_form(g: np.ndarray, ctx: ReductionContext) -> bool:
    """``frobenius(g)^T @ g == I`` over GF(p^2)."""
    if ctx.kind != "inert":
        raise WrongContextKind("unitary form check needs an inert prime")
    fld = ctx.field
    gram = fld.mat_mul(fld.mat_frobenius(g).T.copy(), g)
    return bool(np.array_equal(gram, fld.identity(g.shape[0])))
