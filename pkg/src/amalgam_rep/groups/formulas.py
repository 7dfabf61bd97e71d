"""Orders of the special linear and special unitary groups."""

from __future__ import annotations

from dataclasses import dataclass
from math import prod
from typing import Literal

Family = Literal["SL", "SU"]


def _prime_power(q: int) -> bool:
    if q < 2:
        return False
    p = next(d for d in range(2, q + 1) if q % d == 0)
    while q % p == 0:
        q //= p
    return q == 1


@dataclass(frozen=True)
class GroupOrderTarget:
    family: Family
    n: int
    q: int
    value: int

    def __str__(self) -> str:
        return f"|{self.family}({self.n},{self.q})| = {self.value}"


def group_order_formula(family: Family, n: int, q: int) -> GroupOrderTarget:
    """``|SL(n,q)|`` or ``|SU(n,q)|`` (the latter realized over GF(q^2))."""
    if family not in ("SL", "SU"):
        raise ValueError(f"unknown family {family!r}")
    if n < 1 or not _prime_power(q):
        raise ValueError(f"need n >= 1 and a prime power q, got n={n}, q={q}")
    if family == "SL":
        value = q ** (n * (n - 1) // 2) * prod(q ** i - 1 for i in range(2, n + 1))
    else:
        value = q ** (n * (n - 1) // 2) * prod(q ** i - (-1) ** i for i in range(2, n + 1))
    return GroupOrderTarget(family, n, q, value)
