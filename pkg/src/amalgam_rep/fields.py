"""GF(p) and GF(p^2) = GF(p)[t]/(t^2 + 2), plus quadratic-residue helpers.

Field elements are packed into a single integer ``c0 + p*c1`` for bulk work
on numpy arrays; :class:`FieldElem` is the unpacked scalar form.  Matrices
over either field are ``int64`` arrays of packed entries.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Literal

import numpy as np

from .errors import FieldDivisionByZero, NotAResidue, NotOddPrime

MAX_PRIME = 1 << 20

Residuosity = Literal["square", "nonsquare"]


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    i = 3
    while i * i <= n:
        if n % i == 0:
            return False
        i += 2
    return True


def check_odd_prime(p: int) -> int:
    p = int(p)
    if p == 2 or not is_prime(p):
        raise NotOddPrime(f"{p} is not an odd prime")
    if p >= MAX_PRIME:
        raise NotOddPrime(f"{p} exceeds the supported limit 2**20")
    return p


def legendre_minus_two(p: int) -> Residuosity:
    """Quadratic character of -2 modulo ``p`` by Euler's criterion."""
    p = check_odd_prime(p)
    return "square" if pow(-2 % p, (p - 1) // 2, p) == 1 else "nonsquare"


def _canonical_root(r: int, p: int) -> int:
    return min(r, p - r)


def tonelli_shanks(a: int, p: int) -> int:
    """A square root of ``a`` mod ``p`` by Tonelli-Shanks (any odd prime)."""
    a %= p
    if a == 0:
        return 0
    if pow(a, (p - 1) // 2, p) != 1:
        raise NotAResidue(f"{a} is not a quadratic residue mod {p}")
    q, s = p - 1, 0
    while q % 2 == 0:
        q //= 2
        s += 1
    z = 2
    while pow(z, (p - 1) // 2, p) != p - 1:
        z += 1
    m, c, t, r = s, pow(z, q, p), pow(a, q, p), pow(a, (q + 1) // 2, p)
    while t != 1:
        i, t2 = 0, t
        while t2 != 1:
            t2 = t2 * t2 % p
            i += 1
        b = pow(c, 1 << (m - i - 1), p)
        m, c = i, b * b % p
        t, r = t * c % p, r * b % p
    return r


def sqrt_mod(a: int, p: int, *, fast: bool = True) -> int:
    """Canonical square root ``min(r, p - r)`` of a residue ``a`` mod ``p``."""
    p = check_odd_prime(p)
    a %= p
    if a == 0:
        return 0
    if pow(a, (p - 1) // 2, p) != 1:
        raise NotAResidue(f"{a} is not a quadratic residue mod {p}")
    if fast and p % 4 == 3:
        r = pow(a, (p + 1) // 4, p)
    else:
        r = tonelli_shanks(a, p)
    return _canonical_root(r, p)


@dataclass(frozen=True)
class FieldElem:
    c0: int
    c1: int = 0

    def __str__(self) -> str:
        if self.c1 == 0:
            return str(self.c0)
        if self.c0 == 0:
            return f"{self.c1}t"
        return f"{self.c0}+{self.c1}t"


class FiniteField:
    """Shared machinery for GF(p) and GF(p^2); use the concrete subclasses."""

    p: int
    q: int
    degree: int

    # --- scalar API on FieldElem --------------------------------------------

    def elem(self, c0: int, c1: int = 0) -> FieldElem:
        if self.degree == 1 and c1 % self.p:
            raise ValueError("prime field elements have no t-component")
        return FieldElem(c0 % self.p, c1 % self.p)

    def pack(self, x: FieldElem) -> int:
        return x.c0 + self.p * x.c1

    def unpack(self, e: int) -> FieldElem:
        return FieldElem(int(e) % self.p, int(e) // self.p)

    def add(self, x: FieldElem, y: FieldElem) -> FieldElem:
        return self.elem(x.c0 + y.c0, x.c1 + y.c1)

    def neg(self, x: FieldElem) -> FieldElem:
        return self.elem(-x.c0, -x.c1)

    def mul(self, x: FieldElem, y: FieldElem) -> FieldElem:
        return self.unpack(self.mul_packed(self.pack(x), self.pack(y)))

    def inv(self, x: FieldElem) -> FieldElem:
        return self.unpack(self.inv_packed(self.pack(x)))

    def pow(self, x: FieldElem, n: int) -> FieldElem:
        result, base = self.one_elem(), x
        while n:
            if n & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            n >>= 1
        return result

    def frobenius(self, x: FieldElem) -> FieldElem:
        return self.unpack(self.frob_packed(self.pack(x)))

    def one_elem(self) -> FieldElem:
        return FieldElem(1, 0)

    def elements(self):
        return [self.unpack(e) for e in range(self.q)]

    # --- packed scalars -----------------------------------------------------

    def mul_packed(self, u: int, v: int) -> int:
        raise NotImplementedError

    def inv_packed(self, u: int) -> int:
        raise NotImplementedError

    def frob_packed(self, u: int) -> int:
        return u

    def from_int(self, n: int) -> int:
        return n % self.p

    # --- packed matrices ----------------------------------------------------

    def identity(self, n: int = 5) -> np.ndarray:
        return np.eye(n, dtype=np.int64)

    def mat_mul(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        raise NotImplementedError

    def mat_frobenius(self, a: np.ndarray) -> np.ndarray:
        return a

    def mat_det(self, a: np.ndarray) -> int:
        """Determinant by Gaussian elimination (packed result)."""
        m = [[int(v) for v in row] for row in a]
        n = len(m)
        det = 1
        for col in range(n):
            piv = next((r for r in range(col, n) if m[r][col]), None)
            if piv is None:
                return 0
            if piv != col:
                m[col], m[piv] = m[piv], m[col]
                det = self.neg_packed(det)
            det = self.mul_packed(det, m[col][col])
            inv = self.inv_packed(m[col][col])
            for r in range(col + 1, n):
                if m[r][col]:
                    f = self.mul_packed(m[r][col], inv)
                    m[r] = [self.sub_packed(x, self.mul_packed(f, y)) for x, y in zip(m[r], m[col])]
        return det

    def mat_inv(self, a: np.ndarray) -> np.ndarray:
        n = a.shape[0]
        m = [[int(v) for v in row] + [1 if i == j else 0 for j in range(n)] for i, row in enumerate(a)]
        for col in range(n):
            piv = next((r for r in range(col, n) if m[r][col]), None)
            if piv is None:
                raise FieldDivisionByZero("singular matrix")
            m[col], m[piv] = m[piv], m[col]
            inv = self.inv_packed(m[col][col])
            m[col] = [self.mul_packed(inv, x) for x in m[col]]
            for r in range(n):
                if r != col and m[r][col]:
                    f = m[r][col]
                    m[r] = [self.sub_packed(x, self.mul_packed(f, y)) for x, y in zip(m[r], m[col])]
        return np.array([row[n:] for row in m], dtype=np.int64)

    def neg_packed(self, u: int) -> int:
        p = self.p
        return (-(u % p)) % p + p * ((-(u // p)) % p)

    def add_packed(self, u: int, v: int) -> int:
        p = self.p
        return (u % p + v % p) % p + p * ((u // p + v // p) % p)

    def sub_packed(self, u: int, v: int) -> int:
        return self.add_packed(u, self.neg_packed(v))

    def scalar_matrix(self, lam: int, n: int = 5) -> np.ndarray:
        return np.eye(n, dtype=np.int64) * int(lam)

    def mat_order(self, a: np.ndarray, cap: int = 10_000) -> int:
        eye = self.identity(a.shape[0])
        power = a.copy()
        for n in range(1, cap + 1):
            if np.array_equal(power, eye):
                return n
            power = self.mat_mul(power, a)
        raise ValueError(f"order exceeds {cap}")

    def roots_of_unity(self, n: int) -> list[int]:
        """Packed field elements ``z`` with ``z**n == 1``."""
        return [e for e in range(1, self.q) if self._pow_packed(e, n) == 1]

    def _pow_packed(self, u: int, n: int) -> int:
        result = 1
        while n:
            if n & 1:
                result = self.mul_packed(result, u)
            u = self.mul_packed(u, u)
            n >>= 1
        return result


class PrimeField(FiniteField):
    """GF(p) for an odd prime p."""

    def __init__(self, p: int) -> None:
        self.p = check_odd_prime(p)
        self.q = self.p
        self.degree = 1

    def mul_packed(self, u: int, v: int) -> int:
        return u * v % self.p

    def inv_packed(self, u: int) -> int:
        if u % self.p == 0:
            raise FieldDivisionByZero(f"0 has no inverse in GF({self.p})")
        return pow(u, -1, self.p)

    def neg_packed(self, u: int) -> int:
        return -u % self.p

    def add_packed(self, u: int, v: int) -> int:
        return (u + v) % self.p

    def mat_mul(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        return (a @ b) % self.p

    def __repr__(self) -> str:
        return f"PrimeField({self.p})"


class QuadExt(FiniteField):
    """GF(p^2) as GF(p)[t]/(t^2 + 2); requires -2 to be a non-residue."""

    def __init__(self, p: int) -> None:
        self.p = check_odd_prime(p)
        if legendre_minus_two(self.p) != "nonsquare":
            raise ValueError(f"t^2 + 2 is reducible over GF({p})")
        self.q = self.p * self.p
        self.degree = 2

    def mul_packed(self, u: int, v: int) -> int:
        p = self.p
        a0, a1 = u % p, u // p
        b0, b1 = v % p, v // p
        return (a0 * b0 - 2 * a1 * b1) % p + p * ((a0 * b1 + a1 * b0) % p)

    def inv_packed(self, u: int) -> int:
        p = self.p
        a0, a1 = u % p, u // p
        norm = (a0 * a0 + 2 * a1 * a1) % p
        if norm == 0:
            raise FieldDivisionByZero(f"0 has no inverse in GF({p}^2)")
        ninv = pow(norm, -1, p)
        return a0 * ninv % p + p * (-a1 * ninv % p)

    def frob_packed(self, u: int) -> int:
        # t**p = t * (-2)**((p-1)/2) = -t because -2 is a non-residue
        p = self.p
        return u % p + p * (-(u // p) % p)

    def mat_mul(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        p = self.p
        a0, a1 = a % p, a // p
        b0, b1 = b % p, b // p
        c0 = (a0 @ b0 - 2 * (a1 @ b1)) % p
        c1 = (a0 @ b1 + a1 @ b0) % p
        return c0 + p * c1

    def mat_frobenius(self, a: np.ndarray) -> np.ndarray:
        p = self.p
        return a % p + p * ((-(a // p)) % p)

    def __repr__(self) -> str:
        return f"QuadExt({self.p})"


def field_for_prime(p: int) -> FiniteField:
    """GF(p) when -2 is a square mod p, else GF(p^2)."""
    return PrimeField(p) if legendre_minus_two(p) == "square" else QuadExt(p)
