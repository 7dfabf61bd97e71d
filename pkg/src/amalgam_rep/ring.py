"""Exact arithmetic in Z[1/sqrt(-2)].

Every element is stored as ``(x + y*w) / 2**k`` with ``w**2 == -2``.  Since
``1/w == -w/2`` the only denominators ever needed are powers of two, so the
whole ring lives on integer triples with a trivial canonical form: ``k`` is
lowered until ``x`` or ``y`` is odd (or ``k`` hits zero).
"""

from __future__ import annotations

from fractions import Fraction


def _normalize(x: int, y: int, k: int) -> tuple[int, int, int]:
    if k < 0:
        raise ValueError("denominator exponent must be non-negative")
    while k and not (x & 1) and not (y & 1):
        x >>= 1
        y >>= 1
        k -= 1
    return x, y, k


class RingElem:
    """Immutable element ``(x + y*w) / 2**k`` of Z[1/sqrt(-2)]."""

    __slots__ = ("x", "y", "k")

    x: int
    y: int
    k: int

    def __init__(self, x: int = 0, y: int = 0, k: int = 0) -> None:
        x, y, k = _normalize(int(x), int(y), int(k))
        object.__setattr__(self, "x", x)
        object.__setattr__(self, "y", y)
        object.__setattr__(self, "k", k)

    def __setattr__(self, name, value):
        raise AttributeError("RingElem is immutable")

    @classmethod
    def coerce(cls, v: RingElem | int) -> RingElem:
        if isinstance(v, RingElem):
            return v
        if isinstance(v, int):
            return cls(v)
        raise TypeError(f"cannot coerce {type(v).__name__} to RingElem")

    @property
    def triple(self) -> tuple[int, int, int]:
        return (self.x, self.y, self.k)

    # --- arithmetic ---------------------------------------------------------

    def __add__(self, other):
        if isinstance(other, int):
            other = RingElem(other)
        elif not isinstance(other, RingElem):
            return NotImplemented
        k = max(self.k, other.k)
        s, t = k - self.k, k - other.k
        return RingElem((self.x << s) + (other.x << t), (self.y << s) + (other.y << t), k)

    __radd__ = __add__

    def __neg__(self) -> RingElem:
        return RingElem(-self.x, -self.y, self.k)

    def __sub__(self, other):
        if isinstance(other, int):
            other = RingElem(other)
        elif not isinstance(other, RingElem):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            return RingElem(self.x * other, self.y * other, self.k)
        if not isinstance(other, RingElem):
            return NotImplemented
        # (x1 + y1 w)(x2 + y2 w) = x1 x2 - 2 y1 y2 + (x1 y2 + y1 x2) w
        x = self.x * other.x - 2 * self.y * other.y
        y = self.x * other.y + self.y * other.x
        return RingElem(x, y, self.k + other.k)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> RingElem:
        if n < 0:
            raise ValueError("negative powers are not supported")
        result, base = ONE, self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def conj(self) -> RingElem:
        """Complex conjugate, ``w -> -w``."""
        return RingElem(self.x, -self.y, self.k)

    def norm(self) -> Fraction:
        """``u * conj(u)`` as a non-negative rational."""
        return Fraction(self.x * self.x + 2 * self.y * self.y, 1 << (2 * self.k))

    # --- predicates ---------------------------------------------------------

    def is_zero(self) -> bool:
        return self.x == 0 and self.y == 0

    def is_rational(self) -> bool:
        return self.y == 0

    def rational(self) -> Fraction:
        if self.y:
            raise ValueError(f"{self} is not rational")
        return Fraction(self.x, 1 << self.k)

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = RingElem(other)
        if not isinstance(other, RingElem):
            return NotImplemented
        return self.x == other.x and self.y == other.y and self.k == other.k

    def __hash__(self) -> int:
        return hash((self.x, self.y, self.k))

    def __bool__(self) -> bool:
        return not self.is_zero()

    # --- text forms ---------------------------------------------------------

    def serialize(self) -> str:
        """The fixture encoding ``"x,y,k"``."""
        return f"{self.x},{self.y},{self.k}"

    @classmethod
    def parse(cls, text: str) -> RingElem:
        parts = text.strip().split(",")
        if len(parts) != 3:
            raise ValueError(f"expected 'x,y,k', got {text!r}")
        x, y, k = (int(p) for p in parts)
        elem = cls(x, y, k)
        if elem.triple != (x, y, k):
            raise ValueError(f"{text!r} is not in canonical form")
        return elem

    def __repr__(self) -> str:
        return f"RingElem({self.x}, {self.y}, {self.k})"

    def __str__(self) -> str:
        if self.y == 0:
            num = str(self.x)
        elif self.x == 0:
            num = f"{self.y}w"
        else:
            num = f"{self.x}{self.y:+d}w"
        if self.k == 0:
            return num
        if self.x and self.y:
            num = f"({num})"
        return f"{num}/{1 << self.k}"


ZERO = RingElem(0)
ONE = RingElem(1)
OMEGA = RingElem(0, 1)
HALF = RingElem(1, 0, 1)


def ring_canonicalize(x: int, y: int, k: int) -> RingElem:
    return RingElem(x, y, k)


def ring_add(u: RingElem, v: RingElem) -> RingElem:
    return u + v


def ring_mul(u: RingElem, v: RingElem) -> RingElem:
    return u * v


def ring_conj(u: RingElem) -> RingElem:
    return u.conj()
