"""Exact square matrices over Z[1/sqrt(-2)].

The determinant and characteristic polynomial are computed with Berkowitz's
division-free recurrence, which is valid over any commutative ring; the
coefficient ring here has no inverses of 3 or 5, so trace-power methods are
ruled out.
"""

from __future__ import annotations

from pathlib import Path
from typing import Iterable, Sequence

from .errors import NonUnitConstantTerm, OrderExceedsCap
from .ring import ONE, ZERO, RingElem

DEFAULT_ORDER_CAP = 64


class MatrixR:
    """Immutable n x n matrix with RingElem entries."""

    __slots__ = ("rows", "_key")

    def __init__(self, rows: Iterable[Iterable[RingElem | int]]) -> None:
        rows = tuple(tuple(RingElem.coerce(v) for v in row) for row in rows)
        n = len(rows)
        if n == 0 or any(len(r) != n for r in rows):
            raise ValueError("matrix must be square and non-empty")
        self.rows = rows
        self._key = None

    @classmethod
    def identity(cls, n: int = 5) -> MatrixR:
        return cls([[ONE if i == j else ZERO for j in range(n)] for i in range(n)])

    @property
    def n(self) -> int:
        return len(self.rows)

    def __getitem__(self, ij: tuple[int, int]) -> RingElem:
        i, j = ij
        return self.rows[i][j]

    def __matmul__(self, other: MatrixR) -> MatrixR:
        cols = list(zip(*other.rows))
        out = []
        for row in self.rows:
            out_row = []
            for col in cols:
                acc = ZERO
                for a, b in zip(row, col):
                    if a.x or a.y:
                        if b.x or b.y:
                            acc = acc + a * b
                out_row.append(acc)
            out.append(out_row)
        return MatrixR(out)

    __mul__ = __matmul__

    def __pow__(self, e: int) -> MatrixR:
        if e < 0:
            return self.adjoint() ** (-e)
        result, base = MatrixR.identity(self.n), self
        while e:
            if e & 1:
                result = result @ base
            base = base @ base
            e >>= 1
        return result

    def adjoint(self) -> MatrixR:
        """Conjugate transpose."""
        return MatrixR([[v.conj() for v in col] for col in zip(*self.rows)])

    inv = adjoint  # valid for the unitary matrices this package handles

    def transpose(self) -> MatrixR:
        return MatrixR(zip(*self.rows))

    def scale(self, s: RingElem | int) -> MatrixR:
        s = RingElem.coerce(s)
        return MatrixR([[s * v for v in row] for row in self.rows])

    def __add__(self, other: MatrixR) -> MatrixR:
        return MatrixR([[u + v for u, v in zip(r, s)] for r, s in zip(self.rows, other.rows)])

    def __sub__(self, other: MatrixR) -> MatrixR:
        return MatrixR([[u - v for u, v in zip(r, s)] for r, s in zip(self.rows, other.rows)])

    def is_identity(self) -> bool:
        return all(
            v == (ONE if i == j else ZERO)
            for i, row in enumerate(self.rows)
            for j, v in enumerate(row)
        )

    def is_zero(self) -> bool:
        return all(v.is_zero() for row in self.rows for v in row)

    def is_unitary(self) -> bool:
        return (self @ self.adjoint()).is_identity()

    def det(self) -> RingElem:
        return mat_det(self)

    def key(self) -> bytes:
        """Canonical byte encoding used to index closures."""
        if self._key is None:
            self._key = ";".join(
                " ".join(v.serialize() for v in row) for row in self.rows
            ).encode()
        return self._key

    def __eq__(self, other) -> bool:
        if not isinstance(other, MatrixR):
            return NotImplemented
        return self.rows == other.rows

    def __hash__(self) -> int:
        return hash(self.key())

    def serialize(self) -> str:
        return "\n".join(", ".join(v.serialize() for v in row) for row in self.rows)

    def __repr__(self) -> str:
        return "MatrixR([" + ", ".join(
            "[" + ", ".join(str(v) for v in row) + "]" for row in self.rows
        ) + "])"


# --- polynomials -------------------------------------------------------------


class CharPoly:
    """Monic polynomial with RingElem coefficients, lowest degree first."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Sequence[RingElem | int]) -> None:
        coeffs = [RingElem.coerce(c) for c in coeffs]
        while len(coeffs) > 1 and coeffs[-1].is_zero():
            coeffs.pop()
        self.coeffs = tuple(coeffs)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __eq__(self, other) -> bool:
        if not isinstance(other, CharPoly):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __mul__(self, other: CharPoly) -> CharPoly:
        out = [ZERO] * (self.degree + other.degree + 1)
        for i, u in enumerate(self.coeffs):
            for j, v in enumerate(other.coeffs):
                out[i + j] = out[i + j] + u * v
        return CharPoly(out)

    def __call__(self, x: RingElem | int) -> RingElem:
        acc = ZERO
        for c in reversed(self.coeffs):
            acc = acc * RingElem.coerce(x) + c
        return acc

    def eval_matrix(self, m: MatrixR) -> MatrixR:
        """Horner evaluation at a matrix argument."""
        n = m.n
        acc = MatrixR([[ZERO] * n for _ in range(n)])
        eye = MatrixR.identity(n)
        for c in reversed(self.coeffs):
            acc = acc @ m + eye.scale(c)
        return acc

    def __repr__(self) -> str:
        return f"CharPoly([{', '.join(str(c) for c in self.coeffs)}])"

    def __str__(self) -> str:
        terms = []
        for i in range(self.degree, -1, -1):
            c = self.coeffs[i]
            if c.is_zero():
                continue
            mono = "" if i == 0 else ("x" if i == 1 else f"x^{i}")
            if not mono:
                terms.append(f"({c})")
            elif c == ONE:
                terms.append(mono)
            else:
                terms.append(f"({c})*{mono}")
        return " + ".join(terms) or "0"


def poly_from_roots(*roots: RingElem | int) -> CharPoly:
    """``prod (x - r)`` for the given roots."""
    p = CharPoly([ONE])
    for r in roots:
        p = p * CharPoly([-RingElem.coerce(r), ONE])
    return p


def _berkowitz(rows: Sequence[Sequence[RingElem]]) -> list[RingElem]:
    # Coefficients of det(xI - A), highest degree first.
    n = len(rows)
    poly = [ONE, -rows[0][0]]
    for k in range(1, n):
        # leading (k+1)x(k+1) block = [[M, S], [R, a]]
        a = rows[k][k]
        col_s = [rows[i][k] for i in range(k)]
        row_r = rows[k][:k]
        toeplitz = [ONE, -a]
        vec = col_s
        for _ in range(k):
            toeplitz.append(-sum((r * v for r, v in zip(row_r, vec)), ZERO))
            vec = [sum((rows[i][j] * vec[j] for j in range(k)), ZERO) for i in range(k)]
        new = []
        for i in range(k + 2):
            acc = ZERO
            for j in range(min(i + 1, k + 1)):
                acc = acc + toeplitz[i - j] * poly[j]
            new.append(acc)
        poly = new
    return poly


def char_poly(m: MatrixR) -> CharPoly:
    """Characteristic polynomial ``det(xI - m)``, division-free."""
    return CharPoly(list(reversed(_berkowitz(m.rows))))


def mat_det(m: MatrixR) -> RingElem:
    const = _berkowitz(m.rows)[-1]
    return const if m.n % 2 == 0 else -const


def mat_mul(m: MatrixR, n: MatrixR) -> MatrixR:
    return m @ n


def adjoint(m: MatrixR) -> MatrixR:
    return m.adjoint()


def element_order(m: MatrixR, cap: int = DEFAULT_ORDER_CAP) -> int:
    """Least ``n >= 1`` with ``m**n == I``; raises OrderExceedsCap past ``cap``."""
    if cap < 1:
        raise ValueError("cap must be >= 1")
    power = m
    for n in range(1, cap + 1):
        if power.is_identity():
            return n
        power = power @ m
    raise OrderExceedsCap(cap)


def is_self_reciprocal(p: CharPoly) -> bool:
    """True iff ``x**deg * p(1/x) == +-p(x)`` coefficientwise.

    A false result means the root multiset is not closed under inversion.
    """
    c0 = p.coeffs[0]
    if c0 != ONE and c0 != -ONE:
        raise NonUnitConstantTerm(f"constant term {c0} is not +-1")
    rev = tuple(reversed(p.coeffs))
    return rev == p.coeffs or rev == tuple(-c for c in p.coeffs)


# --- the built-in generators -------------------------------------------------


def _r(x: int, y: int = 0, k: int = 0) -> RingElem:
    return RingElem(x, y, k)


def builtin_generators() -> dict[str, MatrixR]:
    """The matrices a, b, c, d of the representation and the 5-cycle f."""
    o, one, neg = _r(0), _r(1), _r(-1)
    half, mhalf = _r(1, 0, 1), _r(-1, 0, 1)
    inv_w = _r(0, -1, 1)  # 1/w = -w/2
    a = MatrixR([
        [neg, o, o, o, o],
        [o, neg, o, o, o],
        [o, o, one, o, o],
        [o, o, o, o, neg],
        [o, o, o, one, o],
    ])
    b = MatrixR([
        [neg, o, o, o, o],
        [o, one, o, o, o],
        [o, o, one, o, o],
        [o, o, o, one, o],
        [o, o, o, o, neg],
    ])
    c = MatrixR([
        [half, mhalf, -inv_w, o, o],
        [half, mhalf, inv_w, o, o],
        [inv_w, inv_w, o, o, o],
        [o, o, o, _r(-1, -1, 1), mhalf],
        [o, o, o, half, _r(-1, 1, 1)],
    ])
    d = MatrixR([
        [o, o, o, one, o],
        [o, mhalf, _r(-1, -1, 1), o, o],
        [o, _r(1, -1, 1), mhalf, o, o],
        [o, o, o, o, one],
        [one, o, o, o, o],
    ])
    f = MatrixR([
        [o, one, o, o, o],
        [o, o, one, o, o],
        [o, o, o, one, o],
        [o, o, o, o, one],
        [one, o, o, o, o],
    ])
    return {"a": a, "b": b, "c": c, "d": d, "f": f}


# --- fixture files -----------------------------------------------------------

GENERATOR_NAMES = ("a", "b", "c", "d", "f")


def dump_generators(mats: dict[str, MatrixR]) -> str:
    blocks = [f"# {name}\n{m.serialize()}\n" for name, m in mats.items()]
    return "\n".join(blocks)


def load_generators(text: str) -> dict[str, MatrixR]:
    """Parse blocks of ``# name`` followed by rows of ``x,y,k`` triples."""
    mats: dict[str, MatrixR] = {}
    name, rows = None, []

    def flush():
        if name is None:
            if rows:
                raise ValueError("matrix rows before any '# name' header")
            return
        mats[name] = MatrixR(rows)

    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.strip()
        if not line:
            continue
        if line.startswith("#"):
            flush()
            name, rows = line[1:].strip(), []
            continue
        try:
            rows.append([RingElem.parse(t) for t in line.split(", ")])
        except ValueError as exc:
            raise ValueError(f"line {lineno}: {exc}") from None
    flush()
    return mats


def write_generators(path: str | Path, mats: dict[str, MatrixR] | None = None) -> None:
    Path(path).write_text(dump_generators(mats or builtin_generators()), encoding="utf-8")


def read_generators(path: str | Path) -> dict[str, MatrixR]:
    return load_generators(Path(path).read_text(encoding="utf-8"))
