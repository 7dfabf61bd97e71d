import random

import numpy as np
import pytest

from amalgam_rep.errors import FieldDivisionByZero, NotAResidue, NotOddPrime
from amalgam_rep.fields import (
    PrimeField,
    QuadExt,
    check_odd_prime,
    field_for_prime,
    is_prime,
    legendre_minus_two,
    sqrt_mod,
    tonelli_shanks,
)

PRIMES_1000 = [p for p in range(3, 1000) if all(p % d for d in range(2, int(p ** 0.5) + 1))]
TEST_PRIMES = [3, 5, 7, 11, 17, 19, 41, 73, 97, 113, 257, 65537, 1000003]


def test_prime_list():
    assert PRIMES_1000[:5] == [3, 5, 7, 11, 13] and len(PRIMES_1000) == 167
    assert all(is_prime(p) for p in PRIMES_1000)
    assert not any(is_prime(n) for n in (1, 9, 15, 561, 1001))


def test_legendre_against_exhaustive_search():
    for p in PRIMES_1000:
        squares = {x * x % p for x in range(1, p)}
        expected = "square" if (-2) % p in squares else "nonsquare"
        assert legendre_minus_two(p) == expected, p
        assert (expected == "square") == (p % 8 in (1, 3))


def test_legendre_examples():
    assert legendre_minus_two(11) == "square"
    assert legendre_minus_two(5) == "nonsquare"
    assert legendre_minus_two(3) == "square"


def test_sqrt_examples():
    assert sqrt_mod(-2, 11) == 3
    assert sqrt_mod(-2, 3) == 1
    assert sqrt_mod(2, 7) == 3


@pytest.mark.parametrize("p", TEST_PRIMES)
@pytest.mark.parametrize("fast", [True, False])
def test_sqrt_random_residues(p, fast):
    rng = random.Random(p)
    for _ in range(100):
        a = rng.randrange(1, p) ** 2 % p
        r = sqrt_mod(a, p, fast=fast)
        assert r * r % p == a and r <= p - r


def test_general_path_on_1_mod_8():
    for p in (17, 41, 73, 97, 113, 257, 65537):
        for a in range(1, 60):
            a %= p
            if pow(a, (p - 1) // 2, p) == 1:
                r = tonelli_shanks(a, p)
                assert r * r % p == a


def test_not_a_residue():
    with pytest.raises(NotAResidue):
        sqrt_mod(-2, 5)


def test_prime_checks():
    with pytest.raises(NotOddPrime):
        check_odd_prime(9)
    with pytest.raises(NotOddPrime):
        check_odd_prime(2)
    with pytest.raises(NotOddPrime):
        check_odd_prime(1048583)  # prime above 2^20


def test_gf25_examples():
    F = QuadExt(5)
    t = F.elem(0, 1)
    assert F.mul(t, t) == F.elem(3)
    assert F.frobenius(t) == F.elem(0, 4)
    assert F.pow(t, 5) == F.frobenius(t)


def test_inverse_in_gf7():
    F = PrimeField(7)
    assert F.inv(F.elem(2)) == F.elem(4)
    with pytest.raises(FieldDivisionByZero):
        F.inv(F.elem(0))
    with pytest.raises(ZeroDivisionError):
        QuadExt(5).inv(QuadExt(5).elem(0))


def test_quad_ext_requires_nonresidue():
    with pytest.raises(ValueError):
        QuadExt(11)
    assert isinstance(field_for_prime(11), PrimeField)
    assert isinstance(field_for_prime(13), QuadExt)


@pytest.mark.parametrize("p", [5, 7, 13])
def test_quad_ext_field_axioms(p):
    F = QuadExt(p)
    elems = list(F.elements())
    assert len(elems) == p * p
    rng = random.Random(p)
    for _ in range(300):
        x, y, z = (rng.choice(elems) for _ in range(3))
        assert F.mul(x, F.add(y, z)) == F.add(F.mul(x, y), F.mul(x, z))
        assert F.mul(F.mul(x, y), z) == F.mul(x, F.mul(y, z))
        if x != F.elem(0):
            assert F.mul(x, F.inv(x)) == F.one_elem()
        assert F.frobenius(x) == F.pow(x, p)
        assert F.frobenius(F.mul(x, y)) == F.mul(F.frobenius(x), F.frobenius(y))
        assert F.frobenius(F.frobenius(x)) == x
    fixed = [x for x in elems if F.frobenius(x) == x]
    assert fixed == [F.elem(c) for c in range(p)]


@pytest.mark.parametrize("p", [3, 5, 7, 11])
def test_matrix_inverse_and_det(p):
    F = field_for_prime(p)
    rng = np.random.default_rng(p)
    for _ in range(10):
        m = rng.integers(0, F.q, size=(5, 5))
        det = F.mat_det(m)
        if det == 0:
            continue
        inv = F.mat_inv(m)
        assert np.array_equal(F.mat_mul(m, inv), F.identity())
        assert F.mul_packed(det, F.mat_det(inv)) == 1
