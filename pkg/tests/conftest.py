from __future__ import annotations

import random

import pytest
from hypothesis import strategies as st

from amalgam_rep.linalg import MatrixR, builtin_generators
from amalgam_rep.ring import RingElem

ints = st.integers(min_value=-10**6, max_value=10**6)
ring_elems = st.builds(RingElem, ints, ints, st.integers(min_value=0, max_value=12))


@pytest.fixture(scope="session")
def gens() -> dict[str, MatrixR]:
    return builtin_generators()


def random_word(rng: random.Random, gens: dict[str, MatrixR], length: int) -> MatrixR:
    m = MatrixR.identity()
    for _ in range(length):
        m = m @ gens[rng.choice("abcdf")]
    return m
