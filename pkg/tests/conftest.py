import random
from fractions import Fraction

import pytest

from wia import QQ, qform, rat_elem


def rand_fraction(rng: random.Random, height: int = 30) -> Fraction:
    num = 0
    while num == 0:
        num = rng.randint(-height, height)
    return Fraction(num, rng.randint(1, height))


def rand_form(rng: random.Random, max_dim: int = 5, height: int = 30, min_dim: int = 1):
    dim = rng.randint(min_dim, max_dim)
    return qform(QQ, [rand_fraction(rng, height) for _ in range(dim)])


def rand_elem(rng: random.Random, height: int = 30):
    return rat_elem(rand_fraction(rng, height))


@pytest.fixture
def rng() -> random.Random:
    return random.Random(0xC0FFEE)
