import random

import pytest

from wia.conic import solve_ternary


def _check(a, b, c):
    sol = solve_ternary(a, b, c)
    if sol is not None:
        x, y, z = sol
        assert (x, y, z) != (0, 0, 0)
        assert a * x * x + b * y * y + c * z * z == 0
    return sol


def test_simple_instances():
    assert _check(1, 1, -2) is not None
    assert _check(1, -1, 5) is not None
    assert _check(3, 5, -17) is not None  # 3*4 + 5*1 = 17
    assert solve_ternary(3, 5, -7) is None  # -15 is a nonresidue mod 7
    assert solve_ternary(1, 1, 1) is None
    assert solve_ternary(1, 1, 7) is None  # definite
    assert solve_ternary(1, 1, -7) is None  # 7 not a sum of two squares


def test_zero_coefficient_rejected():
    with pytest.raises(ValueError):
        solve_ternary(0, 1, -1)


def test_square_content():
    assert _check(4, 9, -13) is not None
    assert _check(18, 2, -20) is not None


def test_random_solvable(rng):
    # instances with a planted solution are always solvable
    for _ in range(300):
        a = rng.randint(1, 10**5)
        b = rng.randint(1, 10**5)
        u, v = rng.randint(1, 40), rng.randint(1, 40)
        s = a * u * u + b * v * v
        assert _check(a, b, -s) is not None, (a, b, s)


def test_large_coefficients(rng):
    for _ in range(40):
        a = rng.randint(1, 10**9)
        b = rng.randint(1, 10**9)
        u, v = rng.randint(1, 100), rng.randint(1, 100)
        s = a * u * u + b * v * v
        assert _check(a, b, -s) is not None


def test_signs_handled(rng):
    for _ in range(100):
        a = rng.randint(1, 2000)
        b = rng.randint(1, 2000)
        u, v = rng.randint(1, 20), rng.randint(1, 20)
        s = a * u * u - b * v * v
        if s == 0:
            continue
        assert _check(-a, b, s) is not None
