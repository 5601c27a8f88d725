from fractions import Fraction

from wia import QQ, SearchBudget, qform
from wia.oracle import find_isotropic_vector, norm_equation, sum_squares_witness


def test_find_isotropic_basics():
    assert find_isotropic_vector(qform(QQ, [1, -1])) == (1, 1)
    assert find_isotropic_vector(qform(QQ, [1, 1, -2])) == (1, 1, 1)
    # 4 + 1 + 1 + 1 = 7; the first witness in prefix-lexicographic order
    vec = find_isotropic_vector(qform(QQ, [1, 1, 1, 1, -7]))
    assert vec == (1, 1, 1, 2, 1)
    assert sum(v * v for v in vec[:4]) == 7 * vec[4] ** 2


def test_find_isotropic_none_on_definite():
    assert find_isotropic_vector(qform(QQ, [1, 2, 3])) is None
    assert find_isotropic_vector(qform(QQ, [-1, -1])) is None
    assert find_isotropic_vector(qform(QQ, [5])) is None


def test_find_isotropic_respects_budget():
    tiny = SearchBudget(height_bound=2, escalation_factor=2, max_rounds=1)
    # <1,1,-7> anisotropic; <1,-19> needs height >= ... none within 2 rounds
    assert find_isotropic_vector(qform(QQ, [1, 1, -7]), tiny) is None


def test_find_isotropic_verifies():
    form = qform(QQ, [Fraction(1, 3), Fraction(-3, 4)])
    vec = find_isotropic_vector(form)
    total = sum(e.as_fraction() * v * v for e, v in zip(form.entries, vec))
    assert total == 0 and any(vec)


def test_norm_equation_examples():
    x, y = norm_equation(2, 18)
    assert x.as_fraction() == 6 and y.as_fraction() == 3
    x, y = norm_equation(5, 1)
    assert (x.as_fraction(), y.as_fraction()) == (1, 0)
    # 7 = 9 - 2: representable, small witness
    x, y = norm_equation(2, 7)
    assert x.as_fraction() ** 2 - 2 * y.as_fraction() ** 2 == 7
    x, y = norm_equation(2, -1)
    assert (x.as_fraction(), y.as_fraction()) == (1, 1)
    x, y = norm_equation(-1, 5, SearchBudget(4, 2, 1))  # 4 + 1
    assert (x.as_fraction(), y.as_fraction()) == (2, 1)


def test_norm_equation_absent():
    tiny = SearchBudget(height_bound=10, escalation_factor=2, max_rounds=1)
    # x^2 + y^2 = -3 has no real solutions at all
    assert norm_equation(-1, -3, tiny) is None


def test_sum_squares_witness():
    assert sum_squares_witness(7, 4) == (2, 1, 1, 1)
    assert sum_squares_witness(2, 2) == (1, 1)
    assert sum_squares_witness(1, 1) == (1,)
    assert sum_squares_witness(-3, 4) is None
    w = sum_squares_witness(Fraction(7, 4), 4)
    assert sum(x * x for x in w) == Fraction(7, 4)
    tiny = SearchBudget(height_bound=3, escalation_factor=2, max_rounds=1)
    assert sum_squares_witness(7, 3, tiny) is None
