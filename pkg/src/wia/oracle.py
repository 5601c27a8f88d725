"""Independent brute-force oracles.

These deliberately know nothing about Hilbert symbols or descent: they
enumerate small candidates and check by exact arithmetic.  The test suite
plays them against the symbol-based deciders.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import product

from .exactnum import FieldElem, QQ, rat_elem


@dataclass(frozen=True)
class SearchBudget:
    height_bound: int = 50
    escalation_factor: int = 4
    max_rounds: int = 5

    def heights(self):
        h = self.height_bound
        for _ in range(self.max_rounds):
            yield h
            h *= self.escalation_factor


DEFAULT_BUDGET = SearchBudget()


def _integer_entries(form) -> list[int]:
    fractions = [e.as_fraction() for e in form.entries]
    lcm = math.lcm(*(f.denominator for f in fractions)) if fractions else 1
    return [int(f * lcm) for f in fractions]


def find_isotropic_vector(form, budget: SearchBudget = DEFAULT_BUDGET):
    """First nonnegative primitive integer vector v with sum a_i v_i^2 = 0.

    Only nonnegative coordinates are searched since the equation depends on
    v_i^2 alone.  Enumeration order: escalating height rounds; within a
    round, lexicographic over the first n-1 coordinates with the last one
    solved for.  Deterministic; None within budget is a valid outcome.
    """
    entries = _integer_entries(form)
    n = len(entries)
    if n < 2:
        return None
    if all(e > 0 for e in entries) or all(e < 0 for e in entries):
        return None
    last = entries[-1]
    prev_h = 0
    for h in budget.heights():
        for prefix in product(range(h + 1), repeat=n - 1):
            partial = sum(e * v * v for e, v in zip(entries, prefix))
            if partial % last:
                continue
            q = -partial // last
            if q < 0:
                continue
            w = math.isqrt(q)
            if w * w != q or w > h:
                continue
            vec = prefix + (w,)
            # vectors fully inside an earlier round were already reported
            if max(vec) <= prev_h:
                continue
            if math.gcd(*vec) != 1:
                continue
            return tuple(Fraction(v) for v in vec)
        prev_h = h
    return None


def _as_fraction(x) -> Fraction:
    if isinstance(x, FieldElem):
        return x.as_fraction()
    return Fraction(x)


def norm_equation(a, target, budget: SearchBudget = DEFAULT_BUDGET):
    """Search x^2 - a*y^2 = target over rationals with bounded num/den."""
    a_q = _as_fraction(a)
    t_q = _as_fraction(target)
    for h in budget.heights():
        for den in range(1, h + 1):
            rhs_base = t_q * den * den
            for q in range(h + 1):
                rhs = rhs_base + a_q * q * q
                if rhs < 0 or rhs.denominator != 1:
                    continue
                p = math.isqrt(rhs.numerator)
                if p * p == rhs.numerator and p <= h:
                    x = Fraction(p, den)
                    y = Fraction(q, den)
                    if x * x - a_q * y * y == t_q:
                        return (rat_elem(x), rat_elem(y))
        # all smaller denominators were covered in earlier rounds as well
    return None


def _descending_squares(total: int, m: int, cap: int):
    """First (lexicographically largest-leading) m-tuple of nonnegative
    integers, descending, with sum of squares = total."""
    if m == 0:
        return () if total == 0 else None
    top = min(cap, math.isqrt(total))
    for p in range(top, -1, -1):
        rest = _descending_squares(total - p * p, m - 1, p)
        if rest is not None:
            return (p,) + rest
    return None


def sum_squares_witness(q, m: int, budget: SearchBudget = DEFAULT_BUDGET):
    """Bounded search for rationals x_1 >= ... >= x_m >= 0 with sum x_i^2 = q."""
    q = _as_fraction(q)
    if q <= 0:
        return None
    for h in budget.heights():
        for den in range(1, h + 1):
            total = q * den * den
            if total.denominator != 1:
                continue
            tup = _descending_squares(total.numerator, m, total.numerator)
            if tup is not None:
                return tuple(Fraction(p, den) for p in tup)
    return None
