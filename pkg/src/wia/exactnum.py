"""Exact arithmetic over Q and quadratic fields Q(sqrt d), plus the local
number theory (Legendre and Hilbert symbols, sums of squares) that the
quadratic-form machinery stands on.

Conventions:
  * rationals are `fractions.Fraction` (always reduced, denominator > 0);
  * a quadratic field element is a + b*sqrt(d) with a, b rational;
  * every sign comparison is exact case analysis, never floating point.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import sympy

from .errors import (
    BadPrime,
    MixedFields,
    OrderingMismatch,
    ZeroElement,
)

Rational = Fraction


# ---------------------------------------------------------------------------
# integer helpers

_FACTOR_CACHE: dict[int, tuple[tuple[int, int], ...]] = {}


def factorization(n: int) -> tuple[tuple[int, int], ...]:
    """Prime factorization of n >= 1 as a sorted tuple of (p, exponent)."""
    if n < 1:
        raise ValueError("factorization expects a positive integer")
    got = _FACTOR_CACHE.get(n)
    if got is None:
        got = tuple(sorted(sympy.factorint(n).items()))
        _FACTOR_CACHE[n] = got
    return got


def register_factorization(n: int, factors) -> None:
    """Seed the factor cache with an externally-known factorization."""
    _FACTOR_CACHE.setdefault(n, tuple(sorted(factors)))


def squarefree_product(x: int, y: int) -> int:
    """Squarefree part of x*y for x, y themselves squarefree.

    Never factors the product: x/g and y/g are coprime for g = gcd(x, y),
    so their product is squarefree by construction, and its factorization
    is seeded into the cache from the factors of x and y.
    """
    if x == 1:
        return y
    if y == 1:
        return x
    if x == -1:
        return -y
    if y == -1:
        return -x
    g = math.gcd(abs(x), abs(y))
    xs, ys = abs(x) // g, abs(y) // g
    sign = -1 if (x < 0) != (y < 0) else 1
    out = xs * ys
    if out > 1 and out not in _FACTOR_CACHE:
        common = {p for p, _ in factorization(g)}
        primes = {p for p, _ in factorization(abs(x))} | {
            p for p, _ in factorization(abs(y))
        }
        register_factorization(out, ((p, 1) for p in primes - common))
    return sign * out


def is_square_int(n: int) -> bool:
    return n >= 0 and math.isqrt(n) ** 2 == n


def squarefree_part(n: int) -> int:
    """The squarefree s with n = s*m^2; s carries the sign of n."""
    if n == 0:
        raise ZeroElement("0 has no squarefree part")
    sign = -1 if n < 0 else 1
    s = 1
    for p, e in factorization(abs(n)):
        if e % 2:
            s *= p
    return sign * s


def square_part_root(n: int) -> int:
    """The largest m with m^2 | n, for n >= 1."""
    if n < 1:
        raise ValueError("square_part_root expects a positive integer")
    m = 1
    for p, e in factorization(n):
        m *= p ** (e // 2)
    return m


def is_squarefree(n: int) -> bool:
    return n != 0 and abs(n) == abs(squarefree_part(n))


def rational_sign(q: Fraction) -> int:
    return (q > 0) - (q < 0)


def valuation(q: Fraction, p: int) -> int:
    """p-adic valuation of a nonzero rational."""
    if q == 0:
        raise ZeroElement("valuation of 0")
    v = 0
    n = q.numerator
    while n % p == 0:
        n //= p
        v += 1
    d = q.denominator
    while d % p == 0:
        d //= p
        v -= 1
    return v


def unit_residue(q: Fraction, modulus: int) -> int:
    """q mod `modulus` for q a unit at every prime of the modulus.

    Works for rationals: num * den^{-1} mod modulus.
    """
    n = q.numerator % modulus
    d = q.denominator % modulus
    return n * pow(d, -1, modulus) % modulus


# ---------------------------------------------------------------------------
# base fields

@dataclass(frozen=True)
class BaseField:
    """Q (d is None) or the quadratic field Q(sqrt d), d squarefree, != 0, 1."""

    d: int | None = None

    def __post_init__(self):
        if self.d is not None:
            if self.d in (0, 1):
                raise ValueError("quadratic field needs d != 0, 1")
            if not is_squarefree(self.d):
                raise ValueError(f"d = {self.d} is not squarefree")

    @property
    def is_rational(self) -> bool:
        return self.d is None

    @property
    def is_real(self) -> bool:
        return self.d is None or self.d > 0

    def orderings(self) -> tuple["Ordering", ...]:
        if self.d is None:
            return (Ordering(self, 1),)
        if self.d > 0:
            return (Ordering(self, 1), Ordering(self, -1))
        return ()

    def __call__(self, a, b=0) -> "FieldElem":
        return FieldElem(self, Fraction(a), Fraction(b))

    def one(self) -> "FieldElem":
        return self(1)

    def __str__(self) -> str:
        return "Q" if self.d is None else f"Q(sqrt {self.d})"


QQ = BaseField()


def quad_field(d: int) -> BaseField:
    return BaseField(d)


@dataclass(frozen=True)
class FieldElem:
    """a + b*sqrt(d) in its base field; b = 0 over Q."""

    base: BaseField
    a: Fraction
    b: Fraction = Fraction(0)

    def __post_init__(self):
        if self.base.is_rational and self.b != 0:
            raise ValueError("elements of Q have no sqrt(d) part")

    @property
    def is_zero(self) -> bool:
        return self.a == 0 and self.b == 0

    def _coerce(self, other) -> "FieldElem":
        if isinstance(other, FieldElem):
            if other.base != self.base:
                raise MixedFields(f"{self.base} vs {other.base}")
            return other
        return FieldElem(self.base, Fraction(other))

    def __add__(self, other):
        o = self._coerce(other)
        return FieldElem(self.base, self.a + o.a, self.b + o.b)

    def __sub__(self, other):
        o = self._coerce(other)
        return FieldElem(self.base, self.a - o.a, self.b - o.b)

    def __neg__(self):
        return FieldElem(self.base, -self.a, -self.b)

    def __mul__(self, other):
        o = self._coerce(other)
        d = self.base.d or 0
        return FieldElem(
            self.base,
            self.a * o.a + d * self.b * o.b,
            self.a * o.b + self.b * o.a,
        )

    __radd__ = __add__
    __rmul__ = __mul__

    def conjugate(self) -> "FieldElem":
        return FieldElem(self.base, self.a, -self.b)

    def norm(self) -> Fraction:
        """Field norm down to Q: a^2 - d*b^2 (just a^2 over Q)."""
        d = self.base.d or 0
        return self.a * self.a - d * self.b * self.b

    def inverse(self) -> "FieldElem":
        if self.is_zero:
            raise ZeroElement("inverse of 0")
        n = self.norm()
        return FieldElem(self.base, self.a / n, -self.b / n)

    def __truediv__(self, other):
        o = self._coerce(other)
        return self * o.inverse()

    def as_fraction(self) -> Fraction:
        if self.b != 0:
            raise ValueError("element is not rational")
        return self.a

    def __str__(self) -> str:
        return elem_to_text(self)

    def __repr__(self) -> str:
        return f"FieldElem({self.base}, {elem_to_text(self)!r})"


def rat_elem(q, base: BaseField = QQ) -> FieldElem:
    return FieldElem(base, Fraction(q))


# ---------------------------------------------------------------------------
# orderings

@dataclass(frozen=True)
class Ordering:
    """An ordering of the base field.

    Q has a single one; Q(sqrt d) with d > 0 has two, selected by the sign
    given to sqrt(d) under the real embedding.
    """

    base: BaseField
    embedding: int  # +1: sqrt(d) positive, -1: negative; +1 for Q

    @property
    def name(self) -> str:
        if self.base.is_rational:
            return "Q"
        return "Plus" if self.embedding == 1 else "Minus"

    def sign_of(self, x: FieldElem) -> int:
        if x.base != self.base:
            raise OrderingMismatch(f"{x.base} element at a {self.base} ordering")
        if x.is_zero:
            return 0
        a, b = x.a, x.b * self.embedding
        if b == 0:
            return rational_sign(a)
        if a == 0:
            return rational_sign(b)
        sa, sb = rational_sign(a), rational_sign(b)
        if sa == sb:
            return sa
        # a and b*sqrt(d) compete: compare a^2 against b^2 d exactly.
        d = self.base.d
        lhs, rhs = a * a, b * b * d
        if lhs == rhs:  # impossible for squarefree d: sqrt(d) is irrational
            return 0
        return sa if lhs > rhs else sb

    def __str__(self) -> str:
        return f"{self.name}@{self.base}"


def sign_at(x: FieldElem, ordering: Ordering) -> int:
    return ordering.sign_of(x)


# ---------------------------------------------------------------------------
# places of Q

@dataclass(frozen=True)
class Place:
    """A place of Q: the real one (p is None) or a finite prime."""

    p: int | None

    def __post_init__(self):
        if self.p is not None and not sympy.isprime(self.p):
            raise BadPrime(f"{self.p} is not prime")

    @property
    def is_real(self) -> bool:
        return self.p is None

    @property
    def name(self) -> str:
        return "inf" if self.p is None else str(self.p)

    def __str__(self) -> str:
        return self.name


REAL_PLACE = Place(None)

_PLACE_CACHE: dict[int, Place] = {}


def finite_place(p: int) -> Place:
    got = _PLACE_CACHE.get(p)
    if got is None:
        got = Place(p)
        _PLACE_CACHE[p] = got
    return got


def relevant_places(*values: Fraction) -> tuple[Place, ...]:
    """Real place, 2, and every odd prime meeting one of the values.

    At any other place every Hilbert symbol in the given values is +1.
    """
    primes = {2}
    for q in values:
        if q == 0:
            raise ZeroElement("place support of 0")
        for p, _ in factorization(abs(q.numerator)):
            primes.add(p)
        for p, _ in factorization(q.denominator):
            primes.add(p)
    return (REAL_PLACE,) + tuple(finite_place(p) for p in sorted(primes))


def _support(q: Fraction) -> set[int]:
    out = {p for p, _ in factorization(abs(q.numerator))}
    out.update(p for p, _ in factorization(q.denominator))
    return out


def places_for_entries(values) -> tuple[Place, ...]:
    """Places where symbols built from products of the given values can
    ramify: the real place, 2, and the union of the entry supports.
    Factorizations are per-entry, hence cached across calls."""
    primes = {2}
    for q in values:
        if q == 0:
            raise ZeroElement("place support of 0")
        primes |= _support(q)
    return (REAL_PLACE,) + tuple(finite_place(p) for p in sorted(primes))


# ---------------------------------------------------------------------------
# square classes

def square_class(x: FieldElem) -> FieldElem:
    """Deterministic square-class representative of x.

    Over Q: the squarefree integer with the sign of x (a canonical form).
    Over Q(sqrt d) with b != 0: integral coordinates divided by the square
    part of their gcd; deterministic, not canonical per class.
    """
    if x.is_zero:
        raise ZeroElement("square class of 0")
    if x.b == 0:
        q = x.a
        return FieldElem(x.base, Fraction(squarefree_part(q.numerator * q.denominator)))
    lcm = math.lcm(x.a.denominator, x.b.denominator)
    aa = int(x.a * lcm * lcm)
    bb = int(x.b * lcm * lcm)
    m = square_part_root(math.gcd(abs(aa), abs(bb)))
    return FieldElem(x.base, Fraction(aa, m * m), Fraction(bb, m * m))


def is_square(x: FieldElem) -> bool:
    """Exact test for membership in the squares of the base field."""
    if x.is_zero:
        return True
    if x.base.is_rational:
        q = x.a
        return q > 0 and is_square_int(q.numerator * q.denominator)
    d = x.base.d
    if x.b == 0:
        # a rational r is a square in Q(sqrt d) iff r or r/d is one in Q
        q = x.a
        if q > 0 and is_square_int(q.numerator * q.denominator):
            return True
        qd = q / d
        return qd > 0 and is_square_int(qd.numerator * qd.denominator)
    # (u + v sqrt d)^2 = x needs norm(x) a rational square, then
    # u^2 = (a +- sqrt(norm))/2 a rational square.
    n = x.norm()
    if n < 0 or not is_square_int(n.numerator * n.denominator):
        return False
    r = Fraction(
        math.isqrt(n.numerator) * math.isqrt(n.denominator), n.denominator
    )
    for cand in ((x.a + r) / 2, (x.a - r) / 2):
        if cand > 0 and is_square_int(cand.numerator * cand.denominator):
            return True
    return False


def same_square_class(x: FieldElem, y: FieldElem) -> bool:
    if x.is_zero or y.is_zero:
        raise ZeroElement("square class of 0")
    return is_square(x * y)


# ---------------------------------------------------------------------------
# Legendre and Hilbert symbols

def legendre(a: int, p: int) -> int:
    """Legendre symbol (a|p) for an odd prime p."""
    if p == 2 or not sympy.isprime(p):
        raise BadPrime(f"{p} is not an odd prime")
    r = pow(a % p, (p - 1) // 2, p)
    return -1 if r == p - 1 else r


def _legendre_unit(q: Fraction, p: int) -> int:
    # (num/den | p) = (num*den | p) for a p-adic unit q
    return legendre(q.numerator * q.denominator, p)


def is_square_in_completion(q, v: Place) -> bool:
    """Whether the rational q is a square in the completion of Q at v."""
    if q == 0:
        raise ZeroElement("local square test of 0")
    if v.is_real:
        return q > 0
    p = v.p
    if isinstance(q, int):
        alpha, u = _int_val_unit(q, p)
        if alpha % 2:
            return False
        return u % 8 == 1 if p == 2 else _legendre_raw(u, p) == 1
    alpha = valuation(q, p)
    if alpha % 2:
        return False
    u = q / Fraction(p) ** alpha
    if p == 2:
        return unit_residue(u, 8) == 1
    return _legendre_unit(u, p) == 1


def _int_val_unit(n: int, p: int) -> tuple[int, int]:
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v, n


def _legendre_raw(a: int, p: int) -> int:
    # p assumed an odd prime; no validation
    r = pow(a % p, (p - 1) >> 1, p)
    return -1 if r == p - 1 else r


def _hilbert_int(a: int, b: int, v: Place) -> int:
    if v.is_real:
        return -1 if (a < 0 and b < 0) else 1
    p = v.p
    alpha, u = _int_val_unit(a, p)
    beta, w = _int_val_unit(b, p)
    if p != 2:
        sign = 1
        if alpha * beta % 2 and p % 4 == 3:
            sign = -sign
        if beta % 2:
            sign *= _legendre_raw(u, p)
        if alpha % 2:
            sign *= _legendre_raw(w, p)
        return sign
    u8, w8 = u % 8, w % 8
    exponent = (u8 % 4 == 3 and w8 % 4 == 3) + alpha * (w8 in (3, 5)) + beta * (
        u8 in (3, 5)
    )
    return -1 if exponent % 2 else 1


def hilbert_symbol(a, b, v: Place) -> int:
    """Hilbert symbol (a, b)_v over the completion of Q at the place v.

    +1 iff z^2 = a x^2 + b y^2 has a nontrivial solution there.
    """
    if a == 0 or b == 0:
        raise ZeroElement("hilbert symbol needs nonzero arguments")
    if isinstance(a, int) and isinstance(b, int):
        return _hilbert_int(a, b, v)
    a, b = Fraction(a), Fraction(b)
    if v.is_real:
        return -1 if (a < 0 and b < 0) else 1
    p = v.p
    alpha, beta = valuation(a, p), valuation(b, p)
    u = a / Fraction(p) ** alpha
    w = b / Fraction(p) ** beta
    if p != 2:
        sign = 1
        if alpha * beta % 2 and p % 4 == 3:
            sign = -sign
        if beta % 2:
            sign *= _legendre_unit(u, p)
        if alpha % 2:
            sign *= _legendre_unit(w, p)
        return sign
    u8, w8 = unit_residue(u, 8), unit_residue(w, 8)
    eps_u, eps_w = (u8 % 4 == 3), (w8 % 4 == 3)
    om_u, om_w = (u8 in (3, 5)), (w8 in (3, 5))
    exponent = (eps_u and eps_w) + alpha * om_w + beta * om_u
    return -1 if exponent % 2 else 1


def sum_of_squares_length(q, m: int) -> bool:
    """Whether q is a nonzero sum of m squares in Q."""
    q = Fraction(q)
    if q == 0:
        raise ZeroElement("0 is excluded from the represented sets")
    if m < 1:
        raise ValueError("m must be positive")
    if q < 0:
        return False
    from .qform import multiple, qform, represents

    ones = multiple(m, qform(QQ, [1]))
    return represents(ones, rat_elem(q))


# ---------------------------------------------------------------------------
# parsing and printing of field elements

def elem_to_text(x: FieldElem) -> str:
    """Serialize; `s` denotes sqrt(d) of the ambient field. Round-trips."""

    def rat(q: Fraction) -> str:
        return str(q)

    def s_term(q: Fraction) -> str:
        mag = abs(q)
        num = "" if mag.numerator == 1 else str(mag.numerator)
        den = "" if mag.denominator == 1 else f"/{mag.denominator}"
        return f"{num}s{den}"

    if x.b == 0:
        return rat(x.a)
    if x.a == 0:
        return ("-" if x.b < 0 else "") + s_term(x.b)
    sign = "-" if x.b < 0 else "+"
    return f"{rat(x.a)}{sign}{s_term(x.b)}"


def parse_elem(text: str, base: BaseField = QQ) -> FieldElem:
    """Parse `3/4`, `-2`, `1+2s/3`, `s`, `-s/2`, ... (whitespace ignored)."""
    from .parser import parse_element_text

    return parse_element_text(text, base)
