"""Witt-ring arithmetic over Q: ring operations on anisotropic
representatives, Lewis-polynomial annihilation, torsion orders, and the
preordering-relative signature machinery."""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations_with_replacement

from .errors import (
    ImproperPreordering,
    InternalInconsistency,
    MixedFields,
    UnsupportedField,
    ZeroElement,
)
from .exactnum import BaseField, FieldElem, Ordering, QQ, rat_elem, square_class
from .qform import (
    QForm,
    anisotropic_representative,
    is_hyperbolic_form,
    isometric,
    multiple,
    neg,
    perp,
    pfister,
    qform,
    signature,
    tensor,
    zero_form,
)

INFINITE = math.inf

_TORSION_CAP = 16  # torsion in W(Q) has exponent at most 4; cap is a guard


class WittClass:
    """A Witt equivalence class over Q, stored as an anisotropic
    representative.  Equality is isometry of representatives."""

    __slots__ = ("representative",)

    def __init__(self, form: QForm, _reduced: bool = False):
        if not form.base.is_rational:
            raise UnsupportedField("Witt classes are implemented over Q")
        if not _reduced:
            # classification route: same kernel as witt_decompose would
            # produce, without growing any Gram-Schmidt coefficients
            form = anisotropic_representative(form)
        self.representative = form

    @property
    def dim(self) -> int:
        return self.representative.dim

    @property
    def is_zero(self) -> bool:
        return self.dim == 0

    def __eq__(self, other) -> bool:
        if not isinstance(other, WittClass):
            return NotImplemented
        return isometric(self.representative, other.representative)

    def __hash__(self):
        from .exactnum import squarefree_part
        from .qform import _q_signature, disc

        d = disc(self.representative)
        sf = squarefree_part(d.numerator * d.denominator) if d else 0
        return hash((self.dim, _q_signature(self.representative), sf))

    def __repr__(self):
        return f"WittClass({self.representative})"


def witt_class(form: QForm) -> WittClass:
    return WittClass(form)


def witt_zero() -> WittClass:
    return WittClass(zero_form(), _reduced=True)


def witt_add(a: WittClass, b: WittClass) -> WittClass:
    return WittClass(perp(a.representative, b.representative))


def witt_neg(a: WittClass) -> WittClass:
    if a.is_zero:
        return a
    return WittClass(neg(a.representative), _reduced=True)


def witt_sub(a: WittClass, b: WittClass) -> WittClass:
    return witt_add(a, witt_neg(b))


def _squarefree_int_entries(form: QForm):
    out = []
    for e in form.entries:
        q = e.as_fraction()
        if q.denominator != 1:
            return None
        out.append(q.numerator)
    return out


def witt_mul(a: WittClass, b: WittClass) -> WittClass:
    xs = _squarefree_int_entries(a.representative)
    ys = _squarefree_int_entries(b.representative)
    if xs is None or ys is None:
        return WittClass(tensor(a.representative, b.representative))
    # entry-wise product reduced to its square class without factoring:
    # representatives coming out of Witt decomposition are squarefree
    from .exactnum import squarefree_product

    entries = [squarefree_product(x, y) for x in xs for y in ys]
    return WittClass(qform(QQ, entries))


def witt_int(m: int) -> WittClass:
    if m == 0:
        return witt_zero()
    return WittClass(multiple(abs(m), qform(QQ, [1 if m > 0 else -1])))


# ---------------------------------------------------------------------------
# Lewis polynomials

@dataclass(frozen=True)
class LewisPolynomial:
    """L_n(X) = prod_{i=0..n} (X - n + 2i); roots n, n-2, ..., -n."""

    n: int

    @property
    def roots(self) -> tuple[int, ...]:
        return tuple(self.n - 2 * i for i in range(self.n + 1))

    def eval_at_class(self, alpha: WittClass) -> WittClass:
        acc = witt_int(1)
        for r in self.roots:
            acc = witt_mul(acc, witt_sub(alpha, witt_int(r)))
            if acc.is_zero:
                break
        return acc


def lewis_factors(form: QForm) -> list[WittClass]:
    """The factors [form] - r for the roots r of L_dim(form)."""
    alpha = witt_class(form)
    return [witt_sub(alpha, witt_int(r)) for r in LewisPolynomial(form.dim).roots]


def lewis_eval(form: QForm) -> WittClass:
    """L_n([form]) for n = dim(form); zero for every form (the annihilation
    theorem) -- evaluated, not assumed."""
    return LewisPolynomial(form.dim).eval_at_class(witt_class(form))


# ---------------------------------------------------------------------------
# torsion

def torsion_order(alpha: WittClass):
    """Least 2-power N with N x representative hyperbolic, or INFINITE."""
    if alpha.is_zero:
        return 1
    rep = alpha.representative
    if signature(rep, QQ.orderings()[0]) != 0:
        return INFINITE
    for m in range(1, _TORSION_CAP + 1):
        if is_hyperbolic_form(multiple(2**m, rep)):
            return 2**m
    raise InternalInconsistency(
        "torsion class with no 2-power annihilator within the cap"
    )


# ---------------------------------------------------------------------------
# preorderings

@dataclass(frozen=True)
class Preordering:
    """The preordering generated by squares and the given elements;
    properness (some ordering makes all generators positive) is checked at
    construction and X_T is stored."""

    base: BaseField
    generators: tuple[FieldElem, ...]

    def __post_init__(self):
        for g in self.generators:
            if g.base != self.base:
                raise MixedFields("generators must live in the base field")
            if g.is_zero:
                raise ZeroElement("preordering generators must be nonzero")
        if not self.orderings():
            raise ImproperPreordering(
                "no ordering of the field makes all generators positive"
            )

    def orderings(self) -> tuple[Ordering, ...]:
        return tuple(
            p
            for p in self.base.orderings()
            if all(p.sign_of(g) > 0 for g in self.generators)
        )

    def __str__(self) -> str:
        inner = ",".join(str(g) for g in self.generators)
        return f"preord({inner})"


def preordering(base: BaseField, generators=()) -> Preordering:
    gens = tuple(
        g if isinstance(g, FieldElem) else rat_elem(g, base) for g in generators
    )
    return Preordering(base, gens)


def _check_compatible(form: QForm, pre: Preordering):
    if form.base != pre.base:
        raise MixedFields(f"{form.base} form against a {pre.base} preordering")


def t_signature(form: QForm, pre: Preordering) -> dict[Ordering, int]:
    _check_compatible(form, pre)
    return {p: signature(form, p) for p in pre.orderings()}


def t_positive(form: QForm, pre: Preordering) -> bool:
    """Nontrivial with all represented elements in T; by Artin's theorem
    this is positivity of the entries at every ordering in X_T."""
    _check_compatible(form, pre)
    if form.dim == 0:
        return False
    return all(
        p.sign_of(e) > 0 for p in pre.orderings() for e in form.entries
    )


def t_isotropic(form: QForm, pre: Preordering) -> bool:
    """T-isotropy by the signature criterion: not definite at any ordering
    of X_T."""
    _check_compatible(form, pre)
    return all(abs(signature(form, p)) < form.dim for p in pre.orderings())


@dataclass(frozen=True)
class PfisterWitness:
    slots: tuple[FieldElem, ...]  # tau = <1,s_1> x ... x <1,s_k>, s_i in T
    form: QForm


def _slot_candidates(pre: Preordering) -> list[FieldElem]:
    """Square classes of subset products of the generators, plus 1."""
    seen: list[FieldElem] = []
    reps = set()
    gens = pre.generators
    for r in range(len(gens) + 1):
        for combo in combinations_with_replacement(range(len(gens)), r):
            prod = pre.base.one()
            for i in combo:
                prod = prod * gens[i]
            rep = square_class(prod)
            key = (rep.a, rep.b)
            if key not in reps:
                reps.add(key)
                seen.append(rep)
    return seen


def t_hyperbolic_form(form: QForm, pre: Preordering):
    """Decision via sign_T = 0; over Q also a verified T-positive Pfister
    witness tau with tau (x) form hyperbolic.

    Returns (bool, PfisterWitness | None).
    """
    _check_compatible(form, pre)
    if any(signature(form, p) != 0 for p in pre.orderings()):
        return False, None
    if not form.base.is_rational:
        return True, None
    if form.dim == 0:
        return True, PfisterWitness((), pfister(form.base))
    order = torsion_order(witt_class(form))
    cap = max(1, int(math.log2(order))) if order != INFINITE else 0
    if order == INFINITE:
        raise InternalInconsistency("sign_T = 0 over Q implies torsion")
    slots = _slot_candidates(pre)
    for k in range(1, cap + 1):
        for combo in combinations_with_replacement(slots, k):
            tau = pfister(form.base, *[-s for s in combo])
            if is_hyperbolic_form(tensor(tau, form)):
                return True, PfisterWitness(tuple(combo), tau)
    raise InternalInconsistency(
        "witness search failed inside its theorem-backed bound"
    )


# ---------------------------------------------------------------------------
# binary-digit combinatorics

def digit_count(n: int) -> int:
    """Number of ones in the binary representation of n >= 0."""
    if n < 0:
        raise ValueError("digit_count needs n >= 0")
    return bin(n).count("1")


def delta(n: int) -> int:
    """2n - 1 - d(n) - d(n-1); the 2-power exponent in the torsion bounds."""
    if n < 1:
        raise ValueError("delta needs n >= 1")
    return 2 * n - 1 - digit_count(n) - digit_count(n - 1)


def factorial_two_adic(n: int) -> int:
    """Exponent of the largest 2-power dividing n! (= n - d(n))."""
    if n < 0:
        raise ValueError("factorial_two_adic needs n >= 0")
    return n - digit_count(n)
