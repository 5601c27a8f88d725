"""Expression calculus for algebras with involution: atoms (adjoint,
quaternion with marked involution, unitary rank-1), tensor products and
matrix multiples, with structural invariants, trace forms and signatures.

Quaternion atoms carry the involution in the marking:
  QuatOO(a, b) is the algebra (a, b) with the involution negating i only;
  QuatSS(a, b) is (a, b) with its canonical (symplectic) involution.
The two mixed markings normalize at construction:
  (a | b)  ->  (-ab .| b)      and      (a |. b)  ->  (b .| a).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import (
    DegenerateAlgebra,
    InternalInconsistency,
    MixedFields,
    MixedUnitaryCentres,
    ShapeMismatch,
    UnsupportedField,
    UnsupportedShape,
    ZeroElement,
)
from .exactnum import (
    BaseField,
    FieldElem,
    Ordering,
    Place,
    QQ,
    hilbert_symbol,
    is_square,
    is_square_in_completion,
    rat_elem,
    relevant_places,
    same_square_class,
    square_class,
)
from .qform import (
    QForm,
    is_pfister_multiple,
    multiple,
    pfister,
    qform,
    represents,
    scale,
    signature,
    tensor,
    witt_decompose,
)
from .verdict import Verdict, undecided, verdict_false, verdict_true

ORTHOGONAL, SYMPLECTIC, UNITARY = 1, -1, 0


# ---------------------------------------------------------------------------
# expression nodes

@dataclass(frozen=True)
class IdInv:
    """(K, id): the base field with the identity involution."""

    base: BaseField


@dataclass(frozen=True)
class UnitCan:
    """(a)_K: the quadratic etale algebra K[X]/(X^2-a) with conjugation;
    degenerate exactly when a is a square."""

    a: FieldElem

    def __post_init__(self):
        if self.a.is_zero:
            raise ZeroElement("(a)_K needs a nonzero a")

    @property
    def base(self) -> BaseField:
        return self.a.base


@dataclass(frozen=True)
class QuatOO:
    """(a .| b)_K: quaternions (a, b) with the orthogonal involution fixing
    j and negating i."""

    a: FieldElem
    b: FieldElem

    def __post_init__(self):
        if self.a.is_zero or self.b.is_zero:
            raise ZeroElement("quaternion slots must be nonzero")
        if self.a.base != self.b.base:
            raise MixedFields("quaternion slots must share the base field")

    @property
    def base(self) -> BaseField:
        return self.a.base


@dataclass(frozen=True)
class QuatSS:
    """(a .|. b)_K: quaternions (a, b) with the canonical involution."""

    a: FieldElem
    b: FieldElem

    def __post_init__(self):
        if self.a.is_zero or self.b.is_zero:
            raise ZeroElement("quaternion slots must be nonzero")
        if self.a.base != self.b.base:
            raise MixedFields("quaternion slots must share the base field")

    @property
    def base(self) -> BaseField:
        return self.a.base


@dataclass(frozen=True)
class AdInv:
    """Ad(phi): the split orthogonal algebra adjoint to a quadratic form."""

    form: QForm

    def __post_init__(self):
        if self.form.dim == 0:
            raise ZeroElement("Ad needs a form of positive dimension")

    @property
    def base(self) -> BaseField:
        return self.form.base


class TensorInv:
    """Tensor product; defined for two unitary operands only when their
    centres agree up to squares."""

    __slots__ = ("left", "right")

    def __init__(self, left, right):
        if base_of(left) != base_of(right):
            raise MixedFields("tensor operands must share the base field")
        cl, cr = centre_disc(left), centre_disc(right)
        if cl is not None and cr is not None and not same_square_class(cl, cr):
            raise MixedUnitaryCentres(
                "tensor of unitary algebras needs equal centre square classes"
            )
        self.left = left
        self.right = right

    @property
    def base(self) -> BaseField:
        return base_of(self.left)

    def __eq__(self, other):
        return (
            isinstance(other, TensorInv)
            and self.left == other.left
            and self.right == other.right
        )

    def __hash__(self):
        return hash((TensorInv, self.left, self.right))


@dataclass(frozen=True)
class MultipleInv:
    """m x Psi = Ad(m x <1>) (x) Psi."""

    m: int
    inner: "InvExpr"

    def __post_init__(self):
        if self.m < 1:
            raise ValueError("matrix multiple needs a positive integer")

    @property
    def base(self) -> BaseField:
        return base_of(self.inner)


InvExpr = IdInv | UnitCan | QuatOO | QuatSS | AdInv | TensorInv | MultipleInv


def quat_po(a: FieldElem, b: FieldElem) -> QuatOO:
    """(a | b)_K  ~  (-ab .| b)_K."""
    return QuatOO(-(a * b), b)


def quat_op(a: FieldElem, b: FieldElem) -> QuatOO:
    """(a |. b)_K  ~  (b .| a)_K."""
    return QuatOO(b, a)


def base_of(expr: InvExpr) -> BaseField:
    return expr.base


# ---------------------------------------------------------------------------
# structural invariants

def inv_type(expr: InvExpr) -> int:
    match expr:
        case IdInv() | AdInv() | QuatOO():
            return ORTHOGONAL
        case QuatSS():
            return SYMPLECTIC
        case UnitCan():
            return UNITARY
        case MultipleInv(inner=inner):
            return inv_type(inner)
        case TensorInv():
            return inv_type(expr.left) * inv_type(expr.right)
    raise UnsupportedShape(f"unknown node {expr!r}")


def degree(expr: InvExpr) -> int:
    match expr:
        case IdInv() | UnitCan():
            return 1
        case QuatOO() | QuatSS():
            return 2
        case AdInv(form=f):
            return f.dim
        case MultipleInv(m=m, inner=inner):
            return m * degree(inner)
        case TensorInv():
            return degree(expr.left) * degree(expr.right)
    raise UnsupportedShape(f"unknown node {expr!r}")


def centre_disc(expr: InvExpr) -> FieldElem | None:
    """Square class c with Z = K(sqrt c) for second-kind expressions,
    None for the first kind."""
    match expr:
        case UnitCan(a=a):
            return a
        case MultipleInv(inner=inner):
            return centre_disc(inner)
        case TensorInv():
            cl, cr = centre_disc(expr.left), centre_disc(expr.right)
            if cl is not None and cr is not None:
                return cl  # same square class, enforced at construction
            return cl if cl is not None else cr
        case _:
            return None


def is_degenerate(expr: InvExpr) -> bool:
    c = centre_disc(expr)
    return c is not None and is_square(c)


def _quat_atoms(expr: InvExpr) -> list:
    match expr:
        case QuatOO() | QuatSS():
            return [expr]
        case TensorInv():
            return _quat_atoms(expr.left) + _quat_atoms(expr.right)
        case MultipleInv(inner=inner):
            return _quat_atoms(inner)
        case _:
            return []


def atom_ramification(atom) -> frozenset[Place]:
    """Places of Q where the quaternion algebra (a, b) does not split."""
    a, b = atom.a.as_fraction(), atom.b.as_fraction()
    return frozenset(
        v for v in relevant_places(a, b) if hilbert_symbol(a, b, v) == -1
    )


def ramification(expr: InvExpr) -> frozenset[Place]:
    """Brauer class over Q of the first-kind content (unitary expressions:
    the lifted class), as its set of ramified places."""
    if not base_of(expr).is_rational:
        raise UnsupportedField("Brauer data is computed over Q only")
    out: frozenset[Place] = frozenset()
    for atom in _quat_atoms(expr):
        out ^= atom_ramification(atom)
    return out


@dataclass(frozen=True)
class InvProfile:
    type: int
    degree: int
    centre_disc: FieldElem | None
    degenerate: bool
    ramification: frozenset[Place] | None
    index: int | None

    @property
    def kind(self) -> int:
        return 2 if self.centre_disc is not None else 1

    @property
    def type_name(self) -> str:
        return {1: "orthogonal", -1: "symplectic", 0: "unitary"}[self.type]


def profile(expr: InvExpr) -> InvProfile:
    t = inv_type(expr)
    n = degree(expr)
    c = centre_disc(expr)
    degen = is_degenerate(expr)
    if not base_of(expr).is_rational:
        return InvProfile(t, n, c, degen, None, None)
    ram = ramification(expr)
    if not ram:
        index = 1
    elif c is None or degen:
        index = 2
    else:
        # the lifted class dies over K(sqrt c) iff c is a local nonsquare
        # at every ramified place
        cq = square_class(c).as_fraction()
        dies = all(not is_square_in_completion(cq, v) for v in ram)
        index = 1 if dies else 2
    return InvProfile(t, n, c, degen, ram, index)


def sym_skew_dims(expr: InvExpr) -> tuple[int, int]:
    """K-dimensions of the symmetric and skew-symmetric parts."""
    if is_degenerate(expr):
        raise DegenerateAlgebra("Sym/Skew dimensions need a nondegenerate algebra")
    n = degree(expr)
    eps = inv_type(expr)
    k = 2 if centre_disc(expr) is not None else 1
    return (k * n * (n + eps) // 2, k * n * (n - eps) // 2)


# ---------------------------------------------------------------------------
# trace forms

@dataclass(frozen=True)
class TraceForm:
    """Trace form in factored shape: [x2] <<c>> (x) core, where the binary
    Pfister factor <<c>> is present exactly for second-kind expressions and
    the overall scaling by 2 is tracked as a flag."""

    core: QForm
    pfister_factor: FieldElem | None = None
    scale_two: bool = False

    @property
    def base(self) -> BaseField:
        return self.core.base

    def as_qform(self) -> QForm:
        out = self.core
        if self.pfister_factor is not None:
            out = tensor(pfister(self.base, self.pfister_factor), out)
        if self.scale_two:
            out = scale(rat_elem(2, self.base), out)
        return out

    @property
    def dim(self) -> int:
        return self.core.dim * (2 if self.pfister_factor is not None else 1)


def trace_form(expr: InvExpr) -> TraceForm:
    base = base_of(expr)
    match expr:
        case IdInv():
            return TraceForm(qform(base, [1]))
        case UnitCan(a=a):
            return TraceForm(qform(base, [1]), pfister_factor=a)
        case QuatOO(a=a, b=b):
            return TraceForm(pfister(base, a, -b), scale_two=True)
        case QuatSS(a=a, b=b):
            return TraceForm(pfister(base, a, b), scale_two=True)
        case AdInv(form=f):
            return TraceForm(tensor(f, f))
        case MultipleInv(m=m, inner=inner):
            t = trace_form(inner)
            return TraceForm(
                multiple(m * m, t.core), t.pfister_factor, t.scale_two
            )
        case TensorInv():
            lt = trace_form(expr.left)
            rt = trace_form(expr.right)
            core = tensor(lt.core, rt.core)
            two = lt.scale_two != rt.scale_two
            if lt.pfister_factor is not None:
                return TraceForm(core, lt.pfister_factor, two)
            return TraceForm(core, rt.pfister_factor, two)
    raise UnsupportedShape(f"unknown node {expr!r}")


def inv_signature(expr: InvExpr, ordering: Ordering) -> int:
    """sqrt(sign_P(Tr) / [Z:K]); integrality and squareness are theorems,
    their failure is an internal error."""
    if ordering.base != base_of(expr):
        raise MixedFields("ordering does not belong to the expression's field")
    s = signature(trace_form(expr).as_qform(), ordering)
    k = 2 if centre_disc(expr) is not None else 1
    if s < 0 or s % k:
        raise InternalInconsistency(f"trace signature {s} not divisible by {k}")
    root = math.isqrt(s // k)
    if root * root != s // k:
        raise InternalInconsistency(f"sign_P(Tr)/k = {s // k} is not a square")
    return root


# ---------------------------------------------------------------------------
# quaternion-involution identities

def quat_orth_iso(a: FieldElem, b: FieldElem, c: FieldElem, d: FieldElem) -> bool:
    """(a .| b) ~ (c .| d): equal skew square classes and bd a norm
    of K(sqrt a)."""
    for x in (a, b, c, d):
        if x.is_zero:
            raise ZeroElement("quaternion slots must be nonzero")
        if not x.base.is_rational:
            raise UnsupportedField("quaternion isomorphism test runs over Q")
    if not same_square_class(a, c):
        return False
    return represents(pfister(QQ, a), b * d)


def flip_flop(expr: InvExpr) -> InvExpr:
    """Rewrite (a .| b) (x) (c .| d)  ->  (a .|. bc) (x) (c .|. ad) and
    (a .| b) (x) (c .|. d)  ->  (a .|. bc) (x) (c .| ad)."""
    if not isinstance(expr, TensorInv):
        raise ShapeMismatch("flip_flop expects a tensor of two quaternion atoms")
    left, right = expr.left, expr.right
    if isinstance(left, QuatOO) and isinstance(right, QuatOO):
        return TensorInv(
            QuatSS(left.a, left.b * right.a), QuatSS(right.a, left.a * right.b)
        )
    if isinstance(left, QuatOO) and isinstance(right, QuatSS):
        return TensorInv(
            QuatSS(left.a, left.b * right.a), QuatOO(right.a, left.a * right.b)
        )
    raise ShapeMismatch("flip_flop handles the shapes OO(x)OO and OO(x)SS")


def g_membership(expr: InvExpr, u: FieldElem) -> bool:
    """Membership in the similitude-norm group G for atoms:
    G(a .|. b) = D<<a,b>>, G(a .| b) = D<<a>> u b D<<a>>, G(a)_K = D<<a>>."""
    if u.is_zero:
        raise ZeroElement("G-membership of 0")
    match expr:
        case QuatSS(a=a, b=b):
            return represents(pfister(QQ, a, b), u)
        case QuatOO(a=a, b=b):
            norm = pfister(QQ, a)
            return represents(norm, u) or represents(norm, u / b)
        case UnitCan(a=a):
            return represents(pfister(QQ, a), u)
    raise UnsupportedShape(
        "G-membership is computed on atoms; use the hyperbolicity decider "
        "for composite expressions"
    )


# ---------------------------------------------------------------------------
# shape normalization (shared with the hyperbolicity deciders)

def collapse(expr: InvExpr) -> tuple[QForm, list]:
    """Flatten to (combined adjoint form, atom list): tensors of adjoints
    merge (Ad(f) (x) Ad(g) = Ad(f (x) g)) and m x Psi becomes
    Ad(m x <1>) (x) Psi.  The adjoint form of an atom-free expression is
    the form itself; with atoms it is the <1>-padded cofactor."""
    base = base_of(expr)
    phi = qform(base, [1])
    atoms: list = []

    def walk(node, mult: int):
        nonlocal phi
        match node:
            case IdInv():
                pass
            case AdInv(form=f):
                phi = tensor(phi, f)
            case MultipleInv(m=m, inner=inner):
                walk(inner, mult * m)
                return
            case TensorInv():
                walk(node.left, 1)
                walk(node.right, 1)
            case _:
                atoms.append(node)
        if mult > 1:
            phi = tensor(phi, multiple(mult, qform(base, [1])))

    def outer(node):
        nonlocal phi
        match node:
            case MultipleInv(m=m, inner=inner):
                phi = tensor(phi, multiple(m, qform(base, [1])))
                outer(inner)
            case TensorInv():
                outer(node.left)
                outer(node.right)
            case IdInv():
                pass
            case AdInv(form=f):
                phi = tensor(phi, f)
            case _:
                atoms.append(node)

    outer(expr)
    return phi, atoms


def embeds_quadratic_etale(a: FieldElem, expr: InvExpr) -> Verdict:
    """Whether (a)_K embeds into the expression, for the decided shapes:
    adjoint expressions and quaternion atoms."""
    if a.is_zero:
        raise ZeroElement("embedding test needs a nonzero a")
    if not base_of(expr).is_rational:
        raise UnsupportedField("embedding decisions run over Q")
    phi, atoms = collapse(expr)
    if not atoms:
        from .qform import is_hyperbolic_form

        dec = witt_decompose(phi)
        if is_square(a):
            # (a) = (1) embeds iff the algebra is hyperbolic
            ok = is_hyperbolic_form(phi)
            return (
                verdict_true("hyper-char") if ok else verdict_false("hyper-char")
            )
        if dec.witt_index % 2:
            return verdict_false("quext-ad-parity", {"witt_index": dec.witt_index})
        if dec.anisotropic_part.dim == 0 or is_pfister_multiple(
            dec.anisotropic_part, a
        ):
            return verdict_true("quext-ad-multiple")
        return verdict_false("quext-ad-multiple")
    if len(atoms) == 1 and phi.dim == 1:
        atom = atoms[0]
        if isinstance(atom, QuatOO):
            ok = same_square_class(a, atom.a)
            crit = "skew-square-class"
            return verdict_true(crit) if ok else verdict_false(crit)
        if isinstance(atom, QuatSS):
            pure = qform(QQ, [atom.a, atom.b, -(atom.a * atom.b)])
            ok = represents(pure, a)
            crit = "pure-quaternion-square"
            return verdict_true(crit) if ok else verdict_false(crit)
        if isinstance(atom, UnitCan):
            # (a) embeds into (c) iff they are isomorphic as etale algebras
            ok = same_square_class(a, atom.a)
            crit = "etale-isomorphism"
            return verdict_true(crit) if ok else verdict_false(crit)
    return undecided(shape_name(expr))


def shape_name(expr: InvExpr) -> str:
    match expr:
        case IdInv():
            return "id"
        case UnitCan():
            return "u"
        case QuatOO():
            return "qo"
        case QuatSS():
            return "qs"
        case AdInv():
            return "ad"
        case MultipleInv(inner=inner):
            return f"nx({shape_name(inner)})"
        case TensorInv():
            return f"tens({shape_name(expr.left)},{shape_name(expr.right)})"
    return "unknown"
