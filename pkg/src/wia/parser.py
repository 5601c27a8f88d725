"""Recursive-descent parsing of the surface syntax.

Forms:        diag(a1,...,an) | pf(a1,...,an) | perp(f,g) | tens(f,g)
              | nx(m,f) | pow(f,m) | scale(a,f)
Involutions:  id | u(a) | qo(a,b) | qs(a,b) | qpo(a,b) | qop(a,b)
              | ad(FORM) | tens(E1,E2) | nx(m,E) | pow(E,m)
Preorderings: preord(t1,...,tk)
Elements:     3/4 | -2 | 1+2s/3 | s | -s/2   (s = sqrt(d) of the field)

Whitespace-insensitive.  Errors carry the byte offset and the expected
token set.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import ParseError
from .exactnum import BaseField, FieldElem, QQ

_FORM_HEADS = ("diag", "pf", "perp", "tens", "nx", "pow", "scale")
_INV_HEADS = ("id", "u", "qo", "qs", "qpo", "qop", "ad", "tens", "nx", "pow")


class _Cursor:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def _skip_ws(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        self._skip_ws()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def eat(self, char: str) -> bool:
        if self.peek() == char:
            self.pos += 1
            return True
        return False

    def expect(self, char: str):
        if not self.eat(char):
            raise ParseError(f"expected {char!r}", self.pos, (char,))

    def ident(self) -> str:
        self._skip_ws()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isalpha():
            self.pos += 1
        if self.pos == start:
            raise ParseError("expected a name", start, ("identifier",))
        return self.text[start : self.pos]

    def natural(self) -> int:
        self._skip_ws()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if self.pos == start:
            raise ParseError("expected a number", start, ("digit",))
        return int(self.text[start : self.pos])

    def integer(self) -> int:
        self._skip_ws()
        neg = self.eat("-")
        n = self.natural()
        return -n if neg else n

    def done(self):
        self._skip_ws()
        if self.pos != len(self.text):
            raise ParseError("trailing input", self.pos, ("end of input",))


# ---------------------------------------------------------------------------
# field elements

def _rational(cur: _Cursor) -> Fraction:
    num = cur.natural()
    if cur.peek() == "/":
        save = cur.pos
        cur.eat("/")
        # a denominator must follow; an 's' here belongs to the next token
        if cur.peek().isdigit():
            return Fraction(num, cur.natural())
        cur.pos = save
    return Fraction(num)


def _term(cur: _Cursor, base: BaseField) -> FieldElem:
    sign = 1
    if cur.eat("-"):
        sign = -1
    elif cur.eat("+"):
        pass
    coef = Fraction(1)
    saw_coef = False
    if cur.peek().isdigit():
        coef = _rational(cur)
        saw_coef = True
    if cur.peek() == "s":
        cur.eat("s")
        if base.is_rational:
            raise ParseError("'s' needs a quadratic field", cur.pos, ())
        if cur.eat("/"):
            coef /= cur.natural()
        return FieldElem(base, Fraction(0), sign * coef)
    if not saw_coef:
        raise ParseError("expected a number or 's'", cur.pos, ("digit", "s"))
    return FieldElem(base, sign * coef)


def _element(cur: _Cursor, base: BaseField) -> FieldElem:
    out = _term(cur, base)
    while cur.peek() in ("+", "-"):
        out = out + _term(cur, base)
    return out


def parse_element_text(text: str, base: BaseField = QQ) -> FieldElem:
    cur = _Cursor(text)
    out = _element(cur, base)
    cur.done()
    return out


def _element_list(cur: _Cursor, base: BaseField, allow_empty=False) -> list:
    cur.expect("(")
    items = []
    if cur.peek() == ")" and allow_empty:
        cur.expect(")")
        return items
    items.append(_element(cur, base))
    while cur.eat(","):
        items.append(_element(cur, base))
    cur.expect(")")
    return items


# ---------------------------------------------------------------------------
# quadratic forms

def _form(cur: _Cursor, base: BaseField):
    from .qform import QForm, multiple, perp, pfister, power, qform, scale, tensor

    start = cur.pos
    head = cur.ident()
    if head == "diag":
        return qform(base, _element_list(cur, base, allow_empty=True))
    if head == "pf":
        return pfister(base, *_element_list(cur, base, allow_empty=True))
    if head == "perp" or head == "tens":
        cur.expect("(")
        lhs = _form(cur, base)
        cur.expect(",")
        rhs = _form(cur, base)
        cur.expect(")")
        return perp(lhs, rhs) if head == "perp" else tensor(lhs, rhs)
    if head == "nx":
        cur.expect("(")
        m = cur.natural()
        cur.expect(",")
        inner = _form(cur, base)
        cur.expect(")")
        return multiple(m, inner)
    if head == "pow":
        cur.expect("(")
        inner = _form(cur, base)
        cur.expect(",")
        m = cur.natural()
        cur.expect(")")
        return power(inner, m)
    if head == "scale":
        cur.expect("(")
        a = _element(cur, base)
        cur.expect(",")
        inner = _form(cur, base)
        cur.expect(")")
        return scale(a, inner)
    raise ParseError(f"unknown form constructor {head!r}", start, _FORM_HEADS)


def parse_form_text(text: str, base: BaseField = QQ):
    cur = _Cursor(text)
    out = _form(cur, base)
    cur.done()
    return out


def form_to_text(form) -> str:
    from .exactnum import elem_to_text

    return "diag(" + ",".join(elem_to_text(e) for e in form.entries) + ")"


# ---------------------------------------------------------------------------
# involution expressions

def _inv(cur: _Cursor, base: BaseField):
    from .involution import (
        AdInv,
        IdInv,
        MultipleInv,
        QuatOO,
        QuatSS,
        TensorInv,
        quat_op,
        quat_po,
        UnitCan,
    )

    start = cur.pos
    head = cur.ident()
    if head == "id":
        return IdInv(base)
    if head == "u":
        (a,) = _element_list(cur, base)
        return UnitCan(a)
    if head in ("qo", "qs", "qpo", "qop"):
        a, b = _element_list(cur, base)
        maker = {"qo": QuatOO, "qs": QuatSS, "qpo": quat_po, "qop": quat_op}[head]
        return maker(a, b)
    if head == "ad":
        cur.expect("(")
        inner = _form(cur, base)
        cur.expect(")")
        return AdInv(inner)
    if head == "tens":
        cur.expect("(")
        lhs = _inv(cur, base)
        cur.expect(",")
        rhs = _inv(cur, base)
        cur.expect(")")
        return TensorInv(lhs, rhs)
    if head == "nx":
        cur.expect("(")
        m = cur.natural()
        cur.expect(",")
        inner = _inv(cur, base)
        cur.expect(")")
        return MultipleInv(m, inner)
    if head == "pow":
        cur.expect("(")
        inner = _inv(cur, base)
        cur.expect(",")
        m = cur.natural()
        cur.expect(")")
        if m < 1:
            raise ParseError("tensor power needs m >= 1", cur.pos, ())
        out = inner
        for _ in range(m - 1):
            out = TensorInv(out, inner)
        return out
    raise ParseError(f"unknown involution constructor {head!r}", start, _INV_HEADS)


def parse_inv_text(text: str, base: BaseField = QQ):
    cur = _Cursor(text)
    out = _inv(cur, base)
    cur.done()
    return out


def inv_to_text(expr) -> str:
    from .exactnum import elem_to_text
    from .involution import (
        AdInv,
        IdInv,
        MultipleInv,
        QuatOO,
        QuatSS,
        TensorInv,
        UnitCan,
    )

    match expr:
        case IdInv():
            return "id"
        case UnitCan(a=a):
            return f"u({elem_to_text(a)})"
        case QuatOO(a=a, b=b):
            return f"qo({elem_to_text(a)},{elem_to_text(b)})"
        case QuatSS(a=a, b=b):
            return f"qs({elem_to_text(a)},{elem_to_text(b)})"
        case AdInv(form=f):
            return f"ad({form_to_text(f)})"
        case MultipleInv(m=m, inner=inner):
            return f"nx({m},{inv_to_text(inner)})"
        case TensorInv():
            return f"tens({inv_to_text(expr.left)},{inv_to_text(expr.right)})"
    raise ParseError(f"unserializable node {expr!r}", 0, ())


# ---------------------------------------------------------------------------
# preorderings

def parse_preord_text(text: str, base: BaseField = QQ):
    from .wittring import preordering

    cur = _Cursor(text)
    head = cur.ident()
    if head != "preord":
        raise ParseError("expected 'preord'", 0, ("preord",))
    gens = _element_list(cur, base, allow_empty=True)
    cur.done()
    return preordering(base, gens)


def preord_to_text(pre) -> str:
    from .exactnum import elem_to_text

    return "preord(" + ",".join(elem_to_text(g) for g in pre.generators) + ")"
