"""Golden corpus: fifty hand-built involution expressions over Q covering
every atom kind, tensors up to three factors, and matrix multiples."""

from wia import QQ
from wia.parser import parse_inv_text

CORPUS_TEXTS = [
    # identity and adjoints of forms (split orthogonal)
    "id",
    "ad(diag(1))",
    "ad(diag(1,1,-1))",
    "ad(diag(1,-1))",
    "ad(diag(1,2,-3))",
    "ad(diag(1,-7))",
    "ad(diag(2,3,5))",
    "ad(pf(7))",
    "ad(pf(-1,-1))",
    # orthogonal quaternions, split and division, both real types
    "qo(1,1)",
    "qo(2,-1)",
    "qo(4,5)",
    "qo(2,3)",
    "qo(3,5)",
    "qo(-1,-1)",
    "qo(-2,-3)",
    "qo(-1,-2)",
    "qpo(2,3)",
    "qop(5,2)",
    # symplectic quaternions
    "qs(1,1)",
    "qs(2,3)",
    "qs(-1,2)",
    "qs(-1,-1)",
    "qs(-2,-3)",
    "qs(-1,-7)",
    "qs(3,5)",
    # unitary atoms: degenerate, positive and negative discriminants
    "u(1)",
    "u(4)",
    "u(2)",
    "u(7)",
    "u(-1)",
    "u(-2)",
    "u(-7)",
    # matrix multiples
    "nx(2,ad(diag(1,-2)))",
    "nx(4,ad(pf(7)))",
    "nx(3,qo(-1,-1))",
    "nx(2,qo(-1,-1))",
    "nx(2,qs(2,3))",
    "nx(2,u(-1))",
    "nx(3,qs(2,3))",
    # two-factor tensors
    "tens(ad(diag(1,-2)),qs(-1,-1))",
    "tens(qo(2,3),qo(2,6))",
    "tens(qs(-1,-1),qs(-1,-1))",
    "tens(qs(2,3),qs(3,5))",
    "tens(ad(diag(1,1)),u(-1))",
    "tens(qs(-1,-1),u(-1))",
    "tens(ad(diag(1,-2)),u(2))",
    # three-factor tensors
    "tens(ad(diag(1,1)),tens(qs(-1,-1),qs(-1,-1)))",
    "tens(qo(2,3),tens(qo(3,5),qs(-1,-1)))",
    "tens(ad(diag(2,-3)),tens(qs(2,3),u(-1)))",
]

assert len(CORPUS_TEXTS) == 50


def corpus():
    return [parse_inv_text(text, QQ) for text in CORPUS_TEXTS]
