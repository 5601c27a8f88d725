import pytest

from wia import (
    AdInv,
    IdInv,
    MultipleInv,
    QQ,
    QuatOO,
    QuatSS,
    TensorInv,
    UnitCan,
    embeds_quadratic_etale,
    flip_flop,
    g_membership,
    inv_signature,
    profile,
    qform,
    quad_field,
    quat_op,
    quat_orth_iso,
    quat_po,
    rat_elem,
    sym_skew_dims,
    trace_form,
    witt_equivalent,
)
from wia.errors import (
    DegenerateAlgebra,
    MixedFields,
    MixedUnitaryCentres,
    ShapeMismatch,
    UnsupportedShape,
    ZeroElement,
)
from wia.involution import atom_ramification, collapse, degree, inv_type
from conftest import rand_elem, rand_form

r = rat_elem
P = QQ.orderings()[0]


def _nonsquare_elems(rng, count):
    from wia.exactnum import is_square

    out = []
    while len(out) < count:
        x = rand_elem(rng, 15)
        if not is_square(x):
            out.append(x)
    return out


def test_atom_validation():
    with pytest.raises(ZeroElement):
        QuatSS(r(0), r(1))
    with pytest.raises(ZeroElement):
        UnitCan(r(0))
    with pytest.raises(ZeroElement):
        AdInv(qform(QQ, []))
    F = quad_field(2)
    with pytest.raises(MixedFields):
        TensorInv(QuatSS(r(1), r(1)), QuatSS(F(1), F(1)))
    with pytest.raises(MixedUnitaryCentres):
        TensorInv(UnitCan(r(2)), UnitCan(r(3)))
    # same square class is fine
    TensorInv(UnitCan(r(2)), UnitCan(r(8)))


def test_mixed_marking_normalization():
    # (a | b) = (-ab .| b) and (a |. b) = (b .| a)
    atom = quat_po(r(3), r(5))
    assert isinstance(atom, QuatOO)
    assert atom.a.as_fraction() == -15 and atom.b.as_fraction() == 5
    atom = quat_op(r(3), r(5))
    assert atom.a.as_fraction() == 5 and atom.b.as_fraction() == 3


def test_profile_examples():
    p = profile(QuatSS(r(-1), r(-1)))
    assert p.type == -1 and p.degree == 2 and p.index == 2
    assert {v.name for v in p.ramification} == {"inf", "2"}
    p = profile(TensorInv(QuatSS(r(-1), r(-1)), QuatSS(r(-1), r(-1))))
    assert p.type == 1 and p.degree == 4 and p.index == 1
    assert p.ramification == frozenset()
    p = profile(UnitCan(r(4)))
    assert p.type == 0 and p.degenerate and p.degree == 1
    p = profile(MultipleInv(3, QuatOO(r(2), r(3))))
    assert p.degree == 6 and p.type == 1


def test_profile_multiplicative(rng):
    atoms = [
        QuatSS(r(-1), r(-1)),
        QuatOO(r(2), r(3)),
        AdInv(qform(QQ, [1, -2])),
        QuatSS(r(2), r(-5)),
        UnitCan(r(-1)),
    ]
    for _ in range(60):
        lhs = atoms[rng.randrange(len(atoms))]
        rhs = atoms[rng.randrange(len(atoms))]
        try:
            both = TensorInv(lhs, rhs)
        except MixedUnitaryCentres:
            continue
        p, pl, pr = profile(both), profile(lhs), profile(rhs)
        assert p.type == pl.type * pr.type
        assert p.degree == pl.degree * pr.degree
        assert p.ramification == pl.ramification ^ pr.ramification


def test_unitary_index_over_centre():
    # (-1,-1) ramifies at {inf, 2}; sqrt(-1) kills it (nonsquare at both)
    psi = TensorInv(QuatSS(r(-1), r(-1)), UnitCan(r(-1)))
    assert profile(psi).index == 1
    # sqrt(17): 17 is a square at 2, so the class survives
    psi = TensorInv(QuatSS(r(-1), r(-1)), UnitCan(r(17)))
    assert profile(psi).index == 2


def test_trace_forms():
    t = trace_form(UnitCan(r(7)))
    assert [e.as_fraction() for e in t.as_qform().entries] == [1, -7]
    t = trace_form(QuatSS(r(-1), r(-1)))
    assert [e.as_fraction() for e in t.as_qform().entries] == [2, 2, 2, 2]
    t = trace_form(QuatOO(r(2), r(3)))
    # 2<<2,-3>> = 2(<1,-2> x <1,3>)
    assert sorted(e.as_fraction() for e in t.as_qform().entries) == [-12, -4, 2, 6]
    t = trace_form(AdInv(qform(QQ, [1, 1])))
    assert [e.as_fraction() for e in t.as_qform().entries] == [1, 1, 1, 1]
    t = trace_form(IdInv(QQ))
    assert t.as_qform().dim == 1


def test_trace_form_dimension(rng):
    from wia.involution import centre_disc

    exprs = [
        QuatSS(r(-1), r(-1)),
        TensorInv(QuatOO(r(2), r(3)), QuatSS(r(5), r(-1))),
        TensorInv(AdInv(qform(QQ, [1, 2, -3])), UnitCan(r(5))),
        MultipleInv(2, QuatSS(r(-1), r(3))),
        TensorInv(UnitCan(r(5)), UnitCan(r(20))),
    ]
    for e in exprs:
        k = 2 if centre_disc(e) is not None else 1
        assert trace_form(e).as_qform().dim == k * degree(e) ** 2


def test_trace_multiplicative_first_kind(rng):
    first_kind = [
        QuatSS(r(-1), r(-1)),
        QuatOO(r(2), r(3)),
        AdInv(qform(QQ, [1, -2])),
    ]
    for lhs in first_kind:
        for rhs in first_kind + [UnitCan(r(5))]:
            t = trace_form(TensorInv(lhs, rhs))
            prod = None
            from wia.qform import tensor

            prod = tensor(trace_form(lhs).as_qform(), trace_form(rhs).as_qform())
            assert witt_equivalent(t.as_qform(), prod)
            assert t.as_qform().dim == prod.dim


def test_unitary_product_trace():
    # same centre: Tr(Psi (x) Theta) = <<c>> (x) (core_l (x) core_r)
    lhs, rhs = UnitCan(r(5)), UnitCan(r(20))
    t = trace_form(TensorInv(lhs, rhs))
    assert t.pfister_factor is not None
    assert t.as_qform().dim == 2  # degree 1 unitary product


def test_inv_signature():
    assert inv_signature(QuatSS(r(-1), r(-1)), P) == 2
    assert inv_signature(AdInv(qform(QQ, [1, -1])), P) == 0
    assert inv_signature(UnitCan(r(-1)), P) == 1
    assert inv_signature(AdInv(qform(QQ, [1, 1, -1])), P) == 1


def test_inv_signature_multiplicative(rng):
    pool = [
        QuatSS(r(-1), r(-1)),
        QuatSS(r(2), r(3)),
        QuatOO(r(-1), r(-1)),
        QuatOO(r(2), r(-3)),
        AdInv(qform(QQ, [1, 1])),
        AdInv(qform(QQ, [1, -2, 3])),
        UnitCan(r(-2)),
        UnitCan(r(7)),
    ]
    count = 0
    for _ in range(200):
        lhs = pool[rng.randrange(len(pool))]
        rhs = pool[rng.randrange(len(pool))]
        try:
            both = TensorInv(lhs, rhs)
        except MixedUnitaryCentres:
            continue
        count += 1
        assert inv_signature(both, P) == inv_signature(lhs, P) * inv_signature(
            rhs, P
        )
    assert count > 100


def test_ad_signature_is_absolute_value(rng):
    for _ in range(50):
        f = rand_form(rng, 4)
        from wia import signature

        assert inv_signature(AdInv(f), P) == abs(signature(f, P))


def test_quat_orth_iso():
    assert quat_orth_iso(r(2), r(3), r(2), r(6)) is True
    assert quat_orth_iso(r(2), r(3), r(3), r(2)) is False
    assert quat_orth_iso(r(5), r(7), r(5), r(7)) is True
    with pytest.raises(ZeroElement):
        quat_orth_iso(r(0), r(1), r(1), r(1))


def test_quat_orth_iso_properties(rng):
    pairs = [(rand_elem(rng, 10), rand_elem(rng, 10)) for _ in range(12)]
    for a, b in pairs:
        assert quat_orth_iso(a, b, a, b)
    for a, b in pairs:
        for c, d in pairs:
            lhs = quat_orth_iso(a, b, c, d)
            assert lhs == quat_orth_iso(c, d, a, b)
            if lhs:
                t1 = trace_form(QuatOO(a, b)).as_qform()
                t2 = trace_form(QuatOO(c, d)).as_qform()
                assert witt_equivalent(t1, t2)


def test_flip_flop_shapes():
    a, b, c, d = r(2), r(3), r(5), r(7)
    out = flip_flop(TensorInv(QuatOO(a, b), QuatOO(c, d)))
    assert isinstance(out.left, QuatSS) and isinstance(out.right, QuatSS)
    assert out.left.b.as_fraction() == 15 and out.right.b.as_fraction() == 14
    out = flip_flop(TensorInv(QuatOO(a, b), QuatSS(c, d)))
    assert isinstance(out.left, QuatSS) and isinstance(out.right, QuatOO)
    with pytest.raises(ShapeMismatch):
        flip_flop(QuatOO(a, b))
    with pytest.raises(ShapeMismatch):
        flip_flop(TensorInv(QuatSS(a, b), QuatOO(c, d)))


def test_flip_flop_preserves_invariants(rng):
    for _ in range(60):
        a, b = rand_elem(rng, 12), rand_elem(rng, 12)
        c, d = rand_elem(rng, 12), rand_elem(rng, 12)
        expr = TensorInv(QuatOO(a, b), QuatOO(c, d))
        out = flip_flop(expr)
        assert profile(out) == profile(expr)
        assert witt_equivalent(
            trace_form(out).as_qform(), trace_form(expr).as_qform()
        )
        assert trace_form(out).as_qform().dim == trace_form(expr).as_qform().dim


def test_g_membership():
    assert g_membership(QuatSS(r(-1), r(-1)), r(2)) is True
    assert g_membership(QuatSS(r(-1), r(-1)), r(-1)) is False
    assert g_membership(QuatOO(r(2), r(3)), r(3)) is True
    assert g_membership(UnitCan(r(2)), r(7)) is True  # 7 = 9 - 2
    with pytest.raises(UnsupportedShape):
        g_membership(TensorInv(QuatSS(r(1), r(1)), QuatSS(r(1), r(1))), r(1))


def test_sym_skew_dims():
    assert sym_skew_dims(QuatSS(r(-1), r(-1))) == (1, 3)
    assert sym_skew_dims(AdInv(qform(QQ, [1, 1]))) == (3, 1)
    assert sym_skew_dims(UnitCan(r(-1))) == (1, 1)
    assert sym_skew_dims(QuatOO(r(2), r(3))) == (3, 1)
    with pytest.raises(DegenerateAlgebra):
        sym_skew_dims(UnitCan(r(4)))


def test_awi_square_consistency(rng):
    # Psi (x) Psi = Ad(Tr Psi) for the first kind
    pool = [
        QuatSS(r(-1), r(-1)),
        QuatOO(r(2), r(3)),
        AdInv(qform(QQ, [1, -2])),
        QuatSS(r(2), r(-3)),
    ]
    for psi in pool:
        sq = TensorInv(psi, psi)
        ad = AdInv(trace_form(psi).as_qform())
        assert profile(sq) == profile(ad)
        assert witt_equivalent(
            trace_form(sq).as_qform(), trace_form(ad).as_qform()
        )


def test_embeds_quadratic_etale():
    assert embeds_quadratic_etale(r(-1), QuatSS(r(2), r(3))).is_true
    assert embeds_quadratic_etale(r(7), AdInv(qform(QQ, [1, -7]))).is_true
    assert embeds_quadratic_etale(r(5), QuatOO(r(2), r(3))).is_false
    assert embeds_quadratic_etale(r(2), QuatOO(r(8), r(3))).is_true
    # hyperbolic padding must come in even packets
    v = embeds_quadratic_etale(r(7), AdInv(qform(QQ, [1, -7, 1, -1])))
    assert v.is_false
    v = embeds_quadratic_etale(r(7), AdInv(qform(QQ, [1, -7, 1, -1, 2, -2])))
    assert v.is_true
    v = embeds_quadratic_etale(r(3), TensorInv(QuatSS(r(2), r(3)), QuatSS(r(-1), r(5))))
    assert not v.decided


def test_collapse_shapes():
    phi, atoms = collapse(MultipleInv(3, TensorInv(AdInv(qform(QQ, [1, -2])), QuatSS(r(-1), r(-1)))))
    assert phi.dim == 6 and len(atoms) == 1
    phi, atoms = collapse(IdInv(QQ))
    assert phi.dim == 1 and atoms == []
    assert inv_type(MultipleInv(2, QuatSS(r(1), r(1)))) == -1


def test_ramification_product_formula(rng):
    # quaternion ramification sets always have even size
    for _ in range(60):
        a, b = rand_elem(rng, 20), rand_elem(rng, 20)
        assert len(atom_ramification(QuatOO(a, b))) % 2 == 0
