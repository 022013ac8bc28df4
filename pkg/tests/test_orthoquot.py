"""Orthogonal quotients: O_2 normal forms, corner reduction, commutators."""

import itertools
import random

import pytest

from cgf.errors import (NotOrthogonal, SizeBound,
                        UnsupportedPresentation)
from cgf.homotopy import Homotopy
from cgf.matrices import Mat, block_perp, identity, membership
from cgf.orthoquot import (FactoredOrthogonal, O2Class, classify_o2,
                           commutator_harness, commutator_harness_hso,
                           conjugate_word_by_corner, corner_commutator_square_root,
                           hyperbolic_square_word, orth_inverse,
                           vaserstein_quotient)
from cgf.rings import PolyExt, PrimeField
from cgf.sampling import random_unit, random_word
from cgf.words import FAMILY_ORTH


def _enumerate_o2(ring):
    out = []
    pool = list(ring.elements())
    for a, b, c, d in itertools.product(pool, repeat=4):
        m = Mat(ring, [[a, b], [c, d]])
        if membership(m, "O"):
            out.append(m)
    return out


def test_classify_o2_examples():
    Z5 = PrimeField(5)
    cls = classify_o2(Mat(Z5, [[2, 0], [0, 3]]))
    assert cls.shape == "diag" and cls.u == Z5.coerce(2)
    cls2 = classify_o2(Mat(Z5, [[0, 1], [1, 0]]))
    assert cls2.shape == "antidiag" and cls2.u == Z5.one()
    cls3 = classify_o2(identity(Z5, 2))
    assert cls3.shape == "diag" and cls3.u == Z5.one()
    with pytest.raises(NotOrthogonal):
        classify_o2(Mat(Z5, [[1, 1], [0, 1]]))


def test_o2_exhaustive_count_z5_and_z7():
    for p, expected in ((5, 8), (7, 12)):
        ring = PrimeField(p)
        elems = _enumerate_o2(ring)
        assert len(elems) == expected
        for m in elems:
            cls = classify_o2(m)
            assert cls.reconstruct() == m


def test_vaserstein_quotient_identity_and_corner():
    Z5 = PrimeField(5)
    delta, w = vaserstein_quotient(identity(Z5, 6))
    assert delta.is_identity() and len(w) == 0
    a = block_perp(identity(Z5, 4), Mat(Z5, [[2, 0], [0, 3]]))
    delta2, w2 = vaserstein_quotient(a)
    assert delta2 == Mat(Z5, [[2, 0], [0, 3]])
    assert block_perp(identity(Z5, 4), delta2) @ w2.eval() == a


def test_vaserstein_quotient_elementary_words_trivial_corner():
    rng = random.Random(3)
    Z5 = PrimeField(5)
    for _ in range(20):
        w = random_word(rng, Z5, FAMILY_ORTH, 6, 6)
        a = w.eval()
        delta, word = vaserstein_quotient(a)
        assert delta.is_identity()
        assert block_perp(identity(Z5, 4), delta) @ word.eval() == a


def test_quotient_class_is_stable_under_elementary_perturbation():
    rng = random.Random(7)
    Z5 = PrimeField(5)
    base = block_perp(identity(Z5, 4), Mat(Z5, [[0, 2], [3, 0]]))
    d0, _ = vaserstein_quotient(base)
    for _ in range(10):
        e = random_word(rng, Z5, FAMILY_ORTH, 6, 5)
        d, _ = vaserstein_quotient(base @ e.eval())
        assert d == d0


def test_size_bound():
    Z5 = PrimeField(5)
    with pytest.raises(SizeBound):
        vaserstein_quotient(identity(Z5, 4))


def test_conjugation_by_corner_is_exact():
    rng = random.Random(11)
    Z5 = PrimeField(5)
    for shape in ("diag", "antidiag"):
        for _ in range(10):
            u = random_unit(rng, Z5)
            cls = O2Class(shape, u)
            corner = block_perp(identity(Z5, 4), cls.reconstruct())
            w = random_word(rng, Z5, FAMILY_ORTH, 6, 5)
            conj = conjugate_word_by_corner(w, cls)
            assert conj.eval() == corner @ w.eval() @ corner.inverse()


def test_hyperbolic_square_word():
    Z7 = PrimeField(7)
    for t in (2, 3, 6):
        w = hyperbolic_square_word(Z7, 8, 3, 4, Z7.coerce(t))
        m = w.eval()
        expect = identity(Z7, 8).entries
        rows = [list(r) for r in expect]
        rows[4][4] = Z7.coerce(t * t)
        rows[5][5] = Z7.coerce(t * t).inverse()
        assert m == Mat(Z7, rows)
        assert membership(m, "O")


def test_corner_commutator_square_root_table():
    rng = random.Random(13)
    Z7 = PrimeField(7)
    for sa in ("diag", "antidiag"):
        for sb in ("diag", "antidiag"):
            for _ in range(6):
                ca = O2Class(sa, random_unit(rng, Z7))
                cb = O2Class(sb, random_unit(rng, Z7))
                t = corner_commutator_square_root(ca, cb)
                da, db = ca.reconstruct(), cb.reconstruct()
                comm = da @ db @ orth_inverse(da) @ orth_inverse(db)
                assert comm == O2Class("diag", t * t).reconstruct()


def test_commutator_harness_word_inputs():
    rng = random.Random(17)
    Z5 = PrimeField(5)
    a = FactoredOrthogonal.from_word(random_word(rng, Z5, FAMILY_ORTH, 6, 5))
    b = FactoredOrthogonal.from_word(random_word(rng, Z5, FAMILY_ORTH, 6, 5))
    word, witness = commutator_harness(a, b)
    assert witness.all_passed()
    am, bm = a.matrix(), b.matrix()
    comm = am @ bm @ orth_inverse(am) @ orth_inverse(bm)
    assert word.eval() == block_perp(comm, identity(Z5, 2))


def test_commutator_harness_nontrivial_corners():
    rng = random.Random(19)
    Z5 = PrimeField(5)
    for sa in ("diag", "antidiag"):
        for sb in ("diag", "antidiag"):
            for _ in range(5):
                da = O2Class(sa, random_unit(rng, Z5)).reconstruct()
                db = O2Class(sb, random_unit(rng, Z5)).reconstruct()
                a = FactoredOrthogonal(da, random_word(rng, Z5, FAMILY_ORTH,
                                                       6, 4))
                b = FactoredOrthogonal(db, random_word(rng, Z5, FAMILY_ORTH,
                                                       6, 4))
                word, witness = commutator_harness(a, b)
                assert witness.all_passed()
                am, bm = a.matrix(), b.matrix()
                comm = am @ bm @ orth_inverse(am) @ orth_inverse(bm)
                assert word.eval() == block_perp(comm, identity(Z5, 2))
                assert membership(word.eval(), "O")


def test_commutator_harness_polynomial_constant_corner():
    rng = random.Random(23)
    Z5 = PrimeField(5)
    rx = PolyExt(Z5, "X")
    for _ in range(5):
        da = O2Class("diag", rx.coerce(2)).reconstruct()
        wa = random_word(rng, rx, FAMILY_ORTH, 6, 3)
        wb = random_word(rng, rx, FAMILY_ORTH, 6, 3)
        a = FactoredOrthogonal(da, wa)
        b = FactoredOrthogonal.from_word(wb)
        word, witness = commutator_harness(a, b)
        assert witness.all_passed()


def test_commutator_harness_nonconstant_polynomial_corner():
    # over Z/9[X] the corner unit 1 + 3X genuinely depends on X
    from cgf.rings import ModularRing
    rng = random.Random(31)
    Z9 = ModularRing(9)
    rx = PolyExt(Z9, "X")
    u = rx.coerce([1, 3])
    da = O2Class("diag", u).reconstruct()
    db = O2Class("antidiag", rx.coerce(2)).reconstruct()
    a = FactoredOrthogonal(da, random_word(rng, rx, FAMILY_ORTH, 6, 3))
    b = FactoredOrthogonal(db, random_word(rng, rx, FAMILY_ORTH, 6, 3))
    word, witness = commutator_harness(a, b)
    assert witness.all_passed()
    am, bm = a.matrix(), b.matrix()
    comm = am @ bm @ orth_inverse(am) @ orth_inverse(bm)
    assert word.eval() == block_perp(comm, identity(rx, 2))


def test_raw_polynomial_input_rejected():
    Z5 = PrimeField(5)
    rx = PolyExt(Z5, "X")
    with pytest.raises(UnsupportedPresentation):
        FactoredOrthogonal.from_matrix(identity(rx, 6))


def test_commutator_harness_hso():
    rng = random.Random(29)
    Z5 = PrimeField(5)
    rt = PolyExt(Z5, "T")
    base = random_word(rng, Z5, FAMILY_ORTH, 6, 4)
    alpha = Homotopy.from_word("orthogonal", base.times_variable(rt))
    b = FactoredOrthogonal(O2Class("antidiag", Z5.coerce(2)).reconstruct(),
                           random_word(rng, Z5, FAMILY_ORTH, 6, 4))
    word, witness = commutator_harness_hso(alpha, b)
    assert witness.all_passed()
    am = base.eval()
    bm = b.matrix()
    comm = am @ bm @ orth_inverse(am) @ orth_inverse(bm)
    assert word.eval() == block_perp(comm, identity(Z5, 2))
