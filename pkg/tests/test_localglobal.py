"""Quillen splitting and comaximal patching on explicit integer charts."""

from fractions import Fraction

import pytest

from cgf.errors import (BadComaximal, OverlapMismatch,
                        SplitExponentExhausted)
from cgf.localglobal import fixed_frame_check, patch, quillen_split
from cgf.matrices import Mat
from cgf.rings import FractionRing, IntegerRing, PolyExt
from cgf.words import FAMILY_LIN, GenWord, word_from_pairs


def _overlap_ring(s):
    return PolyExt(FractionRing(IntegerRing(), s), "T")


def test_documented_instance_splits_at_exponent_two():
    rt = _overlap_ring(6)
    theta = word_from_pairs(rt, 2, FAMILY_LIN,
                            [(1, 2, rt.coerce([0, Fraction(1, 6)]))])
    res = quillen_split(theta, 3, -2, exponent=2)
    assert res.b == rt.base.coerce(4)
    # theta(4T) = e_12(2T/3); the complement evaluates to e_12(-T/2)
    assert res.theta_a.gens[0].param == rt.coerce([0, Fraction(2, 3)])
    comp = res.theta_b.eval()
    assert comp.entries[0][1] == rt.coerce([0, Fraction(-1, 2)])
    assert res.witness.all_passed()


def test_documented_instance_search_finds_a_valid_split():
    rt = _overlap_ring(6)
    theta = word_from_pairs(rt, 2, FAMILY_LIN,
                            [(1, 2, rt.coerce([0, Fraction(1, 6)]))])
    res = quillen_split(theta, 3, -2)
    # the least passing exponent is 1 here (b = -2); both checks verified
    assert res.exponent == 1
    assert res.witness.all_passed()
    assert (res.theta_a.eval() @ res.theta_b.eval()) == theta.eval()


def test_empty_word_split_convention():
    rt = _overlap_ring(6)
    theta = GenWord(rt, 2, FAMILY_LIN, ())
    res = quillen_split(theta, 3, -2)
    assert res.b == rt.base.coerce(-2)
    assert len(res.theta_a) == 0 and len(res.theta_b) == 0


def test_integer_parameters_split_at_exponent_zero():
    rt = _overlap_ring(6)
    theta = word_from_pairs(rt, 3, FAMILY_LIN, [(1, 2, rt.coerce([0, 5]))])
    res = quillen_split(theta, 3, -2)
    assert res.exponent == 0
    assert res.theta_a == theta
    assert len(res.theta_b) == 2  # inverse + original, evaluating locally


def test_split_exhaustion_reported():
    # denominator 250 = 2 * 5^3: N = 0 leaves the 2-part (not s1-local) and
    # N in 1..6 leaves a 5-part in the complement, since 125 never divides
    # 1 - (-4)^N there
    rt20 = _overlap_ring(-20)
    theta = word_from_pairs(rt20, 2, FAMILY_LIN,
                            [(1, 2, rt20.coerce([0, Fraction(1, 250)]))])
    with pytest.raises(SplitExponentExhausted):
        quillen_split(theta, 5, -4, n_max=6)


def test_split_comaximality_guard():
    rt = _overlap_ring(6)
    theta = GenWord(rt, 2, FAMILY_LIN, ())
    with pytest.raises(BadComaximal):
        quillen_split(theta, 3, 2)


def test_patch_trivial_and_integral():
    z = IntegerRing()
    zt = PolyExt(z, "T")
    r1 = PolyExt(FractionRing(z, 3), "T")
    r2 = PolyExt(FractionRing(z, -2), "T")
    m1 = Mat(r1, [[r1.coerce([Fraction(63, 9)]), r1.coerce([0, 1])],
                  [r1.coerce(0), r1.coerce(1)]])
    m2 = Mat(r2, [[r2.coerce([Fraction(28, 4)]), r2.coerce([0, 1])],
                  [r2.coerce(0), r2.coerce(1)]])
    glued = patch(m1, m2, 3, -2)
    assert glued == Mat(zt, [[zt.coerce(7), zt.variable()],
                             [zt.coerce(0), zt.coerce(1)]])


def test_patch_detects_overlap_mismatch():
    z = IntegerRing()
    r1 = PolyExt(FractionRing(z, 3), "T")
    r2 = PolyExt(FractionRing(z, -2), "T")
    m1 = Mat(r1, [[r1.coerce(1)]])
    m2 = Mat(r2, [[r2.coerce(2)]])
    with pytest.raises(OverlapMismatch):
        patch(m1, m2, 3, -2)


def test_patch_rejects_non_integral_agreement():
    z = IntegerRing()
    r1 = PolyExt(FractionRing(z, 6), "T")
    m1 = Mat(r1, [[r1.coerce(Fraction(1, 6))]])
    with pytest.raises(OverlapMismatch):
        patch(m1, m1, 3, -2)


def test_fixed_frame_check():
    rt = _overlap_ring(6)
    v = Mat(rt, [[1, 0, 0], [0, 1, 0]])
    assert fixed_frame_check(v, GenWord(rt, 3, FAMILY_LIN, ()))
    # generators sourcing from the padded zero rows fix [V; 0]
    assert fixed_frame_check(v, word_from_pairs(rt, 3, FAMILY_LIN,
                                                [(3, 1, 5)]))
    # generators feeding column 3 from a live column move the frame
    assert not fixed_frame_check(v, word_from_pairs(rt, 3, FAMILY_LIN,
                                                    [(1, 3, 5)]))


def test_split_preserves_fixed_frames():
    rt = _overlap_ring(6)
    v = Mat(rt, [[1, 0, 0], [0, 1, 0]])
    # two chart words fixing [V; 0], glued across the overlap
    eps1 = word_from_pairs(rt, 3, FAMILY_LIN,
                           [(3, 1, rt.coerce([0, Fraction(1, 3)]))])
    eps2 = word_from_pairs(rt, 3, FAMILY_LIN,
                           [(3, 2, rt.coerce([0, Fraction(1, 2)]))])
    theta = eps1 + eps2.invert()
    assert fixed_frame_check(v, theta)
    res = quillen_split(theta, 3, -2)
    assert fixed_frame_check(v, res.theta_a)
    assert fixed_frame_check(v, res.theta_b)
