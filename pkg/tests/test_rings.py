"""Ring tower: canonical forms, axioms, units, substitution, localization."""

import random
from fractions import Fraction

import pytest

from cgf.errors import (DegreeCapExceeded, DescriptorMismatch, NotAUnit,
                        UnsupportedQuotient, UnsupportedRing)
from cgf.rings import (FractionRing, IntegerRing, LocalizedIntegers,
                       ModularRing, PolyExt, PrimeField, QuotientRing,
                       TruncatedPolyLocal, arith, inverse, is_unit,
                       localize_denominator_check, ring_from_json,
                       substitute, unit_ideal_witness, ideal_combination)

from conftest import all_test_rings, local_test_rings


# ---------------------------------------------------------------------------
# arith

def test_arith_mod4():
    R = ModularRing(4)
    assert arith(R.coerce(3), R.coerce(3), "mul") == R.coerce(1)


def test_arith_localized_integers():
    R = LocalizedIntegers(5)
    a = R.coerce(Fraction(1, 2))
    b = R.coerce(Fraction(1, 3))
    assert arith(a, b, "add") == R.coerce(Fraction(5, 6))


def test_arith_truncated_poly():
    R = TruncatedPolyLocal(2, 2)
    x = R.coerce((0, 1))
    assert (x * x).is_zero()


def test_arith_descriptor_mismatch():
    with pytest.raises(DescriptorMismatch):
        arith(ModularRing(4).coerce(1), ModularRing(5).coerce(1), "add")


def test_ring_axioms_randomized():
    # 1250 triples x 8 axiom instances: >= 10^4 checked samples per ring
    rng = random.Random(7)
    for ring in all_test_rings():
        for _ in range(1250):
            a, b, c = (ring.random(rng) for _ in range(3))
            assert (a + b) + c == a + (b + c)
            assert (a * b) * c == a * (b * c)
            assert a * (b + c) == a * b + a * c
            assert a + b == b + a
            assert a * b == b * a
            assert a + ring.zero() == a
            assert a * ring.one() == a
            assert a - a == ring.zero()


# ---------------------------------------------------------------------------
# units

def test_units_mod4():
    R = ModularRing(4)
    assert not is_unit(R.coerce(2))
    assert inverse(R.coerce(3)) == R.coerce(3)
    with pytest.raises(NotAUnit):
        inverse(R.coerce(2))


def test_nonconstant_poly_not_unit_over_domain():
    R = PolyExt(LocalizedIntegers(5), "T")
    f = R.coerce([2, 5])  # 2 + 5T
    assert not is_unit(f)


def test_poly_unit_with_nilpotent_tail():
    R = PolyExt(ModularRing(4), "T")
    f = R.coerce([1, 2])  # 1 + 2T, unit since (1+2T)(1-2T) = 1
    assert is_unit(f)
    assert f * inverse(f) == R.one()


def test_unit_times_inverse_on_local_rings():
    rng = random.Random(11)
    for ring in local_test_rings():
        seen = 0
        for a in ring.elements():
            if is_unit(a):
                assert a * inverse(a) == ring.one()
                seen += 1
        assert seen > 0
    R = LocalizedIntegers(5)
    for _ in range(200):
        a = R.random(rng)
        if is_unit(a):
            assert a * inverse(a) == R.one()


def test_pivot_existence_on_local_rings():
    # in a local ring a tuple generating the unit ideal has a unit entry
    rng = random.Random(13)
    for ring in local_test_rings():
        pool = list(ring.elements())
        for _ in range(300):
            tup = [rng.choice(pool) for _ in range(3)]
            witness = unit_ideal_witness(ring, tup)
            if witness is not None:
                total = ring.zero()
                for c, v in zip(witness, tup):
                    total = total + c * v
                assert total == ring.one()
                assert any(v.is_unit() for v in tup)


# ---------------------------------------------------------------------------
# substitution

def test_substitute_basics():
    Z4 = ModularRing(4)
    RT = PolyExt(Z4, "T")
    f = RT.coerce([0, 3, 1])  # T^2 + 3T
    assert substitute(f, Z4.coerce(0)).is_zero()
    assert substitute(f, Z4.coerce(1)).is_zero()  # 4 = 0 mod 4
    g = RT.coerce([0, 2])  # 2T
    assert substitute(g, Z4.coerce(2)).is_zero()


def test_substitute_constant_term_randomized():
    rng = random.Random(17)
    for base in (ModularRing(9), PrimeField(5), IntegerRing()):
        RT = PolyExt(base, "T")
        for _ in range(100):
            f = RT.random(rng)
            assert substitute(f, base.zero()) == RT.constant_term(f)


# ---------------------------------------------------------------------------
# localization of denominators

def test_localize_denominator_check_examples():
    Z6 = FractionRing(IntegerRing(), 6)
    RT = PolyExt(Z6, "T")
    two_thirds_t = RT.coerce([0, Fraction(2, 3)])
    assert localize_denominator_check(two_thirds_t, 3)
    minus_half_t = RT.coerce([0, Fraction(-1, 2)])
    assert localize_denominator_check(minus_half_t, -2)
    sixth_t = RT.coerce([0, Fraction(1, 6)])
    assert not localize_denominator_check(sixth_t, 3)


def test_fraction_ring_membership():
    Z6 = FractionRing(IntegerRing(), 6)
    Z6.coerce(Fraction(5, 36))
    with pytest.raises(DescriptorMismatch):
        Z6.coerce(Fraction(1, 5))
    assert is_unit(Z6.coerce(Fraction(4, 3)))
    assert not is_unit(Z6.coerce(Fraction(5, 6)))


# ---------------------------------------------------------------------------
# descriptor flags and tree

def test_local_flags():
    assert ModularRing(4).is_local
    assert ModularRing(9).is_local
    assert not ModularRing(6).is_local
    assert PrimeField(7).is_local
    assert TruncatedPolyLocal(3, 2).is_local
    assert LocalizedIntegers(5).is_local
    assert not PolyExt(ModularRing(4)).is_local
    assert not FractionRing(IntegerRing(), 6).is_local
    assert not IntegerRing().is_local


def test_quotient_integer_style():
    Q = QuotientRing(ModularRing(4), [2])
    assert Q.modulus == 2
    assert Q.is_local
    assert Q.coerce(3) == Q.coerce(1)
    Z = IntegerRing()
    Q2 = QuotientRing(Z, [Z.coerce(6)])
    assert Q2.modulus == 6 and not Q2.is_local
    # projection / lift round trip
    v = Z.coerce(7)
    assert Q2.lift(Q2.project(v)) == Z.coerce(1)


def test_quotient_poly_style():
    F5 = PrimeField(5)
    RT = PolyExt(F5, "x")
    Q = QuotientRing(RT, [RT.coerce([1, 0, 1])])  # x^2 + 1
    x = Q.coerce(RT.variable())
    assert x * x == Q.coerce(-1)
    inv = inverse(x)
    assert x * inv == Q.one()
    with pytest.raises(UnsupportedQuotient):
        QuotientRing(RT, [RT.coerce([1, 0, 1]), RT.coerce([2])])


def test_degree_cap():
    RT = PolyExt(ModularRing(5), "T", degree_cap=4)
    with pytest.raises(DegreeCapExceeded):
        RT.coerce([1] * 7)


def test_fraction_ring_base_restriction():
    with pytest.raises(UnsupportedRing):
        FractionRing(ModularRing(6), 2)


def test_serialization_round_trip():
    rng = random.Random(19)
    for ring in all_test_rings():
        back = ring_from_json(ring.to_json())
        assert back == ring
        for _ in range(20):
            v = ring.random(rng)
            assert back.value_from_json(v.to_json()) == v


def test_ideal_combination_mod4():
    R = ModularRing(4)
    gens = [R.coerce(2)]
    q = ideal_combination(R, gens, R.coerce(2))
    assert q is not None
    assert sum((c * g for c, g in zip(q, gens)), R.zero()) == R.coerce(2)
    assert ideal_combination(R, gens, R.coerce(1)) is None
