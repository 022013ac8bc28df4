import random

import pytest

from cgf.rings import (FractionRing, IntegerRing, LocalizedIntegers,
                       ModularRing, PolyExt, PrimeField, QuotientRing,
                       RationalField, TruncatedPolyLocal)


@pytest.fixture
def rng():
    return random.Random(20240811)


def local_test_rings():
    """The small local rings used throughout the suite."""
    return [ModularRing(4), ModularRing(8), ModularRing(9),
            TruncatedPolyLocal(2, 2), TruncatedPolyLocal(3, 2),
            PrimeField(5)]


def all_test_rings():
    return local_test_rings() + [
        IntegerRing(), RationalField(), ModularRing(6),
        LocalizedIntegers(5), PolyExt(ModularRing(4), "T"),
        FractionRing(IntegerRing(), 6),
        QuotientRing(ModularRing(4), [2]),
    ]
