#!/usr/bin/env python3
"""Tour of the ring tower and the exact matrix layer.

Every value is stored in canonical form, so equality is literal and all
arithmetic is exact: residues, fractions with constrained denominators,
truncated polynomials, and polynomial extensions of any of them.
"""

from fractions import Fraction

from cgf import (FractionRing, IntegerRing, LocalizedIntegers, Mat,
                 ModularRing, PolyExt, PrimeField, TruncatedPolyLocal,
                 identity, localize_denominator_check, membership, phi, psi,
                 substitute)

print("== the ring tower ==")
Z4 = ModularRing(4)
print("Z/4:  3 * 3 =", Z4.coerce(3) * Z4.coerce(3))
print("Z/4:  is 2 a unit?", Z4.coerce(2).is_unit(), "| 3^-1 =",
      Z4.coerce(3).inverse())

Zp = LocalizedIntegers(5)
print("Z_(5): 1/2 + 1/3 =", Zp.coerce(Fraction(1, 2)) + Zp.coerce(Fraction(1, 3)))

F2x = TruncatedPolyLocal(2, 2)
x = F2x.coerce((0, 1))
print("F_2[x]/(x^2): x * x =", x * x, "(nilpotent truncation)")

RT = PolyExt(Z4, "T")
f = RT.coerce([0, 3, 1])  # T^2 + 3T
print("Z/4[T]: (T^2 + 3T) at T=1 ->", substitute(f, Z4.coerce(1)))
u = RT.coerce([1, 2])  # 1 + 2T is a unit because 2 is nilpotent mod 4
print("Z/4[T]: (1 + 2T)^-1 =", u.inverse(), "| check:", u * u.inverse())

Z6 = FractionRing(IntegerRing(), 6)
a = Z6.coerce(Fraction(2, 3))
print("Z[1/6]: is 2/3 supported by powers of 3?",
      localize_denominator_check(a, 3),
      "| by powers of 2?", localize_denominator_check(a, 2))

print()
print("== matrices and the standard forms ==")
Z5 = PrimeField(5)
print("psi_2 =")
for row in psi(Z5, 2).entries:
    print("   ", [repr(e) for e in row])
print("phi_1 =", phi(Z5, 1).entries)

d = Mat(Z5, [[2, 0], [0, 3]])
print("diag(2,3) over Z/5: O?", membership(d, "O"), " SO?", membership(d, "SO"))
anti = Mat(Z5, [[0, 2], [3, 0]])
print("antidiag(2,3):      O?", membership(anti, "O"),
      " SO?", membership(anti, "SO"), "(det = -1)")
print("I_4 symplectic?", membership(identity(Z5, 4), "Sp"))
