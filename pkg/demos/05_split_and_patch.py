#!/usr/bin/env python3
"""Two-chart splitting and patching over the integers.

A word over Z[1/6][T] with parameters vanishing at T = 0 factors as
theta(bT) . {theta(bT)^{-1} theta(T)} with b a power of one chart element:
the first factor's denominators live over the 3-chart and the second
factor's evaluation over the 2-chart.  Matrices agreeing across the overlap
glue to integral ones because the charts are comaximal.
"""

from fractions import Fraction

from cgf import (FractionRing, IntegerRing, Mat, PolyExt, fixed_frame_check,
                 patch, quillen_split)
from cgf.words import FAMILY_LIN, word_from_pairs

Z = IntegerRing()
RT = PolyExt(FractionRing(Z, 6), "T")

print("== the documented instance: theta = e_12(T/6), s1 = 3, s2 = -2 ==")
theta = word_from_pairs(RT, 2, FAMILY_LIN,
                        [(1, 2, RT.coerce([0, Fraction(1, 6)]))])
res = quillen_split(theta, 3, -2, exponent=2)
print("b =", res.b, "(= s2^2)")
print("theta_a =", res.theta_a, " (denominators over the 3-chart)")
print("theta_b evaluates to:")
for row in res.theta_b.eval().entries:
    print("   ", [repr(e) for e in row])
print("witness:")
for c in res.witness.checks:
    print(f"    [{c.status}] {c.name}")

print()
print("== the search picks the least exponent that passes ==")
res_search = quillen_split(theta, 3, -2)
print("least N =", res_search.exponent, "with b =", res_search.b)

print()
print("== frames fixed by theta stay fixed by both factors ==")
v = Mat(RT, [[1, 0, 0], [0, 1, 0]])
eps1 = word_from_pairs(RT, 3, FAMILY_LIN,
                       [(3, 1, RT.coerce([0, Fraction(1, 3)]))])
eps2 = word_from_pairs(RT, 3, FAMILY_LIN,
                       [(3, 2, RT.coerce([0, Fraction(1, 2)]))])
glued_word = eps1 + eps2.invert()
print("theta fixes [V; 0]:", fixed_frame_check(v, glued_word))
split = quillen_split(glued_word, 3, -2)
print("theta_a fixes it:", fixed_frame_check(v, split.theta_a))
print("theta_b fixes it:", fixed_frame_check(v, split.theta_b))

print()
print("== patching: 63/9 over Z[1/3] and 28/4 over Z[1/2] glue to 7 ==")
r1 = PolyExt(FractionRing(Z, 3), "T")
r2 = PolyExt(FractionRing(Z, -2), "T")
m1 = Mat(r1, [[r1.coerce([Fraction(63, 9)]), r1.coerce([0, 1])],
              [r1.coerce(0), r1.coerce(1)]])
m2 = Mat(r2, [[r2.coerce([Fraction(28, 4)]), r2.coerce([0, 1])],
              [r2.coerce(0), r2.coerce(1)]])
glued = patch(m1, m2, 3, -2)
print("glued over Z[T]:")
for row in glued.entries:
    print("   ", [repr(e) for e in row])
