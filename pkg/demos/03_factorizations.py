#!/usr/bin/env python3
"""Explicit elementary factorizations.

The stabilized block d ⊥ d^{-1} factors into unipotent block triangles, a
perpendicular pair (r . c = 0) yields the transvection I + c r as a
conjugated row of elementary moves, and two rows sharing a witness vector
are elementarily equivalent - with a quotient-lift variant replacing a tail
behind an ideal.
"""

from cgf import (Mat, ModularRing, PrimeField, identity, right_inverse,
                 roitman, sp_inverse, transvection_factor, two_row_equiv,
                 whitehead_linear, whitehead_symplectic)
from cgf.sampling import random_word
from cgf.words import FAMILY_SP, apply_word_to_row

import random

Z4 = ModularRing(4)

print("== Whitehead: diag(3) ⊥ diag(3) over Z/4 ==")
d = Mat(Z4, [[3]])
w = whitehead_linear(d)
print("word:", w)
print("eval:", w.eval().entries)

print()
print("== symplectic Whitehead via full reduction ==")
rng = random.Random(3)
Z5 = PrimeField(5)
dsp = random_word(rng, Z5, FAMILY_SP, 2, 3).eval()
wsp = whitehead_symplectic(dsp)
print("d =", dsp.entries)
print("word length:", len(wsp), "| eval == d ⊥ d^{-1}:",
      wsp.eval() == dsp.block_perp(sp_inverse(dsp)))

print()
print("== transvection I + c r  (r . c = 0) ==")
c = Mat(Z4, [[2], [3], [0]])
r = Mat(Z4, [[3, 2, 2]])
t = transvection_factor(c, r)
print("word:", t)
print("eval == I + c r:", t.eval() == identity(Z4, 3) + c @ r,
      "| det =", t.eval().det())

print()
print("== two rows of a right-invertible 2 x 3 block are equivalent ==")
a = Mat(Z4, [[1, 0, 0], [0, 1, 0]])
eps = two_row_equiv(a, right_inverse(a))
print("word:", eps)
print("row1 . eval =", apply_word_to_row(list(a.entries[0]), eps))

print()
print("== tail replacement behind the ideal (2): (2,1,0) -> (2,0,1) ==")
x = Mat(Z4, [[2, 1, 0]])
y = Mat(Z4, [[0, 1]])
word = roitman(x, 1, y)
print("word:", word)
print("x . eval =", apply_word_to_row(list(x.entries[0]), word))
