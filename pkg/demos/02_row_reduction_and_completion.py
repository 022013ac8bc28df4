#!/usr/bin/env python3
"""Row reduction and completion over local rings.

A unimodular row over a local ring always has a unit entry, so a short
deterministic word of elementary moves carries it to e_1.  Completion
iterates this row by row; for the paired families the invariant form forces
the partner rows, which is what makes the induction work.
"""

import random

from cgf import (IsotropicFrame, Mat, ModularRing, PrimeField, complete_orth,
                 complete_sp, complete_um_linear, membership,
                 reduce_row_linear)
from cgf.sampling import random_frame, random_word
from cgf.words import FAMILY_SP, apply_word_to_row

Z4 = ModularRing(4)

print("== carrying (2, 3, 0) over Z/4 to e_1 ==")
row = Mat(Z4, [[2, 3, 0]])
word = reduce_row_linear(row)
print("word:", word)
print("row . eval(word) =", apply_word_to_row(list(row.entries[0]), word))

print()
print("== completing two rows to an elementary matrix ==")
v = Mat(Z4, [[1, 0, 0], [2, 3, 0]])
w = complete_um_linear(v)
full = w.eval()
print("completion word length:", len(w), "| det =", full.det())
for r in full.entries:
    print("   ", [repr(e) for e in r])
print("leading rows recovered exactly:",
      Mat(Z4, full.entries[:2]) == v)

print()
print("== symplectic completion ==")
rng = random.Random(7)
Z9 = ModularRing(9)
frame, _ = random_frame(rng, Z9, "sp", 1, 2, 5)
print("frame rows:")
for r in frame.mat.entries:
    print("   ", [repr(e) for e in r])
wsp = complete_sp(frame)
got = wsp.eval()
print("eval(word) is symplectic:", membership(got, "Sp"),
      "| rows recovered:", Mat(Z9, got.entries[:2]) == frame.mat)

print()
print("== the square case recovers the matrix itself ==")
full_sp = random_word(rng, Z9, FAMILY_SP, 4, 5).eval()
wfull = complete_sp(IsotropicFrame(full_sp, "sp"))
print("eval(word) == input:", wfull.eval() == full_sp)

print()
print("== orthogonal completion (1/2 must be a unit; m >= n + 2) ==")
Z5 = PrimeField(5)
frame_o, _ = random_frame(rng, Z5, "orth", 2, 4, 5)
worth = complete_orth(frame_o)
goto = worth.eval()
print("orthogonal:", membership(goto, "O"), "| rows recovered:",
      Mat(Z5, goto.entries[:4]) == frame_o.mat)
