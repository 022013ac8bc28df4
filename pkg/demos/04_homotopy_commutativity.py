#!/usr/bin/env python3
"""The homotopy-and-commutativity engine.

For d(T) with d(0) = I and a right-invertible V over a local ring, complete
V to an elementary W; then s(T) = W^{-1} (d(T) ⊥ I) W commutes with V by
construction, and when d(T) is a word the whole conjugate is a word.  At
T = 1 this yields commutator identities a b = b a eval(e) and the transport
d V = V s with (s ⊥ d^{-1}) elementary.
"""

import random

from cgf import (Homotopy, Mat, ModularRing, PolyExt, block_perp,
                 commutator_witness, homotopy_commute_linear,
                 homotopy_commute_symplectic, mat_substitute,
                 vaserstein_transport)
from cgf.sampling import random_frame, random_word
from cgf.words import FAMILY_LIN, FAMILY_SP, word_from_pairs

Z4 = ModularRing(4)
RT = PolyExt(Z4, "T")

print("== a word-backed homotopy d(T) = e_12(T) over Z/4 ==")
d = Homotopy.from_word(
    "linear", word_from_pairs(RT, 3, FAMILY_LIN, [(1, 2, RT.variable())]))
v = word_from_pairs(Z4, 3, FAMILY_LIN, [(1, 3, 2)]).eval()
res = homotopy_commute_linear(d, v)
print("mode:", res.mode)
print("sigma(T) rows:")
for row in res.sigma_t.entries:
    print("   ", [repr(e) for e in row])
print("sigma(0) = I:", mat_substitute(res.sigma_t, Z4.zero()).is_identity())
print("witness checks:")
for c in res.witness.checks:
    print(f"    [{c.status}] {c.name}")

print()
print("== commutator: a(1) b = b a(1) eval(e) ==")
b = word_from_pairs(Z4, 3, FAMILY_LIN, [(2, 3, 1), (3, 1, 2)]).eval()
eps = commutator_witness(d, b)
alpha = d.at(1)
print("e =", eps)
print("identity holds:", (alpha @ b) == (b @ alpha @ eps.eval()))

print()
print("== symplectic flavor ==")
rng = random.Random(11)
Z9 = ModularRing(9)
RT9 = PolyExt(Z9, "T")
hom = Homotopy.from_word(
    "symplectic",
    random_word(rng, Z9, FAMILY_SP, 4, 2).times_variable(RT9))
frame, _ = random_frame(rng, Z9, "sp", 2, 3, 4)
res2 = homotopy_commute_symplectic(hom, frame)
print("all checks pass:", res2.witness.all_passed())

print()
print("== transport: d V = V s with (s ⊥ d^{-1}) elementary ==")
dmat = word_from_pairs(Z4, 2, FAMILY_LIN, [(1, 2, 3)]).eval()
vmat = Mat(Z4, [[1, 0, 0], [0, 1, 0]])
tr = vaserstein_transport(dmat, vmat, "linear")
print("sigma =", tr.sigma.entries)
print("word evaluates to sigma ⊥ d^{-1}:",
      tr.word.eval() == block_perp(tr.sigma, dmat.inverse()))
