#!/usr/bin/env python3
"""Orthogonal quotients and two-stably elementary commutators.

O_2 elements over a local ring are diag(u, u^{-1}) or antidiag(u, u^{-1});
a full orthogonal matrix reduces to such a corner modulo elementary
generators.  Commutators of corners are diagonal squares, and
diag(t^2, t^{-2}) ⊥ I_2 has an explicit word through the extra hyperbolic
pair - which is exactly why stabilizing by I_2 makes every commutator
elementary.
"""

import itertools
import random

from cgf import (FactoredOrthogonal, Mat, O2Class, PolyExt, PrimeField,
                 block_perp, classify_o2, commutator_harness, identity,
                 membership, orth_inverse, vaserstein_quotient)
from cgf.orthoquot import hyperbolic_square_word
from cgf.sampling import random_word
from cgf.words import FAMILY_ORTH

Z5 = PrimeField(5)

print("== the eight elements of O_2(Z/5) ==")
for quad in itertools.product(list(Z5.elements()), repeat=4):
    m = Mat(Z5, [[quad[0], quad[1]], [quad[2], quad[3]]])
    if membership(m, "O"):
        cls = classify_o2(m)
        print(f"    {m.entries} -> {cls.shape}(u = {cls.u!r})")

print()
print("== reduction of O_6 to its corner block ==")
rng = random.Random(3)
w = random_word(rng, Z5, FAMILY_ORTH, 6, 6)
delta, word = vaserstein_quotient(w.eval())
print("an elementary word reduces to the trivial corner:",
      delta.is_identity())
a = block_perp(identity(Z5, 4), Mat(Z5, [[0, 2], [3, 0]]))
delta2, word2 = vaserstein_quotient(a)
print("I_4 ⊥ antidiag(2,3) keeps its corner:", delta2.entries)

print()
print("== diag(t^2, t^{-2}) ⊥ I_2 is elementary through a helper pair ==")
h = hyperbolic_square_word(Z5, 8, 3, 4, Z5.coerce(2))
print("word length:", len(h), "| eval diagonal:",
      [repr(h.eval().entries[i][i]) for i in range(8)])

print()
print("== commutator harness: ([a, b] ⊥ I_2) as an explicit word ==")
da = O2Class("diag", Z5.coerce(2)).reconstruct()
db = O2Class("antidiag", Z5.coerce(3)).reconstruct()
a_f = FactoredOrthogonal(da, random_word(rng, Z5, FAMILY_ORTH, 6, 4))
b_f = FactoredOrthogonal(db, random_word(rng, Z5, FAMILY_ORTH, 6, 4))
word, witness = commutator_harness(a_f, b_f)
print("word length:", len(word))
for c in witness.checks:
    print(f"    [{c.status}] {c.name}")
am, bm = a_f.matrix(), b_f.matrix()
comm = am @ bm @ orth_inverse(am) @ orth_inverse(bm)
print("eval == [a, b] ⊥ I_2:",
      word.eval() == block_perp(comm, identity(Z5, 2)))

print()
print("== the same harness over Z/5[X] with a constant corner ==")
RX = PolyExt(Z5, "X")
a_p = FactoredOrthogonal(O2Class("diag", RX.coerce(2)).reconstruct(),
                         random_word(rng, RX, FAMILY_ORTH, 6, 3))
b_p = FactoredOrthogonal.from_word(random_word(rng, RX, FAMILY_ORTH, 6, 3))
word_p, witness_p = commutator_harness(a_p, b_p)
print("all checks pass:", witness_p.all_passed())
