"""Orthogonal quotient machinery: the O_2 dichotomy, reduction of O_2m over
a local ring to a corner O_2 block modulo elementary generators, and the
two-stably-elementary commutator harness.

Commutators of corner blocks land in Diag(t^2) for an explicit unit t, and
diag(t^2, t^-2) ⊥ I_2 has an explicit elementary word through an auxiliary
hyperbolic pair: two SL_2 embeddings along (odd, odd) and (odd, even) slots
multiply to the square scaling while cancelling on the helper pair.  That is
exactly where the extra ⊥ I_2 is consumed.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import (HalfNotInvertible, NotClassifiable, NotOrthogonal,
                     ReductionFailed, SizeBound, UnsupportedPresentation,
                     FormViolation, NotLocal)
from .matrices import Mat, block_perp, identity, membership, phi
from .reduce import _orth_frame_reduction
from .rings import PolyExt, Ring, RingValue, has_half
from .words import FAMILY_ORTH, Generator, GenWord, Witness


def orth_inverse(a: Mat) -> Mat:
    """a^{-1} for orthogonal a via the form: a^{-1} = phi a^t phi."""
    f = phi(a.ring, a.rows // 2)
    return f @ a.transpose() @ f


@dataclass(frozen=True)
class O2Class:
    """An O_2 element in normal form: diag(u, u^{-1}) or antidiag(u, u^{-1})."""

    shape: str  # "diag" | "antidiag"
    u: RingValue

    def reconstruct(self) -> Mat:
        ring = self.u.ring
        ui = self.u.inverse()
        if self.shape == "diag":
            return Mat(ring, [[self.u, ring.zero()], [ring.zero(), ui]])
        return Mat(ring, [[ring.zero(), self.u], [ui, ring.zero()]])

    def inverse(self) -> "O2Class":
        if self.shape == "diag":
            return O2Class("diag", self.u.inverse())
        return self  # antidiag(u, u^{-1}) is an involution


def classify_o2(a: Mat) -> O2Class:
    """Split an O_2 element into its diagonal or antidiagonal normal form."""
    if a.rows != 2 or a.cols != 2:
        raise NotOrthogonal("expected a 2 x 2 matrix")
    if not has_half(a.ring):
        raise HalfNotInvertible(f"O_2 classification needs 1/2 in {a.ring}")
    if not membership(a, "O"):
        raise NotOrthogonal("matrix does not preserve the symmetric form")
    (p, q), (r, s) = a.entries
    one = a.ring.one()
    if q.is_zero() and r.is_zero() and p.is_unit() and p * s == one:
        cls = O2Class("diag", p)
    elif p.is_zero() and s.is_zero() and q.is_unit() and q * r == one:
        cls = O2Class("antidiag", q)
    else:
        raise NotClassifiable(
            "matrix fits neither normal form (nontrivial idempotents?)", a=a)
    if cls.reconstruct() != a:
        raise NotClassifiable("internal: reconstruction mismatch")
    return cls


def vaserstein_quotient(a: Mat) -> tuple[Mat, GenWord]:
    """Write a in O_2m (m >= 3, local ring) as (I_{2m-2} ⊥ delta) . eval(w)."""
    ring = a.ring
    if a.rows != a.cols or a.rows % 2:
        raise NotOrthogonal("expected an even square matrix")
    m = a.rows // 2
    if m < 3:
        raise SizeBound("the quotient reduction needs m >= 3")
    if not ring.is_local:
        raise NotLocal("the quotient reduction needs a local ring")
    if not membership(a, "O"):
        raise NotOrthogonal("matrix does not preserve the symmetric form")
    work = [list(row) for row in a.entries]
    from .errors import NoUnitEntry
    try:
        acc = _orth_frame_reduction(work, m - 1, 2 * m, ring)
    except (FormViolation, NoUnitEntry) as e:
        raise ReductionFailed(str(e), partial_state=[
            [v.to_json() for v in row] for row in work]) from e
    cut = 2 * m - 2
    for i in range(cut, 2 * m):
        for j in range(cut):
            if not work[i][j].is_zero():
                raise ReductionFailed(
                    "orthogonality failed to clear the corner block")
    delta = Mat(ring, [[work[cut][cut], work[cut][cut + 1]],
                       [work[cut + 1][cut], work[cut + 1][cut + 1]]])
    word = GenWord(ring, 2 * m, FAMILY_ORTH, tuple(acc)).invert()
    delta, word = _normalize_corner(delta, word, m)
    if block_perp(identity(ring, cut), delta) @ word.eval() != a:
        raise ReductionFailed("internal: factorization mismatch")
    if not membership(delta, "O"):
        raise ReductionFailed("internal: corner block left O_2")
    return delta, word


def _normalize_corner(delta: Mat, word: GenWord, m: int):
    """Absorb square-scaled corners into the word: corner blocks
    diag(t^2, t^{-2}) are elementary (hyperbolic square through a helper
    pair), so the residual corner is canonicalized across its square class.
    Only finite rings enumerate their units; elsewhere the raw corner stands.
    """
    ring = delta.ring
    if not ring.is_finite:
        return delta, word
    try:
        cls = classify_o2(delta)
    except NotClassifiable:
        return delta, word
    units = sorted((v for v in ring.elements() if v.is_unit()),
                   key=lambda v: ring.sort_key(v.payload))
    best = None
    for t in units:
        sq = t * t
        u_new = cls.u * sq.inverse() if cls.shape == "diag" else cls.u * sq
        key = (ring.sort_key(u_new.payload), ring.sort_key(t.payload))
        if best is None or key < best[0]:
            best = (key, t, u_new)
    _, t, u_new = best
    if t == ring.one():
        return delta, word
    word_new = hyperbolic_square_word(ring, 2 * m, m, 1, t) + word
    return O2Class(cls.shape, u_new).reconstruct(), word_new


# ---------------------------------------------------------------------------
# factored presentations and the commutator harness

@dataclass(frozen=True)
class FactoredOrthogonal:
    """(I_{2m-2} ⊥ delta) . eval(word): the presentation the harness consumes."""

    delta: Mat
    word: GenWord

    def __post_init__(self):
        if self.delta.rows != 2 or self.delta.cols != 2:
            raise UnsupportedPresentation("corner block must be 2 x 2")
        if self.delta.ring != self.word.ring:
            raise UnsupportedPresentation("corner and word rings differ")
        if self.word.size < 6:
            raise SizeBound("factored presentations need size >= 6")
        if not membership(self.delta, "O"):
            raise NotOrthogonal("corner block is not orthogonal")

    @property
    def size(self) -> int:
        return self.word.size

    @property
    def ring(self) -> Ring:
        return self.word.ring

    def matrix(self) -> Mat:
        corner = block_perp(identity(self.ring, self.size - 2), self.delta)
        return corner @ self.word.eval()

    @staticmethod
    def from_word(word: GenWord) -> "FactoredOrthogonal":
        return FactoredOrthogonal(identity(word.ring, 2), word)

    @staticmethod
    def from_matrix(a: Mat) -> "FactoredOrthogonal":
        if isinstance(a.ring, PolyExt):
            raise UnsupportedPresentation(
                "polynomial-ring input must arrive already factored")
        delta, word = vaserstein_quotient(a)
        return FactoredOrthogonal(delta, word)


def conjugate_word_by_corner(word: GenWord, cls: O2Class) -> GenWord:
    """(I ⊥ delta) . eval(word) . (I ⊥ delta)^{-1} as a word: corner
    conjugation permutes the last pair and rescales parameters."""
    size = word.size
    ring = word.ring
    last, prev = size, size - 1
    u = cls.u

    def perm(k: int) -> int:
        if cls.shape == "diag":
            return k
        if k == prev:
            return last
        if k == last:
            return prev
        return k

    def dcoef(k: int) -> RingValue:
        if cls.shape == "diag":
            if k == prev:
                return u
            if k == last:
                return u.inverse()
            return ring.one()
        if k == prev:
            return u.inverse()
        if k == last:
            return u
        return ring.one()

    gens = []
    for g in word:
        z = g.param * dcoef(g.i) * dcoef(g.j).inverse()
        gens.append(Generator(FAMILY_ORTH, perm(g.i), perm(g.j), z, size))
    return GenWord(ring, size, FAMILY_ORTH, tuple(gens))


def _sl2_diag_triples(t: RingValue):
    """diag(t, t^{-1}) as the classical six-move SL_2 word."""
    ti = t.inverse()
    one = t.ring.one()
    return [(1, 2, t), (2, 1, -ti), (1, 2, t),
            (1, 2, -one), (2, 1, one), (1, 2, -one)]


def hyperbolic_square_word(ring: Ring, size: int, pair_p: int, pair_q: int,
                           t: RingValue) -> GenWord:
    """A word for diag(t^2, t^{-2}) on pair_p, identity elsewhere, using
    pair_q as the helper: two SL_2 embeddings whose helper actions cancel."""
    if pair_p == pair_q:
        raise SizeBound("the helper pair must differ from the target pair")
    a, b = 2 * pair_p - 1, 2 * pair_q - 1
    gens = []
    for i, j, z in _sl2_diag_triples(t):
        # embedding along the odd slots (partners follow automatically)
        src, dst = (a, b) if (i, j) == (1, 2) else (b, a)
        gens.append(Generator(FAMILY_ORTH, src, dst, z, size))
    for i, j, z in _sl2_diag_triples(t):
        # crossed embedding: odd slot of pair_p against even slot of pair_q
        src, dst = (a, b + 1) if (i, j) == (1, 2) else (b + 1, a)
        gens.append(Generator(FAMILY_ORTH, src, dst, z, size))
    word = GenWord(ring, size, FAMILY_ORTH, tuple(gens))
    expected = [[ring.one() if r == c else ring.zero() for c in range(size)]
                for r in range(size)]
    expected[a - 1][a - 1] = t * t
    expected[a][a] = (t * t).inverse()
    if word.eval() != Mat(ring, expected):
        raise FormViolation("internal: square scaling word mismatch")
    return word


def corner_commutator_square_root(cls_a: O2Class, cls_b: O2Class) -> RingValue:
    """t with [delta_a, delta_b] = diag(t^2, t^{-2}); commutators of the two
    normal forms are always diagonal squares."""
    ring = cls_a.u.ring
    if cls_a.shape == "diag" and cls_b.shape == "diag":
        return ring.one()
    if cls_a.shape == "diag":
        return cls_a.u
    if cls_b.shape == "diag":
        return cls_b.u.inverse()
    return cls_a.u * cls_b.u.inverse()


def commutator_harness(a: FactoredOrthogonal,
                       b: FactoredOrthogonal) -> tuple[GenWord, Witness]:
    """An explicit elementary word for [a, b] ⊥ I_2.

    The word parts are moved across the corner blocks by conjugation
    (staying words), the corner commutator is a diagonal square, and the
    square scaling is realized through the freshly added hyperbolic pair.
    """
    if a.ring != b.ring or a.size != b.size:
        raise UnsupportedPresentation("operands live in different ambients")
    ring = a.ring
    size = a.size
    m = size // 2
    if m < 3:
        raise SizeBound("the commutator harness needs m >= 3")
    base = ring.base if isinstance(ring, PolyExt) else ring
    if not base.is_local:
        raise NotLocal("the harness runs over a local base ring")
    if not has_half(ring):
        raise HalfNotInvertible("the harness needs 1/2")
    cls_a = classify_o2(a.delta)
    cls_b = classify_o2(b.delta)

    w1 = conjugate_word_by_corner(a.word, cls_b.inverse()) + b.word \
        + a.word.invert()
    w2 = conjugate_word_by_corner(w1, cls_a) + b.word.invert()
    w3 = conjugate_word_by_corner(w2, cls_b)

    t = corner_commutator_square_root(cls_a, cls_b)
    da, db = cls_a.reconstruct(), cls_b.reconstruct()
    corner_comm = da @ db @ orth_inverse(da) @ orth_inverse(db)
    square = O2Class("diag", t * t).reconstruct()
    if corner_comm != square:
        raise FormViolation("internal: corner commutator is not the "
                            "expected diagonal square")

    big = size + 2
    word = w3.embed(big)
    if t != ring.one():
        word = hyperbolic_square_word(ring, big, m, m + 1, t) + word

    am, bm = a.matrix(), b.matrix()
    comm = am @ bm @ orth_inverse(am) @ orth_inverse(bm)
    target = block_perp(comm, identity(ring, 2))
    check_exact = word.eval() == target
    checks = [
        ("inputs are orthogonal",
         membership(am, "O") and membership(bm, "O")),
        ("corner commutator is diag(t^2, t^{-2})", corner_comm == square),
        ("word evaluates to [a, b] ⊥ I_2 exactly", check_exact),
    ]
    if isinstance(ring, PolyExt):
        from .homotopy import mat_substitute
        for point in (ring.base.zero(), ring.base.one()):
            lhs = mat_substitute(word.eval(), point)
            rhs = mat_substitute(target, point)
            checks.append((f"specialization at X = {point!r} agrees",
                           lhs == rhs))
    witness = Witness.certify(
        "ortho_commutator", {"a": am, "b": bm}, {"word": word}, checks)
    return word, witness


def commutator_harness_hso(alpha, b: FactoredOrthogonal) -> tuple[GenWord, Witness]:
    """The commutator harness for a special-orthogonally-null-homotopic first
    argument, presented as a word-backed homotopy; the T = 1 specialization
    feeds the factored engine and the homotopy checks join the report."""
    from .homotopy import Homotopy
    if not isinstance(alpha, Homotopy) or alpha.flavor != "orthogonal":
        raise UnsupportedPresentation("expected an orthogonal homotopy")
    if not alpha.is_word_backed():
        raise UnsupportedPresentation("the homotopy factor must be word-backed")
    a_word = alpha.word.specialize(alpha.base_ring.one())
    if a_word.size != b.size or a_word.ring != b.ring:
        raise UnsupportedPresentation("homotopy and factored operand disagree")
    a = FactoredOrthogonal.from_word(a_word)
    word, base_witness = commutator_harness(a, b)
    checks = [(c.name, c.status == "pass") for c in base_witness.checks]
    checks.append(("homotopy starts at the identity",
                   alpha.at(0).is_identity()))
    checks.append(("homotopy stays special orthogonal over R[T]",
                   membership(alpha.delta_t, "SO")))
    witness = Witness.certify("ortho_commutator_hso",
                              base_witness.inputs, base_witness.outputs,
                              checks)
    return word, witness
