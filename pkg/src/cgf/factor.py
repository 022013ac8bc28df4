"""Explicit elementary factorizations.

The linear Whitehead word is assembled from the block identity

    d ⊥ d^{-1} = [[I,d],[0,I]] [[I,0],[-d^{-1},I]] [[I,d],[0,I]] [[0,-I],[I,0]]

with [[0,-I],[I,0]] = [[I,-I],[0,I]] [[I,0],[I,I]] [[I,-I],[0,I]]; each block
factor splits into commuting e_ij generators.  The symplectic counterpart is
produced by full row-column reduction of d ⊥ d^{-1} over a local ring, which
covers every use made of it here.  All factorizations in this module that
consume column reductions require a local base ring; their statements hold
more generally, and the finite-ring oracle is the certification boundary.
"""

from __future__ import annotations

from .errors import (BadPerp, IdealNotComaximal, NotInvertible,
                     NotPerpendicular, NotRightInvertible, NotSymplectic,
                     SizeBound, UnsupportedQuotient, FormViolation)
from .matrices import IsotropicFrame, Mat, RightInverseCert, membership, psi
from .reduce import _lowest_unit, _require_local, complete_sp, reduce_row_linear
from .rings import QuotientRing, ideal_combination, unit_ideal_witness
from .words import (FAMILY_LIN, Generator, GenWord, apply_word_to_row,
                    empty_word)


def _block_upper_gens(a: Mat, n: int, size: int):
    """[[I, A], [0, I]] as commuting e_(i, n+j)(A_ij), row-major."""
    out = []
    for i in range(n):
        for j in range(n):
            z = a.entries[i][j]
            if not z.is_zero():
                out.append(Generator(FAMILY_LIN, i + 1, n + j + 1, z, size))
    return out


def _block_lower_gens(b: Mat, n: int, size: int):
    """[[I, 0], [B, I]] as commuting e_(n+i, j)(B_ij), row-major."""
    out = []
    for i in range(n):
        for j in range(n):
            z = b.entries[i][j]
            if not z.is_zero():
                out.append(Generator(FAMILY_LIN, n + i + 1, j + 1, z, size))
    return out


def whitehead_linear(d: Mat) -> GenWord:
    """A word of size 2n evaluating to d ⊥ d^{-1}, over any ring."""
    if d.rows != d.cols:
        raise NotInvertible("expected a square matrix")
    det = d.det()
    if not det.is_unit():
        raise NotInvertible("matrix determinant is not a unit", det=det)
    ring = d.ring
    n = d.rows
    size = 2 * n
    dinv = d.inverse()
    ident = Mat.identity(ring, n)
    gens = []
    gens += _block_upper_gens(d, n, size)
    gens += _block_lower_gens(-dinv, n, size)
    gens += _block_upper_gens(d, n, size)
    gens += _block_upper_gens(-ident, n, size)
    gens += _block_lower_gens(ident, n, size)
    gens += _block_upper_gens(-ident, n, size)
    word = GenWord(ring, size, FAMILY_LIN, tuple(gens))
    if word.eval() != d.block_perp(dinv):
        raise FormViolation("internal: Whitehead word mismatch")
    return word


def sp_inverse(d: Mat) -> Mat:
    """d^{-1} for symplectic d via the form: d^{-1} = psi^{-1} d^t psi."""
    n = d.rows // 2
    f = psi(d.ring, n)
    return (-f) @ d.transpose() @ f


def whitehead_symplectic(d: Mat) -> GenWord:
    """A word of size 4n in se-generators evaluating to d ⊥ d^{-1}.

    Realized by full symplectic row-column reduction of d ⊥ d^{-1} over a
    local ring (the square case of the completion recovers the matrix
    exactly)."""
    if d.rows != d.cols or d.rows % 2:
        raise NotSymplectic("expected an even square matrix")
    if not membership(d, "Sp"):
        raise NotSymplectic("matrix does not preserve the alternating form")
    _require_local(d.ring, "the symplectic Whitehead factorization")
    target = d.block_perp(sp_inverse(d))
    word = complete_sp(IsotropicFrame(target, "sp"))
    if word.eval() != target:
        raise FormViolation("internal: symplectic Whitehead word mismatch")
    return word


# ---------------------------------------------------------------------------
# transvections and row equivalences

def _reduce_col_linear(c: Mat) -> GenWord:
    """A word g with eval(g) @ c = e_1 (column), by unit-pivot row operations."""
    ring = c.ring
    m = c.rows
    col = [row[0] for row in c.entries]
    one = ring.one()
    emitted: list[Generator] = []

    def gen(i, j, z):
        if z.is_zero():
            return
        g = Generator(FAMILY_LIN, i, j, z, m)
        emitted.append(g)
        # left action of I + z E_ij on a column: entry_i += z * entry_j
        col[i - 1] = col[i - 1] + z * col[j - 1]

    if col[0] != one:
        k = _lowest_unit(col)
        if k is None:
            raise NotRightInvertible("column has no unit entry")
        if k == 0:
            gen(2, 1, col[0].inverse() * (one - col[1]))
            k = 1
        gen(1, k + 1, col[k].inverse() * (one - col[0]))
    for i in range(2, m + 1):
        gen(i, 1, -col[i - 1])
    # eval(word) must act with the first emitted operation innermost
    return GenWord(ring, m, FAMILY_LIN, tuple(reversed(emitted)))


def transvection_factor(c: Mat, r: Mat) -> GenWord:
    """A word evaluating to I + c·r for a unimodular column c with r·c = 0."""
    if c.cols != 1 or r.rows != 1 or c.rows != r.cols:
        raise NotPerpendicular("expected an m x 1 column and a 1 x m row")
    m = c.rows
    if m < 3:
        raise SizeBound("transvection factorization needs m >= 3")
    ring = c.ring
    _require_local(ring, "transvection factorization")
    rc = (r @ c).entries[0][0]
    if not rc.is_zero():
        raise NotPerpendicular("r . c must vanish", got=rc)
    if all(v.is_zero() for v in r.entries[0]):
        return empty_word(ring, m, FAMILY_LIN)
    gamma = _reduce_col_linear(c)
    r_prime = apply_word_to_row(list(r.entries[0]), gamma.invert())
    if not r_prime[0].is_zero():
        raise FormViolation("internal: transported row kept its first entry")
    middle = [Generator(FAMILY_LIN, 1, j + 1, r_prime[j], m)
              for j in range(1, m) if not r_prime[j].is_zero()]
    word = gamma.invert() + GenWord(ring, m, FAMILY_LIN, tuple(middle)) + gamma
    expected = Mat.identity(ring, m) + (c @ r)
    if word.eval() != expected:
        raise FormViolation("internal: transvection word mismatch")
    if m <= 12 and expected.det() != ring.one():
        raise FormViolation("internal: transvection determinant is not 1")
    return word


def common_perp(v1: Mat, v2: Mat, w: Mat) -> GenWord:
    """A word carrying v1 to v2 when <v1, w> = <v2, w> = 1."""
    if not (v1.rows == v2.rows == w.rows == 1) or \
            not (v1.cols == v2.cols == w.cols):
        raise BadPerp("expected three rows of equal length")
    r = v1.cols
    if r < 3:
        raise SizeBound("common perpendicular needs length >= 3")
    ring = v1.ring
    one = ring.one()
    for v in (v1, v2):
        ip = (v @ w.transpose()).entries[0][0]
        if ip != one:
            raise BadPerp("inner product with the witness row is not 1", got=ip)
    word = transvection_factor(w.transpose(), v2 - v1)
    got = apply_word_to_row(list(v1.entries[0]), word)
    if got != list(v2.entries[0]):
        raise FormViolation("internal: common-perpendicular word mismatch")
    return word


def two_row_equiv(a: Mat, cert: RightInverseCert) -> GenWord:
    """A word carrying the first row of a right-invertible 2 x n matrix to
    its second row, via the column-sum witness of the right inverse."""
    if a.rows != 2:
        raise NotRightInvertible("expected a 2 x n matrix")
    if a.cols < 3:
        raise SizeBound("two-row equivalence needs n >= 3")
    if cert.alpha != a:
        raise NotRightInvertible("certificate does not certify this matrix")
    ring = a.ring
    w = Mat.row_vector(ring, [cert.beta.entries[i][0] + cert.beta.entries[i][1]
                              for i in range(a.cols)])
    row1 = Mat(ring, [a.entries[0]])
    row2 = Mat(ring, [a.entries[1]])
    return common_perp(row1, row2, w)


# ---------------------------------------------------------------------------
# the quotient-lift equivalence

def _row_equiv_local(v1: Mat, v2: Mat) -> GenWord:
    """v1 -> v2 for unimodular rows over a local ring via e_1 transitivity."""
    w1 = reduce_row_linear(v1)
    w2 = reduce_row_linear(v2)
    return w1 + w2.invert()


def roitman(x: Mat, k: int, y: Mat) -> GenWord:
    """A word of shape I_k ⊥ e carrying (x_0..x_n) to (x_0..x_{k-1}, y_k..y_n).

    Requires the ideal generated by x_0..x_{k-1} and the 2x2 minors of the
    stacked tail rows to be the unit ideal; the equivalence is produced in
    the quotient by (x_0..x_{k-1}), lifted, and the residual ideal terms are
    cleared exactly against the leading entries.
    """
    if x.rows != 1 or y.rows != 1:
        raise NotRightInvertible("expected row vectors")
    n = x.cols - 1
    if not (0 <= k <= n - 1):
        raise SizeBound(f"need 0 <= k <= n-1, got k={k}, n={n}")
    if y.cols != n - k + 1:
        raise SizeBound("tail replacement has the wrong length")
    ring = x.ring
    _require_local(ring, "the quotient-lift equivalence")
    xe = list(x.entries[0])
    ye = list(y.entries[0])
    leading = xe[:k]
    tail = xe[k:]
    minors = []
    width = n - k + 1
    for i in range(width):
        for j in range(i + 1, width):
            minors.append(tail[i] * ye[j] - tail[j] * ye[i])
    if unit_ideal_witness(ring, leading + minors) is None:
        raise IdealNotComaximal(
            "leading entries plus tail minors do not generate the unit ideal")
    try:
        rbar = QuotientRing(ring, leading)
    except UnsupportedQuotient:
        raise
    tail_bar = [rbar.project(v) for v in tail]
    y_bar = [rbar.project(v) for v in ye]
    if width >= 3:
        from .matrices import right_inverse
        alpha_bar = Mat(rbar, [tail_bar, y_bar])
        eps_bar = two_row_equiv(alpha_bar, right_inverse(alpha_bar))
    else:
        eps_bar = _row_equiv_local(Mat(rbar, [tail_bar]), Mat(rbar, [y_bar]))
    # lift parameters back along canonical representatives
    lifted = tuple(Generator(FAMILY_LIN, g.i, g.j, rbar.lift(g.param), g.size)
                   for g in eps_bar)
    word = GenWord(ring, width, FAMILY_LIN, lifted)
    if k:
        word = word.shift(k, n + 1)
    current = apply_word_to_row(xe, word)
    # clear the residual ideal terms position by position
    extra: list[Generator] = []
    for p in range(k, n + 1):
        a = current[p] - ye[p - k]
        if a.is_zero():
            continue
        coeffs = ideal_combination(ring, leading, a)
        if coeffs is None:
            raise UnsupportedQuotient(
                "cannot express the residual term inside the leading ideal")
        for j, q in enumerate(coeffs):
            if q.is_zero():
                continue
            g = Generator(FAMILY_LIN, j + 1, p + 1, -q, n + 1)
            extra.append(g)
            current = apply_word_to_row(current, GenWord(ring, n + 1,
                                                         FAMILY_LIN, (g,)))
    word = word + GenWord(ring, n + 1, FAMILY_LIN, tuple(extra))
    target = leading + ye
    if apply_word_to_row(xe, word) != target:
        raise FormViolation("internal: quotient-lift word mismatch")
    return word
