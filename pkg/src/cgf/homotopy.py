"""The homotopy-and-commutativity engine.

Given a one-parameter family d(T) (d(0) = I) in SL, Sp or SO and a
right-invertible V over a local ring, produce s(T) with

    d(T) V = V s(T),   s(0) = I,

together with a word for s(T)^{-1} (d(T) ⊥ I): completing V to an
elementary matrix W makes s(T) = W^{-1} (d(T) ⊥ I) W work by pure algebra,
and when d(T) itself is word-backed the whole conjugate is a word.  The
commutator and transport corollaries then fall out by specializing at T = 1.

Two witness modes: "word" exhibits every membership by a generator word;
"assert" certifies the matrix identities exactly but records elementary
membership as unverified rather than faking it.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import (DescriptorMismatch, FormViolation, NotInvertible,
                     NotLocal, SizeBound)
from .factor import sp_inverse, whitehead_linear, whitehead_symplectic
from .matrices import IsotropicFrame, Mat, block_perp, identity, membership
from .reduce import complete_orth, complete_sp, complete_um_linear
from .rings import PolyExt, RingValue
from .words import (FAMILY_LIN, FAMILY_ORTH, FAMILY_SP, GenWord, Witness,
                    empty_word)

_FLAVOR_FAMILY = {"linear": FAMILY_LIN, "symplectic": FAMILY_SP,
                  "orthogonal": FAMILY_ORTH}
_FLAVOR_GROUP = {"linear": "SL", "symplectic": "Sp", "orthogonal": "SO"}


def mat_substitute(m: Mat, t: RingValue) -> Mat:
    """Entrywise evaluation of a matrix over R[T] at a base point."""
    rt = m.ring
    if not isinstance(rt, PolyExt):
        raise DescriptorMismatch("matrix does not live over R[T]")
    return Mat(rt.base, [[rt.eval_at(e.payload, t) for e in row]
                         for row in m.entries])


@dataclass(frozen=True)
class Homotopy:
    """A family d(T) with d(0) = I inside SL, Sp or SO over R[T];
    optionally backed by a generator word with parameters in (T)."""

    flavor: str
    delta_t: Mat
    word: GenWord | None = None

    def __post_init__(self):
        if self.flavor not in _FLAVOR_FAMILY:
            raise DescriptorMismatch(f"unknown flavor {self.flavor!r}")
        rt = self.delta_t.ring
        if not isinstance(rt, PolyExt):
            raise DescriptorMismatch("homotopies live over R[T]")
        if not mat_substitute(self.delta_t, rt.base.zero()).is_identity():
            raise FormViolation("homotopy does not start at the identity")
        if not membership(self.delta_t, _FLAVOR_GROUP[self.flavor]):
            raise FormViolation(
                f"homotopy leaves {_FLAVOR_GROUP[self.flavor]} over R[T]")
        if self.word is not None:
            if self.word.eval() != self.delta_t:
                raise FormViolation("backing word does not evaluate to d(T)")

    @classmethod
    def from_word(cls, flavor: str, word: GenWord) -> "Homotopy":
        rt = word.ring
        if not isinstance(rt, PolyExt):
            raise DescriptorMismatch("word-backed homotopies live over R[T]")
        for g in word:
            if not rt.constant_term(g.param).is_zero():
                raise FormViolation(
                    "word parameters must vanish at T = 0", generator=str(g))
        return cls(flavor, word.eval(), word)

    @classmethod
    def from_matrix(cls, flavor: str, delta_t: Mat) -> "Homotopy":
        return cls(flavor, delta_t)

    @property
    def size(self) -> int:
        return self.delta_t.rows

    @property
    def poly_ring(self) -> PolyExt:
        return self.delta_t.ring

    @property
    def base_ring(self):
        return self.poly_ring.base

    def at(self, t) -> Mat:
        return mat_substitute(self.delta_t, self.base_ring.coerce(t))

    def is_word_backed(self) -> bool:
        return self.word is not None


@dataclass(frozen=True)
class CommuteResult:
    """s(T), the witness word for s(T)^{-1}(d(T) ⊥ I) when available, its
    matrix in any case, and the verification report."""

    sigma_t: Mat
    epsilon_word: GenWord | None
    epsilon_mat: Mat
    witness: Witness
    mode: str  # "word" | "assert"


def _commute_core(d: Homotopy, v_mat: Mat, completion: GenWord,
                  claim: str) -> CommuteResult:
    rt = d.poly_ring
    base = d.base_ring
    family = _FLAVOR_FAMILY[d.flavor]
    msize = completion.size
    nsize = d.size

    w_t = completion.lift_to(rt)
    if msize == nsize:
        d_mat = d.delta_t
    else:
        d_mat = block_perp(d.delta_t, identity(rt, msize - nsize))
    w_mat = w_t.eval()
    w_inv = w_t.invert().eval()
    sigma_t = w_inv @ d_mat @ w_mat

    mode = "word" if d.is_word_backed() else "assert"
    if mode == "word":
        d_word = d.word.embed(msize)
        if len(completion) == 0 or len(d.word) == 0:
            eps_word = empty_word(rt, msize, family)
        else:
            eps_word = (w_t.invert() + d_word.invert() + w_t + d_word)
        eps_mat = eps_word.eval()
    else:
        eps_word = None
        eps_mat = w_inv @ d_mat.inverse() @ w_mat @ d_mat

    v_t = v_mat.map_ring(rt)
    check_commute = (d.delta_t @ v_t) == (v_t @ sigma_t)
    check_start = mat_substitute(sigma_t, base.zero()).is_identity()
    check_eps = (sigma_t @ eps_mat) == d_mat
    check_group = membership(sigma_t, _FLAVOR_GROUP[d.flavor])

    one = base.one()
    sigma_1 = mat_substitute(sigma_t, one)
    delta_1 = d.at(one)
    check_spec = (delta_1 @ v_mat) == (v_mat @ sigma_1)
    if mode == "word":
        eps_1 = eps_word.specialize(one)
        d1_mat = mat_substitute(d_mat, one)
        check_spec_eps = (sigma_1 @ eps_1.eval()) == d1_mat
    else:
        check_spec_eps = (sigma_1 @ mat_substitute(eps_mat, one)) == \
            mat_substitute(d_mat, one)

    witness = Witness.certify(
        claim,
        inputs={"delta_t": d.delta_t, "v": v_mat},
        outputs={"sigma_t": sigma_t,
                 "epsilon": eps_word if eps_word is not None else eps_mat},
        checks=[
            ("delta_t @ V == V @ sigma_t (polynomial identity)", check_commute),
            ("sigma(0) == I", check_start),
            ("sigma_t @ epsilon == delta_t ⊥ I (exact)", check_eps),
            ("sigma_t stays in the flavor group over R[T]", check_group),
            ("T = 1 specialization commutes", check_spec),
            ("T = 1 epsilon specializes consistently", check_spec_eps),
            ("epsilon elementary membership",
             True if mode == "word" else None),
        ],
        mode=mode)
    return CommuteResult(sigma_t, eps_word, eps_mat, witness, mode)


def _check_sizes(n: int, m: int, allow_small: bool):
    if allow_small:
        if not (m >= n >= 1):
            raise SizeBound(f"need m >= n >= 1, got n={n}, m={m}")
        return
    if not (m > n >= 2 or m == n >= 3):
        raise SizeBound(
            f"need m > n >= 2 or m = n >= 3, got n={n}, m={m}")


def homotopy_commute_linear(d: Homotopy, v: Mat, *,
                            _allow_small: bool = False) -> CommuteResult:
    """d(T) V = V s(T) with s(T)^{-1}(d(T) ⊥ I) elementary, V in Um_{n,m}."""
    if d.flavor != "linear":
        raise DescriptorMismatch("expected a linear homotopy")
    if v.ring != d.base_ring:
        raise DescriptorMismatch("V and the homotopy live over different rings")
    if not v.ring.is_local:
        raise NotLocal("the witnessed construction needs a local ring")
    if v.rows != d.size:
        raise SizeBound("V must have as many rows as the homotopy size")
    _check_sizes(d.size, v.cols, _allow_small)
    completion = complete_um_linear(v)
    return _commute_core(d, v, completion, "homotopy_commute_linear")


def homotopy_commute_symplectic(d: Homotopy, v: IsotropicFrame, *,
                                _allow_small: bool = False) -> CommuteResult:
    if d.flavor != "symplectic":
        raise DescriptorMismatch("expected a symplectic homotopy")
    if v.kind != "sp":
        raise FormViolation("expected a symplectic frame")
    if v.mat.ring != d.base_ring:
        raise DescriptorMismatch("frame and homotopy rings differ")
    if not v.mat.ring.is_local:
        raise NotLocal("the witnessed construction needs a local ring")
    if v.mat.rows != d.size:
        raise SizeBound("frame row count must match the homotopy size")
    _check_sizes(v.n_pairs, v.m_pairs, _allow_small)
    completion = complete_sp(v)
    return _commute_core(d, v.mat, completion, "homotopy_commute_symplectic")


def homotopy_commute_orthogonal(d: Homotopy, v: IsotropicFrame) -> CommuteResult:
    if d.flavor != "orthogonal":
        raise DescriptorMismatch("expected an orthogonal homotopy")
    if v.kind != "orth":
        raise FormViolation("expected an orthogonal frame")
    if v.mat.ring != d.base_ring:
        raise DescriptorMismatch("frame and homotopy rings differ")
    if not v.mat.ring.is_local:
        raise NotLocal("the witnessed construction needs a local ring")
    if v.mat.rows != d.size:
        raise SizeBound("frame row count must match the homotopy size")
    n, m = v.n_pairs, v.m_pairs
    if not (m >= n + 2 and n >= 2):
        raise SizeBound(f"need m >= n + 2 and n >= 2, got n={n}, m={m}")
    completion = complete_orth(v)
    return _commute_core(d, v.mat, completion, "homotopy_commute_orthogonal")


# ---------------------------------------------------------------------------
# corollaries

def commutator_witness(a: Homotopy, b: Mat) -> GenWord:
    """A word e with a(1) b = b a(1) eval(e), for word-backed a and b in the
    flavor's group over a local ring."""
    if not a.is_word_backed():
        raise NotInvertible("the commutator witness needs a word-backed homotopy")
    ring = a.base_ring
    if b.ring != ring:
        raise DescriptorMismatch("b lives over a different ring")
    if not ring.is_local:
        raise NotLocal("the witnessed construction needs a local ring")
    if b.rows != a.size or b.cols != a.size:
        raise SizeBound("b must match the homotopy size")
    rt = a.poly_ring
    if a.flavor == "linear":
        if a.size < 3:
            raise SizeBound("the linear commutator needs n >= 3")
        if not membership(b, "SL"):
            raise NotInvertible("b must have determinant 1")
        completion = complete_um_linear(b)
    elif a.flavor == "symplectic":
        if a.size < 4:
            raise SizeBound("the symplectic commutator needs size >= 4")
        if not membership(b, "Sp"):
            raise FormViolation("b must be symplectic")
        completion = complete_sp(IsotropicFrame(b, "sp"))
    else:
        raise DescriptorMismatch(
            "commutator witnesses cover the linear and symplectic flavors")
    w_t = completion.lift_to(rt)
    d_word = a.word
    eps_t = d_word.invert() + w_t.invert() + d_word + w_t
    # polynomial-level identity: d(T) b = b d(T) eval(eps_t)
    b_t = b.map_ring(rt)
    if (a.delta_t @ b_t) != (b_t @ a.delta_t @ eps_t.eval()):
        raise FormViolation("internal: commutator identity failed over R[T]")
    eps = eps_t.specialize(ring.one())
    alpha = a.at(1)
    if (alpha @ b) != (b @ alpha @ eps.eval()):
        raise FormViolation("internal: commutator identity failed at T = 1")
    if eps.eval().det() != ring.one():
        raise FormViolation("internal: commutator witness determinant != 1")
    if a.flavor == "symplectic" and not membership(eps.eval(), "Sp"):
        raise FormViolation("internal: commutator witness left Sp")
    return eps


@dataclass(frozen=True)
class TransportResult:
    sigma: Mat
    word: GenWord
    witness: Witness


def vaserstein_transport(d: Mat, v, flavor: str = "linear") -> TransportResult:
    """d V = V s with an explicit elementary word for s ⊥ d^{-1}.

    The Whitehead word of d, with parameters scaled by T, is the homotopy;
    the engine runs on V ⊥ I and the block structure of the result is
    checked exactly."""
    if flavor == "linear":
        if not membership(d, "SL"):
            raise NotInvertible("transport expects d in SL")
        v_mat = v if isinstance(v, Mat) else v.mat
        ring = d.ring
        n, m = v_mat.rows, v_mat.cols
        if n != d.rows:
            raise SizeBound("V must have as many rows as d")
        white = whitehead_linear(d)
        d_inv = d.inverse()
        v_big = block_perp(v_mat, identity(ring, n))
    elif flavor == "symplectic":
        if not membership(d, "Sp"):
            raise FormViolation("transport expects d in Sp")
        frame = v if isinstance(v, IsotropicFrame) else IsotropicFrame(v, "sp")
        v_mat = frame.mat
        ring = d.ring
        n, m = v_mat.rows // 2, v_mat.cols // 2
        if 2 * n != d.rows:
            raise SizeBound("the frame must have as many rows as d")
        white = whitehead_symplectic(d)
        d_inv = sp_inverse(d)
        v_big = block_perp(v_mat, identity(ring, 2 * n))
    else:
        raise DescriptorMismatch(f"unknown transport flavor {flavor!r}")

    if not ring.is_local:
        raise NotLocal("the witnessed transport needs a local ring")
    rt = PolyExt(ring, "T")
    hom = Homotopy.from_word(flavor, white.times_variable(rt))
    if flavor == "linear":
        result = homotopy_commute_linear(hom, v_big, _allow_small=True)
        big = m + n
    else:
        result = homotopy_commute_symplectic(
            hom, IsotropicFrame(v_big, "sp"), _allow_small=True)
        big = 2 * (m + n)

    # sigma'(T) = (d(T) ⊥ I) eval(eps)^{-1}; as a word, specialize at T = 1
    sig_word_t = hom.word.embed(result.epsilon_word.size) + \
        result.epsilon_word.invert()
    sig_word = sig_word_t.specialize(ring.one())
    s_full = sig_word.eval()

    cut = big - (d.rows if flavor == "linear" else d.rows)
    alpha = s_full.submatrix(0, cut, 0, cut)
    beta = s_full.submatrix(0, cut, cut, big)
    gamma = s_full.submatrix(cut, big, 0, cut)
    zeta = s_full.submatrix(cut, big, cut, big)
    zero_block = Mat.zeros(ring, big - cut, cut)
    check_gamma = gamma == zero_block
    check_zeta = zeta == d_inv
    check_commutes = (d @ v_mat) == (v_mat @ alpha)

    if flavor == "linear":
        beta_zero = all(e.is_zero() for row in beta.entries for e in row)
        if beta_zero:
            word = sig_word
        else:
            x = alpha.inverse().scale(-ring.one()) @ beta
            clear = _block_upper_word(ring, x, cut, big)
            word = sig_word + clear
    else:
        # the perp pairing forces the off-diagonal block to vanish
        if any(not e.is_zero() for row in beta.entries for e in row):
            raise FormViolation("internal: symplectic transport kept a "
                                "nonzero off-diagonal block")
        word = sig_word
    target = alpha.block_perp(d_inv)
    check_word = word.eval() == target

    witness = Witness.certify(
        "vaserstein_transport",
        inputs={"d": d, "v": v_mat},
        outputs={"sigma": alpha, "word": word},
        checks=[("gamma block vanishes", check_gamma),
                ("zeta block equals d^{-1}", check_zeta),
                ("d V == V sigma", check_commutes),
                ("word evaluates to sigma ⊥ d^{-1}", check_word)])
    return TransportResult(alpha, word, witness)


def _block_upper_word(ring, x: Mat, cut: int, size: int) -> GenWord:
    from .words import Generator
    gens = []
    for i in range(cut):
        for j in range(size - cut):
            z = x.entries[i][j]
            if not z.is_zero():
                gens.append(Generator(FAMILY_LIN, i + 1, cut + j + 1, z, size))
    return GenWord(ring, size, FAMILY_LIN, tuple(gens))
