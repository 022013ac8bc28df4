"""Typed words in elementary generators: the universal witness currency.

Three families share one shape: linear e_ij(z) = I + z E_ij, symplectic
se_ij(z) and orthogonal oe_ij(z), the latter two built on the index pairing
(1,2),(3,4),...  Words store generators, never matrices, so that every
membership claim is certified by exhibition; evaluation is a fold of sparse
column operations.

Only zero-parameter generators are dropped automatically.  The optional
peephole pass cancels adjacent inverses and merges same-position entries but
is never required for correctness.
"""

from __future__ import annotations

import os
from dataclasses import dataclass

from .errors import (BadIndices, DescriptorMismatch, HalfNotInvertible,
                     FormViolation, WordLimitExceeded)
from .matrices import Mat, phi, psi
from .rings import PolyExt, Ring, RingValue, has_half

FAMILY_LIN = "lin"
FAMILY_SP = "sp"
FAMILY_ORTH = "orth"

DEFAULT_WORD_LIMIT = 10 ** 5


def word_limit() -> int:
    raw = os.environ.get("CGF_WORD_LIMIT")
    return int(raw) if raw else DEFAULT_WORD_LIMIT


def paired_index(k: int) -> int:
    """The form pairing (1,2),(3,4),... on 1-based indices."""
    return k + 1 if k % 2 == 1 else k - 1


@dataclass(frozen=True)
class Generator:
    """One elementary generator with 1-based indices."""

    family: str
    i: int
    j: int
    param: RingValue
    size: int

    def __post_init__(self):
        if self.family not in (FAMILY_LIN, FAMILY_SP, FAMILY_ORTH):
            raise BadIndices(f"unknown family {self.family!r}")
        if not (1 <= self.i <= self.size and 1 <= self.j <= self.size):
            raise BadIndices(f"indices ({self.i},{self.j}) out of 1..{self.size}")
        if self.i == self.j:
            raise BadIndices("generator indices must differ")
        if self.family in (FAMILY_SP, FAMILY_ORTH):
            if self.size % 2 or self.size < 2:
                raise BadIndices(f"{self.family} generators need even size")
            if self.family == FAMILY_ORTH:
                if self.i == paired_index(self.j):
                    raise BadIndices("orthogonal generators exclude i = pair(j)")
                if not has_half(self.param.ring):
                    raise HalfNotInvertible(
                        f"orthogonal generators need 1/2 in {self.param.ring}")
        elif self.size < 2:
            raise BadIndices("linear generators need size >= 2")

    def inverse(self) -> "Generator":
        return Generator(self.family, self.i, self.j, -self.param, self.size)

    def updates(self):
        """The sparse column updates of right multiplication.

        Returns ((target, source, coeff), ...): col_target += coeff * col_source.
        """
        z = self.param
        if self.family == FAMILY_LIN:
            return ((self.j, self.i, z),)
        si, sj = paired_index(self.i), paired_index(self.j)
        if self.family == FAMILY_SP:
            if self.i == sj:
                return ((self.j, self.i, z),)
            c = -z if (self.i + self.j) % 2 == 0 else z
            return ((self.j, self.i, z), (si, sj, c))
        return ((self.j, self.i, z), (si, sj, -z))

    def __repr__(self):
        tag = {"lin": "e", "sp": "se", "orth": "oe"}[self.family]
        return f"{tag}_{self.i}{self.j}({self.param!r})"

    def to_json(self):
        return {"i": self.i, "j": self.j, "param": self.param.to_json()}


_GEN_MATRIX_CACHE: dict = {}


def gen_matrix(g: Generator) -> Mat:
    """The defining matrix of a generator; form preservation is asserted
    for the symplectic and orthogonal families."""
    key = (g.param.ring.key(), g.family, g.size, g.i, g.j, g.param.payload)
    cached = _GEN_MATRIX_CACHE.get(key)
    if cached is not None:
        return cached
    ring = g.param.ring
    rows = [[ring.one() if a == b else ring.zero() for b in range(g.size)]
            for a in range(g.size)]
    for target, source, coeff in g.updates():
        # column update on the identity: row `source` picks up coeff at `target`
        rows[source - 1][target - 1] = rows[source - 1][target - 1] + coeff
    m = Mat(ring, rows)
    if g.family == FAMILY_SP:
        f = psi(ring, g.size // 2)
        if m.transpose() @ f @ m != f:
            raise FormViolation(f"{g} does not preserve the alternating form")
    elif g.family == FAMILY_ORTH:
        f = phi(ring, g.size // 2)
        if m.transpose() @ f @ m != f:
            raise FormViolation(f"{g} does not preserve the symmetric form")
    if len(_GEN_MATRIX_CACHE) > 1 << 16:
        _GEN_MATRIX_CACHE.clear()
    _GEN_MATRIX_CACHE[key] = m
    return m


@dataclass(frozen=True)
class GenWord:
    """A finite product of same-family generators over one ring."""

    ring: Ring
    size: int
    family: str
    gens: tuple = ()

    def __post_init__(self):
        kept = []
        for g in self.gens:
            if not isinstance(g, Generator):
                raise BadIndices(f"{g!r} is not a generator")
            if g.family != self.family or g.size != self.size:
                raise DescriptorMismatch("generator family/size mismatch")
            if g.param.ring != self.ring:
                raise DescriptorMismatch("generator parameter ring mismatch")
            if not g.param.is_zero():
                kept.append(g)
        if len(kept) > word_limit():
            raise WordLimitExceeded(
                f"word length {len(kept)} exceeds limit {word_limit()}")
        object.__setattr__(self, "gens", tuple(kept))

    def __len__(self):
        return len(self.gens)

    def __iter__(self):
        return iter(self.gens)

    def __add__(self, other: "GenWord") -> "GenWord":
        if (other.ring != self.ring or other.size != self.size
                or other.family != self.family):
            raise DescriptorMismatch("cannot concatenate incompatible words")
        return GenWord(self.ring, self.size, self.family, self.gens + other.gens)

    def gen(self, i: int, j: int, param) -> "GenWord":
        """Convenience: this word extended by one generator."""
        g = Generator(self.family, i, j, self.ring.coerce(param), self.size)
        return self + GenWord(self.ring, self.size, self.family, (g,))

    # -- evaluation --------------------------------------------------------
    def eval(self) -> Mat:
        return apply_word_right(Mat.identity(self.ring, self.size), self)

    def invert(self) -> "GenWord":
        return GenWord(self.ring, self.size, self.family,
                       tuple(g.inverse() for g in reversed(self.gens)))

    # -- parameter transport -------------------------------------------------
    def dilate(self, b: RingValue) -> "GenWord":
        """T -> b*T on every parameter (parameters live in R[T])."""
        if not isinstance(self.ring, PolyExt):
            raise DescriptorMismatch("dilate needs parameters in R[T]")
        rt: PolyExt = self.ring
        if b.ring != rt.base:
            raise DescriptorMismatch("dilation scale must live in the base ring")
        gens = tuple(Generator(g.family, g.i, g.j,
                               RingValue(rt, rt.compose_scale(g.param.payload, b)),
                               g.size)
                     for g in self.gens)
        return GenWord(self.ring, self.size, self.family, gens)

    def specialize(self, t: RingValue) -> "GenWord":
        """T -> t on every parameter, producing a word over the base ring."""
        if not isinstance(self.ring, PolyExt):
            raise DescriptorMismatch("specialize needs parameters in R[T]")
        rt: PolyExt = self.ring
        if t.ring != rt.base:
            raise DescriptorMismatch("specialization point must be in the base")
        gens = tuple(Generator(g.family, g.i, g.j, rt.eval_at(g.param.payload, t),
                               g.size)
                     for g in self.gens)
        return GenWord(rt.base, self.size, self.family, gens)

    def lift_to(self, rt: PolyExt) -> "GenWord":
        """Constant-embed an R-word into R[T]."""
        if rt.base != self.ring:
            raise DescriptorMismatch("polynomial ring has a different base")
        gens = tuple(Generator(g.family, g.i, g.j, rt.embed_const(g.param),
                               g.size)
                     for g in self.gens)
        return GenWord(rt, self.size, self.family, gens)

    def times_variable(self, rt: PolyExt) -> "GenWord":
        """Parameters z -> z*T: the straight-line homotopy of an R-word."""
        if rt.base != self.ring:
            raise DescriptorMismatch("polynomial ring has a different base")
        T = rt.variable()
        gens = tuple(Generator(g.family, g.i, g.j, rt.embed_const(g.param) * T,
                               g.size)
                     for g in self.gens)
        return GenWord(rt, self.size, self.family, gens)

    # -- index transport -----------------------------------------------------
    def embed(self, new_size: int) -> "GenWord":
        """Same indices inside a larger ambient size (block ⊥ identity)."""
        if new_size < self.size:
            raise BadIndices("cannot embed into a smaller size")
        if self.family != FAMILY_LIN and new_size % 2:
            raise BadIndices("paired families need even ambient size")
        gens = tuple(Generator(g.family, g.i, g.j, g.param, new_size)
                     for g in self.gens)
        return GenWord(self.ring, new_size, self.family, gens)

    def shift(self, offset: int, new_size: int) -> "GenWord":
        """Indices += offset (offset even for the paired families)."""
        if self.family != FAMILY_LIN and offset % 2:
            raise BadIndices("paired families shift by even offsets")
        gens = tuple(Generator(g.family, g.i + offset, g.j + offset, g.param,
                               new_size)
                     for g in self.gens)
        return GenWord(self.ring, new_size, self.family, gens)

    def simplify(self) -> "GenWord":
        """Optional peephole: merge adjacent same-position generators."""
        out: list[Generator] = []
        for g in self.gens:
            if out and out[-1].i == g.i and out[-1].j == g.j:
                merged = out.pop()
                s = merged.param + g.param
                if not s.is_zero():
                    out.append(Generator(g.family, g.i, g.j, s, g.size))
            else:
                out.append(g)
        return GenWord(self.ring, self.size, self.family, tuple(out))

    def __repr__(self):
        return f"[{', '.join(repr(g) for g in self.gens)}]"

    def to_json(self) -> dict:
        return {"family": self.family, "size": self.size,
                "ring": self.ring.to_json(),
                "gens": [g.to_json() for g in self.gens]}

    @staticmethod
    def from_json(obj: dict) -> "GenWord":
        from .rings import ring_from_json
        ring = ring_from_json(obj["ring"])
        size = int(obj["size"])
        family = obj["family"]
        gens = tuple(Generator(family, int(g["i"]), int(g["j"]),
                               ring.value_from_json(g["param"]), size)
                     for g in obj["gens"])
        return GenWord(ring, size, family, gens)


def empty_word(ring: Ring, size: int, family: str) -> GenWord:
    return GenWord(ring, size, family, ())


def word_from_pairs(ring: Ring, size: int, family: str, triples) -> GenWord:
    """Build a word from (i, j, param) triples."""
    gens = tuple(Generator(family, i, j, ring.coerce(p), size)
                 for i, j, p in triples)
    return GenWord(ring, size, family, gens)


# ---------------------------------------------------------------------------
# fast application (sparse column/row operations)

def apply_word_right(m: Mat, w: GenWord) -> Mat:
    """m @ eval(w) via column operations, O(len(w) * rows)."""
    if m.cols != w.size:
        raise DescriptorMismatch("word size does not match matrix columns")
    if m.ring != w.ring:
        raise DescriptorMismatch("word ring does not match matrix ring")
    rows = [list(r) for r in m.entries]
    for g in w.gens:
        for target, source, coeff in g.updates():
            t, s = target - 1, source - 1
            for r in rows:
                if not r[s].is_zero():
                    r[t] = r[t] + coeff * r[s]
    return Mat(m.ring, rows)


def apply_word_left(w: GenWord, m: Mat) -> Mat:
    """eval(w) @ m via row operations."""
    if m.rows != w.size:
        raise DescriptorMismatch("word size does not match matrix rows")
    if m.ring != w.ring:
        raise DescriptorMismatch("word ring does not match matrix ring")
    rows = [list(r) for r in m.entries]
    # right-to-left: eval(w) @ m = g1 @ (g2 @ (... @ m))
    for g in reversed(w.gens):
        for target, source, coeff in g.updates():
            # column update col_t += c col_s corresponds, on the left,
            # to row update row_s += c row_t
            t, s = target - 1, source - 1
            rows[s] = [a + coeff * b for a, b in zip(rows[s], rows[t])]
    return Mat(m.ring, rows)


def apply_word_to_row(row, w: GenWord):
    """Right action on a 1 x size row given as a list of ring values."""
    out = list(row)
    for g in w.gens:
        for target, source, coeff in g.updates():
            t, s = target - 1, source - 1
            if not out[s].is_zero():
                out[t] = out[t] + coeff * out[s]
    return out


def eval_word(w: GenWord) -> Mat:
    return w.eval()


def invert_word(w: GenWord) -> GenWord:
    return w.invert()


def dilate(w: GenWord, b: RingValue) -> GenWord:
    return w.dilate(b)


def specialize(w: GenWord, t: RingValue) -> GenWord:
    return w.specialize(t)


# ---------------------------------------------------------------------------
# witnesses

@dataclass(frozen=True)
class Check:
    name: str
    status: str  # "pass" | "unverified"

    def to_json(self):
        return {"name": self.name, "status": self.status}


@dataclass(frozen=True)
class Witness:
    """A claimed identity with its verification report.

    Construction only succeeds when every boolean check passed; checks whose
    value is None are recorded as "unverified" (the claim is stated, not
    certified) and never silently treated as passing.
    """

    claim: str
    inputs: dict
    outputs: dict
    checks: tuple = ()
    mode: str = "word"

    @staticmethod
    def certify(claim: str, inputs: dict, outputs: dict, checks,
                mode: str = "word") -> "Witness":
        report = []
        for name, ok in checks:
            if ok is None:
                report.append(Check(name, "unverified"))
            elif ok:
                report.append(Check(name, "pass"))
            else:
                from .errors import WitnessCheckFailed
                raise WitnessCheckFailed(f"check failed: {name}", claim=claim)
        return Witness(claim, inputs, outputs, tuple(report), mode)

    def all_passed(self) -> bool:
        return all(c.status == "pass" for c in self.checks)

    def to_json(self) -> dict:
        def enc(v):
            if hasattr(v, "to_json"):
                return v.to_json()
            if isinstance(v, (list, tuple)):
                return [enc(x) for x in v]
            return v
        return {"claim": self.claim, "mode": self.mode,
                "inputs": {k: enc(v) for k, v in sorted(self.inputs.items())},
                "outputs": {k: enc(v) for k, v in sorted(self.outputs.items())},
                "checks": [c.to_json() for c in self.checks]}
