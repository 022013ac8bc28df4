"""Dense exact matrices, the standard alternating/symmetric forms, and
group-membership predicates.

Everything is immutable: a matrix is a tuple-of-tuples of ring values.
Determinants use fraction-free (Bareiss) elimination when the ring is an
integral domain with exact division, and bitmask cofactor expansion
otherwise, with a hard size cap so zero-divisor rings stay exact.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import (HalfNotInvertible, NotInvertible, NotRightInvertible,
                     ShapeMismatch, SizeLimit, UnsupportedRing, FormViolation)
from .rings import (IntegerRing, ModularRing, RationalField, Ring, RingValue,
                    has_half)

DET_SIZE_CAP = 12


class Mat:
    """An exact rows x cols matrix over one ring of the tower."""

    __slots__ = ("ring", "rows", "cols", "entries")

    def __init__(self, ring: Ring, entries):
        grid = tuple(tuple(ring.coerce(e) for e in row) for row in entries)
        if not grid or not grid[0]:
            raise ShapeMismatch("matrices must be non-empty")
        width = len(grid[0])
        if any(len(r) != width for r in grid):
            raise ShapeMismatch("ragged rows")
        object.__setattr__(self, "ring", ring)
        object.__setattr__(self, "rows", len(grid))
        object.__setattr__(self, "cols", width)
        object.__setattr__(self, "entries", grid)

    def __setattr__(self, *a):
        raise AttributeError("Mat is immutable")

    # -- constructors ------------------------------------------------------
    @staticmethod
    def identity(ring: Ring, n: int) -> "Mat":
        one, zero = ring.one(), ring.zero()
        return Mat(ring, [[one if i == j else zero for j in range(n)]
                          for i in range(n)])

    @staticmethod
    def zeros(ring: Ring, rows: int, cols: int) -> "Mat":
        zero = ring.zero()
        return Mat(ring, [[zero] * cols for _ in range(rows)])

    @staticmethod
    def row_vector(ring: Ring, values) -> "Mat":
        return Mat(ring, [list(values)])

    @staticmethod
    def col_vector(ring: Ring, values) -> "Mat":
        return Mat(ring, [[v] for v in values])

    # -- basics --------------------------------------------------------------
    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def row(self, i: int):
        return self.entries[i]

    def col(self, j: int):
        return tuple(r[j] for r in self.entries)

    def __eq__(self, other):
        return (isinstance(other, Mat) and other.ring == self.ring
                and other.entries == self.entries)

    def __hash__(self):
        return hash((self.ring.key(), self.entries))

    def __repr__(self):
        body = "; ".join(" ".join(repr(e) for e in row) for row in self.entries)
        return f"Mat({self.ring}, [{body}])"

    def _require_same_ring(self, other: "Mat"):
        if self.ring != other.ring:
            raise ShapeMismatch("matrices over different rings")

    def __add__(self, other: "Mat") -> "Mat":
        self._require_same_ring(other)
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ShapeMismatch("addition shape mismatch")
        return Mat(self.ring, [[a + b for a, b in zip(r1, r2)]
                               for r1, r2 in zip(self.entries, other.entries)])

    def __sub__(self, other: "Mat") -> "Mat":
        self._require_same_ring(other)
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ShapeMismatch("subtraction shape mismatch")
        return Mat(self.ring, [[a - b for a, b in zip(r1, r2)]
                               for r1, r2 in zip(self.entries, other.entries)])

    def __neg__(self) -> "Mat":
        return Mat(self.ring, [[-a for a in row] for row in self.entries])

    def __matmul__(self, other: "Mat") -> "Mat":
        self._require_same_ring(other)
        if self.cols != other.rows:
            raise ShapeMismatch(
                f"cannot multiply {self.rows}x{self.cols} by {other.rows}x{other.cols}")
        cols = list(zip(*other.entries))
        zero = self.ring.zero()
        out = []
        for row in self.entries:
            out_row = []
            for col in cols:
                acc = zero
                for a, b in zip(row, col):
                    acc = acc + a * b
                out_row.append(acc)
            out.append(out_row)
        return Mat(self.ring, out)

    __mul__ = __matmul__

    def scale(self, c: RingValue) -> "Mat":
        return Mat(self.ring, [[c * a for a in row] for row in self.entries])

    def transpose(self) -> "Mat":
        return Mat(self.ring, list(zip(*self.entries)))

    def block_perp(self, other: "Mat") -> "Mat":
        """Place self then other on the diagonal (orthogonal sum)."""
        self._require_same_ring(other)
        zero = self.ring.zero()
        out = []
        for row in self.entries:
            out.append(list(row) + [zero] * other.cols)
        for row in other.entries:
            out.append([zero] * self.cols + list(row))
        return Mat(self.ring, out)

    def submatrix(self, r0: int, r1: int, c0: int, c1: int) -> "Mat":
        return Mat(self.ring, [row[c0:c1] for row in self.entries[r0:r1]])

    def is_identity(self) -> bool:
        if self.rows != self.cols:
            return False
        one, zero = self.ring.one(), self.ring.zero()
        return all(e == (one if i == j else zero)
                   for i, row in enumerate(self.entries)
                   for j, e in enumerate(row))

    def map_ring(self, new_ring: Ring, fn=None) -> "Mat":
        """Entrywise retyping, e.g. lifting constants into R[T]."""
        fn = fn or new_ring.coerce
        return Mat(new_ring, [[fn(e) for e in row] for row in self.entries])

    # -- determinant and inverse ---------------------------------------------
    def det(self) -> RingValue:
        if self.rows != self.cols:
            raise ShapeMismatch("determinant of a non-square matrix")
        n = self.rows
        if n > DET_SIZE_CAP:
            raise SizeLimit(f"determinant capped at size {DET_SIZE_CAP}")
        if n == 1:
            return self.entries[0][0]
        ring = self.ring
        if ring.is_field:
            return self._det_gauss()
        if ring.is_domain:
            try:
                return self._det_bareiss()
            except UnsupportedRing:
                pass
        return self._det_cofactor()

    def _det_gauss(self) -> RingValue:
        ring = self.ring
        a = [list(row) for row in self.entries]
        n = self.rows
        det = ring.one()
        for k in range(n):
            piv = next((i for i in range(k, n) if not a[i][k].is_zero()), None)
            if piv is None:
                return ring.zero()
            if piv != k:
                a[k], a[piv] = a[piv], a[k]
                det = -det
            det = det * a[k][k]
            inv = a[k][k].inverse()
            for i in range(k + 1, n):
                f = a[i][k] * inv
                a[i] = [x - f * y for x, y in zip(a[i], a[k])]
        return det

    def _det_bareiss(self) -> RingValue:
        ring = self.ring
        a = [list(row) for row in self.entries]
        n = self.rows
        sign = 1
        prev = ring.one()
        for k in range(n - 1):
            piv = next((i for i in range(k, n) if not a[i][k].is_zero()), None)
            if piv is None:
                return ring.zero()
            if piv != k:
                a[k], a[piv] = a[piv], a[k]
                sign = -sign
            for i in range(k + 1, n):
                for j in range(k + 1, n):
                    num = a[k][k] * a[i][j] - a[i][k] * a[k][j]
                    a[i][j] = RingValue(ring, ring.exact_div(num.payload,
                                                             prev.payload))
            prev = a[k][k]
        d = a[n - 1][n - 1]
        return d if sign == 1 else -d

    def _det_cofactor(self) -> RingValue:
        # bitmask dynamic program over column subsets, exact over any ring
        ring = self.ring
        n = self.rows
        zero = ring.zero()
        prev = {0: ring.one()}
        for i in range(n):
            nxt = {}
            row = self.entries[i]
            for mask, val in prev.items():
                sign_flip = False
                for j in range(n):
                    bit = 1 << j
                    if mask & bit:
                        continue
                    term = val * row[j]
                    if sign_flip:
                        term = -term
                    key = mask | bit
                    nxt[key] = nxt.get(key, zero) + term
                    sign_flip = not sign_flip
            prev = {m: v for m, v in nxt.items()}
        return prev[(1 << n) - 1]

    def inverse(self) -> "Mat":
        """Adjugate inverse; requires a unit determinant."""
        d = self.det()
        if not d.is_unit():
            raise NotInvertible("determinant is not a unit", det=d)
        dinv = d.inverse()
        n = self.rows
        if n == 1:
            return Mat(self.ring, [[dinv]])
        cof = []
        for i in range(n):
            cof_row = []
            for j in range(n):
                minor = Mat(self.ring,
                            [[self.entries[r][c] for c in range(n) if c != j]
                             for r in range(n) if r != i])
                m = minor._det_cofactor() if not (self.ring.is_field or
                                                  self.ring.is_domain) \
                    else minor.det()
                if (i + j) % 2:
                    m = -m
                cof_row.append(m)
            cof.append(cof_row)
        adj = Mat(self.ring, cof).transpose()
        return adj.scale(dinv)

    def to_json(self) -> dict:
        return {"rows": self.rows, "cols": self.cols,
                "ring": self.ring.to_json(),
                "entries": [[e.to_json() for e in row] for row in self.entries]}

    @staticmethod
    def from_json(obj: dict) -> "Mat":
        from .rings import ring_from_json
        ring = ring_from_json(obj["ring"])
        return Mat(ring, [[ring.value_from_json(e) for e in row]
                          for row in obj["entries"]])


def identity(ring: Ring, n: int) -> Mat:
    return Mat.identity(ring, n)


def block_perp(a: Mat, b: Mat) -> Mat:
    return a.block_perp(b)


# ---------------------------------------------------------------------------
# standard forms

@dataclass(frozen=True)
class Form:
    """Form tag: none, the alternating psi_n, or the symmetric phi_n."""

    kind: str  # "none" | "sp" | "orth"
    pairs: int = 0

    def matrix(self, ring: Ring) -> Mat:
        if self.kind == "sp":
            return psi(ring, self.pairs)
        if self.kind == "orth":
            return phi(ring, self.pairs)
        raise ShapeMismatch("the trivial form has no matrix")


def psi(ring: Ring, n: int) -> Mat:
    """psi_n: block sum of n copies of [[0,1],[-1,0]]."""
    blk = Mat(ring, [[0, 1], [-1, 0]])
    out = blk
    for _ in range(n - 1):
        out = out.block_perp(blk)
    return out


def phi(ring: Ring, n: int) -> Mat:
    """phi_n: block sum of n copies of [[0,1],[1,0]]."""
    blk = Mat(ring, [[0, 1], [1, 0]])
    out = blk
    for _ in range(n - 1):
        out = out.block_perp(blk)
    return out


def membership(a: Mat, group: str) -> bool:
    """Exact membership test for GL, SL, Sp, O, SO."""
    if a.rows != a.cols:
        raise ShapeMismatch("group membership needs a square matrix")
    if group == "GL":
        return a.det().is_unit()
    if group == "SL":
        return a.det() == a.ring.one()
    if group in ("Sp", "O", "SO"):
        if a.rows % 2:
            raise ShapeMismatch(f"{group} requires even size")
        n = a.rows // 2
        if group == "Sp":
            form = psi(a.ring, n)
            return a.transpose() @ form @ a == form
        if not has_half(a.ring):
            raise HalfNotInvertible(
                f"orthogonal membership needs 1/2 in {a.ring}")
        form = phi(a.ring, n)
        ok = a.transpose() @ form @ a == form
        if group == "SO":
            return ok and a.det() == a.ring.one()
        return ok
    raise ValueError(f"unknown group {group!r}")


# ---------------------------------------------------------------------------
# right-inverse certificates

@dataclass(frozen=True)
class RightInverseCert:
    """A certified pair alpha * beta = I."""

    alpha: Mat
    beta: Mat

    def __post_init__(self):
        prod = self.alpha @ self.beta
        if not prod.is_identity():
            raise NotRightInvertible("certificate does not multiply to I")


def _right_inverse_local(a: Mat) -> Mat:
    """Column reduction with unit pivots over a local ring (or field)."""
    ring = a.ring
    n, m = a.rows, a.cols
    work = [list(row) for row in a.entries]
    trans = [list(row) for row in Mat.identity(ring, m).entries]
    pivots = []
    used = set()
    for i in range(n):
        piv = None
        for j in range(m):
            if j not in used and work[i][j].is_unit():
                piv = j
                break
        if piv is None:
            raise NotRightInvertible(f"row {i} of the matrix has no unit pivot")
        inv = work[i][piv].inverse()
        for r in range(n):
            work[r][piv] = work[r][piv] * inv
        for r in range(m):
            trans[r][piv] = trans[r][piv] * inv
        for j in range(m):
            if j == piv:
                continue
            f = work[i][j]
            if f.is_zero():
                continue
            for r in range(n):
                work[r][j] = work[r][j] - f * work[r][piv]
            for r in range(m):
                trans[r][j] = trans[r][j] - f * trans[r][piv]
        pivots.append(piv)
        used.add(piv)
    beta = Mat(ring, [[trans[r][pivots[i]] for i in range(n)]
                      for r in range(m)])
    return beta


def _snf_solve_int(a_rows, rhs_cols):
    """Solve A X = B over the integers via Smith reduction; None if unsolvable.

    a_rows: list of int lists (n x m); rhs_cols: list of int column vectors.
    Returns X as list of int rows (m x k).
    """
    n = len(a_rows)
    m = len(a_rows[0])
    A = [list(r) for r in a_rows]
    U = [[int(i == j) for j in range(n)] for i in range(n)]
    V = [[int(i == j) for j in range(m)] for i in range(m)]

    def row_op(i1, i2, q):  # row i1 -= q * row i2
        A[i1] = [x - q * y for x, y in zip(A[i1], A[i2])]
        U[i1] = [x - q * y for x, y in zip(U[i1], U[i2])]

    def col_op(j1, j2, q):  # col j1 -= q * col j2
        for r in range(n):
            A[r][j1] -= q * A[r][j2]
        for r in range(m):
            V[r][j1] -= q * V[r][j2]

    def swap_rows(i1, i2):
        A[i1], A[i2] = A[i2], A[i1]
        U[i1], U[i2] = U[i2], U[i1]

    def swap_cols(j1, j2):
        for r in range(n):
            A[r][j1], A[r][j2] = A[r][j2], A[r][j1]
        for r in range(m):
            V[r][j1], V[r][j2] = V[r][j2], V[r][j1]

    t = 0
    while t < min(n, m):
        # find a nonzero pivot
        piv = None
        for i in range(t, n):
            for j in range(t, m):
                if A[i][j]:
                    piv = (i, j)
                    break
            if piv:
                break
        if piv is None:
            break
        swap_rows(t, piv[0])
        swap_cols(t, piv[1])
        while True:
            done = True
            for i in range(t + 1, n):
                if A[i][t]:
                    q = A[i][t] // A[t][t]
                    row_op(i, t, q)
                    if A[i][t]:
                        swap_rows(t, i)
                        done = False
            for j in range(t + 1, m):
                if A[t][j]:
                    q = A[t][j] // A[t][t]
                    col_op(j, t, q)
                    if A[t][j]:
                        swap_cols(t, j)
                        done = False
            if done:
                break
        t += 1
    # A = U * original * V is now diagonal (first t entries)
    X_cols = []
    for b in rhs_cols:
        ub = [sum(U[i][r] * b[r] for r in range(n)) for i in range(n)]
        y = [0] * m
        for i in range(n):
            d = A[i][i] if i < m else 0
            if d == 0:
                if ub[i] != 0:
                    return None
                continue
            if ub[i] % d:
                return None
            y[i] = ub[i] // d
        x = [sum(V[r][c] * y[c] for c in range(m)) for r in range(m)]
        X_cols.append(x)
    return [[X_cols[c][r] for c in range(len(X_cols))] for r in range(m)]


def _right_inverse_modular(a: Mat) -> Mat:
    """CRT over the prime-power factors of the modulus."""
    ring: ModularRing = a.ring
    n_mod = ring.n
    # factor the modulus
    factors = []
    m = n_mod
    p = 2
    while p * p <= m:
        if m % p == 0:
            q = 1
            while m % p == 0:
                m //= p
                q *= p
            factors.append(q)
        p += 1 if p == 2 else 2
    if m > 1:
        factors.append(m)
    parts = []
    for q in factors:
        Rq = ModularRing(q)
        aq = Mat(Rq, [[e.payload for e in row] for row in a.entries])
        parts.append((q, _right_inverse_local(aq)))
    # CRT entrywise
    entries = []
    for r in range(a.cols):
        row = []
        for c in range(a.rows):
            x = 0
            mod = 1
            for q, beta in parts:
                v = beta.entries[r][c].payload
                # extend x to satisfy x = v (mod q) as well
                k = ((v - x) * pow(mod % q, -1, q)) % q
                x = x + mod * k
                mod *= q
            row.append(x)
        entries.append(row)
    return Mat(ring, entries)


def right_inverse(a: Mat) -> RightInverseCert:
    """A certified beta with a*beta = I, for the solvable ring families."""
    ring = a.ring
    if a.rows > a.cols:
        raise NotRightInvertible("more rows than columns")
    if ring.is_local or ring.is_field:
        return RightInverseCert(a, _right_inverse_local(a))
    if isinstance(ring, ModularRing):
        return RightInverseCert(a, _right_inverse_modular(a))
    if isinstance(ring, IntegerRing):
        rows = [[e.payload for e in row] for row in a.entries]
        rhs = [[int(i == j) for i in range(a.rows)] for j in range(a.rows)]
        sol = _snf_solve_int(rows, rhs)
        if sol is None:
            raise NotRightInvertible("no integral right inverse")
        return RightInverseCert(a, Mat(ring, sol))
    if isinstance(ring, RationalField):
        return RightInverseCert(a, _right_inverse_local(a))
    raise UnsupportedRing(
        f"right-inverse solving over {ring} is unsupported; supply a certificate")


# ---------------------------------------------------------------------------
# isotropic frames and hyperbolic vectors

@dataclass(frozen=True)
class IsotropicFrame:
    """A 2n x 2m right-invertible V with V F_m V^t = F_n for F in {psi, phi}."""

    mat: Mat
    kind: str  # "sp" | "orth"

    def __post_init__(self):
        V = self.mat
        if V.rows % 2 or V.cols % 2 or V.rows > V.cols:
            raise ShapeMismatch("frame must be 2n x 2m with n <= m")
        if self.kind not in ("sp", "orth"):
            raise ShapeMismatch("frame kind must be sp or orth")
        if self.kind == "orth" and not has_half(V.ring):
            raise HalfNotInvertible(f"orthogonal frames need 1/2 in {V.ring}")
        fm = self._form(V.cols // 2)
        fn = self._form(V.rows // 2)
        if V @ fm @ V.transpose() != fn:
            raise FormViolation("V F_m V^t != F_n")

    def _form(self, k: int) -> Mat:
        return psi(self.mat.ring, k) if self.kind == "sp" else phi(self.mat.ring, k)

    @property
    def n_pairs(self) -> int:
        return self.mat.rows // 2

    @property
    def m_pairs(self) -> int:
        return self.mat.cols // 2

    @staticmethod
    def standard(ring: Ring, kind: str, n: int, m: int) -> "IsotropicFrame":
        ident = Mat.identity(ring, 2 * n)
        if m > n:
            pad = Mat.zeros(ring, 2 * n, 2 * (m - n))
            rows = [list(r1) + list(r2) for r1, r2 in
                    zip(ident.entries, pad.entries)]
            return IsotropicFrame(Mat(ring, rows), kind)
        return IsotropicFrame(ident, kind)

    def right_inverse(self) -> RightInverseCert:
        """The form identity yields an explicit right inverse."""
        V = self.mat
        fm = self._form(V.cols // 2)
        fn = self._form(V.rows // 2)
        fn_inv = -fn if self.kind == "sp" else fn  # psi^-1 = -psi, phi^-1 = phi
        beta = fm @ V.transpose() @ fn_inv
        return RightInverseCert(V, beta)


@dataclass(frozen=True)
class HyperbolicVector:
    """An element x + f of P + P* with its quadratic value q(x+f) = f(x)."""

    x_part: tuple
    f_part: tuple

    def __post_init__(self):
        if len(self.x_part) != len(self.f_part):
            raise ShapeMismatch("x and f parts must share the rank")

    @property
    def rank(self) -> int:
        return len(self.x_part)

    def q(self) -> RingValue:
        acc = self.f_part[0].ring.zero()
        for f, x in zip(self.f_part, self.x_part):
            acc = acc + f * x
        return acc

    def pair(self, other: "HyperbolicVector") -> RingValue:
        """The bilinear form B(w1, w2) = f1(x2) + f2(x1)."""
        acc = self.f_part[0].ring.zero()
        for f, x in zip(self.f_part, other.x_part):
            acc = acc + f * x
        for f, x in zip(other.f_part, self.x_part):
            acc = acc + f * x
        return acc


def hyperbolic_pair_check(w1: HyperbolicVector, w2: HyperbolicVector) -> bool:
    """True iff (w1, w2) is a hyperbolic pair: orthogonal, q = 1 and -1."""
    if w1.rank != w2.rank:
        raise ShapeMismatch("ranks differ")
    ring = w1.f_part[0].ring
    return (w1.pair(w2).is_zero() and w1.q() == ring.one()
            and w2.q() == -ring.one())
