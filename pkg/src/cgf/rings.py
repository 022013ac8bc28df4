"""Exact arithmetic in a closed tower of commutative rings with identity.

The tower is fixed by construction: the integers, the rationals, Z/n,
prime fields, truncated polynomial local rings F_p[x]/(x^e), the integers
localized at a prime, polynomial extensions R[T], quotients by decidable
ideals, and rings of fractions Z_s.  Every element is stored in a canonical
form, so equality is literal payload equality and all operations are pure.

Locality ("every unimodular tuple contains a unit") is computed from the
constructor, never asserted by the caller: Z/p^k, prime fields,
F_p[x]/(x^e), Z_(p) and fields are local; R[T] and Z_s never are.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from math import gcd

from .errors import (CgfError, DegreeCapExceeded, DescriptorMismatch, NotAUnit,
                     UnsupportedQuotient, UnsupportedRing)

DEFAULT_DEGREE_CAP = 64


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def _prime_power_base(n: int):
    """Return p if n = p^k for a prime p and k >= 1, else None."""
    if n < 2:
        return None
    p = 2
    m = n
    while p * p <= m:
        if m % p == 0:
            while m % p == 0:
                m //= p
            return p if m == 1 else None
        p += 1 if p == 2 else 2
    return m  # m prime, n = m


def _divides_power(d: int, s: int) -> bool:
    """True iff |d| divides |s|^k for some k >= 0."""
    d, s = abs(d), abs(s)
    if d == 1:
        return True
    if s == 0:
        return True  # the localization at 0 is the zero ring
    g = gcd(d, s)
    while g > 1:
        while d % g == 0:
            d //= g
        g = gcd(d, s)
    return d == 1


class RingValue:
    """An element of one ring of the tower, in canonical form.

    Values are immutable, hashable and compare by (ring, payload).
    Binary operators accept plain ints and coerce them through the ring.
    """

    __slots__ = ("ring", "payload")

    def __init__(self, ring: "Ring", payload):
        object.__setattr__(self, "ring", ring)
        object.__setattr__(self, "payload", payload)

    def __setattr__(self, *a):
        raise AttributeError("RingValue is immutable")

    def _coerce_other(self, other):
        if isinstance(other, RingValue):
            if other.ring != self.ring:
                raise DescriptorMismatch(
                    f"operands live in different rings: {self.ring} vs {other.ring}")
            return other.payload
        if isinstance(other, int):
            return self.ring.coerce(other).payload
        return NotImplemented

    def __add__(self, other):
        p = self._coerce_other(other)
        if p is NotImplemented:
            return NotImplemented
        return RingValue(self.ring, self.ring.add(self.payload, p))

    __radd__ = __add__

    def __sub__(self, other):
        p = self._coerce_other(other)
        if p is NotImplemented:
            return NotImplemented
        return RingValue(self.ring, self.ring.sub(self.payload, p))

    def __rsub__(self, other):
        p = self._coerce_other(other)
        if p is NotImplemented:
            return NotImplemented
        return RingValue(self.ring, self.ring.sub(p, self.payload))

    def __mul__(self, other):
        p = self._coerce_other(other)
        if p is NotImplemented:
            return NotImplemented
        return RingValue(self.ring, self.ring.mul(self.payload, p))

    __rmul__ = __mul__

    def __neg__(self):
        return RingValue(self.ring, self.ring.neg(self.payload))

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise ValueError("only non-negative integer powers")
        out = self.ring.one()
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __eq__(self, other):
        if isinstance(other, int):
            other = self.ring.coerce(other)
        return (isinstance(other, RingValue) and other.ring == self.ring
                and other.payload == self.payload)

    def __hash__(self):
        return hash((self.ring.key(), self.payload))

    def __repr__(self):
        return f"{self.ring.render(self.payload)}"

    def is_zero(self) -> bool:
        return self.payload == self.ring.zero().payload

    def is_unit(self) -> bool:
        return self.ring.is_unit_payload(self.payload)

    def inverse(self) -> "RingValue":
        return RingValue(self.ring, self.ring.inverse_payload(self.payload))

    def to_json(self):
        return self.ring.value_to_json(self.payload)


class Ring:
    """Base class: a node of the constructor tower, acting as element factory."""

    kind = "?"
    is_local = False
    is_field = False
    is_domain = False
    is_finite = False
    is_zero_ring = False
    characteristic = 0

    # -- identity of the descriptor --------------------------------------
    def key(self):
        raise NotImplementedError

    def __eq__(self, other):
        return isinstance(other, Ring) and other.key() == self.key()

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        return self.describe()

    def describe(self) -> str:
        raise NotImplementedError

    # -- canonical payloads ----------------------------------------------
    def canon(self, payload):
        raise NotImplementedError

    def coerce(self, x) -> RingValue:
        """Build a canonical element from payload-like input (always accepts int)."""
        raise NotImplementedError

    def value(self, payload) -> RingValue:
        return RingValue(self, self.canon(payload))

    def zero(self) -> RingValue:
        return self.coerce(0)

    def one(self) -> RingValue:
        return self.coerce(1)

    # -- arithmetic on payloads ------------------------------------------
    def add(self, a, b):
        raise NotImplementedError

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def mul(self, a, b):
        raise NotImplementedError

    def neg(self, a):
        raise NotImplementedError

    def is_unit_payload(self, a) -> bool:
        raise NotImplementedError

    def inverse_payload(self, a):
        raise NotImplementedError

    def is_nilpotent_payload(self, a) -> bool:
        return a == self.zero().payload

    # exact division a / b when the quotient exists in the ring (domains only)
    def exact_div(self, a, b):
        raise UnsupportedRing(f"no exact division in {self}")

    def render(self, payload) -> str:
        return str(payload)

    # -- enumeration / sampling ------------------------------------------
    def elements(self):
        raise UnsupportedRing(f"{self} is not finite")

    def cardinality(self) -> int:
        raise UnsupportedRing(f"{self} is not finite")

    def sort_key(self, payload):
        return payload

    def random(self, rng) -> RingValue:
        raise NotImplementedError

    # -- serialization ----------------------------------------------------
    def to_json(self) -> dict:
        raise NotImplementedError

    def value_to_json(self, payload):
        raise NotImplementedError

    def value_from_json(self, obj) -> RingValue:
        raise NotImplementedError


class IntegerRing(Ring):
    kind = "int"
    is_domain = True

    def key(self):
        return ("int",)

    def describe(self):
        return "Z"

    def canon(self, payload):
        if not isinstance(payload, int):
            raise DescriptorMismatch(f"integer payload expected, got {payload!r}")
        return payload

    def coerce(self, x):
        if isinstance(x, RingValue):
            if x.ring != self:
                raise DescriptorMismatch("value from another ring")
            return x
        return RingValue(self, self.canon(x))

    def add(self, a, b):
        return a + b

    def mul(self, a, b):
        return a * b

    def neg(self, a):
        return -a

    def is_unit_payload(self, a):
        return a in (1, -1)

    def inverse_payload(self, a):
        if a in (1, -1):
            return a
        raise NotAUnit(f"{a} is not a unit in Z")

    def exact_div(self, a, b):
        q, r = divmod(a, b)
        if r:
            raise CgfError(f"{a} not divisible by {b} in Z")
        return q

    def random(self, rng):
        return RingValue(self, rng.randint(-9, 9))

    def to_json(self):
        return {"kind": "int"}

    def value_to_json(self, payload):
        return payload

    def value_from_json(self, obj):
        return self.coerce(int(obj))


class RationalField(Ring):
    kind = "rat"
    is_domain = True
    is_field = True
    is_local = True  # a field has a unique maximal ideal

    def key(self):
        return ("rat",)

    def describe(self):
        return "Q"

    def canon(self, payload):
        if isinstance(payload, int):
            return Fraction(payload)
        if not isinstance(payload, Fraction):
            raise DescriptorMismatch(f"rational payload expected, got {payload!r}")
        return payload

    def coerce(self, x):
        if isinstance(x, RingValue):
            if x.ring != self:
                raise DescriptorMismatch("value from another ring")
            return x
        return RingValue(self, self.canon(x))

    def add(self, a, b):
        return a + b

    def mul(self, a, b):
        return a * b

    def neg(self, a):
        return -a

    def is_unit_payload(self, a):
        return a != 0

    def inverse_payload(self, a):
        if a == 0:
            raise NotAUnit("0 is not a unit in Q")
        return 1 / a

    def exact_div(self, a, b):
        return a / b

    def random(self, rng):
        return RingValue(self, Fraction(rng.randint(-9, 9), rng.randint(1, 9)))

    def to_json(self):
        return {"kind": "rat"}

    def value_to_json(self, payload):
        return [payload.numerator, payload.denominator]

    def value_from_json(self, obj):
        if isinstance(obj, int):
            return self.coerce(obj)
        return self.coerce(Fraction(int(obj[0]), int(obj[1])))


class ModularRing(Ring):
    """Z/n with canonical residues in [0, n).  n = 1 is the zero ring."""

    kind = "mod"
    is_finite = True

    def __init__(self, n: int):
        if not isinstance(n, int) or n < 1:
            raise UnsupportedRing(f"modulus must be a positive integer, got {n!r}")
        self.n = n
        self.characteristic = n
        self.is_field = _is_prime(n)
        self.is_domain = self.is_field
        self.is_zero_ring = n == 1
        self.is_local = n == 1 or _prime_power_base(n) is not None

    def key(self):
        return ("mod", self.n)

    def describe(self):
        return f"Z/{self.n}"

    def canon(self, payload):
        if not isinstance(payload, int):
            raise DescriptorMismatch(f"residue payload expected, got {payload!r}")
        return payload % self.n

    def coerce(self, x):
        if isinstance(x, RingValue):
            if x.ring != self:
                raise DescriptorMismatch("value from another ring")
            return x
        return RingValue(self, self.canon(x))

    def add(self, a, b):
        return (a + b) % self.n

    def mul(self, a, b):
        return (a * b) % self.n

    def neg(self, a):
        return (-a) % self.n

    def is_unit_payload(self, a):
        if self.is_zero_ring:
            return True
        return gcd(a, self.n) == 1

    def inverse_payload(self, a):
        if self.is_zero_ring:
            return 0
        if gcd(a, self.n) != 1:
            raise NotAUnit(f"{a} is not a unit mod {self.n}")
        return pow(a, -1, self.n)

    def is_nilpotent_payload(self, a):
        x = a % self.n
        for _ in range(self.n.bit_length()):
            x = (x * x) % self.n
        return x == 0

    def exact_div(self, a, b):
        # only meaningful when self is a field
        if not self.is_field:
            raise UnsupportedRing(f"no exact division in {self}")
        return self.mul(a, self.inverse_payload(b))

    def elements(self):
        return (RingValue(self, i) for i in range(self.n))

    def cardinality(self):
        return self.n

    def random(self, rng):
        return RingValue(self, rng.randrange(self.n))

    def to_json(self):
        return {"kind": "mod", "n": self.n}

    def value_to_json(self, payload):
        return payload

    def value_from_json(self, obj):
        return self.coerce(int(obj))


class PrimeField(ModularRing):
    """F_p; same arithmetic as Z/p but a distinct descriptor kind."""

    kind = "prime"

    def __init__(self, p: int):
        if not _is_prime(p):
            raise UnsupportedRing(f"{p} is not prime")
        super().__init__(p)
        self.p = p

    def key(self):
        return ("prime", self.p)

    def describe(self):
        return f"F_{self.p}"

    def to_json(self):
        return {"kind": "prime", "p": self.p}


class TruncatedPolyLocal(Ring):
    """F_p[x]/(x^e): a local ring with nilpotents for e > 1.

    Payloads are coefficient tuples (constant term first) of length < e
    with trailing zeros stripped; the empty tuple is zero.
    """

    kind = "polyloc"
    is_finite = True
    is_local = True

    def __init__(self, p: int, e: int):
        if not _is_prime(p):
            raise UnsupportedRing(f"{p} is not prime")
        if e < 1:
            raise UnsupportedRing("truncation exponent must be >= 1")
        self.p = p
        self.e = e
        self.characteristic = p
        self.is_field = e == 1
        self.is_domain = e == 1

    def key(self):
        return ("polyloc", self.p, self.e)

    def describe(self):
        return f"F_{self.p}[x]/(x^{self.e})"

    def canon(self, payload):
        if isinstance(payload, int):
            payload = (payload,)
        coeffs = [c % self.p for c in payload[:self.e]]
        while coeffs and coeffs[-1] == 0:
            coeffs.pop()
        return tuple(coeffs)

    def coerce(self, x):
        if isinstance(x, RingValue):
            if x.ring != self:
                raise DescriptorMismatch("value from another ring")
            return x
        if isinstance(x, (list, tuple, int)):
            return RingValue(self, self.canon(x))
        raise DescriptorMismatch(f"cannot coerce {x!r} into {self}")

    def add(self, a, b):
        n = max(len(a), len(b))
        out = [(a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0)
               for i in range(n)]
        return self.canon(out)

    def mul(self, a, b):
        out = [0] * min(self.e, len(a) + len(b) - 1 if a and b else 0)
        for i, ca in enumerate(a):
            if i >= self.e:
                break
            for j, cb in enumerate(b):
                if i + j >= self.e:
                    break
                out[i + j] += ca * cb
        return self.canon(out)

    def neg(self, a):
        return self.canon([-c for c in a])

    def is_unit_payload(self, a):
        return bool(a) and a[0] % self.p != 0

    def inverse_payload(self, a):
        if not self.is_unit_payload(a):
            raise NotAUnit(f"{a} is not a unit in {self}")
        # power-series inversion mod x^e
        inv0 = pow(a[0], -1, self.p)
        out = [inv0] + [0] * (self.e - 1)
        for k in range(1, self.e):
            s = sum(out[k - j] * a[j] for j in range(1, min(k, len(a) - 1) + 1))
            out[k] = (-inv0 * s) % self.p
        return self.canon(out)

    def is_nilpotent_payload(self, a):
        return not a or a[0] % self.p == 0

    def elements(self):
        for combo in itertools.product(range(self.p), repeat=self.e):
            yield RingValue(self, self.canon(combo))

    def cardinality(self):
        return self.p ** self.e

    def sort_key(self, payload):
        return tuple(payload) + (0,) * (self.e - len(payload))

    def random(self, rng):
        return RingValue(self, self.canon([rng.randrange(self.p)
                                           for _ in range(self.e)]))

    def render(self, payload):
        if not payload:
            return "0"
        terms = []
        for i, c in enumerate(payload):
            if c == 0:
                continue
            terms.append(str(c) if i == 0 else (f"{c}x^{i}" if i > 1 else f"{c}x"))
        return "+".join(terms)

    def to_json(self):
        return {"kind": "polyloc", "p": self.p, "e": self.e}

    def value_to_json(self, payload):
        return list(payload)

    def value_from_json(self, obj):
        return self.coerce(obj if isinstance(obj, (list, int)) else list(obj))


class LocalizedIntegers(Ring):
    """Z localized at the prime ideal (p): fractions with denominator coprime to p."""

    kind = "loc_int"
    is_domain = True
    is_local = True

    def __init__(self, p: int):
        if not _is_prime(p):
            raise UnsupportedRing(f"{p} is not prime")
        self.p = p

    def key(self):
        return ("loc_int", self.p)

    def describe(self):
        return f"Z_({self.p})"

    def canon(self, payload):
        if isinstance(payload, int):
            payload = Fraction(payload)
        if not isinstance(payload, Fraction):
            raise DescriptorMismatch(f"fraction payload expected, got {payload!r}")
        if payload.denominator % self.p == 0:
            raise DescriptorMismatch(
                f"{payload} has denominator divisible by {self.p}")
        return payload

    def coerce(self, x):
        if isinstance(x, RingValue):
            if x.ring != self:
                raise DescriptorMismatch("value from another ring")
            return x
        return RingValue(self, self.canon(x if not isinstance(x, tuple)
                                          else Fraction(*x)))

    def add(self, a, b):
        return a + b

    def mul(self, a, b):
        return a * b

    def neg(self, a):
        return -a

    def is_unit_payload(self, a):
        return a != 0 and a.numerator % self.p != 0

    def inverse_payload(self, a):
        if not self.is_unit_payload(a):
            raise NotAUnit(f"{a} is not a unit in {self}")
        return 1 / a

    def exact_div(self, a, b):
        q = a / b
        return self.canon(q)

    def random(self, rng):
        den = rng.choice([d for d in range(1, 10) if d % self.p != 0])
        return RingValue(self, Fraction(rng.randint(-9, 9), den))

    def to_json(self):
        return {"kind": "loc_int", "p": self.p}

    def value_to_json(self, payload):
        return [payload.numerator, payload.denominator]

    def value_from_json(self, obj):
        if isinstance(obj, int):
            return self.coerce(obj)
        return self.coerce(Fraction(int(obj[0]), int(obj[1])))


class FractionRing(Ring):
    """Z_s: integers with s inverted; denominators divide a power of |s|.

    Only the integer base is supported: canonical lowest-terms fractions
    make both membership and equality decidable there.
    """

    kind = "frac"
    is_domain = True

    def __init__(self, base: Ring, s):
        if not isinstance(base, IntegerRing):
            raise UnsupportedRing(
                "rings of fractions are supported over the integer base only")
        s_int = s.payload if isinstance(s, RingValue) else int(s)
        if s_int == 0:
            raise UnsupportedRing("cannot invert 0")
        self.base = base
        self.s = s_int

    def key(self):
        return ("frac", self.s)

    def describe(self):
        return f"Z[1/{self.s}]"

    def canon(self, payload):
        if isinstance(payload, int):
            payload = Fraction(payload)
        if not isinstance(payload, Fraction):
            raise DescriptorMismatch(f"fraction payload expected, got {payload!r}")
        if not _divides_power(payload.denominator, self.s):
            raise DescriptorMismatch(
                f"{payload} does not lie in Z[1/{self.s}]")
        return payload

    def coerce(self, x):
        if isinstance(x, RingValue):
            if x.ring == self:
                return x
            if isinstance(x.ring, IntegerRing):
                return RingValue(self, Fraction(x.payload))
            raise DescriptorMismatch("value from another ring")
        if isinstance(x, tuple):
            x = Fraction(*x)
        return RingValue(self, self.canon(x))

    def add(self, a, b):
        return a + b

    def mul(self, a, b):
        return a * b

    def neg(self, a):
        return -a

    def is_unit_payload(self, a):
        return a != 0 and _divides_power(a.numerator, self.s)

    def inverse_payload(self, a):
        if not self.is_unit_payload(a):
            raise NotAUnit(f"{a} is not a unit in {self}")
        return 1 / a

    def exact_div(self, a, b):
        return self.canon(a / b)

    def random(self, rng):
        k = rng.randrange(3)
        return RingValue(self, Fraction(rng.randint(-9, 9), abs(self.s) ** k or 1))

    def to_json(self):
        return {"kind": "frac", "base": self.base.to_json(),
                "s": self.base.value_to_json(self.s)}

    def value_to_json(self, payload):
        return [payload.numerator, payload.denominator]

    def value_from_json(self, obj):
        if isinstance(obj, int):
            return self.coerce(obj)
        return self.coerce(Fraction(int(obj[0]), int(obj[1])))


class PolyExt(Ring):
    """R[T]: dense polynomials over a base ring of the tower.

    Payloads are tuples of base payloads, constant term first, trailing
    zeros stripped.  Degrees above ``degree_cap`` raise instead of
    truncating silently.
    """

    kind = "poly"

    def __init__(self, base: Ring, var: str = "T",
                 degree_cap: int = DEFAULT_DEGREE_CAP):
        self.base = base
        self.var = var
        self.degree_cap = degree_cap
        self.characteristic = base.characteristic
        self.is_domain = base.is_domain
        self.is_zero_ring = base.is_zero_ring

    def key(self):
        return ("poly", self.base.key(), self.var)

    def describe(self):
        return f"{self.base.describe()}[{self.var}]"

    def canon(self, payload):
        if isinstance(payload, int):
            payload = (self.base.coerce(payload).payload,)
        coeffs = [self.base.canon(c) for c in payload]
        z = self.base.zero().payload
        while coeffs and coeffs[-1] == z:
            coeffs.pop()
        if len(coeffs) - 1 > self.degree_cap:
            raise DegreeCapExceeded(
                f"degree {len(coeffs) - 1} exceeds cap {self.degree_cap}")
        return tuple(coeffs)

    def coerce(self, x):
        if isinstance(x, RingValue):
            if x.ring == self:
                return x
            if x.ring == self.base:
                return RingValue(self, self.canon((x.payload,)))
            raise DescriptorMismatch("value from another ring")
        if isinstance(x, (list, tuple)):
            payload = []
            for c in x:
                if isinstance(c, RingValue):
                    if c.ring != self.base:
                        raise DescriptorMismatch("coefficient from another ring")
                    payload.append(c.payload)
                else:
                    payload.append(self.base.coerce(c).payload)
            return RingValue(self, self.canon(payload))
        if isinstance(x, int):
            return RingValue(self, self.canon(x))
        # a bare base payload acts as a constant polynomial
        return RingValue(self, self.canon((self.base.coerce(x).payload,)))

    def variable(self) -> RingValue:
        return RingValue(self, self.canon((self.base.zero().payload,
                                           self.base.one().payload)))

    def embed_const(self, v: RingValue) -> RingValue:
        if v.ring != self.base:
            raise DescriptorMismatch("constant from another ring")
        return RingValue(self, self.canon((v.payload,)))

    def constant_term(self, a) -> RingValue:
        payload = a.payload if isinstance(a, RingValue) else a
        return RingValue(self.base,
                         payload[0] if payload else self.base.zero().payload)

    def add(self, a, b):
        n = max(len(a), len(b))
        z = self.base.zero().payload
        out = [self.base.add(a[i] if i < len(a) else z,
                             b[i] if i < len(b) else z) for i in range(n)]
        return self.canon(out)

    def mul(self, a, b):
        if not a or not b:
            return ()
        z = self.base.zero().payload
        out = [z] * (len(a) + len(b) - 1)
        for i, ca in enumerate(a):
            if ca == z:
                continue
            for j, cb in enumerate(b):
                out[i + j] = self.base.add(out[i + j], self.base.mul(ca, cb))
        return self.canon(out)

    def neg(self, a):
        return tuple(self.base.neg(c) for c in a)

    def is_unit_payload(self, a):
        # unit iff constant term is a unit and the higher coefficients
        # are nilpotent (e.g. 1 + 2T over Z/4)
        if self.is_zero_ring:
            return True
        if not a or not self.base.is_unit_payload(a[0]):
            return False
        return all(self.base.is_nilpotent_payload(c) for c in a[1:])

    def inverse_payload(self, a):
        if not self.is_unit_payload(a):
            raise NotAUnit(f"{self.render(a)} is not a unit in {self}")
        g0 = self.canon((self.base.inverse_payload(a[0]),))
        one = self.canon((self.base.one().payload,))
        h = self.sub(one, self.mul(a, g0))  # nilpotent
        acc, term = one, one
        for _ in range(4 * self.degree_cap + 4):
            term = self.mul(term, h)
            if not term:
                return self.mul(g0, acc)
            acc = self.add(acc, term)
        raise CgfError("power series inversion did not terminate")

    def is_nilpotent_payload(self, a):
        return all(self.base.is_nilpotent_payload(c) for c in a)

    def eval_at(self, a, t: RingValue) -> RingValue:
        """Horner evaluation of a payload at a base-ring point."""
        if t.ring != self.base:
            raise DescriptorMismatch("evaluation point from another ring")
        acc = self.base.zero().payload
        for c in reversed(a):
            acc = self.base.add(self.base.mul(acc, t.payload), c)
        return RingValue(self.base, acc)

    def compose_scale(self, a, b: RingValue):
        """Payload of f(b*T) for f with payload ``a``; b in the base ring."""
        if b.ring != self.base:
            raise DescriptorMismatch("scale from another ring")
        out = []
        power = self.base.one().payload
        for c in a:
            out.append(self.base.mul(c, power))
            power = self.base.mul(power, b.payload)
        return self.canon(out)

    def render(self, payload):
        if not payload:
            return "0"
        terms = []
        for i, c in enumerate(payload):
            cs = self.base.render(c)
            if i == 0:
                terms.append(cs)
            elif i == 1:
                terms.append(f"({cs}){self.var}")
            else:
                terms.append(f"({cs}){self.var}^{i}")
        return " + ".join(terms)

    def random(self, rng):
        deg = rng.randrange(3)
        return self.coerce([self.base.random(rng) for _ in range(deg + 1)])

    def to_json(self):
        return {"kind": "poly", "base": self.base.to_json(), "var": self.var}

    def value_to_json(self, payload):
        return [self.base.value_to_json(c) for c in payload]

    def value_from_json(self, obj):
        if isinstance(obj, int):
            return self.coerce(obj)
        return self.coerce([self.base.value_from_json(c) for c in obj])


def _poly_divmod_field(num, den, field: Ring):
    """Division with remainder in F[x] for a field F; payload tuples."""
    num = list(num)
    dlead = den[-1]
    dinv = field.inverse_payload(dlead)
    deg_d = len(den) - 1
    quo = [field.zero().payload] * max(0, len(num) - deg_d)
    while len(num) - 1 >= deg_d and num:
        shift = len(num) - 1 - deg_d
        q = field.mul(num[-1], dinv)
        quo[shift] = q
        for i, c in enumerate(den):
            num[shift + i] = field.sub(num[shift + i], field.mul(q, c))
        while num and num[-1] == field.zero().payload:
            num.pop()
    return tuple(quo), tuple(num)


def _poly_xgcd_field(a, b, field: Ring):
    """Extended gcd in F[x]; returns (g, u, v) with u*a + v*b = g."""
    zero, one = (), (field.one().payload,)

    def padd(x, y):
        n = max(len(x), len(y))
        z = field.zero().payload
        out = [field.add(x[i] if i < len(x) else z, y[i] if i < len(y) else z)
               for i in range(n)]
        while out and out[-1] == z:
            out.pop()
        return tuple(out)

    def pmul(x, y):
        if not x or not y:
            return ()
        z = field.zero().payload
        out = [z] * (len(x) + len(y) - 1)
        for i, cx in enumerate(x):
            for j, cy in enumerate(y):
                out[i + j] = field.add(out[i + j], field.mul(cx, cy))
        while out and out[-1] == z:
            out.pop()
        return tuple(out)

    def pneg(x):
        return tuple(field.neg(c) for c in x)

    r0, r1 = tuple(a), tuple(b)
    u0, u1 = one, zero
    v0, v1 = zero, one
    while r1:
        q, r = _poly_divmod_field(r0, r1, field)
        r0, r1 = r1, r
        u0, u1 = u1, padd(u0, pneg(pmul(q, u1)))
        v0, v1 = v1, padd(v0, pneg(pmul(q, v1)))
    return r0, u0, v0


class QuotientRing(Ring):
    """R/I for the decidable ideal shapes of the tower.

    Supported: integer-style bases (Z, Z/n, prime fields) with any finite
    generating set, reduced to the single modulus gcd(n, gens); and R[x]
    over a field with one generator whose leading coefficient is a unit.
    """

    kind = "quot"

    def __init__(self, base: Ring, gens):
        self.base = base
        payloads = []
        for g in gens:
            if isinstance(g, RingValue):
                if g.ring != base:
                    raise DescriptorMismatch("ideal generator from another ring")
                payloads.append(g.payload)
            else:
                payloads.append(base.coerce(g).payload)
        self.gens = tuple(payloads)

        if isinstance(base, (IntegerRing, ModularRing)):
            self.style = "integer"
            n0 = 0 if isinstance(base, IntegerRing) else base.n
            m = n0
            for g in payloads:
                m = gcd(m, g)
            self.modulus = m  # 0 means quotient by the zero ideal of Z
            self.is_finite = m >= 1
            self.is_field = _is_prime(m)
            self.is_domain = self.is_field or m == 0
            self.is_zero_ring = m == 1
            self.is_local = m == 1 or (_prime_power_base(m) is not None)
            self.characteristic = m
        elif isinstance(base, PolyExt) and base.base.is_field:
            if len(payloads) != 1:
                raise UnsupportedQuotient(
                    "polynomial quotients take a single generator")
            f = payloads[0]
            if len(f) < 2:
                raise UnsupportedQuotient(
                    "polynomial quotient generator must have degree >= 1")
            if not base.base.is_unit_payload(f[-1]):
                raise UnsupportedQuotient(
                    "generator needs a unit leading coefficient")
            lc_inv = base.base.inverse_payload(f[-1])
            self.style = "poly"
            self.modulus = tuple(base.base.mul(c, lc_inv) for c in f)  # monic
            self.field = base.base
            self.is_finite = base.base.is_finite
            self.characteristic = base.characteristic
        else:
            raise UnsupportedQuotient(
                f"quotients of {base} are not supported")

    def key(self):
        return ("quot", self.base.key(), self.gens)

    def describe(self):
        gs = ",".join(self.base.render(g) for g in self.gens)
        return f"{self.base.describe()}/({gs})"

    # -- representatives ---------------------------------------------------
    def _reduce(self, base_payload):
        if self.style == "integer":
            return base_payload % self.modulus if self.modulus else base_payload
        _, r = _poly_divmod_field(base_payload, self.modulus, self.field)
        return r

    def canon(self, payload):
        if self.style == "integer":
            if not isinstance(payload, int):
                raise DescriptorMismatch("integer payload expected")
            return self._reduce(payload)
        return self._reduce(self.base.canon(payload))

    def coerce(self, x):
        if isinstance(x, RingValue):
            if x.ring == self:
                return x
            if x.ring == self.base:
                return RingValue(self, self._reduce(x.payload))
            raise DescriptorMismatch("value from another ring")
        if self.style == "integer":
            return RingValue(self, self.canon(int(x)))
        return RingValue(self, self._reduce(self.base.coerce(x).payload))

    def project(self, v: RingValue) -> RingValue:
        """Image of a base-ring element in the quotient."""
        if v.ring != self.base:
            raise DescriptorMismatch("projection expects a base-ring value")
        return RingValue(self, self._reduce(v.payload))

    def lift(self, v: RingValue) -> RingValue:
        """The canonical representative of a residue, as a base-ring element."""
        if v.ring != self:
            raise DescriptorMismatch("lift expects a quotient value")
        return RingValue(self.base, self.base.canon(v.payload))

    def add(self, a, b):
        if self.style == "integer":
            return self._reduce(a + b)
        return self._reduce(self.base.add(a, b))

    def mul(self, a, b):
        if self.style == "integer":
            return self._reduce(a * b)
        return self._reduce(self.base.mul(a, b))

    def neg(self, a):
        if self.style == "integer":
            return self._reduce(-a)
        return self._reduce(self.base.neg(a))

    def is_unit_payload(self, a):
        if self.style == "integer":
            if self.modulus == 0:
                return a in (1, -1)
            if self.is_zero_ring:
                return True
            return gcd(a, self.modulus) == 1
        g, _, _ = _poly_xgcd_field(a, self.modulus, self.field)
        return len(g) == 1

    def inverse_payload(self, a):
        if self.style == "integer":
            if self.modulus == 0:
                if a in (1, -1):
                    return a
                raise NotAUnit(f"{a} is not a unit")
            if self.is_zero_ring:
                return 0
            if gcd(a, self.modulus) != 1:
                raise NotAUnit(f"{a} is not a unit mod {self.modulus}")
            return pow(a, -1, self.modulus)
        g, u, _ = _poly_xgcd_field(a, self.modulus, self.field)
        if len(g) != 1:
            raise NotAUnit(f"{self.render(a)} is not a unit in {self}")
        scale = self.field.inverse_payload(g[0])
        return self._reduce(tuple(self.field.mul(c, scale) for c in u))

    def is_nilpotent_payload(self, a):
        if self.style == "integer":
            if self.modulus == 0:
                return a == 0
            x = a % self.modulus if self.modulus else a
            for _ in range(max(1, self.modulus.bit_length())):
                x = (x * x) % self.modulus
            return x == 0
        x = a
        for _ in range(len(self.modulus).bit_length() + 2):
            x = self.mul(x, x)
        return x == ()

    def elements(self):
        if self.style == "integer":
            if self.modulus == 0:
                raise UnsupportedRing(f"{self} is not finite")
            return (RingValue(self, i) for i in range(self.modulus))
        if not self.field.is_finite:
            raise UnsupportedRing(f"{self} is not finite")
        deg = len(self.modulus) - 1
        coeff_values = [v.payload for v in self.field.elements()]

        def gen():
            for combo in itertools.product(coeff_values, repeat=deg):
                yield RingValue(self, self._reduce(self.base.canon(combo)))
        return gen()

    def cardinality(self):
        if self.style == "integer":
            if self.modulus == 0:
                raise UnsupportedRing(f"{self} is not finite")
            return self.modulus
        return self.field.cardinality() ** (len(self.modulus) - 1)

    def sort_key(self, payload):
        if self.style == "integer":
            return payload
        return (len(payload), payload)

    def random(self, rng):
        if self.style == "integer":
            if self.modulus == 0:
                return RingValue(self, rng.randint(-9, 9))
            return RingValue(self, rng.randrange(self.modulus))
        deg = len(self.modulus) - 1
        return RingValue(self, self._reduce(self.base.canon(
            tuple(self.field.random(rng).payload for _ in range(deg)))))

    def render(self, payload):
        if self.style == "integer":
            return str(payload)
        return self.base.render(payload)

    def to_json(self):
        return {"kind": "quot", "base": self.base.to_json(),
                "gens": [self.base.value_to_json(g) for g in self.gens]}

    def value_to_json(self, payload):
        if self.style == "integer":
            return payload
        return self.base.value_to_json(payload)

    def value_from_json(self, obj):
        if self.style == "integer":
            return self.coerce(int(obj))
        return RingValue(self, self._reduce(
            self.base.value_from_json(obj).payload))


# ---------------------------------------------------------------------------
# descriptor serialization

def ring_from_json(obj: dict) -> Ring:
    kind = obj.get("kind")
    if kind == "int":
        return IntegerRing()
    if kind == "rat":
        return RationalField()
    if kind == "mod":
        return ModularRing(int(obj["n"]))
    if kind == "prime":
        return PrimeField(int(obj["p"]))
    if kind == "polyloc":
        return TruncatedPolyLocal(int(obj["p"]), int(obj["e"]))
    if kind == "loc_int":
        return LocalizedIntegers(int(obj["p"]))
    if kind == "poly":
        return PolyExt(ring_from_json(obj["base"]), obj.get("var", "T"))
    if kind == "frac":
        base = ring_from_json(obj["base"])
        s = base.value_from_json(obj["s"])
        return FractionRing(base, s)
    if kind == "quot":
        base = ring_from_json(obj["base"])
        gens = [base.value_from_json(g) for g in obj["gens"]]
        return QuotientRing(base, gens)
    raise UnsupportedRing(f"unknown ring kind {kind!r}")


# ---------------------------------------------------------------------------
# the operation surface

def arith(a: RingValue, b: RingValue, op: str) -> RingValue:
    """add / sub / mul of two elements sharing a descriptor."""
    if not isinstance(a, RingValue) or not isinstance(b, RingValue):
        raise DescriptorMismatch("arith expects ring values")
    if a.ring != b.ring:
        raise DescriptorMismatch(f"{a.ring} vs {b.ring}")
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    raise ValueError(f"unknown op {op!r}")


def is_unit(a: RingValue) -> bool:
    return a.is_unit()


def inverse(a: RingValue) -> RingValue:
    return a.inverse()


def substitute(f: RingValue, t: RingValue) -> RingValue:
    """Evaluate a polynomial-ring element at a base-ring point."""
    if not isinstance(f.ring, PolyExt):
        raise DescriptorMismatch(f"{f.ring} is not a polynomial ring")
    return f.ring.eval_at(f.payload, t)


def localize_denominator_check(a: RingValue, allowed) -> bool:
    """True iff ``a`` has a representative whose denominator is a power of
    ``allowed`` (up to sign).  Accepts fraction-ring values and polynomials
    over a fraction ring (checked coefficientwise)."""
    if isinstance(allowed, RingValue):
        p = allowed.payload
        allowed = p if isinstance(p, int) else (
            p.numerator if p.denominator == 1 else None)
        if allowed is None:
            raise DescriptorMismatch("allowed denominator must be integral")
    allowed = int(allowed)
    ring = a.ring
    if isinstance(ring, PolyExt):
        base = ring.base
        if not isinstance(base, (FractionRing, LocalizedIntegers, IntegerRing,
                                 RationalField)):
            raise UnsupportedRing(f"no denominator structure in {base}")
        return all(_divides_power(Fraction(c).denominator
                                  if not isinstance(c, Fraction) else c.denominator,
                                  allowed)
                   for c in a.payload)
    if isinstance(ring, (FractionRing, LocalizedIntegers, RationalField)):
        return _divides_power(a.payload.denominator, allowed)
    if isinstance(ring, IntegerRing):
        return True
    raise UnsupportedRing(f"no denominator structure in {ring}")


def has_half(ring: Ring) -> bool:
    """Whether 1/2 exists in the ring."""
    return ring.coerce(2).is_unit()


def _xgcd(a: int, b: int):
    """(g, x, y) with x*a + y*b = g = gcd(a, b) >= 0, any signs of a, b."""
    if b == 0:
        return (-a, -1, 0) if a < 0 else (a, 1, 0)
    g, x, y = _xgcd(b, a % b)
    return g, y, x - (a // b) * y


def _xgcd_chain(ints):
    """(g, coeffs) with sum(coeffs[i] * ints[i]) = g = gcd(ints) >= 0."""
    g = 0
    coeffs: list[int] = []
    for x in ints:
        g_new, u, w = _xgcd(g, x)
        coeffs = [c * u for c in coeffs] + [w]
        g = g_new
    return g, coeffs


def unit_ideal_witness(ring: Ring, values):
    """Coefficients c_i with sum(c_i * v_i) = 1, or None if (v_i) != (1).

    Supported: local rings (pick a unit entry), integer-style rings via
    Bezout, and small finite rings by exhaustive search.
    """
    values = list(values)
    if not values:
        return None
    if ring.is_zero_ring:
        return [ring.zero() for _ in values]
    if ring.is_local:
        for i, v in enumerate(values):
            if v.is_unit():
                out = [ring.zero() for _ in values]
                out[i] = v.inverse()
                return out
        return None
    if isinstance(ring, (IntegerRing, ModularRing)) or (
            isinstance(ring, QuotientRing) and ring.style == "integer"):
        n = getattr(ring, "n", None) or getattr(ring, "modulus", 0)
        acc_g, acc_coeffs = _xgcd_chain(int(v.payload) for v in values)
        if n:
            if gcd(acc_g, n) != 1:
                return None
            t = pow(acc_g % n, -1, n)
            return [ring.coerce(c * t) for c in acc_coeffs]
        if acc_g == 1:
            return [ring.coerce(c) for c in acc_coeffs]
        return None
    if ring.is_finite and ring.cardinality() ** len(values) <= 10 ** 5:
        pool = list(ring.elements())
        for combo in itertools.product(pool, repeat=len(values)):
            total = ring.zero()
            for c, v in zip(combo, values):
                total = total + c * v
            if total == ring.one():
                return list(combo)
        return None
    raise UnsupportedRing(f"no unit-ideal test for {ring}")


def ideal_combination(ring: Ring, gens, target):
    """Coefficients q_i with sum(q_i * g_i) = target, or None.

    Used to clear residues known to lie in the ideal (g_1, ..., g_k).
    """
    gens = list(gens)
    if not gens:
        return None if not target.is_zero() else []
    if ring.is_zero_ring:
        return [ring.zero() for _ in gens]
    if isinstance(ring, (IntegerRing, ModularRing)) or (
            isinstance(ring, QuotientRing) and ring.style == "integer"):
        n = getattr(ring, "n", None) or getattr(ring, "modulus", 0)
        ints = [int(g.payload) for g in gens]
        t = int(target.payload)
        acc_g, acc_coeffs = _xgcd_chain(ints)  # sum c_i g_i = acc_g >= 0
        if n:
            g_mod, u, _ = _xgcd(acc_g, n)  # u * acc_g = g_mod (mod n)
            if t % g_mod != 0:
                return None
            scale = (t // g_mod) * u
            return [ring.coerce(c * scale) for c in acc_coeffs]
        if acc_g == 0:
            return [ring.zero() for _ in gens] if t == 0 else None
        if t % acc_g != 0:
            return None
        scale = t // acc_g
        return [ring.coerce(c * scale) for c in acc_coeffs]
    if ring.is_local:
        for i, g in enumerate(gens):
            if g.is_unit():
                out = [ring.zero() for _ in gens]
                out[i] = g.inverse() * target
                return out
        return None
    raise UnsupportedRing(f"no ideal membership solver for {ring}")
