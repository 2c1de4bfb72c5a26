"""Table-driven arithmetic in small finite fields GF(p^r).

Elements are dense integer indices 0..q-1.  For prime fields the index is
the residue itself; for extension fields the index encodes the coefficient
vector of the element in the power basis of a fixed generator, least
significant digit first (base p).  With that encoding, 0 is the additive
and 1 the multiplicative identity, and index 2 is the generator alpha for
every extension field here.

The defining polynomials are pinned so that element indices are
reproducible across runs and machines:

    GF(4):  x^2 + x + 1
    GF(8):  x^3 + x + 1
    GF(9):  x^2 + 1
"""

import numpy as np

SUPPORTED_PRIMES = (2, 3, 5, 7)
MAX_DEGREE = 3
MAX_ORDER = 16

# coefficients of the non-leading terms, lowest degree first
_IRREDUCIBLE = {
    (2, 2): (1, 1),      # x^2 + x + 1
    (2, 3): (1, 1, 0),   # x^3 + x + 1
    (3, 2): (1, 0),      # x^2 + 1
}


class FieldConfigError(ValueError):
    """Raised for (p, r) outside the supported range."""


class FiniteField:
    """GF(p^r) with precomputed add/mul/inv/frobenius tables.

    Immutable after construction; all operations are pure lookups, so a
    single instance can be shared freely across threads or processes.
    """

    def __init__(self, p, r):
        if p not in SUPPORTED_PRIMES:
            raise FieldConfigError(
                f"characteristic {p} not supported (must be one of {SUPPORTED_PRIMES})")
        if not 1 <= r <= MAX_DEGREE:
            raise FieldConfigError(
                f"extension degree {r} not supported (must be 1..{MAX_DEGREE})")
        q = p ** r
        if q > MAX_ORDER:
            raise FieldConfigError(f"field order {q} exceeds the supported maximum {MAX_ORDER}")
        self.p = p
        self.r = r
        self.q = q
        self.modulus = _IRREDUCIBLE.get((p, r))  # None for prime fields

        add = np.zeros((q, q), dtype=np.uint8)
        mul = np.zeros((q, q), dtype=np.uint8)
        for a in range(q):
            va = self._vec(a)
            for b in range(q):
                vb = self._vec(b)
                add[a, b] = self._idx([(x + y) % p for x, y in zip(va, vb)])
                mul[a, b] = self._idx(self._polymul(va, vb))
        self.add_table = add
        self.mul_table = mul

        neg = np.zeros(q, dtype=np.uint8)
        for a in range(q):
            neg[a] = int(np.nonzero(add[a] == 0)[0][0])
        self.neg_table = neg

        inv = np.zeros(q, dtype=np.uint8)
        for a in range(1, q):
            inv[a] = int(np.nonzero(mul[a] == 1)[0][0])
        self.inv_table = inv  # index 0 unused

        frob = np.zeros(q, dtype=np.uint8)
        for a in range(q):
            x = a
            for _ in range(p - 1):
                x = int(mul[x, a])
            frob[a] = x
        self.frobenius_table = frob

    # -- construction helpers ------------------------------------------------

    def _vec(self, a):
        """Index -> coefficient vector, length r, base-p digits."""
        digits = []
        for _ in range(self.r):
            digits.append(a % self.p)
            a //= self.p
        return digits

    def _idx(self, vec):
        """Coefficient vector (any length) -> index, reducing mod the modulus."""
        vec = list(vec)
        while len(vec) > self.r:
            lead = vec.pop()
            if lead:
                for i, c in enumerate(self.modulus):
                    pos = len(vec) - self.r + i
                    vec[pos] = (vec[pos] - lead * c) % self.p
        out = 0
        for c in reversed(vec):
            out = out * self.p + c
        return out

    def _polymul(self, va, vb):
        prod = [0] * (len(va) + len(vb) - 1)
        for i, x in enumerate(va):
            if x:
                for j, y in enumerate(vb):
                    prod[i + j] = (prod[i + j] + x * y) % self.p
        return prod

    # -- scalar operations ---------------------------------------------------

    def add(self, a, b):
        return int(self.add_table[a, b])

    def sub(self, a, b):
        return int(self.add_table[a, self.neg_table[b]])

    def neg(self, a):
        return int(self.neg_table[a])

    def mul(self, a, b):
        return int(self.mul_table[a, b])

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("0 has no multiplicative inverse")
        return int(self.inv_table[a])

    def frobenius(self, a):
        return int(self.frobenius_table[a])

    def generator(self):
        """A fixed multiplicative generator: alpha (index 2) when q > 2."""
        if self.q == 2:
            return 1
        for g in range(2, self.q):
            x, n = g, 1
            while x != 1:
                x = self.mul(x, g)
                n += 1
            if n == self.q - 1:
                return g
        raise AssertionError("no multiplicative generator found")

    def elements(self):
        return range(self.q)

    def __repr__(self):
        return f"FiniteField(p={self.p}, r={self.r})"


_FIELD_CACHE = {}


def make_field(p, r):
    """Return the (cached) field GF(p^r) for supported small orders."""
    key = (p, r)
    if key not in _FIELD_CACHE:
        _FIELD_CACHE[key] = FiniteField(p, r)
    return _FIELD_CACHE[key]


def eval_quadric(field, x):
    """Evaluate x0*x4 + x1*x5 + x2*x6 - x3^2 at a 7-coordinate vector."""
    if len(x) != 7:
        raise ValueError(f"expected 7 coordinates, got {len(x)}")
    f = field
    acc = f.mul(x[0], x[4])
    acc = f.add(acc, f.mul(x[1], x[5]))
    acc = f.add(acc, f.mul(x[2], x[6]))
    return f.sub(acc, f.mul(x[3], x[3]))


def quadric_bilinear(field, x, y):
    """Polarization form B(x, y) = Q(x + y) - Q(x) - Q(y)."""
    f = field
    acc = f.add(f.mul(x[0], y[4]), f.mul(x[4], y[0]))
    acc = f.add(acc, f.add(f.mul(x[1], y[5]), f.mul(x[5], y[1])))
    acc = f.add(acc, f.add(f.mul(x[2], y[6]), f.mul(x[6], y[2])))
    twice = f.add(f.mul(x[3], y[3]), f.mul(x[3], y[3]))
    return f.sub(acc, twice)
