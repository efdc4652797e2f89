"""Exact arithmetic in small Galois fields GF(p^r).

Elements are integer codes 0..q-1: the code is the radix-p value of the
coefficient vector of the element written in the power basis 1, X, X^2, ...
(coefficient of X^i is digit i).  The reducing modulus is the first monic
irreducible polynomial of degree r in the low-degree-first lexicographic
order of its non-leading coefficients, so element codes are reproducible
across runs but depend on this basis choice.
"""

import itertools
from dataclasses import dataclass
from functools import lru_cache
from math import gcd

DEFAULT_ORDER_CAP = 1 << 16

# full q*q add/mul tables are only worth the memory for small fields;
# beyond this we fall back to digit arithmetic and exp/log tables
_DENSE_TABLE_LIMIT = 256


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def prime_power(q: int) -> tuple[int, int]:
    """Factor q as p^r with p prime, or raise ValueError."""
    if q < 2:
        raise ValueError(f"{q} is not a prime power")
    p = 2
    while p * p <= q and q % p:
        p += 1
    if q % p:
        p = q  # q itself is prime
    r = 0
    m = q
    while m % p == 0:
        m //= p
        r += 1
    if m != 1:
        raise ValueError(f"{q} is not a prime power")
    return p, r


# ---------------------------------------------------------------------------
# polynomial helpers over GF(p), coefficients low-degree-first
# ---------------------------------------------------------------------------

def _poly_trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _poly_mod(a: list[int], m: list[int], p: int) -> list[int]:
    """Remainder of a modulo the monic polynomial m, over GF(p)."""
    a = a[:]
    dm = len(m) - 1
    while len(a) - 1 >= dm and a:
        shift = len(a) - 1 - dm
        c = a[-1]
        for i, mc in enumerate(m):
            a[shift + i] = (a[shift + i] - c * mc) % p
        _poly_trim(a)
    return a


def _poly_mul(a: list[int], b: list[int], p: int) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    return _poly_trim(out)


def _is_irreducible(poly: list[int], p: int) -> bool:
    """Trial division by every monic polynomial of degree <= deg/2."""
    deg = len(poly) - 1
    if deg <= 0:
        return False
    if poly[0] == 0:
        return deg == 1  # divisible by X unless it is X itself
    for d in range(1, deg // 2 + 1):
        for tail in itertools.product(range(p), repeat=d):
            div = list(tail) + [1]
            if not _poly_mod(poly, div, p):
                return False
    return True


def _smallest_irreducible(p: int, r: int) -> tuple[int, ...]:
    if r == 1:
        return (0, 1)  # the polynomial X
    for coeffs in itertools.product(range(p), repeat=r):
        cand = list(coeffs) + [1]
        if _is_irreducible(cand, p):
            return tuple(cand)
    raise AssertionError("no irreducible polynomial found")  # cannot happen


class Field:
    """Immutable GF(p^r) with precomputed arithmetic tables.

    Obtain instances through :func:`GF`; two calls with equal (p, r) return
    the same object, so fields compare by identity and are safe to share
    between workers.
    """

    __slots__ = ("p", "r", "q", "modulus", "_exp", "_log",
                 "_add_table", "_mul_table", "_digits")

    def __init__(self, p: int, r: int, max_order: int = DEFAULT_ORDER_CAP):
        if not is_prime(p):
            raise ValueError(f"characteristic {p} is not prime")
        if r < 1:
            raise ValueError(f"extension degree must be >= 1, got {r}")
        q = p ** r
        if q > max_order:
            raise ValueError(f"field order {q} exceeds cap {max_order}")
        self.p = p
        self.r = r
        self.q = q
        self.modulus = _smallest_irreducible(p, r)
        self._digits = None
        if r > 1:
            self._digits = [self._to_digits(a) for a in range(q)]
        self._build_mul_tables()
        self._add_table = None
        if q <= _DENSE_TABLE_LIMIT:
            self._add_table = [self._add_slow(a, b) for a in range(q) for b in range(q)]
            self._mul_table = [self._mul_slow(a, b) for a in range(q) for b in range(q)]
        else:
            self._mul_table = None

    # -- construction helpers ------------------------------------------------

    def _to_digits(self, code: int) -> tuple[int, ...]:
        out = []
        for _ in range(self.r):
            out.append(code % self.p)
            code //= self.p
        return tuple(out)

    def _from_digits(self, digits) -> int:
        code = 0
        for d in reversed(digits):
            code = code * self.p + d
        return code

    def _add_slow(self, a: int, b: int) -> int:
        if self.r == 1:
            return (a + b) % self.p
        da, db = self._digits[a], self._digits[b]
        return self._from_digits([(x + y) % self.p for x, y in zip(da, db)])

    def _mul_slow(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        e = self._log[a] + self._log[b]
        return self._exp[e % (self.q - 1)]

    def _mul_poly(self, a: int, b: int) -> int:
        if self.r == 1:
            return (a * b) % self.p
        prod = _poly_mul(list(self._digits[a]), list(self._digits[b]), self.p)
        prod = _poly_mod(prod, list(self.modulus), self.p)
        return self._from_digits(prod + [0] * (self.r - len(prod)))

    def _build_mul_tables(self) -> None:
        # find a primitive element by direct order computation, then fill
        # exp/log so that multiplication and inversion are table lookups
        q = self.q
        for g in range(1, q):
            x, order = g, 1
            while x != 1:
                x = self._mul_poly(x, g)
                order += 1
            if order == q - 1:
                break
        exp = [1] * (q - 1)
        log = [0] * q
        x = 1
        for e in range(1, q - 1):
            x = self._mul_poly(x, g)
            exp[e] = x
            log[x] = e
        self._exp = exp
        self._log = log

    # -- arithmetic on integer codes -----------------------------------------

    def add(self, a: int, b: int) -> int:
        t = self._add_table
        if t is not None:
            return t[a * self.q + b]
        return self._add_slow(a, b)

    def neg(self, a: int) -> int:
        if self.r == 1:
            return (-a) % self.p
        return self._from_digits([(-x) % self.p for x in self._digits[a]])

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        t = self._mul_table
        if t is not None:
            return t[a * self.q + b]
        return self._mul_slow(a, b)

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("division by zero in " + str(self))
        return self._exp[(self.q - 1 - self._log[a]) % (self.q - 1)]

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, e: int) -> int:
        if a == 0:
            if e < 0:
                raise ZeroDivisionError("division by zero in " + str(self))
            return 0 if e else 1
        return self._exp[(self._log[a] * e) % (self.q - 1)]

    def mult_order(self, a: int) -> int:
        if a == 0:
            raise ValueError("0 has no multiplicative order")
        n = self.q - 1
        return n // gcd(n, self._log[a])

    def generators(self) -> tuple[int, ...]:
        """All elements of multiplicative order q-1, ascending by code."""
        n = self.q - 1
        return tuple(a for a in range(1, self.q) if gcd(self._log[a], n) == 1)

    def element(self, code: int) -> "FieldElement":
        return FieldElement(self, code)

    def __iter__(self):
        return iter(range(self.q))

    def __repr__(self) -> str:
        return f"GF({self.q})"


@lru_cache(maxsize=None)
def GF(p: int, r: int = 1, max_order: int = DEFAULT_ORDER_CAP) -> Field:
    """Create (or fetch the cached) field GF(p^r)."""
    return Field(p, r, max_order)


def GF_order(q: int, max_order: int = DEFAULT_ORDER_CAP) -> Field:
    """Field of the given prime-power order."""
    p, r = prime_power(q)
    return GF(p, r, max_order)


@dataclass(frozen=True)
class FieldElement:
    """A field element: an integer code tied to its owning field."""

    field: Field
    code: int

    def __post_init__(self):
        if not 0 <= self.code < self.field.q:
            raise ValueError(f"code {self.code} outside 0..{self.field.q - 1}")

    def _peer(self, other) -> int:
        if isinstance(other, FieldElement):
            if other.field is not self.field:
                raise ValueError("mixed-field arithmetic")
            return other.code
        if isinstance(other, int):
            return other % self.field.q
        raise TypeError(f"cannot combine field element with {type(other).__name__}")

    def __add__(self, other):
        return FieldElement(self.field, self.field.add(self.code, self._peer(other)))

    def __sub__(self, other):
        return FieldElement(self.field, self.field.sub(self.code, self._peer(other)))

    def __mul__(self, other):
        return FieldElement(self.field, self.field.mul(self.code, self._peer(other)))

    def __truediv__(self, other):
        return FieldElement(self.field, self.field.div(self.code, self._peer(other)))

    def __neg__(self):
        return FieldElement(self.field, self.field.neg(self.code))

    def __pow__(self, e: int):
        return FieldElement(self.field, self.field.pow(self.code, e))

    def __int__(self) -> int:
        return self.code

    def __repr__(self) -> str:
        return f"{self.field!r}[{self.code}]"


class SubfieldEmbedding:
    """The injective homomorphism GF(q) -> GF(q^2) for a square-order field.

    ``image`` is the set of Frobenius fixed points {x : x^q = x} of the big
    field, and ``embed`` maps codes of the canonical small field onto it.
    """

    def __init__(self, big: Field):
        if big.r % 2:
            raise ValueError(f"{big!r} has odd extension degree, no index-2 subfield")
        self.big = big
        self.small = GF(big.p, big.r // 2)
        q = self.small.q
        image = frozenset(x for x in range(big.q) if big.pow(x, q) == x)
        if len(image) != q:
            raise AssertionError("Frobenius fixed field has wrong size")
        self.image = image
        # represent the small field's generator class X by the smallest root
        # of the small modulus inside the image, then extend linearly
        beta = None
        for x in sorted(image):
            acc, xp = 0, 1
            for c in self.small.modulus:
                acc = big.add(acc, big.mul(c % big.p, xp))
                xp = big.mul(xp, x)
            if acc == 0:
                beta = x
                break
        if beta is None:
            raise AssertionError("small modulus has no root in the image")
        table = []
        for code in range(q):
            acc, bp = 0, 1
            c = code
            for _ in range(self.small.r):
                acc = big.add(acc, big.mul(c % big.p, bp))
                bp = big.mul(bp, beta)
                c //= big.p
            table.append(acc)
        self._table = tuple(table)

    def embed(self, small_code: int) -> int:
        return self._table[small_code]

    def __call__(self, small_code: int) -> int:
        return self._table[small_code]


def subfield_embedding(big: Field) -> SubfieldEmbedding:
    """Embedding of the index-2 subfield into a square-order field."""
    return SubfieldEmbedding(big)
