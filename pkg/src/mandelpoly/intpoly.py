"""Dense univariate polynomials with exact arbitrary-precision integer coefficients.

Coefficients are stored ascending from the constant term, with no stored
trailing zeros; two polynomials are equal iff their coefficient tuples are.
The zero polynomial has an empty tuple and degree ``-inf`` so that the degree
of a product is always the sum of the degrees.

Multiplication dispatches on size: schoolbook below ``SCHOOLBOOK_MAX``
coefficients, above that a packed method that encodes each polynomial as one
large integer (evaluation at 2**slot) and multiplies once with GMP.  Exact
division by a monic divisor likewise uses the classical coefficient recurrence
for small operands and a packed divide-and-verify route for large ones.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass

from gmpy2 import mpz

SCHOOLBOOK_MAX = 64

# Fixed word-size primes for the modular squarefreeness test.  They sit just
# below 2**31 so residue products fit in int64 vector arithmetic.
_SQFREE_PRIMES = (2147483647, 2147483629, 2147483587)

_HEADER_RE = re.compile(r"^poly v1 deg=(-?\d+)$")


class NonzeroRemainder(ArithmeticError):
    """Exact division was requested but the remainder is not zero."""


class _SlotOverflow(Exception):
    """A packed coefficient did not fit its slot; retry with a wider one."""


@dataclass(frozen=True)
class IntPoly:
    """Immutable integer polynomial; ``coeffs[i]`` multiplies z**i."""

    coeffs: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        cs = tuple(int(c) for c in self.coeffs)
        while cs and cs[-1] == 0:
            cs = cs[:-1]
        object.__setattr__(self, "coeffs", cs)

    # -- basic structure -------------------------------------------------

    @property
    def degree(self) -> int | float:
        return len(self.coeffs) - 1 if self.coeffs else float("-inf")

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1] == 1

    def coeff_bits(self) -> int:
        """Bit length of the largest coefficient magnitude (0 for zero)."""
        return max((abs(c).bit_length() for c in self.coeffs), default=0)

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for i in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[i]
            if c == 0:
                continue
            sign = "-" if c < 0 else "+"
            mag = abs(c)
            if i == 0:
                body = str(mag)
            else:
                var = "z" if i == 1 else f"z^{i}"
                body = var if mag == 1 else f"{mag}*{var}"
            parts.append((sign, body))
        first_sign, first_body = parts[0]
        out = ("-" if first_sign == "-" else "") + first_body
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out

    # -- ring operations -------------------------------------------------

    def __add__(self, other: IntPoly) -> IntPoly:
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return IntPoly(out)

    def __neg__(self) -> IntPoly:
        return IntPoly(tuple(-c for c in self.coeffs))

    def __sub__(self, other: IntPoly) -> IntPoly:
        return self + (-other)

    def __mul__(self, other: IntPoly) -> IntPoly:
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return ZERO
        if min(len(a), len(b)) <= SCHOOLBOOK_MAX:
            return IntPoly(_mul_schoolbook(a, b))
        return IntPoly(_mul_packed(a, b))

    def __pow__(self, e: int) -> IntPoly:
        if e < 0:
            raise ValueError("negative exponent")
        result = ONE
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def __rmul__(self, k: int) -> IntPoly:
        return IntPoly(tuple(k * c for c in self.coeffs))

    def derivative(self) -> IntPoly:
        return IntPoly(tuple(i * c for i, c in enumerate(self.coeffs) if i))

    def truncate(self, k: int) -> IntPoly:
        """Return self mod z**k (coefficients of z^0 .. z^{k-1})."""
        if k < 0:
            raise ValueError("negative truncation length")
        return IntPoly(self.coeffs[:k])

    def exact_div(self, b: IntPoly) -> IntPoly:
        """Divide by a monic polynomial, raising NonzeroRemainder if inexact."""
        if b.is_zero:
            raise ZeroDivisionError("polynomial division by zero")
        if not b.is_monic:
            raise ValueError("divisor must be monic")
        if self.is_zero:
            return ZERO
        if b.degree == 0:
            return self
        if self.degree < b.degree:
            raise NonzeroRemainder(f"degree {self.degree} < divisor degree {b.degree}")
        a, bc = self.coeffs, b.coeffs
        dq = len(a) - len(bc)
        if min(dq + 1, len(bc)) <= SCHOOLBOOK_MAX:
            return IntPoly(_div_schoolbook(a, bc))
        q = _div_packed(a, bc)
        if q is None:
            return IntPoly(_div_schoolbook(a, bc))
        return IntPoly(q)

    # -- squarefreeness --------------------------------------------------

    def is_squarefree(self) -> bool:
        """True iff gcd(self, self') is constant (no repeated complex root).

        Decided by a modular gcd over fixed word-size primes: a constant gcd
        modulo any prime not dividing the leading coefficient is a proof.  If
        every prime is inconclusive, an exact primitive-sequence gcd decides.
        """
        if self.is_zero:
            raise ValueError("squarefreeness of the zero polynomial is undefined")
        if self.degree <= 1:
            return True
        cs = self.coeffs
        if cs[0] == 0 and cs[1] == 0:
            return False  # divisible by z**2
        for p in _SQFREE_PRIMES:
            if cs[-1] % p == 0:
                continue
            if _gcd_degree_mod(cs, p) == 0:
                return True
        g = _gcd_exact(cs, tuple(i * c for i, c in enumerate(cs) if i))
        return len(g) == 1

    # -- text serialization ----------------------------------------------

    def to_text(self) -> str:
        """Emit the `poly v1` text form: header line, then coefficients ascending."""
        d = len(self.coeffs) - 1
        lines = [f"poly v1 deg={d}"]
        lines.extend(str(c) for c in self.coeffs)
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> IntPoly:
        lines = text.splitlines()
        if not lines:
            raise ValueError("empty polynomial text")
        m = _HEADER_RE.match(lines[0].strip())
        if not m:
            raise ValueError(f"bad polynomial header: {lines[0]!r}")
        d = int(m.group(1))
        body = [ln.strip() for ln in lines[1:] if ln.strip()]
        if d < -1 or len(body) != d + 1:
            raise ValueError(f"expected {d + 1} coefficients, found {len(body)}")
        coeffs = tuple(int(ln) for ln in body)
        if coeffs and coeffs[-1] == 0:
            raise ValueError("leading coefficient is zero (not canonical)")
        return cls(coeffs)


ZERO = IntPoly()
ONE = IntPoly((1,))
Z = IntPoly((0, 1))


# -- multiplication ------------------------------------------------------


def _mul_schoolbook(a: tuple[int, ...], b: tuple[int, ...]) -> list[int]:
    out = [0] * (len(a) + len(b) - 1)
    for i, ca in enumerate(a):
        if ca:
            for j, cb in enumerate(b):
                out[i + j] += ca * cb
    return out


def _mul_packed(a: tuple[int, ...], b: tuple[int, ...]) -> list[int]:
    bits_a = max(abs(c).bit_length() for c in a)
    bits_b = max(abs(c).bit_length() for c in b)
    # Each output coefficient is a sum of at most min(len) products, plus one
    # bit so signed values fit their slot.
    slot = bits_a + bits_b + min(len(a), len(b)).bit_length() + 2
    prod = _pack(a, slot) * _pack(b, slot)
    return _unpack_signed(prod, len(a) + len(b) - 1, slot)


def _pack(coeffs, slot: int):
    """Evaluate the polynomial at 2**slot by a balanced join (fast for mpz)."""
    vals = [mpz(c) for c in coeffs]
    width = 1
    while len(vals) > 1:
        nxt = []
        for i in range(0, len(vals) - 1, 2):
            nxt.append(vals[i] + (vals[i + 1] << (slot * width)))
        if len(vals) % 2:
            nxt.append(vals[-1])
        vals = nxt
        width *= 2
    return vals[0] if vals else mpz(0)


def _unpack_signed(v, count: int, slot: int) -> list[int]:
    """Split a packed integer into `count` signed slot-sized coefficients.

    Recovers the unique representation with each value in
    [-2**(slot-1), 2**(slot-1)); raises _SlotOverflow if the top chunk
    cannot absorb its carry, meaning the slot was too narrow.
    """
    half = mpz(1) << (slot - 1)
    full = mpz(1) << slot

    def rec(v, m):
        if m == 1:
            carry = 0
            if v >= half:
                v -= full
                carry = 1
            if v < -half or v >= half:
                raise _SlotOverflow
            return [int(v)], carry
        h = m // 2
        mask = (mpz(1) << (slot * h)) - 1
        lo, car = rec(v & mask, h)
        hi, car2 = rec((v >> (slot * h)) + car, m - h)
        return lo + hi, car2

    out, car = rec(mpz(v), count)
    if car:
        raise _SlotOverflow
    return out


# -- exact division ------------------------------------------------------


def _div_schoolbook(a: tuple[int, ...], b: tuple[int, ...]) -> list[int]:
    """Classical descending recurrence for a monic divisor; checks remainder."""
    db = len(b) - 1
    dq = len(a) - 1 - db
    r = list(a)
    q = [0] * (dq + 1)
    for i in range(dq, -1, -1):
        c = r[db + i]
        q[i] = c
        if c:
            for j in range(db):
                r[i + j] -= c * b[j]
    if any(r[:db]):
        raise NonzeroRemainder("division left a nonzero remainder")
    return q


def _div_packed(a: tuple[int, ...], b: tuple[int, ...]) -> list[int] | None:
    """Packed candidate quotient checked by one multiplication.

    Packing is an evaluation at 2**slot, so an exact polynomial quotient makes
    the integer division come out exact; a nonzero integer remainder therefore
    proves the polynomial division inexact.  A candidate that unpacks but
    fails the product check means the slot clipped a quotient coefficient, so
    the slot is widened; after two attempts the caller falls back to the
    schoolbook route, which settles the matter.
    """
    dq = len(a) - len(b)
    bits_a = max(abs(c).bit_length() for c in a)
    slot = bits_a + (len(a) - 1).bit_length() + 16
    for _ in range(2):
        A = _pack(a, slot)
        B = _pack(b, slot)
        quot, rem = divmod(A, B)
        if rem:
            raise NonzeroRemainder("division left a nonzero remainder")
        try:
            q = _unpack_signed(quot, dq + 1, slot)
        except _SlotOverflow:
            slot *= 2
            continue
        if _mul_check(b, q, a):
            return q
        slot *= 2
    return None


def _mul_check(b, q, a) -> bool:
    if min(len(b), len(q)) <= SCHOOLBOOK_MAX:
        prod = _mul_schoolbook(tuple(b), tuple(q))
    else:
        prod = _mul_packed(tuple(b), tuple(q))
    while prod and prod[-1] == 0:
        prod.pop()
    return prod == list(a)


# -- modular gcd (squarefreeness) -----------------------------------------


def _gcd_degree_mod(coeffs, p: int) -> int:
    """Degree of gcd(a, a') modulo p; requires p not dividing the lead."""
    import numpy as np

    a = np.array([c % p for c in coeffs], dtype=np.int64)
    idx = np.arange(len(coeffs), dtype=np.int64) % p
    b = (a * idx % p)[1:]

    def trim(r):
        nz = np.nonzero(r)[0]
        return r[: nz[-1] + 1] if len(nz) else r[:0]

    a = trim(a)
    b = trim(b)
    while len(b):
        a = trim(_mod_rem(a, b, p))
        a, b = b, a
    return len(a) - 1


def _mod_rem(r, b, p: int):
    inv = pow(int(b[-1]), -1, p)
    r = r.copy()
    db = len(b) - 1
    for i in range(len(r) - 1, db - 1, -1):
        c = int(r[i])
        if c:
            c = c * inv % p
            if db:
                r[i - db : i] = (r[i - db : i] - c * b[:-1]) % p
            r[i] = 0
    return r[:db] if db else r[:0]


# -- exact gcd fallback ----------------------------------------------------


def _content(cs) -> int:
    g = 0
    for c in cs:
        g = math.gcd(g, abs(c))
        if g == 1:
            return 1
    return g


def _primitive(cs) -> tuple[int, ...]:
    cs = list(cs)
    while cs and cs[-1] == 0:
        cs.pop()
    if not cs:
        return ()
    g = _content(cs)
    if cs[-1] < 0:
        g = -g
    return tuple(c // g for c in cs)


def _pseudo_rem(a, b) -> tuple[int, ...]:
    r = list(a)
    db = len(b) - 1
    lb = b[-1]
    for i in range(len(a) - 1, db - 1, -1):
        c = r[i]
        for j in range(i):
            r[j] *= lb
        for j in range(db):
            r[i - db + j] -= c * b[j]
        r[i] = 0
    r = r[:db]
    while r and r[-1] == 0:
        r.pop()
    return tuple(r)


def _gcd_exact(a, b) -> tuple[int, ...]:
    """Primitive-sequence polynomial gcd; only a fallback for small inputs."""
    a = _primitive(a)
    b = _primitive(b)
    if len(a) < len(b):
        a, b = b, a
    while b:
        r = _primitive(_pseudo_rem(a, b))
        a, b = b, r
    return a
