"""Exact arithmetic over a tower of commutative unitary rings.

Rings are immutable descriptors that double as the arithmetic engine for
their elements' payloads:

    IntegerRing              -- payload: int
    ModIntRing(n)            -- payload: int in [0, n)
    PolynomialRing(base, v)  -- payload: tuple of base payloads, low to high,
                                no trailing zeros; () is the zero polynomial
    QuotientRing(poly, m)    -- payload: residue tuple with deg < deg(m),
                                m monic of degree >= 1
    FractionRing(base)       -- payload: (num, den), reduced, canonical unit
                                (positive den over Z, monic den over K[t])
    ProductRing(l, r)        -- payload: (left payload, right payload)

Payloads are always canonical, so ``==`` on payloads is ring equality.
``encode`` maps payloads to bytes injectively and order-compatibly; that
byte order is the total order used for canonical forms everywhere else
(over Z it sorts 0 < 1 < -1 < 2 < -2 < ..., polynomials degree-major).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property
from itertools import product as _iterproduct
from typing import Any, Iterator, Optional, Sequence


class RingConstructionError(ValueError):
    """A ring constructor rule was violated (non-monic modulus, ...)."""


class RingMismatchError(ValueError):
    """Operands belong to different rings."""


class InfiniteRingError(ValueError):
    """An operation that needs a finite ring was asked of an infinite one."""


class HomomorphismError(ValueError):
    """A supplied ring map failed verification; carries the violating pair."""

    def __init__(self, message: str, pair: Any = None):
        super().__init__(message)
        self.pair = pair


def _enc_nat(n: int) -> bytes:
    """Order-preserving, prefix-free encoding of a non-negative integer."""
    b = n.to_bytes(max(1, (n.bit_length() + 7) // 8), "big")
    if len(b) < 255:
        return bytes([len(b)]) + b
    return bytes([255]) + _enc_nat(len(b)) + b


def _enc_int(z: int) -> bytes:
    # sign-magnitude interleave: 0, 1, -1, 2, -2, ...
    return _enc_nat(2 * z - 1 if z > 0 else -2 * z)


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


# ---------------------------------------------------------------------------
# polynomial payload helpers, parametrized by the coefficient ring
# ---------------------------------------------------------------------------

def _ptrim(B: "Ring", coeffs) -> tuple:
    cs = list(coeffs)
    while cs and cs[-1] == B.zero:
        cs.pop()
    return tuple(cs)


def _padd(B: "Ring", a: tuple, b: tuple) -> tuple:
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, c in enumerate(b):
        out[i] = B.add(out[i], c)
    return _ptrim(B, out)


def _pneg(B: "Ring", a: tuple) -> tuple:
    return tuple(B.neg(c) for c in a)


def _psub(B: "Ring", a: tuple, b: tuple) -> tuple:
    return _padd(B, a, _pneg(B, b))


def _pmul(B: "Ring", a: tuple, b: tuple) -> tuple:
    if not a or not b:
        return ()
    out = [B.zero] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x == B.zero:
            continue
        for j, y in enumerate(b):
            if y == B.zero:
                continue
            out[i + j] = B.add(out[i + j], B.mul(x, y))
    return _ptrim(B, out)


def _pdeg(a: tuple) -> int:
    return len(a) - 1  # -1 for the zero polynomial


def _prem_monic(B: "Ring", a: tuple, m: tuple) -> tuple:
    """Remainder of a by a monic m; exact over any coefficient ring."""
    dm = _pdeg(m)
    rem = list(a)
    for i in range(len(rem) - 1, dm - 1, -1):
        c = rem[i]
        if c == B.zero:
            continue
        for j in range(dm + 1):
            rem[i - dm + j] = B.sub(rem[i - dm + j], B.mul(c, m[j]))
    return _ptrim(B, rem)


def _pdivmod_field(B: "Ring", a: tuple, b: tuple):
    """Division with remainder when b's leading coefficient is invertible."""
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    inv = B.try_inverse(b[-1])
    if inv is None:
        raise RingConstructionError("leading coefficient is not invertible")
    db = _pdeg(b)
    rem = list(a)
    quo = [B.zero] * max(0, len(a) - db)
    for i in range(len(rem) - 1, db - 1, -1):
        c = rem[i]
        if c == B.zero:
            continue
        q = B.mul(c, inv)
        quo[i - db] = q
        for j in range(db + 1):
            rem[i - db + j] = B.sub(rem[i - db + j], B.mul(q, b[j]))
    return _ptrim(B, quo), _ptrim(B, rem)


def _pmonic(B: "Ring", a: tuple) -> tuple:
    if not a:
        return a
    inv = B.try_inverse(a[-1])
    if inv is None:
        raise RingConstructionError("cannot normalize to monic")
    return _ptrim(B, [B.mul(c, inv) for c in a])


def _pgcd_field(B: "Ring", a: tuple, b: tuple) -> tuple:
    while b:
        _, r = _pdivmod_field(B, a, b)
        a, b = b, r
    return _pmonic(B, a) if a else a


def _pxgcd_field(B: "Ring", a: tuple, m: tuple):
    """Return (g, s) with s*a = g mod m, g monic; field coefficients."""
    r0, r1 = a, m
    s0, s1 = (B.one,), ()
    while r1:
        q, r = _pdivmod_field(B, r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, _psub(B, s0, _pmul(B, q, s1))
    if r0:
        lead_inv = B.try_inverse(r0[-1])
        r0 = _ptrim(B, [B.mul(c, lead_inv) for c in r0])
        s0 = _ptrim(B, [B.mul(c, lead_inv) for c in s0])
    return r0, s0


# ---------------------------------------------------------------------------
# ring descriptors
# ---------------------------------------------------------------------------

class Ring:
    """Abstract commutative unitary ring acting on canonical payloads."""

    zero: Any
    one: Any

    # -- arithmetic ---------------------------------------------------------

    def add(self, x, y):
        raise NotImplementedError

    def neg(self, x):
        raise NotImplementedError

    def mul(self, x, y):
        raise NotImplementedError

    def sub(self, x, y):
        return self.add(x, self.neg(y))

    def from_int(self, k: int):
        raise NotImplementedError

    def try_inverse(self, x) -> Optional[Any]:
        """Inverse payload if this ring can decide it, else None."""
        return None

    # -- canonical form and order -------------------------------------------

    def canonicalize(self, raw) -> Any:
        raise NotImplementedError

    def encode(self, x) -> bytes:
        raise NotImplementedError

    def format(self, x) -> str:
        raise NotImplementedError

    # -- metadata -------------------------------------------------------------

    def expr(self) -> str:
        raise NotImplementedError

    def characteristic(self) -> int:
        raise NotImplementedError

    def cardinality(self) -> Optional[int]:
        return None

    @property
    def is_finite(self) -> bool:
        return self.cardinality() is not None

    @property
    def is_field(self) -> bool:
        return False

    @property
    def is_fraction_base(self) -> bool:
        """True for the integral GCD domains we allow under Frac(...)."""
        return False

    def variables(self) -> tuple:
        return ()

    def elements(self) -> Iterator[Any]:
        """All payloads in encoding order; finite rings only."""
        raise InfiniteRingError(f"{self.expr()} is not finite")

    # -- fraction support -----------------------------------------------------

    def frac_reduce(self, num, den):
        raise RingConstructionError(
            f"{self.expr()} is not a supported fraction base")

    # -- element helpers ------------------------------------------------------

    @cached_property
    def minus_one(self):
        return self.from_int(-1)

    def element(self, raw) -> "Element":
        return Element(self, self.canonicalize(raw))

    def __str__(self) -> str:
        return self.expr()


@dataclass(frozen=True)
class IntegerRing(Ring):
    """The ring of integers; payloads are Python ints."""

    zero = 0
    one = 1

    def add(self, x, y):
        return x + y

    def neg(self, x):
        return -x

    def mul(self, x, y):
        return x * y

    def sub(self, x, y):
        return x - y

    def from_int(self, k):
        return k

    def try_inverse(self, x):
        return x if x in (1, -1) else None

    def canonicalize(self, raw):
        if isinstance(raw, bool) or not isinstance(raw, int):
            raise RingConstructionError(f"integer payload expected, got {raw!r}")
        return raw

    def encode(self, x):
        return _enc_int(x)

    def format(self, x):
        return str(x)

    def expr(self):
        return "Z"

    def characteristic(self):
        return 0

    @property
    def is_fraction_base(self):
        return True

    def frac_reduce(self, num, den):
        g = math.gcd(num, den)
        if g:
            num //= g
            den //= g
        if den < 0:
            num, den = -num, -den
        return num, den


@dataclass(frozen=True)
class ModIntRing(Ring):
    """Z/nZ; payloads are residues in [0, n)."""

    n: int

    def __post_init__(self):
        if not isinstance(self.n, int) or self.n < 2:
            raise RingConstructionError("modulus must be an integer >= 2")

    @property
    def zero(self):
        return 0

    @property
    def one(self):
        return 1

    def add(self, x, y):
        return (x + y) % self.n

    def neg(self, x):
        return (-x) % self.n

    def sub(self, x, y):
        return (x - y) % self.n

    def mul(self, x, y):
        return (x * y) % self.n

    def from_int(self, k):
        return k % self.n

    def try_inverse(self, x):
        if math.gcd(x, self.n) != 1:
            return None
        return pow(x, -1, self.n)

    def canonicalize(self, raw):
        if isinstance(raw, bool) or not isinstance(raw, int):
            raise RingConstructionError(f"residue payload expected, got {raw!r}")
        return raw % self.n

    def encode(self, x):
        return _enc_nat(x)

    def format(self, x):
        return str(x)

    def expr(self):
        return f"Z/{self.n}"

    def characteristic(self):
        return self.n

    def cardinality(self):
        return self.n

    @property
    def is_field(self):
        return _is_prime(self.n)

    @property
    def is_fraction_base(self):
        return _is_prime(self.n)

    def frac_reduce(self, num, den):
        inv = self.try_inverse(den)
        if inv is None:
            raise ZeroDivisionError(f"{den} is not invertible mod {self.n}")
        return self.mul(num, inv), 1

    def elements(self):
        return iter(range(self.n))


@dataclass(frozen=True)
class PolynomialRing(Ring):
    """base[var]; payloads are coefficient tuples, low degree first."""

    base: Ring
    var: str

    def __post_init__(self):
        if not self.var.isidentifier():
            raise RingConstructionError(f"bad variable name {self.var!r}")
        if self.var in self.base.variables():
            raise RingConstructionError(
                f"variable {self.var!r} already used in {self.base.expr()}")

    @cached_property
    def zero(self):
        return ()

    @cached_property
    def one(self):
        return (self.base.one,)

    def add(self, x, y):
        return _padd(self.base, x, y)

    def neg(self, x):
        return _pneg(self.base, x)

    def sub(self, x, y):
        return _psub(self.base, x, y)

    def mul(self, x, y):
        return _pmul(self.base, x, y)

    def from_int(self, k):
        return _ptrim(self.base, (self.base.from_int(k),))

    def try_inverse(self, x):
        if len(x) != 1:
            return None  # non-constant units (nilpotent coeffs) not decided here
        inv = self.base.try_inverse(x[0])
        return None if inv is None else (inv,)

    def canonicalize(self, raw):
        if isinstance(raw, bool):
            raise RingConstructionError("polynomial payload expected")
        if isinstance(raw, int):
            return self.from_int(raw)
        if not isinstance(raw, (tuple, list)):
            raise RingConstructionError(
                f"polynomial payload expected, got {raw!r}")
        return _ptrim(self.base, [self.base.canonicalize(c) for c in raw])

    def encode(self, x):
        parts = [_enc_nat(len(x))]
        parts.extend(self.base.encode(c) for c in reversed(x))
        return b"".join(parts)

    def format(self, x):
        return _format_poly(self.base, x, self.var)

    def expr(self):
        base = self.base.expr()
        if isinstance(self.base, ProductRing):
            base = f"({base})"
        return f"{base}[{self.var}]"

    def characteristic(self):
        return self.base.characteristic()

    @property
    def is_fraction_base(self):
        return self.base.is_field

    def frac_reduce(self, num, den):
        B = self.base
        g = _pgcd_field(B, num, den)
        if _pdeg(g) >= 1 or (g and g != self.one):
            num, _ = _pdivmod_field(B, num, g)
            den, _ = _pdivmod_field(B, den, g)
        lead_inv = B.try_inverse(den[-1])
        num = _ptrim(B, [B.mul(c, lead_inv) for c in num])
        den = _ptrim(B, [B.mul(c, lead_inv) for c in den])
        return num, den

    def variables(self):
        return self.base.variables() + (self.var,)


def _format_coeff(B: Ring, c) -> str:
    s = B.format(c)
    if s.startswith("(") and s.endswith(")") and s.count("(") == 1:
        return s
    simple_negative = (s.startswith("-")
                       and not any(ch in s[1:] for ch in "+-*/^ ,"))
    if any(ch in s for ch in "+-*/^ ,") and not simple_negative:
        return f"({s})"
    return s


def _format_poly(B: Ring, x: tuple, var: str) -> str:
    if not x:
        return "0"
    terms = []
    int_like = isinstance(B, IntegerRing)
    for d in range(len(x) - 1, -1, -1):
        c = x[d]
        if c == B.zero:
            continue
        if d == 0:
            body = _format_coeff(B, c)
        else:
            mono = var if d == 1 else f"{var}^{d}"
            if c == B.one:
                body = mono
            elif int_like and c == -1:
                body = f"-{mono}"
            else:
                body = f"{_format_coeff(B, c)}*{mono}"
        terms.append(body)
    out = terms[0]
    for t in terms[1:]:
        if int_like and t.startswith("-"):
            out += f" - {t[1:]}"
        else:
            out += f" + {t}"
    return out


@dataclass(frozen=True)
class QuotientRing(Ring):
    """base/(modulus) with base a polynomial ring and modulus monic."""

    base: PolynomialRing
    modulus: tuple

    def __post_init__(self):
        if not isinstance(self.base, PolynomialRing):
            raise RingConstructionError(
                "quotient base must be a polynomial ring")
        m = self.base.canonicalize(self.modulus)
        if _pdeg(m) < 1:
            raise RingConstructionError(
                "quotient modulus must have degree >= 1")
        if m[-1] != self.base.base.one:
            raise RingConstructionError("quotient modulus must be monic")
        object.__setattr__(self, "modulus", m)

    @property
    def coeff_ring(self) -> Ring:
        return self.base.base

    @cached_property
    def zero(self):
        return ()

    @cached_property
    def one(self):
        return self.base.one

    def _reduce(self, x):
        if _pdeg(x) < _pdeg(self.modulus):
            return x
        return _prem_monic(self.coeff_ring, x, self.modulus)

    def add(self, x, y):
        return self.base.add(x, y)

    def neg(self, x):
        return self.base.neg(x)

    def sub(self, x, y):
        return self.base.sub(x, y)

    def mul(self, x, y):
        return self._reduce(self.base.mul(x, y))

    def from_int(self, k):
        return self._reduce(self.base.from_int(k))

    def try_inverse(self, x):
        if not x:
            return None
        if len(x) == 1:
            inv = self.coeff_ring.try_inverse(x[0])
            if inv is not None:
                return (inv,)
        if self.coeff_ring.is_field:
            g, s = _pxgcd_field(self.coeff_ring, x, self.modulus)
            if g == self.base.one:
                return self._reduce(s)
        return None

    def canonicalize(self, raw):
        return self._reduce(self.base.canonicalize(raw))

    def encode(self, x):
        return self.base.encode(x)

    def format(self, x):
        return self.base.format(x)

    def expr(self):
        mod = self.base.format(self.modulus)
        return f"{self.base.expr()}/({mod})"

    def characteristic(self):
        return self.coeff_ring.characteristic()

    def cardinality(self):
        c = self.coeff_ring.cardinality()
        return None if c is None else c ** _pdeg(self.modulus)

    @cached_property
    def is_field(self):
        if not (self.coeff_ring.is_field and self.coeff_ring.is_finite):
            return False
        return _poly_irreducible_finite_field(self.coeff_ring, self.modulus)

    def variables(self):
        return self.base.variables()

    def elements(self):
        if not self.is_finite:
            raise InfiniteRingError(f"{self.expr()} is not finite")
        coeffs = list(self.coeff_ring.elements())
        nonzero = [c for c in coeffs if c != self.coeff_ring.zero]
        yield ()
        for ncoeffs in range(1, _pdeg(self.modulus) + 1):
            # encoding order: leading coefficient varies slowest
            def walk(position, suffix):
                pool = nonzero if position == ncoeffs - 1 else coeffs
                for c in pool:
                    if position == 0:
                        yield (c,) + suffix
                    else:
                        yield from walk(position - 1, (c,) + suffix)
            yield from walk(ncoeffs - 1, ())


def _poly_irreducible_finite_field(F: Ring, m: tuple) -> bool:
    """Trial division by all monic polynomials of degree <= deg(m)/2."""
    d = _pdeg(m)
    if d == 1:
        return True
    elems = list(F.elements())
    for k in range(1, d // 2 + 1):
        for lower in _iterproduct(elems, repeat=k):
            cand = _ptrim(F, tuple(lower) + (F.one,))
            if _pdeg(cand) != k:
                continue
            _, r = _pdivmod_field(F, m, cand)
            if not r:
                return False
    return True


@dataclass(frozen=True)
class FractionRing(Ring):
    """Frac(base); payloads are reduced (num, den) pairs."""

    base: Ring

    def __post_init__(self):
        if not self.base.is_fraction_base:
            raise RingConstructionError(
                f"Frac requires an integral GCD domain "
                f"(Z, Z/p with p prime, or polynomials over a field); "
                f"got {self.base.expr()}")

    @cached_property
    def zero(self):
        return (self.base.zero, self.base.one)

    @cached_property
    def one(self):
        return (self.base.one, self.base.one)

    def _make(self, num, den):
        if den == self.base.zero:
            raise ZeroDivisionError("zero denominator")
        if num == self.base.zero:
            return (self.base.zero, self.base.one)
        return self.base.frac_reduce(num, den)

    def add(self, x, y):
        B = self.base
        return self._make(B.add(B.mul(x[0], y[1]), B.mul(y[0], x[1])),
                          B.mul(x[1], y[1]))

    def neg(self, x):
        return (self.base.neg(x[0]), x[1])

    def mul(self, x, y):
        B = self.base
        return self._make(B.mul(x[0], y[0]), B.mul(x[1], y[1]))

    def from_int(self, k):
        return (self.base.from_int(k), self.base.one)

    def try_inverse(self, x):
        if x[0] == self.base.zero:
            return None
        return self._make(x[1], x[0])

    def canonicalize(self, raw):
        if isinstance(raw, bool):
            raise RingConstructionError("fraction payload expected")
        if isinstance(raw, int):
            return self.from_int(raw)
        if not (isinstance(raw, (tuple, list)) and len(raw) == 2):
            raise RingConstructionError(
                f"fraction payload (num, den) expected, got {raw!r}")
        num = self.base.canonicalize(raw[0])
        den = self.base.canonicalize(raw[1])
        return self._make(num, den)

    def encode(self, x):
        return self.base.encode(x[0]) + self.base.encode(x[1])

    def format(self, x):
        num, den = x
        if den == self.base.one:
            return self.base.format(num)
        ns, ds = self.base.format(num), self.base.format(den)
        if not isinstance(self.base, (IntegerRing, ModIntRing)):
            ns, ds = f"({ns})", f"({ds})"
        return f"{ns}/{ds}"

    def expr(self):
        if isinstance(self.base, IntegerRing):
            return "Q"
        return f"Frac({self.base.expr()})"

    def characteristic(self):
        return self.base.characteristic()

    @property
    def is_field(self):
        return True

    def variables(self):
        return self.base.variables()


@dataclass(frozen=True)
class ProductRing(Ring):
    """left x right with componentwise operations."""

    left: Ring
    right: Ring

    @cached_property
    def zero(self):
        return (self.left.zero, self.right.zero)

    @cached_property
    def one(self):
        return (self.left.one, self.right.one)

    def add(self, x, y):
        return (self.left.add(x[0], y[0]), self.right.add(x[1], y[1]))

    def neg(self, x):
        return (self.left.neg(x[0]), self.right.neg(x[1]))

    def sub(self, x, y):
        return (self.left.sub(x[0], y[0]), self.right.sub(x[1], y[1]))

    def mul(self, x, y):
        return (self.left.mul(x[0], y[0]), self.right.mul(x[1], y[1]))

    def from_int(self, k):
        return (self.left.from_int(k), self.right.from_int(k))

    def try_inverse(self, x):
        li = self.left.try_inverse(x[0])
        ri = self.right.try_inverse(x[1])
        if li is None or ri is None:
            return None
        return (li, ri)

    def canonicalize(self, raw):
        if isinstance(raw, bool):
            raise RingConstructionError("product payload expected")
        if isinstance(raw, int):
            return self.from_int(raw)
        if not (isinstance(raw, (tuple, list)) and len(raw) == 2):
            raise RingConstructionError(
                f"product payload (l, r) expected, got {raw!r}")
        return (self.left.canonicalize(raw[0]), self.right.canonicalize(raw[1]))

    def encode(self, x):
        return self.left.encode(x[0]) + self.right.encode(x[1])

    def format(self, x):
        return f"({self.left.format(x[0])}, {self.right.format(x[1])})"

    def expr(self):
        rexpr = self.right.expr()
        if isinstance(self.right, ProductRing):
            rexpr = f"({rexpr})"
        return f"{self.left.expr()}*{rexpr}"

    def characteristic(self):
        cl = self.left.characteristic()
        cr = self.right.characteristic()
        if cl == 0 or cr == 0:
            return 0
        return math.lcm(cl, cr)

    def cardinality(self):
        cl = self.left.cardinality()
        cr = self.right.cardinality()
        if cl is None or cr is None:
            return None
        return cl * cr

    def elements(self):
        if not self.is_finite:
            raise InfiniteRingError(f"{self.expr()} is not finite")
        rights = list(self.right.elements())
        for l in self.left.elements():
            for r in rights:
                yield (l, r)


INTEGERS = IntegerRing()
RATIONALS = FractionRing(INTEGERS)


# ---------------------------------------------------------------------------
# elements
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Element:
    """An exact ring element: a ring descriptor plus a canonical payload."""

    ring: Ring
    payload: Any

    def _coerce(self, other) -> "Element":
        if not isinstance(other, Element):
            raise TypeError(f"cannot combine Element with {type(other).__name__}")
        if other.ring != self.ring:
            raise RingMismatchError(
                f"mixed rings: {self.ring.expr()} vs {other.ring.expr()}")
        return other

    def __add__(self, other):
        other = self._coerce(other)
        return Element(self.ring, self.ring.add(self.payload, other.payload))

    def __sub__(self, other):
        other = self._coerce(other)
        return Element(self.ring, self.ring.sub(self.payload, other.payload))

    def __mul__(self, other):
        other = self._coerce(other)
        return Element(self.ring, self.ring.mul(self.payload, other.payload))

    def __neg__(self):
        return Element(self.ring, self.ring.neg(self.payload))

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise ValueError("exponent must be a non-negative integer")
        acc = Element(self.ring, self.ring.one)
        base = self
        while k:
            if k & 1:
                acc = acc * base
            base = base * base
            k >>= 1
        return acc

    def __lt__(self, other):
        other = self._coerce(other)
        return self.ring.encode(self.payload) < self.ring.encode(other.payload)

    def is_zero(self) -> bool:
        return self.payload == self.ring.zero

    def encode(self) -> bytes:
        return self.ring.encode(self.payload)

    def __str__(self):
        return self.ring.format(self.payload)

    def __repr__(self):
        return f"<{self.ring.format(self.payload)} in {self.ring.expr()}>"


# ---------------------------------------------------------------------------
# bounded element boxes (shared by scans and the bounded searches)
# ---------------------------------------------------------------------------

def small_elements(ring: Ring, height: int = 2,
                   degree: Optional[int] = None) -> list:
    """Payloads of height-bounded elements, in encoding order.

    For finite rings this is everything.  Over Z the box is [-height, height];
    fractions take numerator and denominator from the base box; polynomial
    layers take coefficients from the base box up to the degree bound.
    """
    if ring.is_finite:
        return list(ring.elements())
    if isinstance(ring, IntegerRing):
        return sorted(range(-height, height + 1), key=ring.encode)
    if isinstance(ring, FractionRing):
        base = small_elements(ring.base, height)
        out = set()
        for n in base:
            for d in base:
                if d == ring.base.zero:
                    continue
                out.add(ring._make(n, d))
        return sorted(out, key=ring.encode)
    if isinstance(ring, PolynomialRing):
        d = 2 if degree is None else degree
        base = small_elements(ring.base, height)
        out = set()
        def grow(prefix, depth):
            if depth > d:
                out.add(_ptrim(ring.base, prefix))
                return
            for c in base:
                grow(prefix + [c], depth + 1)
        grow([], 0)
        return sorted(out, key=ring.encode)
    if isinstance(ring, QuotientRing):
        d = _pdeg(ring.modulus) - 1 if degree is None else min(
            degree, _pdeg(ring.modulus) - 1)
        return [p for p in small_elements(ring.base, height, d)]
    if isinstance(ring, ProductRing):
        lefts = small_elements(ring.left, height, degree)
        rights = small_elements(ring.right, height, degree)
        return [(l, r) for l in lefts for r in rights]
    raise RingConstructionError(f"no element box for {ring.expr()}")


# ---------------------------------------------------------------------------
# unit / nilpotent / idempotent scan
# ---------------------------------------------------------------------------

COMPLETE = "complete"
WITNESSES = "witnesses"
UNDECIDED = "undecided"


@dataclass(frozen=True)
class ScanReport:
    """Units, nilpotents and idempotents of a ring, with decidability tags.

    For finite rings every list is complete.  For infinite rings each
    category is tagged: ``complete`` (the list is everything), ``witnesses``
    (non-empty but possibly partial), or ``undecided`` (nothing is claimed,
    in particular an empty list is not evidence of absence).
    Units come as (unit, inverse) pairs; nilpotents as (element, power).
    """

    ring: Ring
    mode: str
    units: tuple
    nilpotents: tuple
    idempotents: tuple
    units_status: str
    nilpotents_status: str
    idempotents_status: str
    notes: tuple = ()

    def extra_unit(self):
        """A unit outside {1, -1}, with its inverse, if one is known."""
        one = self.ring.element(self.ring.one)
        minus_one = self.ring.element(self.ring.minus_one)
        for u, inv in self.units:
            if u != one and u != minus_one:
                return (u, inv)
        return None

    def extra_idempotent(self):
        zero = self.ring.element(self.ring.zero)
        one = self.ring.element(self.ring.one)
        for e in self.idempotents:
            if e != zero and e != one:
                return e
        return None


def _scan_finite(ring: Ring) -> ScanReport:
    elems = list(ring.elements())
    card = len(elems)
    units = []
    nilpotents = []
    idempotents = []
    for x in elems:
        for y in elems:
            if ring.mul(x, y) == ring.one:
                units.append((ring.element(x), ring.element(y)))
                break
        if ring.mul(x, x) == x:
            idempotents.append(ring.element(x))
        if x != ring.zero:
            p = x
            for k in range(2, card + 2):
                p = ring.mul(p, x)
                if p == ring.zero:
                    nilpotents.append((ring.element(x), k))
                    break
    return ScanReport(ring, "exhaustive", tuple(units), tuple(nilpotents),
                      tuple(idempotents), COMPLETE, COMPLETE, COMPLETE)


def _nilpotent_power(ring: Ring, x, cap: int) -> Optional[int]:
    p = x
    for k in range(2, cap + 1):
        p = ring.mul(p, x)
        if p == ring.zero:
            return k
    return None


def _scan_structural(ring: Ring) -> ScanReport:
    el = ring.element
    zero, one = ring.zero, ring.one

    if isinstance(ring, IntegerRing):
        return ScanReport(ring, "structural",
                          ((el(1), el(1)), (el(-1), el(-1))), (),
                          (el(0), el(1)),
                          COMPLETE, COMPLETE, COMPLETE)

    if isinstance(ring, FractionRing):
        # a field: units are exactly the nonzero elements
        units = [(el(one), el(one))]
        if ring.characteristic() != 2:
            units.append((el(ring.minus_one), el(ring.minus_one)))
        witness = None
        if isinstance(ring.base, PolynomialRing):
            t = (ring.base.base.zero, ring.base.base.one)  # the variable
            witness = (t, ring.base.one)
        else:
            two = ring.base.from_int(2)
            if two not in (ring.base.zero, ring.base.one,
                           ring.base.from_int(-1)):
                witness = (two, ring.base.one)
        status = COMPLETE
        notes = ("units are all nonzero elements of the fraction field",)
        if witness is not None:
            num, den = witness
            u = ring._make(num, den)
            units.append((el(u), el(ring.try_inverse(u))))
            status = WITNESSES
        return ScanReport(ring, "structural", tuple(units), (),
                          (el(zero), el(one)),
                          status, COMPLETE, COMPLETE, notes)

    if isinstance(ring, PolynomialRing):
        base_scan = unit_and_nilpotent_scan(ring.base)
        lift = lambda e: el((e.payload,))
        units = [(lift(u), lift(v)) for u, v in base_scan.units]
        nil = [(lift(w), k) for w, k in base_scan.nilpotents]
        idem = [lift(e) for e in base_scan.idempotents]
        base_reduced = (base_scan.nilpotents_status == COMPLETE
                        and not base_scan.nilpotents)
        if base_scan.nilpotents:
            # 1 + w*X is a unit whenever w is nilpotent
            w, k = base_scan.nilpotents[0]
            u = ring.canonicalize((ring.base.one, w.payload))
            inv = ring.one
            term = ring.one
            step = ring.canonicalize((ring.base.zero, ring.base.neg(w.payload)))
            for _ in range(k):
                term = ring.mul(term, step)
                inv = ring.add(inv, term)
            units.append((el(u), el(inv)))
            units_status = WITNESSES
        elif base_reduced and base_scan.units_status == COMPLETE:
            # units of B[X] are the units of B when B is reduced
            units_status = COMPLETE
        else:
            units_status = WITNESSES if units else UNDECIDED
        return ScanReport(ring, "structural", tuple(units), tuple(nil),
                          tuple(idem), units_status,
                          base_scan.nilpotents_status,
                          base_scan.idempotents_status,
                          ("polynomial-ring scan reflects the coefficient ring",))

    if isinstance(ring, QuotientRing):
        notes = []
        units = [(el(one), el(one))]
        if ring.characteristic() != 2:
            units.append((el(ring.minus_one), el(ring.minus_one)))
        units_status = UNDECIDED
        nil = []
        nil_status = UNDECIDED
        idem = [el(zero), el(one)]
        idem_status = UNDECIDED
        if ring.is_field:
            gen = ring.canonicalize((ring.coeff_ring.zero, ring.coeff_ring.one))
            inv = ring.try_inverse(gen)
            units.append((el(gen), el(inv)))
            units_status = WITNESSES
            nil_status = COMPLETE
            idem_status = COMPLETE
            notes.append("quotient by an irreducible polynomial is a field")
        else:
            box = small_elements(ring, height=2)
            if len(box) ** 2 > 250_000:
                box = small_elements(ring, height=1)
            cap = 2 * _pdeg(ring.modulus) + 2
            trivial_units = len(units)
            for x in box:
                if x == zero:
                    continue
                k = _nilpotent_power(ring, x, cap)
                if k is not None:
                    nil.append((el(x), k))
            for x in box:
                if ring.mul(x, x) == x and x != zero and x != one:
                    idem.append(el(x))
            seen = {one, ring.minus_one}
            for x in box:
                if x in seen:
                    continue
                for y in box:
                    if ring.mul(x, y) == one:
                        units.append((el(x), el(y)))
                        seen.add(x)
                        break
            if len(units) > trivial_units:
                units_status = WITNESSES
            if nil:
                nil_status = WITNESSES
            if len(idem) > 2:
                idem_status = WITNESSES
            notes.append("bounded search over small residues; "
                         "absence is not decided")
        return ScanReport(ring, "structural", tuple(units), tuple(nil),
                          tuple(idem), units_status, nil_status, idem_status,
                          tuple(notes))

    if isinstance(ring, ProductRing):
        lscan = unit_and_nilpotent_scan(ring.left)
        rscan = unit_and_nilpotent_scan(ring.right)
        units = []
        if (lscan.units_status == COMPLETE
                and rscan.units_status == COMPLETE):
            for ul, vl in lscan.units:
                for ur, vr in rscan.units:
                    units.append((el((ul.payload, ur.payload)),
                                  el((vl.payload, vr.payload))))
            units_status = COMPLETE
        else:
            units = [(el(one), el(one))]
            if ring.characteristic() != 2:
                units.append((el(ring.minus_one), el(ring.minus_one)))
            # (1, -1) sits outside {1, -1} when neither factor has char 2
            if (ring.left.characteristic() != 2
                    and ring.right.characteristic() != 2):
                u = (ring.left.one, ring.right.neg(ring.right.one))
                units.append((el(u), el(u)))
            for ul, vl in lscan.units:
                units.append((el((ul.payload, ring.right.one)),
                              el((vl.payload, ring.right.one))))
            for ur, vr in rscan.units:
                units.append((el((ring.left.one, ur.payload)),
                              el((ring.left.one, vr.payload))))
            units_status = WITNESSES
        nil = []
        for w, k in lscan.nilpotents:
            nil.append((el((w.payload, ring.right.zero)), k))
        for w, k in rscan.nilpotents:
            nil.append((el((ring.left.zero, w.payload)), k))
        nil_status = (COMPLETE if lscan.nilpotents_status == COMPLETE
                      and rscan.nilpotents_status == COMPLETE
                      else (WITNESSES if nil else UNDECIDED))
        idem = [el(zero), el(one),
                el((ring.left.one, ring.right.zero)),
                el((ring.left.zero, ring.right.one))]
        return ScanReport(ring, "structural", tuple(units), tuple(nil),
                          tuple(idem), units_status, nil_status, COMPLETE,
                          ("products always carry the idempotents (1,0) and (0,1)",))

    return ScanReport(ring, "structural", (), (), (),
                      UNDECIDED, UNDECIDED, UNDECIDED,
                      (f"no structural rule for {ring.expr()}",))


def unit_and_nilpotent_scan(ring: Ring) -> ScanReport:
    """Complete scan for finite rings, structural answers otherwise."""
    if ring.is_finite:
        return _scan_finite(ring)
    return _scan_structural(ring)


# ---------------------------------------------------------------------------
# ring maps
# ---------------------------------------------------------------------------

class RingMap:
    """A bijective unital ring homomorphism, verified before use.

    Finite rings supply an explicit payload table; the identity map is the
    one structural rule that works on any ring.
    """

    def __init__(self, source: Ring, target: Ring, table: Optional[dict] = None,
                 _identity: bool = False):
        self.source = source
        self.target = target
        self._identity = _identity
        self.table = table
        if not _identity:
            if table is None:
                raise HomomorphismError("a payload table is required")
            self._verify()

    @classmethod
    def identity(cls, ring: Ring) -> "RingMap":
        return cls(ring, ring, None, _identity=True)

    @classmethod
    def from_function(cls, source: Ring, target: Ring, fn) -> "RingMap":
        if not source.is_finite:
            raise InfiniteRingError(
                "tabulated maps require a finite source ring")
        table = {x: target.canonicalize(fn(x)) for x in source.elements()}
        return cls(source, target, table)

    @classmethod
    def crt(cls, source: ModIntRing, target: ProductRing) -> "RingMap":
        """The Chinese-remainder isomorphism Z/mn -> Z/m x Z/n."""
        if not (isinstance(target.left, ModIntRing)
                and isinstance(target.right, ModIntRing)):
            raise HomomorphismError("CRT target must be a product of Z/m rings")
        m, n = target.left.n, target.right.n
        if m * n != source.n or math.gcd(m, n) != 1:
            raise HomomorphismError(
                f"CRT needs coprime factors with product {source.n}")
        return cls.from_function(source, target, lambda x: (x % m, x % n))

    def _verify(self):
        src, tgt = self.source, self.target
        elems = list(src.elements())
        if set(self.table) != set(elems):
            raise HomomorphismError("table does not cover the source ring")
        if self.table[src.one] != tgt.one:
            raise HomomorphismError("map does not send 1 to 1",
                                    (src.one, self.table[src.one]))
        values = list(self.table.values())
        if len(set(values)) != len(values):
            dup = [v for v in values if values.count(v) > 1][0]
            raise HomomorphismError("map is not injective", dup)
        if tgt.cardinality() != len(values):
            raise HomomorphismError("map is not onto the target ring")
        for x in elems:
            for y in elems:
                if self.table[src.add(x, y)] != tgt.add(self.table[x],
                                                        self.table[y]):
                    raise HomomorphismError(
                        "addition is not preserved", (x, y))
                if self.table[src.mul(x, y)] != tgt.mul(self.table[x],
                                                        self.table[y]):
                    raise HomomorphismError(
                        "multiplication is not preserved", (x, y))

    def inverse(self) -> "RingMap":
        if self._identity:
            return self
        return RingMap(self.target, self.source,
                       {v: k for k, v in self.table.items()})

    def apply_payload(self, x):
        if self._identity:
            return x
        return self.table[x]

    def __call__(self, x: Element) -> Element:
        if x.ring != self.source:
            raise RingMismatchError(
                f"element of {x.ring.expr()} given to a map from "
                f"{self.source.expr()}")
        return Element(self.target, self.apply_payload(x.payload))


def apply_ring_map(entries: Sequence[Element], f: RingMap) -> tuple:
    """Map a tuple of elements entrywise through a verified ring map."""
    return tuple(f(x) for x in entries)
