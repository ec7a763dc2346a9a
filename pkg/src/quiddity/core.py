"""Matrix words, continuants, tuple composition and dihedral equivalence.

The defining matrix word multiplies the factor built from the first entry
rightmost:

    word(a_1, ..., a_n) = N(a_n) * ... * N(a_1),   N(a) = [[a, -1], [1, 0]]

A tuple solves the Conway-Coxeter equation when the word is +-Id; its sign
is the epsilon with word = epsilon * Id.  In characteristic 2 the two signs
coincide and are reported as +1 with a marker.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Optional, Sequence

from .rings import Element, Ring, RingMismatchError


@dataclass(frozen=True)
class Sign:
    """Epsilon in {+1, -1}; char_two marks rings where both coincide."""

    value: int
    char_two: bool = False

    def __post_init__(self):
        if self.value not in (1, -1):
            raise ValueError("sign must be +1 or -1")

    def __int__(self):
        return self.value

    def __str__(self):
        return f"{self.value:+d}" + (" (char 2)" if self.char_two else "")


# ---------------------------------------------------------------------------
# payload-level kernels (hot paths share these; public API wraps them)
# ---------------------------------------------------------------------------

def _mat_mul(ring: Ring, A, B):
    a, b, c, d = A
    e, f, g, h = B
    mul, add = ring.mul, ring.add
    return (add(mul(a, e), mul(b, g)), add(mul(a, f), mul(b, h)),
            add(mul(c, e), mul(d, g)), add(mul(c, f), mul(d, h)))


def _mat_id(ring: Ring):
    return (ring.one, ring.zero, ring.zero, ring.one)


def _mat_neg_id(ring: Ring):
    return (ring.minus_one, ring.zero, ring.zero, ring.minus_one)


def _n_mat(ring: Ring, a):
    return (a, ring.minus_one, ring.one, ring.zero)


def _word(ring: Ring, payloads):
    """N(a_n) ... N(a_1) as a payload 4-tuple (row-major)."""
    M = _mat_id(ring)
    mul, sub = ring.mul, ring.sub
    for a in payloads:
        p, q, r, s = M
        M = (sub(mul(a, p), r), sub(mul(a, q), s), p, q)  # N(a) * M
    return M


def _word_sign(ring: Ring, payloads) -> Optional[Sign]:
    M = _word(ring, payloads)
    return _matrix_sign(ring, M)


def _matrix_sign(ring: Ring, M) -> Optional[Sign]:
    if M == _mat_id(ring):
        return Sign(+1, char_two=ring.characteristic() == 2)
    if M == _mat_neg_id(ring):
        return Sign(-1)
    return None


def _continuant_run(ring: Ring, payloads):
    """K(a_1 .. a_j) for j = 0 .. len, via K_j = a_j K_{j-1} - K_{j-2}."""
    out = [ring.one]
    km2, km1 = ring.zero, ring.one
    for a in payloads:
        k = ring.sub(ring.mul(a, km1), km2)
        out.append(k)
        km2, km1 = km1, k
    return out


# ---------------------------------------------------------------------------
# matrices and verified tuples
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Mat2:
    """An exact 2x2 matrix over a single ring."""

    ring: Ring
    a11: Element
    a12: Element
    a21: Element
    a22: Element

    @classmethod
    def from_payloads(cls, ring: Ring, quad) -> "Mat2":
        a, b, c, d = quad
        return cls(ring, Element(ring, a), Element(ring, b),
                   Element(ring, c), Element(ring, d))

    def payloads(self):
        return (self.a11.payload, self.a12.payload,
                self.a21.payload, self.a22.payload)

    def det(self) -> Element:
        return self.a11 * self.a22 - self.a12 * self.a21

    def __mul__(self, other: "Mat2") -> "Mat2":
        if other.ring != self.ring:
            raise RingMismatchError("matrices over different rings")
        return Mat2.from_payloads(
            self.ring, _mat_mul(self.ring, self.payloads(), other.payloads()))

    def sign(self) -> Optional[Sign]:
        return _matrix_sign(self.ring, self.payloads())

    def __str__(self):
        f = self.ring.format
        p = self.payloads()
        return f"[[{f(p[0])}, {f(p[1])}], [{f(p[2])}, {f(p[3])}]]"


def n_matrix(a: Element) -> Mat2:
    """The elementary factor [[a, -1], [1, 0]]."""
    return Mat2.from_payloads(a.ring, _n_mat(a.ring, a.payload))


def _entries_ring(entries: Sequence[Element]) -> Ring:
    if not entries:
        raise ValueError("empty tuple")
    ring = entries[0].ring
    for e in entries[1:]:
        if e.ring != ring:
            raise RingMismatchError(
                f"mixed rings: {ring.expr()} vs {e.ring.expr()}")
    return ring


def m_matrix(entries: Sequence[Element]) -> Mat2:
    """The word N(a_n) ... N(a_1); the first entry acts first."""
    ring = _entries_ring(entries)
    return Mat2.from_payloads(ring, _word(ring, [e.payload for e in entries]))


def continuant(entries: Sequence[Element], ring: Optional[Ring] = None) -> Element:
    """K() = 1, K(a) = a, K_j = a_j K_{j-1} - K_{j-2}; equals word[1][1]."""
    if entries:
        ring = _entries_ring(entries)
    elif ring is None:
        raise ValueError("continuant of an empty tuple needs an explicit ring")
    run = _continuant_run(ring, [e.payload for e in entries])
    return Element(ring, run[-1])


def quiddity_sign(entries: Sequence[Element]) -> Optional[Sign]:
    """+1 if the word is Id, -1 if -Id (collapsed in char 2), else None."""
    ring = _entries_ring(entries)
    return _word_sign(ring, [e.payload for e in entries])


@dataclass(frozen=True)
class QuiddityTuple:
    """A tuple over one ring; ``sign`` is set once verification succeeded."""

    ring: Ring
    entries: tuple
    sign: Optional[Sign] = None

    def __post_init__(self):
        if not self.entries:
            raise ValueError("quiddity tuples are non-empty")
        for e in self.entries:
            if e.ring != self.ring:
                raise RingMismatchError(
                    f"entry of {e.ring.expr()} in a {self.ring.expr()} tuple")

    @classmethod
    def from_payloads(cls, ring: Ring, payloads,
                      sign: Optional[Sign] = None) -> "QuiddityTuple":
        return cls(ring, tuple(Element(ring, p) for p in payloads), sign)

    @property
    def size(self) -> int:
        return len(self.entries)

    def payloads(self) -> tuple:
        return tuple(e.payload for e in self.entries)

    def verify(self) -> "QuiddityTuple":
        """Recompute the sign; raises if the tuple is not a solution."""
        sign = quiddity_sign(self.entries)
        if sign is None:
            raise ValueError(f"{self} is not a lambda-quiddity")
        return QuiddityTuple(self.ring, self.entries, sign)

    def check(self) -> bool:
        """Re-verify a stored sign without raising."""
        if self.sign is None:
            return False
        got = quiddity_sign(self.entries)
        return got is not None and got == self.sign

    def texts(self) -> list:
        return [self.ring.format(e.payload) for e in self.entries]

    def __str__(self):
        return "(" + ", ".join(self.texts()) + ")"


def verify_tuple(ring: Ring, entries: Sequence[Element]) -> Optional[QuiddityTuple]:
    """QuiddityTuple with sign when the word is +-Id, else None."""
    sign = _word_sign(ring, [e.payload for e in entries])
    if sign is None:
        return None
    return QuiddityTuple(ring, tuple(entries), sign)


# ---------------------------------------------------------------------------
# composition and dihedral equivalence
# ---------------------------------------------------------------------------

def oplus(a: Sequence[Element], b: Sequence[Element]) -> tuple:
    """(a_1+b_m, a_2, ..., a_{n-1}, a_n+b_1, b_2, ..., b_{m-1}).

    The result has n+m-2 entries.  For n = 1 both junction sums land on the
    single entry of a, giving (a_1+b_1+b_m, b_2, ..., b_{m-1}); m = 1 has no
    coherent reading of the defining formula and is rejected.
    """
    ring = _entries_ring(a)
    if _entries_ring(b) != ring:
        raise RingMismatchError("oplus operands in different rings")
    a = tuple(a)
    b = tuple(b)
    if len(b) < 2:
        raise ValueError("second operand of oplus needs size >= 2")
    if len(a) == 1:
        return (a[0] + b[0] + b[-1],) + b[1:-1]
    return (a[0] + b[-1],) + a[1:-1] + (a[-1] + b[0],) + b[1:-1]


@dataclass(frozen=True)
class Transform:
    """One dihedral move: rotate by ``rotation``, after optional reversal."""

    rotation: int
    reversed: bool = False

    def apply(self, entries: Sequence[Element]) -> tuple:
        t = tuple(entries)
        if self.reversed:
            t = t[::-1]
        r = self.rotation % len(t)
        return t[r:] + t[:r]

    def to_json(self):
        return {"rotation": self.rotation, "reversed": self.reversed}


def dihedral_transforms(n: int) -> list:
    """All 2n transforms: rotations first, then rotations of the reversal."""
    return ([Transform(r, False) for r in range(n)]
            + [Transform(r, True) for r in range(n)])


def dihedral_orbit(entries: Sequence[Element]) -> list:
    """All 2n (transform, tuple) pairs; duplicates are kept."""
    _entries_ring(entries)
    return [(tr, tr.apply(entries)) for tr in dihedral_transforms(len(entries))]


def equivalent(s: Sequence[Element], t: Sequence[Element]) -> bool:
    """Equality up to rotation of the tuple or of its reversal."""
    if _entries_ring(s) != _entries_ring(t):
        raise RingMismatchError("tuples over different rings")
    if len(s) != len(t):
        return False
    target = tuple(t)
    return any(seq == target for _, seq in dihedral_orbit(s))


def canonical_form(entries: Sequence[Element]):
    """Minimum of the dihedral orbit in encoding order, with its transform."""
    ring = _entries_ring(entries)
    best = None
    best_tr = None
    best_key = None
    for tr, seq in dihedral_orbit(entries):
        key = tuple(ring.encode(e.payload) for e in seq)
        if best_key is None or key < best_key:
            best, best_tr, best_key = seq, tr, key
    return best, best_tr
