"""Generators for the explicit solution families, plus the criteria detector.

Every generator verifies what it hands out: the matrix word of each tuple
is recomputed exactly, and the documented irreducibility verdict is
re-derived by the split search.  A generator that cannot verify its own
output raises instead of returning it; the block shapes below were read
off typography, so the verification step is the guard against misreading.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, Optional, Sequence, Tuple

from .core import QuiddityTuple, verify_tuple
from .reduction import InternalCheckError, Verdict, is_irreducible
from .rings import (
    Element,
    FractionRing,
    IntegerRing,
    ModIntRing,
    PolynomialRing,
    QuotientRing,
    Ring,
    unit_and_nilpotent_scan,
    INTEGERS,
    RATIONALS,
)


class FamilyError(ValueError):
    """A family parameter is outside its domain."""


@dataclass(frozen=True)
class FamilyMember:
    quiddity: QuiddityTuple
    verdict: Verdict

    def to_json(self):
        out = {
            "tuple": self.quiddity.texts(),
            "sign": int(self.quiddity.sign),
            "char_two": self.quiddity.sign.char_two,
            "verdict": self.verdict.kind,
        }
        if self.verdict.certificate is not None:
            out["certificate"] = self.verdict.certificate.to_json()
        return out


@dataclass(frozen=True)
class FamilyResult:
    name: str
    ring: Ring
    params: Tuple[Tuple[str, object], ...]
    members: Tuple[FamilyMember, ...]

    def to_json(self):
        return {
            "family": self.name,
            "ring": self.ring.expr(),
            "params": dict(self.params),
            "members": [m.to_json() for m in self.members],
        }


def _member(ring: Ring, payloads, expect_irreducible: Optional[bool]) -> FamilyMember:
    entries = tuple(Element(ring, ring.canonicalize(p)) for p in payloads)
    qt = verify_tuple(ring, entries)
    if qt is None:
        raise InternalCheckError(
            f"family produced a tuple that is not a solution: {entries}")
    verdict = is_irreducible(qt)
    if expect_irreducible is True and verdict.kind != "irreducible":
        raise InternalCheckError(
            f"family member expected irreducible, got {verdict.kind}: {qt}")
    if expect_irreducible is False and verdict.kind != "reducible":
        raise InternalCheckError(
            f"family member expected reducible, got {verdict.kind}: {qt}")
    return FamilyMember(qt, verdict)


# ---------------------------------------------------------------------------
# the integer and polynomial four-tuple families
# ---------------------------------------------------------------------------

def family_irr_z(a: int) -> FamilyResult:
    """(1,1,1), (-1,-1,-1), (0,a,0,-a), (a,0,-a,0) over Z.

    The four-tuples are irreducible exactly when a is outside {1, -1}.
    """
    ring = INTEGERS
    irr = a not in (1, -1)
    members = (
        _member(ring, (1, 1, 1), True),
        _member(ring, (-1, -1, -1), True),
        _member(ring, (0, a, 0, -a), irr),
        _member(ring, (a, 0, -a, 0), irr),
    )
    return FamilyResult("irr_Z", ring, (("a", a),), members)


def _poly_family_ring_ok(ring: Ring) -> bool:
    return (isinstance(ring, PolynomialRing)
            and (isinstance(ring.base, IntegerRing)
                 or (isinstance(ring.base, ModIntRing) and ring.base.n in (2, 3))))


def family_irr_poly(P: Element) -> FamilyResult:
    """+-(1,1,1) and (0,P,0,-P), (P,0,-P,0) over Z[X], (Z/2)[X] or (Z/3)[X].

    Irreducible exactly when P is outside {1, -1}; over (Z/2)[X] the two
    constant triples collapse into one.
    """
    ring = P.ring
    if not _poly_family_ring_ok(ring):
        raise FamilyError(
            "the polynomial family lives over Z[X], (Z/2)[X] or (Z/3)[X]; "
            f"got {ring.expr()}")
    p = P.payload
    irr = p not in (ring.one, ring.minus_one)
    members = [_member(ring, (1, 1, 1), True)]
    if ring.characteristic() != 2:
        members.append(_member(ring, (-1, -1, -1), True))
    members.append(_member(ring, (ring.zero, p, ring.zero, ring.neg(p)), irr))
    members.append(_member(ring, (p, ring.zero, ring.neg(p), ring.zero), irr))
    name = ("irr_ZX" if isinstance(ring.base, IntegerRing)
            else f"irr_Z{ring.base.n}X")
    return FamilyResult(name, ring, (("P", str(P)),), tuple(members))


# ---------------------------------------------------------------------------
# the rational family of unbounded size
# ---------------------------------------------------------------------------

def family_q_field(n: int) -> FamilyResult:
    """The (n+3)-tuple (2n+1, (n+1)/(2n+1), 3, 2, ..., 2, 2n/(2n+1)) over Q.

    Carries n-1 interior twos (that count is inferred from the stated
    size); construction verifies both the word and irreducibility, so a
    wrong inference cannot ship silently.
    """
    if n < 2:
        raise FamilyError("the rational family needs n >= 2")
    ring = RATIONALS
    payloads = ([(2 * n + 1, 1), (n + 1, 2 * n + 1), (3, 1)]
                + [(2, 1)] * (n - 1)
                + [(2 * n, 2 * n + 1)])
    member = _member(ring, payloads, True)
    if member.quiddity.size != n + 3:
        raise InternalCheckError("rational family size drifted from n+3")
    return FamilyResult("q_field", ring, (("n", n),), (member,))


# ---------------------------------------------------------------------------
# the quartic-root family of size 4l+8
# ---------------------------------------------------------------------------

def zeta8_ring() -> QuotientRing:
    """Z[X]/(X^4+1): contains both a square root of 2 and one of -2."""
    return QuotientRing(PolynomialRing(INTEGERS, "X"), (1, 0, 0, 0, 1))


def family_zeta8(l: int) -> FamilyResult:
    """The (4l+8)-tuple built from s = X - X^3 and is = X + X^3.

    s^2 = 2 and is^2 = -2 in Z[X]/(X^4+1); the tuple alternates blocks
    (s, 2s, ..., s) of odd length 2l+1 with junction entries s +- is.
    """
    if l < 1:
        raise FamilyError("the quartic-root family needs l >= 1")
    ring = zeta8_ring()
    s = ring.canonicalize((0, 1, 0, -1))
    i_s = ring.canonicalize((0, 1, 0, 1))
    two = ring.from_int(2)
    if ring.mul(s, s) != two or ring.mul(i_s, i_s) != ring.from_int(-2):
        raise InternalCheckError("square-root embeddings failed")
    block = []
    for j in range(2 * l + 1):
        block.append(s if j % 2 == 0 else ring.mul(two, s))
    neg_block = [ring.neg(x) for x in block]
    payloads = ([i_s, ring.sub(s, i_s)] + block
                + [ring.add(s, i_s), ring.neg(i_s),
                   ring.add(ring.neg(s), i_s)] + neg_block
                + [ring.sub(ring.neg(s), i_s)])
    member = _member(ring, payloads, True)
    if member.quiddity.size != 4 * l + 8:
        raise InternalCheckError("quartic-root family size drifted from 4l+8")
    return FamilyResult("zeta8", ring, (("l", l),), (member,))


# ---------------------------------------------------------------------------
# unboundedness criteria for polynomial extensions
# ---------------------------------------------------------------------------

FLAG_CHAR = "char_not_in_023"
FLAG_NILPOTENT = "has_nilpotent"
FLAG_DECOMPOSABLE = "decomposable"
FLAG_EXTRA_UNIT = "extra_unit"
FLAG_FINITE = "finite_not_Z2_Z3"

UNBOUNDED = "polynomial_ring_unbounded"
BOUNDED_KNOWN = "bounded_known"
UNDECIDED_CONCLUSION = "undecided"


@dataclass(frozen=True)
class CriteriaReport:
    """Which unboundedness criteria a coefficient ring satisfies.

    The flags and the conclusion are statements about polynomial rings
    over this ring, never about the ring itself; witnesses are re-checked
    elements of the base ring.
    """

    ring: Ring
    flags: Tuple[str, ...]
    conclusion: str
    witnesses: Dict[str, object]
    notes: Tuple[str, ...]
    provenance: Tuple[str, ...]

    def to_json(self):
        return {
            "ring": self.ring.expr(),
            "about": f"polynomial rings over {self.ring.expr()}",
            "flags": list(self.flags),
            "conclusion": self.conclusion,
            "witnesses": self.witnesses,
            "notes": list(self.notes),
            "provenance": list(self.provenance),
        }


def unboundedness_criteria(ring: Ring) -> CriteriaReport:
    """Evaluate the four structural flags plus the finite classification."""
    flags = []
    witnesses: Dict[str, object] = {}
    notes = []
    one = Element(ring, ring.one)
    zero = Element(ring, ring.zero)

    char = ring.characteristic()
    if char not in (0, 2, 3):
        flags.append(FLAG_CHAR)
        witnesses[FLAG_CHAR] = {"characteristic": char}

    scan = unit_and_nilpotent_scan(ring)
    if scan.nilpotents:
        w, k = scan.nilpotents[0]
        if w == zero or (w ** k) != zero:
            raise InternalCheckError("nilpotent witness failed to re-verify")
        flags.append(FLAG_NILPOTENT)
        witnesses[FLAG_NILPOTENT] = {"element": str(w), "power": k}

    e = scan.extra_idempotent()
    if e is not None:
        if e * e != e or e == zero or e == one:
            raise InternalCheckError("idempotent witness failed to re-verify")
        flags.append(FLAG_DECOMPOSABLE)
        witnesses[FLAG_DECOMPOSABLE] = {"idempotent": str(e)}

    extra = scan.extra_unit()
    if extra is not None:
        u, u_inv = extra
        if u * u_inv != one:
            raise InternalCheckError("unit witness failed to re-verify")
        flags.append(FLAG_EXTRA_UNIT)
        witnesses[FLAG_EXTRA_UNIT] = {"unit": str(u), "inverse": str(u_inv)}

    card = ring.cardinality()
    if card is not None and card not in (2, 3):
        flags.append(FLAG_FINITE)
        witnesses[FLAG_FINITE] = {"cardinality": card}

    provenance = (
        "flags are computed witnesses in the coefficient ring; "
        "the size conclusion for its polynomial rings quotes the "
        "classification of bounded polynomial coefficient rings",)
    if flags:
        conclusion = UNBOUNDED
        notes.append("each flag forces irreducible solutions of unbounded "
                     "size over any polynomial extension")
    elif card in (2, 3):
        conclusion = BOUNDED_KNOWN
        notes.append(f"a unital ring with {card} elements is the modular "
                     f"ring Z/{card}; its polynomial rings keep the maximal "
                     f"irreducible size at 4")
    else:
        conclusion = UNDECIDED_CONCLUSION
        undecided_bits = [
            name for name, status in (
                ("units", scan.units_status),
                ("nilpotents", scan.nilpotents_status),
                ("idempotents", scan.idempotents_status))
            if status == "undecided"]
        if undecided_bits:
            notes.append("no criterion fired, but the scan could not decide: "
                         + ", ".join(undecided_bits))
        else:
            notes.append("no criterion applies; the criteria are sufficient, "
                         "not necessary, so nothing is concluded")
    return CriteriaReport(ring, tuple(flags), conclusion, witnesses,
                          tuple(notes), provenance)


# ---------------------------------------------------------------------------
# CLI dispatcher
# ---------------------------------------------------------------------------

FAMILY_NAMES = ("irr_Z", "irr_ZX", "irr_Z2X", "irr_Z3X", "q_field", "zeta8")


def generate_family(name: str, params: Dict[str, str]) -> FamilyResult:
    """Build a family from CLI-style string parameters."""
    from .parse import parse_element, parse_ring

    def need_int(key):
        if key not in params:
            raise FamilyError(f"family {name} needs the parameter {key}")
        try:
            return int(params[key])
        except ValueError:
            raise FamilyError(f"parameter {key} must be an integer")

    if name == "irr_Z":
        return family_irr_z(need_int("a"))
    if name in ("irr_ZX", "irr_Z2X", "irr_Z3X"):
        ring = parse_ring({"irr_ZX": "Z[X]", "irr_Z2X": "Z/2[X]",
                           "irr_Z3X": "Z/3[X]"}[name])
        if "P" not in params:
            raise FamilyError(f"family {name} needs the parameter P")
        return family_irr_poly(parse_element(ring, params["P"]))
    if name == "q_field":
        return family_q_field(need_int("n"))
    if name == "zeta8":
        return family_zeta8(need_int("l"))
    raise FamilyError(f"unknown family {name!r}; choose from {FAMILY_NAMES}")
