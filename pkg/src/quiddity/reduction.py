"""Exact reducibility decisions with checkable certificates.

A verified tuple d of size n splits as d = a (+) b exactly when some
dihedral representative has a tail segment (b_2, ..., b_{l-1}) whose word
P = [[p, q], [r, s]] admits junction values closing b into a solution:
p must be +-1, and then b_1 = eps*q, b_l = -eps*r with eps = -p.  The
top-left entry of P is the segment continuant, so reducibility is
equivalent to some cyclic segment of length 1 <= k <= n-3 having
continuant +-1; that biconditional is re-checked on every call.

The closed junction form decides irreducibility over every ring with
decidable equality, including the infinite ones.  ``reduction_oracle`` is
the independent brute-force check straight from the defining split, for
finite rings only.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .core import (
    Mat2,
    QuiddityTuple,
    Sign,
    Transform,
    _mat_id,
    _mat_mul,
    _matrix_sign,
    _n_mat,
    _word_sign,
    dihedral_transforms,
    oplus,
)
from .rings import Element, Ring


class InternalCheckError(AssertionError):
    """An always-on internal cross-check failed; indicates a library bug."""


@dataclass(frozen=True)
class ReductionCertificate:
    """A checkable witness that d = transform(c) splits as a (+) b."""

    transform: Transform
    l: int
    m: int
    b: QuiddityTuple
    a: QuiddityTuple
    b_first: Element
    b_last: Element

    def to_json(self):
        return {
            "transform": self.transform.to_json(),
            "l": self.l,
            "m": self.m,
            "b": self.b.texts(),
            "a": self.a.texts(),
            "sign_b": int(self.b.sign),
            "sign_a": int(self.a.sign),
            "char_two": self.b.sign.char_two,
        }


@dataclass(frozen=True)
class CertCheck:
    ok: bool
    reason: Optional[str] = None


@dataclass(frozen=True)
class Verdict:
    """Outcome of the irreducibility decision."""

    kind: str  # "irreducible" | "reducible" | "excluded"
    certificate: Optional[ReductionCertificate] = None


def _signs_for(ring: Ring):
    """Candidate signs in scan order; char 2 collapses to a single one."""
    if ring.characteristic() == 2:
        return (Sign(+1, char_two=True),)
    return (Sign(+1), Sign(-1))


def junction_solve(P: Mat2) -> list:
    """All (sign, b_first, b_last) with N(b_last)*P*N(b_first) = sign*Id.

    Requires det P = 1.  Solutions exist exactly when the top-left entry
    is +-1; the bottom-right condition is then automatic.
    """
    ring = P.ring
    one = ring.element(ring.one)
    if P.det() != one:
        raise InternalCheckError("junction solver fed a determinant != 1")
    out = []
    for sign, bf, bl in _junction_payloads(ring, P.payloads()):
        out.append((sign, Element(ring, bf), Element(ring, bl)))
    return out


def _junction_payloads(ring: Ring, quad):
    p, q, r, _ = quad
    out = []
    for sign in _signs_for(ring):
        eps = ring.from_int(sign.value)
        if p == ring.neg(eps):
            b_first = ring.mul(eps, q)
            b_last = ring.neg(ring.mul(eps, r))
            closed = _mat_mul(ring, _n_mat(ring, b_last),
                              _mat_mul(ring, quad, _n_mat(ring, b_first)))
            got = _matrix_sign(ring, closed)
            if got is None or got.value != sign.value:
                raise InternalCheckError("junction closure did not verify")
            out.append((sign, b_first, b_last))
    return out


def _segment_criterion(ring: Ring, payloads) -> bool:
    """Does some cyclic segment of length k in [1, n-3] have continuant +-1?"""
    n = len(payloads)
    one, minus_one = ring.one, ring.minus_one
    for start in range(n):
        km2, km1 = ring.zero, ring.one
        for k in range(1, n - 2):
            a = payloads[(start + k - 1) % n]
            kk = ring.sub(ring.mul(a, km1), km2)
            if kk == one or kk == minus_one:
                return True
            km2, km1 = km1, kk
    return False


def find_reduction(c: QuiddityTuple,
                   include_reversals: bool = True) -> Optional[ReductionCertificate]:
    """First certificate in scan order (representatives, k ascending, sign).

    None for size 3 (the split sizes force n >= 4) and whenever no split
    exists.  Every call cross-checks the segment-continuant criterion
    against the certificate search and raises on disagreement.
    """
    if c.sign is None:
        raise ValueError("find_reduction needs a verified tuple")
    n = c.size
    if n < 3:
        raise ValueError("reducibility is defined for sizes >= 3")
    ring = c.ring
    if n == 3:
        return None
    payloads = c.payloads()

    cert = None
    transforms = dihedral_transforms(n)
    if not include_reversals:
        transforms = transforms[:n]
    for tr in transforms:
        d = _apply_payloads(tr, payloads)
        P = _mat_id(ring)
        for k in range(1, n - 2):
            # P = word of the last k entries of d, grown one factor at a time
            P = _mat_mul(ring, P, _n_mat(ring, d[n - k]))
            sols = _junction_payloads(ring, P)
            if not sols:
                continue
            sign_b, b_first, b_last = sols[0]
            cert = _build_certificate(ring, tr, d, k, sign_b, b_first, b_last)
            break
        if cert is not None:
            break

    if _segment_criterion(ring, payloads) != (cert is not None):
        raise InternalCheckError(
            "segment-continuant criterion disagrees with the split search")
    return cert


def _apply_payloads(tr: Transform, payloads):
    t = payloads[::-1] if tr.reversed else payloads
    r = tr.rotation % len(t)
    return t[r:] + t[:r]


def _build_certificate(ring: Ring, tr: Transform, d, k: int, sign_b: Sign,
                       b_first, b_last) -> ReductionCertificate:
    n = len(d)
    l = k + 2
    m = n - k
    b_payloads = (b_first,) + d[n - k:] + (b_last,)
    a_payloads = ((ring.sub(d[0], b_last),) + d[1:m - 1]
                  + (ring.sub(d[m - 1], b_first),))
    got_b = _word_sign(ring, b_payloads)
    if got_b is None or got_b != sign_b:
        raise InternalCheckError("junction tuple b failed its sign check")
    sign_a = _word_sign(ring, a_payloads)
    if sign_a is None:
        raise InternalCheckError(
            "reconstructed tuple a is not a solution; composition lemma violated")
    return ReductionCertificate(
        transform=tr, l=l, m=m,
        b=QuiddityTuple.from_payloads(ring, b_payloads, sign_b),
        a=QuiddityTuple.from_payloads(ring, a_payloads, sign_a),
        b_first=Element(ring, b_first), b_last=Element(ring, b_last))


def is_irreducible(c: QuiddityTuple) -> Verdict:
    """excluded for sizes <= 2; otherwise decided by the split search."""
    if c.sign is None:
        raise ValueError("is_irreducible needs a verified tuple")
    if c.size <= 2:
        return Verdict("excluded")
    cert = find_reduction(c)
    if cert is None:
        return Verdict("irreducible")
    return Verdict("reducible", cert)


def verify_certificate(cert: ReductionCertificate, c: QuiddityTuple) -> CertCheck:
    """Recheck a certificate against the tuple it claims to reduce."""
    ring = c.ring
    n = c.size
    if cert.l < 3:
        return CertCheck(False, "l_bound")
    if cert.m < 3:
        return CertCheck(False, "m_bound")
    if cert.b.size != cert.l or cert.a.size != cert.m:
        return CertCheck(False, "size_mismatch")
    if cert.m + cert.l - 2 != n:
        return CertCheck(False, "split_size")
    if cert.b.entries[0] != cert.b_first or cert.b.entries[-1] != cert.b_last:
        return CertCheck(False, "junction_mismatch")
    if not cert.b.check():
        return CertCheck(False, "b_not_quiddity")
    if not cert.a.check():
        return CertCheck(False, "a_not_quiddity")
    d = cert.transform.apply(c.entries)
    recombined = oplus(cert.a.entries, cert.b.entries)
    if tuple(recombined) != tuple(d):
        return CertCheck(False, "recombination_mismatch")
    return CertCheck(True)


def reduction_oracle(c: QuiddityTuple) -> Optional[ReductionCertificate]:
    """Brute force straight from the defining split; finite rings only.

    Scans representatives, l ascending, then all junction pairs from the
    ring, testing both tuples by full matrix products.  Must agree with
    find_reduction on presence.
    """
    if c.sign is None:
        raise ValueError("reduction_oracle needs a verified tuple")
    ring = c.ring
    if not ring.is_finite:
        raise ValueError("the brute-force oracle needs a finite ring")
    n = c.size
    if n < 3:
        raise ValueError("reducibility is defined for sizes >= 3")
    payloads = c.payloads()
    elems = list(ring.elements())
    for tr in dihedral_transforms(n):
        d = _apply_payloads(tr, payloads)
        for l in range(3, n):
            middle = d[n - (l - 2):]
            m = n - l + 2
            for b_first in elems:
                for b_last in elems:
                    b_payloads = (b_first,) + middle + (b_last,)
                    sign_b = _word_sign(ring, b_payloads)
                    if sign_b is None:
                        continue
                    a_payloads = ((ring.sub(d[0], b_last),) + d[1:m - 1]
                                  + (ring.sub(d[m - 1], b_first),))
                    sign_a = _word_sign(ring, a_payloads)
                    if sign_a is None:
                        continue
                    return ReductionCertificate(
                        transform=tr, l=l, m=m,
                        b=QuiddityTuple.from_payloads(ring, b_payloads, sign_b),
                        a=QuiddityTuple.from_payloads(ring, a_payloads, sign_a),
                        b_first=Element(ring, b_first),
                        b_last=Element(ring, b_last))
    return None
