"""Reducibility decisions, certificates, and the brute-force oracle."""

from dataclasses import replace

import pytest

from quiddity import (
    Element,
    QuiddityTuple,
    find_reduction,
    is_irreducible,
    junction_solve,
    n_matrix,
    parse_element,
    parse_ring,
    parse_tuple,
    reduction_oracle,
    verify_certificate,
    verify_tuple,
    INTEGERS as Z,
)

from conftest import REGISTRY, random_quiddity


def vt(ring, text):
    qt = verify_tuple(ring, parse_tuple(ring, text))
    assert qt is not None
    return qt


# ---------------------------------------------------------------------------
# junction solving
# ---------------------------------------------------------------------------

def test_junction_on_n_of_one():
    sols = junction_solve(n_matrix(Element(Z, 1)))
    assert len(sols) == 1
    sign, b_first, b_last = sols[0]
    assert int(sign) == -1
    assert (b_first, b_last) == (Element(Z, 1), Element(Z, 1))


def test_junction_empty_when_corner_not_a_sign():
    assert junction_solve(n_matrix(Element(Z, 0))) == []
    assert junction_solve(n_matrix(Element(Z, 5))) == []


def test_junction_residue_collapse_mod_four():
    z4 = REGISTRY["Z/4"]
    sols = junction_solve(n_matrix(parse_element(z4, "5")))
    assert len(sols) == 1


def test_junction_char_two_single_candidate():
    z2 = REGISTRY["Z/2"]
    sols = junction_solve(n_matrix(parse_element(z2, "1")))
    assert len(sols) == 1
    assert sols[0][0].char_two


# ---------------------------------------------------------------------------
# the split search
# ---------------------------------------------------------------------------

def test_find_reduction_two_one_pattern():
    cert = find_reduction(vt(Z, "2,1,2,1"))
    assert cert is not None
    assert cert.b.payloads() == (1, 1, 1)
    assert cert.a.payloads() == (1, 1, 1)
    assert (cert.l, cert.m) == (3, 3)
    assert verify_certificate(cert, vt(Z, "2,1,2,1")).ok


def test_find_reduction_absent_for_pm_free_four_tuple():
    assert find_reduction(vt(Z, "0,5,0,-5")) is None


def test_find_reduction_zero_one_pattern():
    # first certificate in scan order: rotation 0 already has a unit tail
    c = vt(Z, "0,1,0,-1")
    cert = find_reduction(c)
    assert cert is not None
    assert cert.transform.rotation == 0 and not cert.transform.reversed
    assert cert.b.payloads() == (-1, -1, -1)
    assert cert.a.payloads() == (1, 1, 1)
    assert verify_certificate(cert, c).ok


def test_find_reduction_size_three_short_circuit():
    assert find_reduction(vt(Z, "1,1,1")) is None


def test_find_reduction_requires_verified_input():
    unverified = QuiddityTuple(Z, tuple(parse_tuple(Z, "2,1,2,1")))
    with pytest.raises(ValueError):
        find_reduction(unverified)


def test_is_irreducible_examples():
    assert is_irreducible(vt(Z, "0,0")).kind == "excluded"
    assert is_irreducible(vt(Z, "1,1,1")).kind == "irreducible"
    f3x = REGISTRY["Z/3[X]"]
    assert is_irreducible(vt(f3x, "0,X,0,-X")).kind == "irreducible"
    assert is_irreducible(vt(Z, "2,1,2,1")).kind == "reducible"


def test_size_four_characterization(rng):
    # a size-4 solution is irreducible exactly when no entry is +-1
    rings = [Z, REGISTRY["Q"], REGISTRY["Z/5"], REGISTRY["Z/6"],
             REGISTRY["Z/2[X]"], REGISTRY["Z/3[X]"], REGISTRY["Z[X]"]]
    for ring in rings:
        one = Element(ring, ring.one)
        minus_one = Element(ring, ring.minus_one)
        candidates = []
        if ring.is_finite:
            from quiddity import enumerate_quiddities
            candidates = enumerate_quiddities(ring, 4)
        else:
            for a in ("0", "1", "-1", "2", "-3", "X" if "X" in ring.expr() else "5"):
                e = parse_element(ring, a)
                t = (Element(ring, ring.zero), e,
                     Element(ring, ring.zero), -e)
                qt = verify_tuple(ring, t)
                assert qt is not None
                candidates.append(qt)
        for qt in candidates:
            has_unit_entry = any(e == one or e == minus_one
                                 for e in qt.entries)
            verdict = is_irreducible(qt)
            assert (verdict.kind == "irreducible") == (not has_unit_entry)


def test_reversal_economy_on_exhaustive_suites():
    from quiddity import enumerate_quiddities
    for expr in ("Z/2", "Z/3"):
        ring = REGISTRY[expr]
        for n in range(3, 7):
            for qt in enumerate_quiddities(ring, n):
                full = find_reduction(qt, include_reversals=True)
                rot_only = find_reduction(qt, include_reversals=False)
                assert (full is None) == (rot_only is None)


def test_subring_transport_of_integer_irreducibles():
    # irreducible integer tuples stay irreducible in Q, Z[X], Z[X]/(X^2+1)
    targets = [REGISTRY["Q"], REGISTRY["Z[X]"], REGISTRY["Z[X]/(X^2+1)"]]
    for a in (0, 2, 3, -5, 7):
        tuples = [(1, 1, 1), (-1, -1, -1), (0, a, 0, -a)]
        for values in tuples:
            if any(v in (1, -1) for v in values) and values not in ((1, 1, 1), (-1, -1, -1)):
                continue
            for target in targets:
                entries = tuple(Element(target, target.from_int(v))
                                for v in values)
                qt = verify_tuple(target, entries)
                assert qt is not None
                assert is_irreducible(qt).kind == "irreducible"


# ---------------------------------------------------------------------------
# certificates
# ---------------------------------------------------------------------------

def test_certificate_tampering_detected():
    c = vt(Z, "2,1,2,1")
    cert = find_reduction(c)
    # shift one junction entry of b without touching the stored junction
    bumped = tuple(list(cert.b.entries[:-1]) + [cert.b.entries[-1] + Element(Z, 1)])
    bad = replace(cert, b=QuiddityTuple(Z, bumped, cert.b.sign))
    assert not verify_certificate(bad, c).ok
    # shift both so the junction matches but b stops being a solution
    bumped_first = (cert.b.entries[0] + Element(Z, 1),) + cert.b.entries[1:]
    bad2 = replace(cert, b=QuiddityTuple(Z, bumped_first, cert.b.sign),
                   b_first=cert.b_first + Element(Z, 1))
    check = verify_certificate(bad2, c)
    assert not check.ok and check.reason == "b_not_quiddity"


def test_certificate_size_bound_rejected():
    c = vt(Z, "2,1,2,1")
    cert = find_reduction(c)
    bad = replace(cert, l=2)
    check = verify_certificate(bad, c)
    assert not check.ok and check.reason == "l_bound"


def test_certificate_round_trip_on_random_reducibles(rng):
    finite = [REGISTRY[e] for e in ("Z/2", "Z/3", "Z/4", "Z/5", "Z/6")]
    seen = 0
    while seen < 200:
        ring = rng.choice(finite)
        qt = random_quiddity(ring, rng, rng.randint(4, 7))
        cert = find_reduction(qt)
        if cert is None:
            continue
        assert verify_certificate(cert, qt).ok
        seen += 1


# ---------------------------------------------------------------------------
# the brute-force oracle
# ---------------------------------------------------------------------------

def test_oracle_examples():
    z2 = REGISTRY["Z/2"]
    cert = reduction_oracle(vt(z2, "0,1,0,1"))
    assert cert is not None and verify_certificate(cert, vt(z2, "0,1,0,1")).ok
    z3 = REGISTRY["Z/3"]
    assert reduction_oracle(vt(z3, "0,0,0,0")) is None


def test_oracle_rejects_infinite_rings():
    with pytest.raises(ValueError):
        reduction_oracle(vt(Z, "0,0,0,0"))


def test_oracle_agrees_with_split_search_small(rng):
    from quiddity import enumerate_quiddities
    for expr in ("Z/2", "Z/3"):
        ring = REGISTRY[expr]
        for n in range(3, 7):
            for qt in enumerate_quiddities(ring, n):
                assert (find_reduction(qt) is None) == \
                    (reduction_oracle(qt) is None)
