"""Solution families and the unboundedness criteria detector."""

import pytest

from quiddity import (
    Element,
    FamilyError,
    compute_ell,
    equivalent,
    family_irr_poly,
    family_irr_z,
    family_q_field,
    family_zeta8,
    generate_family,
    parse_element,
    parse_ring,
    unboundedness_criteria,
    zeta8_ring,
)

from conftest import REGISTRY


# ---------------------------------------------------------------------------
# the integer four-tuples
# ---------------------------------------------------------------------------

def test_family_irr_z_generic_all_irreducible():
    result = family_irr_z(7)
    assert [m.verdict.kind for m in result.members] == ["irreducible"] * 4
    assert [m.quiddity.payloads() for m in result.members] == [
        (1, 1, 1), (-1, -1, -1), (0, 7, 0, -7), (7, 0, -7, 0)]


def test_family_irr_z_unit_parameter_reducible():
    result = family_irr_z(1)
    kinds = [m.verdict.kind for m in result.members]
    assert kinds == ["irreducible", "irreducible", "reducible", "reducible"]
    cert = result.members[2].verdict.certificate
    assert cert is not None and cert.b.size == 3


def test_family_irr_z_zero_parameter():
    result = family_irr_z(0)
    assert all(m.verdict.kind == "irreducible" for m in result.members)


def test_family_irr_z_equivalence_classes():
    for a in (2, 3, 7):
        members = family_irr_z(a).members
        tuples = [m.quiddity.entries for m in members]
        assert equivalent(tuples[2], tuples[3])  # rotation of each other
        assert not equivalent(tuples[0], tuples[1])
        assert not equivalent(tuples[0], tuples[2])


# ---------------------------------------------------------------------------
# polynomial four-tuples
# ---------------------------------------------------------------------------

def test_family_poly_char_two_collapses_sign():
    ring = REGISTRY["Z/2[X]"]
    result = family_irr_poly(parse_element(ring, "X"))
    payloads = [m.quiddity.payloads() for m in result.members]
    assert payloads[0] == ((1,), (1,), (1,))
    assert ((), (0, 1), (), (0, 1)) in payloads
    assert all(m.verdict.kind == "irreducible" for m in result.members)


def test_family_poly_unit_parameter_reducible():
    ring = REGISTRY["Z/3[X]"]
    result = family_irr_poly(parse_element(ring, "1"))
    kinds = [m.verdict.kind for m in result.members]
    assert kinds[-2:] == ["reducible", "reducible"]


def test_family_poly_over_z():
    ring = REGISTRY["Z[X]"]
    result = family_irr_poly(parse_element(ring, "X^2-2"))
    assert all(m.verdict.kind == "irreducible" for m in result.members)
    assert result.name == "irr_ZX"


def test_family_poly_rejects_other_rings():
    ring = parse_ring("Z/5[X]")
    with pytest.raises(FamilyError):
        family_irr_poly(parse_element(ring, "X"))


# ---------------------------------------------------------------------------
# the rational family
# ---------------------------------------------------------------------------

def test_q_field_smallest_instance():
    member = family_q_field(2).members[0]
    assert member.quiddity.texts() == ["5", "3/5", "3", "2", "4/5"]
    assert int(member.quiddity.sign) == -1
    assert member.verdict.kind == "irreducible"


def test_q_field_next_instance_shape():
    member = family_q_field(3).members[0]
    assert member.quiddity.texts() == ["7", "4/7", "3", "2", "2", "6/7"]


def test_q_field_batch():
    for n in range(2, 21):
        member = family_q_field(n).members[0]
        assert member.quiddity.size == n + 3
        assert member.verdict.kind == "irreducible"


def test_q_field_domain():
    with pytest.raises(FamilyError):
        family_q_field(1)


# ---------------------------------------------------------------------------
# the quartic-root family
# ---------------------------------------------------------------------------

def test_zeta8_embedding_identities():
    ring = zeta8_ring()
    s = parse_element(ring, "X - X^3")
    i_s = parse_element(ring, "X + X^3")
    assert s * s == parse_element(ring, "2")
    assert i_s * i_s == parse_element(ring, "-2")


def test_zeta8_sizes_and_verdicts():
    for l in (1, 2, 3):
        member = family_zeta8(l).members[0]
        assert member.quiddity.size == 4 * l + 8
        assert member.verdict.kind == "irreducible"


def test_zeta8_domain():
    with pytest.raises(FamilyError):
        family_zeta8(0)


# ---------------------------------------------------------------------------
# CLI-style dispatch
# ---------------------------------------------------------------------------

def test_generate_family_dispatch():
    assert generate_family("irr_Z", {"a": "7"}).members[0].quiddity.size == 3
    assert generate_family("q_field", {"n": "2"}).members[0].quiddity.size == 5
    r = generate_family("irr_Z2X", {"P": "X^2+X"})
    assert r.ring.expr() == "Z/2[X]"
    with pytest.raises(FamilyError):
        generate_family("irr_Z", {})
    with pytest.raises(FamilyError):
        generate_family("nope", {})


# ---------------------------------------------------------------------------
# unboundedness criteria
# ---------------------------------------------------------------------------

def test_criteria_nilpotent_example():
    report = unboundedness_criteria(parse_ring("Z[Y]/(Y^2)"))
    assert "has_nilpotent" in report.flags
    assert report.conclusion == "polynomial_ring_unbounded"
    assert report.witnesses["has_nilpotent"] == {"element": "Y", "power": 2}


def test_criteria_decomposable_example():
    report = unboundedness_criteria(parse_ring("Z*Z/2"))
    assert "decomposable" in report.flags
    assert report.conclusion == "polynomial_ring_unbounded"
    assert report.witnesses["decomposable"]["idempotent"] == "(1, 0)"


def test_criteria_extra_unit_example():
    ring = parse_ring("Z[Y]/(Y^2+Y+1)")
    report = unboundedness_criteria(ring)
    assert "extra_unit" in report.flags
    wit = report.witnesses["extra_unit"]
    u = parse_element(ring, wit["unit"])
    v = parse_element(ring, wit["inverse"])
    assert u * v == parse_element(ring, "1")
    assert u not in (parse_element(ring, "1"), parse_element(ring, "-1"))


def test_criteria_characteristic_example():
    report = unboundedness_criteria(REGISTRY["Z/4"])
    assert "char_not_in_023" in report.flags
    assert report.witnesses["char_not_in_023"] == {"characteristic": 4}
    assert report.conclusion == "polynomial_ring_unbounded"


def test_criteria_bounded_known_for_two_and_three_element_rings():
    for expr in ("Z/2", "Z/3"):
        report = unboundedness_criteria(REGISTRY[expr])
        assert report.flags == ()
        assert report.conclusion == "bounded_known"


def test_criteria_undecided_for_integers_and_their_polynomials():
    for expr in ("Z", "Z[X]"):
        report = unboundedness_criteria(parse_ring(expr))
        assert report.flags == ()
        assert report.conclusion == "undecided"


def test_criteria_flags_speak_about_polynomial_extension_only():
    # the ring itself still has a finite computed value even when flagged
    report = unboundedness_criteria(REGISTRY["Z/4"])
    assert report.conclusion == "polynomial_ring_unbounded"
    assert compute_ell(REGISTRY["Z/4"]).ell == 4
    json_payload = report.to_json()
    assert json_payload["about"].startswith("polynomial rings over")


def test_criteria_witnesses_reverify(rng):
    for expr in ("Z/4", "Z/6", "Z[Y]/(Y^2)", "Q", "Z*Z/2"):
        ring = parse_ring(expr)
        report = unboundedness_criteria(ring)
        one = Element(ring, ring.one)
        zero = Element(ring, ring.zero)
        for flag in report.flags:
            wit = report.witnesses[flag]
            if flag == "has_nilpotent":
                w = parse_element(ring, wit["element"])
                assert w != zero and w ** wit["power"] == zero
            elif flag == "decomposable":
                e = parse_element(ring, wit["idempotent"])
                assert e * e == e and e not in (zero, one)
            elif flag == "extra_unit":
                u = parse_element(ring, wit["unit"])
                v = parse_element(ring, wit["inverse"])
                assert u * v == one
