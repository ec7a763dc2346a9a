"""Ring tower: arithmetic axioms, canonical forms, scans and maps."""

import random

import pytest
from hypothesis import given, settings, strategies as st

from quiddity import (
    Element,
    FractionRing,
    HomomorphismError,
    InfiniteRingError,
    IntegerRing,
    ModIntRing,
    PolynomialRing,
    ProductRing,
    QuotientRing,
    RingConstructionError,
    RingMap,
    RingMismatchError,
    RingSyntaxError,
    apply_ring_map,
    parse_element,
    parse_ring,
    parse_tuple,
    unit_and_nilpotent_scan,
    INTEGERS,
    RATIONALS,
)

from conftest import REGISTRY, REGISTRY_EXPRS, random_payload


# ---------------------------------------------------------------------------
# parsing
# ---------------------------------------------------------------------------

def test_parse_modint():
    ring = parse_ring("Z/6")
    assert isinstance(ring, ModIntRing) and ring.n == 6


def test_parse_gaussian_quotient():
    ring = parse_ring("Z[X]/(X^2+1)")
    assert isinstance(ring, QuotientRing)
    assert ring.modulus == (1, 0, 1)
    x = parse_element(ring, "X")
    assert x * x == parse_element(ring, "-1")


def test_parse_fraction_over_non_domain_rejected():
    with pytest.raises(RingConstructionError):
        parse_ring("Frac(Z/4[t])")


def test_parse_rejects_non_monic_modulus():
    with pytest.raises(RingConstructionError):
        parse_ring("Z[X]/(2*X+1)")
    with pytest.raises(RingConstructionError):
        parse_ring("Z[X]/(3)")


def test_parse_syntax_error_carries_position():
    with pytest.raises(RingSyntaxError) as err:
        parse_ring("Z[X]/(X^2+1")
    assert err.value.position == 11


def test_parse_postfix_binds_tighter_than_product():
    ring = parse_ring("Z/2*Z/3[t]")
    assert isinstance(ring, ProductRing)
    assert isinstance(ring.right, PolynomialRing)


def test_q_is_fraction_field_of_z():
    assert parse_ring("Q") == FractionRing(INTEGERS)


def test_ring_expr_round_trip():
    for expr in REGISTRY_EXPRS:
        ring = REGISTRY[expr]
        assert parse_ring(ring.expr()) == ring


def test_element_round_trip_all_registry(rng):
    for ring in REGISTRY.values():
        for _ in range(60):
            p = ring.canonicalize(random_payload(ring, rng))
            assert parse_element(ring, ring.format(p)).payload == p


def test_parse_tuple_with_product_elements():
    ring = parse_ring("Z/2*Z/3")
    t = parse_tuple(ring, "(1, 2), (0, 1)")
    assert [str(e) for e in t] == ["(1, 2)", "(0, 1)"]


# ---------------------------------------------------------------------------
# arithmetic
# ---------------------------------------------------------------------------

@st.composite
def ring_and_elements(draw, count=3):
    expr = draw(st.sampled_from(REGISTRY_EXPRS))
    ring = REGISTRY[expr]
    seed = draw(st.integers(min_value=0, max_value=2 ** 30))
    rng = random.Random(seed)
    return ring, [Element(ring, random_payload(ring, rng))
                  for _ in range(count)]


@given(ring_and_elements())
@settings(max_examples=300, deadline=None)
def test_ring_axioms(data):
    ring, (x, y, z) = data
    zero = Element(ring, ring.zero)
    one = Element(ring, ring.one)
    assert (x + y) + z == x + (y + z)
    assert (x * y) * z == x * (y * z)
    assert x + y == y + x
    assert x * y == y * x
    assert x * (y + z) == x * y + x * z
    assert x + zero == x
    assert x * one == x
    assert x + (-x) == zero


@given(ring_and_elements(count=1))
@settings(max_examples=200, deadline=None)
def test_canonicalization_idempotent(data):
    ring, (x,) = data
    assert ring.canonicalize(x.payload) == x.payload


def test_quotient_defining_relation():
    ring = parse_ring("Z[X]/(X^4+1)")
    s = parse_element(ring, "X - X^3")
    i_s = parse_element(ring, "X + X^3")
    assert s * s == parse_element(ring, "2")
    assert i_s * i_s == parse_element(ring, "-2")


def test_quotient_soundness_lift_reduce(rng):
    quot = parse_ring("Z[X]/(X^4+1)")
    poly = quot.base
    for _ in range(300):
        p = poly.canonicalize([rng.randint(-9, 9) for _ in range(rng.randint(0, 7))])
        reduced = quot.canonicalize(p)
        diff = poly.sub(p, reduced)
        # the difference must be an exact multiple of the modulus
        if diff == ():
            continue
        from quiddity.rings import _pdivmod_field
        q, r = _pdivmod_field(poly.base, diff, quot.modulus)
        assert r == ()


def test_fraction_identity_case():
    q = RATIONALS
    assert parse_element(q, "3/5") + parse_element(q, "2/5") == parse_element(q, "1")


def test_fraction_soundness_cross_multiplication(rng):
    for expr in ("Q", "Frac(Z/5[t])"):
        ring = REGISTRY.get(expr) or parse_ring(expr)
        base = ring.base
        for _ in range(200):
            a = random_payload(base, rng)
            c = random_payload(base, rng)
            while True:
                b = random_payload(base, rng)
                if b != base.zero:
                    break
            while True:
                d = random_payload(base, rng)
                if d != base.zero:
                    break
            lhs = ring.canonicalize((a, b)) == ring.canonicalize((c, d))
            rhs = base.mul(a, d) == base.mul(c, b)
            assert lhs == rhs


def test_mixed_ring_operands_rejected():
    with pytest.raises(RingMismatchError):
        Element(INTEGERS, 1) + Element(REGISTRY["Z/3"], 1)


# ---------------------------------------------------------------------------
# characteristic and cardinality
# ---------------------------------------------------------------------------

@pytest.mark.parametrize("expr,char", [
    ("Z/6", 6), ("Z[X]", 0), ("Z/2*Z/3", 6), ("Q", 0),
    ("Z/2[X]", 2), ("Z[X]/(X^4+1)", 0), ("Frac(Z/5[t])", 5),
])
def test_characteristic_values(expr, char):
    assert parse_ring(expr).characteristic() == char


def test_characteristic_brute_force_cross_check():
    for expr in REGISTRY_EXPRS:
        ring = REGISTRY[expr]
        char = ring.characteristic()
        acc = ring.zero
        limit = ring.cardinality() or 4 * max(char, 1)
        hits = []
        for n in range(1, limit + 1):
            acc = ring.add(acc, ring.one)
            if acc == ring.zero:
                hits.append(n)
        if char == 0:
            assert not hits
        else:
            assert hits == [k for k in range(1, limit + 1) if k % char == 0]


@pytest.mark.parametrize("expr,card", [
    ("Z/3", 3), ("Z/2[X]/(X^2+X+1)", 4), ("Z/2*Z/3", 6),
    ("Z", None), ("Z[X]", None), ("Q", None), ("Frac(Z/5[t])", None),
])
def test_cardinality(expr, card):
    assert parse_ring(expr).cardinality() == card


def test_enumerate_elements_in_encoding_order():
    for expr in ("Z/3", "Z/2[X]/(X^2+X+1)", "Z/2*Z/3", "Z/6"):
        ring = REGISTRY[expr]
        elems = list(ring.elements())
        assert len(elems) == ring.cardinality()
        assert len(set(elems)) == len(elems)
        encs = [ring.encode(p) for p in elems]
        assert encs == sorted(encs)


def test_enumerate_infinite_rejected():
    with pytest.raises(InfiniteRingError):
        list(REGISTRY["Z[X]"].elements())


# ---------------------------------------------------------------------------
# encodings
# ---------------------------------------------------------------------------

def test_integer_encoding_order():
    enc = INTEGERS.encode
    values = [0, 1, -1, 2, -2, 3, -3, 17, -17]
    encs = [enc(v) for v in values]
    assert encs == sorted(encs)


def test_polynomial_encoding_degree_major():
    ring = REGISTRY["Z[X]"]
    x = ring.canonicalize((0, 1))
    x2 = ring.canonicalize((0, 0, 1))
    assert ring.encode(x) < ring.encode(x2)


def test_encoding_injective(rng):
    for ring in REGISTRY.values():
        seen = {}
        for _ in range(400):
            p = ring.canonicalize(random_payload(ring, rng))
            e = ring.encode(p)
            if e in seen:
                assert seen[e] == p
            seen[e] = p


# ---------------------------------------------------------------------------
# scans
# ---------------------------------------------------------------------------

def test_scan_z4_has_nilpotent_two():
    scan = unit_and_nilpotent_scan(REGISTRY["Z/4"])
    ring = REGISTRY["Z/4"]
    assert (Element(ring, 2), 2) in scan.nilpotents
    assert scan.nilpotents_status == "complete"


def test_scan_eisenstein_quotient_extra_unit():
    ring = parse_ring("Z[Y]/(Y^2+Y+1)")
    scan = unit_and_nilpotent_scan(ring)
    minus_y = parse_element(ring, "-Y")
    y_plus_1 = parse_element(ring, "Y+1")
    assert (minus_y, y_plus_1) in scan.units
    assert minus_y * y_plus_1 == parse_element(ring, "1")


def test_scan_integers_structural():
    scan = unit_and_nilpotent_scan(INTEGERS)
    units = {(str(u), str(v)) for u, v in scan.units}
    assert units == {("1", "1"), ("-1", "-1")}
    assert scan.units_status == "complete"
    assert scan.nilpotents == ()
    assert {str(e) for e in scan.idempotents} == {"0", "1"}


def test_scan_undecided_is_marked_not_silent():
    ring = parse_ring("Z[Y]/(Y^3+Y+1)")
    scan = unit_and_nilpotent_scan(ring)
    # nothing found by the bounded search, and nothing may be claimed
    assert scan.nilpotents_status in ("undecided", "witnesses")
    if scan.nilpotents_status == "undecided":
        assert scan.nilpotents == ()


def test_scan_finite_units_complete(rng):
    for expr in ("Z/4", "Z/6", "Z/2[X]/(X^2+X+1)"):
        ring = REGISTRY[expr]
        scan = unit_and_nilpotent_scan(ring)
        one = Element(ring, ring.one)
        units = {u.payload for u, _ in scan.units}
        for p in ring.elements():
            invertible = any(ring.mul(p, q) == ring.one
                             for q in ring.elements())
            assert (p in units) == invertible
        for u, v in scan.units:
            assert u * v == one


# ---------------------------------------------------------------------------
# ring maps
# ---------------------------------------------------------------------------

def test_crt_map_example():
    z6 = REGISTRY["Z/6"]
    p23 = REGISTRY["Z/2*Z/3"]
    crt = RingMap.crt(z6, p23)
    t = parse_tuple(z6, "2,1,2,1")
    mapped = apply_ring_map(t, crt)
    assert [str(e) for e in mapped] == ["(0, 2)", "(1, 1)", "(0, 2)", "(1, 1)"]


def test_identity_map_keeps_tuple():
    z6 = REGISTRY["Z/6"]
    ident = RingMap.identity(z6)
    t = parse_tuple(z6, "4,5,0")
    assert apply_ring_map(t, ident) == tuple(t)


def test_non_unital_table_rejected():
    z2 = REGISTRY["Z/2"]
    with pytest.raises(HomomorphismError):
        RingMap(z2, z2, {0: 0, 1: 0})


def test_non_additive_table_rejected_with_pair():
    z4 = REGISTRY["Z/4"]
    table = {0: 0, 1: 1, 2: 3, 3: 3}
    with pytest.raises(HomomorphismError):
        RingMap(z4, z4, table)


def test_crt_map_verifies_homomorphism_both_ways():
    z6 = REGISTRY["Z/6"]
    p23 = REGISTRY["Z/2*Z/3"]
    crt = RingMap.crt(z6, p23)
    inv = crt.inverse()
    for x in z6.elements():
        assert inv.apply_payload(crt.apply_payload(x)) == x
