"""Shared fixtures: a ring registry and random generators for tests."""

import random

import pytest

from quiddity import (
    Element,
    FractionRing,
    IntegerRing,
    ModIntRing,
    PolynomialRing,
    ProductRing,
    QuiddityTuple,
    QuotientRing,
    parse_ring,
    verify_tuple,
)

REGISTRY_EXPRS = [
    "Z",
    "Q",
    "Z/2",
    "Z/3",
    "Z/4",
    "Z/5",
    "Z/6",
    "Z[X]",
    "Z/2[X]",
    "Z/3[X]",
    "Z[X]/(X^2+1)",
    "Z[X]/(X^4+1)",
    "Z/2[X]/(X^2+X+1)",
    "Z/2*Z/3",
    "Z[X][Y]",
    "Frac(Z/5[t])",
    "Z[Y]/(Y^2)",
]

REGISTRY = {expr: parse_ring(expr) for expr in REGISTRY_EXPRS}

FINITE_EXPRS = [e for e, r in REGISTRY.items() if r.is_finite]


def random_payload(ring, rng, height=6, degree=2):
    if isinstance(ring, IntegerRing):
        return rng.randint(-height, height)
    if isinstance(ring, ModIntRing):
        return rng.randrange(ring.n)
    if isinstance(ring, PolynomialRing):
        deg = rng.randint(-1, degree)
        return ring.canonicalize(
            [random_payload(ring.base, rng, height, degree=0)
             for _ in range(deg + 1)])
    if isinstance(ring, QuotientRing):
        deg = rng.randint(-1, len(ring.modulus) - 2)
        return ring.canonicalize(
            [random_payload(ring.coeff_ring, rng, height, degree=0)
             for _ in range(deg + 1)])
    if isinstance(ring, FractionRing):
        num = random_payload(ring.base, rng, height, degree)
        while True:
            den = random_payload(ring.base, rng, height, degree)
            if den != ring.base.zero:
                return ring.canonicalize((num, den))
    if isinstance(ring, ProductRing):
        return (random_payload(ring.left, rng, height, degree),
                random_payload(ring.right, rng, height, degree))
    raise AssertionError(f"no generator for {ring.expr()}")


def random_element(ring, rng, height=6, degree=2) -> Element:
    return Element(ring, random_payload(ring, rng, height, degree))


def random_entries(ring, rng, n, height=6, degree=2):
    return tuple(random_element(ring, rng, height, degree) for _ in range(n))


def random_quiddity(ring, rng, n, tries=4000) -> QuiddityTuple:
    """Random verified size-n solution over a finite ring.

    Rejection-samples prefixes until K(d_1..d_{n-2}) is a sign, then the
    last two entries are forced; verified with the full matrix product.
    """
    assert ring.is_finite and n >= 3
    elems = list(ring.elements())
    one, minus_one = ring.one, ring.minus_one
    for _ in range(tries):
        prefix = [rng.choice(elems) for _ in range(n - 2)]
        k1m2, k1m1 = ring.zero, one
        for a in prefix:
            k1m2, k1m1 = k1m1, ring.sub(ring.mul(a, k1m1), k1m2)
        if k1m1 == one:
            eps = -1
        elif k1m1 == minus_one:
            eps = 1
        else:
            continue
        k2m2, k2m1 = ring.zero, one
        for a in prefix[1:]:
            k2m2, k2m1 = k2m1, ring.sub(ring.mul(a, k2m1), k2m2)
        d_n1 = ring.neg(k1m2) if eps == 1 else k1m2
        d_n = ring.neg(k2m1) if eps == 1 else k2m1
        entries = tuple(Element(ring, p) for p in prefix + [d_n1, d_n])
        qt = verify_tuple(ring, entries)
        assert qt is not None, "closed-form completion must verify"
        return qt
    raise AssertionError(f"no random solution found over {ring.expr()}")


@pytest.fixture
def rng():
    return random.Random(20260810)
