"""Parsing for ring expressions and element literals.

Ring grammar (ASCII):

    ring := "Z" | "Q" | "Z/" nat | ring "[" ident "]"
          | ring "[" ident "]/(" poly ")" | "Frac(" ring ")" | ring "*" ring

with parentheses for grouping; "Q" is sugar for Frac(Z).  The postfix
constructors bind tighter than "*", so Z/2*Z/3[t] is Z/2 * (Z/3[t]).

Element literals are arithmetic expressions over integers and the declared
variables, with "^" powers, "*" products, "/" where division is exact
(fraction fields), unary minus, and product-ring elements "(e1, e2)".
"""

from __future__ import annotations

from typing import Any, Optional

from .rings import (
    Element,
    FractionRing,
    IntegerRing,
    ModIntRing,
    PolynomialRing,
    ProductRing,
    QuotientRing,
    Ring,
    RingConstructionError,
    INTEGERS,
    RATIONALS,
)


class RingSyntaxError(ValueError):
    """Syntax error in a ring expression or element literal."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


_SYMBOLS = set("+-*/^()[],")
_RESERVED = {"Z", "Q", "Frac"}


def _tokenize(text: str):
    tokens = []
    i = 0
    while i < len(text):
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        if ch.isdigit():
            j = i
            while j < len(text) and text[j].isdigit():
                j += 1
            tokens.append(("int", int(text[i:j]), i))
            i = j
            continue
        if ch.isalpha() or ch == "_":
            j = i
            while j < len(text) and (text[j].isalnum() or text[j] == "_"):
                j += 1
            tokens.append(("ident", text[i:j], i))
            i = j
            continue
        if ch in _SYMBOLS:
            tokens.append(("sym", ch, i))
            i += 1
            continue
        raise RingSyntaxError(f"unexpected character {ch!r}", i)
    tokens.append(("end", None, len(text)))
    return tokens


class _Cursor:
    def __init__(self, tokens):
        self.tokens = tokens
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def next(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect_sym(self, ch):
        kind, value, pos = self.peek()
        if kind != "sym" or value != ch:
            raise RingSyntaxError(f"expected {ch!r}", pos)
        return self.next()

    @property
    def pos(self):
        return self.peek()[2]


# ---------------------------------------------------------------------------
# element expressions
# ---------------------------------------------------------------------------

def _parse_expr(cur: _Cursor):
    node = _parse_term(cur)
    while True:
        kind, value, _ = cur.peek()
        if kind == "sym" and value in "+-":
            cur.next()
            rhs = _parse_term(cur)
            node = (("add" if value == "+" else "sub"), node, rhs)
        else:
            return node


def _parse_term(cur: _Cursor):
    node = _parse_unary(cur)
    while True:
        kind, value, _ = cur.peek()
        if kind == "sym" and value in "*/":
            cur.next()
            rhs = _parse_unary(cur)
            node = (("mul" if value == "*" else "div"), node, rhs)
        else:
            return node


def _parse_unary(cur: _Cursor):
    kind, value, _ = cur.peek()
    if kind == "sym" and value == "-":
        cur.next()
        return ("neg", _parse_unary(cur))
    return _parse_power(cur)


def _parse_power(cur: _Cursor):
    node = _parse_primary(cur)
    kind, value, pos = cur.peek()
    if kind == "sym" and value == "^":
        cur.next()
        kind, value, pos = cur.peek()
        if kind != "int":
            raise RingSyntaxError("exponent must be a literal integer", pos)
        cur.next()
        node = ("pow", node, value)
    return node


def _parse_primary(cur: _Cursor):
    kind, value, pos = cur.next()
    if kind == "int":
        return ("int", value)
    if kind == "ident":
        return ("var", value, pos)
    if kind == "sym" and value == "(":
        first = _parse_expr(cur)
        kind, value, pos = cur.peek()
        if kind == "sym" and value == ",":
            cur.next()
            second = _parse_expr(cur)
            cur.expect_sym(")")
            return ("pair", first, second)
        cur.expect_sym(")")
        return first
    raise RingSyntaxError("expected a number, variable or '('", pos)


def _inner_ring(ring: Ring) -> Optional[Ring]:
    if isinstance(ring, PolynomialRing):
        return ring.base
    if isinstance(ring, QuotientRing):
        return ring.coeff_ring
    if isinstance(ring, FractionRing):
        return ring.base
    return None


def _lift(ring: Ring, inner_payload) -> Any:
    if isinstance(ring, (PolynomialRing, QuotientRing)):
        return ring.canonicalize((inner_payload,))
    if isinstance(ring, FractionRing):
        return (inner_payload, ring.base.one)
    raise AssertionError("no lift for this ring")


def _eval(node, ring: Ring):
    op = node[0]
    if op == "int":
        return ring.from_int(node[1])
    if op == "var":
        name, pos = node[1], node[2]
        payload = _var_payload(ring, name)
        if payload is None:
            raise RingSyntaxError(
                f"unknown variable {name!r} in {ring.expr()}", pos)
        return payload
    if op == "neg":
        return ring.neg(_eval(node[1], ring))
    if op in ("add", "sub", "mul"):
        x = _eval(node[1], ring)
        y = _eval(node[2], ring)
        return getattr(ring, op)(x, y)
    if op == "div":
        x = _eval(node[1], ring)
        y = _eval(node[2], ring)
        inv = ring.try_inverse(y)
        if inv is None:
            raise RingConstructionError(
                f"{ring.format(y)} is not invertible in {ring.expr()}")
        return ring.mul(x, inv)
    if op == "pow":
        x = _eval(node[1], ring)
        acc, base, k = ring.one, x, node[2]
        while k:
            if k & 1:
                acc = ring.mul(acc, base)
            base = ring.mul(base, base)
            k >>= 1
        return acc
    if op == "pair":
        if isinstance(ring, ProductRing):
            return (_eval(node[1], ring.left), _eval(node[2], ring.right))
        inner = _inner_ring(ring)
        if inner is None:
            raise RingConstructionError(
                f"(e1, e2) literals need a product ring, not {ring.expr()}")
        return _lift(ring, _eval(node, inner))
    raise AssertionError(f"unhandled node {op}")


def _var_payload(ring: Ring, name: str):
    """Payload of a declared tower variable, or None."""
    if isinstance(ring, PolynomialRing):
        if name == ring.var:
            return (ring.base.zero, ring.base.one)
        below = _var_payload(ring.base, name)
        return None if below is None else ring.canonicalize((below,))
    if isinstance(ring, QuotientRing):
        below = _var_payload(ring.base, name)
        return None if below is None else ring.canonicalize(below)
    if isinstance(ring, FractionRing):
        below = _var_payload(ring.base, name)
        return None if below is None else (below, ring.base.one)
    return None


def parse_element(ring: Ring, text: str) -> Element:
    """Parse one element literal in the given ring."""
    cur = _Cursor(_tokenize(text))
    node = _parse_expr(cur)
    kind, _, pos = cur.peek()
    if kind != "end":
        raise RingSyntaxError("trailing input after element", pos)
    return Element(ring, ring.canonicalize(_eval(node, ring)))


def parse_tuple(ring: Ring, text: str) -> tuple:
    """Parse a comma-separated tuple of element literals."""
    cur = _Cursor(_tokenize(text))
    out = [Element(ring, ring.canonicalize(_eval(_parse_expr(cur), ring)))]
    while True:
        kind, value, pos = cur.peek()
        if kind == "end":
            return tuple(out)
        if kind == "sym" and value == ",":
            cur.next()
            out.append(Element(
                ring, ring.canonicalize(_eval(_parse_expr(cur), ring))))
        else:
            raise RingSyntaxError("expected ',' between tuple entries", pos)


# ---------------------------------------------------------------------------
# ring expressions
# ---------------------------------------------------------------------------

def _parse_ring_atom(cur: _Cursor) -> Ring:
    kind, value, pos = cur.next()
    if kind == "ident" and value == "Z":
        k2, v2, _ = cur.peek()
        if k2 == "sym" and v2 == "/":
            cur.next()
            k3, v3, p3 = cur.next()
            if k3 != "int":
                raise RingSyntaxError("expected a modulus after Z/", p3)
            if v3 < 2:
                raise RingConstructionError("modulus must be >= 2")
            return ModIntRing(v3)
        return INTEGERS
    if kind == "ident" and value == "Q":
        return RATIONALS
    if kind == "ident" and value == "Frac":
        cur.expect_sym("(")
        base = _parse_ring_expr(cur)
        cur.expect_sym(")")
        return FractionRing(base)
    if kind == "sym" and value == "(":
        ring = _parse_ring_expr(cur)
        cur.expect_sym(")")
        return ring
    raise RingSyntaxError("expected a ring (Z, Q, Z/n, Frac(...), '(')", pos)


def _parse_ring_postfix(cur: _Cursor) -> Ring:
    ring = _parse_ring_atom(cur)
    while True:
        kind, value, _ = cur.peek()
        if not (kind == "sym" and value == "["):
            return ring
        cur.next()
        k2, var, p2 = cur.next()
        if k2 != "ident":
            raise RingSyntaxError("expected a variable name", p2)
        if var in _RESERVED:
            raise RingConstructionError(f"{var!r} is reserved")
        cur.expect_sym("]")
        poly_ring = PolynomialRing(ring, var)
        kind, value, _ = cur.peek()
        if kind == "sym" and value == "/":
            cur.next()
            cur.expect_sym("(")
            node = _parse_expr(cur)
            cur.expect_sym(")")
            modulus = poly_ring.canonicalize(_eval(node, poly_ring))
            ring = QuotientRing(poly_ring, modulus)
        else:
            ring = poly_ring


def _parse_ring_expr(cur: _Cursor) -> Ring:
    ring = _parse_ring_postfix(cur)
    while True:
        kind, value, _ = cur.peek()
        if kind == "sym" and value == "*":
            cur.next()
            rhs = _parse_ring_postfix(cur)
            ring = ProductRing(ring, rhs)
        else:
            return ring


def parse_ring(text: str) -> Ring:
    """Parse a ring expression; raises RingSyntaxError / RingConstructionError."""
    cur = _Cursor(_tokenize(text))
    ring = _parse_ring_expr(cur)
    kind, _, pos = cur.peek()
    if kind != "end":
        raise RingSyntaxError("trailing input after ring expression", pos)
    return ring
