"""Exhaustive enumeration over finite rings and bounded searches elsewhere.

Finite rings get a depth-first search over tuple entries, pruned by a
reachability table over SL2(A): a prefix whose partial word cannot be
completed to +-Id in the remaining number of steps is cut.  Irreducible
enumeration adds segment pruning: a prefix containing a contiguous segment
of length k <= n-3 with continuant +-1 only completes to reducible tuples.

The maximal irreducible size is computed by enumerating every size up to
the finite-ring bound (|SL2(A)|/(2|A|)+2, or |SL2(A)|/|A|+2 in
characteristic 2), which no irreducible solution can exceed.

Over Z, Q and polynomial/quotient towers, ``bounded_search`` enumerates a
finite coefficient box exhaustively.  It walks prefixes of length n-2 and
uses the closed tail form of a solution: the word is +-Id exactly when
K(d_1..d_{n-2}) = -eps, d_{n-1} = -eps*K(d_1..d_{n-3}) and
d_n = -eps*K(d_2..d_{n-2}), so the last two entries are determined and
only prefixes with continuant +-1 survive.  Every candidate is still
verified by a full matrix product before it is reported.
"""

from __future__ import annotations

import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Dict, List, Optional, Tuple

from .core import (
    QuiddityTuple,
    Sign,
    _mat_id,
    _mat_mul,
    _mat_neg_id,
    _n_mat,
    _word_sign,
    canonical_form,
)
from .reduction import InternalCheckError, find_reduction
from .rings import (
    FractionRing,
    IntegerRing,
    InfiniteRingError,
    ModIntRing,
    PolynomialRing,
    QuotientRing,
    Ring,
    small_elements,
)

DEFAULT_BUDGET = 10 ** 8


class BudgetExceededError(RuntimeError):
    """A bounded search was refused or aborted; carries the offending count."""

    def __init__(self, message: str, count: int):
        super().__init__(message)
        self.count = count


# ---------------------------------------------------------------------------
# SL2 over a finite ring
# ---------------------------------------------------------------------------

class _Sl2Data:
    """Group elements, the left-multiplication tables by N(a), reachability."""

    def __init__(self, ring: Ring):
        self.ring = ring
        elems = list(ring.elements())
        self.ring_elems = elems
        one = ring.one
        zero = ring.zero
        group = []
        index = {}
        # brute force over |A|^4 with the zero top row filtered early
        for a in elems:
            for b in elems:
                if a == zero and b == zero:
                    continue
                for c in elems:
                    for d in elems:
                        if ring.sub(ring.mul(a, d), ring.mul(b, c)) == one:
                            quad = (a, b, c, d)
                            index[quad] = len(group)
                            group.append(quad)
        self.group = group
        self.index = index
        self.id_idx = index[_mat_id(ring)]
        self.neg_idx = index[_mat_neg_id(ring)]
        self.targets = {self.id_idx, self.neg_idx}
        self.trans = []
        for a in elems:
            na = _n_mat(ring, a)
            self.trans.append([index[_mat_mul(ring, na, g)] for g in group])
        self._reach: List[List[bool]] = []

    def reach(self, r: int) -> List[bool]:
        """Can each group element be completed to +-Id in exactly r steps?"""
        while len(self._reach) <= r:
            if not self._reach:
                row = [False] * len(self.group)
                for t in self.targets:
                    row[t] = True
                self._reach.append(row)
                continue
            prev = self._reach[-1]
            row = [False] * len(self.group)
            for g in range(len(self.group)):
                for t in self.trans:
                    if prev[t[g]]:
                        row[g] = True
                        break
            self._reach.append(row)
        return self._reach[r]


@lru_cache(maxsize=None)
def _sl2_data(ring: Ring) -> _Sl2Data:
    if not ring.is_finite:
        raise InfiniteRingError(f"{ring.expr()} is not finite")
    return _Sl2Data(ring)


def sl2_order(ring: Ring) -> int:
    """|SL2(A)| by brute force over |A|^4 matrices."""
    return len(_sl2_data(ring).group)


def ell_upper_bound(ring: Ring) -> int:
    """The finite-ring size bound; integer division is checked exact."""
    order = sl2_order(ring)
    card = ring.cardinality()
    denom = card if ring.characteristic() == 2 else 2 * card
    if order % denom:
        raise InternalCheckError(
            f"|SL2| = {order} is not divisible by {denom}")
    return order // denom + 2


def reachability_table(ring: Ring, max_steps: int) -> List[List[bool]]:
    """Rows r = 0 .. max_steps of the completion table, indexed by sl2_elements."""
    data = _sl2_data(ring)
    data.reach(max_steps)
    return [list(data._reach[r]) for r in range(max_steps + 1)]


def sl2_elements(ring: Ring) -> List[tuple]:
    """The group elements in the index order used by reachability_table."""
    return list(_sl2_data(ring).group)


# ---------------------------------------------------------------------------
# quiddity enumeration (finite rings)
# ---------------------------------------------------------------------------

def _canonical_key(ring: Ring, payloads) -> tuple:
    return tuple(ring.encode(p) for p in payloads)


def _is_canonical(ring: Ring, payloads) -> bool:
    key = _canonical_key(ring, payloads)
    n = len(payloads)
    rev = payloads[::-1]
    for base in (payloads, rev):
        for r in range(n):
            if _canonical_key(ring, base[r:] + base[:r]) < key:
                return False
    return True


def _canonical_payloads(ring: Ring, payloads) -> tuple:
    n = len(payloads)
    best = None
    best_key = None
    for base in (payloads, payloads[::-1]):
        for r in range(n):
            cand = base[r:] + base[:r]
            key = _canonical_key(ring, cand)
            if best_key is None or key < best_key:
                best, best_key = cand, key
    return best


def _quiddity_shard(ring: Ring, n: int, first_index: Optional[int],
                    canonical_only: bool) -> List[tuple]:
    data = _sl2_data(ring)
    elems = data.ring_elems
    trans = data.trans
    targets = data.targets
    reach = [data.reach(r) for r in range(n + 1)]
    out: List[tuple] = []
    path: List = []

    def rec(depth: int, g: int):
        if depth == n:
            if g in targets:
                t = tuple(path)
                if not canonical_only or _is_canonical(ring, t):
                    out.append(t)
            return
        rnext = reach[n - depth - 1]
        for i, a in enumerate(elems):
            h = trans[i][g]
            if rnext[h]:
                path.append(a)
                rec(depth + 1, h)
                path.pop()

    if first_index is None:
        rec(0, data.id_idx)
    else:
        a = elems[first_index]
        h = trans[first_index][data.id_idx]
        if reach[n - 1][h]:
            path.append(a)
            rec(1, h)
            path.pop()
    return out


def _quiddity_shard_star(args):
    return _quiddity_shard(*args)


def enumerate_quiddities(ring: Ring, n: int, canonical_only: bool = False,
                         jobs: int = 1) -> List[QuiddityTuple]:
    """All size-n solutions (or canonical class representatives), in order."""
    if n < 1:
        raise ValueError("size must be >= 1")
    data = _sl2_data(ring)
    if jobs > 1 and n > 1:
        shards = [(ring, n, i, canonical_only)
                  for i in range(len(data.ring_elems))]
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_quiddity_shard_star, shards))
        tuples = [t for shard in results for t in shard]
    else:
        tuples = _quiddity_shard(ring, n, None, canonical_only)
    out = []
    for t in tuples:
        sign = _word_sign(ring, t)
        if sign is None:
            raise InternalCheckError("enumerated tuple failed verification")
        out.append(QuiddityTuple.from_payloads(ring, t, sign))
    return out


def count_quiddities_dp(ring: Ring, n: int) -> int:
    """Transfer-matrix count of size-n solutions over a finite ring."""
    data = _sl2_data(ring)
    counts = [0] * len(data.group)
    counts[data.id_idx] = 1
    for _ in range(n):
        nxt = [0] * len(counts)
        for g, c in enumerate(counts):
            if c:
                for t in data.trans:
                    nxt[t[g]] += c
        counts = nxt
    return sum(counts[i] for i in data.targets)


# ---------------------------------------------------------------------------
# irreducible enumeration (finite rings)
# ---------------------------------------------------------------------------

def _irreducible_shard(ring: Ring, n: int,
                       first_index: Optional[int]) -> List[tuple]:
    if n < 3:
        raise ValueError("irreducible solutions have size >= 3")
    data = _sl2_data(ring)
    elems = data.ring_elems
    trans = data.trans
    targets = data.targets
    reach = [data.reach(r) for r in range(n + 1)]
    max_seg = n - 3
    one, minus_one = ring.one, ring.minus_one
    mul, sub = ring.mul, ring.sub
    out: List[tuple] = []
    path: List = []

    def rec(depth: int, g: int, segs: tuple):
        if depth == n:
            if g in targets:
                t = tuple(path)
                if _is_canonical(ring, t) and _full_check_irreducible(ring, t):
                    out.append(t)
            return
        rnext = reach[n - depth - 1]
        for i, a in enumerate(elems):
            h = trans[i][g]
            if not rnext[h]:
                continue
            if max_seg >= 1 and (a == one or a == minus_one):
                continue  # a length-1 segment with continuant +-1
            # grow tracked segments whose extension stays within length n-3
            new_segs = []
            ok = True
            for km2, km1 in (segs[-(max_seg - 1):] if max_seg >= 2 else ()):
                k = sub(mul(a, km1), km2)
                if k == one or k == minus_one:
                    ok = False
                    break
                new_segs.append((km1, k))
            if not ok:
                continue
            if max_seg >= 1:
                new_segs.append((one, a))
            path.append(a)
            rec(depth + 1, h, tuple(new_segs))
            path.pop()

    if first_index is None:
        rec(0, data.id_idx, ())
    else:
        a = elems[first_index]
        if max_seg >= 1 and (a == one or a == minus_one):
            return out
        h = trans[first_index][data.id_idx]
        if reach[n - 1][h]:
            path.append(a)
            segs = ((one, a),) if max_seg >= 1 else ()
            rec(1, h, segs)
            path.pop()
    return out


def _full_check_irreducible(ring: Ring, payloads) -> bool:
    sign = _word_sign(ring, payloads)
    if sign is None:
        raise InternalCheckError("irreducible candidate is not a solution")
    qt = QuiddityTuple.from_payloads(ring, payloads, sign)
    return find_reduction(qt) is None


def _irreducible_shard_star(args):
    return _irreducible_shard(*args)


def enumerate_irreducibles(ring: Ring, n: int, jobs: int = 1) -> List[QuiddityTuple]:
    """Canonical representatives of all irreducible classes of size n."""
    data = _sl2_data(ring)
    if jobs > 1:
        shards = [(ring, n, i) for i in range(len(data.ring_elems))]
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_irreducible_shard_star, shards))
        tuples = [t for shard in results for t in shard]
    else:
        tuples = _irreducible_shard(ring, n, None)
    out = []
    for t in tuples:
        sign = _word_sign(ring, t)
        out.append(QuiddityTuple.from_payloads(ring, t, sign))
    return out


# ---------------------------------------------------------------------------
# the maximal irreducible size
# ---------------------------------------------------------------------------

STOPPING_RULE = (
    "exact conditional on the finite-ring size bound "
    "|SL2(A)|/(2|A|)+2 (|SL2(A)|/|A|+2 in characteristic 2): "
    "enumeration was exhaustive for every size up to that bound")


@dataclass
class EllReport:
    """Exact maximal irreducible size over a finite ring."""

    ring: Ring
    sl2_order: int
    upper_bound: int
    lower_bound: int
    ell: int
    irreducibles_by_size: Dict[int, Tuple[QuiddityTuple, ...]]
    timing: float
    stopping_rule: str = STOPPING_RULE

    def to_json(self, with_timing: bool = False):
        payload = {
            "ring": self.ring.expr(),
            "sl2_order": self.sl2_order,
            "upper_bound": self.upper_bound,
            "lower_bound": self.lower_bound,
            "ell": self.ell,
            "irreducibles_by_size": {
                str(size): [qt.texts() for qt in tuples]
                for size, tuples in sorted(self.irreducibles_by_size.items())
            },
            "stopping_rule": self.stopping_rule,
        }
        if with_timing:
            payload["timing_seconds"] = self.timing
        return payload


def compute_ell(ring: Ring, jobs: int = 1) -> EllReport:
    """Enumerate every size up to the bound; ell is the last non-empty one."""
    start = time.perf_counter()
    upper = ell_upper_bound(ring)
    char = ring.characteristic()
    lower = 4 if char == 2 else max(4, char)
    by_size: Dict[int, Tuple[QuiddityTuple, ...]] = {}
    ell = 0
    for n in range(3, upper + 1):
        by_size[n] = tuple(enumerate_irreducibles(ring, n, jobs=jobs))
        if by_size[n]:
            ell = n
    if not (lower <= ell <= upper):
        raise InternalCheckError(
            f"computed maximal size {ell} escapes the bound sandwich "
            f"[{lower}, {upper}] over {ring.expr()}")
    by_size = {n: t for n, t in by_size.items() if n <= ell}
    if not by_size.get(ell):
        raise InternalCheckError("no irreducible solutions at the reported size")
    return EllReport(ring, sl2_order(ring), upper, lower, ell, by_size,
                     time.perf_counter() - start)


# ---------------------------------------------------------------------------
# bounded searches over infinite rings
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SearchBox:
    """A finite entry box: coefficient height and polynomial degree caps."""

    height: int = 3
    degree: int = 2
    max_size: Optional[int] = None

    def __post_init__(self):
        if self.height < 0 or self.degree < 0:
            raise ValueError("box bounds must be >= 0")
        if self.max_size is not None and self.max_size < 0:
            raise ValueError("box bounds must be >= 0")


def _box_supported(ring: Ring) -> bool:
    if isinstance(ring, (IntegerRing, ModIntRing)):
        return True
    if isinstance(ring, FractionRing):
        return isinstance(ring.base, IntegerRing)
    if isinstance(ring, PolynomialRing):
        return _box_supported(ring.base)
    if isinstance(ring, QuotientRing):
        return _box_supported(ring.base)
    return False


def bounded_search(ring: Ring, n: int, box: SearchBox,
                   budget: int = DEFAULT_BUDGET) -> List[QuiddityTuple]:
    """All irreducible solutions of size n with every entry in the box.

    Complete within the box only: entries outside it are never considered,
    so absence here is evidence, not proof, unless a theorem supplies the
    rest.  Walks prefixes of length n-2; the closed tail form makes the
    last two entries functions of the prefix.  Every candidate is verified
    by a full matrix product and an exact irreducibility decision before it
    is reported.  Exceeding the operation budget raises BudgetExceededError.
    """
    if not _box_supported(ring):
        raise ValueError(
            f"bounded search supports Z, Q and polynomial/quotient towers, "
            f"not {ring.expr()}")
    if n < 3:
        raise ValueError("bounded search enumerates sizes >= 3")
    if box.max_size is not None and n > box.max_size:
        raise ValueError(f"size {n} exceeds the box's max_size {box.max_size}")
    elems = small_elements(ring, box.height, box.degree)
    box_set = set(elems)
    for p in elems:
        if ring.neg(p) not in box_set:
            raise InternalCheckError("element box is not symmetric under negation")

    # guaranteed-visited shallow levels refuse hopeless boxes up front
    size = len(elems)
    shallow = sum(size ** j for j in range(1, min(n - 2, 3) + 1))
    if shallow > budget:
        raise BudgetExceededError(
            f"box with {size} entries needs at least {shallow} operations "
            f"at size {n}, over the budget of {budget}", shallow)

    one, minus_one = ring.one, ring.minus_one
    mul, sub, neg = ring.mul, ring.sub, ring.neg
    prefix_len = n - 2
    max_seg = n - 3
    ops = [0]
    found: Dict[tuple, QuiddityTuple] = {}
    path: List = []

    def close(k1_pair, k2_pair):
        # k1_pair = (K(d_1..d_{n-3}), K(d_1..d_{n-2})) at the full prefix
        k1_n3, k1_final = k1_pair
        if k1_final == one:
            eps = -1
        elif k1_final == minus_one:
            eps = 1
        else:
            return
        k2_final = k2_pair[1]  # K(d_2..d_{n-2}); stays K() = 1 when n = 3
        d_n1 = neg(k1_n3) if eps == 1 else k1_n3
        d_n = neg(k2_final) if eps == 1 else k2_final
        if d_n1 not in box_set or d_n not in box_set:
            return
        full = tuple(path) + (d_n1, d_n)
        sign = _word_sign(ring, full)
        if sign is None:
            raise InternalCheckError(
                "closed-form completion failed the matrix verification")
        qt = QuiddityTuple.from_payloads(ring, full, sign)
        if find_reduction(qt) is not None:
            return
        canon = _canonical_payloads(ring, full)
        if canon not in found:
            found[canon] = QuiddityTuple.from_payloads(
                ring, canon, _word_sign(ring, canon))

    def rec(depth, k1_pair, k2_pair, segs):
        ops[0] += 1
        if ops[0] > budget:
            raise BudgetExceededError(
                f"bounded search aborted after {ops[0]} operations "
                f"(budget {budget})", ops[0])
        if depth == prefix_len:
            close(k1_pair, k2_pair)
            return
        k1_m2, k1_m1 = k1_pair
        k2_m2, k2_m1 = k2_pair
        gate = depth == prefix_len - 2  # the next K1 equals +-d_{n-1}
        for a in elems:
            if max_seg >= 1 and (a == one or a == minus_one):
                continue  # a length-1 segment with continuant +-1
            new_segs = []
            ok = True
            for km2, km1 in (segs[-(max_seg - 1):] if max_seg >= 2 else ()):
                k = sub(mul(a, km1), km2)
                if k == one or k == minus_one:
                    ok = False
                    break
                new_segs.append((km1, k))
            if not ok:
                continue
            if max_seg >= 1:
                new_segs.append((one, a))
            k1 = sub(mul(a, k1_m1), k1_m2)
            if gate and k1 not in box_set:
                continue
            if depth == 0:
                k2 = k2_pair  # K(d_2..) only starts at the second entry
            else:
                k2 = (k2_m1, sub(mul(a, k2_m1), k2_m2))
            path.append(a)
            rec(depth + 1, (k1_m1, k1), k2, tuple(new_segs))
            path.pop()

    rec(0, (ring.zero, one), (ring.zero, one), ())
    ordered = sorted(found, key=lambda t: _canonical_key(ring, t))
    return [found[t] for t in ordered]
