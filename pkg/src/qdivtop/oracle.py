"""Definitional finite-topology engine.

The topology of a quasi divisor space is generated by the basis sets U_a.
This module enumerates every open set as a union of basis sets (encoded as
bit vectors over point indices), verifies the family laws exhaustively,
and decides each axiom by quantifying over the enumerated family, exactly
as defined.  It never consults the poset fast paths, which makes it the
independent ground truth those fast paths are verified against.

Where an axiom asks for an existential open set around a given set, the
minimal open superset inside the family is used as the witness; the family
is closed under intersection, so such a minimal member exists and succeeds
whenever any member does.
"""

from __future__ import annotations

from dataclasses import dataclass

from .modules import SizeCapExceeded, _bits
from .topology import QuasiDivisorSpace, maximal_classes

OPEN_ENUM_CAP = 14
T5_CAP = 12
BAIRE_SUBFAMILY_CAP = 16


class FiniteTopology:
    """An explicit point count plus the full sorted family of open sets,
    each encoded as a bit vector over point indices."""

    __slots__ = ("n", "opens", "full", "_open_set", "_closed")

    def __init__(self, n: int, opens: tuple, full: int):
        self.n = n
        self.opens = opens
        self.full = full
        self._open_set = frozenset(opens)
        self._closed = tuple(full & ~o for o in opens)

    def is_open(self, mask: int) -> bool:
        return mask in self._open_set

    def closed_sets(self):
        return self._closed


@dataclass(frozen=True)
class StructureChecks:
    minimal_neighborhoods_ok: bool
    closure_union_ok: bool
    open_dense_contains_maximal_ok: bool


def enumerate_open_sets(space: QuasiDivisorSpace) -> FiniteTopology:
    """All unions of basis sets, deduplicated and verified.

    The family must contain the empty and full sets and be closed under
    pairwise union and intersection; this is checked exhaustively.
    """
    n = space.n
    if n > OPEN_ENUM_CAP:
        raise SizeCapExceeded(
            f"open-set enumeration is capped at {OPEN_ENUM_CAP} points, space has {n}"
        )
    unions = [0] * (1 << n)
    for s in range(1, 1 << n):
        low = s & -s
        unions[s] = unions[s ^ low] | space.up[low.bit_length() - 1]
    opens = sorted(set(unions))
    topo = FiniteTopology(n=n, opens=tuple(opens), full=space.full)
    open_set = set(opens)
    if 0 not in open_set or space.full not in open_set:
        raise AssertionError("the generated family misses the empty or full set")
    for a in opens:
        for b in opens:
            if a | b not in open_set or a & b not in open_set:
                raise AssertionError("the generated family is not a topology")
    return topo


def oracle_closure(topo: FiniteTopology, mask: int) -> int:
    """Intersection of every closed superset."""
    out = topo.full
    for c in topo.closed_sets():
        if not (mask & ~c):
            out &= c
    return out


def oracle_interior(topo: FiniteTopology, mask: int) -> int:
    """Union of every open subset."""
    out = 0
    for o in topo.opens:
        if not (o & ~mask):
            out |= o
    return out


def _min_open_covers(topo: FiniteTopology):
    """min_open[i]: the smallest open set containing point i."""
    covers = []
    for i in range(topo.n):
        bit = 1 << i
        acc = topo.full
        for o in topo.opens:
            if o & bit:
                acc &= o
        covers.append(acc)
    return covers


def _open_hull(topo: FiniteTopology, mask: int, min_opens) -> int:
    """The smallest open superset of the given set (a member of the family)."""
    out = 0
    for i in _bits(mask):
        out |= min_opens[i]
    return out


def _axiom_t0(topo):
    for i in range(topo.n):
        for j in range(i + 1, topo.n):
            if not any(
                bool(o & (1 << i)) != bool(o & (1 << j)) for o in topo.opens
            ):
                return False
    return True


def _axiom_t1(topo):
    for i in range(topo.n):
        for j in range(topo.n):
            if i == j:
                continue
            if not any(o & (1 << i) and not o & (1 << j) for o in topo.opens):
                return False
    return True


def _axiom_t2(topo):
    min_opens = _min_open_covers(topo)
    for i in range(topo.n):
        for j in range(i + 1, topo.n):
            if min_opens[i] & min_opens[j]:
                return False
    return True


def _axiom_t3(topo):
    # for every closed C and x outside it: disjoint opens around C and x
    min_opens = _min_open_covers(topo)
    for c in topo.closed_sets():
        hull_c = _open_hull(topo, c, min_opens)
        for x in _bits(topo.full & ~c):
            if hull_c & min_opens[x]:
                return False
    return True


def _axiom_t4(topo):
    min_opens = _min_open_covers(topo)
    closed = topo.closed_sets()
    hulls = {c: _open_hull(topo, c, min_opens) for c in closed}
    for c1 in closed:
        for c2 in closed:
            if c1 & c2 or not c1 or not c2:
                continue
            if hulls[c1] & hulls[c2]:
                return False
    return True


def _axiom_t5(topo):
    # every pair of nonempty separated sets has disjoint open supersets;
    # enumerated over all disjoint nonempty subset pairs
    if topo.n > T5_CAP:
        raise SizeCapExceeded(f"the T5 sweep is capped at {T5_CAP} points")
    min_opens = _min_open_covers(topo)
    cl1 = [oracle_closure(topo, 1 << i) for i in range(topo.n)]

    def cl(mask):
        out = 0
        for i in _bits(mask):
            out |= cl1[i]
        return out

    full = topo.full
    for a in range(1, full + 1):
        cl_a = cl(a)
        hull_a = _open_hull(topo, a, min_opens)
        rest = full & ~a
        b = rest
        while b:
            if not (cl_a & b) and not (a & cl(b)):
                if hull_a & _open_hull(topo, b, min_opens):
                    return False
            b = (b - 1) & rest
    return True


def _axiom_discrete(topo):
    return all(topo.is_open(1 << i) for i in range(topo.n))


def _axiom_connected(topo):
    for o1 in topo.opens:
        if not o1:
            continue
        o2 = topo.full & ~o1
        if o2 and topo.is_open(o2):
            return False
    return True


def _axiom_hyperconnected(topo):
    for o1 in topo.opens:
        if not o1:
            continue
        for o2 in topo.opens:
            if o2 and not (o1 & o2):
                return False
    return True


def _axiom_ultraconnected(topo):
    closed = [c for c in topo.closed_sets() if c]
    for c1 in closed:
        for c2 in closed:
            if not (c1 & c2):
                return False
    return True


def _axiom_alexandrov(topo):
    # pairwise intersection closure was verified at enumeration time and
    # implies closure under arbitrary intersections of the finite family
    open_set = set(topo.opens)
    return all(a & b in open_set for a in topo.opens for b in topo.opens)


def _axiom_noetherian(topo):
    # every finite topology is noetherian; reported for API symmetry
    return True


def _dense_opens(topo):
    return [o for o in topo.opens if oracle_closure(topo, o) == topo.full]


def _axiom_baire(topo):
    """Every intersection of dense open sets is dense.

    Exhaustive over subfamilies when the dense family is small; above the
    cap only the full-family intersection is checked, which is the binding
    case because density is superset-monotone.
    """
    dense = _dense_opens(topo)
    if len(dense) <= BAIRE_SUBFAMILY_CAP:
        for pick in range(1, 1 << len(dense)):
            acc = topo.full
            for i in _bits(pick):
                acc &= dense[i]
            if oracle_closure(topo, acc) != topo.full:
                return False
        return True
    acc = topo.full
    for o in dense:
        acc &= o
    return oracle_closure(topo, acc) == topo.full


_AXIOMS = {
    "T0": _axiom_t0,
    "T1": _axiom_t1,
    "T2": _axiom_t2,
    "T3": _axiom_t3,
    "T4": _axiom_t4,
    "T5": _axiom_t5,
    "discrete": _axiom_discrete,
    "connected": _axiom_connected,
    "hyperconnected": _axiom_hyperconnected,
    "ultraconnected": _axiom_ultraconnected,
    "alexandrov": _axiom_alexandrov,
    "noetherian": _axiom_noetherian,
    "baire": _axiom_baire,
}

AXIOMS = tuple(_AXIOMS)


def oracle_axiom(topo: FiniteTopology, axiom: str) -> bool:
    try:
        fn = _AXIOMS[axiom]
    except KeyError:
        raise ValueError(f"unknown axiom {axiom!r}") from None
    return fn(topo)


EXHAUSTIVE_SUBSET_CAP = 8
SUBSET_SAMPLE = 100


def subset_sweep(n: int):
    """Every subset mask for up to 8 points; above that, a deterministic
    sample of 100 masks from a fixed linear congruential stream."""
    if n <= EXHAUSTIVE_SUBSET_CAP:
        yield from range(1 << n)
        return
    full = (1 << n) - 1
    state = 0x9E3779B9 ^ n
    seen = set()
    while len(seen) < SUBSET_SAMPLE:
        state = (state * 6364136223846793005 + 1442695040888963407) % (1 << 64)
        mask = state & full
        if mask not in seen:
            seen.add(mask)
            yield mask


def oracle_structure_checks(
    topo: FiniteTopology, space: QuasiDivisorSpace
) -> StructureChecks:
    """Exhaustive checks of the three structural facts: basis sets are
    minimal neighborhoods, closure distributes over unions, and every open
    dense set contains the maximal classes."""
    minimal_ok = True
    for i in range(space.n):
        u = space.up[i]
        if not topo.is_open(u):
            minimal_ok = False
            break
        bit = 1 << i
        for o in topo.opens:
            if o & bit and (o & ~u) == 0 and o != u:
                minimal_ok = False
                break
        if not minimal_ok:
            break

    cl1 = [oracle_closure(topo, 1 << i) for i in range(topo.n)]
    union_ok = True
    for mask in subset_sweep(topo.n):
        acc = 0
        for i in _bits(mask):
            acc |= cl1[i]
        if oracle_closure(topo, mask) != acc:
            union_ok = False
            break

    target = maximal_classes(space)
    dense_ok = all(not (target & ~o) for o in _dense_opens(topo))

    return StructureChecks(
        minimal_neighborhoods_ok=minimal_ok,
        closure_union_ok=union_ok,
        open_dense_contains_maximal_ok=dense_ok,
    )
