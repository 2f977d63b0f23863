import itertools
import random

import pytest

from qdivtop import rings
from qdivtop.rings import (
    NOT_QS,
    QS_LOCAL_SQUARE_ZERO,
    QS_TWO_FIELDS,
    IdealizeRing,
    ProdRing,
    QuotientRing,
    QuotPolyRing,
    RingCapExceeded,
    RingError,
    TruncRing,
    ZnRing,
    build_ring,
    classify_quasi_second_ring,
    idealize,
    is_local,
    is_quasi_second_ring_brute,
    principal_ideal,
    radical_and_idempotents,
    ring_arith,
    ring_units,
)


def test_build_examples():
    assert build_ring("Zn(8)").order == 8
    assert build_ring("Trunc(2,3)").order == 16
    assert build_ring("Prod(GF(2,x),Zn(3))").order == 6
    assert build_ring("Ideal(GF(2),2)").order == 8
    assert build_ring("Ideal(Zn(4),1)").order == 16


def test_build_errors():
    with pytest.raises(RingError):
        build_ring("Zn(1)")
    with pytest.raises(RingError):
        build_ring("GF(6)")
    with pytest.raises(RingError):
        build_ring("GF(4,x^2)")  # nonprime characteristic
    with pytest.raises(RingError):
        build_ring("GF(2,1)")  # constant modulus
    with pytest.raises(RingError):
        build_ring("Trunc(4,2)")
    with pytest.raises(RingError):
        build_ring("Ideal(Zn(4),0)")
    with pytest.raises(RingError):
        build_ring("Wat(3)")
    with pytest.raises(RingError):
        build_ring("Zn(8))")
    with pytest.raises(RingCapExceeded):
        build_ring("Zn(5000)")


def test_parse_is_whitespace_insensitive_and_nested():
    r = build_ring(" Prod( Zn(4) , GF(3) ) ")
    assert r.spec == "Prod(Zn(4),Zn(3))"
    r2 = build_ring("Ideal(Prod(GF(2),GF(2)),1)")
    assert r2.order == 16


def test_spec_roundtrip():
    for text in ["Zn(8)", "GF(2,x^2+x+1)", "Trunc(2,3)", "Prod(Zn(4),Zn(3))", "Ideal(Zn(2),2)"]:
        ring = build_ring(text)
        assert build_ring(ring.spec) == ring


def test_arith_examples():
    z8 = ZnRing(8)
    assert ring_arith(z8, "mul", 6, 6) == 4
    t = TruncRing(2, 2)
    x1 = (0, 1, 0)
    x2 = (0, 0, 1)
    assert t.mul(x1, x2) == t.zero
    ideal = IdealizeRing(ZnRing(2), 2)
    a = (1, (1, 0))
    b = (1, (0, 1))
    assert ideal.mul(a, b) == (1, (1, 1))


def test_arith_membership_check():
    z8 = ZnRing(8)
    with pytest.raises(RingError):
        ring_arith(z8, "mul", 9, 1)


def test_units_examples():
    assert ring_units(ZnRing(8)) == frozenset({1, 3, 5, 7})
    r = QuotPolyRing(2, (0, 0, 1))  # F2[x]/(x^2)
    # oracle: the full 4x4 product table
    table_units = {
        x for x in r.elements if any(r.mul(x, y) == r.one for y in r.elements)
    }
    assert ring_units(r) == table_units == frozenset({(1,), (1, 1)})
    prod = ProdRing(ZnRing(2), ZnRing(3))
    assert len(ring_units(prod)) == 2


def test_principal_ideals():
    z8 = ZnRing(8)
    assert principal_ideal(z8, 2) == frozenset({0, 2, 4, 6})
    assert principal_ideal(z8, 4) == frozenset({0, 4})
    t = TruncRing(2, 1)
    x = (0, 1)
    # oracle: enumerate all 4 products
    assert frozenset(t.mul(r, x) for r in t.elements) == frozenset({t.zero, x})
    assert principal_ideal(t, x) == frozenset({t.zero, x})


def test_radicals_and_idempotents():
    nil, jac, idem = radical_and_idempotents(ZnRing(8))
    assert nil == frozenset({0, 2, 4, 6})
    assert jac == nil
    assert idem == frozenset({0, 1})
    nil6, _, idem6 = radical_and_idempotents(ZnRing(6))
    assert nil6 == frozenset({0})
    assert idem6 == frozenset({0, 1, 3, 4})
    t = TruncRing(2, 2)
    nil_t, _, idem_t = radical_and_idempotents(t)
    assert nil_t == frozenset(x for x in t.elements if x[0] == 0)
    assert len(nil_t) == 4
    assert idem_t == frozenset({t.zero, t.one})


def test_is_local():
    local, m = is_local(ZnRing(8))
    assert local and m == frozenset({0, 2, 4, 6})
    assert is_local(ZnRing(6)) == (False, None)
    local2, m2 = is_local(ZnRing(2))
    assert local2 and m2 == frozenset({0})


def test_local_complement_is_units():
    for spec in ["Zn(8)", "Zn(9)", "Zn(49)", "GF(2,x^3+x+1)", "Trunc(3,2)", "Ideal(Zn(4),1)"]:
        ring = build_ring(spec)
        local, m = is_local(ring)
        assert local
        assert frozenset(ring.elements) - m == ring_units(ring)


def test_quasi_second_brute_examples():
    assert is_quasi_second_ring_brute(ZnRing(4)) is True
    assert is_quasi_second_ring_brute(ZnRing(8)) is False
    assert is_quasi_second_ring_brute(ZnRing(6)) is True
    v = rings.quasi_second_ring_violation(ZnRing(8))
    assert v is not None and {v["a"], v["b"]} == {"2", "4"}


def test_classification_examples():
    assert classify_quasi_second_ring(ZnRing(4)) == QS_LOCAL_SQUARE_ZERO
    assert classify_quasi_second_ring(ZnRing(6)) == QS_TWO_FIELDS
    assert classify_quasi_second_ring(ZnRing(8)) == NOT_QS
    assert classify_quasi_second_ring(build_ring("Ideal(GF(2),2)")) == QS_LOCAL_SQUARE_ZERO
    assert classify_quasi_second_ring(build_ring("Ideal(Zn(4),1)")) == NOT_QS
    assert classify_quasi_second_ring(build_ring("Prod(GF(2),GF(2))")) == QS_TWO_FIELDS
    assert classify_quasi_second_ring(build_ring("GF(2,x^2+x+1)")) == QS_LOCAL_SQUARE_ZERO


def test_idealize_examples():
    r = idealize(ZnRing(2), 2)
    assert r.order == 8
    assert is_quasi_second_ring_brute(r) is True
    r2 = idealize(ZnRing(4), 1)
    assert r2.order == 16
    assert is_quasi_second_ring_brute(r2) is False


def test_brute_matches_classification_on_catalog_sample():
    specs = [
        "Zn(4)", "Zn(6)", "Zn(8)", "Zn(9)", "Zn(10)", "Zn(12)", "Zn(25)",
        "Zn(30)", "GF(2,x^2+x+1)", "GF(2,x^2)", "Trunc(2,1)", "Trunc(2,3)",
        "Trunc(3,2)", "Prod(Zn(2),Zn(3))", "Prod(GF(2,x^2+x+1),Zn(5))",
        "Ideal(Zn(2),1)", "Ideal(Zn(2),2)", "Ideal(Zn(4),1)",
        "Prod(Zn(4),Zn(3))",
    ]
    for spec in specs:
        ring = build_ring(spec)
        brute = is_quasi_second_ring_brute(ring)
        assert brute == (classify_quasi_second_ring(ring) != NOT_QS), spec


def test_nontrivial_idempotent_splits_order():
    for spec in ["Zn(6)", "Zn(12)", "Prod(Zn(4),Zn(9))"]:
        ring = build_ring(spec)
        nontrivial = [
            e for e in ring.idempotents() if e not in (ring.zero, ring.one)
        ]
        assert nontrivial
        for e in nontrivial:
            part1 = ring.principal_ideal(e)
            part2 = ring.principal_ideal(ring.sub(ring.one, e))
            assert len(part1) * len(part2) == ring.order


LAW_SAMPLE = [
    "Zn(12)",
    "GF(2,x^2+x+1)",
    "GF(3,x^2)",
    "Trunc(2,2)",
    "Prod(Zn(2),Zn(3))",
    "Ideal(Zn(2),1)",
    "Ideal(Zn(4),1)",
]


@pytest.mark.parametrize("spec", LAW_SAMPLE)
def test_ring_laws_exhaustive_small(spec):
    ring = build_ring(spec)
    assert ring.order <= 32
    elems = ring.elements
    for x in elems:
        for y in elems:
            for z in elems:
                assert ring.mul(ring.mul(x, y), z) == ring.mul(x, ring.mul(y, z))
                assert ring.add(ring.add(x, y), z) == ring.add(x, ring.add(y, z))
                assert ring.mul(x, ring.add(y, z)) == ring.add(
                    ring.mul(x, y), ring.mul(x, z)
                )


def test_ring_laws_random_triples_order64():
    ring = build_ring("Trunc(2,5)")
    assert ring.order == 64
    rng = random.Random(20240817)
    elems = ring.elements
    for _ in range(10_000):
        x, y, z = (elems[rng.randrange(len(elems))] for _ in range(3))
        assert ring.mul(ring.mul(x, y), z) == ring.mul(x, ring.mul(y, z))
        assert ring.mul(x, ring.add(y, z)) == ring.add(ring.mul(x, y), ring.mul(x, z))


def test_ring_laws_whole_default_catalog():
    # every catalog ring: all triples up to order 32, 10^4 seeded random
    # triples above
    from qdivtop import verifier

    for spec in verifier.catalog_ring_specs(verifier.DEFAULT_CORPUS):
        ring = build_ring(spec)
        elems = ring.elements
        if ring.order <= 32:
            triples = itertools.product(elems, repeat=3)
        else:
            rng = random.Random(sum(spec.encode()))
            triples = (
                tuple(elems[rng.randrange(len(elems))] for _ in range(3))
                for _ in range(10_000)
            )
        for x, y, z in triples:
            assert ring.mul(ring.mul(x, y), z) == ring.mul(x, ring.mul(y, z)), spec
            assert ring.add(ring.add(x, y), z) == ring.add(x, ring.add(y, z)), spec
            assert ring.mul(x, ring.add(y, z)) == ring.add(
                ring.mul(x, y), ring.mul(x, z)
            ), spec


def test_quotient_ring():
    z8 = ZnRing(8)
    q = QuotientRing(z8, frozenset({0, 4}))
    assert q.order == 4
    assert q.elements == (0, 1, 2, 3)
    assert q.mul(2, 2) == 0  # 4 collapses to 0
    assert q.add(3, 3) == 2
    qq = QuotientRing(q, frozenset({0, 2}))
    assert qq.order == 2
    with pytest.raises(RingError):
        QuotientRing(z8, frozenset({4}))  # zero missing
    with pytest.raises(RingError):
        QuotientRing(z8, frozenset({0, 3}))  # not closed under addition
    prod = ProdRing(ZnRing(2), ZnRing(2))
    diagonal = frozenset({prod.zero, (1, 1)})
    with pytest.raises(RingError):
        QuotientRing(prod, diagonal)  # additively closed but not absorbing


def test_field_detection():
    assert build_ring("GF(2,x^2+x+1)").is_field()
    assert build_ring("Zn(7)").is_field()
    assert not build_ring("Zn(8)").is_field()
    assert not build_ring("GF(2,x^2)").is_field()


def test_element_enumeration_is_sorted_and_indexed():
    for spec in ["Zn(6)", "GF(3,x^2)", "Trunc(2,2)", "Prod(Zn(2),Zn(2))"]:
        ring = build_ring(spec)
        keys = [ring.sort_key(x) for x in ring.elements]
        assert keys == sorted(keys)
        for i, x in enumerate(ring.elements):
            assert ring.index(x) == i
