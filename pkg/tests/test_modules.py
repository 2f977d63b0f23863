import itertools

import pytest

from qdivtop import modules, rings, scalars
from qdivtop.modules import (
    ModuleError,
    SizeCapExceeded,
    Submodule,
    annihilator,
    build_module,
    cyclic_image,
    cyclic_sum,
    direct_sum,
    enumerate_submodules,
    find_quasi_second_violation,
    is_quasi_second,
    is_second_module,
    is_second_submodule,
    quotient_module,
    ring_cyclic,
    scalar_classes,
    structural_predicates,
    submodule_annihilator,
    submodule_as_module,
    weak_idempotent_split,
)
from qdivtop.scalars import INTEGERS, poly_domain

F2 = poly_domain(2)


def powerset_submodules(E):
    """Independent brute force: every subset closed under the module
    structure, found by filtering the full power set."""
    n = E.order
    assert n <= 12
    elems = E.elements
    zero = E.zero_elem
    found = []
    for picks in itertools.product((0, 1), repeat=n):
        subset = {elems[i] for i in range(n) if picks[i]}
        if zero not in subset:
            continue
        if any(E.add_elems(x, y) not in subset for x in subset for y in subset):
            continue
        if any(E.neg_elem(x) not in subset for x in subset):
            continue
        if any(
            E.act(r, x) not in subset
            for r in E.residue_ring.elements
            for x in subset
        ):
            continue
        found.append(frozenset(subset))
    return found


# -- construction -----------------------------------------------------------


def test_build_examples():
    assert build_module("Z:8").order == 8
    assert build_module("Z:2,4").order == 8
    assert build_module("ring:Trunc(2,3)").order == 16
    assert build_module("F2[x]:x^3").order == 8
    assert build_module("F3[x]:x^2+1,x").order == 27


def test_build_errors():
    with pytest.raises(ModuleError):
        build_module("Z:1")
    with pytest.raises(ModuleError):
        build_module("Z:0")
    with pytest.raises(ModuleError):
        build_module("Z:-1")
    with pytest.raises(ModuleError):
        build_module("F2[x]:1")
    with pytest.raises(ModuleError):
        build_module("Q:5")
    with pytest.raises(ModuleError):
        build_module("Z8")
    with pytest.raises(scalars.ScalarError):
        build_module("F4[x]:x^2")
    with pytest.raises(SizeCapExceeded):
        cyclic_sum(INTEGERS, (4095, 2))


def test_moduli_are_canonicalized():
    assert build_module("Z:4,2").spec_text == "Z:2,4"
    assert build_module("Z:-6").spec_text == "Z:6"


# -- annihilators -------------------------------------------------------------


def test_annihilator_examples():
    assert annihilator(build_module("Z:2,4")).value == 4
    e6 = build_module("Z:6")
    assert annihilator(e6).value == 6
    ef = build_module("F2[x]:x,x^2")
    ann = annihilator(ef)
    assert ann.value == (0, 0, 1)
    # the generator kills every element
    r = ef.residue_ring
    killer = scalars.pdivmod(ann.value, r.modulus, 2)[1]
    assert all(ef.act(killer, m) == ef.zero_elem for m in ef.elements)
    # ring-backed cyclic modules report the ring-side zero ideal
    et = build_module("ring:Trunc(2,1)")
    assert annihilator(et) == frozenset({et.residue_ring.zero})


# -- scalar classes ------------------------------------------------------------


def test_scalar_classes_z8():
    E = build_module("Z:8")
    classes = scalar_classes(E)
    assert [c.label for c in classes] == ["[2]", "[4]"]
    by_label = {c.label: c for c in classes}
    # 6Z8 = {0,2,4,6} = 2Z8, so 6 lands in [2]
    assert by_label["[2]"].members == (2, 6)
    assert by_label["[4]"].members == (4,)
    assert by_label["[2]"].image.element_strs() == ["0", "2", "4", "6"]
    assert by_label["[4]"].image.element_strs() == ["0", "4"]


def test_scalar_classes_z6():
    E = build_module("Z:6")
    classes = scalar_classes(E)
    assert [c.label for c in classes] == ["[2]", "[3]"]
    assert classes[0].members == (2, 4)
    assert classes[0].image.element_strs() == ["0", "2", "4"]


def test_scalar_classes_second_module_empty():
    assert scalar_classes(build_module("Z:5")) == ()
    assert is_second_module(build_module("Z:5"))
    assert not is_second_module(build_module("Z:4"))


def test_class_members_share_images():
    for spec in ["Z:8", "Z:12", "Z:2,4", "F2[x]:x^3", "ring:Zn(30)"]:
        E = build_module(spec)
        for c in scalar_classes(E):
            for member in c.members:
                assert E.image_mask(member) == c.image.mask


# -- cyclic images --------------------------------------------------------------


def test_cyclic_image_examples():
    E = build_module("Z:8")
    assert cyclic_image(E, 2).element_strs() == ["0", "2", "4", "6"]
    assert cyclic_image(E, 4).element_strs() == ["0", "4"]
    T = build_module("ring:Trunc(2,3)")
    x1 = (0, 1, 0, 0)
    assert cyclic_image(T, x1).element_strs() == ["0", "x1"]
    for c in scalar_classes(T):
        assert c.image.size == 2  # every class image is {0, a}


# -- submodule enumeration -------------------------------------------------------


def test_submodule_counts():
    assert len(enumerate_submodules(build_module("Z:6"))) == 4
    assert len(enumerate_submodules(build_module("Z:8"))) == 4
    assert len(enumerate_submodules(build_module("Z:2,2"))) == 5


@pytest.mark.parametrize(
    "spec",
    [
        "Z:6", "Z:8", "Z:2,2", "Z:2,4", "Z:12",
        "F2[x]:x^2", "F2[x]:x,x", "F2[x]:x,x+1", "F2[x]:x^2,x",
        "ring:Trunc(2,1)", "ring:Trunc(2,2)", "ring:Zn(9)",
        "ring:Prod(Zn(2),Zn(3))", "ring:Ideal(Zn(2),1)",
    ],
)
def test_submodules_match_powerset_oracle(spec):
    E = build_module(spec)
    got = {frozenset(s.elements) for s in enumerate_submodules(E)}
    assert got == set(powerset_submodules(E))


def test_submodule_verification():
    E = build_module("Z:8")
    with pytest.raises(ModuleError):
        Submodule(E, elements=[(0,), (2,)])  # not closed under addition
    with pytest.raises(ModuleError):
        Submodule(E, elements=[(2,), (4,), (6,)])  # missing zero
    ok = Submodule(E, elements=[(0,), (2,), (4,), (6,)])
    assert ok.size == 4


def test_lattice_cap():
    E = cyclic_sum(INTEGERS, (17, 17))
    assert E.order == 289
    with pytest.raises(SizeCapExceeded):
        enumerate_submodules(E)


# -- annihilators of submodules ---------------------------------------------------


def test_submodule_annihilator_examples():
    e4 = build_module("Z:4")
    gen, maximal = submodule_annihilator(e4, cyclic_image(e4, 2))
    assert gen.value == 2 and maximal
    e8 = build_module("Z:8")
    gen8, maximal8 = submodule_annihilator(e8, cyclic_image(e8, 2))
    assert gen8.value == 4 and not maximal8
    zero = Submodule(e8, elements=[(0,)])
    genz, maxz = submodule_annihilator(e8, zero)
    assert genz.value == 1 and not maxz


def test_submodule_annihilator_ring_side():
    T = build_module("ring:Trunc(2,2)")
    x1 = (0, 1, 0)
    killer_set, maximal = submodule_annihilator(T, cyclic_image(T, x1))
    # ann of {0, x1} is the whole maximal ideal (c0 = 0), which is maximal
    assert maximal
    assert killer_set == frozenset(e for e in T.residue_ring.elements if e[0] == 0)


def test_annihilator_maximality_agrees_with_quotient_field_route():
    # the irreducible-generator test and the generic residue-field test
    # decide the same maximality flag
    for spec in ["Z:4", "Z:8", "Z:12", "Z:2,4", "F2[x]:x^3", "F2[x]:x^2+x"]:
        E = build_module(spec)
        for sub in enumerate_submodules(E):
            gen, maximal = submodule_annihilator(E, sub)
            killers = [
                r
                for r in E.residue_ring.elements
                if all(E.act(r, x) == E.zero_elem for x in sub.elements)
            ]
            quotient = rings.QuotientRing(E.residue_ring, frozenset(killers))
            assert maximal == (quotient.order > 1 and quotient.is_field()), spec


# -- second and quasi second -------------------------------------------------------


def test_second_examples():
    assert is_second_module(build_module("Z:5"))
    assert not is_second_module(build_module("Z:4"))
    e4 = build_module("Z:4")
    assert is_second_submodule(e4, cyclic_image(e4, 2))


def test_quasi_second_examples():
    assert is_quasi_second(build_module("Z:4"))
    assert not is_quasi_second(build_module("Z:8"))
    assert is_quasi_second(build_module("Z:6"))
    v = find_quasi_second_violation(build_module("Z:8"))
    assert v == {"a": "2", "b": "4", "aE": ["0", "2", "4", "6"], "bE": ["0", "4"]}


def test_quasi_second_implications_on_samples():
    # quasi second forces second images and maximal image annihilators
    for spec in ["Z:4", "Z:6", "Z:9", "ring:Zn(25)", "F2[x]:x^2", "ring:Trunc(2,3)"]:
        E = build_module(spec)
        assert is_quasi_second(E), spec
        for c in scalar_classes(E):
            assert is_second_submodule(E, c.image), spec
            assert submodule_annihilator(E, c.image)[1], spec


# -- structural predicates -----------------------------------------------------------


def test_structural_predicates_examples():
    p8 = structural_predicates(build_module("Z:8"))
    assert (p8.uniserial, p8.multiplication, p8.comultiplication) == (True, True, True)
    assert not p8.semiprime_annihilator
    p6 = structural_predicates(build_module("Z:6"))
    assert not p6.uniserial
    assert p6.multiplication and p6.comultiplication and p6.semiprime_annihilator
    p24 = structural_predicates(build_module("Z:2,4"))
    assert not p24.uniserial
    assert not structural_predicates(build_module("Z:2,2")).comultiplication


def test_divisible_and_simple():
    assert structural_predicates(build_module("Z:5")).simple
    assert not structural_predicates(build_module("Z:5")).divisible
    E = build_module("Z:4")
    quot = quotient_module(E, cyclic_image(E, 1))  # E/E is the zero module
    preds = structural_predicates(quot)
    assert preds.divisible and not preds.simple


# -- weak idempotent splits ------------------------------------------------------------


def test_weak_split_examples():
    split = weak_idempotent_split(build_module("Z:6"))
    assert split.kind == "split"
    assert split.idempotent == 3
    assert split.parts[0].element_strs() == ["0", "3"]
    assert split.parts[1].element_strs() == ["0", "2", "4"]
    assert weak_idempotent_split(build_module("Z:5")).kind == "simple"
    assert weak_idempotent_split(build_module("Z:4")).kind == "none"


def test_weak_split_parts_decompose():
    for spec in ["Z:6", "ring:Prod(Zn(2),Zn(3))", "ring:Prod(Zn(5),Zn(7))"]:
        E = build_module(spec)
        split = weak_idempotent_split(E)
        assert split.kind == "split", spec
        p1, p2 = split.parts
        assert p1.size * p2.size == E.order
        assert (p1.mask & p2.mask) == E.zero_mask


# -- derived modules ---------------------------------------------------------------------


def test_quotient_example():
    E = build_module("Z:8")
    q = quotient_module(E, cyclic_image(E, 2))
    assert q.order == 2
    assert is_quasi_second(q)
    assert is_second_module(q)


def test_submodule_as_module_example():
    E = build_module("Z:8")
    sub = submodule_as_module(E, cyclic_image(E, 2))
    assert sub.order == 4
    assert is_quasi_second(sub)
    # behaves like Z:4: one class with a two-element image
    classes = scalar_classes(sub)
    assert len(classes) == 1
    assert classes[0].image.size == 2


def test_direct_sum_matches_two_summand_module():
    d = direct_sum(build_module("Z:2"), build_module("Z:3"))
    assert d.order == 6
    assert d.spec_text == "Z:2,3"
    labels = [c.label for c in scalar_classes(d)]
    assert labels == [c.label for c in scalar_classes(build_module("Z:6"))] == ["[2]", "[3]"]


def test_direct_sum_domain_mismatch():
    with pytest.raises(ModuleError):
        direct_sum(build_module("Z:2"), build_module("F2[x]:x"))
    with pytest.raises(ModuleError):
        direct_sum(build_module("Z:2"), build_module("ring:Zn(3)"))


def test_quotient_sizes_multiply():
    E = build_module("Z:12")
    for sub in enumerate_submodules(E):
        q = quotient_module(E, sub)
        assert q.order * sub.size == E.order
        assert is_quasi_second(q) == (find_quasi_second_violation(q) is None)


def test_derived_modules_over_ring_cyclic():
    T = build_module("ring:Trunc(2,2)")
    for sub in enumerate_submodules(T):
        inner = submodule_as_module(T, sub)
        quot = quotient_module(T, sub)
        assert inner.order == sub.size
        assert quot.order * sub.size == T.order
        # quasi second passes to submodules and quotients here
        assert is_quasi_second(inner) and is_quasi_second(quot)


# -- the residue reduction claim ------------------------------------------------------------


def test_classes_match_direct_sampling_z12():
    E = build_module("Z:12")
    mods = [d.value for d in E.moduli]
    in_w = set()
    for a in range(-24, 25):
        image = {tuple((a * x) % m for x, m in zip(elem, mods)) for elem in E.elements}
        if image != {E.zero_elem} and image != set(E.elements):
            in_w.add(a % 12)
    ring = E.residue_ring
    expected = {
        r for r in ring.elements if r != ring.zero and r not in ring.units()
    }
    assert in_w == expected
