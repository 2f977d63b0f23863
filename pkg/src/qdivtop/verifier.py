"""Corpus generation and the executable rule suite.

Each rule states one verifiable law tying module algebra, the
order-theoretic predicates and the enumerated-topology oracle together.
Rules run per corpus instance and return pass, fail (with a re-checkable
witness) or vacuous; an instance that does not satisfy a rule's hypothesis
is counted vacuous, never silently passed.  Reports are deterministic:
fixed iteration orders, no randomness, and a corpus fingerprint.
"""

from __future__ import annotations

import hashlib
import itertools
import math
from dataclasses import dataclass
from functools import cached_property

from . import modules, oracle, rings, scalars, topology

PASS = "pass"
FAIL = "fail"
VACUOUS = "vacuous"

# hook for the harness self-test: rules read this at call time, so a test
# can swap in a deliberately broken predicate and watch R2 catch it
QS_VIOLATION_FINDER = modules.find_quasi_second_violation


@dataclass(frozen=True)
class CorpusSpec:
    int_modulus_min: int = 2
    int_modulus_max: int = 9
    max_summands: int = 2
    element_cap: int = 81
    poly_char: int = 2
    poly_max_degree: int = 3
    ring_order_cap: int = 64
    trunc_max_generators: int = 3
    idealize_max_copies: int = 2

    def __post_init__(self):
        if self.max_summands < 1 or self.element_cap < 1:
            raise ValueError("corpus caps must be positive")
        if not scalars.is_prime(self.poly_char):
            raise ValueError("the polynomial characteristic must be prime")


DEFAULT_CORPUS = CorpusSpec()

MAX_INSTANCES = 100_000


@dataclass(frozen=True)
class Instance:
    kind: str  # "module" | "ring"
    spec_text: str


@dataclass(frozen=True)
class RuleOutcome:
    rule_id: str
    instance: str
    verdict: str
    witness: str | None = None
    note: str | None = None

    def __post_init__(self):
        if self.verdict == FAIL and not self.witness:
            raise ValueError("a failing outcome needs a witness")


_GF_POLYS = {
    4: (2, "x^2+x+1"),
    8: (2, "x^3+x+1"),
    9: (3, "x^2+1"),
    16: (2, "x^4+x+1"),
    25: (5, "x^2+2"),
    27: (3, "x^3+2*x+1"),
    32: (2, "x^5+x^2+1"),
}


def _field_specs(order_cap: int):
    out = []
    for q in range(2, order_cap // 2 + 1):
        if scalars.is_prime(q):
            out.append((q, f"Zn({q})"))
        elif q in _GF_POLYS:
            p, f = _GF_POLYS[q]
            out.append((q, f"GF({p},{f})"))
    return out


def catalog_ring_specs(cs: CorpusSpec) -> list:
    specs = [f"Zn({n})" for n in range(2, cs.ring_order_cap + 1)]
    for k in range(1, cs.trunc_max_generators + 1):
        if 2 ** (k + 1) <= cs.ring_order_cap:
            specs.append(f"Trunc(2,{k})")
    for d in range(1, cs.idealize_max_copies + 1):
        if 2 ** (d + 1) <= cs.ring_order_cap:
            specs.append(f"Ideal(Zn(2),{d})")
    fields = _field_specs(cs.ring_order_cap)
    for i, (q1, s1) in enumerate(fields):
        for q2, s2 in fields[i:]:
            if q1 * q2 <= cs.ring_order_cap:
                specs.append(f"Prod({s1},{s2})")
    return specs


def generate_corpus(cs: CorpusSpec = DEFAULT_CORPUS) -> list:
    """Deterministic instance list: integer cyclic sums, their F_p[x]
    analogues (single moduli and pairwise direct sums within the element
    cap), and every catalog ring both as a ring and as a cyclic module."""
    out = []
    mods = range(cs.int_modulus_min, cs.int_modulus_max + 1)
    for k in range(1, cs.max_summands + 1):
        for combo in itertools.combinations_with_replacement(mods, k):
            size = 1
            for m in combo:
                size *= m
            if size <= cs.element_cap:
                out.append(Instance("module", "Z:" + ",".join(map(str, combo))))

    p = cs.poly_char
    polys = []
    for deg in range(1, cs.poly_max_degree + 1):
        polys.extend(scalars.monic_polys(p, deg))
    polys.sort(key=lambda c: (len(c), c))
    for k in range(1, cs.max_summands + 1):
        for combo in itertools.combinations_with_replacement(polys, k):
            size = 1
            for m in combo:
                size *= p ** scalars.pdeg(m)
            if size <= cs.element_cap:
                text = ",".join(scalars.format_poly(m) for m in combo)
                out.append(Instance("module", f"F{p}[x]:{text}"))

    ring_specs = catalog_ring_specs(cs)
    out.extend(Instance("ring", spec) for spec in ring_specs)
    out.extend(Instance("module", f"ring:{spec}") for spec in ring_specs)
    if len(out) > MAX_INSTANCES:
        raise ValueError(f"corpus of {len(out)} instances exceeds {MAX_INSTANCES}")
    return out


# -- per-instance evaluation contexts -----------------------------------


class _ModuleCtx:
    kind = "module"

    def __init__(self, instance: Instance, qs_finder):
        self.instance = instance
        self.qs_finder = qs_finder
        self.E = modules.build_module(instance.spec_text)
        self._axioms = {}

    @cached_property
    def classes(self):
        return modules.scalar_classes(self.E)

    @cached_property
    def space(self):
        return topology.build_space(self.E)

    @property
    def n(self):
        return self.space.n

    @cached_property
    def topo(self):
        if self.n > oracle.OPEN_ENUM_CAP:
            return None
        return oracle.enumerate_open_sets(self.space)

    @cached_property
    def sep(self):
        return topology.separation_report(self.space)

    @cached_property
    def conn(self):
        return topology.connectivity_report(self.space)

    @cached_property
    def preds(self):
        return modules.structural_predicates(self.E)

    @cached_property
    def semiprime(self):
        ring = self.E.residue_ring
        zero = ring.zero
        return not any(r != zero and ring.mul(r, r) == zero for r in ring.elements)

    @cached_property
    def ann_prime(self):
        ring = self.E.residue_ring
        return ring.order > 1 and ring.is_field()

    @cached_property
    def qs_violation(self):
        return self.qs_finder(self.E)

    @property
    def qs(self):
        return self.qs_violation is None

    @cached_property
    def all_images_maximal(self):
        masks = [c.image.mask for c in self.classes]
        return all(
            not any(m != other and not (m & ~other) for other in masks)
            for m in masks
        )

    @cached_property
    def all_images_second(self):
        return all(
            modules.is_second_submodule(self.E, c.image) for c in self.classes
        )

    @cached_property
    def all_ann_maximal(self):
        return all(
            modules.submodule_annihilator(self.E, c.image)[1] for c in self.classes
        )

    def axiom(self, name):
        """Definitional verdict when the oracle cap allows it; the fast
        order-side value (tagged) otherwise."""
        if name not in self._axioms:
            if self.topo is not None:
                self._axioms[name] = (oracle.oracle_axiom(self.topo, name), "oracle")
            else:
                fast = {
                    "T0": True,
                    "T1": self.sep.t1,
                    "T2": self.sep.t2,
                    "T3": self.sep.t3,
                    "discrete": self.sep.discrete,
                    "hyperconnected": self.conn.hyperconnected,
                    "ultraconnected": self.conn.ultraconnected,
                }
                self._axioms[name] = (fast[name], "fast")
        return self._axioms[name]

    def witness_violation(self):
        v = self.qs_violation
        if v is None:
            return ""
        return (
            f"a={v['a']} b={v['b']} aE={{{','.join(v['aE'])}}} "
            f"bE={{{','.join(v['bE'])}}}"
        )


class _RingCtx:
    kind = "ring"

    def __init__(self, instance: Instance):
        self.instance = instance
        self.ring = rings.build_ring(instance.spec_text)

    @cached_property
    def violation(self):
        return rings.quasi_second_ring_violation(self.ring)

    @cached_property
    def classification(self):
        return rings.classify_quasi_second_ring(self.ring)


# -- rules ---------------------------------------------------------------


def _empty(ctx):
    return ctx.n == 0


def _r1(ctx):
    if _empty(ctx):
        return VACUOUS, None, "empty space"
    t0, src = ctx.axiom("T0")
    if t0 and ctx.sep.t0:
        return PASS, None, None
    return FAIL, f"T0 fast={ctx.sep.t0} definitional={t0} ({src})", None


def _r2(ctx):
    t1, src = ctx.axiom("T1")
    if t1 == ctx.qs:
        return PASS, None, None
    witness = f"T1={t1} ({src}) but quasi_second={ctx.qs}"
    if not ctx.qs:
        witness += "; " + ctx.witness_violation()
    else:
        for i in range(ctx.n):
            for j in range(ctx.n):
                if i != j and ctx.space.le(i, j):
                    witness += (
                        f"; comparable points {ctx.space.labels[i]} <= "
                        f"{ctx.space.labels[j]}"
                    )
                    break
            else:
                continue
            break
    return FAIL, witness, None


def _r3(ctx):
    t1, _ = ctx.axiom("T1")
    t2, _ = ctx.axiom("T2")
    discrete, _ = ctx.axiom("discrete")
    values = {
        "quasi_second": ctx.qs,
        "all_images_maximal": ctx.all_images_maximal,
        "discrete": discrete,
        "metrizable": ctx.sep.metrizable,
        "T2": t2,
        "T1": t1,
    }
    if len(set(values.values())) == 1:
        return PASS, None, None
    return FAIL, str(values), None


def _r4(ctx):
    if _empty(ctx):
        return VACUOUS, None, "empty space"
    if not ctx.preds.multiplication:
        return VACUOUS, None, "not a multiplication module"
    nested = ctx.conn.nested
    uniserial = ctx.preds.uniserial
    if nested == uniserial:
        return PASS, None, None
    return FAIL, f"uniserial={uniserial} nested={nested}", None


def _r5(ctx):
    if _empty(ctx):
        return VACUOUS, None, "empty space"
    E = ctx.E
    masks = [c.image.mask for c in ctx.classes]
    criterion = True
    witness_pair = None
    for i, j in itertools.combinations_with_replacement(range(len(masks)), 2):
        total = E.join_masks(masks[i], masks[j])
        if not any(not (total & ~m) for m in masks):
            criterion = False
            witness_pair = (ctx.classes[i].label, ctx.classes[j].label)
            break
    hyper, src = ctx.axiom("hyperconnected")
    if criterion == hyper:
        return PASS, None, None
    return FAIL, (
        f"sum-bound criterion={criterion} (pair {witness_pair}) but "
        f"hyperconnected={hyper} ({src})"
    ), None


def _r6(ctx):
    if _empty(ctx):
        return VACUOUS, None, "empty space"
    space = ctx.space
    masks = [c.image.mask for c in ctx.classes]
    for i in range(space.n):
        singleton_basis = space.up[i] == 1 << i
        img = masks[i]
        is_maximal = not any(
            img != other and not (img & ~other) for other in masks
        )
        if ctx.topo is not None:
            isolated = ctx.topo.is_open(1 << i)
        else:
            isolated = singleton_basis
        if not (isolated == singleton_basis == is_maximal):
            return FAIL, (
                f"point {space.labels[i]}: isolated={isolated} "
                f"singleton_basis={singleton_basis} maximal_image={is_maximal}"
            ), None
    return PASS, None, None


def _r7(ctx):
    if _empty(ctx):
        return VACUOUS, None, "empty space"
    if ctx.topo is None:
        return VACUOUS, None, "beyond the oracle point cap"
    space, topo = ctx.space, ctx.topo
    for mask in oracle.subset_sweep(space.n):
        if topology.closure(space, mask) != oracle.oracle_closure(topo, mask):
            return FAIL, f"closure formula differs on {space.label_set(mask)}", None
        if topology.interior(space, mask) != oracle.oracle_interior(topo, mask):
            return FAIL, f"interior formula differs on {space.label_set(mask)}", None
    return PASS, None, None


def _r8(ctx):
    if _empty(ctx):
        return VACUOUS, None, "empty space"
    if ctx.topo is None:
        return VACUOUS, None, "beyond the oracle point cap"
    checks = oracle.oracle_structure_checks(ctx.topo, ctx.space)
    if (
        checks.open_dense_contains_maximal_ok
        and checks.minimal_neighborhoods_ok
        and checks.closure_union_ok
    ):
        return PASS, None, None
    return FAIL, str(checks), None


def _r9(ctx):
    qs = ctx.qs
    allsecond = ctx.all_images_second
    semi = ctx.semiprime
    if qs and not allsecond:
        bad = next(
            c for c in ctx.classes
            if not modules.is_second_submodule(ctx.E, c.image)
        )
        return FAIL, (
            f"quasi second, but {bad.label} with image "
            f"{{{','.join(bad.image.element_strs())}}} is not second"
        ), None
    if semi and allsecond and not qs:
        return FAIL, (
            "semiprime annihilator and all class images second, yet "
            + ctx.witness_violation()
        ), None
    if qs or (semi and allsecond):
        return PASS, None, None
    return VACUOUS, None, "hypotheses not satisfied"


def _r10(ctx):
    if not ctx.qs:
        return VACUOUS, None, "not quasi second"
    if not ctx.classes:
        return VACUOUS, None, "no classes"
    for c in ctx.classes:
        gen, maximal = modules.submodule_annihilator(ctx.E, c.image)
        if not maximal:
            return FAIL, (
                f"class {c.label}: annihilator of the image is not maximal "
                f"(generator {gen})"
            ), None
    return PASS, None, None


def _r11(ctx):
    if not ctx.preds.comultiplication:
        return VACUOUS, None, "not a comultiplication module"
    values = {
        "quasi_second": ctx.qs,
        "all_images_second": ctx.all_images_second,
        "all_annihilators_maximal": ctx.all_ann_maximal,
    }
    if len(set(values.values())) == 1:
        return PASS, None, None
    return FAIL, str(values), None


def _r12(ctx):
    if not (ctx.preds.comultiplication and ctx.preds.semiprime_annihilator):
        return VACUOUS, None, "needs comultiplication and a semiprime annihilator"
    split = modules.weak_idempotent_split(ctx.E)
    rhs = split.kind in ("simple", "split")
    if ctx.qs == rhs:
        return PASS, None, None
    detail = split.kind
    if split.kind == "split":
        detail += f" at e={ctx.E.residue_ring.format_element(split.idempotent)}"
    return FAIL, f"quasi_second={ctx.qs} but decomposition={detail}", None


def _r13(ctx):
    if not (ctx.preds.comultiplication and ctx.preds.semiprime_annihilator):
        return VACUOUS, None, "needs comultiplication and a semiprime annihilator"
    t1, src = ctx.axiom("T1")
    discrete, _ = ctx.axiom("discrete") if ctx.n else (True, "fast")
    rhs = ctx.n == 0 or (discrete and ctx.n == 2)
    if t1 == rhs:
        return PASS, None, None
    return FAIL, f"T1={t1} ({src}) but points={ctx.n} discrete={discrete}", None


def _r14(ctx):
    brute = ctx.violation is None
    structural = ctx.classification != rings.NOT_QS
    if brute == structural:
        return PASS, None, None
    v = ctx.violation
    detail = f"brute={brute} classification={ctx.classification}"
    if v is not None:
        detail += (
            f"; witness a={v['a']} b={v['b']} (a)={{{','.join(v['ideal_a'])}}} "
            f"(b)={{{','.join(v['ideal_b'])}}}"
        )
    return FAIL, detail, None


def _r15(ctx):
    ring = ctx.ring
    if not isinstance(ring, rings.IdealizeRing):
        return VACUOUS, None, "not an idealization"
    if not ring.base.is_field():
        return VACUOUS, None, "base ring is not a field"
    if ctx.violation is None:
        return PASS, None, None
    v = ctx.violation
    return FAIL, f"idealization of a field not quasi second: a={v['a']} b={v['b']}", None


def _r16(ctx):
    if not ctx.qs:
        return VACUOUS, None, "not quasi second"
    if ctx.E.order > modules.LATTICE_CAP:
        return VACUOUS, None, "beyond the lattice cap"
    for sub in modules.enumerate_submodules(ctx.E):
        inner = modules.submodule_as_module(ctx.E, sub)
        v = ctx.qs_finder(inner)
        if v is not None:
            return FAIL, (
                f"submodule {{{','.join(sub.element_strs())}}} is not quasi "
                f"second: a={v['a']} b={v['b']}"
            ), None
        quot = modules.quotient_module(ctx.E, sub)
        v = ctx.qs_finder(quot)
        if v is not None:
            return FAIL, (
                f"quotient by {{{','.join(sub.element_strs())}}} is not quasi "
                f"second: a={v['a']} b={v['b']}"
            ), None
    if ctx.E.kind == "cyclic_sum" and len(ctx.E.moduli) == 2:
        for d in ctx.E.moduli:
            summand = modules.cyclic_sum(ctx.E.domain, (d,))
            v = ctx.qs_finder(summand)
            if v is not None:
                return FAIL, f"summand {summand.spec_text} is not quasi second", None
    return PASS, None, None


def _r17(ctx):
    if _empty(ctx):
        return VACUOUS, None, "empty space"
    if ctx.topo is None:
        return VACUOUS, None, "beyond the oracle point cap"
    fast = ctx.sep.t3
    definitional = oracle.oracle_axiom(ctx.topo, "T3")
    if fast == definitional:
        return PASS, None, None
    return FAIL, f"T3 fast={fast} definitional={definitional}", None


def _r18(ctx):
    if not ctx.ann_prime:
        return VACUOUS, None, "annihilator is not prime"
    if _empty(ctx):
        return VACUOUS, None, (
            "prime annihilator reachable only via empty spaces at this scale; "
            "ultraconnectedness and T4 hold vacuously"
        )
    ultra, _ = ctx.axiom("ultraconnected")
    t4 = oracle.oracle_axiom(ctx.topo, "T4") if ctx.topo else None
    if ultra and t4:
        return PASS, None, None
    return FAIL, f"prime annihilator but ultraconnected={ultra} T4={t4}", None


def _reduce_residue(E_target, parent_ring, r, modulus):
    if isinstance(parent_ring, rings.ZnRing):
        return r % modulus.value
    return scalars.pdivmod(r, modulus.value, parent_ring.p)[1]


def _r19(ctx):
    E = ctx.E
    if E.kind != "cyclic_sum" or len(E.moduli) != 2:
        return VACUOUS, None, "not a two-summand direct sum"
    if not ctx.semiprime:
        return VACUOUS, None, "annihilator is not semiprime"
    d1, d2 = E.moduli
    e1 = modules.cyclic_sum(E.domain, (d1,))
    e2 = modules.cyclic_sum(E.domain, (d2,))
    ring = E.residue_ring
    units = ring.units()

    def summand_membership(r):
        out = []
        for summand, d in ((e1, d1), (e2, d2)):
            rr = _reduce_residue(summand, ring, r, d)
            mask = summand.image_mask(rr)
            out.append(
                (rr, mask != summand.zero_mask and mask != summand.full_mask)
            )
        return out

    for r in ring.elements:
        if r == ring.zero or r in units:
            continue
        mask = E.image_mask(r)
        if mask == E.zero_mask or mask == E.full_mask:
            continue
        if not all(inside for _, inside in summand_membership(r)):
            return VACUOUS, None, (
                "the direct sum has scalars outside both summand class sets"
            )

    lhs = ctx.qs
    rhs = modules.is_quasi_second(e1) and modules.is_quasi_second(e2)
    detail = None
    if rhs:
        for r in ring.elements:
            (r1, in1), (r2, in2) = summand_membership(r)
            if not (in1 and in2):
                continue
            gen1, max1 = modules.submodule_annihilator(e1, e1.image(r1))
            gen2, max2 = modules.submodule_annihilator(e2, e2.image(r2))
            if gen1 != gen2 or not (max1 and max2):
                rhs = False
                detail = (
                    f"scalar {ring.format_element(r)}: annihilators "
                    f"{gen1} (maximal={max1}) vs {gen2} (maximal={max2})"
                )
                break
    if lhs == rhs:
        return PASS, None, None
    witness = f"quasi_second={lhs} but summand condition={rhs}"
    if detail:
        witness += "; " + detail
    if not lhs:
        witness += "; " + ctx.witness_violation()
    return FAIL, witness, None


def _r20(ctx):
    E = ctx.E
    if not isinstance(E.residue_ring, rings.ZnRing) or E.kind not in (
        "cyclic_sum",
        "ring_cyclic",
    ):
        return VACUOUS, None, "integer instances only"
    if _empty(ctx):
        return VACUOUS, None, "empty space"
    space = ctx.space
    n = E.residue_ring.n
    class_of = {}
    for idx, c in enumerate(ctx.classes):
        for member in c.members:
            class_of[member] = idx
    residues = sorted(class_of)
    ups = space.up
    for a in residues:
        ua = ups[class_of[a]]
        for b in residues:
            ub = ups[class_of[b]]
            if b % a == 0 and (ua & ~ub):
                return FAIL, f"{a} divides {b} but U_{a} is not inside U_{b}", None
            g = math.gcd(a, b)
            gr = g % n
            if gr in class_of and ups[class_of[gr]] != (ua & ub):
                return FAIL, (
                    f"U_gcd({a},{b}) != U_{a} & U_{b}: "
                    f"{space.label_set(ups[class_of[gr]])} vs "
                    f"{space.label_set(ua & ub)}"
                ), None
            lcm = a * b // g
            lr = lcm % n
            if lr in class_of:
                ul = ups[class_of[lr]]
                for i in range(space.n):
                    uc = ups[i]
                    if not (uc & ~ua) and not (uc & ~ub) and (uc & ~ul):
                        return FAIL, (
                            f"U_{space.labels[i]} inside U_{a} and U_{b} "
                            f"but not inside U_lcm({a},{b})"
                        ), None
    return PASS, None, (
        "the faithful-multiplication lcm identity has no finite instances "
        "and is not checked"
    )


def _direct_int_image(E, a):
    mods = [d.value for d in E.moduli]
    mask = 0
    for m in E.elements:
        val = tuple((a * x) % d for x, d in zip(m, mods))
        mask |= 1 << E.elem_index(val)
    return mask


def _direct_poly_image(E, a):
    p = E.domain.char
    mods = [d.value for d in E.moduli]
    # per-component action maps first, so the element loop is lookups only
    comp_maps = []
    for j, d in enumerate(mods):
        residues = {m[j] for m in E.elements}
        comp_maps.append(
            {x: scalars.pdivmod(scalars.pmul(a, x, p), d, p)[1] for x in residues}
        )
    mask = 0
    for m in E.elements:
        val = tuple(cm[x] for cm, x in zip(comp_maps, m))
        mask |= 1 << E.elem_index(val)
    return mask


def _r21(ctx):
    E = ctx.E
    if E.kind != "cyclic_sum":
        return VACUOUS, None, "needs an explicit cyclic-sum presentation"
    ring = E.residue_ring
    units = ring.units()
    if E.domain.kind == "int":
        n = ring.n
        samples = [(a, a % n, _direct_int_image(E, a)) for a in range(-2 * n, 2 * n + 1)]
        fmt = str
    else:
        p = E.domain.char
        g = ring.modulus
        deg = scalars.pdeg(g)
        sample_polys = set()
        for length in range(deg + 3):
            for c in itertools.product(range(p), repeat=length):
                sample_polys.add(scalars.ptrim(c))
        for j in range(deg + 2, 2 * deg + 1):
            mono = (0,) * j + (1,)
            sample_polys.add(mono)
            sample_polys.add(scalars.padd(mono, (1,), p))
            shift = (0,) * (j - deg) + (1,)
            sample_polys.add(scalars.padd(scalars.pmul(g, shift, p), (1, 1), p))
        samples = [
            (a, scalars.pdivmod(a, g, p)[1], _direct_poly_image(E, a))
            for a in sorted(sample_polys, key=lambda c: (len(c), c))
        ]
        fmt = scalars.format_poly
    for a, residue, direct_mask in samples:
        in_w_direct = direct_mask != E.zero_mask and direct_mask != E.full_mask
        in_w_residue = residue != ring.zero and residue not in units
        if in_w_direct != in_w_residue:
            return FAIL, (
                f"scalar {fmt(a)}: direct membership {in_w_direct} but "
                f"residue membership {in_w_residue}"
            ), None
        if direct_mask != E.image_mask(residue):
            return FAIL, (
                f"scalar {fmt(a)}: direct image "
                f"{{{','.join(E.format_mask(direct_mask))}}} differs from the "
                f"residue image"
            ), None
    return PASS, None, None


def _r22(ctx):
    E = ctx.E
    cyclic = E.kind == "ring_cyclic" or (
        E.kind == "cyclic_sum" and len(E.moduli) == 1
    )
    if not cyclic:
        return VACUOUS, None, "not a cyclic module"
    if not ctx.ann_prime:
        return VACUOUS, None, "annihilator is not prime"
    residue_space = topology.build_space(modules.ring_cyclic(E.residue_ring))
    if topology.is_homeomorphic(ctx.space, residue_space):
        return VACUOUS, None, (
            "prime annihilator forces a field residue ring at this scale; "
            "both spaces are empty and compare homeomorphic vacuously"
        )
    return FAIL, (
        f"space with {ctx.n} points differs from the residue-ring divisor "
        f"space with {residue_space.n} points"
    ), None


@dataclass(frozen=True)
class RuleDef:
    rule_id: str
    anchors: str
    kind: str
    fn: object


RULES = {
    r.rule_id: r
    for r in (
        RuleDef("R1", "every space is T0", "module", _r1),
        RuleDef("R2", "T1 holds exactly for quasi second modules", "module", _r2),
        RuleDef(
            "R3",
            "quasi second, maximal images, discrete, metrizable, T2, T1 agree",
            "module",
            _r3,
        ),
        RuleDef(
            "R4",
            "for multiplication modules: uniserial equals nested",
            "module",
            _r4,
        ),
        RuleDef(
            "R5",
            "common-upper-bound criterion equals hyperconnectedness",
            "module",
            _r5,
        ),
        RuleDef(
            "R6",
            "isolated point, singleton basis set and maximal image agree",
            "module",
            _r6,
        ),
        RuleDef(
            "R7",
            "order formulas for closure and interior match the oracle",
            "module",
            _r7,
        ),
        RuleDef("R8", "every open dense set contains the maximal classes", "module", _r8),
        RuleDef(
            "R9",
            "quasi second forces second images; converse under semiprime annihilator",
            "module",
            _r9,
        ),
        RuleDef(
            "R10",
            "class image annihilators are maximal in quasi second modules",
            "module",
            _r10,
        ),
        RuleDef(
            "R11",
            "comultiplication: quasi second, second images, maximal annihilators agree",
            "module",
            _r11,
        ),
        RuleDef(
            "R12",
            "comultiplication + semiprime: quasi second equals simple-or-split",
            "module",
            _r12,
        ),
        RuleDef(
            "R13",
            "comultiplication + semiprime: T1 equals empty or two-point discrete",
            "module",
            _r13,
        ),
        RuleDef(
            "R14",
            "brute-force quasi second ring test equals the structural classification",
            "ring",
            _r14,
        ),
        RuleDef("R15", "idealizations of fields are quasi second rings", "ring", _r15),
        RuleDef(
            "R16",
            "quasi second passes to submodules, quotients and direct summands",
            "module",
            _r16,
        ),
        RuleDef("R17", "closed basis sets equal definitional T3", "module", _r17),
        RuleDef(
            "R18",
            "prime annihilator forces ultraconnected and T4",
            "module",
            _r18,
        ),
        RuleDef("R19", "two-summand quasi second reduction", "module", _r19),
        RuleDef(
            "R20",
            "divisibility monotonicity and gcd/lcm basis identities over the integers",
            "module",
            _r20,
        ),
        RuleDef(
            "R21",
            "residue class enumeration matches direct scalar sampling",
            "module",
            _r21,
        ),
        RuleDef(
            "R22",
            "cyclic module with prime annihilator matches the residue-ring divisor space",
            "module",
            _r22,
        ),
    )
}

RULE_IDS = tuple(RULES)


class TheoremReport:
    def __init__(self, corpus, rule_ids, outcomes):
        self.corpus_size = len(corpus)
        digest = hashlib.sha256()
        for inst in corpus:
            digest.update(f"{inst.kind}:{inst.spec_text}\n".encode())
        self.fingerprint = digest.hexdigest()
        self.rule_ids = tuple(rule_ids)
        self.outcomes = tuple(outcomes)

    def tallies(self):
        out = {rid: {PASS: 0, FAIL: 0, VACUOUS: 0} for rid in self.rule_ids}
        for o in self.outcomes:
            out[o.rule_id][o.verdict] += 1
        return out

    def failures(self, rule_id=None):
        return [
            o
            for o in self.outcomes
            if o.verdict == FAIL and (rule_id is None or o.rule_id == rule_id)
        ]

    @property
    def total_failures(self):
        return len(self.failures())

    def payload(self):
        tallies = self.tallies()
        rules_out = []
        for rid in self.rule_ids:
            t = tallies[rid]
            rules_out.append(
                {
                    "rule_id": rid,
                    "anchors": RULES[rid].anchors,
                    "pass": t[PASS],
                    "fail": t[FAIL],
                    "vacuous": t[VACUOUS],
                    "failures": [
                        {"instance": o.instance, "witness": o.witness}
                        for o in self.failures(rid)
                    ],
                }
            )
        return {
            "corpus_size": self.corpus_size,
            "fingerprint": self.fingerprint,
            "rules": rules_out,
            "total_failures": self.total_failures,
        }


def _make_ctx(instance: Instance, qs_finder):
    if instance.kind == "ring":
        return _RingCtx(instance)
    return _ModuleCtx(instance, qs_finder)


def _evaluate(rule: RuleDef, ctx) -> RuleOutcome:
    if rule.kind != ctx.kind:
        return RuleOutcome(
            rule.rule_id,
            ctx.instance.spec_text,
            VACUOUS,
            note=f"rule applies to {rule.kind} instances",
        )
    try:
        verdict, witness, note = rule.fn(ctx)
    except modules.SizeCapExceeded as exc:
        return RuleOutcome(
            rule.rule_id, ctx.instance.spec_text, VACUOUS, note=f"size cap: {exc}"
        )
    return RuleOutcome(rule.rule_id, ctx.instance.spec_text, verdict, witness, note)


def run_rule(rule_id: str, instance: Instance, qs_finder=None) -> RuleOutcome:
    if rule_id not in RULES:
        raise ValueError(f"unknown rule id {rule_id!r}")
    finder = qs_finder or QS_VIOLATION_FINDER
    return _evaluate(RULES[rule_id], _make_ctx(instance, finder))


def run_all(corpus=None, rule_ids=None, qs_finder=None) -> TheoremReport:
    """Evaluate the rule suite over a corpus (a CorpusSpec, an instance
    list, or the default corpus) and return the deterministic report."""
    if corpus is None:
        corpus = generate_corpus(DEFAULT_CORPUS)
    elif isinstance(corpus, CorpusSpec):
        corpus = generate_corpus(corpus)
    if rule_ids is None:
        rule_ids = RULE_IDS
    else:
        for rid in rule_ids:
            if rid not in RULES:
                raise ValueError(f"unknown rule id {rid!r}")
    finder = qs_finder or QS_VIOLATION_FINDER
    outcomes = []
    for instance in corpus:
        ctx = _make_ctx(instance, finder)
        for rid in rule_ids:
            outcomes.append(_evaluate(RULES[rid], ctx))
    return TheoremReport(corpus, rule_ids, outcomes)
