"""Finite modules over the scalar domains, their submodules, and the
algebraic predicates that drive the topology construction.

A module is one of

* an explicit direct sum of cyclic residue modules A/(d_1) + ... + A/(d_k)
  over A = Z or A = F_p[x]; elements are tuples of component residues;
* a catalog ring R viewed as a cyclic module over a declared polynomial
  domain surjecting onto R; elements are the ring elements and the scalar
  action is ring multiplication;
* a submodule, quotient or direct sum derived from those.

All scalar action factors through the finite residue ring A/ann(E).  For a
finitely generated module the scalars acting neither as zero nor as a
surjection are exactly the nonzero nonunit residues modulo the
annihilator, so enumerating that ring enumerates every cyclic image aE;
a direct-sampling cross-check of this reduction lives in the verifier.

Internally elements carry integer indices and element sets are bit masks
over those indices, which keeps image computations and the submodule
lattice cheap.  Modules are immutable after construction and every
operation is pure.
"""

from __future__ import annotations

import itertools
import math
import re
from dataclasses import dataclass

from . import rings, scalars
from .scalars import INTEGERS, Scalar, ScalarDomain, pgcd, poly_domain


class ModuleError(ValueError):
    """Invalid module construction or operation."""


class SizeCapExceeded(RuntimeError):
    """The operation would exceed its documented size cap."""


ELEMENT_CAP = 4096
LATTICE_CAP = 256


def _bits(mask: int):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


class Submodule:
    """An explicit submodule: a sorted element tuple plus its bit mask.

    Closure under addition, negation and the full residue action is
    verified on construction.
    """

    __slots__ = ("module", "mask", "elements")

    def __init__(self, module: "FiniteModule", elements=None, mask=None):
        self.module = module
        if mask is None:
            if elements is None:
                raise ModuleError("a submodule needs elements or a mask")
            mask = 0
            for e in elements:
                mask |= 1 << module.elem_index(e)
        self.mask = mask
        self.elements = tuple(module.elements[i] for i in _bits(mask))
        self._verify()

    def _verify(self):
        E = self.module
        members = set(self.elements)
        if E.zero_elem not in members:
            raise ModuleError("a submodule must contain zero")
        for x in self.elements:
            if E.neg_elem(x) not in members:
                raise ModuleError(f"not closed under negation at {x!r}")
            for y in self.elements:
                if E.add_elems(x, y) not in members:
                    raise ModuleError(f"not closed under addition at {x!r}+{y!r}")
        for r in E.residue_ring.elements:
            for x in self.elements:
                if E.act(r, x) not in members:
                    raise ModuleError(f"not closed under the action of {r!r}")

    @property
    def size(self) -> int:
        return len(self.elements)

    def contains(self, other: "Submodule") -> bool:
        return not (other.mask & ~self.mask)

    def element_strs(self):
        return [self.module.format_element(e) for e in self.elements]

    def __eq__(self, other):
        return (
            isinstance(other, Submodule)
            and self.module is other.module
            and self.mask == other.mask
        )

    def __hash__(self):
        return hash((id(self.module), self.mask))

    def __repr__(self):
        return f"<Submodule size={self.size} of {self.module.spec_text}>"


@dataclass(frozen=True)
class ScalarClass:
    """A class [a] of residues with a common cyclic image aE."""

    rep: object
    members: tuple
    image: Submodule
    label: str


@dataclass(frozen=True)
class StructuralPredicates:
    divisible: bool
    simple: bool
    uniserial: bool
    multiplication: bool
    comultiplication: bool
    semiprime_annihilator: bool


@dataclass(frozen=True)
class WeakSplit:
    kind: str  # "simple" | "split" | "none"
    idempotent: object = None
    parts: tuple = None


class FiniteModule:
    """A finite module with enumerable elements and residue-ring action."""

    def __init__(
        self,
        *,
        kind,
        spec_text,
        residue_ring,
        elements,
        zero,
        add,
        neg,
        act,
        format_element,
        domain=None,
        domain_label="",
        moduli=None,
        base_ring=None,
        ann_scalar=None,
        ann_ideal=None,
    ):
        if len(elements) > ELEMENT_CAP:
            raise SizeCapExceeded(
                f"{spec_text}: {len(elements)} elements exceed the cap {ELEMENT_CAP}"
            )
        self.kind = kind
        self.spec_text = spec_text
        self.residue_ring = residue_ring
        self.elements = tuple(elements)
        self.zero_elem = zero
        self.add_elems = add
        self.neg_elem = neg
        self.act = act
        self.format_element = format_element
        self.domain = domain
        self.domain_label = domain_label
        self.moduli = moduli
        self.base_ring = base_ring
        self.ann_scalar = ann_scalar
        self.ann_ideal = ann_ideal
        self.order = len(self.elements)
        self._index = {e: i for i, e in enumerate(self.elements)}
        self.zero_mask = 1 << self._index[zero]
        self.full_mask = (1 << self.order) - 1
        self._add_tbl = None
        self._act_rows = {}
        self._images = {}
        self._classes = None
        self._lattice = None
        self._cyclic = {}

    # -- element plumbing ------------------------------------------------

    def elem_index(self, x) -> int:
        try:
            return self._index[x]
        except KeyError:
            raise ModuleError(f"{x!r} is not an element of {self.spec_text}") from None

    def elements_of_mask(self, mask: int) -> tuple:
        return tuple(self.elements[i] for i in _bits(mask))

    def format_mask(self, mask: int):
        return [self.format_element(e) for e in self.elements_of_mask(mask)]

    def _add_table(self):
        if self._add_tbl is None:
            idx = self._index
            elems = self.elements
            self._add_tbl = [
                [idx[self.add_elems(x, y)] for y in elems] for x in elems
            ]
        return self._add_tbl

    def _act_row(self, r):
        row = self._act_rows.get(r)
        if row is None:
            idx = self._index
            row = [idx[self.act(r, x)] for x in self.elements]
            self._act_rows[r] = row
        return row

    def _add_index_fn(self):
        # the quadratic table only pays off under the lattice cap
        if self.order <= LATTICE_CAP:
            tbl = self._add_table()
            return lambda i, j: tbl[i][j]
        elems, idx, add = self.elements, self._index, self.add_elems
        return lambda i, j: idx[add(elems[i], elems[j])]

    # -- images and generated submodules ----------------------------------

    def image_mask(self, r) -> int:
        mask = self._images.get(r)
        if mask is None:
            mask = 0
            for i in self._act_row(r):
                mask |= 1 << i
            self._images[r] = mask
        return mask

    def image(self, r) -> Submodule:
        return Submodule(self, mask=self.image_mask(r))

    def join_masks(self, m1: int, m2: int) -> int:
        """The submodule sum of two submodule masks."""
        if not (m2 & ~m1):
            return m1
        if not (m1 & ~m2):
            return m2
        add_index = self._add_index_fn()
        out = 0
        for i in _bits(m1):
            for j in _bits(m2):
                out |= 1 << add_index(i, j)
        return out

    def closure_mask(self, seed_indices) -> int:
        """Mask of the submodule generated by the given element indices."""
        ring = self.residue_ring
        gen = set()
        for i in seed_indices:
            for r in ring.elements:
                gen.add(self._act_row(r)[i])
        add_index = self._add_index_fn()
        mask = self.zero_mask
        queue = list(gen)
        while queue:
            i = queue.pop()
            if (mask >> i) & 1:
                continue
            queue.extend(add_index(i, j) for j in _bits(mask))
            mask |= 1 << i
        return mask

    def cyclic_mask(self, i: int) -> int:
        mask = self._cyclic.get(i)
        if mask is None:
            mask = self.closure_mask((i,))
            self._cyclic[i] = mask
        return mask

    def lattice_masks(self) -> tuple:
        """Masks of every submodule, via joins of cyclic submodules."""
        if self._lattice is None:
            if self.order > LATTICE_CAP:
                raise SizeCapExceeded(
                    f"{self.spec_text}: submodule enumeration is capped at "
                    f"{LATTICE_CAP} elements, module has {self.order}"
                )
            cyclics = []
            seen = set()
            for i in range(self.order):
                c = self.cyclic_mask(i)
                if c not in seen:
                    seen.add(c)
                    cyclics.append(c)
            known = {self.zero_mask}
            queue = [self.zero_mask]
            while queue:
                m = queue.pop()
                for c in cyclics:
                    if c & ~m:
                        j = self.join_masks(m, c)
                        if j not in known:
                            known.add(j)
                            queue.append(j)
            self._lattice = tuple(sorted(known))
        return self._lattice

    def __repr__(self):
        return f"<FiniteModule {self.spec_text} order={self.order}>"


# -- constructors --------------------------------------------------------


def cyclic_sum(domain: ScalarDomain, moduli) -> FiniteModule:
    """The direct sum of the cyclic modules A/(d) for the given moduli.

    Moduli are normalized to canonical associates and sorted, so the
    spec text is canonical.
    """
    norm = []
    for d in moduli:
        if not isinstance(d, Scalar):
            d = scalars.scalar(domain, d)
        if d.domain != domain:
            raise ModuleError("modulus from a different domain")
        if d.is_zero():
            raise ModuleError("modulus is zero")
        if d.is_unit():
            raise ModuleError("modulus is a unit")
        norm.append(scalars.normalize(d))
    if not norm:
        raise ModuleError("at least one modulus is required")
    norm.sort(key=lambda s: s.sort_key())
    moduli = tuple(norm)

    count = 1
    for d in moduli:
        count *= abs(d.value) if domain.kind == "int" else domain.char ** scalars.pdeg(d.value)
    if count > ELEMENT_CAP:
        raise SizeCapExceeded(f"{count} elements exceed the cap {ELEMENT_CAP}")

    ann = moduli[0]
    for d in moduli[1:]:
        ann = scalars.scalar_lcm(ann, d)

    if domain.kind == "int":
        mods = [d.value for d in moduli]
        comps = [range(m) for m in mods]
        residue_ring = rings.ZnRing(ann.value)

        def add(x, y):
            return tuple((a + b) % m for a, b, m in zip(x, y, mods))

        def neg(x):
            return tuple((-a) % m for a, m in zip(x, mods))

        def act(r, x):
            return tuple((r * a) % m for a, m in zip(x, mods))

        def fmt(x):
            if len(mods) == 1:
                return str(x[0])
            return "(" + ",".join(str(a) for a in x) + ")"

        zero = (0,) * len(mods)
        spec_text = "Z:" + ",".join(str(m) for m in mods)
    else:
        p = domain.char
        mods = [d.value for d in moduli]
        comps = []
        for m in mods:
            res = [
                scalars.ptrim(c)
                for k in range(len(m))
                for c in itertools.product(range(p), repeat=k)
                if not c or c[-1] != 0
            ]
            res = sorted(set(res), key=lambda c: (len(c), c))
            comps.append(res)
        residue_ring = rings.QuotPolyRing(p, ann.value)

        def add(x, y):
            return tuple(scalars.padd(a, b, p) for a, b in zip(x, y))

        def neg(x):
            return tuple(scalars.pneg(a, p) for a in x)

        def act(r, x):
            return tuple(
                scalars.pdivmod(scalars.pmul(r, a, p), m, p)[1]
                for a, m in zip(x, mods)
            )

        def fmt(x):
            if len(mods) == 1:
                return scalars.format_poly(x[0])
            return "(" + ",".join(scalars.format_poly(a) for a in x) + ")"

        zero = ((),) * len(mods)
        spec_text = f"F{p}[x]:" + ",".join(scalars.format_poly(m) for m in mods)

    elements = tuple(itertools.product(*comps))

    return FiniteModule(
        kind="cyclic_sum",
        spec_text=spec_text,
        residue_ring=residue_ring,
        elements=elements,
        zero=zero,
        add=add,
        neg=neg,
        act=act,
        format_element=fmt,
        domain=domain,
        domain_label=str(domain),
        moduli=moduli,
        ann_scalar=ann,
    )


def _default_domain_label(ring: rings.FiniteRing) -> str:
    if isinstance(ring, rings.ZnRing):
        return "Z"
    if isinstance(ring, rings.QuotPolyRing):
        return f"F{ring.p}[x]"
    if isinstance(ring, rings.TruncRing):
        return f"F{ring.p}[x1..x{ring.k}]"
    # any finite commutative ring is a quotient of a polynomial domain over Z
    return "Z[x1,x2,...]"


def ring_cyclic(ring: rings.FiniteRing, domain_label: str | None = None) -> FiniteModule:
    """A catalog ring as a cyclic module over a declared acting domain.

    The declared domain is metadata: the action factors through the ring
    itself, which is where all computation happens.
    """
    return FiniteModule(
        kind="ring_cyclic",
        spec_text=f"ring:{ring.spec}",
        residue_ring=ring,
        elements=ring.elements,
        zero=ring.zero,
        add=ring.add,
        neg=ring.neg,
        act=ring.mul,
        format_element=ring.format_element,
        domain=None,
        domain_label=domain_label or _default_domain_label(ring),
        base_ring=ring,
        ann_ideal=frozenset({ring.zero}),
    )


_POLY_HEAD_RE = re.compile(r"F(\d+)\[x\]\Z")


def build_module(text: str) -> FiniteModule:
    """Parse a module spec: ``Z:8``, ``Z:2,4``, ``F2[x]:x^3``, ``ring:Zn(8)``."""
    s = text.replace(" ", "")
    if s.startswith("ring:"):
        return ring_cyclic(rings.build_ring(s[5:]))
    head, sep, rest = s.partition(":")
    if not sep:
        raise ModuleError(f"bad module spec {text!r}: missing ':'")
    if head == "Z":
        domain = INTEGERS
    else:
        m = _POLY_HEAD_RE.match(head)
        if not m:
            raise ModuleError(f"bad module spec {text!r}: unknown domain {head!r}")
        domain = poly_domain(int(m.group(1)))
    if not rest:
        raise ModuleError(f"bad module spec {text!r}: no moduli")
    moduli = [scalars.parse_scalar(t, domain) for t in rest.split(",")]
    return cyclic_sum(domain, moduli)


# -- spec operations ------------------------------------------------------


def annihilator(E: FiniteModule):
    """Generator scalar for explicit cyclic sums; the ring-side zero ideal
    (or killer set, for derived modules) otherwise."""
    if E.ann_scalar is not None:
        return E.ann_scalar
    return E.ann_ideal


def scalar_classes(E: FiniteModule) -> tuple:
    """The classes [a] of nonzero nonunit residues under equal images aE.

    Second modules (every residue acts as zero or a surjection) yield the
    empty tuple, and with it the empty space downstream.
    """
    if E._classes is None:
        ring = E.residue_ring
        units = ring.units()
        groups: dict[int, list] = {}
        for r in ring.elements:
            if r == ring.zero or r in units:
                continue
            groups.setdefault(E.image_mask(r), []).append(r)
        classes = []
        for mask, members in groups.items():
            rep = members[0]
            classes.append(
                ScalarClass(
                    rep=rep,
                    members=tuple(members),
                    image=Submodule(E, mask=mask),
                    label=f"[{ring.format_element(rep)}]",
                )
            )
        classes.sort(key=lambda c: ring.sort_key(c.rep))
        E._classes = tuple(classes)
    return E._classes


def cyclic_image(E: FiniteModule, r) -> Submodule:
    """The submodule aE = {a*m : m in E} for a residue a."""
    E.residue_ring.index(r)
    return E.image(r)


def enumerate_submodules(E: FiniteModule) -> tuple:
    """Every submodule, as verified Submodule values, smallest first."""
    return tuple(Submodule(E, mask=m) for m in E.lattice_masks())


def _killer_residues(E: FiniteModule, mask: int) -> list:
    zero_i = E.elem_index(E.zero_elem)
    out = []
    for r in E.residue_ring.elements:
        row = E._act_row(r)
        if all(row[i] == zero_i for i in _bits(mask)):
            out.append(r)
    return out


def _ideal_generator_info(E: FiniteModule, killers):
    """Scalar generator of the pulled-back ideal when the residue ring is a
    base Euclidean quotient; otherwise the ring-side element set."""
    ring = E.residue_ring
    if E.domain is not None and isinstance(ring, rings.ZnRing):
        g = math.gcd(ring.n, *killers) if killers else ring.n
        return scalars.scalar(E.domain, g), None
    if E.domain is not None and isinstance(ring, rings.QuotPolyRing):
        g = ring.modulus
        for k in killers:
            g = pgcd(g, k, ring.p)
        return scalars.scalar(E.domain, g), None
    return None, frozenset(killers)


def submodule_annihilator(E: FiniteModule, N: Submodule):
    """(generator or ring-side killer set, maximality flag).

    For cyclic sums the flag is the irreducibility of the generator in A;
    in general it asks whether the residue ring modulo the killer ideal is
    a field (with a proper ideal).
    """
    killers = _killer_residues(E, N.mask)
    gen, ideal = _ideal_generator_info(E, killers)
    if gen is not None:
        maximal = (
            not gen.is_zero() and not gen.is_unit() and scalars.is_irreducible(gen)
        )
        return gen, maximal
    quotient = rings.QuotientRing(E.residue_ring, ideal)
    return ideal, quotient.order > 1 and quotient.is_field()


def is_second_module(E: FiniteModule) -> bool:
    """Every residue acts as zero or as a surjection."""
    return all(
        E.image_mask(r) in (E.zero_mask, E.full_mask)
        for r in E.residue_ring.elements
    )


def is_second_submodule(E: FiniteModule, N: Submodule) -> bool:
    """Every residue maps N onto N or to zero."""
    zero_bit = E.zero_mask
    for r in E.residue_ring.elements:
        row = E._act_row(r)
        img = 0
        for i in _bits(N.mask):
            img |= 1 << row[i]
        if img != N.mask and img != zero_bit:
            return False
    return True


def find_quasi_second_violation(E: FiniteModule):
    """First residue pair (a, b) with 0 != bE <= aE != E but bE != aE.

    Returns None when E is quasi second.  The search runs over every
    residue pair, zero and units included, so the guards carry the whole
    definition.
    """
    ring = E.residue_ring
    full = E.full_mask
    zmask = E.zero_mask
    for ra in ring.elements:
        ma = E.image_mask(ra)
        if ma == full:
            continue
        for rb in ring.elements:
            mb = E.image_mask(rb)
            if mb == zmask or mb & ~ma:
                continue
            if mb != ma:
                return {
                    "a": ring.format_element(ra),
                    "b": ring.format_element(rb),
                    "aE": E.format_mask(ma),
                    "bE": E.format_mask(mb),
                }
    return None


def is_quasi_second(E: FiniteModule) -> bool:
    return find_quasi_second_violation(E) is None


def _semiprime_annihilator(E: FiniteModule) -> bool:
    ring = E.residue_ring
    zero = ring.zero
    return not any(r != zero and ring.mul(r, r) == zero for r in ring.elements)


def structural_predicates(E: FiniteModule) -> StructuralPredicates:
    """The lattice-driven predicate record.

    ``divisible`` holds only for the one-element module: a finite nonzero
    module over these (infinite) domains always has a nonzero annihilator
    scalar, which cannot act surjectively.
    """
    ring = E.residue_ring
    lat = E.lattice_masks()
    zmask = E.zero_mask
    zero_i = E.elem_index(E.zero_elem)

    uniserial = True
    for a, b in itertools.combinations(lat, 2):
        if (a & ~b) and (b & ~a):
            uniserial = False
            break

    multiplication = True
    for n_mask in lat:
        colon_images = {
            E.image_mask(r)
            for r in ring.elements
            if not (E.image_mask(r) & ~n_mask)
        }
        span = zmask
        for m in colon_images:
            span = E.join_masks(span, m)
        if span != n_mask:
            multiplication = False
            break

    comultiplication = True
    for n_mask in lat:
        killers = _killer_residues(E, n_mask)
        rows = [E._act_row(r) for r in killers]
        ann_e = 0
        for i in range(E.order):
            if all(row[i] == zero_i for row in rows):
                ann_e |= 1 << i
        if ann_e != n_mask:
            comultiplication = False
            break

    return StructuralPredicates(
        divisible=E.order == 1,
        simple=E.order > 1 and len(lat) == 2,
        uniserial=uniserial,
        multiplication=multiplication,
        comultiplication=comultiplication,
        semiprime_annihilator=_semiprime_annihilator(E),
    )


def _is_minimal_mask(E: FiniteModule, mask: int) -> bool:
    if mask == E.zero_mask:
        return False
    zero_i = E.elem_index(E.zero_elem)
    return all(E.cyclic_mask(i) == mask for i in _bits(mask) if i != zero_i)


def weak_idempotent_split(E: FiniteModule) -> WeakSplit:
    """Decompose E = eE + (1-e)E for a weak idempotent e, if possible.

    Returns "simple" when E has no proper nonzero submodule, a "split"
    with two nonzero minimal parts meeting trivially and summing to E,
    or "none".  Weak idempotents of the domain are exactly the idempotent
    residues of A/ann(E).
    """
    zero_i = E.elem_index(E.zero_elem)
    if all(
        E.cyclic_mask(i) == E.full_mask for i in range(E.order) if i != zero_i
    ):
        return WeakSplit("simple")
    ring = E.residue_ring
    zmask = E.zero_mask
    for e in ring.elements:
        if ring.mul(e, e) != e:
            continue
        part_e = E.image_mask(e)
        part_f = E.image_mask(ring.sub(ring.one, e))
        if part_e == zmask or part_f == zmask:
            continue
        if (part_e & part_f) != zmask:
            continue
        if E.join_masks(part_e, part_f) != E.full_mask:
            continue
        if _is_minimal_mask(E, part_e) and _is_minimal_mask(E, part_f):
            return WeakSplit(
                "split",
                idempotent=e,
                parts=(Submodule(E, mask=part_e), Submodule(E, mask=part_f)),
            )
    return WeakSplit("none")


# -- derived modules -------------------------------------------------------


def submodule_as_module(E: FiniteModule, N: Submodule) -> FiniteModule:
    """N with the induced action; the residue ring shrinks to R/ann(N)."""
    if N.module is not E:
        raise ModuleError("the submodule belongs to a different module")
    killers = _killer_residues(E, N.mask)
    ann_scalar, ann_ideal = _ideal_generator_info(E, killers)
    quotient_ring = rings.QuotientRing(E.residue_ring, frozenset(killers))
    return FiniteModule(
        kind="submodule",
        spec_text=f"sub({E.spec_text};{len(N.elements)})",
        residue_ring=quotient_ring,
        elements=N.elements,
        zero=E.zero_elem,
        add=E.add_elems,
        neg=E.neg_elem,
        act=E.act,
        format_element=E.format_element,
        domain=E.domain,
        domain_label=E.domain_label,
        ann_scalar=ann_scalar,
        ann_ideal=ann_ideal,
    )


def quotient_module(E: FiniteModule, N: Submodule) -> FiniteModule:
    """E/N on least coset representatives."""
    if N.module is not E:
        raise ModuleError("the submodule belongs to a different module")
    rep: dict = {}
    reps = []
    for m in E.elements:
        if m in rep:
            continue
        reps.append(m)
        for x in N.elements:
            rep[E.add_elems(m, x)] = m
    killers = [
        r for r in E.residue_ring.elements if not (E.image_mask(r) & ~N.mask)
    ]
    ann_scalar, ann_ideal = _ideal_generator_info(E, killers)
    quotient_ring = rings.QuotientRing(E.residue_ring, frozenset(killers))
    parent_add, parent_neg, parent_act = E.add_elems, E.neg_elem, E.act
    return FiniteModule(
        kind="quotient",
        spec_text=f"quot({E.spec_text};{len(N.elements)})",
        residue_ring=quotient_ring,
        elements=tuple(reps),
        zero=rep[E.zero_elem],
        add=lambda x, y: rep[parent_add(x, y)],
        neg=lambda x: rep[parent_neg(x)],
        act=lambda r, x: rep[parent_act(r, x)],
        format_element=E.format_element,
        domain=E.domain,
        domain_label=E.domain_label,
        ann_scalar=ann_scalar,
        ann_ideal=ann_ideal,
    )


def direct_sum(E1: FiniteModule, E2: FiniteModule) -> FiniteModule:
    """The direct sum of two explicit cyclic sums over the same domain."""
    if E1.kind != "cyclic_sum" or E2.kind != "cyclic_sum":
        raise ModuleError("direct sums are supported for explicit cyclic sums")
    if E1.domain != E2.domain:
        raise ModuleError(
            f"domain mismatch: {E1.domain_label} versus {E2.domain_label}"
        )
    return cyclic_sum(E1.domain, E1.moduli + E2.moduli)
