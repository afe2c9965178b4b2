"""Finite-set ambient: pullbacks, coproducts, reflexive coequalizers, covers.

Internal categories live here as set-and-table data: objects and arrows are
finite sets (elements 0..size-1), structure maps are total tables, and the
composable-pairs object is the canonical pullback of target along source.
The elements and localization constructions are rebuilt in this language
from the ambient operations, independently of the direct modules, so the
two routes can be compared by isomorphism search on instances.

Every universal property used is witnessed: the mediating-map constructors
check existence and uniqueness instead of assuming them, and the cover
class (surjections) is certified by exhausting small instances.

Canonical orders everywhere: pullback elements are lexicographic pairs,
coproducts concatenate blocks in input order, quotients list classes by
their least member.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Sequence

from .errors import AxiomError, DomainError, InputError, IntegrityError
from .fincat import FinCategory, ValidationReport


@dataclass(frozen=True, eq=True)
class FinSetObject:
    label: str
    size: int

    def __post_init__(self) -> None:
        if self.size < 0:
            raise InputError(f"negative size for {self.label!r}")


@dataclass(frozen=True, eq=True)
class FinSetMap:
    dom: FinSetObject
    cod: FinSetObject
    table: tuple

    def __post_init__(self) -> None:
        if len(self.table) != self.dom.size:
            raise InputError(
                f"map table has {len(self.table)} entries for a domain of size {self.dom.size}"
            )
        for v in self.table:
            if not isinstance(v, int) or not 0 <= v < self.cod.size:
                raise InputError(f"map value {v!r} outside codomain of size {self.cod.size}")

    def __call__(self, i: int) -> int:
        return self.table[i]


def identity_map(A: FinSetObject) -> FinSetMap:
    return FinSetMap(A, A, tuple(range(A.size)))


def compose_maps(f: FinSetMap, g: FinSetMap) -> FinSetMap:
    """f followed by g."""
    if f.cod != g.dom:
        raise DomainError(f"maps not composable: {f.cod!r} vs {g.dom!r}")
    return FinSetMap(f.dom, g.cod, tuple(g.table[v] for v in f.table))


def is_surjective(f: FinSetMap) -> bool:
    return len(set(f.table)) == f.cod.size


def pullback(f: FinSetMap, g: FinSetMap) -> tuple[FinSetObject, FinSetMap, FinSetMap]:
    """Pairs (x, y) with f(x) = g(y), in lexicographic order."""
    if f.cod != g.cod:
        raise DomainError("pullback needs a common codomain")
    pairs = [
        (x, y)
        for x in range(f.dom.size)
        for y in range(g.dom.size)
        if f.table[x] == g.table[y]
    ]
    P = FinSetObject(f"pb({f.dom.label},{g.dom.label})", len(pairs))
    pi0 = FinSetMap(P, f.dom, tuple(x for x, _ in pairs))
    pi1 = FinSetMap(P, g.dom, tuple(y for _, y in pairs))
    return P, pi0, pi1


def pullback_mediate(
    pi0: FinSetMap, pi1: FinSetMap, h0: FinSetMap, h1: FinSetMap
) -> FinSetMap:
    """The unique map into the pullback matching a cone; checked, not assumed."""
    if h0.dom != h1.dom or h0.cod != pi0.cod or h1.cod != pi1.cod:
        raise DomainError("cone does not match the pullback's feet")
    table = []
    for z in range(h0.dom.size):
        hits = [
            p
            for p in range(pi0.dom.size)
            if pi0.table[p] == h0.table[z] and pi1.table[p] == h1.table[z]
        ]
        if len(hits) != 1:
            raise DomainError(
                f"cone element {z} has {len(hits)} factorizations through the pullback"
            )
        table.append(hits[0])
    return FinSetMap(h0.dom, pi0.dom, tuple(table))


def coproduct(parts: Sequence[FinSetObject]) -> tuple[FinSetObject, list[FinSetMap]]:
    """Tagged disjoint union; blocks in input order."""
    total = sum(p.size for p in parts)
    label = "(" + "+".join(p.label for p in parts) + ")"
    S = FinSetObject(label, total)
    injections = []
    offset = 0
    for p in parts:
        injections.append(FinSetMap(p, S, tuple(range(offset, offset + p.size))))
        offset += p.size
    return S, injections


def coproduct_mediate(
    S: FinSetObject, injections: Sequence[FinSetMap], legs: Sequence[FinSetMap]
) -> FinSetMap:
    """The unique map off a coproduct agreeing with every leg."""
    if len(injections) != len(legs):
        raise DomainError("one leg per block required")
    if any(leg.dom != inj.dom for inj, leg in zip(injections, legs)):
        raise DomainError("legs do not match the coproduct blocks")
    cod = legs[0].cod if legs else FinSetObject("0", 0)
    if any(leg.cod != cod for leg in legs):
        raise DomainError("legs have different codomains")
    table: list = [None] * S.size
    for inj, leg in zip(injections, legs):
        for i in range(inj.dom.size):
            table[inj.table[i]] = leg.table[i]
    if any(v is None for v in table):
        raise DomainError("injections do not cover the coproduct")
    return FinSetMap(S, cod, tuple(table))


def has_common_section(f: FinSetMap, g: FinSetMap) -> bool:
    """Whether some h satisfies h;f = h;g = identity, i.e. the pair is
    reflexive. Simultaneous sections are built pointwise when they exist."""
    if f.dom != g.dom or f.cod != g.cod:
        raise DomainError("sections make sense for parallel pairs only")
    return all(
        any(f.table[r] == a and g.table[r] == a for r in range(f.dom.size))
        for a in range(f.cod.size)
    )


def coequalize_reflexive(f: FinSetMap, g: FinSetMap) -> tuple[FinSetObject, FinSetMap]:
    """Quotient of the shared codomain by f(x) ~ g(x); classes by least member.

    Finite sets have all such quotients, so the computation never needs the
    pair to be reflexive; callers that rely on reflexivity assert it with
    has_common_section.
    """
    if f.dom != g.dom or f.cod != g.cod:
        raise DomainError("coequalizer needs a parallel pair")
    parent = list(range(f.cod.size))

    def find(i: int) -> int:
        root = i
        while parent[root] != root:
            root = parent[root]
        while parent[i] != root:
            parent[i], i = root, parent[i]
        return root

    for r in range(f.dom.size):
        a, b = find(f.table[r]), find(g.table[r])
        if a != b:
            parent[max(a, b)] = min(a, b)
    roots = sorted({find(i) for i in range(f.cod.size)})
    root_pos = {root: k for k, root in enumerate(roots)}
    Q = FinSetObject(f"{f.cod.label}/~", len(roots))
    q = FinSetMap(f.cod, Q, tuple(root_pos[find(i)] for i in range(f.cod.size)))
    return Q, q


def coequalizer_mediate(q: FinSetMap, h: FinSetMap) -> FinSetMap:
    """The unique map off the quotient with q;m = h; checked elementwise."""
    if h.dom != q.dom:
        raise DomainError("leg does not start at the quotient's source")
    table: list = [None] * q.cod.size
    for a in range(q.dom.size):
        cls = q.table[a]
        if table[cls] is None:
            table[cls] = h.table[a]
        elif table[cls] != h.table[a]:
            raise DomainError(f"leg is not constant on the class of element {a}")
    if any(v is None for v in table):
        raise DomainError("quotient map is not surjective")
    return FinSetMap(q.cod, h.cod, tuple(table))


@dataclass(frozen=True)
class CoverClass:
    """The surjections, as a membership predicate."""

    name: str = "surjections"

    def contains(self, f: FinSetMap) -> bool:
        return is_surjective(f)


def _all_objects(max_size: int) -> list[FinSetObject]:
    return [FinSetObject(f"s{n}", n) for n in range(max_size + 1)]


def _all_maps(A: FinSetObject, B: FinSetObject) -> list[FinSetMap]:
    if A.size == 0:
        return [FinSetMap(A, B, ())]
    return [
        FinSetMap(A, B, tab) for tab in itertools.product(range(B.size), repeat=A.size)
    ]


def verify_cover_class(max_size: int = 4) -> ValidationReport:
    """Certify the surjection class on every map between small sets.

    Checks identities, closure under composition, stability under pullback,
    and effectiveness (every cover coequalizes its kernel pair).
    """
    covers = CoverClass()
    report = ValidationReport()
    objects = _all_objects(max_size)
    maps = [f for A in objects for B in objects for f in _all_maps(A, B)]

    for A in objects:
        if not covers.contains(identity_map(A)):
            report.add(f"identity on size {A.size} is not a cover")

    member = [f for f in maps if covers.contains(f)]
    for f in member:
        for g in member:
            if f.cod != g.dom:
                continue
            if not covers.contains(compose_maps(f, g)):
                report.add(f"composite of covers {f.table!r};{g.table!r} is not a cover")

    for f in member:
        for g in maps:
            if g.cod != f.cod:
                continue
            _, _, p1 = pullback(f, g)
            if not covers.contains(p1):
                report.add(
                    f"pullback of cover {f.table!r} along {g.table!r} is not a cover"
                )

    for f in member:
        K, k0, k1 = pullback(f, f)
        Q, q = coequalize_reflexive(k0, k1)
        try:
            m = coequalizer_mediate(q, f)
        except DomainError:
            report.add(f"cover {f.table!r} does not coequalize its kernel pair")
            continue
        if not (is_surjective(m) and len(set(m.table)) == len(m.table)):
            report.add(f"comparison for cover {f.table!r} is not an isomorphism")
    return report


@dataclass(eq=True)
class InternalCategory:
    """A category object in finite sets: object and arrow sets plus tables."""

    c0: FinSetObject
    c1: FinSetObject
    s: FinSetMap
    t: FinSetMap
    e: FinSetMap
    c: FinSetMap

    def composable_pairs(self) -> tuple[FinSetObject, FinSetMap, FinSetMap]:
        return pullback(self.t, self.s)


def _pair_positions(IC: InternalCategory) -> dict:
    _, p0, p1 = IC.composable_pairs()
    return {(p0.table[k], p1.table[k]): k for k in range(p0.dom.size)}


def _comp(IC: InternalCategory, pairs: dict, i: int, j: int) -> int:
    return IC.c.table[pairs[(i, j)]]


def validate_internal_category(IC: InternalCategory) -> ValidationReport:
    """All category laws as table equalities; malformed shapes raise."""
    if IC.s.dom != IC.c1 or IC.s.cod != IC.c0:
        raise InputError("source map has wrong endpoints")
    if IC.t.dom != IC.c1 or IC.t.cod != IC.c0:
        raise InputError("target map has wrong endpoints")
    if IC.e.dom != IC.c0 or IC.e.cod != IC.c1:
        raise InputError("identity map has wrong endpoints")
    P, p0, p1 = IC.composable_pairs()
    if IC.c.dom.size != P.size or IC.c.cod != IC.c1:
        raise InputError("composition is not defined on the composable-pairs object")

    report = ValidationReport()
    if compose_maps(IC.e, IC.s).table != tuple(range(IC.c0.size)):
        report.add("identities do not section the source map")
    if compose_maps(IC.e, IC.t).table != tuple(range(IC.c0.size)):
        report.add("identities do not section the target map")

    for k in range(P.size):
        i, j = p0.table[k], p1.table[k]
        comp = IC.c.table[k]
        if IC.s.table[comp] != IC.s.table[i]:
            report.add(f"composite of pair {k} breaks the source law")
        if IC.t.table[comp] != IC.t.table[j]:
            report.add(f"composite of pair {k} breaks the target law")

    pairs = {(p0.table[k], p1.table[k]): k for k in range(P.size)}
    for f in range(IC.c1.size):
        left = pairs.get((IC.e.table[IC.s.table[f]], f))
        if left is None or IC.c.table[left] != f:
            report.add(f"left identity law fails at arrow {f}")
        right = pairs.get((f, IC.e.table[IC.t.table[f]]))
        if right is None or IC.c.table[right] != f:
            report.add(f"right identity law fails at arrow {f}")

    for f in range(IC.c1.size):
        for g in range(IC.c1.size):
            if IC.t.table[f] != IC.s.table[g]:
                continue
            fg = IC.c.table[pairs[(f, g)]]
            for h in range(IC.c1.size):
                if IC.t.table[g] != IC.s.table[h]:
                    continue
                gh = IC.c.table[pairs[(g, h)]]
                # a composite with broken endpoints was reported above and
                # makes one of these pairs non-composable
                if (fg, h) not in pairs or (f, gh) not in pairs:
                    continue
                if IC.c.table[pairs[(fg, h)]] != IC.c.table[pairs[(f, gh)]]:
                    report.add(f"associativity fails at triple ({f},{g},{h})")
    return report


@dataclass(eq=True)
class InternalFunctor:
    dom: InternalCategory
    cod: InternalCategory
    f0: FinSetMap
    f1: FinSetMap


def validate_internal_functor(F: InternalFunctor) -> ValidationReport:
    if F.f0.dom != F.dom.c0 or F.f0.cod != F.cod.c0:
        raise InputError("object part has wrong endpoints")
    if F.f1.dom != F.dom.c1 or F.f1.cod != F.cod.c1:
        raise InputError("arrow part has wrong endpoints")
    report = ValidationReport()
    if compose_maps(F.f1, F.cod.s).table != compose_maps(F.dom.s, F.f0).table:
        report.add("source square does not commute")
    if compose_maps(F.f1, F.cod.t).table != compose_maps(F.dom.t, F.f0).table:
        report.add("target square does not commute")
    if compose_maps(F.dom.e, F.f1).table != compose_maps(F.f0, F.cod.e).table:
        report.add("identity square does not commute")
    dpairs = _pair_positions(F.dom)
    cpairs = _pair_positions(F.cod)
    for (i, j), k in dpairs.items():
        lhs = F.f1.table[F.dom.c.table[k]]
        key = (F.f1.table[i], F.f1.table[j])
        if key not in cpairs:
            report.add(f"images of pair ({i},{j}) are not composable")
            continue
        rhs = F.cod.c.table[cpairs[key]]
        if lhs != rhs:
            report.add(f"composition square fails at pair ({i},{j})")
    return report


@dataclass(eq=True)
class InternalNatTrans:
    src: InternalFunctor
    tgt: InternalFunctor
    component: FinSetMap


def validate_internal_nat_trans(eta: InternalNatTrans) -> ValidationReport:
    F, G = eta.src, eta.tgt
    if F.dom != G.dom or F.cod != G.cod:
        raise DomainError("transformation between non-parallel internal functors")
    if eta.component.dom != F.dom.c0 or eta.component.cod != F.cod.c1:
        raise InputError("component map has wrong endpoints")
    report = ValidationReport()
    if compose_maps(eta.component, F.cod.s).table != F.f0.table:
        report.add("components do not start at the source functor")
    if compose_maps(eta.component, F.cod.t).table != G.f0.table:
        report.add("components do not end at the target functor")
    cpairs = _pair_positions(F.cod)
    for f in range(F.dom.c1.size):
        x, y = F.dom.s.table[f], F.dom.t.table[f]
        k1 = (F.f1.table[f], eta.component.table[y])
        k2 = (eta.component.table[x], G.f1.table[f])
        if k1 not in cpairs or k2 not in cpairs:
            report.add(f"naturality square at arrow {f} does not compose")
            continue
        if F.cod.c.table[cpairs[k1]] != F.cod.c.table[cpairs[k2]]:
            report.add(f"naturality fails at arrow {f}")
    return report


def internalize(C: FinCategory) -> InternalCategory:
    """Tabulate a finite category as sets of positions."""
    obj_pos = {x: i for i, x in enumerate(C.objects)}
    arr_pos = {f: i for i, f in enumerate(C.arrows)}
    C0 = FinSetObject("C0", len(C.objects))
    C1 = FinSetObject("C1", len(C.arrows))
    s = FinSetMap(C1, C0, tuple(obj_pos[C.src[f]] for f in C.arrows))
    t = FinSetMap(C1, C0, tuple(obj_pos[C.tgt[f]] for f in C.arrows))
    e = FinSetMap(C0, C1, tuple(arr_pos[C.identity[x]] for x in C.objects))
    P, p0, p1 = pullback(t, s)
    ctable = tuple(
        arr_pos[C.composition[(C.arrows[p0.table[k]], C.arrows[p1.table[k]])]]
        for k in range(P.size)
    )
    return InternalCategory(C0, C1, s, t, e, FinSetMap(P, C1, ctable))


def externalize(IC: InternalCategory, validate: bool = True) -> FinCategory:
    """Read an internal category as an ordinary one with positional names.

    validate=False skips the law check, for negative controls that compare
    deliberately broken tables.
    """
    if validate:
        report = validate_internal_category(IC)
        if not report.ok:
            raise InputError(
                "cannot externalize an invalid internal category:\n" + str(report)
            )
    objects = [f"x{i}" for i in range(IC.c0.size)]
    arrows = [
        (f"a{j}", f"x{IC.s.table[j]}", f"x{IC.t.table[j]}") for j in range(IC.c1.size)
    ]
    identity = {f"x{i}": f"a{IC.e.table[i]}" for i in range(IC.c0.size)}
    P, p0, p1 = IC.composable_pairs()
    composition = {
        (f"a{p0.table[k]}", f"a{p1.table[k]}"): f"a{IC.c.table[k]}"
        for k in range(P.size)
    }
    return FinCategory.build(
        objects, arrows, identity, composition, fill_identity_composites=False
    )


def _element_tags(D) -> tuple[list, list]:
    """Object and arrow tags of the elements category, in canonical order."""
    idx = D.index
    obj_tags = [(A, a) for A in idx.objects for a in D.cat(A).objects]
    arr_tags = []
    for phi in idx.arrows:
        A, B = idx.src[phi], idx.tgt[phi]
        fiber = D.cat(A)
        for b in D.cat(B).objects:
            img = D.fun(phi).on_objects[b]
            for f in fiber.arrows:
                if fiber.tgt[f] == img:
                    arr_tags.append((phi, b, f))
    return obj_tags, arr_tags


def internal_elements(D) -> InternalCategory:
    """The elements construction carried out on sets of positions.

    Object and arrow sets arise as coproducts of fibers and of the
    per-index-arrow pullbacks; the structure tables are then filled in via
    the comparison-cell formulas.
    """
    from .diagram import compositor_inverse_component, unitor_inverse_component

    if D.variance != "contravariant":
        raise DomainError("internal elements are built for contravariant diagrams")
    idx = D.index

    obj_sets = {A: FinSetObject(f"D({A})0", len(D.cat(A).objects)) for A in idx.objects}
    arr_sets = {A: FinSetObject(f"D({A})1", len(D.cat(A).arrows)) for A in idx.objects}
    obj_pos = {A: {x: i for i, x in enumerate(D.cat(A).objects)} for A in idx.objects}
    arr_pos = {A: {f: i for i, f in enumerate(D.cat(A).arrows)} for A in idx.objects}

    D0, inj0 = coproduct([obj_sets[A] for A in idx.objects])
    obj_tags, arr_tags = _element_tags(D)
    obj_index = {
        (A, a): inj0[i].table[obj_pos[A][a]]
        for i, A in enumerate(idx.objects)
        for a in D.cat(A).objects
    }

    blocks = []
    block_pairs = []
    for phi in idx.arrows:
        A, B = idx.src[phi], idx.tgt[phi]
        on_obj = FinSetMap(
            obj_sets[B],
            obj_sets[A],
            tuple(obj_pos[A][D.fun(phi).on_objects[b]] for b in D.cat(B).objects),
        )
        tmap = FinSetMap(
            arr_sets[A],
            obj_sets[A],
            tuple(obj_pos[A][D.cat(A).tgt[f]] for f in D.cat(A).arrows),
        )
        P, p0, p1 = pullback(on_obj, tmap)
        blocks.append(P)
        block_pairs.append((p0, p1))
    D1, inj1 = coproduct(blocks)
    if D1.size != len(arr_tags):
        raise IntegrityError("pullback blocks disagree with the tag enumeration")

    arr_index = {}
    pos = 0
    for phi, block in zip(idx.arrows, blocks):
        A, B = idx.src[phi], idx.tgt[phi]
        local = [
            (b, f)
            for b in D.cat(B).objects
            for f in D.cat(A).arrows
            if D.cat(A).tgt[f] == D.fun(phi).on_objects[b]
        ]
        if len(local) != block.size:
            raise IntegrityError(f"pullback block for {phi!r} has unexpected size")
        for b, f in local:
            arr_index[(phi, b, f)] = pos
            pos += 1

    s_table = []
    t_table = []
    for phi, b, f in arr_tags:
        A, B = idx.src[phi], idx.tgt[phi]
        s_table.append(obj_index[(A, D.cat(A).src[f])])
        t_table.append(obj_index[(B, b)])
    s = FinSetMap(D1, D0, tuple(s_table))
    t = FinSetMap(D1, D0, tuple(t_table))

    e_table = []
    for A, a in obj_tags:
        e_table.append(arr_index[(idx.identity[A], a, unitor_inverse_component(D, A, a))])
    e = FinSetMap(D0, D1, tuple(e_table))

    P2, p0, p1 = pullback(t, s)
    from .fincat import compose_many

    c_table = []
    for k in range(P2.size):
        phi, x1, f = arr_tags[p0.table[k]]
        psi, x2, g = arr_tags[p1.table[k]]
        comp = idx.composition[(phi, psi)]
        fiber = D.cat(idx.src[phi])
        h = compose_many(
            fiber,
            f,
            D.fun(phi).on_arrows[g],
            compositor_inverse_component(D, phi, psi, x2),
        )
        c_table.append(arr_index[(comp, x2, h)])
    c = FinSetMap(P2, D1, tuple(c_table))
    return InternalCategory(D0, D1, s, t, e, c)


def internal_cleavage(D, ID: InternalCategory) -> FinSetMap:
    """The marked-arrows object: one element per (index arrow, target-fiber
    object), injected into the arrow set at the chosen identities."""
    if D.variance != "contravariant":
        raise DomainError("the cleavage exists for contravariant diagrams only")
    idx = D.index
    _, arr_tags = _element_tags(D)
    arr_index = {tag: i for i, tag in enumerate(arr_tags)}
    parts = [
        FinSetObject(f"W({phi})", len(D.cat(idx.tgt[phi]).objects)) for phi in idx.arrows
    ]
    W, _ = coproduct(parts)
    table = []
    for phi in idx.arrows:
        A, B = idx.src[phi], idx.tgt[phi]
        for b in D.cat(B).objects:
            fid = D.cat(A).identity[D.fun(phi).on_objects[b]]
            table.append(arr_index[(phi, b, fid)])
    if len(set(table)) != len(table):
        raise IntegrityError("cleavage element map is not injective")
    return FinSetMap(W, ID.c1, tuple(table))


@dataclass
class _SpanMachinery:
    ext: FinCategory
    inp: object
    spn: FinSetObject
    pi_v: FinSetMap
    pi_g: FinSetMap
    pair_pos: dict
    sb_rows: list
    Q: FinSetObject
    q: FinSetMap
    s_spn: FinSetMap
    t_spn: FinSetMap


def _span_machinery(IC: InternalCategory, w: FinSetMap) -> _SpanMachinery:
    from .fractions import FractionsInput, check_axioms

    if w.cod != IC.c1:
        raise InputError("marked-arrows map does not land in the arrow set")
    if len(set(w.table)) != len(w.table):
        raise InputError("marked-arrows map is not injective")
    ext = externalize(IC)
    weq = tuple(f"a{i}" for i in w.table)
    inp = FractionsInput(category=ext, weq=weq)
    axioms = check_axioms(inp)
    if not axioms.ok:
        raise AxiomError("marked arrows fail the fractions axioms:\n" + str(axioms), report=axioms)

    ws = compose_maps(w, IC.s)
    spn, pi_v, pi_g = pullback(ws, IC.s)
    pair_pos = {(pi_v.table[k], pi_g.table[k]): k for k in range(spn.size)}

    w_pos = {arrow: k for k, arrow in enumerate(w.table)}
    cpairs = _pair_positions(IC)
    sb_rows = []
    for h in range(IC.c1.size):
        for k in range(w.dom.size):
            if IC.t.table[h] != IC.s.table[w.table[k]]:
                continue
            hv = IC.c.table[cpairs[(h, w.table[k])]]
            if hv not in w_pos:
                continue
            for g in range(IC.c1.size):
                if IC.s.table[g] != IC.s.table[w.table[k]]:
                    continue
                hg = IC.c.table[cpairs[(h, g)]]
                sb_rows.append((pair_pos[(k, g)], pair_pos[(w_pos[hv], hg)]))
    SB = FinSetObject("sb", len(sb_rows))
    p0 = FinSetMap(SB, spn, tuple(r[0] for r in sb_rows))
    p1 = FinSetMap(SB, spn, tuple(r[1] for r in sb_rows))
    if not has_common_section(p0, p1):
        raise IntegrityError("span-relation pair lost its identity section")
    Q, q = coequalize_reflexive(p0, p1)

    s_spn = compose_maps(pi_v, compose_maps(w, IC.t))
    t_spn = compose_maps(pi_g, IC.t)
    return _SpanMachinery(
        ext=ext,
        inp=inp,
        spn=spn,
        pi_v=pi_v,
        pi_g=pi_g,
        pair_pos=pair_pos,
        sb_rows=sb_rows,
        Q=Q,
        q=q,
        s_spn=s_spn,
        t_spn=t_spn,
    )


def internal_localize(IC: InternalCategory, w: FinSetMap) -> InternalCategory:
    """Localization computed with the ambient operations.

    Spans and sailboats arise as pullbacks, the quotient as a reflexive
    coequalizer, endpoints via the coequalizer's universal property, and
    composition from the global first-in-order filler choice (so the cover
    of composable pairs is realized by an identity) factored through the
    pair quotient.
    """
    from .fractions import ShapeInstance, span_compose

    M = _span_machinery(IC, w)
    s_q = coequalizer_mediate(M.q, M.s_spn)
    t_q = coequalizer_mediate(M.q, M.t_spn)

    alpha = []
    for x in range(IC.c0.size):
        for k in range(w.dom.size):
            if IC.t.table[w.table[k]] == x:
                alpha.append(k)
                break
        else:
            raise IntegrityError("axioms passed but an object has no marked arrow into it")
    e_table = tuple(
        M.q.table[M.pair_pos[(alpha[x], w.table[alpha[x]])]] for x in range(IC.c0.size)
    )
    e_q = FinSetMap(IC.c0, M.Q, e_table)

    SP, r0, r1 = pullback(M.t_spn, M.s_spn)
    weq = M.inp.weq
    w_pos_name = {name: k for k, name in enumerate(weq)}
    sp_values = []
    for k in range(SP.size):
        sp1, sp2 = r0.table[k], r1.table[k]
        s1 = ShapeInstance("spn", (weq[M.pi_v.table[sp1]], f"a{M.pi_g.table[sp1]}"))
        s2 = ShapeInstance("spn", (weq[M.pi_v.table[sp2]], f"a{M.pi_g.table[sp2]}"))
        comp = span_compose(M.inp, s1, s2)
        left, right = comp.payload
        pos = M.pair_pos[(w_pos_name[left], int(right[1:]))]
        sp_values.append(M.q.table[pos])

    P2, c0m, c1m = pullback(t_q, s_q)
    class_pair_pos = {(c0m.table[k], c1m.table[k]): k for k in range(P2.size)}
    c_table: list = [None] * P2.size
    for k in range(SP.size):
        cls = class_pair_pos[(M.q.table[r0.table[k]], M.q.table[r1.table[k]])]
        if c_table[cls] is None:
            c_table[cls] = sp_values[k]
        elif c_table[cls] != sp_values[k]:
            raise IntegrityError(
                "composite classes differ across representatives of a pair class"
            )
    if any(v is None for v in c_table):
        raise IntegrityError("a composable pair of classes has no span representative")
    c_q = FinSetMap(P2, M.Q, tuple(c_table))
    return InternalCategory(IC.c0, M.Q, s_q, t_q, e_q, c_q)


def verify_pairs_coequalizer(IC: InternalCategory, w: FinSetMap):
    """Composable pairs of classes, made two ways, must agree.

    The pullback of the quotient endpoints is compared with the reflexive
    coequalizer of the coordinatewise sailboat moves on composable span
    pairs, by an explicit bijection.
    """
    from .elements import VerifierReport

    M = _span_machinery(IC, w)
    s_q = coequalizer_mediate(M.q, M.s_spn)
    t_q = coequalizer_mediate(M.q, M.t_spn)
    report = VerifierReport(title="composable pairs: pullback vs coequalizer")

    SP, r0, r1 = pullback(M.t_spn, M.s_spn)
    sp_pos = {(r0.table[k], r1.table[k]): k for k in range(SP.size)}

    rows = []
    for a0, a1 in M.sb_rows:
        for other in range(M.spn.size):
            if (a0, other) in sp_pos:
                rows.append((sp_pos[(a0, other)], sp_pos[(a1, other)]))
            if (other, a0) in sp_pos:
                rows.append((sp_pos[(other, a0)], sp_pos[(other, a1)]))
    R = FinSetObject("sb2", len(rows))
    m0 = FinSetMap(R, SP, tuple(r[0] for r in rows))
    m1 = FinSetMap(R, SP, tuple(r[1] for r in rows))
    if not has_common_section(m0, m1):
        report.add("coordinatewise move pair has no identity section")
        return report
    QP, qp = coequalize_reflexive(m0, m1)

    P2, c0m, c1m = pullback(t_q, s_q)
    class_pair_pos = {(c0m.table[k], c1m.table[k]): k for k in range(P2.size)}
    report.stats["pair classes"] = QP.size
    report.stats["class pairs"] = P2.size

    comparison: list = [None] * QP.size
    for k in range(SP.size):
        target = class_pair_pos[(M.q.table[r0.table[k]], M.q.table[r1.table[k]])]
        cls = qp.table[k]
        if comparison[cls] is None:
            comparison[cls] = target
        elif comparison[cls] != target:
            report.add(f"pair class {cls} maps to two different class pairs")
    if None in comparison:
        report.add("a pair class has no representative")
    elif len(set(comparison)) != len(comparison):
        report.add("comparison map is not injective")
    elif set(comparison) != set(range(P2.size)):
        report.add("comparison map is not surjective")
    return report
