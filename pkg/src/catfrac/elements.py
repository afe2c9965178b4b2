"""Category of elements of a diagram, canonical cocone, cleavage, colimit UP.

The carrier category has one object per pair (index object, fiber object)
and one arrow per pair (index arrow, fiber datum), where the fiber datum is
a pair (coordinate, fiber arrow) drawn from the matching pullback.  Every
object and arrow keeps its originating tag, so downstream constructions
never have to parse names.

Covariant arrows (phi; x; f) have x in the source fiber and f a fiber arrow
out of D(phi)(x); contravariant ones have x in the target fiber and f a
fiber arrow into D(phi)(x).  Composition follows the comparison-cell
formulas, so the carrier is a category exactly because the diagram is
coherent.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from .diagram import (
    LaxTransformation,
    Modification,
    Pseudofunctor,
    compose_modifications,
    compositor_inverse_component,
    enumerate_modifications,
    enumerate_transformations,
    identity_modification,
    two_cell_endpoints,
    unitor_inverse_component,
)
from .errors import DomainError
from .fincat import (
    FinCategory,
    Functor,
    NatTrans,
    compose,
    compose_functors,
    compose_many,
    enumerate_functors,
    enumerate_nat_trans,
    identity_nat_trans,
    uniquify,
    vertical_compose,
)


@dataclass
class VerifierReport:
    """Outcome of a universal-property check: counts plus any failures."""

    title: str
    stats: dict = field(default_factory=dict)
    problems: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.problems

    def add(self, msg: str) -> None:
        self.problems.append(msg)

    def __str__(self) -> str:
        stats = ", ".join(f"{k}={v}" for k, v in self.stats.items())
        if self.ok:
            return f"{self.title}: pass ({stats})"
        lines = "\n".join(f"  - {p}" for p in self.problems)
        return f"{self.title}: FAIL ({stats})\n{lines}"


@dataclass(eq=True)
class ElementsCategory:
    """Carrier category plus the tags tying it back to the diagram."""

    carrier: FinCategory
    object_tags: dict
    arrow_tags: dict
    variance: str
    diagram: Pseudofunctor
    object_index: dict
    arrow_index: dict

    def object_name(self, a: str, x: str) -> str:
        return self.object_index[(a, x)]

    def arrow_name(self, phi: str, x: str, f: str) -> str:
        return self.arrow_index[(phi, x, f)]


@dataclass(eq=True)
class CleavageSet:
    """The chosen arrows (phi; b; identity), one per index arrow and
    target-fiber object, in declaration order."""

    host: ElementsCategory
    members: tuple
    member_tags: dict


def grothendieck(D: Pseudofunctor) -> ElementsCategory:
    """Category of elements of a validated diagram."""
    idx = D.index

    obj_tag_list = [(A, a) for A in idx.objects for a in D.cat(A).objects]
    obj_names = uniquify([f"({A};{a})" for A, a in obj_tag_list])
    object_index = dict(zip(obj_tag_list, obj_names))
    object_tags = dict(zip(obj_names, obj_tag_list))

    arr_tag_list = []
    for phi in idx.arrows:
        A, B = idx.src[phi], idx.tgt[phi]
        F = D.fun(phi)
        if D.variance == "covariant":
            coords, fibers = D.cat(A), D.cat(B)
            for x in coords.objects:
                img = F.on_objects[x]
                for f in fibers.arrows:
                    if fibers.src[f] == img:
                        arr_tag_list.append((phi, x, f))
        else:
            coords, fibers = D.cat(B), D.cat(A)
            for x in coords.objects:
                img = F.on_objects[x]
                for f in fibers.arrows:
                    if fibers.tgt[f] == img:
                        arr_tag_list.append((phi, x, f))
    arr_names = uniquify([f"({phi};{x};{f})" for phi, x, f in arr_tag_list])
    arrow_index = dict(zip(arr_tag_list, arr_names))
    arrow_tags = dict(zip(arr_names, arr_tag_list))

    arrows_decl = []
    for (phi, x, f), name in zip(arr_tag_list, arr_names):
        A, B = idx.src[phi], idx.tgt[phi]
        if D.variance == "covariant":
            s = object_index[(A, x)]
            t = object_index[(B, D.cat(B).tgt[f])]
        else:
            s = object_index[(A, D.cat(A).src[f])]
            t = object_index[(B, x)]
        arrows_decl.append((name, s, t))
    srcmap = {name: s for name, s, _ in arrows_decl}
    tgtmap = {name: t for name, _, t in arrows_decl}

    identity = {}
    for (A, a), name in object_index.items():
        if D.variance == "covariant":
            fid = D.unitors[A].components[a]
        else:
            fid = unitor_inverse_component(D, A, a)
        identity[name] = arrow_index[(idx.identity[A], a, fid)]

    composition = {}
    for n1 in arr_names:
        for n2 in arr_names:
            if tgtmap[n1] != srcmap[n2]:
                continue
            phi, x1, f = arrow_tags[n1]
            psi, x2, g = arrow_tags[n2]
            comp = idx.composition[(phi, psi)]
            if D.variance == "covariant":
                fibers = D.cat(idx.tgt[psi])
                h = compose_many(
                    fibers,
                    D.compositor(phi, psi).components[x1],
                    D.fun(psi).on_arrows[f],
                    g,
                )
                composition[(n1, n2)] = arrow_index[(comp, x1, h)]
            else:
                fibers = D.cat(idx.src[phi])
                h = compose_many(
                    fibers,
                    f,
                    D.fun(phi).on_arrows[g],
                    compositor_inverse_component(D, phi, psi, x2),
                )
                composition[(n1, n2)] = arrow_index[(comp, x2, h)]

    carrier = FinCategory.build(
        obj_names, arrows_decl, identity, composition, fill_identity_composites=False
    )
    return ElementsCategory(
        carrier=carrier,
        object_tags=object_tags,
        arrow_tags=arrow_tags,
        variance=D.variance,
        diagram=D,
        object_index=object_index,
        arrow_index=arrow_index,
    )


def canonical_cocone(D: Pseudofunctor, GD: ElementsCategory) -> LaxTransformation:
    """The tautological transformation from the diagram into its carrier."""
    idx = D.index
    components = {}
    for A in idx.objects:
        fiber = D.cat(A)
        ida = idx.identity[A]
        on_objects = {a: GD.object_name(A, a) for a in fiber.objects}
        on_arrows = {}
        for f in fiber.arrows:
            if D.variance == "covariant":
                a = fiber.src[f]
                lifted = compose(fiber, D.unitors[A].components[a], f)
                on_arrows[f] = GD.arrow_name(ida, a, lifted)
            else:
                b = fiber.tgt[f]
                lifted = compose(fiber, f, unitor_inverse_component(D, A, b))
                on_arrows[f] = GD.arrow_name(ida, b, lifted)
        components[A] = Functor(fiber, GD.carrier, on_objects, on_arrows)

    two_cells = {}
    for phi in idx.arrows:
        A, B = idx.src[phi], idx.tgt[phi]
        src_fun, tgt_fun = two_cell_endpoints(D, components, phi)
        if D.variance == "covariant":
            coords = D.cat(A)
            cells = {
                a: GD.arrow_name(phi, a, D.cat(B).identity[D.fun(phi).on_objects[a]])
                for a in coords.objects
            }
        else:
            coords = D.cat(B)
            cells = {
                b: GD.arrow_name(phi, b, D.cat(A).identity[D.fun(phi).on_objects[b]])
                for b in coords.objects
            }
        two_cells[phi] = NatTrans(src=src_fun, tgt=tgt_fun, components=cells)
    return LaxTransformation(
        source=D, target=GD.carrier, components=components, two_cells=two_cells
    )


def cleavage(GD: ElementsCategory) -> CleavageSet:
    """The arrows to invert: one (phi; b; identity) per index arrow phi and
    object b of the fiber over its target."""
    if GD.variance != "contravariant":
        raise DomainError("cleavage is defined for contravariant diagrams only")
    D = GD.diagram
    idx = D.index
    members = []
    member_tags = {}
    for phi in idx.arrows:
        B = idx.tgt[phi]
        for b in D.cat(B).objects:
            fid = D.cat(idx.src[phi]).identity[D.fun(phi).on_objects[b]]
            name = GD.arrow_name(phi, b, fid)
            members.append(name)
            member_tags[name] = (phi, b)
    return CleavageSet(host=GD, members=tuple(members), member_tags=member_tags)


def transformation_to_functor(x: LaxTransformation, GD: ElementsCategory) -> Functor:
    """Collapse a transformation into a single functor off the carrier."""
    if x.source != GD.diagram:
        raise DomainError("transformation is not over this carrier's diagram")
    D = GD.diagram
    idx = D.index
    X = x.target
    on_objects = {
        name: x.components[A].on_objects[a] for name, (A, a) in GD.object_tags.items()
    }
    on_arrows = {}
    for name, (phi, coord, f) in GD.arrow_tags.items():
        A, B = idx.src[phi], idx.tgt[phi]
        if D.variance == "covariant":
            on_arrows[name] = compose(
                X, x.two_cells[phi].components[coord], x.components[B].on_arrows[f]
            )
        else:
            on_arrows[name] = compose(
                X, x.components[A].on_arrows[f], x.two_cells[phi].components[coord]
            )
    return Functor(GD.carrier, X, on_objects, on_arrows)


def functor_to_transformation(F: Functor, GD: ElementsCategory) -> LaxTransformation:
    """Whisker the canonical cocone with a functor off the carrier."""
    if F.dom != GD.carrier:
        raise DomainError("functor domain is not this carrier")
    D = GD.diagram
    ell = canonical_cocone(D, GD)
    components = {A: compose_functors(ell.components[A], F) for A in D.index.objects}
    two_cells = {}
    for phi in D.index.arrows:
        src_fun, tgt_fun = two_cell_endpoints(D, components, phi)
        cells = {
            p: F.on_arrows[c] for p, c in ell.two_cells[phi].components.items()
        }
        two_cells[phi] = NatTrans(src=src_fun, tgt=tgt_fun, components=cells)
    return LaxTransformation(
        source=D, target=F.cod, components=components, two_cells=two_cells
    )


def _modification_to_nat(m: Modification, th_src: Functor, th_tgt: Functor, GD) -> NatTrans:
    components = {
        name: m.components[A].components[a] for name, (A, a) in GD.object_tags.items()
    }
    return NatTrans(src=th_src, tgt=th_tgt, components=components)


def _nat_to_modification(
    mu: NatTrans, t_src: LaxTransformation, t_tgt: LaxTransformation, GD
) -> Modification:
    components = {}
    for A in GD.diagram.index.objects:
        components[A] = NatTrans(
            src=t_src.components[A],
            tgt=t_tgt.components[A],
            components={
                a: mu.components[GD.object_name(A, a)]
                for a in GD.diagram.cat(A).objects
            },
        )
    return Modification(src=t_src, tgt=t_tgt, components=components)


def verify_oplax_colimit(
    D: Pseudofunctor, X: FinCategory, GD: Optional[ElementsCategory] = None
) -> VerifierReport:
    """Check that functors off the carrier match transformations out of D.

    Confirms the two 1-cell maps are mutually inverse bijections, and that
    modifications correspond to natural transformations compatibly with
    identities and vertical composition.  The optional carrier override
    exists so callers can aim the verifier at a deliberately broken carrier
    and watch it fail.
    """
    if GD is None:
        GD = grothendieck(D)
    report = VerifierReport(title="oplax colimit universal property")
    funs = enumerate_functors(GD.carrier, X)
    trans = enumerate_transformations(D, X, "lax")
    report.stats["functors"] = len(funs)
    report.stats["transformations"] = len(trans)
    if len(funs) != len(trans):
        report.add(f"count mismatch: {len(trans)} transformations vs {len(funs)} functors")

    thetas = []
    for i, t in enumerate(trans):
        th = transformation_to_functor(t, GD)
        thetas.append(th)
        if th not in funs:
            report.add(f"image of transformation #{i} is not a functor off the carrier")
            continue
        back = functor_to_transformation(th, GD)
        if back != t:
            report.add(f"round-trip through the carrier changes transformation #{i}")
    for i in range(len(thetas)):
        for j in range(i + 1, len(thetas)):
            if thetas[i] == thetas[j]:
                report.add(f"transformations #{i} and #{j} collapse to the same functor")
    for k, F in enumerate(funs):
        t = functor_to_transformation(F, GD)
        th = transformation_to_functor(t, GD)
        if th != F:
            report.add(f"round-trip through transformations changes functor #{k}")
    if not report.ok:
        return report

    mod_total = 0
    mods_cache = {}
    for i, t1 in enumerate(trans):
        for j, t2 in enumerate(trans):
            mods = enumerate_modifications(t1, t2)
            mods_cache[(i, j)] = mods
            nts = enumerate_nat_trans(thetas[i], thetas[j])
            mod_total += len(mods)
            if len(mods) != len(nts):
                report.add(
                    f"2-cell count mismatch between #{i} and #{j}: "
                    f"{len(mods)} modifications vs {len(nts)} natural transformations"
                )
                continue
            images = []
            for m in mods:
                mu = _modification_to_nat(m, thetas[i], thetas[j], GD)
                if mu not in nts:
                    report.add(f"2-cell image between #{i} and #{j} is not natural")
                    continue
                if _nat_to_modification(mu, t1, t2, GD) != m:
                    report.add(f"2-cell round-trip changes a modification between #{i} and #{j}")
                images.append(mu)
            for mu in nts:
                m = _nat_to_modification(mu, t1, t2, GD)
                if m not in mods:
                    report.add(f"2-cell preimage between #{i} and #{j} is not a modification")
                elif _modification_to_nat(m, thetas[i], thetas[j], GD) != mu:
                    report.add(f"2-cell round-trip changes a 2-cell between #{i} and #{j}")
    report.stats["modifications"] = mod_total
    if not report.ok:
        return report

    for i, t in enumerate(trans):
        mu = _modification_to_nat(identity_modification(t), thetas[i], thetas[i], GD)
        if mu != identity_nat_trans(thetas[i]):
            report.add(f"identity 2-cell of #{i} does not map to the identity")
    for i in range(len(trans)):
        for j in range(len(trans)):
            mods_ij = mods_cache[(i, j)]
            if not mods_ij:
                continue
            for k in range(len(trans)):
                mods_jk = mods_cache[(j, k)]
                for m in mods_ij:
                    for n in mods_jk:
                        lhs = _modification_to_nat(
                            compose_modifications(m, n), thetas[i], thetas[k], GD
                        )
                        rhs = vertical_compose(
                            _modification_to_nat(m, thetas[i], thetas[j], GD),
                            _modification_to_nat(n, thetas[j], thetas[k], GD),
                        )
                        if lhs != rhs:
                            report.add(
                                f"2-cell composition not preserved between #{i},#{j},#{k}"
                            )
    return report
