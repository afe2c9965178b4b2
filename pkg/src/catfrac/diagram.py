"""Diagrams of finite categories indexed by a finite category.

A diagram assigns a category to every index object and a functor to every
index arrow, up to coherent invertible comparison cells (unitors and
compositors).  Transformations out of a diagram land in a single ordinary
category and carry one comparison two-cell per index arrow; modifications
compare such transformations componentwise.

Variance convention: a covariant diagram sends phi: A -> B to a functor
D(A) -> D(B) and its transformation two-cells are lax,
x_phi : x_A => D(phi).x_B.  A contravariant diagram sends phi to a functor
D(B) -> D(A) and the two-cells are oplax, x_phi : D(phi).x_A => x_B.
Composition in formulas is diagrammatic throughout.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Optional

from .errors import DomainError, InputError
from .fincat import (
    FinCategory,
    Functor,
    NatTrans,
    ValidationReport,
    compose,
    compose_functors,
    compose_many,
    enumerate_functors,
    enumerate_nat_trans,
    identity_functor,
    two_sided_inverse,
    validate_category,
    validate_functor,
    validate_nat_trans,
)

VARIANCES = ("covariant", "contravariant")


@dataclass(eq=True)
class Pseudofunctor:
    """Diagram of categories over a finite index category.

    `on_arrows` covers every index arrow including identities.  `unitors`
    maps each index object A to the comparison D(1_A) => Id on D(A);
    `compositors` holds one comparison cell per composable index pair,
    keyed by the pair itself.
    """

    index: FinCategory
    variance: str
    on_objects: dict
    on_arrows: dict
    unitors: dict
    compositors: dict

    def cat(self, a: str) -> FinCategory:
        return self.on_objects[a]

    def fun(self, phi: str) -> Functor:
        return self.on_arrows[phi]

    def compositor(self, phi: str, psi: str) -> NatTrans:
        return self.compositors[(phi, psi)]


def expected_endpoints(D: Pseudofunctor, phi: str) -> tuple[FinCategory, FinCategory]:
    a, b = D.index.src[phi], D.index.tgt[phi]
    if D.variance == "covariant":
        return D.cat(a), D.cat(b)
    return D.cat(b), D.cat(a)


def pair_composite_functor(D: Pseudofunctor, phi: str, psi: str) -> Functor:
    """Target functor of the compositor at (phi, psi)."""
    if D.variance == "covariant":
        return compose_functors(D.fun(phi), D.fun(psi))
    return compose_functors(D.fun(psi), D.fun(phi))


def unitor_inverse_component(D: Pseudofunctor, a: str, x: str) -> str:
    inv = two_sided_inverse(D.cat(a), D.unitors[a].components[x])
    if inv is None:
        raise DomainError(f"unitor at {a!r} has no inverse at object {x!r}")
    return inv


def compositor_inverse_component(D: Pseudofunctor, phi: str, psi: str, x: str) -> str:
    host = D.cat(D.index.tgt[psi]) if D.variance == "covariant" else D.cat(D.index.src[phi])
    inv = two_sided_inverse(host, D.compositor(phi, psi).components[x])
    if inv is None:
        raise DomainError(f"compositor at ({phi!r}, {psi!r}) has no inverse at {x!r}")
    return inv


def _structural_check(D: Pseudofunctor) -> None:
    if D.variance not in VARIANCES:
        raise InputError(f"unknown variance {D.variance!r}")
    idx = D.index
    for a in idx.objects:
        if a not in D.on_objects:
            raise InputError(f"no category assigned to index object {a!r}")
        if a not in D.unitors:
            raise InputError(f"no unitor at index object {a!r}")
    for f in idx.arrows:
        if f not in D.on_arrows:
            raise InputError(f"no functor assigned to index arrow {f!r}")
    for pair in idx.composable_pairs():
        if pair not in D.compositors:
            raise InputError(f"no compositor for composable pair {pair!r}")


def validate_pseudofunctor(D: Pseudofunctor) -> ValidationReport:
    """Check every coherence law; structural gaps raise InputError."""
    _structural_check(D)
    report = ValidationReport()
    idx = D.index

    for a in idx.objects:
        sub = validate_category(D.cat(a))
        for p in sub.problems:
            report.add(f"value category at {a!r}: {p}")
    if not report.ok:
        return report  # laws below presuppose sane value categories

    for phi in idx.arrows:
        dom, cod = expected_endpoints(D, phi)
        F = D.fun(phi)
        if F.dom != dom or F.cod != cod:
            report.add(f"functor at {phi!r} has wrong endpoints for {D.variance} variance")
            continue
        sub = validate_functor(F)
        for p in sub.problems:
            report.add(f"functor at {phi!r}: {p}")
    if not report.ok:
        return report

    for a in idx.objects:
        delta = D.unitors[a]
        ida = idx.identity[a]
        if delta.src != D.fun(ida) or delta.tgt != identity_functor(D.cat(a)):
            report.add(f"unitor at {a!r} does not compare D(1) with the identity functor")
            continue
        sub = validate_nat_trans(delta)
        for p in sub.problems:
            report.add(f"unitor at {a!r}: {p}")
        for x in D.cat(a).objects:
            if two_sided_inverse(D.cat(a), delta.components[x]) is None:
                report.add(f"unitor at {a!r} not invertible at object {x!r}")

    for (phi, psi), delta in D.compositors.items():
        comp = idx.composition[(phi, psi)]
        if delta.src != D.fun(comp) or delta.tgt != pair_composite_functor(D, phi, psi):
            report.add(f"compositor at ({phi!r}, {psi!r}) has wrong endpoint functors")
            continue
        sub = validate_nat_trans(delta)
        for p in sub.problems:
            report.add(f"compositor at ({phi!r}, {psi!r}): {p}")
        for x in delta.src.dom.objects:
            if two_sided_inverse(delta.src.cod, delta.components[x]) is None:
                report.add(f"compositor at ({phi!r}, {psi!r}) not invertible at {x!r}")
    if not report.ok:
        return report

    _check_unit_coherence(D, report)
    _check_assoc_coherence(D, report)
    return report


def _check_unit_coherence(D: Pseudofunctor, report: ValidationReport) -> None:
    idx = D.index
    for phi in idx.arrows:
        a, b = idx.src[phi], idx.tgt[phi]
        ida, idb = idx.identity[a], idx.identity[b]
        if D.variance == "covariant":
            host = D.cat(b)
            for x in D.cat(a).objects:
                left = compose(
                    host,
                    D.compositor(ida, phi).components[x],
                    D.fun(phi).on_arrows[D.unitors[a].components[x]],
                )
                if left != host.identity[D.fun(phi).on_objects[x]]:
                    report.add(f"left unit coherence fails at ({phi!r}, {x!r})")
                right = compose(
                    host,
                    D.compositor(phi, idb).components[x],
                    D.unitors[b].components[D.fun(phi).on_objects[x]],
                )
                if right != host.identity[D.fun(phi).on_objects[x]]:
                    report.add(f"right unit coherence fails at ({phi!r}, {x!r})")
        else:
            host = D.cat(a)
            for y in D.cat(b).objects:
                img = D.fun(phi).on_objects[y]
                left = compose(
                    host,
                    D.compositor(ida, phi).components[y],
                    D.unitors[a].components[img],
                )
                if left != host.identity[img]:
                    report.add(f"left unit coherence fails at ({phi!r}, {y!r})")
                right = compose(
                    host,
                    D.compositor(phi, idb).components[y],
                    D.fun(phi).on_arrows[D.unitors[b].components[y]],
                )
                if right != host.identity[img]:
                    report.add(f"right unit coherence fails at ({phi!r}, {y!r})")


def _check_assoc_coherence(D: Pseudofunctor, report: ValidationReport) -> None:
    idx = D.index
    for phi, psi in idx.composable_pairs():
        for gamma in idx.arrows:
            if idx.src[gamma] != idx.tgt[psi]:
                continue
            psigamma = idx.composition[(psi, gamma)]
            phipsi = idx.composition[(phi, psi)]
            if D.variance == "covariant":
                host = D.cat(idx.tgt[gamma])
                for x in D.cat(idx.src[phi]).objects:
                    mid = D.fun(phi).on_objects[x]
                    left = compose(
                        host,
                        D.compositor(phi, psigamma).components[x],
                        D.compositor(psi, gamma).components[mid],
                    )
                    right = compose(
                        host,
                        D.compositor(phipsi, gamma).components[x],
                        D.fun(gamma).on_arrows[D.compositor(phi, psi).components[x]],
                    )
                    if left != right:
                        report.add(
                            f"associativity coherence fails at ({phi!r}, {psi!r}, {gamma!r}, {x!r})"
                        )
            else:
                host = D.cat(idx.src[phi])
                for x in D.cat(idx.tgt[gamma]).objects:
                    left = compose(
                        host,
                        D.compositor(phi, psigamma).components[x],
                        D.fun(phi).on_arrows[D.compositor(psi, gamma).components[x]],
                    )
                    right = compose(
                        host,
                        D.compositor(phipsi, gamma).components[x],
                        D.compositor(phi, psi).components[D.fun(gamma).on_objects[x]],
                    )
                    if left != right:
                        report.add(
                            f"associativity coherence fails at ({phi!r}, {psi!r}, {gamma!r}, {x!r})"
                        )


def derive_unit_compositors(
    index: FinCategory,
    variance: str,
    on_arrows: dict,
    unitors: dict,
    compositors: dict,
) -> dict:
    """Fill compositors for pairs with an identity leg from the unitors.

    Pairs where both legs are non-identity must already be present.  The
    filled values are the unique ones compatible with unit coherence, so a
    later full validation cross-checks any derived entry.
    """
    out = dict(compositors)
    for phi, psi in index.composable_pairs():
        if (phi, psi) in out:
            continue
        comp = index.composition[(phi, psi)]
        phi_id = phi == index.identity[index.src[phi]]
        psi_id = psi == index.identity[index.tgt[psi]]
        if not phi_id and not psi_id:
            raise InputError(f"no compositor for non-identity pair ({phi!r}, {psi!r})")
        src_fun = on_arrows[comp]
        if variance == "covariant":
            tgt_fun = compose_functors(on_arrows[phi], on_arrows[psi])
        else:
            tgt_fun = compose_functors(on_arrows[psi], on_arrows[phi])
        host = tgt_fun.cod
        components = {}
        for x in src_fun.dom.objects:
            if phi_id:
                a = index.src[phi]
                if variance == "covariant":
                    forward = on_arrows[psi].on_arrows[unitors[a].components[x]]
                else:
                    forward = unitors[a].components[on_arrows[psi].on_objects[x]]
            else:
                b = index.tgt[psi]
                if variance == "covariant":
                    forward = unitors[b].components[on_arrows[phi].on_objects[x]]
                else:
                    forward = on_arrows[phi].on_arrows[unitors[b].components[x]]
            inv = two_sided_inverse(host, forward)
            if inv is None:
                raise InputError(
                    f"cannot derive compositor at ({phi!r}, {psi!r}): no inverse at {x!r}"
                )
            components[x] = inv
        out[(phi, psi)] = NatTrans(src=src_fun, tgt=tgt_fun, components=components)
    return out


def strictify(
    index: FinCategory,
    on_objects: dict,
    on_arrows: dict,
    variance: str = "covariant",
) -> Pseudofunctor:
    """Wrap a strictly functorial assignment with identity comparison cells."""
    if variance not in VARIANCES:
        raise InputError(f"unknown variance {variance!r}")
    for a in index.objects:
        ida = index.identity[a]
        if ida not in on_arrows or on_arrows[ida] != identity_functor(on_objects[a]):
            raise InputError(f"assignment is not strict at identity of {a!r}")
    for phi, psi in index.composable_pairs():
        comp = index.composition[(phi, psi)]
        if variance == "covariant":
            expected = compose_functors(on_arrows[phi], on_arrows[psi])
        else:
            expected = compose_functors(on_arrows[psi], on_arrows[phi])
        if on_arrows[comp] != expected:
            raise InputError(f"assignment is not strict at pair ({phi!r}, {psi!r})")

    unitors = {}
    for a in index.objects:
        C = on_objects[a]
        unitors[a] = NatTrans(
            src=on_arrows[index.identity[a]],
            tgt=identity_functor(C),
            components={x: C.identity[x] for x in C.objects},
        )
    compositors = {}
    for phi, psi in index.composable_pairs():
        comp = on_arrows[index.composition[(phi, psi)]]
        compositors[(phi, psi)] = NatTrans(
            src=comp,
            tgt=comp,
            components={
                x: comp.cod.identity[comp.on_objects[x]] for x in comp.dom.objects
            },
        )
    return Pseudofunctor(
        index=index,
        variance=variance,
        on_objects=dict(on_objects),
        on_arrows=dict(on_arrows),
        unitors=unitors,
        compositors=compositors,
    )


@dataclass(eq=True)
class LaxTransformation:
    """Transformation from a diagram to a constant category.

    `components` assigns a functor x_A : D(A) -> target per index object;
    `two_cells` one comparison cell per index arrow, oriented by variance:
    covariant x_phi : x_A => D(phi).x_B, contravariant
    x_phi : D(phi).x_A => x_B.
    """

    source: Pseudofunctor
    target: FinCategory
    components: dict
    two_cells: dict

    def component(self, a: str) -> Functor:
        return self.components[a]

    def two_cell(self, phi: str) -> NatTrans:
        return self.two_cells[phi]


def two_cell_endpoints(
    D: Pseudofunctor, components: dict, phi: str
) -> tuple[Functor, Functor]:
    a, b = D.index.src[phi], D.index.tgt[phi]
    if D.variance == "covariant":
        return components[a], compose_functors(D.fun(phi), components[b])
    return compose_functors(D.fun(phi), components[a]), components[b]


def identity_two_cell(D: Pseudofunctor, components: dict, a: str) -> NatTrans:
    """The forced comparison cell at an index identity arrow."""
    src_fun, tgt_fun = two_cell_endpoints(D, components, D.index.identity[a])
    cells = {}
    for x in D.cat(a).objects:
        if D.variance == "covariant":
            cells[x] = components[a].on_arrows[unitor_inverse_component(D, a, x)]
        else:
            cells[x] = components[a].on_arrows[D.unitors[a].components[x]]
    return NatTrans(src=src_fun, tgt=tgt_fun, components=cells)


def validate_transformation(x: LaxTransformation) -> ValidationReport:
    """Check component functors, two-cell typing, and both coherence laws."""
    D = x.source
    idx = D.index
    for a in idx.objects:
        if a not in x.components:
            raise InputError(f"no component functor at index object {a!r}")
    for phi in idx.arrows:
        if phi not in x.two_cells:
            raise InputError(f"no two-cell at index arrow {phi!r}")

    report = ValidationReport()
    for a in idx.objects:
        F = x.components[a]
        if F.dom != D.cat(a) or F.cod != x.target:
            report.add(f"component at {a!r} has wrong endpoints")
            continue
        sub = validate_functor(F)
        for p in sub.problems:
            report.add(f"component at {a!r}: {p}")
    if not report.ok:
        return report

    for phi in idx.arrows:
        cell = x.two_cells[phi]
        src_fun, tgt_fun = two_cell_endpoints(D, x.components, phi)
        if cell.src != src_fun or cell.tgt != tgt_fun:
            report.add(f"two-cell at {phi!r} has wrong endpoint functors")
            continue
        sub = validate_nat_trans(cell)
        for p in sub.problems:
            report.add(f"two-cell at {phi!r}: {p}")
    if not report.ok:
        return report

    for a in idx.objects:
        forced = identity_two_cell(D, x.components, a)
        if x.two_cells[idx.identity[a]].components != forced.components:
            report.add(f"identity two-cell coherence fails at {a!r}")

    X = x.target
    for phi, psi in idx.composable_pairs():
        comp = idx.composition[(phi, psi)]
        if D.variance == "covariant":
            c_obj = idx.tgt[psi]
            for p in D.cat(idx.src[phi]).objects:
                left = compose(
                    X,
                    x.two_cells[comp].components[p],
                    x.components[c_obj].on_arrows[D.compositor(phi, psi).components[p]],
                )
                right = compose(
                    X,
                    x.two_cells[phi].components[p],
                    x.two_cells[psi].components[D.fun(phi).on_objects[p]],
                )
                if left != right:
                    report.add(f"composition coherence fails at ({phi!r}, {psi!r}, {p!r})")
        else:
            a_obj = idx.src[phi]
            for p in D.cat(idx.tgt[psi]).objects:
                left = compose_many(
                    X,
                    x.components[a_obj].on_arrows[D.compositor(phi, psi).components[p]],
                    x.two_cells[phi].components[D.fun(psi).on_objects[p]],
                    x.two_cells[psi].components[p],
                )
                if left != x.two_cells[comp].components[p]:
                    report.add(f"composition coherence fails at ({phi!r}, {psi!r}, {p!r})")
    return report


def is_pseudo(x: LaxTransformation) -> tuple[bool, Optional[tuple[str, str]]]:
    """True when every two-cell component is invertible; else a witness."""
    for phi in x.source.index.arrows:
        cell = x.two_cells[phi]
        for obj, f in cell.components.items():
            if two_sided_inverse(x.target, f) is None:
                return False, (phi, obj)
    return True, None


def enumerate_transformations(
    D: Pseudofunctor, X: FinCategory, kind: str = "lax"
) -> list[LaxTransformation]:
    """All transformations D -> X in canonical order.

    kind 'lax' yields everything; 'pseudo' keeps those whose two-cells are
    all invertible.
    """
    if kind not in ("lax", "pseudo"):
        raise InputError(f"unknown transformation kind {kind!r}")
    idx = D.index
    per_object = [enumerate_functors(D.cat(a), X) for a in idx.objects]
    non_id = [f for f in idx.arrows if not idx.is_identity(f)]
    results: list[LaxTransformation] = []

    for combo in itertools.product(*per_object):
        components = dict(zip(idx.objects, combo))
        two_cells: dict = {}
        ok = True
        for a in idx.objects:
            forced = identity_two_cell(D, components, a)
            sub = validate_nat_trans(forced)
            if not sub.ok:
                ok = False
                break
            two_cells[idx.identity[a]] = forced
        if not ok:
            continue

        def coherence_ok(cells: dict) -> bool:
            for phi, psi in idx.composable_pairs():
                comp = idx.composition[(phi, psi)]
                if phi not in cells or psi not in cells or comp not in cells:
                    continue
                if D.variance == "covariant":
                    c_obj = idx.tgt[psi]
                    for p in D.cat(idx.src[phi]).objects:
                        left = compose(
                            X,
                            cells[comp].components[p],
                            components[c_obj].on_arrows[
                                D.compositor(phi, psi).components[p]
                            ],
                        )
                        right = compose(
                            X,
                            cells[phi].components[p],
                            cells[psi].components[D.fun(phi).on_objects[p]],
                        )
                        if left != right:
                            return False
                else:
                    a_obj = idx.src[phi]
                    for p in D.cat(idx.tgt[psi]).objects:
                        left = compose_many(
                            X,
                            components[a_obj].on_arrows[
                                D.compositor(phi, psi).components[p]
                            ],
                            cells[phi].components[D.fun(psi).on_objects[p]],
                            cells[psi].components[p],
                        )
                        if left != cells[comp].components[p]:
                            return False
            return True

        if not coherence_ok(two_cells):
            continue

        def assign(i: int) -> None:
            if i == len(non_id):
                cand = LaxTransformation(
                    source=D, target=X, components=components, two_cells=dict(two_cells)
                )
                if kind == "pseudo" and not is_pseudo(cand)[0]:
                    return
                results.append(cand)
                return
            phi = non_id[i]
            src_fun, tgt_fun = two_cell_endpoints(D, components, phi)
            for cell in enumerate_nat_trans(src_fun, tgt_fun):
                two_cells[phi] = cell
                if coherence_ok(two_cells):
                    assign(i + 1)
                del two_cells[phi]

        assign(0)
    return results


@dataclass(eq=True)
class Modification:
    """Componentwise comparison between two parallel transformations."""

    src: LaxTransformation
    tgt: LaxTransformation
    components: dict

    def component(self, a: str) -> NatTrans:
        return self.components[a]


def validate_modification(m: Modification) -> ValidationReport:
    x, y = m.src, m.tgt
    if x.source != y.source or x.target != y.target:
        raise DomainError("modification endpoints are not parallel")
    D = x.source
    idx = D.index
    for a in idx.objects:
        if a not in m.components:
            raise InputError(f"no modification component at {a!r}")

    report = ValidationReport()
    for a in idx.objects:
        g = m.components[a]
        if g.src != x.components[a] or g.tgt != y.components[a]:
            report.add(f"component at {a!r} has wrong endpoint functors")
            continue
        sub = validate_nat_trans(g)
        for p in sub.problems:
            report.add(f"component at {a!r}: {p}")
    if not report.ok:
        return report

    X = x.target
    for phi in idx.arrows:
        a, b = idx.src[phi], idx.tgt[phi]
        if D.variance == "covariant":
            for p in D.cat(a).objects:
                left = compose(X, m.components[a].components[p], y.two_cells[phi].components[p])
                right = compose(
                    X,
                    x.two_cells[phi].components[p],
                    m.components[b].components[D.fun(phi).on_objects[p]],
                )
                if left != right:
                    report.add(f"two-cell compatibility fails at ({phi!r}, {p!r})")
        else:
            for p in D.cat(b).objects:
                left = compose(
                    X,
                    m.components[a].components[D.fun(phi).on_objects[p]],
                    y.two_cells[phi].components[p],
                )
                right = compose(X, x.two_cells[phi].components[p], m.components[b].components[p])
                if left != right:
                    report.add(f"two-cell compatibility fails at ({phi!r}, {p!r})")
    return report


def enumerate_modifications(x: LaxTransformation, y: LaxTransformation) -> list[Modification]:
    """All modifications x -> y in canonical componentwise order."""
    if x.source != y.source or x.target != y.target:
        raise DomainError("modification endpoints are not parallel")
    idx = x.source.index
    per_object = [
        enumerate_nat_trans(x.components[a], y.components[a]) for a in idx.objects
    ]
    results = []
    for combo in itertools.product(*per_object):
        m = Modification(src=x, tgt=y, components=dict(zip(idx.objects, combo)))
        if validate_modification(m).ok:
            results.append(m)
    return results


def identity_modification(x: LaxTransformation) -> Modification:
    components = {}
    for a in x.source.index.objects:
        F = x.components[a]
        components[a] = NatTrans(
            src=F,
            tgt=F,
            components={p: x.target.identity[F.on_objects[p]] for p in F.dom.objects},
        )
    return Modification(src=x, tgt=x, components=components)


def compose_modifications(m: Modification, n: Modification) -> Modification:
    """Vertical composite, m then n."""
    if m.tgt != n.src:
        raise DomainError("modifications are not vertically composable")
    X = m.src.target
    components = {}
    for a in m.src.source.index.objects:
        g, h = m.components[a], n.components[a]
        components[a] = NatTrans(
            src=g.src,
            tgt=h.tgt,
            components={
                p: compose(X, g.components[p], h.components[p]) for p in g.src.dom.objects
            },
        )
    return Modification(src=m.src, tgt=n.tgt, components=components)
