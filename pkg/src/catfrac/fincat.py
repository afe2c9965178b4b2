"""Finite categories as explicit tables, with validation and enumeration.

Everything downstream (element categories, localizations, internalizations)
bottoms out in the types here. Composition is diagrammatic throughout:
``compose(C, f, g)`` is "f followed by g".

All enumeration operations are deterministic. The canonical order is always
declaration order: objects and arrows enumerate in the order they were given,
and searches return the first hit in lexicographic order over those.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Iterator, Optional

from .errors import DomainError, InputError


@dataclass
class ValidationReport:
    """A list of law violations; empty means valid."""

    problems: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.problems

    def add(self, msg: str) -> None:
        self.problems.append(msg)

    def __str__(self) -> str:
        if self.ok:
            return "ok"
        return "\n".join(self.problems)


@dataclass(eq=True)
class FinCategory:
    objects: tuple[str, ...]
    arrows: tuple[str, ...]
    src: dict[str, str]
    tgt: dict[str, str]
    identity: dict[str, str]
    # (f, g) -> f-then-g, total over composable pairs
    composition: dict[tuple[str, str], str]

    @classmethod
    def build(
        cls,
        objects: Iterable[str],
        arrows: Iterable[tuple[str, str, str]],
        identity: dict[str, str],
        composition: dict[tuple[str, str], str],
        fill_identity_composites: bool = True,
    ) -> "FinCategory":
        """Assemble and structurally check a category table.

        ``arrows`` is a sequence of (name, src, tgt). Missing composites with
        an identity factor are filled in automatically unless disabled; law
        violations (wrong values) are left for validate_category to report.
        """
        objs = tuple(objects)
        arrs = []
        src: dict[str, str] = {}
        tgt: dict[str, str] = {}
        for name, s, t in arrows:
            arrs.append(name)
            src[name] = s
            tgt[name] = t
        arrst = tuple(arrs)
        cat = cls(objs, arrst, src, tgt, dict(identity), dict(composition))
        cat._check_structure(allow_partial=fill_identity_composites)
        if fill_identity_composites:
            for f in arrst:
                for g in arrst:
                    if tgt[f] != src[g] or (f, g) in cat.composition:
                        continue
                    if g == identity.get(tgt[f]):
                        cat.composition[(f, g)] = f
                    elif f == identity.get(src[g]):
                        cat.composition[(f, g)] = g
            cat._check_structure(allow_partial=False)
        return cat

    # -- structure ---------------------------------------------------------

    def _check_structure(self, allow_partial: bool = False) -> None:
        if len(set(self.objects)) != len(self.objects):
            raise InputError("duplicate object names")
        if len(set(self.arrows)) != len(self.arrows):
            raise InputError("duplicate arrow names")
        objset = set(self.objects)
        arrset = set(self.arrows)
        for f in self.arrows:
            if self.src.get(f) not in objset or self.tgt.get(f) not in objset:
                raise InputError(f"arrow {f!r} has a dangling endpoint")
        for x in self.objects:
            if x not in self.identity:
                raise InputError(f"no identity declared for object {x!r}")
            if self.identity[x] not in arrset:
                raise InputError(f"identity of {x!r} is not a declared arrow")
        for (f, g), h in self.composition.items():
            if f not in arrset or g not in arrset or h not in arrset:
                raise InputError(f"composition entry ({f!r},{g!r})={h!r} references unknown arrows")
            if self.tgt[f] != self.src[g]:
                raise InputError(f"composition entry for non-composable pair ({f!r},{g!r})")
        if not allow_partial:
            for f in self.arrows:
                for g in self.arrows:
                    if self.tgt[f] == self.src[g] and (f, g) not in self.composition:
                        raise InputError(f"composition table is partial: missing ({f!r},{g!r})")

    # -- small conveniences --------------------------------------------------

    def hom(self, x: str, y: str) -> tuple[str, ...]:
        return tuple(f for f in self.arrows if self.src[f] == x and self.tgt[f] == y)

    def composable_pairs(self) -> Iterator[tuple[str, str]]:
        for f in self.arrows:
            for g in self.arrows:
                if self.tgt[f] == self.src[g]:
                    yield (f, g)

    def is_identity(self, f: str) -> bool:
        return self.identity.get(self.src[f]) == f


@dataclass(eq=True)
class Functor:
    dom: FinCategory
    cod: FinCategory
    on_objects: dict[str, str]
    on_arrows: dict[str, str]

    def obj(self, x: str) -> str:
        return self.on_objects[x]

    def arr(self, f: str) -> str:
        return self.on_arrows[f]


@dataclass(eq=True)
class NatTrans:
    src: Functor
    tgt: Functor
    components: dict[str, str]  # object of dom -> arrow of cod


@dataclass(eq=True)
class IsoWitness:
    forward: Functor
    backward: Functor


def validate_category(C: FinCategory) -> ValidationReport:
    """Report every violated category law; structural defects raise InputError."""
    C._check_structure()
    report = ValidationReport()
    for x in C.objects:
        i = C.identity[x]
        if C.src[i] != x or C.tgt[i] != x:
            report.add(f"identity of {x!r} is {i!r}: {C.src[i]!r} -> {C.tgt[i]!r}, not an endomorphism of {x!r}")
    for (f, g), h in C.composition.items():
        if C.src[h] != C.src[f] or C.tgt[h] != C.tgt[g]:
            report.add(
                f"composite ({f!r},{g!r})={h!r} lands in hom({C.src[h]!r},{C.tgt[h]!r}), "
                f"expected hom({C.src[f]!r},{C.tgt[g]!r})"
            )
    for f in C.arrows:
        li = C.identity[C.src[f]]
        ri = C.identity[C.tgt[f]]
        got = C.composition.get((li, f))
        if got is not None and got != f:
            report.add(f"left identity law fails at ({li!r},{f!r}): got {got!r}")
        got = C.composition.get((f, ri))
        if got is not None and got != f:
            report.add(f"right identity law fails at ({f!r},{ri!r}): got {got!r}")
    for f in C.arrows:
        for g in C.arrows:
            if C.tgt[f] != C.src[g]:
                continue
            fg = C.composition[(f, g)]
            for h in C.arrows:
                if C.tgt[g] != C.src[h]:
                    continue
                gh = C.composition[(g, h)]
                left = C.composition.get((fg, h))
                right = C.composition.get((f, gh))
                if left != right or left is None:
                    report.add(f"associativity fails at ({f!r},{g!r},{h!r}): ({f}{g}){h}={left!r}, {f}({g}{h})={right!r}")
    return report


def compose(C: FinCategory, f: str, g: str) -> str:
    if f not in C.src or g not in C.src:
        raise InputError(f"unknown arrow in compose: {f!r}, {g!r}")
    if C.tgt[f] != C.src[g]:
        raise DomainError(f"non-composable pair ({f!r},{g!r}): tgt {C.tgt[f]!r} != src {C.src[g]!r}")
    return C.composition[(f, g)]


def compose_many(C: FinCategory, *fs: str) -> str:
    """Fold compose over a nonempty chain, left to right."""
    out = fs[0]
    for f in fs[1:]:
        out = compose(C, out, f)
    return out


def identity_functor(C: FinCategory) -> Functor:
    return Functor(C, C, {x: x for x in C.objects}, {f: f for f in C.arrows})


def compose_functors(F: Functor, G: Functor) -> Functor:
    """F followed by G."""
    if F.cod != G.dom:
        raise DomainError("functors not composable: codomain/domain mismatch")
    return Functor(
        F.dom,
        G.cod,
        {x: G.on_objects[F.on_objects[x]] for x in F.dom.objects},
        {f: G.on_arrows[F.on_arrows[f]] for f in F.dom.arrows},
    )


def identity_nat_trans(F: Functor) -> NatTrans:
    return NatTrans(F, F, {x: F.cod.identity[F.obj(x)] for x in F.dom.objects})


def vertical_compose(a: NatTrans, b: NatTrans) -> NatTrans:
    """a : F => G followed by b : G => H."""
    if a.tgt != b.src:
        raise DomainError("natural transformations not composable")
    X = a.src.cod
    return NatTrans(
        a.src,
        b.tgt,
        {x: compose(X, a.components[x], b.components[x]) for x in a.src.dom.objects},
    )


def validate_functor(F: Functor) -> ValidationReport:
    dom, cod = F.dom, F.cod
    for x in dom.objects:
        if x not in F.on_objects:
            raise InputError(f"functor object mapping not total: missing {x!r}")
        if F.on_objects[x] not in cod.objects:
            raise InputError(f"functor maps {x!r} to unknown object {F.on_objects[x]!r}")
    for f in dom.arrows:
        if f not in F.on_arrows:
            raise InputError(f"functor arrow mapping not total: missing {f!r}")
        if F.on_arrows[f] not in cod.src:
            raise InputError(f"functor maps {f!r} to unknown arrow {F.on_arrows[f]!r}")
    report = ValidationReport()
    for f in dom.arrows:
        ff = F.arr(f)
        if cod.src[ff] != F.obj(dom.src[f]) or cod.tgt[ff] != F.obj(dom.tgt[f]):
            report.add(f"functor breaks endpoints at {f!r}: image {ff!r}")
    for x in dom.objects:
        if F.arr(dom.identity[x]) != cod.identity[F.obj(x)]:
            report.add(f"functor breaks identity at {x!r}")
    for (f, g), h in dom.composition.items():
        ff, gg = F.arr(f), F.arr(g)
        if cod.tgt[ff] != cod.src[gg]:
            continue  # endpoint problem already reported
        if cod.composition[(ff, gg)] != F.arr(h):
            report.add(f"functor breaks composition at ({f!r},{g!r})")
    return report


def validate_nat_trans(eta: NatTrans) -> ValidationReport:
    F, G = eta.src, eta.tgt
    if F.dom != G.dom or F.cod != G.cod:
        raise DomainError("natural transformation between non-parallel functors")
    X = F.cod
    for x in F.dom.objects:
        if x not in eta.components:
            raise InputError(f"missing component at {x!r}")
        if eta.components[x] not in X.src:
            raise InputError(f"component at {x!r} is not an arrow of the codomain")
    report = ValidationReport()
    for x in F.dom.objects:
        c = eta.components[x]
        if X.src[c] != F.obj(x) or X.tgt[c] != G.obj(x):
            report.add(
                f"component at {x!r} is {c!r}: {X.src[c]!r} -> {X.tgt[c]!r}, "
                f"expected {F.obj(x)!r} -> {G.obj(x)!r}"
            )
    for f in F.dom.arrows:
        x, y = F.dom.src[f], F.dom.tgt[f]
        cx, cy = eta.components[x], eta.components[y]
        Ff, Gf = F.arr(f), G.arr(f)
        if X.tgt[Ff] != X.src[cy] or X.tgt[cx] != X.src[Gf]:
            continue  # component typing already reported
        if compose(X, Ff, cy) != compose(X, cx, Gf):
            report.add(f"naturality square fails at {f!r}")
    return report


def enumerate_functors(C: FinCategory, X: FinCategory) -> list[Functor]:
    """Every functor C -> X exactly once, in canonical lexicographic order.

    Backtracks over object images first, then over images of non-identity
    arrows constrained to the matching hom-set of X; identities are forced.
    """
    nonid = [f for f in C.arrows if not C.is_identity(f)]
    out: list[Functor] = []
    comp_entries = list(C.composition.items())

    def arrows_ok(omap: dict[str, str], amap: dict[str, str]) -> bool:
        for (f, g), h in comp_entries:
            ff, gg, hh = amap.get(f), amap.get(g), amap.get(h)
            if ff is None or gg is None or hh is None:
                continue
            if X.composition[(ff, gg)] != hh:
                return False
        return True

    def assign_arrows(omap: dict[str, str], amap: dict[str, str], i: int) -> None:
        if i == len(nonid):
            out.append(Functor(C, X, dict(omap), dict(amap)))
            return
        f = nonid[i]
        for cand in X.hom(omap[C.src[f]], omap[C.tgt[f]]):
            amap[f] = cand
            if arrows_ok(omap, amap):
                assign_arrows(omap, amap, i + 1)
            del amap[f]

    def assign_objects(omap: dict[str, str], i: int) -> None:
        if i == len(C.objects):
            amap = {C.identity[x]: X.identity[omap[x]] for x in C.objects}
            if arrows_ok(omap, amap):
                assign_arrows(omap, amap, 0)
            return
        x = C.objects[i]
        for y in X.objects:
            omap[x] = y
            # prune: every outgoing hom from an assigned object must be matchable
            if all(
                not C.hom(a, x) or X.hom(omap[a], y)
                for a in C.objects[: i + 1]
                if a in omap
            ) and all(
                not C.hom(x, a) or X.hom(y, omap[a])
                for a in C.objects[: i + 1]
                if a in omap
            ):
                assign_objects(omap, i + 1)
            del omap[x]

    assign_objects({}, 0)
    return out


def enumerate_nat_trans(F: Functor, G: Functor) -> list[NatTrans]:
    """All natural transformations F => G in canonical component order."""
    if F.dom != G.dom or F.cod != G.cod:
        raise DomainError("cannot enumerate transformations between non-parallel functors")
    C, X = F.dom, F.cod
    out: list[NatTrans] = []

    def natural_so_far(comp: dict[str, str]) -> bool:
        for f in C.arrows:
            cx = comp.get(C.src[f])
            cy = comp.get(C.tgt[f])
            if cx is None or cy is None:
                continue
            if compose(X, F.arr(f), cy) != compose(X, cx, G.arr(f)):
                return False
        return True

    def go(comp: dict[str, str], i: int) -> None:
        if i == len(C.objects):
            out.append(NatTrans(F, G, dict(comp)))
            return
        x = C.objects[i]
        for cand in X.hom(F.obj(x), G.obj(x)):
            comp[x] = cand
            if natural_so_far(comp):
                go(comp, i + 1)
            del comp[x]

    go({}, 0)
    return out


@dataclass
class ShapeReport:
    direction: str
    ok: bool
    pair_witnesses: dict[tuple[str, str], tuple[str, str, str]]
    parallel_witnesses: dict[tuple[str, str], str]
    failure: Optional[str] = None

    def __str__(self) -> str:
        return f"{self.direction}: {'pass' if self.ok else 'FAIL: ' + str(self.failure)}"


def check_shape(A: FinCategory, direction: str) -> ShapeReport:
    """Decide filteredness or cofilteredness, with witnesses.

    filtered: nonempty, every object pair admits a cocone, every parallel
    pair admits a coequalizing arrow. cofiltered is the exact dual.
    """
    if direction not in ("filtered", "cofiltered"):
        raise DomainError(f"unknown shape direction {direction!r}")
    fwd = direction == "filtered"
    pair_w: dict[tuple[str, str], tuple[str, str, str]] = {}
    par_w: dict[tuple[str, str], str] = {}
    if not A.objects:
        return ShapeReport(direction, False, pair_w, par_w, "category is empty")
    for x in A.objects:
        for y in A.objects:
            found = None
            for z in A.objects:
                legs_x = A.hom(x, z) if fwd else A.hom(z, x)
                legs_y = A.hom(y, z) if fwd else A.hom(z, y)
                if legs_x and legs_y:
                    found = (z, legs_x[0], legs_y[0])
                    break
            if found is None:
                kind = "cocone" if fwd else "cone"
                return ShapeReport(direction, False, pair_w, par_w, f"objects ({x!r},{y!r}) admit no {kind}")
            pair_w[(x, y)] = found
    for f in A.arrows:
        for g in A.arrows:
            if f == g or A.src[f] != A.src[g] or A.tgt[f] != A.tgt[g]:
                continue
            found_h = None
            for h in A.arrows:
                if fwd and A.src[h] == A.tgt[f] and compose(A, f, h) == compose(A, g, h):
                    found_h = h
                    break
                if not fwd and A.tgt[h] == A.src[f] and compose(A, h, f) == compose(A, h, g):
                    found_h = h
                    break
            if found_h is None:
                kind = "coequalizing" if fwd else "equalizing"
                return ShapeReport(direction, False, pair_w, par_w, f"parallel pair ({f!r},{g!r}) has no {kind} arrow")
            par_w[(f, g)] = found_h
    return ShapeReport(direction, True, pair_w, par_w)


def opposite(C: FinCategory) -> FinCategory:
    return FinCategory(
        C.objects,
        C.arrows,
        dict(C.tgt),
        dict(C.src),
        dict(C.identity),
        {(g, f): h for (f, g), h in C.composition.items()},
    )


def find_isomorphism(C: FinCategory, D: FinCategory) -> Optional[IsoWitness]:
    """First isomorphism C ~ D in canonical search order, or None.

    Backtracking over object bijections with hom-cardinality pruning, then
    over arrow bijections hom by hom.
    """
    if len(C.objects) != len(D.objects) or len(C.arrows) != len(D.arrows):
        return None

    nonid = [f for f in C.arrows if not C.is_identity(f)]

    def object_bijections() -> Iterator[dict[str, str]]:
        def go(omap: dict[str, str], used: set[str], i: int) -> Iterator[dict[str, str]]:
            if i == len(C.objects):
                yield dict(omap)
                return
            x = C.objects[i]
            for y in D.objects:
                if y in used:
                    continue
                omap[x] = y
                used.add(y)
                if all(
                    len(C.hom(a, x)) == len(D.hom(omap[a], y))
                    and len(C.hom(x, a)) == len(D.hom(y, omap[a]))
                    for a in omap
                ):
                    yield from go(omap, used, i + 1)
                used.discard(y)
                del omap[x]

        yield from go({}, set(), 0)

    for omap in object_bijections():
        amap = {C.identity[x]: D.identity[omap[x]] for x in C.objects}
        used = set(amap.values())
        if len(used) != len(C.objects):
            continue

        def comp_ok(amap: dict[str, str]) -> bool:
            for (f, g), h in C.composition.items():
                ff, gg, hh = amap.get(f), amap.get(g), amap.get(h)
                if ff is None or gg is None or hh is None:
                    continue
                if D.composition[(ff, gg)] != hh:
                    return False
            return True

        def assign(i: int) -> bool:
            if i == len(nonid):
                return True
            f = nonid[i]
            for cand in D.hom(omap[C.src[f]], omap[C.tgt[f]]):
                if cand in used:
                    continue
                amap[f] = cand
                used.add(cand)
                if comp_ok(amap) and assign(i + 1):
                    return True
                used.discard(cand)
                del amap[f]
            return False

        if not comp_ok(amap):
            continue
        if assign(0):
            fwd = Functor(C, D, omap, dict(amap))
            back = Functor(D, C, {v: k for k, v in omap.items()}, {v: k for k, v in amap.items()})
            return IsoWitness(fwd, back)
    return None


def two_sided_inverse(C: FinCategory, f: str) -> Optional[str]:
    """First arrow r with f.r and r.f both identities, in canonical order."""
    x, y = C.src[f], C.tgt[f]
    for r in C.arrows:
        if C.src[r] != y or C.tgt[r] != x:
            continue
        if C.composition[(f, r)] == C.identity[x] and C.composition[(r, f)] == C.identity[y]:
            return r
    return None


def uniquify(names: Iterable[str]) -> list[str]:
    """Make a name sequence unique, appending #2, #3, ... to repeats."""
    seen: dict[str, int] = {}
    out = []
    for n in names:
        if n not in seen:
            seen[n] = 1
            out.append(n)
        else:
            seen[n] += 1
            fresh = f"{n}#{seen[n]}"
            while fresh in seen:
                seen[n] += 1
                fresh = f"{n}#{seen[n]}"
            seen[fresh] = 1
            out.append(fresh)
    return out
