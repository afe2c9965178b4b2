"""Command-line front end: file ingestion and runnable verifiers.

Files are UTF-8 JSON with a "kind" discriminator: category, functor,
pseudofunctor, fractions-input, or diagram-bundle. Wherever a sub-document
is expected, either an inline object or a string holding a path relative
to the referring file is accepted.

Exit codes are uniform across commands: 0 means valid/verified, 1 means a
checked property failed, 2 means the input or a precondition was bad.

The environment variable CATFRAC_SEED is reserved; every algorithm here is
deterministic, so it is currently read nowhere.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .ambient import (
    InternalCategory,
    FinSetMap,
    externalize,
    internal_cleavage,
    internal_elements,
    internal_localize,
    verify_pairs_coequalizer,
)
from .diagram import (
    Pseudofunctor,
    VARIANCES,
    derive_unit_compositors,
    validate_pseudofunctor,
)
from .elements import cleavage, grothendieck, verify_oplax_colimit
from .errors import AxiomError, DomainError, InputError, IntegrityError
from .fincat import (
    FinCategory,
    Functor,
    NatTrans,
    compose_functors,
    find_isomorphism,
    identity_functor,
    validate_category,
    validate_functor,
)
from .fractions import (
    FractionsInput,
    check_axioms,
    localize,
    verify_localization_up,
    verify_pseudocolimit,
)

KINDS = ("category", "functor", "pseudofunctor", "fractions-input", "diagram-bundle")


# -- ingestion ---------------------------------------------------------------


def _read_json(path: Path) -> dict:
    try:
        data = json.loads(path.read_text(encoding="utf-8"))
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise InputError(f"{path} is not valid JSON: {exc}") from exc
    if not isinstance(data, dict):
        raise InputError(f"{path}: top level must be an object")
    return data


def _resolve(value, base: Path, expected: str) -> dict:
    """Inline object, or a path relative to the referring file."""
    if isinstance(value, str):
        data = _read_json(base / value)
    elif isinstance(value, dict):
        data = value
    else:
        raise InputError(f"expected an object or a file path, got {value!r}")
    kind = data.get("kind", expected)
    if kind != expected:
        raise InputError(f"expected a {expected} document, found kind {kind!r}")
    return data


def _require(data: dict, key: str, ctx: str):
    if key not in data:
        raise InputError(f"{ctx}: missing field {key!r}")
    return data[key]


def load_category(data: dict, base: Path) -> FinCategory:
    objects = _require(data, "objects", "category")
    arrows = _require(data, "arrows", "category")
    identities = _require(data, "identities", "category")
    compose_rows = data.get("compose", [])
    try:
        arrow_triples = [(a["name"], a["src"], a["tgt"]) for a in arrows]
        table = {(row["first"], row["then"]): row["equals"] for row in compose_rows}
    except (TypeError, KeyError) as exc:
        raise InputError(f"category: malformed arrow or compose row ({exc})") from exc
    return FinCategory.build(objects, arrow_triples, identities, table)


def load_functor(data: dict, base: Path) -> Functor:
    dom = load_category(_resolve(_require(data, "dom", "functor"), base, "category"), base)
    cod = load_category(_resolve(_require(data, "cod", "functor"), base, "category"), base)
    return Functor(
        dom,
        cod,
        dict(_require(data, "on_objects", "functor")),
        dict(_require(data, "on_arrows", "functor")),
    )


def load_pseudofunctor(data: dict, base: Path) -> Pseudofunctor:
    index = load_category(_resolve(_require(data, "index", "pseudofunctor"), base, "category"), base)
    variance = _require(data, "variance", "pseudofunctor")
    if variance not in VARIANCES:
        raise InputError(f"unknown variance {variance!r}")
    fibers = {
        A: load_category(_resolve(ref, base, "category"), base)
        for A, ref in _require(data, "on_objects", "pseudofunctor").items()
    }
    if set(fibers) != set(index.objects):
        raise InputError("on_objects must cover the index objects exactly")

    on_arrows = {}
    for phi, ref in _require(data, "on_arrows", "pseudofunctor").items():
        if phi not in index.src:
            raise InputError(f"on_arrows names unknown index arrow {phi!r}")
        A, B = index.src[phi], index.tgt[phi]
        dom, cod = (fibers[A], fibers[B]) if variance == "covariant" else (fibers[B], fibers[A])
        on_arrows[phi] = Functor(
            dom,
            cod,
            dict(_require(ref, "on_objects", f"on_arrows[{phi}]")),
            dict(_require(ref, "on_arrows", f"on_arrows[{phi}]")),
        )
    if set(on_arrows) != set(index.arrows):
        raise InputError("on_arrows must cover the index arrows exactly")

    unitors = {}
    for A, components in _require(data, "unitors", "pseudofunctor").items():
        if A not in fibers:
            raise InputError(f"unitor given for unknown index object {A!r}")
        unitors[A] = NatTrans(
            on_arrows[index.identity[A]], identity_functor(fibers[A]), dict(components)
        )

    compositors = {}
    for key, components in data.get("compositors", {}).items():
        parts = key.split(";")
        if len(parts) != 2:
            raise InputError(f"compositor key {key!r} is not of the form 'phi;psi'")
        phi, psi = parts
        if (phi, psi) not in index.composition:
            raise InputError(f"compositor key {key!r} names a non-composable pair")
        comp = index.composition[(phi, psi)]
        if variance == "covariant":
            target = compose_functors(on_arrows[phi], on_arrows[psi])
        else:
            target = compose_functors(on_arrows[psi], on_arrows[phi])
        compositors[(phi, psi)] = NatTrans(on_arrows[comp], target, dict(components))

    compositors = derive_unit_compositors(index, variance, on_arrows, unitors, compositors)
    return Pseudofunctor(index, variance, fibers, on_arrows, unitors, compositors)


def load_fractions_input(data: dict, base: Path) -> FractionsInput:
    category = load_category(
        _resolve(_require(data, "category", "fractions-input"), base, "category"), base
    )
    weq = _require(data, "weq", "fractions-input")
    inp = FractionsInput(category=category, weq=tuple(weq))
    inp.check()
    return inp


def category_to_json(C: FinCategory) -> dict:
    rows = []
    for f in C.arrows:
        for g in C.arrows:
            if C.tgt[f] != C.src[g]:
                continue
            if C.is_identity(f) or C.is_identity(g):
                continue
            rows.append({"first": f, "then": g, "equals": C.composition[(f, g)]})
    return {
        "kind": "category",
        "objects": list(C.objects),
        "arrows": [{"name": f, "src": C.src[f], "tgt": C.tgt[f]} for f in C.arrows],
        "identities": dict(C.identity),
        "compose": rows,
    }


# -- commands ----------------------------------------------------------------


def cmd_validate(args) -> int:
    path = Path(args.path)
    data = _read_json(path)
    kind = data.get("kind")
    if kind not in KINDS:
        raise InputError(f"unknown kind {kind!r}; expected one of {', '.join(KINDS)}")
    base = path.parent
    if kind == "category":
        report = validate_category(load_category(data, base))
    elif kind == "functor":
        report = validate_functor(load_functor(data, base))
    elif kind == "pseudofunctor":
        report = validate_pseudofunctor(load_pseudofunctor(data, base))
    elif kind == "fractions-input":
        inp = load_fractions_input(data, base)
        report = validate_category(inp.category)
    else:
        bundle_diagram = _resolve(_require(data, "diagram", "diagram-bundle"), base, "pseudofunctor")
        report = validate_pseudofunctor(load_pseudofunctor(bundle_diagram, base))
        for ref in data.get("against", []):
            xrep = validate_category(load_category(_resolve(ref, base, "category"), base))
            report.problems.extend(xrep.problems)
    if report.ok:
        print(f"{kind}: valid")
        return 0
    print(f"{kind}: INVALID")
    for line in report.problems:
        print(f"  {line}")
    return 1


def cmd_groth(args) -> int:
    path = Path(args.path)
    data = _read_json(path)
    if data.get("kind") != "pseudofunctor":
        raise InputError(f"groth expects a pseudofunctor file, found kind {data.get('kind')!r}")
    D = load_pseudofunctor(data, path.parent)
    if args.contravariant and D.variance != "contravariant":
        raise DomainError("--contravariant requested but the diagram is covariant")
    GD = grothendieck(D)
    weq = cleavage(GD).members if args.contravariant else None
    if args.json:
        doc = category_to_json(GD.carrier)
        doc["object_tags"] = {name: list(tag) for name, tag in GD.object_tags.items()}
        doc["arrow_tags"] = {name: list(tag) for name, tag in GD.arrow_tags.items()}
        if weq is not None:
            doc = {"kind": "fractions-input", "category": doc, "weq": list(weq)}
            doc["category"]["kind"] = "category"
        print(json.dumps(doc, indent=2))
        return 0
    C = GD.carrier
    print(f"elements category: {len(C.objects)} objects, {len(C.arrows)} arrows")
    for name in C.objects:
        A, a = GD.object_tags[name]
        print(f"  object {name}  [index {A}, fiber object {a}]")
    for name in C.arrows:
        phi, x, f = GD.arrow_tags[name]
        print(f"  arrow {name}: {C.src[name]} -> {C.tgt[name]}  [over {phi}; at {x}; fiber {f}]")
    if weq is not None:
        print(f"cleavage ({len(weq)} arrows): {', '.join(weq)}")
    return 0


def cmd_axioms(args) -> int:
    inp = load_fractions_input(_read_json(Path(args.path)), Path(args.path).parent)
    report = check_axioms(inp)
    print(report)
    return 0 if report.ok else 1


def cmd_localize(args) -> int:
    inp = load_fractions_input(_read_json(Path(args.path)), Path(args.path).parent)
    limit = 10**9 if args.exhaustive else 64
    LC = localize(inp, exhaustive_limit=limit)
    if args.json:
        doc = category_to_json(LC.carrier)
        doc["classes"] = {name: list(LC.class_reps[name]) for name in LC.carrier.arrows}
        doc["localization_functor"] = {
            "on_objects": dict(LC.L.on_objects),
            "on_arrows": dict(LC.L.on_arrows),
        }
        print(json.dumps(doc, indent=2))
        return 0
    C = LC.carrier
    print(f"localized category: {len(C.objects)} objects, {len(C.arrows)} arrows")
    for name in C.arrows:
        v, g = LC.class_reps[name]
        print(f"  {name}: {C.src[name]} -> {C.tgt[name]}  class of ({v}, {g})")
    print("localization functor on arrows:")
    for f in inp.category.arrows:
        print(f"  {f} |-> {LC.L.on_arrows[f]}")
    witness = find_isomorphism(C, inp.category)
    if witness is not None:
        pairs = ", ".join(f"{k}->{v}" for k, v in witness.forward.on_arrows.items())
        print(f"carrier is isomorphic to the input category: {pairs}")
    return 0


def cmd_verify(args) -> int:
    path = Path(args.path)
    data = _read_json(path)
    base = path.parent
    against = []
    if args.against:
        against.append(load_category(_read_json(Path(args.against)), Path(args.against).parent))
    elif data.get("kind") == "diagram-bundle":
        against = [
            load_category(_resolve(ref, base, "category"), base)
            for ref in _require(data, "against", "diagram-bundle")
        ]
    if not against:
        raise InputError("no test category: pass --against or use a diagram-bundle")

    if args.which == "localization":
        inp = load_fractions_input(data, base)
        reports = [verify_localization_up(inp, X) for X in against]
    else:
        if data.get("kind") == "diagram-bundle":
            pf_data = _resolve(_require(data, "diagram", "diagram-bundle"), base, "pseudofunctor")
        else:
            pf_data = data
        D = load_pseudofunctor(pf_data, base)
        if args.which == "oplax":
            reports = [verify_oplax_colimit(D, X) for X in against]
        else:
            reports = [verify_pseudocolimit(D, X) for X in against]
    ok = True
    for report in reports:
        print(report)
        ok = ok and report.ok
    return 0 if ok else 1


def _positional_mismatch(A: FinCategory, B: FinCategory):
    """First difference between two categories under the index-aligned map,
    reported in B's (input-derived) names; None when they agree."""
    if len(A.objects) != len(B.objects) or len(A.arrows) != len(B.arrows):
        return (
            f"size mismatch: {len(A.objects)}/{len(A.arrows)} vs "
            f"{len(B.objects)}/{len(B.arrows)} objects/arrows"
        )
    omap = dict(zip(A.objects, B.objects))
    amap = dict(zip(A.arrows, B.arrows))
    for f in A.arrows:
        if omap[A.src[f]] != B.src[amap[f]] or omap[A.tgt[f]] != B.tgt[amap[f]]:
            return f"arrow {amap[f]} has different endpoints on the two routes"
    for x in A.objects:
        if amap[A.identity[x]] != B.identity[omap[x]]:
            return f"identity at {omap[x]} differs between the two routes"
    for (f, g), h in A.composition.items():
        expected = B.composition.get((amap[f], amap[g]))
        if expected != amap[h]:
            return (
                f"hom({omap[A.src[f]]}, {omap[A.tgt[g]]}) mismatch: "
                f"{amap[f]} ; {amap[g]} = {amap[h]} internally, {expected} directly"
            )
    return None


def cmd_crosscheck(args) -> int:
    path = Path(args.path)
    data = _read_json(path)
    base = path.parent
    if data.get("kind") == "diagram-bundle":
        data = _resolve(_require(data, "diagram", "diagram-bundle"), base, "pseudofunctor")
    D = load_pseudofunctor(data, base)
    GD = grothendieck(D)
    IE = internal_elements(D)

    if args.shuffle:
        table = IE.c.table
        IE = InternalCategory(
            IE.c0, IE.c1, IE.s, IE.t, IE.e,
            FinSetMap(IE.c.dom, IE.c.cod, table[1:] + table[:1]),
        )
        mismatch = _positional_mismatch(externalize(IE, validate=False), GD.carrier)
        print(f"elements (shuffled control): FAIL: {mismatch}")
        return 1

    failures = 0
    mismatch = _positional_mismatch(externalize(IE), GD.carrier)
    if mismatch is None:
        print(f"elements: ok ({IE.c0.size} objects, {IE.c1.size} arrows)")
    else:
        failures += 1
        print(f"elements: FAIL: {mismatch}")

    w = internal_cleavage(D, IE)
    direct_members = cleavage(GD).members
    internal_members = tuple(GD.carrier.arrows[i] for i in w.table)
    if internal_members == tuple(direct_members):
        print(f"cleavage: ok ({w.dom.size} arrows)")
    else:
        failures += 1
        print(f"cleavage: FAIL: {internal_members} vs {tuple(direct_members)}")

    LI = internal_localize(IE, w)
    LC = localize(FractionsInput(category=GD.carrier, weq=tuple(direct_members)))
    mismatch = _positional_mismatch(externalize(LI), LC.carrier)
    if mismatch is None:
        print(f"localization: ok ({LI.c0.size} objects, {LI.c1.size} arrows)")
    else:
        failures += 1
        print(f"localization: FAIL: {mismatch}")

    pairs_report = verify_pairs_coequalizer(IE, w)
    print(pairs_report)
    if not pairs_report.ok:
        failures += 1
    return 0 if failures == 0 else 1


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="catfrac",
        description="Validate, build, and verify finite categories of fractions.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="run the validator matching the file's kind")
    p.add_argument("path")
    p.set_defaults(fn=cmd_validate)

    p = sub.add_parser("groth", help="build the category of elements of a pseudofunctor")
    p.add_argument("path")
    p.add_argument("--contravariant", action="store_true", help="also emit the cleavage (contravariant diagrams only)")
    p.add_argument("--json", action="store_true")
    p.set_defaults(fn=cmd_groth)

    p = sub.add_parser("axioms", help="check the right-fractions axioms of a marked category")
    p.add_argument("path")
    p.set_defaults(fn=cmd_axioms)

    p = sub.add_parser("localize", help="build the category of fractions")
    p.add_argument("path")
    p.add_argument("--exhaustive", action="store_true", help="force exhaustive well-definedness checks")
    p.add_argument("--json", action="store_true")
    p.set_defaults(fn=cmd_localize)

    p = sub.add_parser("verify", help="verify a universal property against a test category")
    p.add_argument("path")
    p.add_argument("which", choices=("oplax", "localization", "pseudocolim"))
    p.add_argument("--against", help="path to the test category file")
    p.set_defaults(fn=cmd_verify)

    p = sub.add_parser("crosscheck", help="compare internal constructions with the direct ones")
    p.add_argument("path")
    p.add_argument("--shuffle", action="store_true", help="negative control: corrupt the internal table first")
    p.set_defaults(fn=cmd_crosscheck)

    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except AxiomError as exc:
        print(f"failed: {exc}")
        return 1
    except IntegrityError as exc:
        print(f"integrity failure: {exc}")
        return 1
    except (InputError, DomainError) as exc:
        print(f"error: {exc}")
        return 2
    except (KeyError, TypeError) as exc:
        print(f"error: malformed input ({exc!r})")
        return 2


if __name__ == "__main__":
    sys.exit(main())
