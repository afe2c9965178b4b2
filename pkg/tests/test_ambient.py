import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import corpus
from catfrac import (
    FinCategory,
    FractionsInput,
    FinSetMap,
    FinSetObject,
    Functor,
    InternalCategory,
    InternalFunctor,
    InternalNatTrans,
    cleavage,
    compose_maps,
    coequalize_reflexive,
    coequalizer_mediate,
    coproduct,
    coproduct_mediate,
    externalize,
    find_isomorphism,
    grothendieck,
    identity_map,
    internal_cleavage,
    internal_elements,
    internal_localize,
    internalize,
    localize,
    pullback,
    pullback_mediate,
    validate_category,
    validate_internal_category,
    validate_internal_functor,
    validate_internal_nat_trans,
    verify_cover_class,
    verify_pairs_coequalizer,
)
from catfrac.ambient import has_common_section, is_surjective
from catfrac.errors import AxiomError, DomainError, InputError


def obj(n: int, label: str = "S") -> FinSetObject:
    return FinSetObject(label, n)


def test_map_construction_checks():
    A, B = obj(2, "A"), obj(2, "B")
    with pytest.raises(InputError):
        FinSetMap(A, B, (0,))
    with pytest.raises(InputError):
        FinSetMap(A, B, (0, 5))
    f = FinSetMap(A, B, (1, 0))
    assert compose_maps(f, identity_map(B)) == f
    assert compose_maps(identity_map(A), f) == f


def test_pullback_examples():
    A, B, C = obj(2, "A"), obj(2, "B"), obj(3, "C")
    f = FinSetMap(A, C, (0, 1))
    g = FinSetMap(B, C, (1, 2))
    P, p0, p1 = pullback(f, g)
    assert P.size == 1 and (p0.table, p1.table) == ((1,), (0,))
    k = FinSetMap(A, B, (0, 0))
    KP, k0, k1 = pullback(k, k)
    assert KP.size == 4  # kernel pair of a constant map
    with pytest.raises(DomainError):
        pullback(f, k)


def test_pullback_mediate_picks_the_unique_element():
    A = obj(2, "A")
    k = FinSetMap(A, obj(1, "pt"), (0, 0))
    P, p0, p1 = pullback(k, k)
    Z = obj(1, "Z")
    m = pullback_mediate(p0, p1, FinSetMap(Z, A, (1,)), FinSetMap(Z, A, (0,)))
    assert p0.table[m.table[0]] == 1 and p1.table[m.table[0]] == 0
    with pytest.raises(DomainError):
        pullback_mediate(p0, p1, FinSetMap(Z, A, (1,)), FinSetMap(Z, obj(1, "pt"), (0,)))


def test_coproduct_examples():
    S, injs = coproduct([obj(2, "A"), obj(1, "B")])
    assert S.size == 3
    assert injs[0].table == (0, 1) and injs[1].table == (2,)
    empty, none = coproduct([])
    assert empty.size == 0 and none == []
    S3, injs3 = coproduct([obj(2, "A"), obj(3, "B"), obj(1, "C")])
    assert S3.size == 6 and injs3[2].table == (5,)


def test_coproduct_mediate_agrees_with_legs():
    parts = [obj(2, "A"), obj(1, "B")]
    S, injs = coproduct(parts)
    T = obj(2, "T")
    legs = [FinSetMap(parts[0], T, (1, 0)), FinSetMap(parts[1], T, (1,))]
    m = coproduct_mediate(S, injs, legs)
    for inj, leg in zip(injs, legs):
        assert compose_maps(inj, m) == leg
    with pytest.raises(DomainError):
        coproduct_mediate(S, injs, legs[:1])


def test_coequalizer_examples():
    R = obj(2, "R")
    A3 = obj(3, "A")
    f = FinSetMap(R, A3, (0, 1))
    g = FinSetMap(R, A3, (1, 2))
    Q, q = coequalize_reflexive(f, g)
    assert Q.size == 1
    h = FinSetMap(R, A3, (0, 1))
    Q2, q2 = coequalize_reflexive(h, h)
    assert Q2.size == 3 and q2.table == (0, 1, 2)
    empty = obj(0, "E")
    f0 = FinSetMap(empty, A3, ())
    Q3, q3 = coequalize_reflexive(f0, f0)
    assert Q3.size == 3
    # classes are numbered by least member
    j = FinSetMap(R, A3, (2, 0))
    k = FinSetMap(R, A3, (2, 1))
    Q4, q4 = coequalize_reflexive(j, k)
    assert q4.table == (0, 0, 1)


def test_common_section_predicate():
    A2, A3 = obj(2, "A"), obj(3, "B")
    f = FinSetMap(A2, A3, (0, 1))
    g = FinSetMap(A2, A3, (1, 2))
    assert not has_common_section(f, g)  # 3 targets, 2 rows: impossible
    d = FinSetMap(A3, A3, (0, 1, 2))
    assert has_common_section(d, d)
    with pytest.raises(DomainError):
        has_common_section(f, d)


def test_coequalizer_mediate():
    R, A3 = obj(2, "R"), obj(3, "A")
    f = FinSetMap(R, A3, (0, 0))
    g = FinSetMap(R, A3, (1, 1))
    Q, q = coequalize_reflexive(f, g)
    h = FinSetMap(A3, obj(2, "T"), (1, 1, 0))
    m = coequalizer_mediate(q, h)
    assert compose_maps(q, m) == h
    bad = FinSetMap(A3, obj(2, "T"), (1, 0, 0))
    with pytest.raises(DomainError):
        coequalizer_mediate(q, bad)


sizes = st.integers(min_value=0, max_value=4)


@st.composite
def random_map(draw, dom=None, cod=None):
    if dom is None:
        dom = obj(draw(sizes), "D")
    if cod is None:
        cod = obj(draw(st.integers(min_value=1, max_value=4)), "C")
    table = tuple(
        draw(st.integers(min_value=0, max_value=cod.size - 1))
        for _ in range(dom.size)
    )
    return FinSetMap(dom, cod, table)


@settings(max_examples=60, deadline=None)
@given(st.data())
def test_pullback_mediate_roundtrip(data):
    B = obj(data.draw(st.integers(min_value=1, max_value=3)), "B")
    f = data.draw(random_map(cod=B))
    g = data.draw(random_map(cod=B))
    P, p0, p1 = pullback(f, g)
    if P.size == 0:
        z = FinSetMap(obj(0, "Z"), P, ())
    else:
        z = data.draw(random_map(cod=P))
    m = pullback_mediate(p0, p1, compose_maps(z, p0), compose_maps(z, p1))
    assert m == z


@settings(max_examples=60, deadline=None)
@given(st.data())
def test_coproduct_mediate_roundtrip(data):
    parts = [obj(data.draw(sizes), f"P{i}") for i in range(data.draw(st.integers(min_value=1, max_value=3)))]
    S, injs = coproduct(parts)
    T = obj(data.draw(st.integers(min_value=1, max_value=3)), "T")
    legs = [data.draw(random_map(dom=p, cod=T)) for p in parts]
    m = coproduct_mediate(S, injs, legs)
    for inj, leg in zip(injs, legs):
        assert compose_maps(inj, m) == leg


@settings(max_examples=60, deadline=None)
@given(st.data())
def test_coequalizer_mediate_roundtrip(data):
    A = obj(data.draw(st.integers(min_value=1, max_value=4)), "A")
    f = data.draw(random_map(cod=A))
    g = data.draw(random_map(dom=f.dom, cod=A))
    Q, q = coequalize_reflexive(f, g)
    m0 = data.draw(random_map(dom=Q))
    m = coequalizer_mediate(q, compose_maps(q, m0))
    assert m == m0


def test_cover_class_small():
    report = verify_cover_class(max_size=3)
    assert report.ok
    assert is_surjective(FinSetMap(obj(2, "A"), obj(1, "B"), (0, 0)))
    assert not is_surjective(FinSetMap(obj(0, "E"), obj(1, "B"), ()))


@pytest.mark.parametrize("name,C", corpus.all_categories())
def test_internalize_round_trip(name, C):
    IC = internalize(C)
    assert validate_internal_category(IC).ok
    E = externalize(IC)
    assert validate_category(E).ok
    iso = find_isomorphism(E, C)
    assert iso is not None
    # positional agreement, not just abstract isomorphism
    assert iso.forward.on_objects == {f"x{i}": x for i, x in enumerate(C.objects)}


def test_every_table_perturbation_is_detected():
    base = internalize(corpus.chain3())
    tables = {"s": base.s, "t": base.t, "e": base.e, "c": base.c}
    checked = 0
    for field, fmap in tables.items():
        for pos in range(fmap.dom.size):
            for new in range(fmap.cod.size):
                if new == fmap.table[pos]:
                    continue
                broken = list(fmap.table)
                broken[pos] = new
                repl = FinSetMap(fmap.dom, fmap.cod, tuple(broken))
                IC = InternalCategory(
                    base.c0,
                    base.c1,
                    repl if field == "s" else base.s,
                    repl if field == "t" else base.t,
                    repl if field == "e" else base.e,
                    repl if field == "c" else base.c,
                )
                try:
                    detected = not validate_internal_category(IC).ok
                except InputError:
                    # endpoint edits change the composable-pairs object itself
                    detected = True
                assert detected, (field, pos, new)
                checked += 1
    expected = sum(f.dom.size * (f.cod.size - 1) for f in tables.values())
    assert checked == expected == 89


def test_internal_functor_validation():
    dom = internalize(corpus.two())
    cod = internalize(corpus.iso())
    # two -> iso picking u: objects a,b -> a,b; arrows id,id,f -> id,id,u
    F = InternalFunctor(dom, cod, FinSetMap(dom.c0, cod.c0, (0, 1)), FinSetMap(dom.c1, cod.c1, (0, 1, 2)))
    assert validate_internal_functor(F).ok
    bad = InternalFunctor(dom, cod, F.f0, FinSetMap(dom.c1, cod.c1, (0, 1, 3)))
    rep = validate_internal_functor(bad)
    assert not rep.ok and any("square" in p for p in rep.problems)


def test_internal_nat_trans_validation():
    dom = internalize(corpus.two())
    cod = internalize(corpus.two())
    idf = InternalFunctor(dom, cod, identity_map(dom.c0), identity_map(dom.c1))
    # constant functor at b: objects -> b, arrows -> id:b
    const_b = InternalFunctor(dom, cod, FinSetMap(dom.c0, cod.c0, (1, 1)), FinSetMap(dom.c1, cod.c1, (1, 1, 1)))
    assert validate_internal_functor(const_b).ok
    # component at a is f (position 2), at b is id:b (position 1)
    eta = InternalNatTrans(idf, const_b, FinSetMap(dom.c0, cod.c1, (2, 1)))
    assert validate_internal_nat_trans(eta).ok
    bad = InternalNatTrans(idf, const_b, FinSetMap(dom.c0, cod.c1, (1, 1)))
    assert not validate_internal_nat_trans(bad).ok
    with pytest.raises(DomainError):
        validate_internal_nat_trans(InternalNatTrans(idf, InternalFunctor(cod, internalize(corpus.iso()), FinSetMap(cod.c0, obj(2, "C0"), (0, 1)), FinSetMap(cod.c1, obj(4, "C1"), (0, 1, 2))), FinSetMap(dom.c0, cod.c1, (1, 1))))


@pytest.mark.parametrize("dname", ["contra_one", "contra_two", "contra_chain", "contra_swap"])
def test_internal_elements_matches_direct(dname):
    D = getattr(corpus, f"diag_{dname}")()
    IE = internal_elements(D)
    assert validate_internal_category(IE).ok
    E = externalize(IE)
    GD = grothendieck(D)
    # positional: element i of the internal object set is the i-th tagged object
    assert len(E.objects) == len(GD.carrier.objects)
    assert len(E.arrows) == len(GD.carrier.arrows)
    fwd = Functor(
        E,
        GD.carrier,
        {f"x{i}": x for i, x in enumerate(GD.carrier.objects)},
        {f"a{j}": a for j, a in enumerate(GD.carrier.arrows)},
    )
    from catfrac import validate_functor

    assert validate_functor(fwd).ok


def test_internal_elements_rejects_covariant():
    with pytest.raises(DomainError):
        internal_elements(corpus.diag_cov_two())


def test_internal_cleavage_matches_direct():
    D = corpus.diag_contra_two()
    IE = internal_elements(D)
    w = internal_cleavage(D, IE)
    GD = grothendieck(D)
    W = cleavage(GD)
    assert w.cod == IE.c1
    picked = [GD.carrier.arrows[j] for j in w.table]
    assert picked == list(W.members)
    assert len(set(w.table)) == w.dom.size  # injective


@pytest.mark.parametrize("dname", ["contra_one", "contra_two", "contra_chain", "contra_swap"])
def test_internal_localize_matches_direct(dname):
    D = getattr(corpus, f"diag_{dname}")()
    IE = internal_elements(D)
    w = internal_cleavage(D, IE)
    IL = internal_localize(IE, w)
    assert validate_internal_category(IL).ok
    E = externalize(IL)

    GD = grothendieck(D)
    W = cleavage(GD)
    LC = localize(FractionsInput(GD.carrier, W.members))
    assert len(E.objects) == len(LC.carrier.objects)
    assert len(E.arrows) == len(LC.carrier.arrows)
    iso = find_isomorphism(E, LC.carrier)
    assert iso is not None


@pytest.mark.parametrize("name,inp", corpus.fractions_corpus())
def test_internal_localize_on_plain_marked_categories(name, inp):
    IC = internalize(inp.category)
    arr_pos = {a: i for i, a in enumerate(inp.category.arrows)}
    Wset = FinSetObject("W", len(inp.weq))
    w = FinSetMap(Wset, IC.c1, tuple(arr_pos[v] for v in inp.weq))
    IL = internal_localize(IC, w)
    E = externalize(IL)
    LC = localize(inp)
    assert len(E.objects) == len(LC.carrier.objects)
    assert len(E.arrows) == len(LC.carrier.arrows)
    assert find_isomorphism(E, LC.carrier) is not None
    rep = verify_pairs_coequalizer(IC, w)
    assert rep.ok, str(rep)
    assert rep.stats["pair classes"] == rep.stats["class pairs"]


def test_internal_localize_refuses_bad_marks():
    C = corpus.two()
    IC = internalize(C)
    arr_pos = {a: i for i, a in enumerate(C.arrows)}
    w = FinSetMap(FinSetObject("W", 1), IC.c1, (arr_pos["f"],))
    with pytest.raises(AxiomError) as exc:
        internal_localize(IC, w)
    assert exc.value.report is not None


def test_internal_localize_requires_injective_marks():
    C = corpus.two()
    IC = internalize(C)
    w = FinSetMap(FinSetObject("W", 2), IC.c1, (0, 0))
    with pytest.raises(InputError):
        internal_localize(IC, w)
