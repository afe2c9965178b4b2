import pytest

import corpus
from catfrac import (
    LaxTransformation,
    Modification,
    NatTrans,
    Pseudofunctor,
    derive_unit_compositors,
    enumerate_modifications,
    enumerate_transformations,
    identity_functor,
    strictify,
    validate_modification,
    validate_pseudofunctor,
    validate_transformation,
)
from catfrac.diagram import (
    compositor_inverse_component,
    expected_endpoints,
    identity_two_cell,
    is_pseudo,
    compose_modifications,
    identity_modification,
    two_cell_endpoints,
    unitor_inverse_component,
)
from catfrac.errors import DomainError, InputError


@pytest.mark.parametrize("name,D", corpus.oplax_diagrams())
def test_corpus_diagrams_valid(name, D):
    assert validate_pseudofunctor(D).ok


def test_expected_endpoints_by_variance():
    Dc = corpus.diag_cov_two()
    assert expected_endpoints(Dc, "f") == (Dc.cat("a"), Dc.cat("b"))
    Dx = corpus.diag_contra_two()
    assert expected_endpoints(Dx, "f") == (Dx.cat("b"), Dx.cat("a"))


def test_unitor_and_compositor_inverses():
    D = corpus.diag_swap_one()
    # unitor at a is v, so its inverse is u
    assert D.unitors["*"].components["a"] == "v"
    assert unitor_inverse_component(D, "*", "a") == "u"
    delta = D.compositor("id:*", "id:*")
    assert compositor_inverse_component(D, "id:*", "id:*", "a") != delta.components["a"]


def test_derived_unit_compositors_of_swap():
    D = corpus.diag_swap_one()
    # delta_{1;1} at x inverts D(1)(unitor_x): D(1)(v)=u so the cell at a is v
    assert D.compositor("id:*", "id:*").components == {"a": "v", "b": "u"}


def test_derive_refuses_missing_nonunit_pair():
    D = corpus.diag_contra_chain()
    with pytest.raises(InputError):
        derive_unit_compositors(D.index, D.variance, D.on_arrows, D.unitors, {})


def test_strictify_rejects_nonstrict():
    I = corpus.iso()
    sw = corpus.swap_iso(I)
    with pytest.raises(InputError):
        strictify(
            corpus.chain3(),
            {"x": I, "y": I, "z": I},
            {
                "id:x": identity_functor(I),
                "id:y": identity_functor(I),
                "id:z": identity_functor(I),
                "f": sw,
                "g": sw,
                "h": sw,  # sw;sw = id != sw
            },
        )


def test_validator_catches_bad_unitor():
    D = corpus.diag_swap_one()
    D.unitors["*"] = NatTrans(
        D.unitors["*"].src, D.unitors["*"].tgt, {"a": "id:a", "b": "id:b"}
    )
    assert not validate_pseudofunctor(D).ok


def test_validator_catches_bad_compositor():
    D = corpus.diag_contra_swap()
    delta = D.compositor("f", "id:b")
    # right typing exists only for the genuine cells; swapping the two
    # components keeps arrows but breaks the endpoint equations
    D.compositors[("f", "id:b")] = NatTrans(
        delta.src, delta.tgt, {"a": delta.components["b"], "b": delta.components["a"]}
    )
    assert not validate_pseudofunctor(D).ok


def test_validator_catches_nonfunctorial_value():
    D = corpus.diag_cov_two()
    D.on_arrows["f"].on_arrows["f"] = "id:*"  # fine: still id:*; break objects instead
    D.on_arrows["f"].on_objects["a"] = "*"
    assert validate_pseudofunctor(D).ok  # unchanged values; sanity
    D.on_arrows["id:a"].on_arrows["f"] = "id:a"
    assert not validate_pseudofunctor(D).ok


def test_transformations_over_point_are_functors():
    from catfrac import enumerate_functors

    D = corpus.diag_contra_one()
    X = corpus.two()
    found = enumerate_transformations(D, X)
    assert len(found) == len(enumerate_functors(D.cat("*"), X)) == 3
    for x in found:
        assert validate_transformation(x).ok
        forced = identity_two_cell(D, x.components, "*")
        assert x.two_cells["id:*"] == forced


def test_transformation_counts_into_iso():
    assert len(enumerate_transformations(corpus.diag_swap_one(), corpus.iso())) == 4
    assert len(enumerate_transformations(corpus.diag_cov_two(), corpus.iso())) == 8
    assert len(enumerate_transformations(corpus.diag_contra_two(), corpus.iso())) == 8


def test_pseudo_filter():
    D = corpus.diag_swap_one()
    lax = enumerate_transformations(D, corpus.iso(), kind="lax")
    pseudo = enumerate_transformations(D, corpus.iso(), kind="pseudo")
    assert len(lax) == len(pseudo) == 4
    for x in pseudo:
        ok, witness = is_pseudo(x)
        assert ok and witness is None

    Dt = corpus.diag_contra_two()
    lax_t = enumerate_transformations(Dt, corpus.two(), kind="lax")
    pseudo_t = enumerate_transformations(Dt, corpus.two(), kind="pseudo")
    assert len(pseudo_t) < len(lax_t)
    bad = next(x for x in lax_t if x not in pseudo_t)
    ok, witness = is_pseudo(bad)
    assert not ok and witness is not None


def test_two_cell_endpoints_variance():
    D = corpus.diag_contra_two()
    x = enumerate_transformations(D, corpus.two())[0]
    src, tgt = two_cell_endpoints(D, x.components, "f")
    assert src.dom == D.cat("b") and tgt.dom == D.cat("b")


def test_validate_transformation_catches_corruption():
    D = corpus.diag_contra_two()
    X = corpus.iso()
    x = enumerate_transformations(D, X)[0]
    cell = x.two_cells["f"]
    other = "u" if cell.components["*"] != "u" else "v"
    x.two_cells["f"] = NatTrans(cell.src, cell.tgt, {"*": other})
    assert not validate_transformation(x).ok


def test_transformation_structural_gaps():
    D = corpus.diag_contra_one()
    X = corpus.two()
    x = enumerate_transformations(D, X)[0]
    broken = LaxTransformation(D, X, {}, x.two_cells)
    with pytest.raises(InputError):
        validate_transformation(broken)


def test_modifications_over_point_are_nat_trans():
    from catfrac import enumerate_nat_trans

    D = corpus.diag_contra_one()
    X = corpus.iso()
    xs = enumerate_transformations(D, X)
    for x in xs:
        for y in xs:
            mods = enumerate_modifications(x, y)
            nats = enumerate_nat_trans(x.components["*"], y.components["*"])
            assert len(mods) == len(nats)
            for m in mods:
                assert validate_modification(m).ok


def test_modification_identity_and_composition():
    D = corpus.diag_swap_one()
    X = corpus.iso()
    xs = enumerate_transformations(D, X)
    x = xs[0]
    ident = identity_modification(x)
    assert validate_modification(ident).ok
    assert compose_modifications(ident, ident) == ident
    for y in xs:
        for m in enumerate_modifications(x, y):
            assert compose_modifications(ident, m) == m


def test_modification_rejects_nonparallel():
    D = corpus.diag_swap_one()
    X = corpus.iso()
    xs = enumerate_transformations(D, X)
    m = identity_modification(xs[0])
    bad = Modification(xs[0], xs[1], m.components)
    report_or_err = None
    try:
        report_or_err = validate_modification(bad)
    except DomainError:
        return
    assert not report_or_err.ok
