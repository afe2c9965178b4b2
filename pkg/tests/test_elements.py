import pytest

import corpus
from catfrac import (
    canonical_cocone,
    cleavage,
    enumerate_transformations,
    find_isomorphism,
    functor_to_transformation,
    grothendieck,
    identity_functor,
    transformation_to_functor,
    validate_category,
    validate_functor,
    validate_transformation,
    verify_oplax_colimit,
)
from catfrac.errors import DomainError


@pytest.mark.parametrize("name,D", corpus.oplax_diagrams())
def test_carriers_are_categories(name, D):
    GD = grothendieck(D)
    assert validate_category(GD.carrier).ok


def test_contra_two_carrier_shape():
    GD = grothendieck(corpus.diag_contra_two())
    C = GD.carrier
    assert len(C.objects) == 3
    assert len(C.arrows) == 6
    assert set(GD.object_tags.values()) == {("a", "a"), ("a", "b"), ("b", "*")}
    # one non-identity arrow per (index arrow, target-fiber object, fiber arrow)
    assert GD.object_name("b", "*") == "(b;*)"
    assert GD.arrow_name("f", "*", "id:b") == "(f;*;id:b)"


def test_swap_carrier_is_walking_iso():
    GD = grothendieck(corpus.diag_swap_one())
    assert len(GD.carrier.objects) == 2
    assert len(GD.carrier.arrows) == 4
    assert find_isomorphism(GD.carrier, corpus.iso()) is not None


def test_covariant_carrier_shape():
    GD = grothendieck(corpus.diag_cov_two())
    C = GD.carrier
    # fibers two and one glued along f |-> bang
    assert len(C.objects) == 3
    assert set(GD.object_tags.values()) == {("a", "a"), ("a", "b"), ("b", "*")}
    assert validate_category(C).ok


@pytest.mark.parametrize("name,D", corpus.oplax_diagrams())
def test_canonical_cocone_is_a_transformation(name, D):
    GD = grothendieck(D)
    ell = canonical_cocone(D, GD)
    assert validate_transformation(ell).ok
    for A in D.index.objects:
        assert validate_functor(ell.components[A]).ok


@pytest.mark.parametrize("name,D", corpus.oplax_diagrams())
def test_cocone_collapses_to_identity(name, D):
    GD = grothendieck(D)
    ell = canonical_cocone(D, GD)
    assert transformation_to_functor(ell, GD) == identity_functor(GD.carrier)


def test_cleavage_members():
    GD = grothendieck(corpus.diag_contra_two())
    W = cleavage(GD)
    # one member per index arrow x target-fiber object
    assert W.members == (
        "(id:a;a;id:a)",
        "(id:a;b;id:b)",
        "(id:b;*;id:*)",
        "(f;*;id:b)",
    )
    assert W.member_tags["(f;*;id:b)"] == ("f", "*")


def test_cleavage_rejects_covariant():
    GD = grothendieck(corpus.diag_cov_two())
    with pytest.raises(DomainError):
        cleavage(GD)


@pytest.mark.parametrize("name,D", corpus.oplax_diagrams())
@pytest.mark.parametrize("xname,X", corpus.test_battery())
def test_round_trips(name, D, xname, X):
    GD = grothendieck(D)
    for t in enumerate_transformations(D, X):
        th = transformation_to_functor(t, GD)
        assert validate_functor(th).ok
        assert functor_to_transformation(th, GD) == t


def test_verify_oplax_colimit_passes():
    for D in (corpus.diag_contra_two(), corpus.diag_swap_one()):
        rep = verify_oplax_colimit(D, corpus.iso())
        assert rep.ok
        assert rep.stats["functors"] == rep.stats["transformations"]
        assert "pass" in str(rep)


def test_verify_oplax_colimit_catches_wrong_tags():
    D = corpus.diag_contra_two()
    GD = grothendieck(D)
    a, b = GD.object_name("a", "a"), GD.object_name("a", "b")
    GD.object_tags[a], GD.object_tags[b] = GD.object_tags[b], GD.object_tags[a]
    GD.object_index[("a", "a")], GD.object_index[("a", "b")] = b, a
    rep = verify_oplax_colimit(D, corpus.two(), GD=GD)
    assert not rep.ok
    assert "FAIL" in str(rep)


def test_conversions_reject_foreign_inputs():
    D = corpus.diag_contra_two()
    GD = grothendieck(D)
    other = grothendieck(corpus.diag_contra_one())
    t = enumerate_transformations(corpus.diag_contra_one(), corpus.two())[0]
    with pytest.raises(DomainError):
        transformation_to_functor(t, GD)
    with pytest.raises(DomainError):
        functor_to_transformation(identity_functor(other.carrier), GD)
