import itertools

import pytest
from hypothesis import given
from hypothesis import strategies as st

from relaxcheck.fstruct import (
    ANY, FEM, MASC, MASC_FEM, PL, SG, SG_PL, AgreementTrack, DomainError, FeatureValue, Sign,
    gender, number, opposite, pform, span_union, top, unify_value,
)

GENDERS = [MASC, FEM, MASC_FEM]
NUMBERS = [SG, PL, SG_PL]


def test_constructors_validate_values():
    assert gender("fem") == FEM
    with pytest.raises(ValueError):
        gender("neuter")
    with pytest.raises(DomainError):
        FeatureValue("colour", "red")


def test_top_is_underspecified():
    assert top("gender") == MASC_FEM and MASC_FEM.underspecified
    assert top("number") == SG_PL
    assert MASC.specific and not SG_PL.specific


@pytest.mark.parametrize("vals", [GENDERS, NUMBERS])
def test_lattice_laws_exhaustive(vals):
    t = top(vals[0].domain)
    for a, b in itertools.product(vals, repeat=2):
        assert unify_value(a, b) == unify_value(b, a)
    for a, b, c in itertools.product(vals, repeat=3):
        ab, bc = unify_value(a, b), unify_value(b, c)
        left = None if ab is None else unify_value(ab, c)
        right = None if bc is None else unify_value(a, bc)
        assert left == right
    for a in vals:
        assert unify_value(a, a) == a
        assert unify_value(a, t) == a


def test_distinct_specific_values_clash():
    assert unify_value(MASC, FEM) is None
    assert unify_value(SG, PL) is None


def test_cross_domain_unification_raises():
    with pytest.raises(DomainError):
        unify_value(MASC, PL)


def test_opposite():
    assert opposite(MASC) == FEM and opposite(PL) == SG
    assert opposite(MASC_FEM) == MASC_FEM
    with pytest.raises(DomainError):
        opposite(pform("de"))


@given(st.sampled_from(GENDERS + NUMBERS))
def test_opposite_is_involution(v):
    assert opposite(opposite(v)) == v


def test_track_validation():
    AgreementTrack(MASC, 10, FEM, 0)
    with pytest.raises(ValueError):
        AgreementTrack(MASC, -1, FEM, 0)
    with pytest.raises(ValueError):
        AgreementTrack(MASC, 10, MASC, 0)


def test_neutral_track():
    t = AgreementTrack.neutral("number")
    assert t.as_tuple() == ("sg_pl", 0, "sg_pl", 0)
    assert t.h_value == SG_PL


def test_sign_traversal_and_span_union():
    a = Sign(category="det", gender_track=AgreementTrack.neutral("gender"),
             number_track=AgreementTrack.neutral("number"), span=(0, 2), index=0)
    b = a.with_(category="n", span=(3, 7), index=1)
    np = a.with_(category="np", span=span_union([a.span, b.span]), daughters=(a, b), index=-1)
    assert np.span == (0, 7)
    assert [leaf.index for leaf in np.leaves()] == [0, 1]
    assert len(list(np.nodes())) == 3
    assert not np.lexical and a.lexical


def test_any_is_animacy_top():
    assert ANY.underspecified and ANY.domain == "animacy"
    assert number("pl") == PL
