from fractions import Fraction

import pytest

from dissecta.core.dissection.arrangement import (
    ArrangementPoset,
    FaceProfile,
    chamber_statistic,
    face_counts,
    induced,
    load_arrangement,
)
from dissecta.core.errors import (
    DimNotMonotoneError,
    MissingChiError,
    MissingDimError,
    NoUniqueTopError,
    ProfileMismatchError,
    UnknownFlatError,
    ZeroChamberChiError,
)
from dissecta.core.poset import build_poset
from dissecta.core.samples import (
    central_line_arrangement,
    generic_line_arrangement,
    plane_example,
    sphere_example,
    two_great_circles,
    two_lines,
)


def _chain_arrangement(chi, dim=None):
    return ArrangementPoset(build_poset(["P", "T"], [("P", "T")]), "T", chi, dim)


def test_sphere_statistic():
    stat = chamber_statistic(sphere_example())
    assert stat.sum == 6
    assert stat.count is None


def test_plane_statistic():
    stat = chamber_statistic(plane_example(), 1)
    assert (stat.sum, stat.count, stat.integral) == (18, Fraction(18), True)


def test_non_integral_count_is_reported():
    stat = chamber_statistic(sphere_example(), 4)
    assert stat.count == Fraction(3, 2)
    assert stat.integral is False


def test_zero_chamber_chi():
    with pytest.raises(ZeroChamberChiError):
        chamber_statistic(sphere_example(), 0)


def test_single_flat():
    ap = ArrangementPoset(build_poset(["T"], []), "T", {"T": 5})
    assert chamber_statistic(ap).sum == 5


def test_constructor_checks():
    antichain = build_poset(["a", "b"], [])
    with pytest.raises(NoUniqueTopError):
        ArrangementPoset(antichain, "a", {"a": 1, "b": 1})
    with pytest.raises(NoUniqueTopError):
        ArrangementPoset(build_poset(["P", "T"], [("P", "T")]), "P", {"P": 1, "T": 1})
    with pytest.raises(MissingChiError):
        _chain_arrangement({"T": 1})
    with pytest.raises(MissingDimError):
        _chain_arrangement({"P": 1, "T": 1}, {"T": 1})
    with pytest.raises(DimNotMonotoneError):
        _chain_arrangement({"P": 1, "T": 1}, {"P": 2, "T": 1})


def test_unknown_flat_suggests_name():
    with pytest.raises(UnknownFlatError) as e:
        induced(sphere_example(), "P31")
    assert e.value.suggestion is not None


def test_induced_arrangement():
    sub = induced(sphere_example(), "H1")
    assert sub.top == "H1"
    assert set(sub.base.elements) == {"H1", "P13"}
    assert chamber_statistic(sub).sum == -2


def test_rank_needs_dimensions():
    ap = _chain_arrangement({"P": 1, "T": 1})
    with pytest.raises(MissingDimError):
        ap.rank("P")
    assert two_lines().rank("p12") == 2
    assert two_lines().arrangement_rank == 2


@pytest.mark.parametrize(
    "ap, expected",
    [
        (two_lines(), {0: 1, 1: 4, 2: 4}),
        (central_line_arrangement(3), {0: 1, 1: 6, 2: 6}),
        (generic_line_arrangement(3), {0: 3, 1: 9, 2: 7}),
    ],
)
def test_face_counts_of_line_arrangements(ap, expected):
    assert face_counts(ap, FaceProfile.alternating(2)) == expected


def test_face_counts_with_workers():
    ap = generic_line_arrangement(4)
    profile = FaceProfile.alternating(2)
    assert face_counts(ap, profile, workers=3) == face_counts(ap, profile, workers=1)


def test_face_counts_of_great_circles():
    assert face_counts(two_great_circles(), FaceProfile.alternating(2)) == {0: 2, 1: 4, 2: 4}


def test_flat_chi_by_dimension():
    profile = FaceProfile(chamber_chi_by_dim={0: 1, 1: -1, 2: 1}, flat_chi_by_dim={0: 1, 1: -1, 2: 1})
    assert face_counts(two_lines(), profile) == {0: 1, 1: 4, 2: 4}


def test_profile_errors():
    with pytest.raises(ZeroChamberChiError):
        FaceProfile(chamber_chi_by_dim={0: 1, 1: 0})
    with pytest.raises(ProfileMismatchError):
        face_counts(two_lines(), FaceProfile(chamber_chi_by_dim={2: 1}))
    with pytest.raises(ProfileMismatchError):
        FaceProfile(chamber_chi_by_dim={0: 1}, flat_chi_by_dim={2: 1}).flat_chi(two_lines())


def test_load_arrangement_from_mapping():
    ap = load_arrangement(
        {
            "elements": ["T", "H"],
            "covers": [["H", "T"]],
            "top": "T",
            "attrs": {"T": {"chi": 1, "dim": 1}, "H": {"chi": 1, "dim": 0}},
        }
    )
    assert chamber_statistic(ap).sum == 0
    assert ap.ambient_dim == 1


def test_load_arrangement_rejects_unknown_attribute_key():
    with pytest.raises(UnknownFlatError):
        load_arrangement(
            {
                "elements": ["T"],
                "covers": [],
                "top": "T",
                "attrs": {"T": {"chi": 1}, "X": {"chi": 1}},
            }
        )
