import os

import numpy as np
import pytest

import dissecta
from dissecta.core.dissection.setmodel import (
    SetModel,
    set_oracle_check,
    subset_name,
    weight_valuation,
)
from dissecta.core.documents import SetModelDocument, read_document
from dissecta.core.errors import (
    ChambersNotPartitionError,
    DuplicateElementError,
    InvalidArgumentError,
    InvalidRefinementError,
    UnknownElementError,
)
from dissecta.core.samples import random_set_model

DATA = os.path.join(os.path.dirname(dissecta.__file__), "data")


def _load(name):
    return SetModel.from_document(read_document(os.path.join(DATA, name), SetModelDocument))


def test_subset_names():
    assert subset_name(["2", "1"]) == "{1,2}"
    assert subset_name([]) == "{}"
    assert subset_name(["b", "a"], order=["b", "a"]) == "{b,a}"


def test_segment_model():
    model = _load("segment_setmodel.json")
    report = set_oracle_check(model)
    assert (report.lhs, report.rhs, report.equal) == (4, 4, True)
    assert report.dlattice.ji_contained


def test_two_planes_model():
    model = _load("two_planes_setmodel.json")
    report = set_oracle_check(model)
    assert (report.lhs, report.rhs, report.equal) == (3, 3, True)
    assert not report.dlattice.top_join_irreducible
    assert report.dlattice.full_sum == 0


def test_refinement_poset_has_empty_set():
    model = _load("segment_setmodel.json")
    p = model.refinement_poset
    assert set(p.elements) == {"{}", "{1,2}", "{1,2,3,4,5,6}"}
    assert p.is_leq("{}", "{1,2}")


def test_weights():
    model = _load("two_planes_setmodel.json")
    weights = {"6": 5, "7": -2, "3": 11}
    report = set_oracle_check(model, weights)
    assert report.lhs == 5 - 2 + 1
    assert report.equal
    with pytest.raises(UnknownElementError):
        weight_valuation(model, {"9": 1})


def test_dlattice_cap():
    model = _load("two_planes_setmodel.json")
    assert set_oracle_check(model, max_ground=4).dlattice is None


def test_from_subspaces_builds_intersections():
    model = SetModel.from_subspaces(
        range(1, 9), [[1, 2, 3], [3, 4, 5]], [[6], [7, 8]]
    )
    names = {model.name(m) for m in model.refinement_masks}
    assert names == {"{1,2,3,4,5,6,7,8}", "{1,2,3}", "{3,4,5}", "{3}"}
    assert set_oracle_check(model).equal


def test_model_without_subspaces():
    model = SetModel.from_subspaces(["a", "b"], [], [["a"], ["b"]])
    report = set_oracle_check(model)
    assert (report.lhs, report.rhs, report.equal) == (2, 2, True)


def test_random_models():
    rng = np.random.default_rng(30)
    for _ in range(200):
        model = random_set_model(rng)
        weights = {e: int(rng.integers(-5, 6)) for e in model.ground}
        report = set_oracle_check(model, weights)
        assert report.equal, model
        assert report.dlattice.ji_contained


def test_distributive_closure_is_union_closed():
    model = _load("two_planes_setmodel.json")
    d = set(model.distributive_closure().tolist())
    assert 0 in d and model.top_mask in d
    for a in d:
        for b in d:
            assert a | b in d
            assert a & b in d


@pytest.mark.parametrize(
    "refinement, error",
    [
        ([["1", "2"]], "ground set"),
        ([["1", "2", "3", "4"], ["1", "2"], ["1", "2"]], "twice"),
        ([["1", "2", "3", "4"], ["1", "2"], []], "empty"),
        ([["1", "2", "3", "4"], ["1", "2"], ["1", "3"]], "union of the subspaces"),
        ([["1", "2", "3", "4"], ["1"]], "intersection"),
    ],
)
def test_invalid_refinements(refinement, error):
    with pytest.raises(InvalidRefinementError) as e:
        SetModel(["1", "2", "3", "4"], [["1", "2"]], [["3"], ["4"]], refinement)
    assert error in e.value.message


def test_refinement_must_be_closed_under_meets():
    with pytest.raises(InvalidRefinementError) as e:
        SetModel(
            ["1", "2", "3", "4"],
            [["1", "2", "3"]],
            [["4"]],
            [["1", "2", "3", "4"], ["1", "2", "3"], ["1", "2"], ["2", "3"]],
        )
    assert "meet in {2}" in e.value.message


@pytest.mark.parametrize(
    "chambers",
    [
        [["3"]],
        [["3", "4"], ["4"]],
        [["2", "3"], ["4"]],
        [["3"], ["4"], []],
    ],
)
def test_invalid_chambers(chambers):
    with pytest.raises(ChambersNotPartitionError):
        SetModel.from_subspaces(["1", "2", "3", "4"], [["1", "2"]], chambers)


def test_input_errors():
    with pytest.raises(DuplicateElementError):
        SetModel.from_subspaces(["1", "1"], [], [["1"]])
    with pytest.raises(InvalidArgumentError):
        SetModel(["1", "2"], [[]], [["1", "2"]], [["1", "2"]])
    with pytest.raises(UnknownElementError) as e:
        SetModel.from_subspaces(["alpha", "beta"], [["betta"]], [["alpha"]])
    assert e.value.suggestion == "beta"


def test_subspace_must_be_proper():
    with pytest.raises(InvalidArgumentError) as e:
        SetModel.from_subspaces(["1", "2"], [["2", "1"]], [])
    assert "proper subset" in e.value.message


def test_random_models_have_proper_subspaces():
    rng = np.random.default_rng(31)
    for _ in range(200):
        model = random_set_model(rng)
        assert model.top_mask not in model.subspace_masks


def test_large_ground_set():
    ground = [str(i) for i in range(1, 71)]
    model = SetModel.from_subspaces(ground, [["1", "2"]], [ground[2:]])
    report = set_oracle_check(model)
    assert (report.lhs, report.rhs, report.equal) == (68, 68, True)
    assert report.dlattice is None
    p = model.refinement_poset
    assert p.is_leq("{1,2}", model.name(model.top_mask))
    assert not p.is_leq(model.name(model.top_mask), "{1,2}")
