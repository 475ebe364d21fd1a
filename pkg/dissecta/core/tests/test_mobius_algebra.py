import numpy as np
import pytest

from dissecta.core.errors import BottomNotInSubsetError, HostMismatchError, NoBottomError
from dissecta.core.lattice import lattice_from_poset
from dissecta.core.mobius_algebra import GroupVector, mob_product, restrict_j, u_vector
from dissecta.core.poset import build_poset
from dissecta.core.samples import (
    boolean_poset,
    chain_poset,
    diamond_poset,
    random_distributive_lattice,
    random_poset_with_bottom,
)


def _random_vector(rng, p):
    return GroupVector(p, rng.integers(-4, 5, size=len(p)))


def test_u_vectors():
    b2 = diamond_poset()
    assert u_vector(b2, "1").as_dict() == {"1": 1, "a": -1, "b": -1, "0": 1}
    assert u_vector(b2, "0") == GroupVector.unit(b2, "0")

    chain = chain_poset(["0", "m", "1"])
    assert u_vector(chain, "m").as_dict() == {"m": 1, "0": -1}


def test_no_bottom():
    with pytest.raises(NoBottomError):
        u_vector(build_poset(["x", "y"], []), "x")


def test_product_of_atoms_is_their_meet():
    b2 = diamond_poset()
    unit = GroupVector.unit
    assert mob_product(b2, unit(b2, "a"), unit(b2, "b")) == unit(b2, "0")
    assert mob_product(b2, unit(b2, "0"), unit(b2, "1")) == unit(b2, "0")


def test_orthogonal_idempotents():
    rng = np.random.default_rng(10)
    for _ in range(100):
        p = random_poset_with_bottom(rng, int(rng.integers(2, 21)), 0.3)
        u = {a: u_vector(p, a) for a in p}
        for a in p:
            assert mob_product(p, u[a], u[a]) == u[a]
            for b in p:
                if a != b:
                    assert mob_product(p, u[a], u[b]).is_zero()
        # a = sum of u(c) over c <= a
        for a in p:
            total = GroupVector.zero(p)
            for c in p:
                if p.is_leq(c, a):
                    total = total + u[c]
            assert total == GroupVector.unit(p, a)


def test_product_is_meet_on_lattices():
    rng = np.random.default_rng(11)
    for _ in range(10):
        l = lattice_from_poset(random_distributive_lattice(rng, max_elements=20))
        p = l.base
        for a in p:
            for b in p:
                product = mob_product(p, GroupVector.unit(p, a), GroupVector.unit(p, b))
                assert product == GroupVector.unit(p, l.meet_of(a, b))


def test_restrict_to_whole_poset_is_identity():
    rng = np.random.default_rng(12)
    p = boolean_poset(3)
    x = _random_vector(rng, p)
    assert restrict_j(p, p.elements, x) == x


def test_restrict_onto_join_irreducibles():
    b2 = diamond_poset()
    assert restrict_j(b2, {"0", "a", "b"}, u_vector(b2, "1")).is_zero()
    image = restrict_j(b2, {"0", "a", "b"}, GroupVector.unit(b2, "1"))
    assert image.as_dict() == {"a": 1, "b": 1, "0": -1}


def test_restrict_is_multiplicative():
    rng = np.random.default_rng(13)
    for _ in range(100):
        p = random_poset_with_bottom(rng, int(rng.integers(2, 21)), 0.3)
        bottom = p.elements[0]
        subset = {bottom} | {e for e in p.elements if rng.random() < 0.5}
        x, y = _random_vector(rng, p), _random_vector(rng, p)
        sub = p.subposet(subset)
        left = restrict_j(p, subset, mob_product(p, x, y))
        right = mob_product(sub, restrict_j(p, subset, x), restrict_j(p, subset, y))
        assert left == right


def test_restrict_needs_bottom():
    b2 = diamond_poset()
    with pytest.raises(BottomNotInSubsetError):
        restrict_j(b2, {"a", "b"}, GroupVector.unit(b2, "a"))


def test_vector_arithmetic():
    b2 = diamond_poset()
    a, b = GroupVector.unit(b2, "a"), GroupVector.unit(b2, "b")
    x = 3 * a - b
    assert x.as_dict() == {"a": 3, "b": -1}
    assert x["1"] == 0
    assert -x + x == GroupVector.zero(b2)
    assert GroupVector.from_mapping(b2, {"a": 3, "b": -1}) == x


def test_host_mismatch():
    b2 = diamond_poset()
    chain = chain_poset(["0", "1"])
    with pytest.raises(HostMismatchError):
        GroupVector.unit(b2, "a") + GroupVector.unit(chain, "0")
    with pytest.raises(HostMismatchError):
        mob_product(b2, GroupVector.unit(chain, "0"), GroupVector.unit(b2, "0"))


def test_embed_and_restrict():
    b2 = diamond_poset()
    sub = b2.subposet({"0", "a"})
    v = GroupVector.from_mapping(sub, {"0": 2, "a": -1})
    embedded = v.embed(b2)
    assert embedded.as_dict() == {"0": 2, "a": -1}
    assert embedded.restrict(sub) == v
