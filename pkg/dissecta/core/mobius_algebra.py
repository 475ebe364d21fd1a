"""The Möbius algebra of a poset with a bottom element."""

import logging
from typing import Dict, Iterable, Iterator, Mapping, Tuple

import numpy as np

from dissecta.core.errors import (
    BottomNotInSubsetError,
    HostMismatchError,
    NoBottomError,
)
from dissecta.core.helper_functions import exact_matmul
from dissecta.core.incidence import mobius
from dissecta.core.poset import Poset, bottom_index

logger = logging.getLogger(__name__)


class GroupVector:
    """An element of the free module Z P: one exact integer per element of P."""

    def __init__(self, host: Poset, coeffs) -> None:
        flat = [int(c) for c in np.asarray(coeffs).reshape(-1)]
        if len(flat) != len(host):
            raise HostMismatchError(
                f"{len(flat)} coefficients for a poset with {len(host)} elements"
            )
        coeffs = np.zeros(len(host), dtype=object)
        coeffs[:] = flat
        coeffs.setflags(write=False)
        self.host = host
        self.coeffs = coeffs

    @classmethod
    def zero(cls, host: Poset) -> "GroupVector":
        return cls(host, np.zeros(len(host), dtype=object))

    @classmethod
    def unit(cls, host: Poset, a: str) -> "GroupVector":
        coeffs = np.zeros(len(host), dtype=object)
        coeffs[host.index_of(a)] = 1
        return cls(host, coeffs)

    @classmethod
    def from_mapping(cls, host: Poset, values: Mapping[str, int]) -> "GroupVector":
        coeffs = np.zeros(len(host), dtype=object)
        for element, value in values.items():
            coeffs[host.index_of(element)] += int(value)
        return cls(host, coeffs)

    def __getitem__(self, element: str) -> int:
        return int(self.coeffs[self.host.index_of(element)])

    def __iter__(self) -> Iterator[Tuple[str, int]]:
        return iter(zip(self.host.elements, (int(c) for c in self.coeffs)))

    def as_dict(self) -> Dict[str, int]:
        """Nonzero coefficients by element."""
        return {e: c for e, c in self if c}

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def same_host(self, other: "GroupVector") -> bool:
        return self.host is other.host or self.host == other.host

    def _check_host(self, other: "GroupVector") -> None:
        if not self.same_host(other):
            raise HostMismatchError("vectors live on different posets")

    def __add__(self, other: "GroupVector") -> "GroupVector":
        self._check_host(other)
        return GroupVector(self.host, self.coeffs + other.coeffs)

    def __sub__(self, other: "GroupVector") -> "GroupVector":
        self._check_host(other)
        return GroupVector(self.host, self.coeffs - other.coeffs)

    def __neg__(self) -> "GroupVector":
        return GroupVector(self.host, -self.coeffs)

    def __rmul__(self, scalar: int) -> "GroupVector":
        return GroupVector(self.host, self.coeffs * int(scalar))

    __mul__ = __rmul__

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, GroupVector):
            return NotImplemented
        return self.same_host(other) and bool((self.coeffs == other.coeffs).all())

    def __hash__(self) -> int:
        return hash((self.host, tuple(int(c) for c in self.coeffs)))

    def __repr__(self) -> str:
        return f"GroupVector({self.as_dict()})"

    def embed(self, target: Poset) -> "GroupVector":
        """The same formal sum, read in a poset containing every host element."""
        coeffs = np.zeros(len(target), dtype=object)
        coeffs[target.indices(self.host.elements)] = self.coeffs
        return GroupVector(target, coeffs)

    def restrict(self, target: Poset) -> "GroupVector":
        """Keep only the coordinates of elements of target."""
        return GroupVector(target, self.coeffs[self.host.indices(target.elements)])


def _require_bottom(p: Poset) -> int:
    bottom = bottom_index(p)
    if bottom is None:
        raise NoBottomError("the Möbius algebra needs a poset with a bottom element")
    return bottom


def u_vector(p: Poset, a: str) -> GroupVector:
    """u(a) = sum over c <= a of mu(c, a) c."""
    _require_bottom(p)
    return GroupVector(p, mobius(p).values[:, p.index_of(a)])


def u_coordinates(p: Poset, x: GroupVector) -> np.ndarray:
    """Coordinates of x in the basis {u(c)}: sum of x over the up-set of c."""
    return exact_matmul(p.leq, x.coeffs)


def from_u_coordinates(p: Poset, coordinates: np.ndarray) -> GroupVector:
    return GroupVector(p, exact_matmul(mobius(p).values, coordinates))


def mob_product(p: Poset, x: GroupVector, y: GroupVector) -> GroupVector:
    """
    Product of the Möbius algebra, a . b = sum over c below both of u(c).

    Both factors are moved to the idempotent basis, multiplied pointwise and
    moved back.
    """
    _require_bottom(p)
    for v in (x, y):
        if not (v.host is p or v.host == p):
            raise HostMismatchError("vector does not live on the given poset")
    return from_u_coordinates(p, u_coordinates(p, x) * u_coordinates(p, y))


def restrict_j(p: Poset, subset: Iterable[str], x: GroupVector) -> GroupVector:
    """
    The algebra homomorphism j onto the subposet on `subset`, which maps
    u_P(a) to u_M(a) when a is in M and to 0 otherwise.
    """
    bottom = _require_bottom(p)
    if not (x.host is p or x.host == p):
        raise HostMismatchError("vector does not live on the given poset")
    subset = set(subset)
    if p.elements[bottom] not in subset:
        raise BottomNotInSubsetError(f"{p.elements[bottom]} must belong to the subset")

    sub = p.subposet(subset)
    kept = u_coordinates(p, x)[p.indices(sub.elements)]
    logger.debug("restricting onto %d of %d elements", len(sub), len(p))
    return from_u_coordinates(sub, kept)
