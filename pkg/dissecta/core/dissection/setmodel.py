"""
A finite set model of a dissection.

The ambient space T is a finite ground set, the subspaces are subsets of
it and the chambers partition what the subspaces leave uncovered. Any
valuation f on the lattice D(L) generated by L and the chambers satisfies

    sum over chambers C of f(C) = sum over X in L + {empty} of mu(X, T) f(X)

when f(empty) = 0. `set_oracle_check` evaluates both sides exactly and,
for small ground sets, rebuilds D(L) to check that its join-irreducible
elements are among the empty set, L and the chambers.

Subsets are handled as integer bitmasks over the ground set.
"""

import logging
from functools import cached_property, reduce
from operator import or_
from typing import Dict, FrozenSet, Iterable, List, Mapping, Optional, Sequence, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict

from dissecta.core.config import get_config
from dissecta.core.documents import SetModelDocument
from dissecta.core.errors import (
    ChambersNotPartitionError,
    DuplicateElementError,
    InvalidArgumentError,
    InvalidRefinementError,
    InvariantViolationError,
    UnknownElementError,
)
from dissecta.core.helper_functions import find_close_key
from dissecta.core.incidence import mobius
from dissecta.core.poset import Poset

logger = logging.getLogger(__name__)


def subset_name(subset: Iterable[str], order: Optional[Sequence[str]] = None) -> str:
    """'{1,2}' with the members in ground order (sorted when none is given)."""
    members = list(subset)
    if order is not None:
        rank = {e: i for i, e in enumerate(order)}
        members.sort(key=lambda e: rank[e])
    else:
        members.sort()
    return "{" + ",".join(members) + "}"


def _union_closure(generators: Iterable[int]) -> List[int]:
    closure = {0}
    for g in generators:
        closure |= {x | g for x in closure}
    return sorted(closure)


def _intersection_closure(generators: Iterable[int]) -> List[int]:
    closure: set = set()
    for g in generators:
        closure |= {c & g for c in closure}
        closure.add(g)
    return sorted(closure)


def _is_union_of(target: int, pieces: Sequence[int]) -> bool:
    covered = 0
    for p in pieces:
        if p & target == p:
            covered |= p
    return covered == target


def subset_order(masks: Sequence[int]) -> np.ndarray:
    """Inclusion matrix of bitmasks held as Python ints."""
    return np.array([[a & b == a for b in masks] for a in masks], dtype=bool)


def _bits(ground: Sequence[str]) -> Dict[str, int]:
    bits: Dict[str, int] = {}
    for i, e in enumerate(ground):
        if e in bits:
            raise DuplicateElementError(f"ground element {e!r} is listed twice")
        bits[e] = 1 << i
    return bits


class SetModel:
    def __init__(
        self,
        ground: Sequence[str],
        subspaces: Sequence[Iterable[str]],
        chambers: Sequence[Iterable[str]],
        refinement: Sequence[Iterable[str]],
    ) -> None:
        self.ground: Tuple[str, ...] = tuple(str(e) for e in ground)
        self.bits = _bits(self.ground)
        self.top_mask = (1 << len(self.ground)) - 1

        self.subspace_masks = tuple(self.mask(s) for s in subspaces)
        if any(s == 0 for s in self.subspace_masks):
            raise InvalidArgumentError("subspaces must be nonempty")
        if self.top_mask in self.subspace_masks:
            raise InvalidArgumentError("a subspace must be a proper subset of the ground set")
        self.chamber_masks = tuple(self.mask(c) for c in chambers)
        self.refinement_masks = tuple(self.mask(x) for x in refinement)
        self._validate_refinement()
        self._validate_chambers()

    @classmethod
    def from_subspaces(
        cls,
        ground: Sequence[str],
        subspaces: Sequence[Iterable[str]],
        chambers: Sequence[Iterable[str]],
    ) -> "SetModel":
        """Use the intersection poset of the subspaces, with T, as refinement."""
        ground = [str(e) for e in ground]
        subspaces = [[str(e) for e in s] for s in subspaces]
        bits = _bits(ground)
        top = (1 << len(ground)) - 1
        masks = []
        for s in subspaces:
            unknown = [e for e in s if e not in bits]
            if unknown:
                raise UnknownElementError(unknown[0], find_close_key(bits, unknown[0]))
            masks.append(sum(bits[e] for e in set(s)))
        flats = [m for m in _intersection_closure(masks) if m and m != top]
        refinement = [ground] + [[e for e in ground if bits[e] & m] for m in flats]
        return cls(ground, subspaces, chambers, refinement)

    @classmethod
    def from_document(cls, doc: SetModelDocument) -> "SetModel":
        if doc.refinement is None:
            return cls.from_subspaces(doc.ground, doc.subspaces, doc.chambers)
        return cls(doc.ground, doc.subspaces, doc.chambers, doc.refinement)

    def __repr__(self) -> str:
        return (
            f"SetModel(ground={len(self.ground)}, subspaces={len(self.subspace_masks)}, "
            f"chambers={len(self.chamber_masks)}, refinement={len(self.refinement_masks)})"
        )

    def mask(self, subset: Iterable[str]) -> int:
        out = 0
        for e in subset:
            e = str(e)
            if e not in self.bits:
                raise UnknownElementError(e, find_close_key(self.bits, e))
            out |= self.bits[e]
        return out

    def members(self, mask: int) -> FrozenSet[str]:
        return frozenset(e for e, b in self.bits.items() if mask & b)

    def name(self, mask: int) -> str:
        return subset_name(self.members(mask), self.ground)

    @property
    def covered_mask(self) -> int:
        out = 0
        for s in self.subspace_masks:
            out |= s
        return out

    def _validate_refinement(self) -> None:
        masks = self.refinement_masks
        if self.top_mask not in masks:
            raise InvalidRefinementError("the refinement must contain the ground set T")
        if len(set(masks)) != len(masks):
            raise InvalidRefinementError("the refinement lists a set twice")
        if 0 in masks:
            raise InvalidRefinementError("the refinement must not contain the empty set")

        covered = self.covered_mask
        for m in masks:
            if m != self.top_mask and m & covered != m:
                raise InvalidRefinementError(
                    f"{self.name(m)} is not contained in the union of the subspaces"
                )
        for m in _intersection_closure(self.subspace_masks):
            if m and not _is_union_of(m, masks):
                raise InvalidRefinementError(
                    f"the intersection {self.name(m)} of subspaces is not a union of "
                    f"refinement elements"
                )
        for i, a in enumerate(masks):
            for b in masks[i + 1 :]:
                m = a & b
                if m and not _is_union_of(m, masks):
                    raise InvalidRefinementError(
                        f"{self.name(a)} and {self.name(b)} meet in {self.name(m)}, "
                        f"which is not a union of refinement elements"
                    )

    def _validate_chambers(self) -> None:
        covered = self.covered_mask
        seen = 0
        for c in self.chamber_masks:
            if c == 0:
                raise ChambersNotPartitionError("chambers must be nonempty")
            if c & seen:
                raise ChambersNotPartitionError(
                    f"chamber {self.name(c)} overlaps another chamber"
                )
            if c & covered:
                raise ChambersNotPartitionError(
                    f"chamber {self.name(c)} meets the subspaces in {self.name(c & covered)}"
                )
            seen |= c
        rest = self.top_mask & ~covered
        if seen != rest:
            raise ChambersNotPartitionError(
                f"chambers leave {self.name(rest & ~seen)} uncovered"
            )

    @cached_property
    def refinement_poset(self) -> Poset:
        """L with the empty set added, ordered by inclusion."""
        masks = [0] + list(self.refinement_masks)
        return Poset([self.name(m) for m in masks], subset_order(masks))

    def distributive_closure(self) -> np.ndarray:
        """D(L) as sorted bitmasks: all unions of elements of L and chambers."""
        return np.array(
            _union_closure(self.refinement_masks + self.chamber_masks), dtype=object
        )


def weight_valuation(
    model: SetModel, weights: Optional[Mapping[str, int]] = None
) -> Dict[int, int]:
    """Per-bit weights; every ground element weighs 1 unless given (cardinality)."""
    weights = weights or {}
    unknown = [e for e in weights if str(e) not in model.bits]
    if unknown:
        raise UnknownElementError(str(unknown[0]), find_close_key(model.bits, str(unknown[0])))
    return {model.bits[e]: int(weights.get(e, 1)) for e in model.ground}


def _value(mask: int, bit_weights: Mapping[int, int]) -> int:
    return sum(w for b, w in bit_weights.items() if mask & b)


class DLatticeReport(BaseModel):
    model_config = ConfigDict(frozen=True)

    size: int
    ji_contained: bool
    top_join_irreducible: bool
    full_sum: Optional[int] = None


class OracleReport(BaseModel):
    model_config = ConfigDict(frozen=True)

    lhs: int
    rhs: int
    equal: bool
    dlattice: Optional[DLatticeReport] = None


def _join_irreducible_masks(d: np.ndarray) -> np.ndarray:
    """Elements of a union-closed family that are not the union of the
    members strictly below them. The empty set is included."""
    keep = np.zeros(len(d), dtype=bool)
    for i, x in enumerate(d):
        below = [y for y in d if y & x == y and y != x]
        keep[i] = x == 0 or reduce(or_, below, 0) != x
    return d[keep]


def _check_dlattice(model: SetModel, bit_weights: Mapping[int, int]) -> DLatticeReport:
    d = model.distributive_closure()
    known = set(d.tolist())
    for x in d:
        if not all(int(y) in known for y in (d & x)):
            raise InvariantViolationError("the union closure of L is not closed under intersection")

    ji = _join_irreducible_masks(d)
    allowed = {0, *model.refinement_masks, *model.chamber_masks}
    outside = [int(m) for m in ji if int(m) not in allowed]
    if outside:
        logger.error(
            "join-irreducible %s of D(L) is outside L and the chambers",
            model.name(outside[0]),
        )
    top_ji = model.top_mask in set(ji.tolist())

    full_sum = None
    if not top_ji:
        masks = sorted(allowed)
        p = Poset([model.name(m) for m in masks], subset_order(masks))
        mu_top = mobius(p).values[:, p.index_of(model.name(model.top_mask))]
        full_sum = sum(int(mu) * _value(m, bit_weights) for mu, m in zip(mu_top, masks) if mu)
    logger.debug("D(L) has %d elements, %d join-irreducible", len(d), len(ji))
    return DLatticeReport(
        size=len(d),
        ji_contained=not outside,
        top_join_irreducible=top_ji,
        full_sum=full_sum,
    )


def set_oracle_check(
    model: SetModel,
    weights: Optional[Mapping[str, int]] = None,
    max_ground: Optional[int] = None,
) -> OracleReport:
    """
    Compare the sum of f over the chambers with the Möbius sum over L and the
    empty set. f is the cardinality unless per-element weights are given.
    D(L) is built when the ground set has at most `max_ground` elements
    (limits.dlattice_max_ground by default).
    """
    bit_weights = weight_valuation(model, weights)
    lhs = sum(_value(c, bit_weights) for c in model.chamber_masks)

    p = model.refinement_poset
    masks = [0] + list(model.refinement_masks)
    mu_top = mobius(p).values[:, p.index_of(model.name(model.top_mask))]
    rhs = sum(int(mu) * _value(m, bit_weights) for mu, m in zip(mu_top, masks) if mu)

    cap = max_ground if max_ground is not None else get_config().limits.dlattice_max_ground
    dlattice = None
    if len(model.ground) <= cap:
        dlattice = _check_dlattice(model, bit_weights)
    else:
        logger.info("ground set of %d elements, D(L) is not built", len(model.ground))

    equal = lhs == rhs
    if dlattice is not None:
        equal = equal and dlattice.ji_contained and dlattice.full_sum in (None, 0)
    if not equal:
        logger.error("set model identity fails: %d != %d", lhs, rhs)
    return OracleReport(lhs=lhs, rhs=rhs, equal=equal, dlattice=dlattice)
