"""Lattices: join/meet tables, join-irreducibles, prime ideals and the
distributive/modular/cancellation tests."""

import logging
from functools import cached_property, reduce
from typing import Dict, FrozenSet, Iterable, List, Optional

import numpy as np
from pydantic import BaseModel, ConfigDict

from dissecta.core.config import get_config
from dissecta.core.errors import (
    InvalidArgumentError,
    InvariantViolationError,
    NonUniqueCoverError,
    NotALatticeError,
    NotDistributiveError,
    TooLargeError,
)
from dissecta.core.poset import Poset, bottom_index, top_index

logger = logging.getLogger(__name__)


def _bound_table(leq: np.ndarray, elements) -> np.ndarray:
    """Least upper bounds for every pair under `leq`, or NotALatticeError.

    Pass the transposed relation to get greatest lower bounds.
    """
    n = leq.shape[0]
    up_sizes = leq.sum(axis=1)
    table = np.empty((n, n), dtype=np.intp)
    for i in range(n):
        upper = leq[i][None, :] & leq
        # the least upper bound, if any, lies below every other bound: largest up-set
        candidates = np.where(upper, up_sizes[None, :], -1).argmax(axis=1)
        has_bound = upper.any(axis=1)
        least = ~(upper & ~leq[candidates]).any(axis=1)
        bad = np.flatnonzero(~(has_bound & least))
        if len(bad):
            j = int(bad[0])
            raise NotALatticeError(
                f"{elements[i]} and {elements[j]} have no unique bound",
                (elements[i], elements[j]),
            )
        table[i] = candidates
    table.setflags(write=False)
    return table


class Lattice:
    """
    A finite poset in which every pair has a join and a meet.

    `join` and `meet` are n x n index tables over the base poset's element
    order. Structural flags are computed on first access and cached.
    """

    def __init__(self, base: Poset, join: np.ndarray, meet: np.ndarray) -> None:
        self.base = base
        self.join = join
        self.meet = meet
        self.bottom = bottom_index(base)
        self.top = top_index(base)
        if self.bottom is None or self.top is None:
            raise InvariantViolationError("a finite lattice has a bottom and a top")

    def __len__(self) -> int:
        return len(self.base)

    def __repr__(self) -> str:
        return f"Lattice({len(self)} elements)"

    @property
    def elements(self):
        return self.base.elements

    @property
    def leq(self) -> np.ndarray:
        return self.base.leq

    def index_of(self, element: str) -> int:
        return self.base.index_of(element)

    def join_of(self, a: str, b: str) -> str:
        return self.elements[self.join[self.index_of(a), self.index_of(b)]]

    def meet_of(self, a: str, b: str) -> str:
        return self.elements[self.meet[self.index_of(a), self.index_of(b)]]

    def join_all(self, indices: Iterable[int]) -> int:
        """Join of a family of indices; the empty join is the bottom."""
        return int(reduce(lambda x, y: self.join[x, y], indices, self.bottom))

    def meet_all(self, indices: Iterable[int]) -> int:
        return int(reduce(lambda x, y: self.meet[x, y], indices, self.top))

    @cached_property
    def structure(self) -> "StructureReport":
        return structure_check(self)

    @cached_property
    def irreducibles(self) -> "JoinIrreducibles":
        return join_irreducibles(self)

    @property
    def is_distributive(self) -> bool:
        return self.structure.distributive

    @property
    def is_modular(self) -> bool:
        return self.structure.modular


def lattice_from_poset(p: Poset) -> Lattice:
    if len(p) == 0:
        raise NotALatticeError("the empty poset is not a lattice", ("", ""))
    join = _bound_table(p.leq, p.elements)
    meet = _bound_table(p.leq.T, p.elements)
    logger.debug("built join/meet tables for %d elements", len(p))
    return Lattice(p, join, meet)


class JoinIrreducibles(BaseModel):
    model_config = ConfigDict(frozen=True)

    ji: FrozenSet[str]
    lower_cover: Dict[str, str]


def join_irreducibles(l: Lattice) -> JoinIrreducibles:
    """
    ji(l) with the bottom element included, and the unique lower cover a*
    of every other join-irreducible a.

    a is join-irreducible iff a differs from the join of all elements
    strictly below it.
    """
    lt, cover = l.base.lt, l.base.cover
    ji: List[int] = []
    lower_cover: Dict[str, str] = {}
    for a in range(len(l)):
        if a == l.bottom:
            ji.append(a)
            continue
        if l.join_all(np.flatnonzero(lt[:, a])) == a:
            continue
        ji.append(a)
        covers = np.flatnonzero(cover[:, a])
        if len(covers) != 1:
            raise NonUniqueCoverError(
                f"{l.elements[a]} has {len(covers)} lower covers"
            )
        lower_cover[l.elements[a]] = l.elements[covers[0]]

    ji_mask = np.zeros(len(l), dtype=bool)
    ji_mask[ji] = True
    for x in range(len(l)):
        if l.join_all(np.flatnonzero(l.leq[:, x] & ji_mask)) != x:
            raise InvariantViolationError(
                f"{l.elements[x]} is not the join of the join-irreducibles below it"
            )

    return JoinIrreducibles(
        ji=frozenset(l.elements[a] for a in ji), lower_cover=lower_cover
    )


def ji_indices(l: Lattice) -> np.ndarray:
    return np.sort(l.base.indices(l.irreducibles.ji))


class StructureReport(BaseModel):
    model_config = ConfigDict(frozen=True)

    distributive: bool
    modular: bool
    cancellation: bool
    join_distributive: bool


def structure_check(l: Lattice) -> StructureReport:
    """Exhaustive triple checks, one vectorised n x n slab per first element."""
    J, M = l.join, l.meet
    n = len(l)
    distributive = join_distributive = modular = cancellation = True
    off_diagonal = ~np.eye(n, dtype=bool)

    for a in range(n):
        ja, ma = J[a], M[a]
        # a ^ (b v c) == (a ^ b) v (a ^ c)
        if distributive and not np.array_equal(ma[J], J[ma[:, None], ma[None, :]]):
            distributive = False
        # a v (b ^ c) == (a v b) ^ (a v c)
        joined_meet = M[ja[:, None], ja[None, :]]
        if join_distributive and not np.array_equal(ja[M], joined_meet):
            join_distributive = False
        # (a v z) ^ (a v b) == a v (z ^ (a v b)) and its dual
        if modular and not (
            np.array_equal(joined_meet, ja[M[:, ja]])
            and np.array_equal(J[ma[:, None], ma[None, :]], ma[J[:, ma]])
        ):
            modular = False
        # c = a: c v x == c v y and c ^ x == c ^ y with x != y
        if cancellation:
            same = (ja[:, None] == ja[None, :]) & (ma[:, None] == ma[None, :])
            if (same & off_diagonal).any():
                cancellation = False

    if distributive != cancellation or distributive != join_distributive:
        raise InvariantViolationError(
            f"distributive={distributive}, join distributive={join_distributive}, "
            f"cancellation={cancellation} must agree"
        )
    return StructureReport(
        distributive=distributive,
        modular=modular,
        cancellation=cancellation,
        join_distributive=join_distributive,
    )


def modular_by_galois(l: Lattice) -> bool:
    """Check that x -> a v x on [a ^ b, b] and y -> y ^ b on [a, a v b]
    are mutually inverse for every pair a, b."""
    J, M, leq = l.join, l.meet, l.leq
    idx = np.arange(len(l))
    for a in range(len(l)):
        # rows b, columns x
        lower = leq[M[a][:, None], idx[None, :]] & leq.T
        back = M[J[a][None, :], idx[:, None]]
        if not (back == idx[None, :])[lower].all():
            return False
        upper = leq[a][None, :] & leq[idx[None, :], J[a][:, None]]
        forth = J[a][M]
        if not (forth == idx[None, :])[upper].all():
            return False
    return True


def _down_sets(l: Lattice) -> Iterable[int]:
    """Every down-set as a bit mask, each exactly once."""
    order = [int(i) for i in l.base.toposort]
    below = [
        sum(1 << int(j) for j in np.flatnonzero(l.base.lt[:, i])) for i in range(len(l))
    ]

    def extend(pos: int, current: int):
        if pos == len(order):
            yield current
            return
        i = order[pos]
        yield from extend(pos + 1, current)
        if below[i] & ~current == 0:
            yield from extend(pos + 1, current | (1 << i))

    yield from extend(0, 0)


def is_prime_ideal(l: Lattice, subset: Iterable[str]) -> bool:
    mask = np.zeros(len(l), dtype=bool)
    mask[l.base.indices(subset)] = True
    return _is_prime_mask(l, mask)


def _is_prime_mask(l: Lattice, mask: np.ndarray) -> bool:
    if not mask.any() or mask.all():
        return False
    inside = np.flatnonzero(mask)
    # sublattice and downward absorbing
    if not mask[l.join[np.ix_(inside, inside)]].all():
        return False
    if not mask[l.meet[inside]].all():
        return False
    # a ^ b in I implies a in I or b in I
    meet_inside = mask[l.meet]
    return not (meet_inside & ~mask[:, None] & ~mask[None, :]).any()


def is_prime_filter(l: Lattice, subset: Iterable[str]) -> bool:
    complement = set(l.elements) - set(subset)
    return is_prime_ideal(l, complement)


def prime_ideals(l: Lattice, max_elements: Optional[int] = None) -> List[FrozenSet[str]]:
    """All prime ideals, found among the down-sets of l."""
    cap = max_elements or get_config().limits.prime_ideal_max_elements
    if len(l) > cap:
        raise TooLargeError(
            f"prime ideal enumeration is limited to {cap} elements, lattice has {len(l)}"
        )

    found = []
    for bits in _down_sets(l):
        mask = np.array([(bits >> i) & 1 for i in range(len(l))], dtype=bool)
        if _is_prime_mask(l, mask):
            generator = l.join_all(np.flatnonzero(mask))
            found.append((generator, l.base.ids(mask)))
    found.sort(key=lambda item: item[0])
    return [ideal for _, ideal in found]


def prime_filters(l: Lattice, max_elements: Optional[int] = None) -> List[FrozenSet[str]]:
    everything = frozenset(l.elements)
    return [everything - ideal for ideal in prime_ideals(l, max_elements)]


def separating_prime_ideal(l: Lattice, a: str, b: str) -> FrozenSet[str]:
    """A prime ideal containing exactly one of a and b.

    With b not below a, a join-irreducible j <= b with j not below a exists,
    and {x | j not <= x} separates them (symmetrically otherwise).
    """
    if a == b:
        raise InvalidArgumentError("separation needs two distinct elements")
    if not l.is_distributive:
        raise NotDistributiveError("prime ideal separation needs a distributive lattice")

    i, k = l.index_of(a), l.index_of(b)
    low, high = (i, k) if not l.leq[k, i] else (k, i)
    ji = ji_indices(l)
    for j in l.base.toposort:
        if j in ji and l.leq[j, high] and not l.leq[j, low]:
            return l.base.ids(~l.leq[j, :])
    raise InvariantViolationError(f"no join-irreducible separates {a} and {b}")
