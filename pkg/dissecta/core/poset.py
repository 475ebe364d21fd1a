"""Finite partially ordered sets on a dense boolean relation matrix."""

import logging
from functools import cached_property
from typing import (
    Dict,
    FrozenSet,
    Iterable,
    Iterator,
    Literal,
    Optional,
    Sequence,
    Tuple,
)

import numpy as np
from pydantic import BaseModel, ConfigDict

from dissecta.core.errors import (
    CycleDetectedError,
    DuplicateElementError,
    InvalidArgumentError,
    InvariantViolationError,
    NotComparableError,
    RelationNotTransitiveError,
    UnknownElementError,
)
from dissecta.core.helper_functions import find_close_key

logger = logging.getLogger(__name__)

PairMode = Literal["covers", "relation"]


def bool_matmul(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Boolean matrix product. float32 counts are exact up to 2**24 terms."""
    if a.shape[1] >= 2**24:
        return (a.astype(np.int64) @ b.astype(np.int64)) > 0
    return (a.astype(np.float32) @ b.astype(np.float32)) > 0.5


class Poset:
    """
    Immutable finite partial order.

    The elements are opaque string ids, indexed 0..n-1 in the given order.
    `leq` is a read only boolean n x n matrix with leq[i, j] iff i <= j.
    Derived matrices (strict order, covers, linear extension) are computed
    lazily and cached.

    Instances are normally created through `build_poset`, which closes or
    verifies the relation. The constructor only checks the axioms.
    """

    def __init__(self, elements: Sequence[str], leq: np.ndarray) -> None:
        self.elements: Tuple[str, ...] = tuple(elements)
        self.index: Dict[str, int] = {e: i for i, e in enumerate(self.elements)}
        if len(self.index) != len(self.elements):
            raise DuplicateElementError("Element ids must be distinct")

        leq = np.array(leq, dtype=bool)
        n = len(self.elements)
        if leq.shape != (n, n):
            raise InvariantViolationError(
                f"Relation matrix has shape {leq.shape}, expected {(n, n)}"
            )
        leq.setflags(write=False)
        self.leq = leq
        self._check_axioms()

    def _check_axioms(self) -> None:
        leq = self.leq
        if not leq.diagonal().all():
            raise InvariantViolationError("Relation is not reflexive")
        both = leq & leq.T
        np.fill_diagonal(both, False)
        if both.any():
            i, j = np.argwhere(both)[0]
            raise CycleDetectedError(
                f"{self.elements[i]} and {self.elements[j]} are below each other"
            )
        missing = bool_matmul(leq, leq) & ~leq
        if missing.any():
            i, j = np.argwhere(missing)[0]
            raise RelationNotTransitiveError(
                f"Relation is not transitive: {self.elements[i]} <= ... <= "
                f"{self.elements[j]} but not {self.elements[i]} <= {self.elements[j]}"
            )

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self) -> Iterator[str]:
        return iter(self.elements)

    def __contains__(self, element: object) -> bool:
        return element in self.index

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Poset):
            return NotImplemented
        return self.elements == other.elements and np.array_equal(
            self.leq, other.leq
        )

    def __hash__(self) -> int:
        return hash((self.elements, self.leq.tobytes()))

    def __repr__(self) -> str:
        return f"Poset({len(self)} elements)"

    def index_of(self, element: str) -> int:
        try:
            return self.index[element]
        except KeyError:
            raise UnknownElementError(
                element, find_close_key(self.index, str(element))
            ) from None

    def indices(self, elements: Iterable[str]) -> np.ndarray:
        return np.array([self.index_of(e) for e in elements], dtype=np.intp)

    def is_leq(self, a: str, b: str) -> bool:
        return bool(self.leq[self.index_of(a), self.index_of(b)])

    def ids(self, mask_or_indices: Iterable) -> FrozenSet[str]:
        arr = np.asarray(mask_or_indices)
        if arr.dtype == bool:
            arr = np.flatnonzero(arr)
        return frozenset(self.elements[i] for i in arr)

    @cached_property
    def lt(self) -> np.ndarray:
        lt = self.leq.copy()
        np.fill_diagonal(lt, False)
        lt.setflags(write=False)
        return lt

    @cached_property
    def cover(self) -> np.ndarray:
        """cover[i, j] iff j covers i."""
        cover = self.lt & ~bool_matmul(self.lt, self.lt)
        cover.setflags(write=False)
        return cover

    @cached_property
    def down_sizes(self) -> np.ndarray:
        return self.leq.sum(axis=0)

    @cached_property
    def toposort(self) -> np.ndarray:
        """A linear extension: indices sorted by the size of their down-set."""
        order = np.argsort(self.down_sizes, kind="stable")
        order.setflags(write=False)
        return order

    def subposet(self, elements: Iterable[str]) -> "Poset":
        """Induced subposet, elements kept in the order of this poset."""
        idx = np.sort(self.indices(set(elements)))
        return Poset([self.elements[i] for i in idx], self.leq[np.ix_(idx, idx)])


def build_poset(
    elements: Sequence[str],
    pairs: Iterable[Tuple[str, str]],
    mode: PairMode = "covers",
) -> Poset:
    """Build a poset from covering pairs (closed transitively) or a full
    relation (verified only). Reflexive pairs are implied in both modes."""
    elements = [str(e) for e in elements]
    index: Dict[str, int] = {}
    for i, e in enumerate(elements):
        if e in index:
            raise DuplicateElementError(f"Element {e!r} is listed twice")
        index[e] = i

    n = len(elements)
    rel = np.eye(n, dtype=bool)
    for a, b in pairs:
        for e in (a, b):
            if str(e) not in index:
                raise UnknownElementError(str(e), find_close_key(index, str(e)))
        rel[index[str(a)], index[str(b)]] = True

    match mode:
        case "covers":
            rel = transitive_closure(rel)
        case "relation":
            pass
        case _:
            raise InvalidArgumentError(f"Unknown pair mode {mode!r}")

    logger.debug("built poset with %d elements from %s", n, mode)
    return Poset(elements, rel)


def transitive_closure(rel: np.ndarray) -> np.ndarray:
    closed = rel.copy()
    while True:
        step = closed | bool_matmul(closed, closed)
        if np.array_equal(step, closed):
            return closed
        closed = step


def interval(p: Poset, a: str, b: str) -> FrozenSet[str]:
    i, j = p.index_of(a), p.index_of(b)
    if not p.leq[i, j]:
        raise NotComparableError(f"{a} is not below {b}")
    return p.ids(p.leq[i, :] & p.leq[:, j])


def principal_ideal(p: Poset, a: str) -> FrozenSet[str]:
    """id(a) = {c | c <= a}."""
    return p.ids(p.leq[:, p.index_of(a)])


def principal_filter(p: Poset, a: str) -> FrozenSet[str]:
    """fil(a) = {c | a <= c}."""
    return p.ids(p.leq[p.index_of(a), :])


def maximal_elements(p: Poset, subset: Optional[Iterable[str]] = None) -> FrozenSet[str]:
    idx = np.arange(len(p)) if subset is None else p.indices(subset)
    if subset is not None and len(idx) == 0:
        raise InvalidArgumentError("maximal elements of an empty subset")
    above = p.lt[np.ix_(idx, idx)].any(axis=1)
    return p.ids(idx[~above])


def minimal_elements(p: Poset, subset: Optional[Iterable[str]] = None) -> FrozenSet[str]:
    idx = np.arange(len(p)) if subset is None else p.indices(subset)
    if subset is not None and len(idx) == 0:
        raise InvalidArgumentError("minimal elements of an empty subset")
    below = p.lt[np.ix_(idx, idx)].any(axis=0)
    return p.ids(idx[~below])


class Extremes(BaseModel):
    model_config = ConfigDict(frozen=True)

    maximal: FrozenSet[str]
    minimal: FrozenSet[str]
    top: Optional[str] = None
    bottom: Optional[str] = None


def top_index(p: Poset) -> Optional[int]:
    hits = np.flatnonzero(p.leq.all(axis=0))
    return int(hits[0]) if len(hits) else None


def bottom_index(p: Poset) -> Optional[int]:
    hits = np.flatnonzero(p.leq.all(axis=1))
    return int(hits[0]) if len(hits) else None


def extremes(p: Poset) -> Extremes:
    top, bottom = top_index(p), bottom_index(p)
    return Extremes(
        maximal=maximal_elements(p),
        minimal=minimal_elements(p),
        top=None if top is None else p.elements[top],
        bottom=None if bottom is None else p.elements[bottom],
    )
