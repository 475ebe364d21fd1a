"""The incidence algebra of a finite poset over the integers."""

import logging
from functools import lru_cache
from typing import Callable, Dict, Iterator, Literal, Mapping, Sequence, Tuple, Union

import numpy as np

from dissecta.core.errors import (
    DimensionMismatchError,
    HostMismatchError,
    InvalidArgumentError,
    MissingValueError,
)
from dissecta.core.helper_functions import INT64_SAFE, as_exact, exact_matmul, max_abs
from dissecta.core.poset import Poset

logger = logging.getLogger(__name__)

Direction = Literal["down", "up"]
Value = Union[int, Tuple[int, ...]]


class IncidenceFunction:
    """
    Integer function on the comparable pairs of a poset.

    Stored as a dense n x n matrix over the host's element order, with
    zeros off the relation. The matrix is int64 when the entries allow it
    and Python integers (dtype=object) otherwise.
    """

    def __init__(self, host: Poset, values: np.ndarray) -> None:
        values = np.asarray(values)
        if values.shape != host.leq.shape:
            raise DimensionMismatchError(
                f"values have shape {values.shape}, host has {len(host)} elements"
            )
        if values.dtype != object:
            values = values.astype(np.int64)
        values = np.where(host.leq, values, 0)
        if values.dtype == object:
            values = as_exact(values)
        values.setflags(write=False)
        self.host = host
        self.values = values

    @classmethod
    def from_function(
        cls, host: Poset, func: Callable[[str, str], int]
    ) -> "IncidenceFunction":
        values = np.zeros(host.leq.shape, dtype=object)
        for i, j in np.argwhere(host.leq):
            values[i, j] = int(func(host.elements[i], host.elements[j]))
        return cls(host, values)

    def __call__(self, a: str, b: str) -> int:
        return int(self.values[self.host.index_of(a), self.host.index_of(b)])

    def items(self) -> Iterator[Tuple[str, str, int]]:
        """(a, b, value) for every comparable pair a <= b."""
        for i, j in np.argwhere(self.host.leq):
            yield self.host.elements[i], self.host.elements[j], int(self.values[i, j])

    def _check_host(self, other: "IncidenceFunction") -> None:
        if not (self.host is other.host or self.host == other.host):
            raise HostMismatchError("incidence functions live on different posets")

    def __add__(self, other: "IncidenceFunction") -> "IncidenceFunction":
        self._check_host(other)
        return IncidenceFunction(
            self.host, as_exact(self.values) + as_exact(other.values)
        )

    def __sub__(self, other: "IncidenceFunction") -> "IncidenceFunction":
        self._check_host(other)
        return IncidenceFunction(
            self.host, as_exact(self.values) - as_exact(other.values)
        )

    def __neg__(self) -> "IncidenceFunction":
        return IncidenceFunction(self.host, -as_exact(self.values))

    def __mul__(self, other: "IncidenceFunction") -> "IncidenceFunction":
        return convolve(self, other)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, IncidenceFunction):
            return NotImplemented
        return (self.host is other.host or self.host == other.host) and bool(
            (as_exact(self.values) == as_exact(other.values)).all()
        )

    def __hash__(self) -> int:
        return hash((self.host, tuple(int(v) for v in self.values.flat)))


def delta(p: Poset) -> IncidenceFunction:
    return IncidenceFunction(p, np.eye(len(p), dtype=np.int64))


def zeta(p: Poset) -> IncidenceFunction:
    return IncidenceFunction(p, p.leq.astype(np.int64))


def convolve(f: IncidenceFunction, g: IncidenceFunction) -> IncidenceFunction:
    """h(a, b) = sum over c in [a, b] of f(a, c) g(c, b)."""
    f._check_host(g)
    return IncidenceFunction(f.host, exact_matmul(f.values, g.values))


class _Widen(Exception):
    pass


def _fill_mobius(p: Poset, dtype, dual: bool) -> np.ndarray:
    n = len(p)
    mu = np.zeros((n, n), dtype=dtype)
    lt = p.lt
    largest = 1

    if not dual:
        # column b from the columns of the elements strictly below b
        for b in p.toposort:
            below = np.flatnonzero(lt[:, b])
            if dtype is not object and len(below) * largest >= INT64_SAFE:
                raise _Widen
            mu[:, b] = -mu[:, below].sum(axis=1)
            mu[b, b] = 1
            if dtype is not object:
                largest = max(largest, max_abs(mu[:, b]))
    else:
        # row a from the rows of the elements strictly above a
        for a in p.toposort[::-1]:
            above = np.flatnonzero(lt[a, :])
            if dtype is not object and len(above) * largest >= INT64_SAFE:
                raise _Widen
            mu[a, :] = -mu[above, :].sum(axis=0)
            mu[a, a] = 1
            if dtype is not object:
                largest = max(largest, max_abs(mu[a, :]))
    return mu


@lru_cache(maxsize=128)
def _mobius_cached(p: Poset, dual: bool) -> IncidenceFunction:
    try:
        values = _fill_mobius(p, np.int64, dual)
    except _Widen:
        logger.info("Möbius values of a %d-element poset exceed int64", len(p))
        values = _fill_mobius(p, object, dual)
    return IncidenceFunction(p, values)


def mobius(p: Poset, dual: bool = False) -> IncidenceFunction:
    """
    The Möbius function of p.

    By default mu(a, b) = -sum_{a <= c < b} mu(a, c), evaluated along a
    linear extension so each value is computed once. `dual=True` uses
    mu(a, b) = -sum_{a < c <= b} mu(c, b) instead; both give the same
    function. Results are cached per poset.
    """
    return _mobius_cached(p, dual)


def _value_matrix(p: Poset, values: Mapping[str, Value]) -> Tuple[np.ndarray, bool]:
    missing = [e for e in p.elements if e not in values]
    if missing:
        raise MissingValueError(f"no value given for {', '.join(missing[:5])}")

    rows = [values[e] for e in p.elements]
    scalar = all(isinstance(v, (int, np.integer)) for v in rows)
    if scalar:
        matrix = np.array([[int(v)] for v in rows], dtype=object).reshape(len(rows), 1)
        return matrix, True

    widths = {len(v) for v in rows if not isinstance(v, (int, np.integer))}
    if len(widths) != 1 or any(isinstance(v, (int, np.integer)) for v in rows):
        raise DimensionMismatchError("values must all be integers or vectors of one length")
    (width,) = widths
    matrix = np.zeros((len(rows), width), dtype=object)
    for i, v in enumerate(rows):
        matrix[i, :] = [int(x) for x in v]
    return matrix, False


def _unpack(p: Poset, matrix: np.ndarray, scalar: bool) -> Dict[str, Value]:
    if scalar:
        return {e: int(matrix[i, 0]) for i, e in enumerate(p.elements)}
    return {e: tuple(int(x) for x in matrix[i]) for i, e in enumerate(p.elements)}


def _transform(p: Poset, kernel: np.ndarray, values, direction: Direction):
    matrix, scalar = _value_matrix(p, values)
    match direction:
        case "down":
            out = exact_matmul(kernel.T, matrix)
        case "up":
            out = exact_matmul(kernel, matrix)
        case _:
            raise InvalidArgumentError(f"direction must be 'down' or 'up', not {direction!r}")
    return _unpack(p, out, scalar)


def zeta_transform(
    p: Poset, f: Mapping[str, Value], direction: Direction = "down"
) -> Dict[str, Value]:
    """g(x) = sum_{c <= x} f(c) (down) or sum_{x <= c} f(c) (up)."""
    return _transform(p, zeta(p).values, f, direction)


def mobius_invert(
    p: Poset, g: Mapping[str, Value], direction: Direction = "down"
) -> Dict[str, Value]:
    """
    Inverse of `zeta_transform`.

    down: f(x) = sum_{c <= x} g(c) mu(c, x)
    up:   f(x) = sum_{x <= c} mu(x, c) g(c)
    """
    return _transform(p, mobius(p).values, g, direction)


def comparable_pairs(p: Poset) -> Sequence[Tuple[str, str]]:
    return [(p.elements[i], p.elements[j]) for i, j in np.argwhere(p.leq)]
