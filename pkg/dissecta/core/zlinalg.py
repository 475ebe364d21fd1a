"""
Exact integer linear algebra: Hermite and Smith normal forms with their
unimodular transforms, subgroup membership and quotient invariants.

All algorithms work on lists of Python integers, so entries never
overflow. Pivots are chosen by smallest magnitude.
"""

import logging
from typing import List, Literal, Optional, Sequence, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict

from dissecta.core.errors import (
    DimensionMismatchError,
    InvalidArgumentError,
    InvariantViolationError,
)

logger = logging.getLogger(__name__)

Rows = List[List[int]]


class IntegerMatrix:
    """Immutable matrix of exact integers (numpy array, dtype=object)."""

    def __init__(self, entries, cols: Optional[int] = None) -> None:
        rows = [[int(v) for v in row] for row in entries]
        if rows:
            width = len(rows[0])
            if any(len(row) != width for row in rows):
                raise DimensionMismatchError("rows of an integer matrix differ in length")
            if cols is not None and cols != width:
                raise DimensionMismatchError(f"expected {cols} columns, got {width}")
        else:
            width = cols or 0

        array = np.zeros((len(rows), width), dtype=object)
        for i, row in enumerate(rows):
            array[i, :] = row
        array.setflags(write=False)
        self.entries = array

    @classmethod
    def identity(cls, n: int) -> "IntegerMatrix":
        return cls([[int(i == j) for j in range(n)] for i in range(n)], cols=n)

    @property
    def rows(self) -> int:
        return self.entries.shape[0]

    @property
    def cols(self) -> int:
        return self.entries.shape[1]

    @property
    def shape(self) -> Tuple[int, int]:
        return self.entries.shape

    def tolist(self) -> Rows:
        return [[int(v) for v in row] for row in self.entries]

    def __matmul__(self, other: "IntegerMatrix") -> "IntegerMatrix":
        if self.cols != other.rows:
            raise DimensionMismatchError(f"cannot multiply {self.shape} by {other.shape}")
        return IntegerMatrix(np.dot(self.entries, other.entries), cols=other.cols)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, IntegerMatrix):
            return NotImplemented
        return self.shape == other.shape and bool((self.entries == other.entries).all())

    def __repr__(self) -> str:
        return f"IntegerMatrix({self.tolist()})"


def _identity(n: int) -> Rows:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def _sub_row(rows: Rows, i: int, k: int, q: int) -> None:
    """rows[i] -= q * rows[k]"""
    if q:
        rows[i] = [a - q * b for a, b in zip(rows[i], rows[k])]


def _sub_col(rows: Rows, j: int, k: int, q: int) -> None:
    """column j -= q * column k"""
    if q:
        for row in rows:
            row[j] -= q * row[k]


def _swap_cols(rows: Rows, j: int, k: int) -> None:
    for row in rows:
        row[j], row[k] = row[k], row[j]


def _matmul(a: Rows, b: Rows, inner: int, cols: int) -> Rows:
    return [
        [sum(row[k] * b[k][j] for k in range(inner)) for j in range(cols)]
        for row in a
    ]


def hermite_rows(a: Rows, cols: int, transform: bool = True) -> Tuple[Rows, Optional[Rows], List[int]]:
    """
    Row Hermite form H = U a.

    Nonzero rows come first, each pivot is positive, pivot columns strictly
    increase and entries above a pivot lie in [0, pivot). Returns
    (H, U or None, pivot columns).
    """
    h = [list(row) for row in a]
    m = len(h)
    u = _identity(m) if transform else None
    pivots: List[int] = []
    r = 0

    for col in range(cols):
        if r == m:
            break
        while True:
            nonzero = [i for i in range(r, m) if h[i][col]]
            if not nonzero:
                break
            p = min(nonzero, key=lambda i: abs(h[i][col]))
            h[r], h[p] = h[p], h[r]
            if u is not None:
                u[r], u[p] = u[p], u[r]
            for i in range(r + 1, m):
                if not h[i][col]:
                    continue
                q = h[i][col] // h[r][col]
                _sub_row(h, i, r, q)
                if u is not None:
                    _sub_row(u, i, r, q)
            if not any(h[i][col] for i in range(r + 1, m)):
                break
        if not h[r][col]:
            continue
        if h[r][col] < 0:
            h[r] = [-v for v in h[r]]
            if u is not None:
                u[r] = [-v for v in u[r]]
        for i in range(r):
            q = h[i][col] // h[r][col]
            _sub_row(h, i, r, q)
            if u is not None:
                _sub_row(u, i, r, q)
        pivots.append(col)
        r += 1

    return h, u, pivots


def smith_rows(a: Rows, cols: int) -> Tuple[Rows, Rows, Rows]:
    """Smith form D = U a V with d1 | d2 | ... and nonnegative diagonal."""
    d = [list(row) for row in a]
    m, n = len(d), cols
    u, v = _identity(m), _identity(n)

    for t in range(min(m, n)):
        entries = [(abs(d[i][j]), i, j) for i in range(t, m) for j in range(t, n) if d[i][j]]
        if not entries:
            break
        _, i, j = min(entries)
        d[t], d[i] = d[i], d[t]
        u[t], u[i] = u[i], u[t]
        _swap_cols(d, t, j)
        _swap_cols(v, t, j)

        while True:
            pivot = d[t][t]
            for i in range(t + 1, m):
                q = d[i][t] // pivot
                _sub_row(d, i, t, q)
                _sub_row(u, i, t, q)
            for j in range(t + 1, n):
                q = d[t][j] // pivot
                _sub_col(d, j, t, q)
                _sub_col(v, j, t, q)

            remainders = [(abs(d[i][t]), 0, i) for i in range(t + 1, m) if d[i][t]]
            remainders += [(abs(d[t][j]), 1, j) for j in range(t + 1, n) if d[t][j]]
            if remainders:
                _, is_col, k = min(remainders)
                if is_col:
                    _swap_cols(d, t, k)
                    _swap_cols(v, t, k)
                else:
                    d[t], d[k] = d[k], d[t]
                    u[t], u[k] = u[k], u[t]
                continue

            bad = next(
                (i for i in range(t + 1, m) for j in range(t + 1, n) if d[i][j] % pivot),
                None,
            )
            if bad is None:
                break
            d[t] = [x + y for x, y in zip(d[t], d[bad])]
            u[t] = [x + y for x, y in zip(u[t], u[bad])]

        if d[t][t] < 0:
            d[t] = [-x for x in d[t]]
            u[t] = [-x for x in u[t]]

    return d, u, v


class NormalForm(BaseModel):
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    kind: Literal["hermite", "smith"]
    D: IntegerMatrix
    U: IntegerMatrix
    V: Optional[IntegerMatrix] = None
    pivots: Tuple[int, ...] = ()

    @property
    def rank(self) -> int:
        if self.kind == "hermite":
            return len(self.pivots)
        return sum(1 for i in range(min(self.D.shape)) if self.D.entries[i, i])

    @property
    def diagonal(self) -> Tuple[int, ...]:
        return tuple(int(self.D.entries[i, i]) for i in range(min(self.D.shape)))


def normal_form(a: IntegerMatrix, kind: Literal["hermite", "smith"] = "smith") -> NormalForm:
    rows = a.tolist()
    match kind:
        case "hermite":
            h, u, pivots = hermite_rows(rows, a.cols)
            if _matmul(u, rows, a.rows, a.cols) != h:
                raise InvariantViolationError("U A != H after Hermite reduction")
            return NormalForm(
                kind="hermite",
                D=IntegerMatrix(h, cols=a.cols),
                U=IntegerMatrix(u, cols=a.rows),
                pivots=tuple(pivots),
            )
        case "smith":
            d, u, v = smith_rows(rows, a.cols)
            ua = _matmul(u, rows, a.rows, a.cols)
            if _matmul(ua, v, a.cols, a.cols) != d:
                raise InvariantViolationError("U A V != D after Smith reduction")
            return NormalForm(
                kind="smith",
                D=IntegerMatrix(d, cols=a.cols),
                U=IntegerMatrix(u, cols=a.rows),
                V=IntegerMatrix(v, cols=a.cols),
            )
        case _:
            raise InvalidArgumentError(f"unknown normal form {kind!r}")


class Membership(BaseModel):
    model_config = ConfigDict(frozen=True)

    member: bool
    coefficients: Optional[Tuple[int, ...]] = None


class EchelonBasis:
    """
    Hermite basis of the row span of a generator matrix, reusable for many
    membership queries. With `transform=True` it also keeps U so members can
    be written in terms of the original generators.
    """

    def __init__(self, generators: IntegerMatrix, transform: bool = True) -> None:
        self.generators = generators
        self.cols = generators.cols
        h, u, pivots = hermite_rows(generators.tolist(), generators.cols, transform)
        self.rank = len(pivots)
        self.basis = h[: self.rank]
        self.pivots = pivots
        self.transform = u[: self.rank] if u is not None else None

    def solve(self, v: Sequence[int]) -> Optional[List[int]]:
        """Integer x with x . basis = v, or None."""
        if len(v) != self.cols:
            raise DimensionMismatchError(f"vector has length {len(v)}, expected {self.cols}")
        residual = [int(x) for x in v]
        x = []
        for row, col in zip(self.basis, self.pivots):
            q, rem = divmod(residual[col], row[col])
            if rem:
                return None
            x.append(q)
            if q:
                residual = [a - q * b for a, b in zip(residual, row)]
        return x if not any(residual) else None

    def contains(self, v: Sequence[int]) -> bool:
        return self.solve(v) is not None

    def membership(self, v: Sequence[int]) -> Membership:
        x = self.solve(v)
        if x is None:
            return Membership(member=False)
        if self.transform is None:
            return Membership(member=True)

        m = self.generators.rows
        coefficients = [sum(x[k] * self.transform[k][i] for k in range(self.rank)) for i in range(m)]
        generators = self.generators.tolist()
        rebuilt = [sum(c * row[j] for c, row in zip(coefficients, generators)) for j in range(self.cols)]
        if rebuilt != [int(t) for t in v]:
            raise InvariantViolationError("membership coefficients do not reproduce the vector")
        return Membership(member=True, coefficients=tuple(coefficients))


def subgroup_membership(generators: IntegerMatrix, v: Sequence[int]) -> Membership:
    return EchelonBasis(generators).membership(v)


class QuotientInvariants(BaseModel):
    model_config = ConfigDict(frozen=True)

    free_rank: int
    torsion: Tuple[int, ...]


def quotient_invariants(
    generators: IntegerMatrix,
    ambient_rank: int,
    basis: Optional[EchelonBasis] = None,
) -> QuotientInvariants:
    """Invariants of Z^n / G, read off the Smith form of a Hermite basis of G."""
    if generators.cols != ambient_rank:
        raise DimensionMismatchError(
            f"generators have {generators.cols} columns, ambient rank is {ambient_rank}"
        )
    basis = basis or EchelonBasis(generators, transform=False)
    d, _, _ = smith_rows(basis.basis, ambient_rank)
    factors = [d[i][i] for i in range(min(len(d), ambient_rank)) if d[i][i]]
    logger.debug("invariant factors %s", factors)
    return QuotientInvariants(
        free_rank=ambient_rank - len(factors),
        torsion=tuple(f for f in factors if f > 1),
    )
