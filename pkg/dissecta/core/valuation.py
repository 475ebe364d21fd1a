"""
The valuation module Z L / N(L) of a finite lattice.

N(L) is generated by a ^ b + a v b - a - b over the incomparable pairs.
For distributive lattices Z L / N(L) is free on the join-irreducibles and
u_M(a) lies in N(L) for every a in M outside ji(L), provided ji(L) is a
subset of M. The functions here compute and check those statements.
"""

import logging
from functools import cached_property, lru_cache
from itertools import combinations
from typing import Callable, Dict, Iterable, List, Mapping, Optional, Sequence, Tuple, Union

import numpy as np
from pydantic import BaseModel, ConfigDict

from dissecta.core.config import get_config
from dissecta.core.errors import (
    DimensionMismatchError,
    HostMismatchError,
    InvalidArgumentError,
    InvariantViolationError,
    JiNotContainedError,
    MissingValueError,
    NotAValuationError,
    NotDistributiveError,
)
from dissecta.core.helper_functions import exact_matmul, parallel_map
from dissecta.core.incidence import mobius
from dissecta.core.lattice import Lattice, ji_indices
from dissecta.core.mobius_algebra import GroupVector, restrict_j, u_vector
from dissecta.core.zlinalg import (
    EchelonBasis,
    IntegerMatrix,
    NormalForm,
    QuotientInvariants,
    normal_form,
    quotient_invariants,
)

logger = logging.getLogger(__name__)

Value = Union[int, Sequence[int]]


class NLPresentation:
    """Generators of N(L), one row per incomparable pair, with cached
    echelon forms for membership tests."""

    def __init__(self, host: Lattice, generators: IntegerMatrix, pairs: List[Tuple[str, str]]) -> None:
        self.host = host
        self.generators = generators
        self.pairs = pairs
        if any(sum(row) for row in generators.tolist()):
            raise InvariantViolationError("an N(L) generator does not sum to zero")

    @cached_property
    def basis(self) -> EchelonBasis:
        return EchelonBasis(self.generators, transform=False)

    @cached_property
    def hnf(self) -> NormalForm:
        return normal_form(self.generators, "hermite")

    @property
    def rank(self) -> int:
        return self.basis.rank

    def generator_vectors(self) -> List[GroupVector]:
        return [GroupVector(self.host.base, row) for row in self.generators.tolist()]


@lru_cache(maxsize=64)
def n_presentation(l: Lattice) -> NLPresentation:
    n = len(l)
    rows, pairs = [], []
    for a, b in combinations(range(n), 2):
        if l.leq[a, b] or l.leq[b, a]:
            continue
        row = [0] * n
        row[l.meet[a, b]] += 1
        row[l.join[a, b]] += 1
        row[a] -= 1
        row[b] -= 1
        rows.append(row)
        pairs.append((l.elements[a], l.elements[b]))
    logger.debug("N(L) presentation with %d generators on %d elements", len(rows), n)
    return NLPresentation(l, IntegerMatrix(rows, cols=n), pairs)


class ValInvariants(BaseModel):
    model_config = ConfigDict(frozen=True)

    free_rank: int
    torsion: Tuple[int, ...]
    ji_count: int
    distributive: bool
    match: bool


def val_invariants(l: Lattice) -> ValInvariants:
    presentation = n_presentation(l)
    invariants: QuotientInvariants = quotient_invariants(
        presentation.generators, len(l), basis=presentation.basis
    )
    ji_count = len(l.irreducibles.ji)
    distributive = l.is_distributive
    match = not distributive or (
        invariants.free_rank == ji_count and not invariants.torsion
    )
    return ValInvariants(
        free_rank=invariants.free_rank,
        torsion=invariants.torsion,
        ji_count=ji_count,
        distributive=distributive,
        match=match,
    )


def in_NL(p: NLPresentation, v: GroupVector) -> bool:
    if not (v.host is p.host.base or v.host == p.host.base):
        raise HostMismatchError("vector does not live on the presentation's lattice")
    return p.basis.contains([int(c) for c in v.coeffs])


def _require_distributive(l: Lattice) -> None:
    if not l.is_distributive:
        raise NotDistributiveError("the lattice is not distributive")


def _checked_subset(l: Lattice, subset: Iterable[str]) -> List[str]:
    chosen = set(subset)
    l.base.indices(chosen)
    missing = l.irreducibles.ji - chosen
    if missing:
        raise JiNotContainedError(
            f"join-irreducibles missing from the subset: {', '.join(sorted(missing))}"
        )
    return [e for e in l.elements if e in chosen]


def zaslavsky_check(
    l: Lattice, subset: Iterable[str], workers: Optional[int] = None
) -> Dict[str, bool]:
    """For every a in M outside ji(l), whether u_M(a) lies in N(L)."""
    _require_distributive(l)
    members = _checked_subset(l, subset)
    sub = l.base.subposet(members)
    presentation = n_presentation(l)
    # warm the cached basis before the workers start
    presentation.basis
    targets = [a for a in members if a not in l.irreducibles.ji]

    def check(a: str) -> bool:
        return in_NL(presentation, u_vector(sub, a).embed(l.base))

    results = parallel_map(check, targets, workers or get_config().compute.workers)
    report = dict(zip(targets, results))
    failed = [a for a, ok in report.items() if not ok]
    if failed:
        logger.warning("u_M(a) outside N(L) for %s", ", ".join(failed))
    return report


class ValuationTable:
    """Candidate valuation f: L -> Z^d, stored as an n x d integer matrix."""

    def __init__(self, host: Lattice, values: Mapping[str, Value]) -> None:
        missing = [e for e in host.elements if e not in values]
        if missing:
            raise MissingValueError(f"no value for {', '.join(missing[:5])}")
        for e in values:
            host.index_of(e)

        rows = []
        for e in host.elements:
            v = values[e]
            rows.append([int(v)] if isinstance(v, (int, np.integer)) else [int(x) for x in v])
        widths = {len(r) for r in rows}
        if len(widths) > 1:
            raise DimensionMismatchError("valuation values differ in dimension")
        self.host = host
        self.dimension = widths.pop() if widths else 1
        self.matrix = np.zeros((len(rows), self.dimension), dtype=object)
        for i, r in enumerate(rows):
            self.matrix[i, :] = r
        self.matrix.setflags(write=False)

    @classmethod
    def from_function(cls, host: Lattice, func: Callable[[str], Value]) -> "ValuationTable":
        return cls(host, {e: func(e) for e in host.elements})

    @classmethod
    def constant(cls, host: Lattice, value: int = 1) -> "ValuationTable":
        return cls.from_function(host, lambda _: value)

    @classmethod
    def indicator(cls, host: Lattice, subset: Iterable[str]) -> "ValuationTable":
        chosen = set(subset)
        return cls.from_function(host, lambda e: int(e in chosen))

    def value(self, element: str) -> Tuple[int, ...]:
        return tuple(int(x) for x in self.matrix[self.host.index_of(element)])

    def __add__(self, other: "ValuationTable") -> "ValuationTable":
        if other.host is not self.host:
            raise HostMismatchError("valuations on different lattices")
        summed = self.matrix + other.matrix
        return ValuationTable(self.host, {e: summed[i] for i, e in enumerate(self.host.elements)})

    def __rmul__(self, scalar: int) -> "ValuationTable":
        scaled = self.matrix * int(scalar)
        return ValuationTable(self.host, {e: scaled[i] for i, e in enumerate(self.host.elements)})

    def first_violation(self) -> Optional[Tuple[str, str]]:
        """A pair with f(a ^ b) + f(a v b) != f(a) + f(b), if any."""
        f = self.matrix
        l = self.host
        defect = f[l.meet] + f[l.join] - f[:, None, :] - f[None, :, :]
        bad = np.argwhere((defect != 0).astype(bool).any(axis=2))
        if len(bad) == 0:
            return None
        a, b = bad[0]
        return l.elements[a], l.elements[b]

    def is_valuation(self) -> bool:
        return self.first_violation() is None


def is_valuation(l: Lattice, f: ValuationTable) -> bool:
    if f.host is not l:
        raise HostMismatchError("valuation table belongs to another lattice")
    return f.is_valuation()


def valuation_defect(
    l: Lattice, subset: Iterable[str], f: ValuationTable, a: str
) -> Tuple[int, ...]:
    """sum over b in [0, a] n M of mu_M(b, a) f(b)."""
    _require_distributive(l)
    members = _checked_subset(l, subset)
    if a not in members:
        raise InvalidArgumentError(f"{a} is not in the subset")
    violation = f.first_violation()
    if violation is not None:
        raise NotAValuationError(
            f"f({violation[0]} ^ {violation[1]}) + f({violation[0]} v {violation[1]}) "
            f"!= f({violation[0]}) + f({violation[1]})",
            violation,
        )

    sub = l.base.subposet(members)
    weights = mobius(sub).values[:, sub.index_of(a)]
    rows = f.matrix[l.base.indices(sub.elements)]
    total = exact_matmul(np.asarray(weights)[None, :], rows)[0]
    return tuple(int(x) for x in total)


def meet_product(l: Lattice, x: GroupVector, y: GroupVector) -> GroupVector:
    """Bilinear extension of the meet to Z L."""
    return _bilinear(l, l.meet, x, y)


def join_product(l: Lattice, x: GroupVector, y: GroupVector) -> GroupVector:
    """Bilinear extension of the join to Z L."""
    return _bilinear(l, l.join, x, y)


def _bilinear(l: Lattice, table: np.ndarray, x: GroupVector, y: GroupVector) -> GroupVector:
    for v in (x, y):
        if not (v.host is l.base or v.host == l.base):
            raise HostMismatchError("vector does not live on the lattice")
    out = np.zeros(len(l), dtype=object)
    for i in np.flatnonzero(x.coeffs):
        for j in np.flatnonzero(y.coeffs):
            out[table[i, j]] += x.coeffs[i] * y.coeffs[j]
    return GroupVector(l.base, out)


def e_basis(l: Lattice) -> Dict[str, GroupVector]:
    """e_0 is the bottom element itself, e_a = a - a* for the other join-irreducibles."""
    bottom = l.elements[l.bottom]
    vectors = {bottom: GroupVector.unit(l.base, bottom)}
    for a, lower in l.irreducibles.lower_cover.items():
        vectors[a] = GroupVector.unit(l.base, a) - GroupVector.unit(l.base, lower)
    return vectors


def inclusion_exclusion_residual(l: Lattice, elements: Sequence[str]) -> GroupVector:
    """v a_i minus the alternating sum of the meets of nonempty subfamilies."""
    idx = [l.index_of(e) for e in elements]
    residual = GroupVector.unit(l.base, l.elements[l.join_all(idx)])
    for k in range(1, len(idx) + 1):
        sign = (-1) ** (k - 1)
        for family in combinations(idx, k):
            meet = l.elements[l.meet_all(family)]
            residual = residual - sign * GroupVector.unit(l.base, meet)
    return residual


def tau(l: Lattice, a: str) -> GroupVector:
    """tau(a) = 1 + 0 - a."""
    unit = GroupVector.unit
    return unit(l.base, l.elements[l.top]) + unit(l.base, l.elements[l.bottom]) - unit(l.base, a)


def val_coords(l: Lattice, x: str, verify: bool = True) -> Dict[str, int]:
    """
    Coefficients of x on ji(l) modulo N(L):
    coeff(b) = sum over a in ji, b <= a <= x of mu_ji(b, a).
    Only nonzero coefficients are returned.
    """
    _require_distributive(l)
    i = l.index_of(x)
    ji = ji_indices(l)
    ji_poset = l.base.subposet(l.elements[j] for j in ji)
    below = np.array([bool(l.leq[j, i]) for j in ji], dtype=np.int64)
    coeffs = exact_matmul(mobius(ji_poset).values, below)
    result = {ji_poset.elements[k]: int(c) for k, c in enumerate(coeffs) if c}

    if verify:
        difference = GroupVector.unit(l.base, x) - GroupVector.from_mapping(l.base, result)
        if not in_NL(n_presentation(l), difference):
            raise InvariantViolationError(f"{x} minus its ji expansion is not in N(L)")
    return result


def valuation_from_ji(l: Lattice, values: Mapping[str, Value]) -> ValuationTable:
    """Extend arbitrary values on ji(l) to the valuation they determine."""
    _require_distributive(l)
    ji = l.irreducibles.ji
    missing = ji - set(values)
    if missing:
        raise MissingValueError(f"no value for join-irreducibles {', '.join(sorted(missing))}")

    def as_vector(v: Value) -> np.ndarray:
        flat = [int(v)] if isinstance(v, (int, np.integer)) else [int(t) for t in v]
        out = np.zeros(len(flat), dtype=object)
        out[:] = flat
        return out

    table = {}
    for x in l.elements:
        total = None
        for b, c in val_coords(l, x, verify=False).items():
            term = c * as_vector(values[b])
            total = term if total is None else total + term
        table[x] = [int(t) for t in total]
    return ValuationTable(l, table)


def injectivity_witness(l: Lattice) -> Optional[Tuple[str, str]]:
    """A pair a != b whose difference lies in N(L), or None."""
    presentation = n_presentation(l)
    for a, b in combinations(l.elements, 2):
        difference = GroupVector.unit(l.base, a) - GroupVector.unit(l.base, b)
        if in_NL(presentation, difference):
            return a, b
    return None


def kernel_check(l: Lattice) -> bool:
    """Every generator of N(L) is sent to zero by j onto ji(l)."""
    ji = l.irreducibles.ji
    return all(
        restrict_j(l.base, ji, g).is_zero()
        for g in n_presentation(l).generator_vectors()
    )
