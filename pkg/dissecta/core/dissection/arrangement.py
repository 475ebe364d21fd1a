"""
Arrangement posets and the dissection sums over them.

An arrangement is given by its poset of flats (or any meet-refinement of
it) with a top element T, an Euler characteristic per flat and optional
dimensions. The chamber statistic is the sum of mu(X, T) chi(X); it
equals the sum of the Euler characteristics of the chambers.
"""

import logging
from fractions import Fraction
from typing import Dict, Iterable, Mapping, Optional, Union

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, model_validator

from dissecta.core.config import get_config
from dissecta.core.documents import ArrangementDocument, ProfileDocument
from dissecta.core.errors import (
    DimNotMonotoneError,
    MissingChiError,
    MissingDimError,
    NoUniqueTopError,
    ProfileMismatchError,
    UnknownFlatError,
    ZeroChamberChiError,
)
from dissecta.core.helper_functions import find_close_key, parallel_map
from dissecta.core.incidence import mobius
from dissecta.core.poset import Poset, maximal_elements, principal_ideal

logger = logging.getLogger(__name__)


class ArrangementPoset:
    def __init__(
        self,
        base: Poset,
        top: str,
        chi: Mapping[str, int],
        dim: Optional[Mapping[str, int]] = None,
        hyperplanes: Optional[Iterable[str]] = None,
    ) -> None:
        maxima = maximal_elements(base) if len(base) else frozenset()
        if len(maxima) != 1 or top not in maxima:
            raise NoUniqueTopError(
                f"{top!r} must be the unique maximal flat, maximal flats are "
                f"{', '.join(sorted(maxima)) or 'none'}"
            )

        missing = [e for e in base.elements if chi.get(e) is None]
        if missing:
            raise MissingChiError(f"no Euler characteristic for {', '.join(missing)}")

        if dim is not None:
            absent = [e for e in base.elements if dim.get(e) is None]
            if absent:
                raise MissingDimError(f"no dimension for {', '.join(absent)}")
            dims = np.array([dim[e] for e in base.elements])
            if (dims < 0).any():
                raise DimNotMonotoneError("dimensions must be nonnegative")
            bad = np.argwhere(base.lt & (dims[:, None] > dims[None, :]))
            if len(bad):
                a, b = bad[0]
                raise DimNotMonotoneError(
                    f"{base.elements[a]} is below {base.elements[b]} "
                    f"but has larger dimension"
                )

        self.base = base
        self.top = top
        self.chi: Dict[str, int] = {e: int(chi[e]) for e in base.elements}
        self.dim: Optional[Dict[str, int]] = (
            None if dim is None else {e: int(dim[e]) for e in base.elements}
        )
        self.hyperplanes = None
        if hyperplanes is not None:
            self.hyperplanes = frozenset(self.flat(h) for h in hyperplanes)

    def __len__(self) -> int:
        return len(self.base)

    def __repr__(self) -> str:
        return f"ArrangementPoset(top={self.top!r}, {len(self)} flats)"

    def flat(self, name: str) -> str:
        if name not in self.base:
            raise UnknownFlatError(name, find_close_key(self.base.index, str(name)))
        return name

    def require_dim(self) -> Dict[str, int]:
        if self.dim is None:
            raise MissingDimError("this operation needs a dimension for every flat")
        return self.dim

    @property
    def ambient_dim(self) -> int:
        return self.require_dim()[self.top]

    def rank(self, flat: str) -> int:
        """rk X = dim T - dim X."""
        return self.ambient_dim - self.require_dim()[flat]

    @property
    def arrangement_rank(self) -> int:
        return max(self.rank(e) for e in self.base.elements)


def load_arrangement(doc: Union[ArrangementDocument, Mapping]) -> ArrangementPoset:
    if not isinstance(doc, ArrangementDocument):
        doc = ArrangementDocument.model_validate(doc)
    base = doc.to_poset()
    chi = {e: a.chi for e, a in doc.attrs.items() if a.chi is not None}
    dims = {e: a.dim for e, a in doc.attrs.items() if a.dim is not None}
    for e in doc.attrs:
        if e not in base:
            raise UnknownFlatError(e, find_close_key(base.index, e))
    return ArrangementPoset(
        base,
        doc.top,
        chi,
        dims if dims else None,
        doc.hyperplanes,
    )


class ChamberStatistic(BaseModel):
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    sum: int
    count: Optional[Fraction] = None
    integral: Optional[bool] = None


def chamber_statistic(ap: ArrangementPoset, c: Optional[int] = None) -> ChamberStatistic:
    """sum over X of mu(X, T) chi(X), and the chamber count sum / c."""
    if c is not None and c == 0:
        raise ZeroChamberChiError("the chamber Euler characteristic must be nonzero")

    p = ap.base
    weights = mobius(p).values[:, p.index_of(ap.top)]
    total = sum(int(w) * ap.chi[e] for w, e in zip(weights, p.elements) if w)
    if c is None:
        return ChamberStatistic(sum=total)

    count = Fraction(total, c)
    integral = count.denominator == 1
    if not integral:
        logger.warning(
            "chamber count %s under %s is not an integer; check the chi data",
            count,
            ap.top,
        )
    return ChamberStatistic(sum=total, count=count, integral=integral)


def induced(ap: ArrangementPoset, flat: str) -> ArrangementPoset:
    """The arrangement induced on a flat: its principal down-set, topped by it."""
    ap.flat(flat)
    down = principal_ideal(ap.base, flat)
    sub = ap.base.subposet(down)
    return ArrangementPoset(
        sub,
        flat,
        {e: ap.chi[e] for e in sub.elements},
        None if ap.dim is None else {e: ap.dim[e] for e in sub.elements},
    )


class FaceProfile(BaseModel):
    """Euler characteristics of faces by dimension: c_i for chambers (open
    faces) of dimension i, optionally l_k for every flat of dimension k."""

    model_config = ConfigDict(frozen=True)

    chamber_chi_by_dim: Dict[int, int]
    flat_chi_by_dim: Optional[Dict[int, int]] = None

    @model_validator(mode="after")
    def _nonzero(self) -> "FaceProfile":
        zero = [i for i, c in self.chamber_chi_by_dim.items() if c == 0]
        if zero:
            raise ZeroChamberChiError(
                f"chamber Euler characteristic is 0 in dimension {zero[0]}"
            )
        return self

    @classmethod
    def alternating(cls, n: int) -> "FaceProfile":
        """c_i = (-1)^i, the open cells of a real arrangement."""
        return cls(chamber_chi_by_dim={i: (-1) ** i for i in range(n + 1)})

    @classmethod
    def from_document(cls, doc: ProfileDocument) -> "FaceProfile":
        return cls(chamber_chi_by_dim=doc.chamber_chi, flat_chi_by_dim=doc.flat_chi)

    def chamber_chi(self, dimension: int) -> int:
        try:
            return self.chamber_chi_by_dim[dimension]
        except KeyError:
            raise ProfileMismatchError(
                f"no chamber Euler characteristic for dimension {dimension}"
            ) from None

    def flat_chi(self, ap: ArrangementPoset) -> Dict[str, int]:
        """chi per flat: l_{dim X} when given, otherwise the arrangement's own."""
        if self.flat_chi_by_dim is None:
            return dict(ap.chi)
        dims = ap.require_dim()
        out = {}
        for e, d in dims.items():
            if d not in self.flat_chi_by_dim:
                raise ProfileMismatchError(f"no flat Euler characteristic for dimension {d}")
            out[e] = self.flat_chi_by_dim[d]
        return out


def with_chi(ap: ArrangementPoset, chi: Mapping[str, int]) -> ArrangementPoset:
    return ArrangementPoset(ap.base, ap.top, chi, ap.dim, ap.hyperplanes)


def face_counts(
    ap: ArrangementPoset, profile: FaceProfile, workers: Optional[int] = None
) -> Dict[int, Fraction]:
    """
    f_i = (1/c_i) * sum over flats Y of dimension i of the chamber statistic
    of the arrangement induced on Y.
    """
    dims = ap.require_dim()
    source = with_chi(ap, profile.flat_chi(ap))
    flats = list(ap.base.elements)
    # fail on a missing c_i before doing any work
    for d in sorted({dims[y] for y in flats}):
        profile.chamber_chi(d)

    def per_flat(y: str) -> int:
        return chamber_statistic(induced(source, y)).sum

    sums = parallel_map(per_flat, flats, workers or get_config().compute.workers)

    totals: Dict[int, int] = {}
    for y, s in zip(flats, sums):
        totals[dims[y]] = totals.get(dims[y], 0) + s

    counts = {d: Fraction(s, profile.chamber_chi(d)) for d, s in sorted(totals.items())}
    for d, f in counts.items():
        if f.denominator != 1:
            logger.warning("face count in dimension %d is %s, not an integer", d, f)
    return counts
