"""Face polynomials, the Möbius polynomial and the identities relating them."""

import logging
from enum import Enum
from fractions import Fraction
from typing import Dict, Literal, Optional

import numpy as np
import sympy
from pydantic import BaseModel, ConfigDict
from sympy import QQ, ZZ, Poly

from dissecta.core.dissection.arrangement import ArrangementPoset, FaceProfile, face_counts
from dissecta.core.errors import InvalidArgumentError, ProfileMismatchError
from dissecta.core.incidence import mobius

logger = logging.getLogger(__name__)

x, y = sympy.symbols("x y")


class FPolyConvention(Enum):
    DIM = "dim"
    CODIM = "codim"
    LITERAL = "literal"

    @classmethod
    def parse(cls, name: str) -> "FPolyConvention":
        try:
            return cls(name)
        except ValueError:
            raise InvalidArgumentError(
                f"unknown convention {name!r}, use dim, codim or literal"
            ) from None


def _rational(value: Fraction) -> sympy.Rational:
    return sympy.Rational(value.numerator, value.denominator)


def _fraction(value) -> Fraction:
    """The only way sympy numbers leave this module."""
    value = sympy.Rational(value)
    return Fraction(int(value.p), int(value.q))


def format_fraction(value: Fraction) -> str:
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def f_polynomial(
    ap: ArrangementPoset,
    profile: FaceProfile,
    convention: FPolyConvention = FPolyConvention.DIM,
) -> Poly:
    """
    dim:           sum f_k x^(n-k)
    codim:         sum f_k x^k
    literal: sum over X <= Y of chi(X) / c_dim(Y) * mu(X, Y) * x^(n - dim X)
    """
    n = ap.ambient_dim
    match convention:
        case FPolyConvention.DIM | FPolyConvention.CODIM:
            counts = face_counts(ap, profile)
            expr = sympy.Integer(0)
            for k, f in counts.items():
                power = n - k if convention is FPolyConvention.DIM else k
                expr += _rational(f) * x**power
        case FPolyConvention.LITERAL:
            dims = ap.require_dim()
            chi = profile.flat_chi(ap)
            p = ap.base
            mu = mobius(p).values
            expr = sympy.Integer(0)
            for i, j in np.argwhere(p.leq):
                X, Y = p.elements[i], p.elements[j]
                coefficient = Fraction(chi[X] * int(mu[i, j]), profile.chamber_chi(dims[Y]))
                if coefficient:
                    expr += _rational(coefficient) * x ** (n - dims[X])
        case _:
            raise InvalidArgumentError(f"unknown convention {convention!r}")
    return Poly(expr, x, domain=QQ)


def mobius_polynomial(ap: ArrangementPoset) -> Poly:
    """M(x, y) = sum over X <= Y of mu(X, Y) x^rk(X) y^(rk A - rk Y)."""
    p = ap.base
    mu = mobius(p).values
    top_rank = ap.arrangement_rank
    expr = sympy.Integer(0)
    for i, j in np.argwhere(p.leq):
        value = int(mu[i, j])
        if value:
            X, Y = p.elements[i], p.elements[j]
            expr += value * x ** ap.rank(X) * y ** (top_rank - ap.rank(Y))
    return Poly(expr, x, y, domain=ZZ)


def evaluate(poly: Poly, at: int = 1) -> Fraction:
    """Value with every generator set to `at`."""
    point = Fraction(at)
    return sum((_fraction(c) * point ** sum(m) for m, c in poly.terms()), Fraction(0))


class IdentityReport(BaseModel):
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    which: Literal["cor68", "cor69"]
    lhs: Poly
    rhs: Poly
    equal: bool
    lhs_at_one: Fraction
    total_faces: Fraction
    consistent: bool


def _check_hypothesis(
    ap: ArrangementPoset, profile: FaceProfile, which: str
) -> None:
    dims = ap.require_dim()
    for d, c in profile.chamber_chi_by_dim.items():
        if c != (-1) ** d:
            raise ProfileMismatchError(
                f"{which} needs chamber Euler characteristic (-1)^{d}, got {c}"
            )
    chi = profile.flat_chi(ap)
    for flat, d in dims.items():
        expected = (-1) ** d if which == "cor68" else (2 if d % 2 == 0 else 0)
        if chi[flat] != expected:
            raise ProfileMismatchError(
                f"{which} needs chi({flat}) = {expected} in dimension {d}, got {chi[flat]}"
            )


def identity_report(
    ap: ArrangementPoset,
    which: Literal["cor68", "cor69"],
    profile: Optional[FaceProfile] = None,
) -> IdentityReport:
    """
    Compare the literal f-polynomial with its Möbius polynomial expression.

    cor68, for chi(X) = (-1)^dim X:        f(x) = (-1)^rk A M(-x, -1)
    cor69, for chi(X) = 2 or 0 by parity:  f(x) = (-1)^(n - rk A) (M(x, -1) + g M(-x, -1))
    with g = 1 when n = dim T is even and -1 otherwise.
    """
    if which not in ("cor68", "cor69"):
        raise InvalidArgumentError(f"unknown identity {which!r}, use cor68 or cor69")
    n = ap.ambient_dim
    profile = profile or FaceProfile.alternating(n)
    _check_hypothesis(ap, profile, which)

    lhs = f_polynomial(ap, profile, FPolyConvention.LITERAL)
    m = mobius_polynomial(ap).as_expr()
    rank = ap.arrangement_rank
    flipped = m.subs({x: -x, y: -1}, simultaneous=True)
    if which == "cor68":
        rhs_expr = (-1) ** rank * flipped
    else:
        gamma = 1 if n % 2 == 0 else -1
        rhs_expr = (-1) ** (n - rank) * (m.subs(y, -1) + gamma * flipped)
    rhs = Poly(sympy.expand(rhs_expr), x, domain=QQ)

    total = sum(face_counts(ap, profile).values(), Fraction(0))
    at_one = evaluate(lhs)
    equal = lhs == rhs
    if not equal:
        logger.error("%s fails: %s != %s", which, lhs.as_expr(), rhs.as_expr())
    return IdentityReport(
        which=which,
        lhs=lhs,
        rhs=rhs,
        equal=equal,
        lhs_at_one=at_one,
        total_faces=total,
        consistent=at_one == total,
    )


def format_polynomial(poly: Poly) -> str:
    """Canonical text: terms by descending total degree, then lexicographically."""
    names = [str(g) for g in poly.gens]
    terms = sorted(poly.terms(), key=lambda t: (-sum(t[0]), tuple(-e for e in t[0])))
    pieces = []
    for monom, coeff in terms:
        if coeff == 0:
            continue
        factors = [
            name if e == 1 else f"{name}^{e}" for name, e in zip(names, monom) if e
        ]
        text = format_fraction(_fraction(coeff))
        sign = "-" if text.startswith("-") else "+"
        magnitude = text.lstrip("-")
        if factors:
            body = "*".join(factors) if magnitude == "1" else "*".join([magnitude] + factors)
        else:
            body = magnitude
        pieces.append((sign, body))

    if not pieces:
        return "0"
    first_sign, first = pieces[0]
    out = ("-" if first_sign == "-" else "") + first
    for sign, body in pieces[1:]:
        out += f" {sign} {body}"
    return out

