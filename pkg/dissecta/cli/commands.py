"""
One function per subcommand. Each takes the parsed arguments and returns
the Report to print; failed identity checks raise IdentityFailedError
carrying the report.
"""

import argparse
import logging
from fractions import Fraction
from typing import Callable, Dict, Optional

from dissecta.cli.report import Report
from dissecta.core.dissection import (
    FaceProfile,
    FPolyConvention,
    SetModel,
    chamber_statistic,
    f_polynomial,
    face_counts,
    identity_report,
    load_arrangement,
    mobius_polynomial,
    set_oracle_check,
)
from dissecta.core.dissection.polynomials import evaluate
from dissecta.core.documents import (
    ArrangementDocument,
    PosetDocument,
    ProfileDocument,
    SetModelDocument,
    SubsetDocument,
)
from dissecta.core.errors import IdentityFailedError, InvalidArgumentError, NotALatticeError
from dissecta.core.incidence import mobius
from dissecta.core.lattice import lattice_from_poset
from dissecta.core.valuation import val_coords, val_invariants, zaslavsky_check

logger = logging.getLogger(__name__)

Command = Callable[[argparse.Namespace], Report]


def _profile(report: Report, path: Optional[str], n: int) -> FaceProfile:
    if path is None:
        return FaceProfile.alternating(n)
    return FaceProfile.from_document(report.read_input(path, ProfileDocument))


def _warn_fractions(report: Report, what: str, values: Dict[int, Fraction]) -> None:
    for key, value in values.items():
        if value.denominator != 1:
            report.warn(f"{what} {key} is {value}, not an integer")


def mobius_command(args: argparse.Namespace) -> Report:
    report = Report(command="mobius")
    p = report.read_input(args.poset, PosetDocument).to_poset()
    mu = mobius(p)
    if (args.source is None) != (args.target is None):
        raise InvalidArgumentError("--from and --to must be given together")
    if args.source is not None:
        report.results = {
            "from": args.source,
            "to": args.target,
            "value": mu(args.source, args.target),
        }
        return report

    table: Dict[str, Dict[str, int]] = {}
    for a, b, value in mu.items():
        if value:
            table.setdefault(a, {})[b] = value
    report.results = {"elements": len(p), "mobius": table}
    return report


def check_command(args: argparse.Namespace) -> Report:
    report = Report(command="check")
    p = report.read_input(args.poset, PosetDocument).to_poset()
    try:
        l = lattice_from_poset(p)
    except NotALatticeError as e:
        report.results = {"lattice": False, "witness": list(e.witness)}
        return report
    structure = l.structure
    report.results = {
        "lattice": True,
        "elements": len(l),
        "bottom": l.elements[l.bottom],
        "top": l.elements[l.top],
        "distributive": structure.distributive,
        "modular": structure.modular,
        "cancellation": structure.cancellation,
        "join_distributive": structure.join_distributive,
    }
    return report


def ji_command(args: argparse.Namespace) -> Report:
    report = Report(command="ji")
    l = lattice_from_poset(report.read_input(args.poset, PosetDocument).to_poset())
    irreducibles = l.irreducibles
    report.results = {
        "ji": [e for e in l.elements if e in irreducibles.ji],
        "lower_cover": dict(irreducibles.lower_cover),
    }
    return report


def val_command(args: argparse.Namespace) -> Report:
    report = Report(command="val")
    l = lattice_from_poset(report.read_input(args.poset, PosetDocument).to_poset())
    invariants = val_invariants(l)
    report.results = {
        "free_rank": invariants.free_rank,
        "torsion": list(invariants.torsion),
        "ji_count": invariants.ji_count,
        "distributive": invariants.distributive,
        "match": invariants.match,
    }
    if invariants.distributive:
        report.results["coordinates"] = {x: val_coords(l, x) for x in l.elements}
    else:
        report.warn("the lattice is not distributive, Val(L) is not free on ji(L)")

    if args.zaslavsky is not None:
        subset = report.read_input(args.zaslavsky, SubsetDocument).elements
        checked = zaslavsky_check(l, subset)
        report.results["zaslavsky"] = checked
        failed = sorted(a for a, ok in checked.items() if not ok)
        if failed:
            raise IdentityFailedError(
                f"u_M(a) is not in N(L) for {', '.join(failed)}", report
            )
    return report


def dissect_command(args: argparse.Namespace) -> Report:
    report = Report(command="dissect")
    ap = load_arrangement(report.read_input(args.arrangement, ArrangementDocument))
    statistic = chamber_statistic(ap, args.chamber_chi)
    report.results = {"top": ap.top, "sum": statistic.sum}
    if statistic.count is not None:
        report.results["count"] = statistic.count
        report.results["integral"] = statistic.integral
        _warn_fractions(report, "chamber count under", {ap.top: statistic.count})
    return report


def faces_command(args: argparse.Namespace) -> Report:
    report = Report(command="faces")
    ap = load_arrangement(report.read_input(args.arrangement, ArrangementDocument))
    profile = _profile(report, args.profile, ap.ambient_dim)
    counts = face_counts(ap, profile)
    _warn_fractions(report, "face count in dimension", counts)
    report.results = {"faces": counts, "total": sum(counts.values(), Fraction(0))}
    return report


def fpoly_command(args: argparse.Namespace) -> Report:
    report = Report(command="fpoly")
    ap = load_arrangement(report.read_input(args.arrangement, ArrangementDocument))
    convention = FPolyConvention.parse(args.convention)
    polynomial = f_polynomial(ap, _profile(report, args.profile, ap.ambient_dim), convention)
    report.results = {
        "convention": convention.value,
        "polynomial": polynomial,
        "at_one": evaluate(polynomial),
    }
    return report


def mpoly_command(args: argparse.Namespace) -> Report:
    report = Report(command="mpoly")
    ap = load_arrangement(report.read_input(args.arrangement, ArrangementDocument))
    report.results = {
        "rank": ap.arrangement_rank,
        "polynomial": mobius_polynomial(ap),
    }
    return report


def identity_command(args: argparse.Namespace) -> Report:
    report = Report(command="identity")
    ap = load_arrangement(report.read_input(args.arrangement, ArrangementDocument))
    profile = None if args.profile is None else _profile(report, args.profile, ap.ambient_dim)
    result = identity_report(ap, args.corollary, profile)
    report.results = {
        "corollary": result.which,
        "lhs": result.lhs,
        "rhs": result.rhs,
        "equal": result.equal,
        "lhs_at_one": result.lhs_at_one,
        "total_faces": result.total_faces,
        "consistent": result.consistent,
    }
    if not result.equal:
        raise IdentityFailedError(f"{result.which} does not hold", report)
    return report


def verify_command(args: argparse.Namespace) -> Report:
    report = Report(command="verify")
    model = SetModel.from_document(report.read_input(args.setmodel, SetModelDocument))
    result = set_oracle_check(model)
    report.results = result.model_dump(exclude_none=True)
    if not result.equal:
        raise IdentityFailedError("the set model identity does not hold", report)
    return report


COMMANDS: Dict[str, Command] = {
    "mobius": mobius_command,
    "check": check_command,
    "ji": ji_command,
    "val": val_command,
    "dissect": dissect_command,
    "faces": faces_command,
    "fpoly": fpoly_command,
    "mpoly": mpoly_command,
    "identity": identity_command,
    "verify": verify_command,
}
