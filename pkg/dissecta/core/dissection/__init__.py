from dissecta.core.dissection.arrangement import (
    ArrangementPoset,
    ChamberStatistic,
    FaceProfile,
    chamber_statistic,
    face_counts,
    induced,
    load_arrangement,
)
from dissecta.core.dissection.polynomials import (
    FPolyConvention,
    IdentityReport,
    f_polynomial,
    format_polynomial,
    identity_report,
    mobius_polynomial,
)
from dissecta.core.dissection.setmodel import (
    DLatticeReport,
    OracleReport,
    SetModel,
    set_oracle_check,
    subset_name,
)

__all__ = [
    "ArrangementPoset",
    "ChamberStatistic",
    "DLatticeReport",
    "FPolyConvention",
    "FaceProfile",
    "IdentityReport",
    "OracleReport",
    "SetModel",
    "chamber_statistic",
    "f_polynomial",
    "face_counts",
    "format_polynomial",
    "identity_report",
    "induced",
    "load_arrangement",
    "mobius_polynomial",
    "set_oracle_check",
    "subset_name",
]
