"""Type definitions for unitcodes."""

from .records import (
    # Sentinels
    INFINITE,
    Unknown,
    Extent,
    Distance,
    # Ring types
    ParityCase,
    CaseTag,
    Factorization,
    StructureProfile,
    # Graph types
    GraphInvariants,
    # Code types
    TheoremSource,
    CodeParams,
    PredictedParams,
    # Verification types
    CheckStatus,
    CheckResult,
    CheckRecord,
    SweepConfig,
    SweepReport,
)

__all__ = [
    # Sentinels
    "INFINITE",
    "Unknown",
    "Extent",
    "Distance",
    # Ring types
    "ParityCase",
    "CaseTag",
    "Factorization",
    "StructureProfile",
    # Graph types
    "GraphInvariants",
    # Code types
    "TheoremSource",
    "CodeParams",
    "PredictedParams",
    # Verification types
    "CheckStatus",
    "CheckResult",
    "CheckRecord",
    "SweepConfig",
    "SweepReport",
]
