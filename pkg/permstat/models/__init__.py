"""
Pydantic records shared by the library, the CLI and the API.
"""

from permstat.models.records import (
    ClassRow,
    CliConfig,
    FiberIndex,
    PatternWitness,
    StatRecord,
    VerificationReport,
)

__all__ = [
    "ClassRow",
    "CliConfig",
    "FiberIndex",
    "PatternWitness",
    "StatRecord",
    "VerificationReport",
]
