"""
Serializable records produced by the library, the CLI and the API.
"""

from typing import Any, Dict, List, Literal, Optional

from pydantic import BaseModel, Field, model_validator


class StatRecord(BaseModel):
    """All q-statistics of one permutation at one q."""

    q: int = Field(ge=1)
    degree: int = Field(ge=1)
    window: List[int]
    ell_q: int = Field(ge=0)
    inv_q: int = Field(ge=0)
    del_q: int = Field(ge=0)
    des_q: int = Field(ge=0)
    maj_q: int = Field(ge=0)
    rmaj_q: int = Field(ge=0)
    Del_q: List[int]
    Des_q: List[int]

    model_config = {"frozen": True}

    @model_validator(mode="after")
    def _check_invariants(self) -> "StatRecord":
        m, q = self.degree, self.q
        if self.ell_q != self.inv_q:
            raise ValueError(f"ell_q={self.ell_q} differs from inv_q={self.inv_q}")
        if self.del_q != len(self.Del_q):
            raise ValueError("del_q differs from |Del_q|")
        if self.des_q != len(self.Des_q):
            raise ValueError("des_q differs from |Des_q|")
        if self.Del_q != sorted(self.Del_q) or self.Des_q != sorted(self.Des_q):
            raise ValueError("position sets must be sorted")
        if any(not q + 1 <= i <= m for i in self.Del_q):
            raise ValueError(f"Del_q must lie in [{q + 1}, {m}]")
        if any(not q <= i <= m - 1 for i in self.Des_q):
            raise ValueError(f"Des_q must lie in [{q}, {m - 1}]")
        if not {i - 1 for i in self.Del_q} <= set(self.Des_q):
            raise ValueError("Del_q - 1 must be contained in Des_q")
        if self.maj_q != sum(self.Des_q) or self.rmaj_q != sum(m - i for i in self.Des_q):
            raise ValueError("maj_q/rmaj_q disagree with Des_q")
        return self


class PatternWitness(BaseModel):
    """Positions i_1 < ... < i_q < i_{q+1} and bottom = i_{q+1} + 1 certifying containment of Pat(q)."""

    positions: List[int]
    bottom: int

    model_config = {"frozen": True}


class FiberIndex(BaseModel):
    """The preimage of a base permutation under f_q."""

    base: List[int]
    q: int = Field(ge=1)
    expected_size: int
    members: List[List[int]]

    @model_validator(mode="after")
    def _check_size(self) -> "FiberIndex":
        if len(self.members) != self.expected_size:
            raise ValueError(
                f"fiber has {len(self.members)} members, expected {self.expected_size}"
            )
        return self


class ClassRow(BaseModel):
    """One (B1, B2) class of the inverse-statistic partition and its two polynomials."""

    B1: List[int]
    B2: Optional[List[int]] = None
    size: int
    poly_inv: str
    poly_rmaj: str
    equal: bool


class VerificationReport(BaseModel):
    """Outcome of checking one identity exhaustively at one size."""

    theorem: str
    n: int
    q: int
    m: int
    filter: Optional[str] = None
    status: Literal["pass", "fail"]
    checked: int = 0
    lhs: Optional[str] = None
    rhs: Optional[str] = None
    witness: Optional[Dict[str, Any]] = None

    @model_validator(mode="after")
    def _witness_iff_fail(self) -> "VerificationReport":
        if (self.status == "pass") != (self.witness is None):
            raise ValueError("a report carries a witness exactly when it fails")
        return self

    @property
    def passed(self) -> bool:
        return self.status == "pass"


class CliConfig(BaseModel):
    """Validated command-line parameters."""

    command: str
    m: Optional[int] = None
    n: Optional[int] = None
    q: int = Field(default=1, ge=1)
    k: Optional[int] = None
    stats: List[str] = []
    filter: str = "all"
    format: Literal["text", "json", "csv"] = "text"
    threads: int = Field(default=1, ge=1)
    budget: int = Field(default=9, ge=1)
