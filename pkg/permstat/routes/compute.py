"""
Compute API routes for permstat.
Thin JSON wrappers over the library; domain errors become 400, budget refusals 422.
"""

import logging
from typing import Dict, List, Literal, Optional

from fastapi import APIRouter, HTTPException
from pydantic import BaseModel, Field

from permstat.config import settings
from permstat.core.alternating import a_decompose
from permstat.core.canonical import decompose
from permstat.core.permutation import Permutation
from permstat.exceptions import BudgetExceededError, PermstatError
from permstat.models.records import StatRecord, VerificationReport
from permstat.services.distributions import FilterSpec, distribution
from permstat.services.numbers import number_of_kind
from permstat.services.verification import verify
from permstat.stats.qstats import stat_record

# Configure logging
logger = logging.getLogger(__name__)

router = APIRouter(
    prefix=settings.API_PREFIX,
    tags=["compute"],
    responses={404: {"description": "Not found"}},
)


class StatsRequest(BaseModel):
    """A permutation in one-line notation and the q to evaluate at."""
    window: List[int]
    q: int = Field(default=1, ge=1)


class DecomposeRequest(BaseModel):
    window: List[int]
    group: Literal["s", "a"] = "s"


class VerifyRequest(BaseModel):
    theorem: str
    n: int = Field(ge=1)
    q: int = Field(default=1, ge=1)


class DistributionRequest(BaseModel):
    m: int = Field(ge=1)
    q: int = Field(default=1, ge=1)
    stats: List[str]
    filter: str = "all"


class DistributionResponse(BaseModel):
    text: str
    terms: List[Dict]


def _threads() -> int:
    # Sweeps run in the request thread unless PERMSTAT_THREADS asks for workers.
    return settings.THREADS or 1


def _http_error(e: PermstatError) -> HTTPException:
    if isinstance(e, BudgetExceededError):
        return HTTPException(status_code=422, detail=str(e))
    logger.error(f"Request rejected: {str(e)}")
    return HTTPException(status_code=400, detail=str(e))


@router.post("/stats", response_model=StatRecord)
def compute_stats(request: StatsRequest) -> StatRecord:
    """
    Compute every q-statistic of one permutation.

    Args:
        request: The window and q

    Returns:
        StatRecord: All statistics with their invariants checked
    """
    try:
        return stat_record(Permutation(request.window), request.q)
    except PermstatError as e:
        raise _http_error(e)


@router.post("/decompose")
def compute_decomposition(request: DecomposeRequest) -> Dict:
    """Canonical word of the permutation in S_m, or in A_m for group "a"."""
    try:
        p = Permutation(request.window)
        word = a_decompose(p) if request.group == "a" else decompose(p)
        return {"group": request.group, "degree": word.degree, "word": str(word)}
    except PermstatError as e:
        raise _http_error(e)


@router.get("/numbers/{kind}")
def compute_number(kind: str, n: int, k: Optional[int] = None, q: int = 1) -> Dict:
    """Exact value as a decimal string, so big integers survive JSON clients."""
    try:
        value = number_of_kind(kind, n, k, q)
        return {"kind": kind, "n": n, "k": k, "q": q, "value": str(value)}
    except PermstatError as e:
        raise _http_error(e)


@router.post("/verify", response_model=VerificationReport)
def run_verification(request: VerifyRequest) -> VerificationReport:
    try:
        return verify(request.theorem, request.n, request.q, threads=_threads())
    except PermstatError as e:
        raise _http_error(e)


@router.post("/distribution", response_model=DistributionResponse)
def compute_distribution(request: DistributionRequest) -> DistributionResponse:
    """
    Generating polynomial of the requested statistics over the filtered part of S_m.
    """
    try:
        poly = distribution(
            request.m, request.q, request.stats, FilterSpec.parse(request.filter), threads=_threads()
        )
        return DistributionResponse(text=poly.to_text(), terms=poly.to_json())
    except PermstatError as e:
        raise _http_error(e)
