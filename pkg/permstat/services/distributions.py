"""
Generating polynomials of statistic tuples over filtered subsets of S_m.

One sweep over the group computes every requested statistic per permutation
and tallies exponent vectors; the tallies become sparse polynomials.
"""

import logging
from collections import Counter
from functools import partial
from math import factorial
from typing import Callable, Dict, List, Literal, Optional, Sequence, Tuple

from pydantic import BaseModel, model_validator

from permstat.core.alternating import a_del_of_window, a_length_of_window, des_positions_A, is_even_window
from permstat.core.permutation import Window, inverse_window, windows
from permstat.exceptions import InvalidParameterError, UnknownStatisticError
from permstat.models.records import ClassRow
from permstat.services.polynomial import Polynomial, product
from permstat.services.sweep import check_budget, map_shards, merge_buckets, run_sharded
from permstat.stats.patterns import avoids_window
from permstat.stats.qstats import (
    check_q,
    del_positions,
    des_positions,
    ell_q_of_window,
    inv_q_of_window,
    rmaj_of_positions,
)

logger = logging.getLogger(__name__)

StatFunction = Callable[[Window, int], int]


def _rmaj_q(w: Window, q: int) -> int:
    return rmaj_of_positions(des_positions(w, q), len(w))


def _rmaj_A(w: Window, q: int) -> int:
    return rmaj_of_positions(des_positions_A(w), len(w) - 1)


STATISTICS: Dict[str, StatFunction] = {
    "inv_q": inv_q_of_window,
    "ell_q": ell_q_of_window,
    "rmaj_q": _rmaj_q,
    "maj_q": lambda w, q: sum(des_positions(w, q)),
    "des_q": lambda w, q: len(des_positions(w, q)),
    "del_q": lambda w, q: len(del_positions(w, q)),
    "des_q_of_inverse": lambda w, q: len(des_positions(inverse_window(w), q)),
    "rmaj_q_of_inverse": lambda w, q: _rmaj_q(inverse_window(w), q),
    "ell_A": lambda w, q: a_length_of_window(w),
    "del_A": lambda w, q: a_del_of_window(w),
    "rmaj_A": _rmaj_A,
}

# Defined on the alternating group only; they need the "even" filter.
ALTERNATING_STATISTICS = frozenset({"ell_A", "del_A", "rmaj_A"})


def resolve_stats(stats: Sequence[str]) -> Tuple[str, ...]:
    unknown = [s for s in stats if s not in STATISTICS]
    if unknown:
        raise UnknownStatisticError(
            f"unknown statistic(s) {', '.join(unknown)}; known: {', '.join(STATISTICS)}"
        )
    return tuple(stats)


class FilterSpec(BaseModel):
    """Which permutations of S_m a sweep keeps."""

    kind: Literal["all", "avoid", "inv-avoid", "inv-des", "inv-des-del", "even"] = "all"
    B1: Optional[Tuple[int, ...]] = None
    B2: Optional[Tuple[int, ...]] = None

    model_config = {"frozen": True}

    @model_validator(mode="after")
    def _sets_match_kind(self) -> "FilterSpec":
        needs_b1 = self.kind in ("inv-des", "inv-des-del")
        needs_b2 = self.kind == "inv-des-del"
        if needs_b1 != (self.B1 is not None):
            raise ValueError(f"filter {self.kind!r} " + ("needs B1" if needs_b1 else "takes no B1"))
        if needs_b2 != (self.B2 is not None):
            raise ValueError(f"filter {self.kind!r} " + ("needs B2" if needs_b2 else "takes no B2"))
        return self

    @classmethod
    def parse(cls, text: str) -> "FilterSpec":
        """
        Parse "all", "avoid", "inv-avoid", "even", "inv-des=2,3" or
        "inv-des-del=2,3;3,4" (B1 before the semicolon, B2 after).
        """
        text = text.strip()
        name, _, payload = text.partition("=")
        try:
            if name == "inv-des":
                return cls(kind=name, B1=_parse_set(payload))
            if name == "inv-des-del":
                first, sep, second = payload.partition(";")
                if not sep:
                    raise InvalidParameterError("inv-des-del needs B1;B2")
                return cls(kind=name, B1=_parse_set(first), B2=_parse_set(second))
            if payload:
                raise InvalidParameterError(f"filter {name!r} takes no sets")
            return cls(kind=name)
        except ValueError as e:
            if isinstance(e, InvalidParameterError):
                raise
            raise InvalidParameterError(f"bad filter {text!r}: {e}")

    def check_range(self, m: int, q: int) -> None:
        """B and B1 must lie in [q, m-1], B2 in [q+1, m]."""
        if self.B1 is not None and any(not q <= i <= m - 1 for i in self.B1):
            raise InvalidParameterError(f"B1 {list(self.B1)} must lie in [{q}, {m - 1}]")
        if self.B2 is not None and any(not q + 1 <= i <= m for i in self.B2):
            raise InvalidParameterError(f"B2 {list(self.B2)} must lie in [{q + 1}, {m}]")

    def accepts(self, w: Window, q: int) -> bool:
        if self.kind == "all":
            return True
        if self.kind == "avoid":
            return avoids_window(w, q)
        if self.kind == "even":
            return is_even_window(w)
        u = inverse_window(w)
        if self.kind == "inv-avoid":
            return avoids_window(u, q)
        if tuple(des_positions(u, q)) != self.B1:
            return False
        return self.kind == "inv-des" or tuple(del_positions(u, q)) == self.B2

    def __str__(self) -> str:
        if self.kind == "inv-des":
            return f"inv-des={_format_set(self.B1)}"
        if self.kind == "inv-des-del":
            return f"inv-des-del={_format_set(self.B1)};{_format_set(self.B2)}"
        return self.kind


def _parse_set(text: str) -> Tuple[int, ...]:
    values = [int(t) for t in text.replace(" ", "").split(",") if t]
    return tuple(sorted(set(values)))


def _format_set(values: Optional[Tuple[int, ...]]) -> str:
    return ",".join(str(v) for v in values or ())


# Shard tasks live at module level so worker processes can unpickle them.

def accumulate_shard(
    q: int, stats: Tuple[str, ...], spec: FilterSpec, m: int, first: int
) -> Counter:
    functions = [STATISTICS[s] for s in stats]
    tally: Counter = Counter()
    for w in windows(m, first):
        if spec.accepts(w, q):
            tally[tuple(f(w, q) for f in functions)] += 1
    return tally


def class_shard(q: int, with_del: bool, spec: FilterSpec, m: int, first: int) -> dict:
    """Bucket (inv_q, rmaj_q) pairs by the inverse's Des_q (and Del_q)."""
    buckets: dict = {}
    for w in windows(m, first):
        if not spec.accepts(w, q):
            continue
        u = inverse_window(w)
        key = (tuple(des_positions(u, q)), tuple(del_positions(u, q)) if with_del else None)
        pair = (inv_q_of_window(w, q), _rmaj_q(w, q))
        buckets.setdefault(key, Counter())[pair] += 1
    return buckets


def _prepare(m: int, q: int, spec: FilterSpec, budget: Optional[int]) -> None:
    check_q(q)
    if m < 1:
        raise InvalidParameterError(f"m must be at least 1, got {m}")
    spec.check_range(m, q)
    check_budget(m, budget)


def distribution(
    m: int,
    q: int,
    stats: Sequence[str],
    spec: Optional[FilterSpec] = None,
    threads: Optional[int] = None,
    budget: Optional[int] = None,
) -> Polynomial:
    """
    Sum over p in S_m passing the filter of prod_i t_i^{stat_i(p)}.

    Statistic t_i is the i-th entry of stats.
    """
    spec = spec or FilterSpec()
    stats = resolve_stats(stats)
    if ALTERNATING_STATISTICS.intersection(stats) and spec.kind != "even":
        raise InvalidParameterError("ell_A, del_A and rmaj_A need the 'even' filter")
    _prepare(m, q, spec, budget)
    logger.info(f"distribution of {list(stats)} over S_{m}, q={q}, filter {spec}")
    tally = run_sharded(partial(accumulate_shard, q, stats, spec), m, threads)
    return Polynomial.from_counts(len(stats), tally)


def qmac2_product(n: int, q: int) -> Polynomial:
    """q! * prod_{i=1}^{n-1} (1 + t1 + ... + t1^{i-1} + t1^i t2 q)."""
    check_q(q)
    if n < 1:
        raise InvalidParameterError(f"n must be at least 1, got {n}")
    factors = []
    for i in range(1, n):
        terms = {(r, 0): 1 for r in range(i)}
        terms[(i, 1)] = q
        factors.append(Polynomial(2, terms))
    return Polynomial.constant(2, factorial(q)) * product(factors, 2)


def qmac_product(n: int, q: int) -> Polynomial:
    """q! (1 + tq)(1 + t + t^2 q) ... (1 + t + ... + t^{n-1} q), the t2 = 1 shadow."""
    collapsed = qmac2_product(n, q).set_variable_to_one(2)
    return Polynomial(1, {(e[0],): c for e, c in collapsed.terms.items()})


def class_table(
    m: int,
    q: int,
    with_del: bool = True,
    spec: Optional[FilterSpec] = None,
    threads: Optional[int] = None,
    budget: Optional[int] = None,
) -> List[ClassRow]:
    """
    Partition the filtered part of S_m by Des_q(p^{-1}) (and Del_q(p^{-1})) and
    compare the inv_q and rmaj_q polynomials of every realized class.
    """
    spec = spec or FilterSpec()
    _prepare(m, q, spec, budget)
    buckets = merge_buckets(map_shards(partial(class_shard, q, with_del, spec), m, threads))
    rows = []
    for (b1, b2) in sorted(buckets):
        joint = Polynomial.from_counts(2, buckets[(b1, b2)])
        poly_inv = _marginal(joint, 0)
        poly_rmaj = _marginal(joint, 1)
        rows.append(
            ClassRow(
                B1=list(b1),
                B2=list(b2) if b2 is not None else None,
                size=joint.at_ones(),
                poly_inv=poly_inv.to_text(),
                poly_rmaj=poly_rmaj.to_text(),
                equal=poly_inv == poly_rmaj,
            )
        )
    logger.info(f"S_{m}, q={q}: {len(rows)} realized classes")
    return rows


def _marginal(joint: Polynomial, index: int) -> Polynomial:
    result: Dict[Tuple[int, ...], int] = {}
    for exponent, coefficient in joint.terms.items():
        key = (exponent[index],)
        result[key] = result.get(key, 0) + coefficient
    return Polynomial(1, result)
