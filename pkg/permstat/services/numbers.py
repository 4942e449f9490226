"""
Exact Stirling numbers, q-Bell numbers, q-Stirling numbers of the first kind
and the pattern-avoidance counts h_q, together with a Dobinski-type series.

All values are Python integers or Fractions; nothing overflows or rounds.
"""

import logging
from fractions import Fraction
from functools import lru_cache
from math import comb, factorial
from typing import Iterator, List, Optional, Tuple

from permstat.exceptions import InvalidParameterError

logger = logging.getLogger(__name__)

Partition = Tuple[Tuple[int, ...], ...]
ColoredPartition = Tuple[Tuple[Tuple[int, ...], int], ...]


def _check_nonnegative(**values: int) -> None:
    for name, value in values.items():
        if not isinstance(value, int) or value < 0:
            raise InvalidParameterError(f"{name} must be a non-negative integer, got {value!r}")


def _check_q(q: int) -> None:
    if not isinstance(q, int) or q < 1:
        raise InvalidParameterError(f"q must be a positive integer, got {q!r}")


@lru_cache(maxsize=None)
def _stirling2_row(n: int) -> Tuple[int, ...]:
    if n == 0:
        return (1,)
    previous = _stirling2_row(n - 1) + (0,)
    # S(n, k) = k S(n-1, k) + S(n-1, k-1)
    return tuple(
        (k * previous[k] if k > 0 else 0) + (previous[k - 1] if k > 0 else 0)
        for k in range(n + 1)
    )


@lru_cache(maxsize=None)
def _stirling1_row(n: int) -> Tuple[int, ...]:
    if n == 0:
        return (1,)
    previous = _stirling1_row(n - 1) + (0,)
    # c(n, k) = (n-1) c(n-1, k) + c(n-1, k-1)
    return tuple(
        ((n - 1) * previous[k] if k > 0 else 0) + (previous[k - 1] if k > 0 else 0)
        for k in range(n + 1)
    )


def stirling2(n: int, k: int) -> int:
    """Number of partitions of {1..n} into k non-empty blocks."""
    _check_nonnegative(n=n, k=k)
    return _stirling2_row(n)[k] if k <= n else 0


def stirling1_unsigned(n: int, k: int) -> int:
    """Number of permutations of {1..n} with k cycles."""
    _check_nonnegative(n=n, k=k)
    return _stirling1_row(n)[k] if k <= n else 0


def bell_q(n: int, q: int) -> int:
    """b_q(n) = sum_k q^k S(n, k), the number of q-colored set partitions of {1..n}."""
    _check_nonnegative(n=n)
    _check_q(q)
    return sum(q ** k * s for k, s in enumerate(_stirling2_row(n)))


@lru_cache(maxsize=None)
def _bell_q_recurrence_row(q: int, n: int) -> Tuple[int, ...]:
    if n == 0:
        return (1,)
    row = _bell_q_recurrence_row(q, n - 1)
    # b_q(n) = q sum_k C(n-1, k) b_q(n-k-1)
    value = q * sum(comb(n - 1, k) * row[n - k - 1] for k in range(n))
    return row + (value,)


def bell_q_recurrence(n: int, q: int) -> int:
    """b_q(n) through the block-containing-n recurrence, memoized per q."""
    _check_nonnegative(n=n)
    _check_q(q)
    return _bell_q_recurrence_row(q, n)[n]


def c_q(n: int, k: int, q: int) -> int:
    """q^k (q-1)! c(n, k): permutations of S_{n+q-1} with del_q = k - 1."""
    _check_q(q)
    if n < 1 or not 1 <= k <= n:
        raise InvalidParameterError(f"c_q needs n >= 1 and 1 <= k <= n, got n={n}, k={k}")
    return q ** k * factorial(q - 1) * stirling1_unsigned(n, k)


@lru_cache(maxsize=None)
def _h_q_row(q: int, m: int) -> Tuple[int, ...]:
    if m == 0:
        return (1,)
    row = _h_q_row(q, m - 1)
    if m < q:
        value = factorial(m)
    else:
        # h_q(m) = q sum_{k=0}^{m-q} C(m-q, k) h_q(m-k-1)
        value = q * sum(comb(m - q, k) * row[m - k - 1] for k in range(m - q + 1))
    return row + (value,)


def h_q_recurrence(m: int, q: int) -> int:
    """Number of permutations of S_m avoiding Pat(q), by recurrence on m."""
    _check_nonnegative(m=m)
    _check_q(q)
    return _h_q_row(q, m)[m]


def h_q_formula(m: int, q: int) -> int:
    """h_q(n+q-1) = (q-1)! b_q(n); below degree q-1 every permutation avoids."""
    _check_nonnegative(m=m)
    _check_q(q)
    if m < q - 1:
        return factorial(m)
    return factorial(q - 1) * bell_q(m - q + 1, q)


def dobinski_terms(n: int, q: int) -> int:
    """Truncation length that keeps the series within 1e-9 relative error for n <= 10, q <= 3."""
    return 6 * (n + q) + 40


def dobinski_q(n: int, q: int, terms: int) -> Fraction:
    """
    Partial Dobinski-type series for b_q(n).

    Both sum_{r<=R} q^r r^n / r! and the truncated series of e^q are summed
    exactly and divided; floats appear only when the error is measured.
    """
    _check_nonnegative(n=n)
    _check_q(q)
    if terms < 1:
        raise InvalidParameterError(f"terms must be at least 1, got {terms}")
    numerator = Fraction(0)
    exp_q = Fraction(0)
    term = Fraction(1)  # q^r / r!
    for r in range(terms + 1):
        if r > 0:
            term = term * q / r
        numerator += term * r ** n
        exp_q += term
    return numerator / exp_q


def dobinski_relative_error(n: int, q: int, terms: int) -> float:
    exact = bell_q(n, q)
    return float(abs(dobinski_q(n, q, terms) - exact) / exact)


def set_partitions(n: int) -> Iterator[Partition]:
    """
    Every partition of {1..n} into non-empty blocks, each block sorted and the
    blocks ordered by their minima. Generated from restricted growth strings.
    """
    _check_nonnegative(n=n)
    if n == 0:
        yield ()
        return

    def grow(prefix: List[int], blocks: int) -> Iterator[List[int]]:
        if len(prefix) == n:
            yield prefix
            return
        for label in range(blocks + 1):
            yield from grow(prefix + [label], max(blocks, label + 1))

    for labels in grow([0], 1):
        count = max(labels) + 1
        yield tuple(
            tuple(i + 1 for i, label in enumerate(labels) if label == b) for b in range(count)
        )


def colored_set_partitions(n: int, q: int) -> Iterator[ColoredPartition]:
    """Set partitions of {1..n} with every block colored by one of q colors (0..q-1)."""
    _check_q(q)
    for partition in set_partitions(n):
        for colors in _color_choices(len(partition), q):
            yield tuple(zip(partition, colors))


def _color_choices(blocks: int, q: int) -> Iterator[Tuple[int, ...]]:
    if blocks == 0:
        yield ()
        return
    for head in range(q):
        for tail in _color_choices(blocks - 1, q):
            yield (head,) + tail


NUMBER_KINDS = ("bellq", "stirling1", "stirling2", "cq", "h")


def number_of_kind(kind: str, n: int, k: Optional[int] = None, q: int = 1) -> int:
    """Dispatch used by the CLI and the API: bellq, stirling1, stirling2, cq or h."""
    if kind not in NUMBER_KINDS:
        raise InvalidParameterError(f"unknown kind {kind!r}; known: {', '.join(NUMBER_KINDS)}")
    if kind in ("stirling1", "stirling2", "cq") and k is None:
        raise InvalidParameterError(f"k is required for {kind}")
    if kind == "bellq":
        return bell_q(n, q)
    if kind == "stirling1":
        return stirling1_unsigned(n, k)
    if kind == "stirling2":
        return stirling2(n, k)
    if kind == "cq":
        return c_q(n, k, q)
    return h_q_recurrence(n, q)
