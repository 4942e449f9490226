"""
Dashed patterns Pat(q), containment scans and the avoider counts h_q(m).

Pat(q) is the family of q! dashed patterns sigma_1-...-sigma_q-(q+2)(q+1)
with sigma in S_q: a permutation contains one of them exactly when some
descent d has at least q entries left of d that are smaller than p(d+1).
"""

import itertools
import logging
from typing import List, Optional, Sequence, Tuple

from permstat.config import settings
from permstat.core.permutation import Permutation, Window, windows
from permstat.exceptions import InvalidParameterError, InvariantViolation
from permstat.models.records import PatternWitness
from permstat.services.numbers import h_q_formula, h_q_recurrence
from permstat.stats.qstats import check_q, del_positions, des_positions

logger = logging.getLogger(__name__)


def pat_q_patterns(q: int) -> List[str]:
    """The q! members of Pat(q) written like "1-2-43"; only for q <= 7."""
    check_q(q)
    if q > 7:
        raise InvalidParameterError("dashed patterns are only written out for q <= 7")
    tail = f"{q + 2}{q + 1}"
    return ["-".join([*(str(v) for v in sigma), tail]) for sigma in itertools.permutations(range(1, q + 1))]


def matches_dashed_pattern(p: Permutation, pattern: str) -> bool:
    """
    Naive occurrence test for a dashed pattern such as "2-1-43".

    Letters inside one dash-free group must occupy adjacent positions.
    """
    groups = [list(map(int, group)) for group in pattern.split("-")]
    letters = [v for group in groups for v in group]
    w = p.window
    for positions in itertools.combinations(range(len(w)), len(letters)):
        offset = 0
        adjacent = True
        for group in groups:
            for a, b in zip(positions[offset:], positions[offset + 1:offset + len(group)]):
                if b != a + 1:
                    adjacent = False
            offset += len(group)
        if not adjacent:
            continue
        values = [w[i] for i in positions]
        ranks = [sorted(values).index(v) + 1 for v in values]
        if ranks == letters:
            return True
    return False


def _witness_of_window(w: Window, q: int) -> Optional[Tuple[List[int], int]]:
    for d in range(1, len(w)):
        bottom = w[d]
        if w[d - 1] < bottom:
            continue
        small = [j for j in range(1, d) if w[j - 1] < bottom]
        if len(small) >= q:
            return small[:q] + [d], d + 1
    return None


def avoids_window(w: Window, q: int) -> bool:
    return _witness_of_window(w, q) is None


def contains_pat_q(p: Permutation, q: int) -> Optional[PatternWitness]:
    """
    A witness that p contains a pattern of Pat(q), or None.

    The witness uses the leftmost qualifying descent and the q leftmost
    smaller entries before it.
    """
    check_q(q)
    found = _witness_of_window(p.window, q)
    if found is None:
        return None
    positions, bottom = found
    return PatternWitness(positions=positions, bottom=bottom)


def avoids_q(p: Permutation, q: int) -> bool:
    """True iff p avoids every pattern of Pat(q), equivalently Del_q(p) - 1 == Des_q(p)."""
    check_q(q)
    avoids = avoids_window(p.window, q)
    if settings.CHECK_INVARIANTS:
        shifted = [i - 1 for i in del_positions(p.window, q)]
        if avoids != (shifted == des_positions(p.window, q)):
            raise InvariantViolation(f"pattern scan and Des_{q} test disagree on {p}")
    return avoids


def h_q_brute(m: int, q: int) -> int:
    """Count the avoiders of Pat(q) in S_m by enumeration."""
    check_q(q)
    if m == 0:
        return 1
    return sum(1 for w in windows(m) if avoids_window(w, q))


def h_q_count(m: int, q: int, budget: Optional[int] = None) -> int:
    """
    h_q(m) = #Avoid_q(m).

    The recurrence and the (q-1)! b_q formula are always compared; the brute
    count joins them while m stays within the enumeration budget (at most 9).
    """
    check_q(q)
    if m < 0:
        raise InvalidParameterError(f"m must be non-negative, got {m}")
    by_recurrence = h_q_recurrence(m, q)
    by_formula = h_q_formula(m, q)
    if by_recurrence != by_formula:
        raise InvariantViolation(f"h_{q}({m}): recurrence {by_recurrence} != formula {by_formula}")
    if m <= min(9, settings.effective_budget(budget)):
        by_enumeration = h_q_brute(m, q)
        if by_enumeration != by_recurrence:
            raise InvariantViolation(
                f"h_{q}({m}): enumeration {by_enumeration} != recurrence {by_recurrence}"
            )
        logger.debug(f"h_{q}({m}) = {by_recurrence} confirmed by enumeration")
    return by_recurrence


def h_q_recurrence_table(q: int, upto: int) -> List[int]:
    """[h_q(0), ..., h_q(upto)] from the recurrence."""
    check_q(q)
    if upto < 0:
        raise InvalidParameterError(f"upto must be non-negative, got {upto}")
    return [h_q_recurrence(m, q) for m in range(upto + 1)]


def partition_to_avoider(blocks: Sequence[Sequence[int]]) -> Permutation:
    """
    Write every block increasing and order the blocks by decreasing minima.

    The result avoids Pat(1) and its left-to-right minima are the block minima.
    """
    cleaned = [sorted(block) for block in blocks if block]
    cleaned.sort(key=lambda block: block[0], reverse=True)
    return Permutation([v for block in cleaned for v in block])


def avoider_to_partition(p: Permutation) -> Tuple[Tuple[int, ...], ...]:
    """Cut p before every left-to-right minimum; blocks come back ordered by minima."""
    if not avoids_window(p.window, 1):
        raise InvalidParameterError(f"{p} does not avoid Pat(1)")
    blocks: List[List[int]] = []
    low = None
    for v in p.window:
        if low is None or v < low:
            blocks.append([v])
            low = v
        else:
            blocks[-1].append(v)
    return tuple(sorted((tuple(b) for b in blocks), key=lambda b: b[0]))
