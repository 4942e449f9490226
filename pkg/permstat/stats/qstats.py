"""
q-statistics of permutations: ell_q, inv_q, Del_q, del_q, Des_q, des_q, maj_q, rmaj_q.

Throughout, m is the degree of the permutation and q a positive integer.
Del_q lives in [q+1, m] and Des_q in [q, m-1].
"""

import logging
from typing import List, Set

from permstat.config import settings
from permstat.core.canonical import starts_of_window
from permstat.core.permutation import Permutation, Window, descent_positions
from permstat.exceptions import InvalidParameterError, InvariantViolation
from permstat.models.records import StatRecord

logger = logging.getLogger(__name__)


def check_q(q: int) -> None:
    if not isinstance(q, int) or q < 1:
        raise InvalidParameterError(f"q must be a positive integer, got {q!r}")


# Window-level kernels. The sweeps call these directly on raw tuples.

def inv_q_of_window(w: Window, q: int) -> int:
    total = 0
    for i in range(q + 1, len(w) + 1):
        value = w[i - 1]
        larger = sum(1 for j in range(i - 1) if w[j] > value)
        total += min(i - q, larger)
    return total


def del_positions(w: Window, q: int) -> List[int]:
    """Positions i >= q+1 with at most q-1 smaller entries to their left."""
    result = []
    for i in range(q + 1, len(w) + 1):
        value = w[i - 1]
        smaller = 0
        for j in range(i - 1):
            if w[j] < value:
                smaller += 1
                if smaller >= q:
                    break
        if smaller <= q - 1:
            result.append(i)
    return result


def des_positions(w: Window, q: int) -> List[int]:
    """(Des(w) restricted to [q, m-1]) united with (Del_q(w) - 1)."""
    positions = {i for i in descent_positions(w) if i >= q}
    positions.update(i - 1 for i in del_positions(w, q))
    return sorted(positions)


def ell_q_of_window(w: Window, q: int) -> int:
    """Letters s_i with i >= q in the canonical word."""
    total = 0
    for j, k in enumerate(starts_of_window(w), start=1):
        if k <= j:
            total += max(0, j - max(k, q) + 1)
    return total


def del_q_of_word(w: Window, q: int) -> int:
    """Occurrences of s_q in the canonical word."""
    return sum(1 for j, k in enumerate(starts_of_window(w), start=1) if k <= q <= j)


def rmaj_of_positions(positions, m: int) -> int:
    return sum(m - i for i in positions)


# Public operations on Permutation values.

def inv_q(p: Permutation, q: int) -> int:
    """Sum over i > q of min(i - q, #{j < i : p(j) > p(i)}); 0 when m <= q."""
    check_q(q)
    return inv_q_of_window(p.window, q)


def ell_q(p: Permutation, q: int) -> int:
    check_q(q)
    return ell_q_of_window(p.window, q)


def del_set_q(p: Permutation, q: int) -> Set[int]:
    check_q(q)
    return set(del_positions(p.window, q))


def del_q(p: Permutation, q: int) -> int:
    """
    Number of s_q letters in the canonical word, computed as |Del_q(p)|.
    """
    check_q(q)
    count = len(del_positions(p.window, q))
    if settings.CHECK_INVARIANTS:
        from_word = del_q_of_word(p.window, q)
        if from_word != count:
            raise InvariantViolation(
                f"del_{q}({p}) = {count} but the canonical word has {from_word} letters s_{q}"
            )
    return count


def des_set_q(p: Permutation, q: int) -> Set[int]:
    check_q(q)
    return set(des_positions(p.window, q))


def des_q(p: Permutation, q: int) -> int:
    return len(des_set_q(p, q))


def maj_q(p: Permutation, q: int) -> int:
    return sum(des_set_q(p, q))


def rmaj_q(p: Permutation, q: int) -> int:
    """Sum of (m - i) over Des_q(p), m the degree of p."""
    return rmaj_of_positions(des_set_q(p, q), p.degree)


def stat_record(p: Permutation, q: int) -> StatRecord:
    """Collect every q-statistic of p; the record validates its own invariants."""
    check_q(q)
    w = p.window
    dels = del_positions(w, q)
    dess = des_positions(w, q)
    if settings.CHECK_INVARIANTS and len(dels) != del_q_of_word(w, q):
        raise InvariantViolation(f"|Del_{q}| disagrees with the canonical word of {p}")
    return StatRecord(
        q=q,
        degree=p.degree,
        window=list(w),
        ell_q=ell_q_of_window(w, q),
        inv_q=inv_q_of_window(w, q),
        del_q=len(dels),
        des_q=len(dess),
        maj_q=sum(dess),
        rmaj_q=rmaj_of_positions(dess, p.degree),
        Del_q=dels,
        Des_q=dess,
    )

