"""
The covering maps f_q : S_{n+q-1} -> S_n and their fibers.

f_q erases the letters s_1, ..., s_{q-1} from the canonical word and shifts
every remaining index down by q - 1. The erased-and-shifted word is again
canonical, so the image is read off level by level.
"""

import itertools
import logging
from math import factorial
from typing import List, Literal, Sequence, Tuple

from permstat.config import settings
from permstat.core.canonical import (
    CanonicalWord,
    decompose,
    starts_of_window,
    window_of_starts,
)
from permstat.core.permutation import Permutation, Window, windows
from permstat.exceptions import InvalidParameterError, InvariantViolation
from permstat.models.records import FiberIndex
from permstat.stats.qstats import check_q, del_positions

logger = logging.getLogger(__name__)


def image_starts(starts: Sequence[int], q: int) -> Tuple[int, ...]:
    """
    Map the level starts of a word in S_m to those of its f_q image in S_{m-q+1}.

    Level j >= q becomes level j - q + 1; a run s_j ... s_k keeps the letters
    with index >= q, so its new start is max(k, q) - q + 1.
    """
    result = []
    for j in range(q, len(starts) + 1):
        k = starts[j - 1]
        result.append(max(k, q) - q + 1)
    return tuple(result)


def f_q_window(w: Window, q: int) -> Window:
    if len(w) < q:
        raise InvalidParameterError(f"f_{q} needs degree at least {q}, got {len(w)}")
    return window_of_starts(image_starts(starts_of_window(w), q))


def f_q(p: Permutation, q: int) -> Permutation:
    """Apply the covering map f_q to p in S_{n+q-1}, landing in S_n."""
    check_q(q)
    image = Permutation(f_q_window(p.window, q), check=False)
    if settings.CHECK_INVARIANTS:
        expected = word_image(p, q)
        if decompose(image) != expected:
            raise InvariantViolation(f"f_{q}({p}) is not read off the shifted word")
    return image


def fiber_size(base: Permutation, q: int) -> int:
    """q! * q^{del_1(base)}."""
    check_q(q)
    return factorial(q) * q ** len(del_positions(base.window, 1))


def _scan_fiber(base: Permutation, q: int) -> List[Window]:
    m = base.degree + q - 1
    target = base.window
    return [w for w in windows(m) if f_q_window(w, q) == target]


def _splice_fiber(base: Permutation, q: int) -> List[Window]:
    """
    Build the fiber level by level: levels 1..q-1 are free (a copy of S_q),
    a base level carrying s_1 lifts to q runs, every other level lifts uniquely.
    """
    base_starts = starts_of_window(base.window)
    choices: List[range] = [range(1, j + 2) for j in range(1, q)]
    for j_base, k_base in enumerate(base_starts, start=1):
        j = j_base + q - 1
        if k_base == j_base + 1:
            choices.append(range(j + 1, j + 2))
        elif k_base >= 2:
            choices.append(range(k_base + q - 1, k_base + q))
        else:
            choices.append(range(1, q + 1))
    members = [window_of_starts(starts) for starts in itertools.product(*choices)]
    return sorted(members)


def fiber(base: Permutation, q: int, method: Literal["scan", "splice"] = "splice") -> FiberIndex:
    """
    All p in S_{n+q-1} with f_q(p) == base, in lexicographic order.

    "scan" filters the whole ambient group; "splice" constructs the members
    directly from the word of base. Both return the same list.
    """
    check_q(q)
    if method == "scan":
        members = _scan_fiber(base, q)
    elif method == "splice":
        members = _splice_fiber(base, q)
    else:
        raise InvalidParameterError(f"unknown fiber method {method!r}")
    logger.info(f"fiber of {base} under f_{q} has {len(members)} members ({method})")
    try:
        return FiberIndex(
            base=list(base.window),
            q=q,
            expected_size=fiber_size(base, q),
            members=[list(w) for w in members],
        )
    except ValueError as e:
        raise InvariantViolation(str(e))


def compose_maps_check(q1: int, q2: int, m: int) -> bool:
    """True iff f_{q1}(f_{q2}(p)) == f_{q1+q2-1}(p) for every p in S_m."""
    check_q(q1)
    check_q(q2)
    if m < q1 + q2 - 1:
        raise InvalidParameterError(f"need m >= q1 + q2 - 1, got m={m}")
    q = q1 + q2 - 1
    return all(f_q_window(f_q_window(w, q2), q1) == f_q_window(w, q) for w in windows(m))


def parabolic_elements(q: int, degree: int) -> List[Window]:
    """The subgroup generated by s_1, ..., s_{q-1} inside S_degree."""
    tail = tuple(range(q + 1, degree + 1))
    return [head + tail for head in itertools.permutations(range(1, min(q, degree) + 1))]


def parabolic_generators(q: int, degree: int) -> List[Window]:
    """s_1, ..., s_{q-1} in S_degree; they generate the subgroup above."""
    return [Permutation.generator(i, degree).window for i in range(1, min(q, degree))]


def word_image(p: Permutation, q: int) -> CanonicalWord:
    """The canonical word of f_q(p), built without recomposing."""
    check_q(q)
    return CanonicalWord.from_starts(p.degree - q + 1, image_starts(starts_of_window(p.window), q))

