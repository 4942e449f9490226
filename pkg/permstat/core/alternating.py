"""
The alternating group A_{n+1} through the generators a_i = s_1 s_{i+1}.

Every even permutation of degree n+1 is uniquely v_1 v_2 ... v_{n-1} with
v_j one of 1, a_j, a_j a_{j-1}, ..., a_j ... a_2 a_1, a_j ... a_2 a_1^{-1}.
A factor is stored as (j, k, inverse): k = j + 1 is the empty factor,
2 <= k <= j the run a_j ... a_k, and k = 1 the run ending in a_1 or a_1^{-1}.
"""

import logging
from functools import lru_cache
from typing import Dict, Iterator, List, NamedTuple, Optional, Sequence, Set, Tuple

from permstat.core.canonical import place_segments, window_of_starts
from permstat.core.permutation import (
    Permutation,
    Window,
    compose_windows,
    inverse_window,
    inversions_of_window,
    windows,
)
from permstat.exceptions import InvalidParameterError, ParityError, WordParseError
from permstat.stats.covering import fiber

logger = logging.getLogger(__name__)


def _identity(degree: int) -> Window:
    return tuple(range(1, degree + 1))


def _s_window(i: int, degree: int) -> Window:
    values = list(range(1, degree + 1))
    values[i - 1], values[i] = values[i], values[i - 1]
    return tuple(values)


@lru_cache(maxsize=None)
def a_window(i: int, degree: int) -> Window:
    """Window of a_i = s_1 s_{i+1} in degree `degree`."""
    if not 1 <= i <= degree - 2:
        raise InvalidParameterError(f"a_{i} does not exist in A_{degree}")
    return compose_windows(_s_window(1, degree), _s_window(i + 1, degree))


def a_gen(i: int, degree: int) -> Permutation:
    return Permutation(a_window(i, degree), check=False)


def is_even_window(w: Window) -> bool:
    return inversions_of_window(w) % 2 == 0


def even_windows(degree: int, first: Optional[int] = None) -> Iterator[Window]:
    """The windows of A_degree in lexicographic order."""
    for w in windows(degree, first):
        if is_even_window(w):
            yield w


def _require_even(p: Permutation) -> None:
    if not is_even_window(p.window):
        raise ParityError(f"{p} is odd; the alternating group has only even permutations")


class ACanonicalFactor(NamedTuple):
    """The factor v_j at level j; see the module docstring for the encoding."""

    j: int
    k: int
    inverse: bool = False

    @classmethod
    def checked(cls, j: int, k: int, inverse: bool = False) -> "ACanonicalFactor":
        if j < 1 or not 1 <= k <= j + 1 or (inverse and k != 1):
            raise InvalidParameterError(f"invalid A-factor (j={j}, k={k}, inverse={inverse})")
        return cls(j, k, inverse)

    @property
    def is_empty(self) -> bool:
        return self.k == self.j + 1

    @property
    def length(self) -> int:
        """a_1^{-1} counts as one letter."""
        return self.j - self.k + 1

    def letters(self) -> List[Tuple[int, int]]:
        """(index, exponent) pairs, left to right."""
        result = [(i, 1) for i in range(self.j, self.k - 1, -1)]
        if self.inverse:
            result[-1] = (1, -1)
        return result

    def window(self, degree: int) -> Window:
        current = _identity(degree)
        for i, exponent in self.letters():
            letter = a_window(i, degree)
            if exponent < 0:
                letter = inverse_window(letter)
            current = compose_windows(current, letter)
        return current

    def __str__(self) -> str:
        return " ".join(f"a{i}" if e > 0 else f"a{i}^-1" for i, e in self.letters())


def level_options(j: int) -> List[ACanonicalFactor]:
    """The j + 2 elements of R^A_j."""
    options = [ACanonicalFactor(j, j + 1)]
    options.extend(ACanonicalFactor(j, k) for k in range(j, 0, -1))
    options.append(ACanonicalFactor(j, 1, True))
    return options


@lru_cache(maxsize=None)
def _candidates(j: int) -> Tuple[Tuple[ACanonicalFactor, Window], ...]:
    degree = j + 2
    return tuple((option, inverse_window(option.window(degree))) for option in level_options(j))


class ACanonicalWord:
    """The A-canonical presentation of an even permutation of the given degree."""

    __slots__ = ("degree", "factors")

    def __init__(self, degree: int, factors: Sequence[ACanonicalFactor]):
        if degree < 1:
            raise InvalidParameterError(f"degree must be at least 1, got {degree}")
        factors = tuple(factors)
        if len(factors) != max(degree - 2, 0):
            raise InvalidParameterError(
                f"degree {degree} needs {max(degree - 2, 0)} A-factors, got {len(factors)}"
            )
        for level, factor in enumerate(factors, start=1):
            ACanonicalFactor.checked(*factor)
            if factor.j != level:
                raise InvalidParameterError(f"A-factor {tuple(factor)} cannot sit at level {level}")
        self.degree = degree
        self.factors = factors

    def __len__(self) -> int:
        return sum(f.length for f in self.factors)

    def __eq__(self, other) -> bool:
        if not isinstance(other, ACanonicalWord):
            return NotImplemented
        return self.degree == other.degree and self.factors == other.factors

    def __hash__(self) -> int:
        return hash((self.degree, self.factors))

    def __str__(self) -> str:
        return a_word_to_string(self)

    def __repr__(self) -> str:
        return f"ACanonicalWord({self.degree}, {a_word_to_string(self)!r})"


def _decompose_window(w: Window) -> Tuple[ACanonicalFactor, ...]:
    current = w
    factors: List[ACanonicalFactor] = []
    for j in range(len(w) - 2, 0, -1):
        for option, r_inverse in _candidates(j):
            peeled = compose_windows(current, r_inverse)
            if peeled[-1] == j + 2:
                factors.append(option)
                current = peeled[:-1]
                break
        else:
            raise ParityError(f"no A-factor at level {j} peels {list(w)}")
    return tuple(reversed(factors))


def a_length_of_window(w: Window) -> int:
    return sum(f.length for f in _decompose_window(w))


def a_del_of_window(w: Window) -> int:
    return sum(1 for f in _decompose_window(w) if f.k == 1)


def a_decompose(v: Permutation) -> ACanonicalWord:
    """Peel the top level by testing each of its candidates r for v r^{-1} fixing the top value."""
    _require_even(v)
    return ACanonicalWord(v.degree, _decompose_window(v.window))


def a_recompose(word: ACanonicalWord) -> Permutation:
    current = _identity(word.degree)
    for factor in word.factors:
        local = factor.window(factor.j + 2)
        current = compose_windows(current, local + tuple(range(factor.j + 3, word.degree + 1)))
    return Permutation(current, check=False)


# Statistics. Every operation insists on an even input.

def ell_A(v: Permutation) -> int:
    """Letters in the A-canonical word; a_1^{-1} counts as one."""
    return len(a_decompose(v))


def del_A(v: Permutation) -> int:
    """Occurrences of a_1 or a_1^{-1} in the A-canonical word."""
    _require_even(v)
    return a_del_of_window(v.window)


def des_positions_A(w: Window) -> List[int]:
    """
    i is an A-descent when b_{i+1} > b_{i+2}, or when b_{i+1} < b_{i+2} and
    every one of b_1, ..., b_i exceeds b_{i+2}.
    """
    result = []
    for i in range(1, len(w) - 1):
        nxt, after = w[i], w[i + 1]
        if nxt > after or all(b > after for b in w[:i]):
            result.append(i)
    return result


def des_set_A(v: Permutation) -> Set[int]:
    _require_even(v)
    return set(des_positions_A(v.window))


def des_set_A_by_length(v: Permutation) -> Set[int]:
    """{i : ell_A(v a_i) <= ell_A(v)}, the length definition of A-descents."""
    _require_even(v)
    base = a_length_of_window(v.window)
    result = set()
    for i in range(1, v.degree - 1):
        moved = compose_windows(v.window, a_window(i, v.degree))
        if a_length_of_window(moved) <= base:
            result.add(i)
    return result


def del_set_A(v: Permutation) -> Set[int]:
    """Positions i >= 2 with at most one smaller entry left of i + 1."""
    _require_even(v)
    w = v.window
    return {
        i - 1
        for i in range(3, len(w) + 1)
        if sum(1 for b in w[: i - 1] if b < w[i - 1]) <= 1
    }


def maj_A(v: Permutation) -> int:
    return sum(des_set_A(v))


def rmaj_A(v: Permutation) -> int:
    """Sum of (n - i) over Des_A(v), v of degree n + 1."""
    n = v.degree - 1
    return sum(n - i for i in des_set_A(v))


# The maps f (on A) and g_q.

def restrict_f(v: Permutation) -> Permutation:
    """a_i -> s_i and a_1^{-1} -> s_1 on the A-canonical word; lands in S_{n}."""
    _require_even(v)
    if v.degree < 2:
        raise InvalidParameterError("f needs degree at least 2")
    return Permutation(restrict_f_window(v.window), check=False)


def restrict_f_window(w: Window) -> Window:
    """Read the S-canonical starts straight off the A-canonical factors."""
    return window_of_starts([f.k for f in _decompose_window(w)])


def g_fiber(base: Permutation, q: int) -> List[Window]:
    """Even members of the f_q-fiber of base, that is the fiber of g_q."""
    return [tuple(w) for w in fiber(base, q).members if is_even_window(tuple(w))]


def relations_hold(degree: int) -> bool:
    """
    a_1^3 = 1, a_i^2 = 1 for i > 1, (a_i a_{i+1})^3 = 1 and (a_i a_j)^2 = 1 for |i - j| > 1.
    """
    identity = _identity(degree)

    def power(w: Window, e: int) -> Window:
        result = identity
        for _ in range(e):
            result = compose_windows(result, w)
        return result

    count = degree - 2
    for i in range(1, count + 1):
        a = a_window(i, degree)
        if power(a, 3 if i == 1 else 2) != identity:
            return False
        for j in range(i + 1, count + 1):
            pair = compose_windows(a, a_window(j, degree))
            if power(pair, 3 if j == i + 1 else 2) != identity:
                logger.debug(f"relation fails for a_{i} a_{j} in degree {degree}")
                return False
    return True


# String form mirrors the S form: "a2 a1^-1 | a3".

def a_word_to_string(word: ACanonicalWord) -> str:
    return " | ".join(str(f) for f in word.factors)


def parse_a_run(segment: str) -> Optional[Tuple[int, int, bool]]:
    tokens = segment.split()
    if not tokens:
        return None
    inverse = tokens[-1] == "a1^-1"
    if inverse:
        tokens[-1] = "a1"
    indices = []
    for token in tokens:
        if not token.startswith("a") or not token[1:].isdigit():
            raise WordParseError(f"malformed letter {token!r}")
        indices.append(int(token[1:]))
    top = indices[0]
    if top < 1 or indices != list(range(top, top - len(indices), -1)):
        raise WordParseError(f"{segment.strip()!r} is not a descending run a_j ... a_k")
    return top, indices[-1], inverse


def string_to_a_word(text: str, degree: Optional[int] = None) -> ACanonicalWord:
    degree, placed = place_segments(text, parse_a_run, degree, offset=2)
    factors = []
    for j in range(1, degree - 1):
        if j in placed:
            top, k, inverse = placed[j]
            factors.append(ACanonicalFactor(j, k, inverse))
        else:
            factors.append(ACanonicalFactor(j, j + 1))
    return ACanonicalWord(degree, factors)


def ell_A_distribution(degree: int) -> Dict[int, int]:
    """How many even permutations of the degree have each A-length."""
    tally: Dict[int, int] = {}
    for w in even_windows(degree):
        length = a_length_of_window(w)
        tally[length] = tally.get(length, 0) + 1
    return tally
