"""
Canonical presentations in S_m along the principal flag S_1 < S_2 < ... < S_m.

Every permutation is uniquely w_1 w_2 ... w_{m-1} with w_j one of
1, s_j, s_j s_{j-1}, ..., s_j ... s_1. A factor is stored run-encoded as
(j, k): k <= j means the descending run s_j ... s_k, k = j + 1 means empty.
"""

import logging
from collections import Counter
from typing import Dict, Iterable, List, NamedTuple, Optional, Sequence, Tuple

from permstat.core.permutation import Permutation, Window, compose_windows
from permstat.exceptions import InvalidParameterError, WordParseError

logger = logging.getLogger(__name__)


class CanonicalFactor(NamedTuple):
    """The factor w_j = s_j s_{j-1} ... s_k at level j (empty when k = j + 1)."""

    j: int
    k: int

    @classmethod
    def checked(cls, j: int, k: int) -> "CanonicalFactor":
        if j < 1 or not 1 <= k <= j + 1:
            raise InvalidParameterError(f"invalid canonical factor (j={j}, k={k})")
        return cls(j, k)

    @property
    def is_empty(self) -> bool:
        return self.k == self.j + 1

    @property
    def length(self) -> int:
        return self.j - self.k + 1

    def letters(self) -> List[int]:
        """Generator indices of the run, left to right."""
        return list(range(self.j, self.k - 1, -1))

    def __str__(self) -> str:
        return " ".join(f"s{i}" for i in self.letters())


class CanonicalWord:
    """The canonical presentation of a permutation of the given degree."""

    __slots__ = ("degree", "factors")

    def __init__(self, degree: int, factors: Sequence[CanonicalFactor]):
        if degree < 1:
            raise InvalidParameterError(f"degree must be at least 1, got {degree}")
        factors = tuple(factors)
        if len(factors) != degree - 1:
            raise InvalidParameterError(
                f"degree {degree} needs {degree - 1} factors, got {len(factors)}"
            )
        for level, factor in enumerate(factors, start=1):
            if factor.j != level or not 1 <= factor.k <= level + 1:
                raise InvalidParameterError(f"factor {tuple(factor)} cannot sit at level {level}")
        self.degree = degree
        self.factors = factors

    @classmethod
    def from_starts(cls, degree: int, starts: Iterable[int]) -> "CanonicalWord":
        """Build from the start index k of every level, level 1 first."""
        return cls(degree, [CanonicalFactor(j, k) for j, k in enumerate(starts, start=1)])

    @classmethod
    def empty(cls, degree: int) -> "CanonicalWord":
        return cls.from_starts(degree, (j + 1 for j in range(1, degree)))

    @property
    def starts(self) -> Tuple[int, ...]:
        return tuple(f.k for f in self.factors)

    def letters(self) -> List[int]:
        """The flat word, left to right."""
        return [i for f in self.factors for i in f.letters()]

    def __len__(self) -> int:
        return sum(f.length for f in self.factors)

    def __eq__(self, other) -> bool:
        if not isinstance(other, CanonicalWord):
            return NotImplemented
        return self.degree == other.degree and self.factors == other.factors

    def __hash__(self) -> int:
        return hash((self.degree, self.factors))

    def __str__(self) -> str:
        return word_to_string(self)

    def __repr__(self) -> str:
        return f"CanonicalWord({self.degree}, {word_to_string(self)!r})"


# Raw helpers on start tuples; starts[j - 1] is k for level j.

def starts_of_window(w: Window) -> Tuple[int, ...]:
    """Peel values m, m-1, ..., 2 off the window, recording their positions."""
    current = list(w)
    starts = [0] * (len(w) - 1)
    for j in range(len(w) - 1, 0, -1):
        position = current.index(j + 1) + 1
        starts[j - 1] = position
        del current[position - 1]
    return tuple(starts)


def window_of_starts(starts: Sequence[int]) -> Window:
    """Right-multiplying by s_j ... s_k inserts the value j+1 at position k."""
    current = [1]
    for j, k in enumerate(starts, start=1):
        current.insert(k - 1, j + 1)
    return tuple(current)


def decompose(p: Permutation) -> CanonicalWord:
    """Return the canonical presentation of p."""
    return CanonicalWord.from_starts(p.degree, starts_of_window(p.window))


def recompose(word: CanonicalWord) -> Permutation:
    """Return the permutation w_1 w_2 ... w_{m-1}."""
    return Permutation(window_of_starts(word.starts), check=False)


def product_of_generators(letters: Iterable[int], degree: int) -> Permutation:
    """Multiply s_{i_1} s_{i_2} ... letter by letter (slow reference path)."""
    current: Window = tuple(range(1, degree + 1))
    for i in letters:
        if not 1 <= i <= degree - 1:
            raise InvalidParameterError(f"s_{i} does not exist in S_{degree}")
        s = list(range(1, degree + 1))
        s[i - 1], s[i] = s[i], s[i - 1]
        current = compose_windows(current, tuple(s))
    return Permutation(current, check=False)


def generator_multiset(word: CanonicalWord) -> Dict[int, int]:
    """How many times each s_i occurs in the word."""
    return dict(Counter(word.letters()))


def embed(p: Permutation, degree: int) -> Permutation:
    """View p inside S_degree by appending fixed points."""
    if degree < p.degree:
        raise InvalidParameterError(f"cannot embed degree {p.degree} into degree {degree}")
    return Permutation(p.window + tuple(range(p.degree + 1, degree + 1)), check=False)


# String form: levels joined by " | " from level 1 upward.

def word_to_string(word: CanonicalWord) -> str:
    return " | ".join(str(f) for f in word.factors)


def parse_run(segment: str, prefix: str = "s") -> Optional[Tuple[int, int]]:
    """
    Parse "s<j> s<j-1> ... s<k>" into (j, k); None for an empty segment.
    """
    tokens = segment.split()
    if not tokens:
        return None
    indices = []
    for token in tokens:
        if not token.startswith(prefix) or not token[len(prefix):].isdigit():
            raise WordParseError(f"malformed letter {token!r}")
        indices.append(int(token[len(prefix):]))
    top = indices[0]
    if top < 1 or indices != list(range(top, top - len(indices), -1)) or indices[-1] < 1:
        raise WordParseError(f"{segment.strip()!r} is not a descending run s_j s_(j-1) ... s_k")
    return top, indices[-1]


def place_segments(
    text: str, parse, degree: Optional[int], offset: int = 1
) -> Tuple[int, Dict[int, object]]:
    """
    Split on "|" and assign each non-empty segment to the level of its top
    letter. Levels must increase from segment to segment and a segment's level
    may not be lower than its position. A word with L levels has degree
    L + offset. Returns (degree, {level: parsed}).
    """
    segments = text.split("|")
    placed: Dict[int, object] = {}
    last_level = 0
    for position, segment in enumerate(segments, start=1):
        parsed = parse(segment)
        if parsed is None:
            continue
        level = parsed[0]
        if level < position or level <= last_level:
            raise WordParseError(f"run {segment.strip()!r} is out of place at segment {position}")
        placed[level] = parsed
        last_level = level
    inferred = max(len(segments), last_level) + offset
    if degree is None:
        degree = inferred
    elif degree < last_level + offset or (len(segments) > 1 and degree < len(segments) + offset):
        raise WordParseError(f"word {text!r} does not fit degree {degree}")
    return degree, placed


def string_to_word(text: str, degree: Optional[int] = None) -> CanonicalWord:
    """
    Parse the " | "-separated word form.

    Without an explicit degree the degree is inferred from the number of
    segments and the highest level, so "" parses as the identity of S_2.
    The identities of S_1 and S_2 both print as "", so callers that need
    degree 1 back must pass it.
    """
    degree, placed = place_segments(text, parse_run, degree)
    factors = []
    for j in range(1, degree):
        if j in placed:
            top, k = placed[j]
            factors.append(CanonicalFactor(j, k))
        else:
            factors.append(CanonicalFactor(j, j + 1))
    return CanonicalWord(degree, factors)
