"""
Permutations in one-line (window) notation.

Positions and values are 1-indexed in every public API. Composition follows
(f*g)(i) = f(g(i)): the right factor acts first.
"""

import itertools
import re
from typing import Iterable, Iterator, List, Optional, Set, Tuple

from permstat.exceptions import DegreeMismatchError, InvalidParameterError, NotAPermutationError

Window = Tuple[int, ...]

_SEPARATORS = re.compile(r"[\s,]+")


def is_window(values: Iterable[int]) -> bool:
    """True when values is a rearrangement of 1..m with m >= 1."""
    values = tuple(values)
    return len(values) >= 1 and sorted(values) == list(range(1, len(values) + 1))


class Permutation:
    """
    An immutable permutation of {1, ..., m} stored as its window [p(1), ..., p(m)].
    """

    __slots__ = ("_window",)

    def __init__(self, window: Iterable[int], check: bool = True):
        """
        Create a permutation from its one-line notation.

        Args:
            window: The values p(1), ..., p(m)
            check: Verify that window is a rearrangement of 1..m
        """
        values = tuple(int(v) for v in window)
        if check and not is_window(values):
            raise NotAPermutationError(f"not a permutation: {list(values)}")
        object.__setattr__(self, "_window", values)

    def __setattr__(self, name, value):
        raise AttributeError("Permutation is immutable")

    @classmethod
    def identity(cls, degree: int) -> "Permutation":
        """The identity of S_degree."""
        if degree < 1:
            raise InvalidParameterError(f"degree must be at least 1, got {degree}")
        return cls(range(1, degree + 1), check=False)

    @classmethod
    def generator(cls, i: int, degree: int) -> "Permutation":
        """The adjacent transposition s_i = (i, i+1) in S_degree."""
        if not 1 <= i <= degree - 1:
            raise InvalidParameterError(f"s_{i} does not exist in S_{degree}")
        values = list(range(1, degree + 1))
        values[i - 1], values[i] = values[i], values[i - 1]
        return cls(values, check=False)

    @classmethod
    def parse(cls, text: str) -> "Permutation":
        """Parse space- or comma-separated values, e.g. "7 8 6 5 2 9 4 1 3"."""
        tokens = [t for t in _SEPARATORS.split(text.strip().strip("[]")) if t]
        try:
            values = [int(t) for t in tokens]
        except ValueError:
            raise NotAPermutationError(f"not a permutation: {text!r}")
        return cls(values)

    @property
    def window(self) -> Window:
        return self._window

    @property
    def degree(self) -> int:
        return len(self._window)

    def __call__(self, i: int) -> int:
        return self._window[i - 1]

    def __len__(self) -> int:
        return len(self._window)

    def __iter__(self) -> Iterator[int]:
        return iter(self._window)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Permutation):
            return NotImplemented
        return self._window == other._window

    def __lt__(self, other: "Permutation") -> bool:
        return self._window < other._window

    def __hash__(self) -> int:
        return hash(self._window)

    def __mul__(self, other: "Permutation") -> "Permutation":
        return compose(self, other)

    def __str__(self) -> str:
        return " ".join(str(v) for v in self._window)

    def __repr__(self) -> str:
        return f"Permutation([{', '.join(str(v) for v in self._window)}])"

    def is_identity(self) -> bool:
        return all(v == i for i, v in enumerate(self._window, start=1))

    def is_even(self) -> bool:
        return inversion_count(self) % 2 == 0


# Raw window helpers, used directly by the group sweeps.

def compose_windows(f: Window, g: Window) -> Window:
    return tuple(f[x - 1] for x in g)


def inverse_window(w: Window) -> Window:
    result = [0] * len(w)
    for position, value in enumerate(w, start=1):
        result[value - 1] = position
    return tuple(result)


def descent_positions(w: Window) -> List[int]:
    return [i for i in range(1, len(w)) if w[i - 1] > w[i]]


def inversions_of_window(w: Window) -> int:
    m = len(w)
    return sum(1 for i in range(m) for j in range(i + 1, m) if w[i] > w[j])


def windows(degree: int, first: Optional[int] = None) -> Iterator[Window]:
    """
    All windows of S_degree in lexicographic order.

    When first is given only the windows starting with that value are
    produced (one shard of the group).
    """
    if first is None:
        yield from itertools.permutations(range(1, degree + 1))
        return
    rest = [v for v in range(1, degree + 1) if v != first]
    for tail in itertools.permutations(rest):
        yield (first,) + tail


# Public operations.

def compose(f: Permutation, g: Permutation) -> Permutation:
    """Return f*g, the permutation i -> f(g(i))."""
    if f.degree != g.degree:
        raise DegreeMismatchError(f"cannot compose degree {f.degree} with degree {g.degree}")
    return Permutation(compose_windows(f.window, g.window), check=False)


def inverse(p: Permutation) -> Permutation:
    return Permutation(inverse_window(p.window), check=False)


def descent_set(p: Permutation) -> Set[int]:
    """Positions i with p(i) > p(i+1)."""
    return set(descent_positions(p.window))


def inversion_count(p: Permutation) -> int:
    """Number of pairs i < j with p(i) > p(j)."""
    return inversions_of_window(p.window)


def all_permutations(degree: int) -> Iterator[Permutation]:
    """Every element of S_degree, lexicographic on windows."""
    for w in windows(degree):
        yield Permutation(w, check=False)
