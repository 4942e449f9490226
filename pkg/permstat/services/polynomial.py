"""
Sparse multivariate polynomials with non-negative integer coefficients.

Terms are stored in a dict keyed by exponent tuples of fixed arity; zero
coefficients are never stored. Variables print as t1, t2, ...
"""

import logging
from typing import Dict, Iterable, List, Mapping, Sequence, Tuple

from permstat.exceptions import InvalidParameterError

logger = logging.getLogger(__name__)

Exponent = Tuple[int, ...]


class Polynomial:
    """
    A polynomial in t1, ..., t_arity.

    Example: Polynomial(2, {(0, 0): 2, (1, 1): 4}) is 2 + 4*t1*t2.
    """

    __slots__ = ("arity", "terms")

    def __init__(self, arity: int, terms: Mapping[Exponent, int] = None):
        if arity < 0:
            raise InvalidParameterError(f"arity must be non-negative, got {arity}")
        self.arity = arity
        self.terms: Dict[Exponent, int] = {}
        for exponent, coefficient in (terms or {}).items():
            exponent = tuple(exponent)
            if len(exponent) != arity or any(e < 0 for e in exponent):
                raise InvalidParameterError(f"bad exponent {exponent} for arity {arity}")
            if coefficient < 0:
                raise InvalidParameterError(f"negative coefficient {coefficient} at {exponent}")
            if coefficient:
                self.terms[exponent] = self.terms.get(exponent, 0) + coefficient
        self.terms = {e: c for e, c in self.terms.items() if c}

    @classmethod
    def constant(cls, arity: int, value: int) -> "Polynomial":
        return cls(arity, {(0,) * arity: value})

    @classmethod
    def variable(cls, arity: int, index: int) -> "Polynomial":
        """The monomial t_index (1-indexed)."""
        if not 1 <= index <= arity:
            raise InvalidParameterError(f"t{index} does not exist in arity {arity}")
        exponent = [0] * arity
        exponent[index - 1] = 1
        return cls(arity, {tuple(exponent): 1})

    @classmethod
    def from_counts(cls, arity: int, counts: Mapping[Exponent, int]) -> "Polynomial":
        """Build from an exponent -> multiplicity tally such as a Counter."""
        return cls(arity, dict(counts))

    def _check_arity(self, other: "Polynomial") -> None:
        if self.arity != other.arity:
            raise InvalidParameterError(f"arity {self.arity} does not match arity {other.arity}")

    def __add__(self, other):
        if isinstance(other, int):
            other = Polynomial.constant(self.arity, other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        self._check_arity(other)
        result = dict(self.terms)
        for exponent, coefficient in other.terms.items():
            result[exponent] = result.get(exponent, 0) + coefficient
        return Polynomial(self.arity, result)

    __radd__ = __add__

    def __mul__(self, other):
        if isinstance(other, int):
            return Polynomial(self.arity, {e: c * other for e, c in self.terms.items()})
        if not isinstance(other, Polynomial):
            return NotImplemented
        self._check_arity(other)
        # (sum_j a_j)(sum_k b_k) = sum_{j,k} a_j b_k
        result: Dict[Exponent, int] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                result[e] = result.get(e, 0) + c1 * c2
        return Polynomial(self.arity, result)

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = Polynomial.constant(self.arity, other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.arity == other.arity and self.terms == other.terms

    def __hash__(self) -> int:
        return hash((self.arity, frozenset(self.terms.items())))

    def is_zero(self) -> bool:
        return not self.terms

    def evaluate(self, values: Sequence[int]) -> int:
        if len(values) != self.arity:
            raise InvalidParameterError(f"need {self.arity} values, got {len(values)}")
        total = 0
        for exponent, coefficient in self.terms.items():
            term = coefficient
            for v, e in zip(values, exponent):
                term *= v ** e
            total += term
        return total

    def at_ones(self) -> int:
        """Sum of the coefficients, the size of the generating subset."""
        return sum(self.terms.values())

    def set_variable_to_one(self, index: int) -> "Polynomial":
        """Drop t_index, keeping the arity."""
        if not 1 <= index <= self.arity:
            raise InvalidParameterError(f"t{index} does not exist in arity {self.arity}")
        result: Dict[Exponent, int] = {}
        for exponent, coefficient in self.terms.items():
            e = exponent[: index - 1] + (0,) + exponent[index:]
            result[e] = result.get(e, 0) + coefficient
        return Polynomial(self.arity, result)

    def scale_variable(self, index: int, factor: int) -> "Polynomial":
        """Substitute t_index -> factor * t_index."""
        if not 1 <= index <= self.arity:
            raise InvalidParameterError(f"t{index} does not exist in arity {self.arity}")
        return Polynomial(
            self.arity, {e: c * factor ** e[index - 1] for e, c in self.terms.items()}
        )

    def sorted_terms(self) -> List[Tuple[Exponent, int]]:
        """Graded order: total degree first, then higher powers of t1 before t2."""
        return sorted(self.terms.items(), key=lambda item: (sum(item[0]), [-e for e in item[0]]))

    def to_text(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for exponent, coefficient in self.sorted_terms():
            factors = [
                f"t{i}" if e == 1 else f"t{i}^{e}"
                for i, e in enumerate(exponent, start=1)
                if e
            ]
            if not factors:
                parts.append(str(coefficient))
            elif coefficient == 1:
                parts.append("*".join(factors))
            else:
                parts.append("*".join([str(coefficient), *factors]))
        return " + ".join(parts)

    def to_json(self) -> List[dict]:
        """[{"exp": [...], "coef": "decimal"}] in the text order."""
        return [{"exp": list(e), "coef": str(c)} for e, c in self.sorted_terms()]

    def __str__(self) -> str:
        return self.to_text()

    def __repr__(self) -> str:
        return f"Polynomial({self.arity}, {self.to_text()!r})"


def product(factors: Iterable[Polynomial], arity: int) -> Polynomial:
    result = Polynomial.constant(arity, 1)
    for factor in factors:
        result = result * factor
    return result
