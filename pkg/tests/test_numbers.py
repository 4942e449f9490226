"""
Tests for the exact number sequences.
"""

from math import factorial

import pytest

from permstat.exceptions import InvalidParameterError
from permstat.services.numbers import (
    bell_q,
    bell_q_recurrence,
    c_q,
    colored_set_partitions,
    dobinski_q,
    dobinski_relative_error,
    dobinski_terms,
    h_q_formula,
    h_q_recurrence,
    number_of_kind,
    set_partitions,
    stirling1_unsigned,
    stirling2,
)


class TestStirling:
    """Both kinds of Stirling numbers."""

    def test_second_kind(self):
        assert stirling2(4, 2) == 7
        assert stirling2(0, 0) == 1
        assert stirling2(3, 5) == 0
        assert [stirling2(5, k) for k in range(6)] == [0, 1, 15, 25, 10, 1]

    def test_first_kind(self):
        assert stirling1_unsigned(3, 2) == 3
        assert [stirling1_unsigned(4, k) for k in range(5)] == [0, 6, 11, 6, 1]

    @pytest.mark.parametrize("n", range(0, 9))
    def test_first_kind_counts_permutations(self, n):
        assert sum(stirling1_unsigned(n, k) for k in range(n + 1)) == factorial(n)

    def test_rejects_negative(self):
        with pytest.raises(InvalidParameterError):
            stirling2(-1, 0)


class TestBell:
    """q-Bell numbers and their q-colored set partitions."""

    def test_bell(self):
        assert [bell_q(n, 1) for n in range(9)] == [1, 1, 2, 5, 15, 52, 203, 877, 4140]

    def test_two_colored(self):
        assert [bell_q(n, 2) for n in range(6)] == [1, 2, 6, 22, 94, 454]

    @pytest.mark.parametrize("q", [1, 2, 3, 5])
    def test_recurrence_matches_sum(self, q):
        for n in range(0, 15):
            assert bell_q_recurrence(n, q) == bell_q(n, q)

    @pytest.mark.parametrize("n,q", [(n, q) for n in range(0, 6) for q in (1, 2, 3)])
    def test_colored_partitions_are_counted(self, n, q):
        partitions = list(colored_set_partitions(n, q))
        assert len(partitions) == len(set(partitions)) == bell_q(n, q)

    def test_set_partitions(self):
        assert list(set_partitions(3)) == [
            ((1, 2, 3),),
            ((1, 2), (3,)),
            ((1, 3), (2,)),
            ((1,), (2, 3)),
            ((1,), (2,), (3,)),
        ]
        assert list(set_partitions(0)) == [()]

    def test_bad_q(self):
        with pytest.raises(InvalidParameterError):
            bell_q(3, 0)


class TestDobinski:
    """The truncated series converges to b_q(n)."""

    @pytest.mark.parametrize("n,q", [(n, q) for n in range(0, 11) for q in (1, 2, 3)])
    def test_within_tolerance(self, n, q):
        assert dobinski_relative_error(n, q, dobinski_terms(n, q)) < 1e-9

    def test_more_terms_get_closer(self):
        coarse = abs(dobinski_q(6, 2, 10) - bell_q(6, 2))
        fine = abs(dobinski_q(6, 2, 40) - bell_q(6, 2))
        assert fine < coarse

    def test_needs_terms(self):
        with pytest.raises(InvalidParameterError):
            dobinski_q(3, 2, 0)


class TestCycleCounts:
    """c_q(n, k) = q^k (q-1)! c(n, k)."""

    def test_values(self):
        assert c_q(2, 1, 2) == 2
        assert c_q(2, 2, 2) == 4
        assert c_q(3, 2, 1) == 3

    @pytest.mark.parametrize("n,q", [(n, q) for n in range(1, 7) for q in (1, 2, 3)])
    def test_sum_is_group_order(self, n, q):
        assert sum(c_q(n, k, q) for k in range(1, n + 1)) == factorial(n + q - 1)

    @pytest.mark.parametrize("n,k", [(0, 0), (3, 0), (3, 4)])
    def test_range(self, n, k):
        with pytest.raises(InvalidParameterError):
            c_q(n, k, 2)


class TestAvoiderFormula:
    """h_q(m) recurrence against the closed form."""

    @pytest.mark.parametrize("q", [1, 2, 3, 4])
    def test_agree(self, q):
        for m in range(0, 14):
            assert h_q_recurrence(m, q) == h_q_formula(m, q)

    @pytest.mark.parametrize("q", [2, 3, 4])
    def test_small_degrees_are_factorials(self, q):
        for m in range(0, q + 1):
            assert h_q_recurrence(m, q) == factorial(m)


class TestNumberOfKind:
    """The dispatcher shared by the CLI and the API."""

    @pytest.mark.parametrize(
        "kind,n,k,q,expected",
        [
            ("bellq", 3, None, 2, 22),
            ("stirling1", 3, 2, 1, 3),
            ("stirling2", 4, 2, 1, 7),
            ("cq", 2, 2, 2, 4),
            ("h", 4, None, 2, 22),
        ],
    )
    def test_dispatch(self, kind, n, k, q, expected):
        assert number_of_kind(kind, n, k, q) == expected

    def test_unknown_kind(self):
        with pytest.raises(InvalidParameterError):
            number_of_kind("catalan", 3)

    def test_missing_k(self):
        with pytest.raises(InvalidParameterError):
            number_of_kind("stirling2", 4)
