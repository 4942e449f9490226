"""
Tests for the verification registry.

Sizes stay small here; scripts/verify_all.py runs the full ranges.
"""

from math import factorial

import pytest

from permstat.exceptions import BudgetExceededError, InvalidParameterError, UnknownTheoremError
from permstat.services import verification
from permstat.services.distributions import distribution
from permstat.services.verification import THEOREMS, verify

SMALL = [(n, q) for q in (1, 2, 3) for n in range(1, 7 - q)]

PROPERTY_IDS = ["cover01", "altr2", "inverse", "cover0", "dbl", "hom", "cover1", "q_avoid", "qcor"]
POLYNOMIAL_IDS = ["qmac", "qmac2", "fs_q2", "fs_q", "q6", "qs5", "q5", "q_rosel_1", "q_rosel_2", "f_pairs"]
COUNTING_IDS = ["fiber", "nu1", "qpro", "qc3"]


class TestRegistry:
    """Every identity is registered and reachable by id."""

    def test_known_ids(self):
        expected = set(PROPERTY_IDS + POLYNOMIAL_IDS + COUNTING_IDS) | {
            "compose_maps", "alt_transport", "f_pairs_alt", "g_fiber", "rec", "dobinski"
        }
        assert set(THEOREMS) == expected

    def test_unknown_id(self):
        with pytest.raises(UnknownTheoremError):
            verify("riemann", 3, 1)

    def test_budget_is_refused(self):
        with pytest.raises(BudgetExceededError):
            verify("qmac", 9, 2, threads=1, budget=9)

    def test_bad_parameters(self):
        with pytest.raises(InvalidParameterError):
            verify("qmac", 0, 1)
        with pytest.raises(InvalidParameterError):
            verify("qmac", 3, 0)


class TestIdentitiesHold:
    """Exhaustive checks at small sizes all pass."""

    @pytest.mark.parametrize("theorem", PROPERTY_IDS)
    @pytest.mark.parametrize("n,q", SMALL)
    def test_window_properties(self, theorem, n, q):
        result = verify(theorem, n, q, threads=1)
        assert result.passed, result.witness
        assert result.m == n + q - 1

    @pytest.mark.parametrize("theorem", POLYNOMIAL_IDS + COUNTING_IDS)
    @pytest.mark.parametrize("n,q", SMALL)
    def test_polynomial_and_counting(self, theorem, n, q):
        result = verify(theorem, n, q, threads=1)
        assert result.passed, result.witness

    @pytest.mark.parametrize("n,q", [(n, q) for n, q in SMALL if q >= 2])
    def test_alternating_counts(self, n, q):
        assert verify("f_pairs_alt", n, q, threads=1).passed
        assert verify("g_fiber", n, q, threads=1).passed

    @pytest.mark.parametrize("n,q", [(n, q) for n, q in SMALL if n >= 2])
    def test_compose_maps(self, n, q):
        assert verify("compose_maps", n, q, threads=1).passed

    @pytest.mark.parametrize("n", range(1, 6))
    def test_alternating_transport(self, n):
        result = verify("alt_transport", n, 1, threads=1)
        assert result.passed
        assert result.m == n + 1

    @pytest.mark.parametrize("q", [1, 2, 3, 5])
    def test_number_identities(self, q):
        assert verify("rec", 20, q).passed
        assert verify("dobinski", 10, min(q, 3)).passed


class TestReports:
    """Report contents."""

    def test_qmac_sides(self):
        result = verify("qmac", 2, 2, threads=1)
        assert result.lhs == result.rhs == "2 + 4*t1"
        assert result.witness is None

    def test_trivial_size(self):
        result = verify("qmac", 1, 1, threads=1)
        assert result.passed
        assert result.lhs == "1"

    def test_classes_on_s3(self):
        result = verify("fs_q2", 3, 1, threads=1)
        assert result.passed
        assert result.checked > 0

    def test_alternating_needs_q2(self):
        with pytest.raises(InvalidParameterError):
            verify("g_fiber", 3, 1)
        with pytest.raises(InvalidParameterError):
            verify("compose_maps", 1, 2)

    def test_failure_carries_first_witness(self, monkeypatch):
        monkeypatch.setitem(verification.PROPERTIES, "cover01", lambda w, q: w[0] != 2)
        result = verify("cover01", 3, 1, threads=1)
        assert result.status == "fail"
        assert result.witness == {"window": [2, 1, 3]}

    def test_parallel_report_matches(self):
        assert verify("qmac2", 4, 2, threads=1) == verify("qmac2", 4, 2, threads=3)


class TestFiberWeights:
    """Summing over S_{n+q-1} counts each base q! * q^del_1 times."""

    def test_f_pairs_sides(self):
        result = verify("f_pairs", 2, 2, threads=1)
        assert result.passed
        assert result.lhs == result.rhs == "2 + 4*t1*t2"

    @pytest.mark.parametrize("n,q", [(2, 2), (3, 2), (2, 3), (4, 2), (3, 3)])
    def test_unweighted_base_falls_short(self, n, q):
        lhs = distribution(n + q - 1, q, ["inv_q", "del_q"], threads=1)
        base = distribution(n, 1, ["inv_q", "del_q"], threads=1)
        assert lhs != base * factorial(q)
        assert lhs == base.scale_variable(2, q) * factorial(q)

    @pytest.mark.parametrize("n,q", [(2, 2), (3, 2), (2, 3), (3, 3)])
    def test_alternating_half(self, n, q):
        result = verify("f_pairs_alt", n, q, threads=1)
        assert result.passed
        assert result.lhs == result.rhs


class TestDoubleCosets:
    """Double-coset checks stay cheap as q grows."""

    @pytest.mark.parametrize("theorem", ["cover0", "dbl"])
    @pytest.mark.parametrize("q", [4, 5, 6])
    def test_large_q(self, theorem, q):
        result = verify(theorem, 1, q, threads=1)
        assert result.passed
        assert result.checked == factorial(q)
