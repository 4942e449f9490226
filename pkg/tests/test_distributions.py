"""
Tests for generating polynomials, filters, class tables and sharded sweeps.
"""

from collections import Counter
from functools import partial
from math import factorial

import pytest
from pydantic import ValidationError

from permstat.exceptions import BudgetExceededError, InvalidParameterError, UnknownStatisticError
from permstat.services.distributions import (
    FilterSpec,
    accumulate_shard,
    class_table,
    distribution,
    qmac2_product,
    qmac_product,
)
from permstat.services.polynomial import Polynomial
from permstat.services.sweep import check_budget, first_failure, map_shards, merge_buckets, merge_counters


class TestDistribution:
    """Single-sweep generating polynomials."""

    def test_inv2_over_s3(self):
        assert distribution(3, 2, ["inv_q"], threads=1).to_text() == "2 + 4*t1"

    def test_mahonian(self):
        expected = "1 + 2*t1 + 2*t1^2 + t1^3"
        assert distribution(3, 1, ["inv_q"], threads=1).to_text() == expected
        assert distribution(3, 1, ["rmaj_q"], threads=1).to_text() == expected

    def test_bivariate(self):
        assert distribution(3, 2, ["inv_q", "del_q"], threads=1) == qmac2_product(2, 2)

    @pytest.mark.parametrize("n,q", [(n, q) for q in (1, 2, 3) for n in range(1, 7 - q)])
    def test_product_formula(self, n, q):
        m = n + q - 1
        assert distribution(m, q, ["inv_q", "del_q"], threads=1) == qmac2_product(n, q)
        assert distribution(m, q, ["rmaj_q"], threads=1) == qmac_product(n, q)

    @pytest.mark.parametrize("m", range(1, 7))
    def test_mass_is_subset_size(self, m):
        poly = distribution(m, 2, ["inv_q", "des_q", "maj_q"], threads=1)
        assert poly.at_ones() == factorial(m)
        assert all(c > 0 for c in poly.terms.values())

    def test_even_filter(self):
        poly = distribution(4, 1, ["ell_A"], FilterSpec(kind="even"), threads=1)
        assert poly.at_ones() == 12

    def test_alternating_stats_need_even_filter(self):
        with pytest.raises(InvalidParameterError):
            distribution(4, 1, ["ell_A"], threads=1)

    def test_unknown_statistic(self):
        with pytest.raises(UnknownStatisticError):
            distribution(3, 1, ["bogus"], threads=1)

    def test_budget(self):
        with pytest.raises(BudgetExceededError):
            distribution(6, 1, ["inv_q"], threads=1, budget=5)

    def test_small_products(self):
        assert qmac2_product(2, 2).to_text() == "2 + 4*t1*t2"
        assert qmac2_product(1, 3) == 6
        assert qmac_product(3, 1).to_text() == "1 + 2*t1 + 2*t1^2 + t1^3"


class TestFilterSpec:
    """Parsing and range checks of subset filters."""

    @pytest.mark.parametrize("text", ["all", "avoid", "inv-avoid", "even", "inv-des=2,3", "inv-des-del=2;3"])
    def test_parse_and_print(self, text):
        assert str(FilterSpec.parse(text)) == text

    @pytest.mark.parametrize("text", ["none", "inv-des=a", "inv-des-del=2", "avoid=1"])
    def test_rejects(self, text):
        with pytest.raises(InvalidParameterError):
            FilterSpec.parse(text)

    def test_range(self):
        FilterSpec.parse("inv-des=2,3").check_range(4, 2)
        with pytest.raises(InvalidParameterError):
            FilterSpec.parse("inv-des=1").check_range(4, 2)
        with pytest.raises(InvalidParameterError):
            FilterSpec.parse("inv-des-del=2;2").check_range(4, 2)

    @pytest.mark.parametrize(
        "fields",
        [
            {"kind": "inv-des"},
            {"kind": "inv-des-del", "B1": (2,)},
            {"kind": "avoid", "B1": (2,)},
            {"kind": "inv-des", "B1": (2,), "B2": (3,)},
        ],
    )
    def test_sets_must_match_kind(self, fields):
        with pytest.raises(ValidationError):
            FilterSpec(**fields)

    def test_inverse_class_filter(self):
        whole = distribution(4, 2, ["inv_q"], threads=1)
        pieces = Polynomial(1)
        for row in class_table(4, 2, with_del=False, threads=1):
            spec = FilterSpec(kind="inv-des", B1=tuple(row.B1))
            pieces = pieces + distribution(4, 2, ["inv_q"], spec, threads=1)
        assert pieces == whole


class TestClassTable:
    """Per-class comparison of inv_q and rmaj_q."""

    @pytest.mark.parametrize("m", range(1, 6))
    def test_classical_classes_agree(self, m):
        rows = class_table(m, 1, with_del=False, threads=1)
        assert all(row.equal for row in rows)
        assert sum(row.size for row in rows) == factorial(m)

    @pytest.mark.parametrize("n,q", [(3, 1), (3, 2), (2, 3), (4, 2)])
    def test_refined_classes_agree(self, n, q):
        rows = class_table(n + q - 1, q, threads=1)
        assert all(row.equal for row in rows)
        assert all(row.B2 is not None for row in rows)

    def test_rows_are_sorted(self):
        rows = class_table(4, 1, threads=1)
        keys = [(tuple(r.B1), tuple(r.B2)) for r in rows]
        assert keys == sorted(keys)


class TestSweep:
    """Sharding, merging and the sequential/parallel contract."""

    def test_shards_cover_the_group(self):
        parts = map_shards(partial(accumulate_shard, 1, ("inv_q",), FilterSpec()), 4, threads=1)
        assert len(parts) == 4
        assert sum(sum(p.values()) for p in parts) == 24

    def test_merge_is_order_independent(self):
        parts = map_shards(partial(accumulate_shard, 2, ("inv_q", "del_q"), FilterSpec()), 5, threads=1)
        assert merge_counters(parts) == merge_counters(reversed(parts))
        buckets = [{"a": Counter({1: 2})}, {"a": Counter({1: 1}), "b": Counter({0: 1})}]
        assert merge_buckets(buckets) == merge_buckets(reversed(buckets))

    def test_parallel_matches_sequential(self):
        sequential = distribution(6, 2, ["inv_q", "del_q", "rmaj_q"], threads=1)
        parallel = distribution(6, 2, ["inv_q", "del_q", "rmaj_q"], threads=3)
        assert sequential.to_json() == parallel.to_json()
        assert class_table(5, 2, threads=1) == class_table(5, 2, threads=2)

    def test_first_failure_is_lexicographic(self):
        assert first_failure(_fails_from_first_value_two, 4, threads=1) == (2, 1, 3, 4)
        assert first_failure(_never_fails, 4, threads=1) is None

    def test_check_budget(self):
        check_budget(9, 9)
        with pytest.raises(BudgetExceededError):
            check_budget(10, 9)


def _fails_from_first_value_two(m, first):
    if first < 2:
        return None
    return tuple([first] + [v for v in range(1, m + 1) if v != first])


def _never_fails(m, first):
    return None
