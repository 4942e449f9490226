"""
Exhaustive verification of the equidistribution and counting identities.

Every check runs at degree m = n + q - 1 (alternating checks at degree n + 1)
and returns a VerificationReport. A failing report carries the first witness
in lexicographic order of windows or classes.
"""

import logging
from collections import Counter
from fractions import Fraction
from functools import partial
from math import factorial
from typing import Callable, Dict, List, Optional

from permstat.core.alternating import (
    a_length_of_window,
    des_positions_A,
    is_even_window,
    restrict_f_window,
)
from permstat.core.permutation import Permutation, Window, compose_windows, inverse_window, inversions_of_window, windows
from permstat.exceptions import InvalidParameterError, UnknownTheoremError
from permstat.models.records import VerificationReport
from permstat.services.distributions import FilterSpec, class_table, distribution, qmac2_product, qmac_product
from permstat.services.numbers import (
    bell_q,
    bell_q_recurrence,
    c_q,
    dobinski_relative_error,
    dobinski_terms,
    h_q_formula,
    h_q_recurrence,
    stirling2,
)
from permstat.services.polynomial import Polynomial
from permstat.services.sweep import check_budget, first_failure, map_shards, merge_counters
from permstat.stats.covering import f_q_window, fiber_size, parabolic_generators
from permstat.stats.patterns import avoids_window, h_q_brute
from permstat.stats.qstats import (
    check_q,
    del_positions,
    del_q_of_word,
    des_positions,
    ell_q_of_window,
    inv_q_of_window,
    rmaj_of_positions,
)

logger = logging.getLogger(__name__)

DOBINSKI_TOLERANCE = 1e-9

Check = Callable[[int, int, Optional[int], Optional[int]], VerificationReport]
THEOREMS: Dict[str, Check] = {}


def theorem(name: str):
    """Register a check under a verification id."""

    def register(check: Check) -> Check:
        THEOREMS[name] = check
        return check

    return register


def report(name: str, n: int, q: int, m: int, holds: bool, **fields) -> VerificationReport:
    witness = fields.pop("witness", None)
    if not holds and witness is None:
        witness = {"lhs": fields.get("lhs"), "rhs": fields.get("rhs")}
    return VerificationReport(
        theorem=name,
        n=n,
        q=q,
        m=m,
        status="pass" if holds else "fail",
        witness=None if holds else witness,
        **fields,
    )


# Window properties. Each returns True when the identity holds at w.

def _shift(positions: List[int], by: int) -> List[int]:
    return [i - by for i in positions]


def _rmaj(w: Window, q: int) -> int:
    return rmaj_of_positions(des_positions(w, q), len(w))


def _length_is_inv(w: Window, q: int) -> bool:
    return ell_q_of_window(w, q) == inv_q_of_window(w, q)


def _del_counts_agree(w: Window, q: int) -> bool:
    return del_q_of_word(w, q) == len(del_positions(w, q))


def _inverse_invariant(w: Window, q: int) -> bool:
    u = inverse_window(w)
    return (
        inv_q_of_window(w, q) == inv_q_of_window(u, q)
        and len(del_positions(w, q)) == len(del_positions(u, q))
    )


def _coset_neighbours(w: Window, q: int):
    # Invariance under one generator on either side, checked at every window of
    # S_m, is invariance on the whole double coset.
    for s in parabolic_generators(q, len(w)):
        yield compose_windows(s, w)
        yield compose_windows(w, s)


def _double_coset_stats(w: Window, q: int) -> bool:
    expected = (del_positions(w, q), des_positions(w, q), inv_q_of_window(w, q))
    return all(
        (del_positions(x, q), des_positions(x, q), inv_q_of_window(x, q)) == expected
        for x in _coset_neighbours(w, q)
    )


def _double_coset_image(w: Window, q: int) -> bool:
    image = f_q_window(w, q)
    return all(f_q_window(x, q) == image for x in _coset_neighbours(w, q))


def _image_of_inverse(w: Window, q: int) -> bool:
    return f_q_window(inverse_window(w), q) == inverse_window(f_q_window(w, q))


def _transport(w: Window, q: int) -> bool:
    f = f_q_window(w, q)
    return (
        _shift(del_positions(w, q), q - 1) == del_positions(f, 1)
        and _shift(des_positions(w, q), q - 1) == des_positions(f, 1)
        and inv_q_of_window(w, q) == inv_q_of_window(f, 1)
        and _rmaj(w, q) == _rmaj(f, 1)
    )


def _avoid_criterion(w: Window, q: int) -> bool:
    return avoids_window(w, q) == (_shift(del_positions(w, q), 1) == des_positions(w, q))


def _avoiders_map_to_avoiders(w: Window, q: int) -> bool:
    if not avoids_window(w, q):
        return True
    if not avoids_window(f_q_window(w, q), 1):
        return False
    return q == 1 or avoids_window(f_q_window(w, 2), q - 1)


def _compose_maps(w: Window, q: int) -> bool:
    return f_q_window(f_q_window(w, q), 2) == f_q_window(w, q + 1)


def _alternating_transport(w: Window, q: int) -> bool:
    """Even w only: the A-statistics against q = 2 and against f = f_2."""
    if not is_even_window(w):
        return True
    f = f_q_window(w, 2)
    des_A = des_positions_A(w)
    del_A = _shift(del_positions(w, 2), 1)
    length = a_length_of_window(w)
    n = len(w) - 1
    return (
        length == inv_q_of_window(w, 2)
        and length == inversions_of_window(w) - len(del_positions(w, 1))
        and length == inversions_of_window(f)
        and restrict_f_window(w) == f
        and des_A == _shift(des_positions(w, 2), 1)
        and des_A == des_positions(f, 1)
        and del_A == del_positions(f, 1)
        and rmaj_of_positions(des_A, n) == _rmaj(w, 2)
    )


PROPERTIES: Dict[str, Callable[[Window, int], bool]] = {
    "cover01": _length_is_inv,
    "altr2": _del_counts_agree,
    "inverse": _inverse_invariant,
    "cover0": _double_coset_stats,
    "dbl": _double_coset_image,
    "hom": _image_of_inverse,
    "cover1": _transport,
    "q_avoid": _avoid_criterion,
    "qcor": _avoiders_map_to_avoiders,
    "compose_maps": _compose_maps,
    "alt_transport": _alternating_transport,
}


def property_shard(name: str, q: int, m: int, first: int) -> Optional[Window]:
    holds = PROPERTIES[name]
    for w in windows(m, first):
        if not holds(w, q):
            return w
    return None


def image_shard(q: int, even_only: bool, m: int, first: int) -> Counter:
    tally: Counter = Counter()
    for w in windows(m, first):
        if not even_only or is_even_window(w):
            tally[f_q_window(w, q)] += 1
    return tally


def _check_property(name: str, n: int, q: int, m: int, threads, budget) -> VerificationReport:
    check_budget(m, budget)
    failure = first_failure(partial(property_shard, name, q), m, threads)
    return report(
        name,
        n,
        q,
        m,
        failure is None,
        checked=factorial(m),
        witness=None if failure is None else {"window": list(failure)},
    )


def _property_check(name: str) -> Check:
    def check(n: int, q: int, threads=None, budget=None) -> VerificationReport:
        return _check_property(name, n, q, n + q - 1, threads, budget)

    return check


for _name in ("cover01", "altr2", "inverse", "cover0", "dbl", "hom", "cover1", "q_avoid", "qcor"):
    THEOREMS[_name] = _property_check(_name)


@theorem("compose_maps")
def _verify_compose_maps(n: int, q: int, threads=None, budget=None) -> VerificationReport:
    if n < 2:
        raise InvalidParameterError("compose_maps needs n >= 2 so that f_2 applies after f_q")
    return _check_property("compose_maps", n, q, n + q - 1, threads, budget)


@theorem("alt_transport")
def _verify_alt_transport(n: int, q: int, threads=None, budget=None) -> VerificationReport:
    return _check_property("alt_transport", n, 2, n + 1, threads, budget)


# Polynomial identities.

def _compare(name, n, q, m, lhs: Polynomial, rhs: Polynomial, spec=None, also=()) -> VerificationReport:
    holds = lhs == rhs and all(also)
    return report(
        name,
        n,
        q,
        m,
        holds,
        filter=str(spec) if spec is not None else None,
        checked=lhs.at_ones(),
        lhs=lhs.to_text(),
        rhs=rhs.to_text(),
    )


@theorem("qmac")
def _verify_qmac(n, q, threads=None, budget=None):
    m = n + q - 1
    by_inv = distribution(m, q, ["inv_q"], threads=threads, budget=budget)
    by_rmaj = distribution(m, q, ["rmaj_q"], threads=threads, budget=budget)
    formula = qmac_product(n, q)
    return _compare("qmac", n, q, m, by_inv, formula, also=[by_rmaj == formula])


@theorem("qmac2")
def _verify_qmac2(n, q, threads=None, budget=None):
    m = n + q - 1
    by_inv = distribution(m, q, ["inv_q", "del_q"], threads=threads, budget=budget)
    by_rmaj = distribution(m, q, ["rmaj_q", "del_q"], threads=threads, budget=budget)
    formula = qmac2_product(n, q)
    return _compare("qmac2", n, q, m, by_inv, formula, also=[by_rmaj == formula])


def _verify_classes(name, n, q, with_del, spec, threads, budget):
    m = n + q - 1
    rows = class_table(m, q, with_del=with_del, spec=spec, threads=threads, budget=budget)
    bad = next((row for row in rows if not row.equal), None)
    return report(
        name,
        n,
        q,
        m,
        bad is None,
        filter=str(spec) if spec is not None else None,
        checked=len(rows),
        witness=None if bad is None else bad.model_dump(),
    )


@theorem("fs_q2")
def _verify_fs_q2(n, q, threads=None, budget=None):
    return _verify_classes("fs_q2", n, q, True, None, threads, budget)


@theorem("fs_q")
def _verify_fs_q(n, q, threads=None, budget=None):
    return _verify_classes("fs_q", n, q, False, None, threads, budget)


@theorem("q6")
def _verify_q6(n, q, threads=None, budget=None):
    return _verify_classes("q6", n, q, False, FilterSpec(kind="inv-avoid"), threads, budget)


def _pair(name, n, q, left, right, spec, threads, budget):
    m = n + q - 1
    lhs = distribution(m, q, left, spec, threads=threads, budget=budget)
    rhs = distribution(m, q, right, spec, threads=threads, budget=budget)
    return _compare(name, n, q, m, lhs, rhs, spec)


@theorem("qs5")
def _verify_qs5(n, q, threads=None, budget=None):
    spec = FilterSpec(kind="inv-avoid")
    return _pair("qs5", n, q, ["rmaj_q", "des_q_of_inverse"], ["inv_q", "des_q_of_inverse"], spec, threads, budget)


@theorem("q5")
def _verify_q5(n, q, threads=None, budget=None):
    return _pair("q5", n, q, ["rmaj_q"], ["inv_q"], FilterSpec(kind="inv-avoid"), threads, budget)


@theorem("q_rosel_1")
def _verify_q_rosel_1(n, q, threads=None, budget=None):
    return _pair("q_rosel_1", n, q, ["inv_q", "des_q_of_inverse"], ["rmaj_q", "des_q_of_inverse"], None, threads, budget)


@theorem("q_rosel_2")
def _verify_q_rosel_2(n, q, threads=None, budget=None):
    return _pair("q_rosel_2", n, q, ["inv_q", "rmaj_q_of_inverse"], ["rmaj_q", "rmaj_q_of_inverse"], None, threads, budget)


def _weighted_base(n, q, threads, budget) -> Polynomial:
    """q! * sum over S_n of t1^inv * (q t2)^del_1; each fiber has q! q^del_1 members."""
    base = distribution(n, 1, ["inv_q", "del_q"], threads=threads, budget=budget)
    return base.scale_variable(2, q) * factorial(q)


@theorem("f_pairs")
def _verify_f_pairs(n, q, threads=None, budget=None):
    m = n + q - 1
    lhs = distribution(m, q, ["inv_q", "del_q"], threads=threads, budget=budget)
    rhs = _weighted_base(n, q, threads, budget)
    return _compare("f_pairs", n, q, m, lhs, rhs)


@theorem("f_pairs_alt")
def _verify_f_pairs_alt(n, q, threads=None, budget=None):
    """2 * (sum over A_m) == q! * (sum over S_n with t2 -> q t2); needs q >= 2."""
    if q < 2:
        raise InvalidParameterError("f_pairs_alt needs q >= 2")
    m = n + q - 1
    spec = FilterSpec(kind="even")
    lhs = distribution(m, q, ["inv_q", "del_q"], spec, threads=threads, budget=budget) * 2
    rhs = _weighted_base(n, q, threads, budget)
    return _compare("f_pairs_alt", n, q, m, lhs, rhs, spec)


# Counting identities.

def _fiber_counts(name, n, q, even_only, threads, budget):
    check_q(q)
    m = n + q - 1
    check_budget(m, budget)
    images = merge_counters(map_shards(partial(image_shard, q, even_only), m, threads))
    divisor = 2 if even_only else 1
    bad = None
    for base in windows(n):
        size = images.get(base, 0)
        if size * divisor != fiber_size(Permutation(base, check=False), q):
            bad = {"base": list(base), "size": size, "expected": fiber_size(Permutation(base, check=False), q) // divisor}
            break
    return report(name, n, q, m, bad is None, checked=factorial(n), witness=bad)


@theorem("fiber")
def _verify_fiber(n, q, threads=None, budget=None):
    return _fiber_counts("fiber", n, q, False, threads, budget)


@theorem("g_fiber")
def _verify_g_fiber(n, q, threads=None, budget=None):
    if q < 2:
        raise InvalidParameterError("g_fiber needs q >= 2")
    return _fiber_counts("g_fiber", n, q, True, threads, budget)


@theorem("nu1")
def _verify_nu1(n, q, threads=None, budget=None):
    check_q(q)
    m = n + q - 1
    check_budget(m, budget)
    counted = h_q_brute(m, q)
    formula = factorial(q - 1) * bell_q(n, q)
    return report(
        "nu1",
        n,
        q,
        m,
        counted == formula == h_q_recurrence(m, q),
        checked=factorial(m),
        lhs=str(counted),
        rhs=str(formula),
    )


def _coefficients(poly: Polynomial) -> Dict[int, int]:
    return {e[0]: c for e, c in poly.terms.items()}


@theorem("qpro")
def _verify_qpro(n, q, threads=None, budget=None):
    m = n + q - 1
    avoid = FilterSpec(kind="avoid")
    by_del = distribution(m, q, ["del_q"], avoid, threads=threads, budget=budget)
    counts = _coefficients(by_del)
    bad = None
    for k in range(1, n + 1):
        expected = factorial(q - 1) * q ** k * stirling2(n, k)
        if counts.get(k - 1, 0) != expected:
            bad = {"k": k, "count": counts.get(k - 1, 0), "expected": expected}
            break
    if bad is None:
        classical = distribution(n, 1, ["del_q"], avoid, threads=threads, budget=budget)
        if Fraction(classical.evaluate([q])) != Fraction(bell_q(n, q), q):
            bad = {"weighted_sum": "S_n", "value": str(classical.evaluate([q]))}
        elif Fraction(by_del.evaluate([q])) != Fraction(factorial(q - 1) * bell_q(n, q * q), q):
            bad = {"weighted_sum": f"S_{m}", "value": str(by_del.evaluate([q]))}
    return report("qpro", n, q, m, bad is None, filter=str(avoid), checked=by_del.at_ones(), witness=bad)


@theorem("qc3")
def _verify_qc3(n, q, threads=None, budget=None):
    m = n + q - 1
    counts = _coefficients(distribution(m, q, ["del_q"], threads=threads, budget=budget))
    bad = None
    for k in range(1, n + 1):
        expected = c_q(n, k, q)
        if counts.get(k - 1, 0) != expected:
            bad = {"k": k, "count": counts.get(k - 1, 0), "expected": expected}
            break
    return report("qc3", n, q, m, bad is None, checked=factorial(m), witness=bad)


@theorem("rec")
def _verify_rec(n, q, threads=None, budget=None):
    """Recurrences against closed forms for every size up to n; no enumeration."""
    check_q(q)
    bad = None
    for size in range(n + 1):
        if bell_q_recurrence(size, q) != bell_q(size, q):
            bad = {"b_q": size}
            break
        if h_q_recurrence(size + q - 1, q) != h_q_formula(size + q - 1, q):
            bad = {"h_q": size + q - 1}
            break
    return report("rec", n, q, n + q - 1, bad is None, checked=n + 1, witness=bad)


@theorem("dobinski")
def _verify_dobinski(n, q, threads=None, budget=None):
    check_q(q)
    bad = None
    for size in range(n + 1):
        error = dobinski_relative_error(size, q, dobinski_terms(size, q))
        if error >= DOBINSKI_TOLERANCE:
            bad = {"n": size, "relative_error": error}
            break
    return report("dobinski", n, q, n + q - 1, bad is None, checked=n + 1, witness=bad)


def verify(
    theorem_id: str,
    n: int,
    q: int,
    threads: Optional[int] = None,
    budget: Optional[int] = None,
) -> VerificationReport:
    """Check one identity exhaustively; refuses sizes beyond the enumeration budget."""
    if theorem_id not in THEOREMS:
        raise UnknownTheoremError(
            f"unknown theorem {theorem_id!r}; known: {', '.join(sorted(THEOREMS))}"
        )
    check_q(q)
    if n < 1:
        raise InvalidParameterError(f"n must be at least 1, got {n}")
    result = THEOREMS[theorem_id](n, q, threads, budget)
    if result.passed:
        logger.info(f"{theorem_id} holds at n={n}, q={q} ({result.checked} checked)")
    else:
        logger.warning(f"{theorem_id} FAILS at n={n}, q={q}: {result.witness}")
    return result
