#!/usr/bin/env python3
"""
Run every registered identity over its full acceptance range.

Exits 0 when everything holds, 1 on the first failing group.
"""

import argparse
import logging
import os
import sys
import time

# Add the parent directory to the path so we can import from permstat
sys.path.insert(0, os.path.abspath(os.path.join(os.path.dirname(__file__), '..')))

from permstat.config import settings
from permstat.core.permutation import Permutation
from permstat.exceptions import PermstatError
from permstat.services.numbers import bell_q
from permstat.services.verification import verify
from permstat.stats.patterns import h_q_brute
from permstat.stats.qstats import del_set_q, des_set_q

# Configure logging
logging.basicConfig(
    level=logging.INFO,
    format=settings.LOG_FORMAT,
)
logger = logging.getLogger(__name__)

# (theorem ids, largest degree m = n + q - 1, smallest n, smallest q)
GROUPS = [
    (["qmac", "qmac2"], 8, 1, 1),
    (["fs_q2", "fs_q", "q_rosel_1", "q_rosel_2"], 7, 1, 1),
    (["q6", "qs5", "q5"], 8, 1, 1),
    (["cover01", "altr2", "inverse", "cover0", "dbl", "hom", "cover1", "q_avoid", "qcor", "fiber", "f_pairs"], 7, 1, 1),
    (["compose_maps"], 7, 2, 1),
    (["g_fiber", "f_pairs_alt"], 6, 1, 2),
    (["nu1", "qpro", "qc3"], 8, 1, 1),
]


def check_worked_example() -> bool:
    """Hand-computed sets of [7, 8, 6, 5, 2, 9, 4, 1, 3]."""
    p = Permutation([7, 8, 6, 5, 2, 9, 4, 1, 3])
    expected = [
        (del_set_q(p, 2), {3, 4, 5, 7, 8}),
        (des_set_q(p, 2), {2, 3, 4, 6, 7}),
        (del_set_q(p, 3), {4, 5, 7, 8, 9}),
        (des_set_q(p, 3), {3, 4, 6, 7, 8}),
        (des_set_q(p, 4), {4, 6, 7, 8}),
    ]
    ok = all(found == wanted for found, wanted in expected)
    if not ok:
        logger.error(f"Worked example disagrees: {expected}")
    return ok


def check_group(theorems, largest: int, min_n: int, min_q: int, threads) -> bool:
    """Verify each theorem for every (n, q) with n + q - 1 <= largest."""
    for name in theorems:
        started = time.perf_counter()
        for q in range(min_q, largest + 1):
            for n in range(min_n, largest - q + 2):
                result = verify(name, n, q, threads=threads)
                if not result.passed:
                    logger.error(f"{name} fails at n={n}, q={q}: {result.witness}")
                    return False
        logger.info(f"{name} holds up to degree {largest} ({time.perf_counter() - started:.1f}s)")
    return True


def check_counts() -> bool:
    """Brute-force avoider counts against the q-Bell numbers."""
    bell = [1, 1, 2, 5, 15, 52, 203, 877, 4140]
    if [h_q_brute(n, 1) for n in range(9)] != bell:
        logger.error("h_1 does not reproduce the Bell numbers")
        return False
    if [h_q_brute(n + 1, 2) for n in range(6)] != [1, 2, 6, 22, 94, 454]:
        logger.error("h_2(n+1) does not reproduce b_2(n)")
        return False
    if any(h_q_brute(n + 2, 3) != 2 * bell_q(n, 3) for n in range(6)):
        logger.error("h_3(n+2) does not reproduce 2 b_3(n)")
        return False
    return True


def check_numbers() -> bool:
    for q in range(1, 6):
        if not verify("rec", 20, q).passed:
            return False
    return all(verify("dobinski", 10, q).passed for q in range(1, 4))


def check_alternating(threads) -> bool:
    """Alternating-layer identities over even permutations of degree <= 7."""
    return all(verify("alt_transport", n, 2, threads=threads).passed for n in range(1, 7))


def check_determinism() -> bool:
    sequential = verify("qmac2", 6, 2, threads=1)
    parallel = verify("qmac2", 6, 2, threads=settings.effective_threads())
    if sequential != parallel:
        logger.error("Sequential and parallel sweeps disagree")
        return False
    return True


def main() -> bool:
    """Run every acceptance group; stop at the first failure."""
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--threads", type=int, default=None)
    args = parser.parse_args()
    threads = settings.effective_threads(args.threads)

    logger.info(f"Starting verification on {threads} worker(s)...")
    try:
        if not check_worked_example():
            return False
        for theorems, largest, min_n, min_q in GROUPS:
            if not check_group(theorems, largest, min_n, min_q, threads):
                return False
        steps = [
            ("avoider counts", check_counts),
            ("number identities", check_numbers),
            ("alternating layer", lambda: check_alternating(threads)),
            ("determinism", check_determinism),
        ]
        for label, step in steps:
            if not step():
                logger.error(f"{label} failed")
                return False
            logger.info(f"{label} hold")
    except PermstatError as e:
        logger.error(f"Verification aborted: {str(e)}")
        return False

    logger.info("All identities hold")
    return True


if __name__ == "__main__":
    success = main()
    sys.exit(0 if success else 1)
