"""
Δ polynomial and the feasibility region of the tripartite construction.

    Δ(a, b, c) = a² + b² + c² − 2ab − 2ac − 2bc + 4abc

A target (a, b, c) is in the region when Δ >= 0 and ab + c, ac + b, bc + a all exceed 1.
Every triple with a + b + c >= 9/4 is claimed to lie in it; verify_pos_grid checks
that claim on a rational grid in integer arithmetic.
"""

import logging
from fractions import Fraction
from typing import Optional

from app.core.config import get_settings
from app.core.errors import OutOfRangeError
from app.models.rational import parse_rational
from app.schemas.constructions import PosGridFailure, PosGridReport, PosRegionVerdict

logger = logging.getLogger(__name__)

NINE_QUARTERS = Fraction(9, 4)
MAX_REPORTED_FAILURES = 100


def _unit_interval(*values) -> list[Fraction]:
    out = []
    for name, value in zip("abc", values):
        value = parse_rational(value, name)
        if not (0 <= value <= 1):
            raise OutOfRangeError(f"{name} = {value} is outside [0, 1]")
        out.append(value)
    return out


class PosRegionService:

    @staticmethod
    def delta(a, b, c) -> Fraction:
        """Discriminant of b·x² − (a+b−c)·x + a(1−c); the roots are real when it is >= 0."""
        a, b, c = _unit_interval(a, b, c)
        return a * a + b * b + c * c - 2 * a * b - 2 * a * c - 2 * b * c + 4 * a * b * c

    @staticmethod
    def check_pos_region(a, b, c) -> PosRegionVerdict:
        a, b, c = _unit_interval(a, b, c)
        d = PosRegionService.delta(a, b, c)
        conditions = {
            "delta_nonnegative": d >= 0,
            "ab_plus_c_above_one": a * b + c > 1,
            "ac_plus_b_above_one": a * c + b > 1,
            "bc_plus_a_above_one": b * c + a > 1,
        }
        return PosRegionVerdict(
            a=a,
            b=b,
            c=c,
            delta=d,
            sum_at_least_nine_quarters=a + b + c >= NINE_QUARTERS,
            in_region=all(conditions.values()),
            **conditions,
        )

    @staticmethod
    def verify_pos_grid(denominator: Optional[int] = None) -> PosGridReport:
        """
        Check every (i/N, j/N, k/N) with i + j + k >= 9N/4.

        Scaled by N³ (resp. N²) the conditions stay integral:
            N(i² + j² + k² − 2ij − 2ik − 2jk) + 4ijk >= 0,   ij + kN > N²  (and permutations).
        """
        n = denominator or get_settings().POS_GRID_DENOMINATOR
        if n < 1:
            raise OutOfRangeError(f"grid denominator must be positive, got {n}")
        n2 = n * n
        checked = 0
        failures: list[PosGridFailure] = []
        failure_count = 0

        for i in range(n + 1):
            for j in range(n + 1):
                # smallest k with 4(i + j + k) >= 9n
                k_min = max(0, -(-(9 * n - 4 * (i + j)) // 4))
                for k in range(k_min, n + 1):
                    checked += 1
                    scaled_delta = n * (i * i + j * j + k * k - 2 * (i * j + i * k + j * k)) + 4 * i * j * k
                    ok = (
                        scaled_delta >= 0
                        and i * j + k * n > n2
                        and i * k + j * n > n2
                        and j * k + i * n > n2
                    )
                    if not ok:
                        failure_count += 1
                        if len(failures) < MAX_REPORTED_FAILURES:
                            failures.append(PosGridFailure(
                                a=Fraction(i, n), b=Fraction(j, n), c=Fraction(k, n),
                                delta=Fraction(scaled_delta, n2 * n),
                            ))

        three_quarters = Fraction(3, 4)
        report = PosGridReport(
            denominator=n,
            triples_checked=checked,
            failures=failures,
            delta_at_three_quarters=PosRegionService.delta(three_quarters, three_quarters, three_quarters),
            passed=failure_count == 0,
        )
        if failure_count:
            logger.error(f"[POS GRID] N={n}: {failure_count} of {checked} triples fail")
        else:
            logger.info(f"[POS GRID] N={n}: {checked} triples, all conditions hold")
        return report
