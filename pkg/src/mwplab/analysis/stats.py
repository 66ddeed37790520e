"""Normal-distribution helpers and the pooled two-proportion z-test."""

from __future__ import annotations

import math


def normal_cdf(x: float) -> float:
    """Standard normal CDF via the complementary error function (C99 erfc,
    exposed by the math module), accurate to machine precision and stable in
    the tails."""
    return 0.5 * math.erfc(-x / math.sqrt(2.0))


def two_sided_p(z: float) -> float:
    return 2.0 * (1.0 - normal_cdf(abs(z)))


def two_proportion_test(s1: int, n1: int, s2: int, n2: int) -> dict[str, float]:
    """Pooled two-proportion z-test; p is two-sided.

    Antisymmetric in its arguments: swapping the groups flips the sign of z
    and leaves p unchanged.
    """
    if n1 <= 0 or n2 <= 0 or not (0 <= s1 <= n1) or not (0 <= s2 <= n2):
        raise ValueError("invalid counts")
    p1, p2 = s1 / n1, s2 / n2
    pooled = (s1 + s2) / (n1 + n2)
    variance = pooled * (1.0 - pooled) * (1.0 / n1 + 1.0 / n2)
    if variance == 0:
        raise ValueError("zero pooled variance (all successes or all failures)")
    z = (p1 - p2) / math.sqrt(variance)
    return {"z": z, "p": two_sided_p(z)}
