"""Closed-form side: expected dimensions, filling thresholds, and the
classical interpolation oracle for double points in projective space."""

from __future__ import annotations

from dataclasses import dataclass
from math import comb

from .terracini import SegreVeroneseParams


@dataclass(frozen=True)
class Thresholds:
    """Multiples of n+1 bracketing the filling count s* = (n+1)C(m+d,d)/(m+n+1).

    Below s1 the secant dimension grows by full steps; from s2 on the
    embedding target is filled. The gap in between is covered by neither
    closed form: uncovered counts the s values strictly between s1 and s2.
    """

    s1: int
    s2: int
    divisible: bool
    uncovered: int


@dataclass(frozen=True)
class DefectRecord:
    expected: int
    computed: int
    defect: int


def expected_secant_dim(params: SegreVeroneseParams, s: int) -> int:
    """min(N, s(n+m+1) - 1), the parameter-count upper bound."""
    if s < 1:
        raise ValueError("need s >= 1")
    return min(params.ambient_dim, s * (params.variety_dim + 1) - 1)


def thresholds(params: SegreVeroneseParams) -> Thresholds:
    """Largest/smallest multiples of n+1 below/above the filling fraction."""
    block = params.n + 1
    numer = block * comb(params.m + params.d, params.d)
    denom = params.variety_dim + 1
    floor_star = numer // denom
    ceil_star = -(-numer // denom)
    s1 = floor_star - floor_star % block
    s2 = ceil_star if ceil_star % block == 0 else ceil_star + block - ceil_star % block
    divisible = comb(params.m + params.d, params.d) % denom == 0
    return Thresholds(s1, s2, divisible, max(s2 - s1 - 1, 0))


def expected_scheme_dim(params: SegreVeroneseParams, q: int, t: int) -> int:
    """Expected degree-(d+1) dimension for the flag configuration with
    s = (n+1)q double points and t spans through H1."""
    if q < 0 or t < 0:
        raise ValueError("need q >= 0 and t >= 0")
    s = (params.n + 1) * q
    raw = (
        params.coefficient_count
        - s * (params.variety_dim + 1)
        - t * (params.n + 1)
    )
    return max(raw, 0)


def ah_expected(m: int, d: int, q: int, r: int) -> int:
    """Expected degree-d dimension for q double + r simple points in P^m."""
    if m < 1 or d < 1 or q < 0 or r < 0:
        raise ValueError("need m, d >= 1 and q, r >= 0")
    return max(comb(m + d, d) - q * (m + 1) - r, 0)


# the finitely many (m, d, q) where pure double points are exceptional
# beyond the quadric family; the actual dimension is 1 in each
_SPORADIC_EXCEPTIONS = {(2, 4, 5), (3, 4, 9), (4, 3, 7), (4, 4, 14)}


def ah_is_exceptional(m: int, d: int, q: int, r: int) -> tuple[bool, int | None]:
    """Classical exceptional list for generic double-point interpolation.

    Returns (True, actual dimension) on the list, (False, None) otherwise;
    off the list the actual dimension is ah_expected. Quadrics through
    2 <= q <= m double points always overshoot: the actual dimension is
    C(m+2, 2) - q(m+1) + C(q, 2), the quadrics singular along the span of
    the points. Configurations with simple points added are never
    exceptional here.
    """
    if m < 1 or d < 1 or q < 0 or r < 0:
        raise ValueError("need m, d >= 1 and q, r >= 0")
    if r == 0:
        if d == 2 and 2 <= q <= m:
            return True, comb(m + 2, 2) - q * (m + 1) + comb(q, 2)
        if (m, d, q) in _SPORADIC_EXCEPTIONS:
            return True, ah_expected(m, d, q, 0) + 1
    return False, None


def defect(params: SegreVeroneseParams, s: int, computed: int) -> DefectRecord:
    """Shortfall of a computed secant dimension against the expected one."""
    exp = expected_secant_dim(params, s)
    if computed > exp:
        raise ValueError("computed dimension exceeds the parameter-count bound")
    return DefectRecord(exp, computed, exp - computed)
