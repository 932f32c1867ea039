"""Exact counts of the power-sum system

    x_1^j + ... + x_k^j = y_1^j + ... + y_k^j   (j = 1..r),  1 <= x_i, y_i <= M.

The production counter groups tuples by their power-sum vector (meet in the
middle); a genuinely independent nested-loop counter is kept for
cross-checking.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass
from itertools import combinations_with_replacement, product
from typing import TYPE_CHECKING

from ..errors import EnumerationTooLargeError

if TYPE_CHECKING:
    from .bounds import FordBound

DEFAULT_ENUMERATION_GUARD = 10**8


def vinogradov_count(k: int, r: int, m: int, guard: int = DEFAULT_ENUMERATION_GUARD) -> int:
    """Exact solution count: map each x-tuple to its power-sum vector
    (sum x_i^j)_{j<=r} and add up squared multiplicities."""
    if k < 1 or r < 1 or m < 1:
        raise ValueError("need k, r, M >= 1")
    if m**k > guard:
        raise EnumerationTooLargeError(f"M^k = {m**k} exceeds guard {guard}")
    table: Counter = Counter()
    k_fact = math.factorial(k)
    for combo in combinations_with_replacement(range(1, m + 1), k):
        mult = k_fact
        for c in Counter(combo).values():
            mult //= math.factorial(c)
        key = tuple(sum(x**j for x in combo) for j in range(1, r + 1))
        table[key] += mult
    return sum(c * c for c in table.values())


@dataclass(frozen=True)
class VinogradovInstance:
    """One solved instance next to its bound: the exact count, the count
    bound value, and whether the bound's r >= c0 d hypothesis held."""

    k: int
    r: int
    m: int
    count: int
    ford: "FordBound"

    @property
    def bound_applies(self) -> bool:
        return self.ford.valid


def solve_instance(k: int, r: int, m: int, d: int, c0: int = 1000) -> VinogradovInstance:
    """Exact count bundled with the count bound evaluated at (r, d, M)."""
    from .bounds import ford_bound

    return VinogradovInstance(k, r, m, vinogradov_count(k, r, m), ford_bound(r, d, m, c0))


def vinogradov_count_naive(k: int, r: int, m: int, guard: int = DEFAULT_ENUMERATION_GUARD) -> int:
    """Independent brute force: iterate all ordered (x, y) tuple pairs and
    test the r equations directly.  O(M^{2k}); for cross-checks only."""
    if k < 1 or r < 1 or m < 1:
        raise ValueError("need k, r, M >= 1")
    if m ** (2 * k) > guard:
        raise EnumerationTooLargeError(f"M^(2k) = {m ** (2 * k)} exceeds guard {guard}")
    count = 0
    rng = range(1, m + 1)
    xs_list = [(xs, [sum(x**j for x in xs) for j in range(1, r + 1)]) for xs in product(rng, repeat=k)]
    for _, px in xs_list:
        for _, py in xs_list:
            if px == py:
                count += 1
    return count
