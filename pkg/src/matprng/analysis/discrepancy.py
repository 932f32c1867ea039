"""Exact discrepancy of rational point sets in [0,1)^d.

Extreme discrepancy (free boxes) is computed exactly for d <= 2; anchored
(star) discrepancy for d <= 3.  All arithmetic is integer: with points on the
grid k/den the objective count/N - volume is scaled by N * den^d, so the
supremum over boxes is resolved exactly.  The supremum over real boxes is
attained in the limit at "critical" configurations: closed boxes with faces
on point coordinates (excess side) and open boxes with faces on point
coordinates or the domain boundary (deficit side); both are enumerated.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from ..errors import DimensionTooLargeError, TooManyPointsError
from ..generator import PointSet

EXTREME_POINT_CAP = 4096
STAR_POINT_CAP_3D = 512


@dataclass(frozen=True)
class BoxCount:
    """Diagnostic count of points in one closed box."""

    bounds: tuple[tuple[Fraction, Fraction], ...]
    count: int
    volume: Fraction


@dataclass(frozen=True)
class DiscrepancyReport:
    """Exact discrepancy (a rational number) plus optional box diagnostics
    and, when requested, the frequency-sum bound next to it."""

    n: int
    d: int
    kind: str  # "extreme" | "star"
    value: Fraction
    value_float: float
    extreme_upper_bound: Fraction | None = None  # 2^d * star, reported for kind="star"
    boxes: tuple[BoxCount, ...] = ()
    ks_bound: float | None = None
    ks_v: int | None = None


def _normalize(points) -> tuple[list[tuple[int, ...]], int, int]:
    if isinstance(points, PointSet):
        return [tuple(pt) for pt in points.nums], points.den, points.d
    pts = [tuple(Fraction(c) for c in pt) for pt in points]
    if not pts:
        raise ValueError("empty point set")
    d = len(pts[0])
    den = 1
    for pt in pts:
        for c in pt:
            den = den * c.denominator // math.gcd(den, c.denominator)
    nums = [tuple(int(c * den) for c in pt) for pt in pts]
    for pt in nums:
        if any(x < 0 or x >= den for x in pt):
            raise ValueError("points must lie in [0, 1)^d")
    return nums, den, d


def _int_array(values, big: bool) -> np.ndarray:
    return np.array(values, dtype=object if big else np.int64)


def _accum_max(arr: np.ndarray) -> np.ndarray:
    return np.maximum.accumulate(arr)


def _extreme_1d(nums: list[int], den: int, n: int) -> Fraction:
    import bisect

    sorted_vals = sorted(nums)
    xs = sorted(set(nums))
    big = n * den * den >= 2**62
    xv = _int_array(xs, big)
    cnt = _int_array([bisect.bisect_right(sorted_vals, x) - bisect.bisect_left(sorted_vals, x) for x in xs], big)
    cum = np.cumsum(cnt)  # points with value <= xs[k]
    # excess: closed interval [xs[a], xs[b]]
    p_term = cum * den - n * xv
    q_term = n * xv - (cum - cnt) * den  # subtracts count with value < xs[a]
    best = int(np.max(p_term + _accum_max(q_term)))
    # deficit: open interval with edges from {0} + xs + {den}
    ev = sorted({0, den, *xs})
    e_arr = _int_array(ev, big)
    cle = _int_array([bisect.bisect_right(sorted_vals, e) for e in ev], big)
    clt = _int_array([bisect.bisect_left(sorted_vals, e) for e in ev], big)
    val_b = n * e_arr - clt * den
    val_a = cle * den - n * e_arr
    run = _accum_max(val_a)
    if len(ev) > 1:
        best = max(best, int(np.max(val_b[1:] + run[:-1])))
    return Fraction(best, n * den)


def _extreme_2d(nums: list[tuple[int, int]], den: int, n: int) -> Fraction:
    den2 = den * den
    big = n * den2 >= 2**62
    xs = sorted({x for x, _ in nums})
    ys = sorted({y for _, y in nums})
    y_index = {y: i for i, y in enumerate(ys)}
    ysv = _int_array(ys, big)
    by_x: dict[int, list[int]] = {x: [] for x in xs}
    for x, y in nums:
        by_x[x].append(y_index[y])
    ky = len(ys)
    best = 0

    # Excess part: closed boxes with faces on point coordinates.
    for ai in range(len(xs)):
        cnt = np.zeros(ky, dtype=object if big else np.int64)
        for bi in range(ai, len(xs)):
            for yi in by_x[xs[bi]]:
                cnt[yi] += 1
            wx = xs[bi] - xs[ai]
            cum = np.cumsum(cnt)
            prev = cum - cnt
            p_term = cum * den2 - (n * wx) * ysv
            q_term = (n * wx) * ysv - prev * den2
            cand = p_term + _accum_max(q_term)
            m = int(np.max(cand))
            if m > best:
                best = m

    # Deficit part: open boxes with faces on point coordinates or 0/1.
    ex = sorted({0, den, *xs})
    ey = sorted({0, den, *ys})
    eyv = _int_array(ey, big)
    ey_index = {y: i for i, y in enumerate(ey)}
    by_x_e: dict[int, list[int]] = {x: [] for x in ex}
    for x, y in nums:
        by_x_e[x].append(ey_index[y])
    key = len(ey)
    for ai in range(len(ex) - 1):
        cnt = np.zeros(key, dtype=object if big else np.int64)
        for bi in range(ai + 1, len(ex)):
            if bi - 1 > ai:
                for yi in by_x_e[ex[bi - 1]]:
                    cnt[yi] += 1
            wx = ex[bi] - ex[ai]
            cle = np.cumsum(cnt)  # interior pts with y <= ey[k]
            clt = cle - cnt  # interior pts with y < ey[k]
            val_b = (n * wx) * eyv - clt * den2
            val_a = cle * den2 - (n * wx) * eyv
            run = _accum_max(val_a)
            cand = val_b[1:] + run[:-1]
            m = int(np.max(cand))
            if m > best:
                best = m
    return Fraction(best, n * den2)


def _star_1d(nums: list[int], den: int, n: int) -> Fraction:
    xs = sorted(set(nums))
    best = 0
    for y in xs:
        cnt_le = sum(1 for v in nums if v <= y)
        best = max(best, cnt_le * den - n * y)
    for y in sorted({den, *xs}):
        cnt_lt = sum(1 for v in nums if v < y)
        best = max(best, n * y - cnt_lt * den)
    return Fraction(best, n * den)


def _star_2d(nums: list[tuple[int, int]], den: int, n: int) -> Fraction:
    den2 = den * den
    big = n * den2 >= 2**62
    xs = sorted({x for x, _ in nums})
    ys = sorted({y for _, y in nums})
    ysv = _int_array(ys, big)
    y_index = {y: i for i, y in enumerate(ys)}
    best = 0
    # excess at corners (y1, y2) on point coordinates, closed count
    cnt = np.zeros(len(ys), dtype=object if big else np.int64)
    by_x: dict[int, list[int]] = {}
    for x, y in nums:
        by_x.setdefault(x, []).append(y_index[y])
    for x in xs:
        for yi in by_x[x]:
            cnt[yi] += 1
        cum = np.cumsum(cnt)
        best = max(best, int(np.max(cum * den2 - (n * x) * ysv)))
    # deficit at corners from coordinates or 1, strict count
    ex = sorted({den, *xs})
    ey = sorted({den, *ys})
    eyv = _int_array(ey, big)
    cnt2 = np.zeros(len(ey), dtype=object if big else np.int64)
    ey_index = {y: i for i, y in enumerate(ey)}
    by_x_e: dict[int, list[int]] = {}
    for x, y in nums:
        by_x_e.setdefault(x, []).append(ey_index[y])
    xi = 0
    xs_sorted = sorted(by_x_e)
    for y1 in ex:
        while xi < len(xs_sorted) and xs_sorted[xi] < y1:
            for yi in by_x_e[xs_sorted[xi]]:
                cnt2[yi] += 1
            xi += 1
        cum = np.cumsum(cnt2)
        clt = cum - cnt2
        best = max(best, int(np.max((n * y1) * eyv - clt * den2)))
    return Fraction(best, n * den2)


def _star_3d(nums: list[tuple[int, int, int]], den: int, n: int) -> Fraction:
    den3 = den * den * den
    big = n * den3 >= 2**62
    dtype = object if big else np.int64
    xs = sorted({p[0] for p in nums})
    ys = sorted({p[1] for p in nums})
    zs = sorted({p[2] for p in nums})
    y_index = {y: i for i, y in enumerate(ys)}
    z_index = {z: i for i, z in enumerate(zs)}
    ysv = _int_array(ys, big)
    zsv = _int_array(zs, big)
    best = 0
    # excess: closed counts, corner coordinates on points
    grid = np.zeros((len(ys), len(zs)), dtype=dtype)
    by_x: dict[int, list[tuple[int, int]]] = {}
    for x, y, z in nums:
        by_x.setdefault(x, []).append((y_index[y], z_index[z]))
    for x in xs:
        for yi, zi in by_x[x]:
            grid[yi, zi] += 1
        cum = np.cumsum(np.cumsum(grid, axis=0), axis=1)
        vol = (n * x) * np.multiply.outer(ysv, zsv)
        best = max(best, int(np.max(cum * den3 - vol)))
    # deficit: strict counts, corners on coordinates or 1
    ey = sorted({den, *ys})
    ez = sorted({den, *zs})
    ey_index = {y: i for i, y in enumerate(ey)}
    ez_index = {z: i for i, z in enumerate(ez)}
    eyv = _int_array(ey, big)
    ezv = _int_array(ez, big)
    grid2 = np.zeros((len(ey), len(ez)), dtype=dtype)
    by_x_e: dict[int, list[tuple[int, int]]] = {}
    for x, y, z in nums:
        by_x_e.setdefault(x, []).append((ey_index[y], ez_index[z]))
    xs_sorted = sorted(by_x_e)
    xi = 0
    for y1 in sorted({den, *xs}):
        while xi < len(xs_sorted) and xs_sorted[xi] < y1:
            for yi, zi in by_x_e[xs_sorted[xi]]:
                grid2[yi, zi] += 1
            xi += 1
        cum = np.cumsum(np.cumsum(grid2, axis=0), axis=1)
        clt = np.zeros_like(cum)
        clt[1:, 1:] = cum[:-1, :-1]  # strict in both y and z
        vol = (n * y1) * np.multiply.outer(eyv, ezv)
        best = max(best, int(np.max(vol - clt * den3)))
    return Fraction(best, n * den3)


def box_counts(points, boxes: Sequence[Sequence[Sequence]]) -> tuple[BoxCount, ...]:
    """Exact closed-box counts A(N, B) for diagnostic boxes given as
    [[lo_1, hi_1], ..., [lo_d, hi_d]] with rational bounds."""
    nums, den, d = _normalize(points)
    out = []
    for box in boxes:
        bounds = tuple((Fraction(lo), Fraction(hi)) for lo, hi in box)
        if len(bounds) != d:
            raise ValueError("box dimension mismatch")
        count = 0
        for pt in nums:
            if all(lo <= Fraction(x, den) <= hi for x, (lo, hi) in zip(pt, bounds)):
                count += 1
        volume = math.prod((hi - lo for lo, hi in bounds), start=Fraction(1))
        out.append(BoxCount(bounds, count, volume))
    return tuple(out)


def exact_discrepancy(
    points,
    kind: str = "extreme",
    boxes: Sequence | None = None,
) -> DiscrepancyReport:
    """Exact discrepancy of a rational point set.

    kind="extreme": free boxes, d <= 2, N <= 4096.
    kind="star": anchored boxes [0, y), d <= 3 (N <= 512 for d = 3); the
    report carries 2^d * star as an upper bound for the extreme value.
    """
    nums, den, d = _normalize(points)
    n = len(nums)
    if kind == "extreme":
        if d > 2:
            raise DimensionTooLargeError("exact extreme discrepancy is limited to d <= 2")
        if n > EXTREME_POINT_CAP:
            raise TooManyPointsError(f"N = {n} exceeds cap {EXTREME_POINT_CAP}")
        if d == 1:
            value = _extreme_1d([pt[0] for pt in nums], den, n)
        else:
            value = _extreme_2d(nums, den, n)
        upper = None
    elif kind == "star":
        if d > 3:
            raise DimensionTooLargeError("exact star discrepancy is limited to d <= 3")
        if d == 3 and n > STAR_POINT_CAP_3D:
            raise TooManyPointsError(f"N = {n} exceeds cap {STAR_POINT_CAP_3D} for d = 3")
        if n > EXTREME_POINT_CAP:
            raise TooManyPointsError(f"N = {n} exceeds cap {EXTREME_POINT_CAP}")
        if d == 1:
            value = _star_1d([pt[0] for pt in nums], den, n)
        elif d == 2:
            value = _star_2d(nums, den, n)
        else:
            value = _star_3d(nums, den, n)
        upper = Fraction(2**d) * value
    else:
        raise ValueError(f"unknown kind {kind!r}")
    diag = box_counts(points, boxes) if boxes else ()
    return DiscrepancyReport(
        n=n, d=d, kind=kind, value=value, value_float=float(value),
        extreme_upper_bound=upper, boxes=diag,
    )


def full_discrepancy_report(
    cfg,
    n_points: int,
    v_range: int,
    boxes: Sequence | None = None,
    threads: int = 1,
    constant_base: float = 1.5,
) -> DiscrepancyReport:
    """Exact discrepancy of the first N stream points together with the
    frequency-sum bound at range V; extreme for d <= 2, star for d = 3."""
    from ..generator import fractional_points
    from .bounds import koksma_szusz_bound

    pts = fractional_points(cfg, n_points)
    kind = "extreme" if cfg.a.d <= 2 else "star"
    rep = exact_discrepancy(pts, kind=kind, boxes=boxes)
    ks = koksma_szusz_bound(cfg, n_points, v_range, threads=threads, constant_base=constant_base)
    return DiscrepancyReport(
        n=rep.n, d=rep.d, kind=rep.kind, value=rep.value, value_float=rep.value_float,
        extreme_upper_bound=rep.extreme_upper_bound, boxes=rep.boxes,
        ks_bound=float(ks.value), ks_v=v_range,
    )


def extreme_discrepancy_bruteforce(points) -> Fraction:
    """Reference implementation: enumerate every pair of critical edge values
    per axis with every open/closed combination.  Exponential in d and
    quadratic-per-axis; for small cross-check sets only."""
    nums, den, d = _normalize(points)
    n = len(nums)
    axes = []
    for j in range(d):
        vals = sorted({0, den, *(pt[j] for pt in nums)})
        axes.append(vals)

    from itertools import product as iproduct

    best = Fraction(0)
    intervals_per_axis = []
    for j in range(d):
        intervals = []
        vals = axes[j]
        for ai in range(len(vals)):
            for bi in range(ai, len(vals)):
                for open_lo in (False, True):
                    for open_hi in (False, True):
                        intervals.append((vals[ai], vals[bi], open_lo, open_hi))
        intervals_per_axis.append(intervals)
    for combo in iproduct(*intervals_per_axis):
        count = 0
        for pt in nums:
            ok = True
            for x, (lo, hi, open_lo, open_hi) in zip(pt, combo):
                if open_lo:
                    if x <= lo:
                        ok = False
                        break
                elif x < lo:
                    ok = False
                    break
                if open_hi:
                    if x >= hi:
                        ok = False
                        break
                elif x > hi:
                    ok = False
                    break
            if ok:
                count += 1
        vol = Fraction(1)
        for lo, hi, _, _ in combo:
            vol *= Fraction(hi - lo, den)
        best = max(best, abs(Fraction(count, n) - vol))
    return best
