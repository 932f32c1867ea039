"""Exponential sum measurement: single sums over the scalar stream, the
polynomial-phase double sums sigma_n on a p^s x p^s grid, and the
single-to-double reduction residual.

Summation is deterministic: fixed 4096-term blocks, compensated (exactly
rounded) per-block sums, partials combined in ascending block order.  Thread
counts never change the result.
"""

from __future__ import annotations

import math
import warnings
from collections import Counter
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from ..arith import IntMatrix, det_exact, mat_pow_mod, mat_vec_mod, vec_dot
from ..errors import GridTooLargeError, PeriodTooLargeError, PreconditionViolatedError
from ..generator import GeneratorConfig
from ..padic import H_coeffs, h_coeffs, order_mod, period_profile, theta_matrix

_BLOCK = 4096
_HISTOGRAM_LIMIT = 1 << 24
_TWO_PI = 2.0 * math.pi


@dataclass(frozen=True)
class SumReport:
    """Measured exponential sum over N stream terms."""

    n: int
    value: complex
    abs_value: float
    normalized: float
    rho: float
    method: str
    error_bound: float


def _row_times_matrix(v: Sequence[int], a: IntMatrix, modulus: int) -> tuple[int, ...]:
    return tuple(
        sum(v[k] * a.entries[k][j] for k in range(a.d)) % modulus for j in range(a.d)
    )


def scalar_residues(cfg: GeneratorConfig, n_terms: int, n0: int = 0):
    """Residues v A^n u mod p^t for n = n0 .. n0+n_terms-1.

    Returns an int64 numpy array when the modulus fits the fast path, else a
    Python list of exact integers."""
    if cfg.v is None:
        raise ValueError("scalar residues need v in the config")
    if n_terms <= 0:
        return np.zeros(0, dtype=np.int64)
    mod = cfg.m.modulus
    if mod <= _HISTOGRAM_LIMIT:
        return _scalar_residues_fast(cfg, n_terms, n0)
    out = []
    u = cfg.u0
    if n0:
        power = mat_pow_mod(cfg.a, n0, cfg.m)
        u = mat_vec_mod(power, u, cfg.m)
    for _ in range(n_terms):
        out.append(vec_dot(cfg.v, u) % mod)
        u = mat_vec_mod(cfg.a, u, cfg.m)
    return out


def _scalar_residues_fast(cfg: GeneratorConfig, n_terms: int, n0: int) -> np.ndarray:
    """Baby-step giant-step evaluation of v A^n u with int64 arithmetic."""
    mod = cfg.m.modulus
    d = cfg.a.d
    block = max(1, min(math.isqrt(n_terms) + 1, 4096))
    baby = np.empty((d, block), dtype=np.int64)
    u = cfg.u0
    if n0:
        u = mat_vec_mod(mat_pow_mod(cfg.a, n0, cfg.m), u, cfg.m)
    for j in range(block):
        baby[:, j] = u
        u = mat_vec_mod(cfg.a, u, cfg.m)
    a_block = mat_pow_mod(cfg.a, block, cfg.m)
    out = np.empty(n_terms, dtype=np.int64)
    v_row = cfg.v
    pos = 0
    while pos < n_terms:
        width = min(block, n_terms - pos)
        vals = (np.asarray(v_row, dtype=np.int64) @ baby[:, :width]) % mod
        out[pos : pos + width] = vals
        pos += width
        if pos < n_terms:
            v_row = _row_times_matrix(v_row, a_block, mod)
    return out


def _angles(block, mod: int) -> np.ndarray:
    if isinstance(block, np.ndarray):
        return block.astype(np.float64) * (_TWO_PI / mod)
    # exact integers, possibly larger than 2^53: float(x)/float(mod) is a
    # correctly rounded ratio of correctly rounded operands
    return np.array([float(x) / float(mod) for x in block], dtype=np.float64) * _TWO_PI


def _partial_sum(block, mod: int) -> tuple[float, float]:
    ang = _angles(block, mod)
    return math.fsum(np.cos(ang).tolist()), math.fsum(np.sin(ang).tolist())


def exp_sum(
    cfg: GeneratorConfig,
    n_terms: int,
    method: str = "auto",
    threads: int = 1,
) -> SumReport:
    """S = sum_{n=0}^{N-1} e(v A^n u / p^t), with each phase an exact integer
    over p^t.

    method "direct": compensated summation in fixed index order over fixed
    4096-term blocks.  method "histogram" (available for p^t <= 2^24): count
    residue multiplicities, then sum c_x e(x / p^t).
    """
    if n_terms < 1:
        raise ValueError("N must be >= 1")
    if cfg.validated is None or not cfg.validated.accepted:
        warnings.warn(
            "generator config is not validated (or was rejected); "
            "sum bounds assume a proper pair",
            RuntimeWarning,
            stacklevel=2,
        )
    mod = cfg.m.modulus
    if method == "auto":
        method = "histogram" if mod <= _HISTOGRAM_LIMIT else "direct"
    if method == "histogram" and mod > _HISTOGRAM_LIMIT:
        raise PreconditionViolatedError("histogram method needs p^t <= 2^24")
    residues = scalar_residues(cfg, n_terms)

    if method == "histogram":
        counts = np.bincount(residues, minlength=0)
        nz = np.nonzero(counts)[0]
        weights = counts[nz].astype(np.float64)
        ang = nz.astype(np.float64) * (_TWO_PI / mod)
        re = math.fsum((weights * np.cos(ang)).tolist())
        im = math.fsum((weights * np.sin(ang)).tolist())
    elif method == "direct":
        blocks = [
            residues[i : i + _BLOCK] for i in range(0, n_terms, _BLOCK)
        ]
        if threads > 1 and len(blocks) > 1:
            with ThreadPoolExecutor(max_workers=threads) as pool:
                partials = list(pool.map(lambda b: _partial_sum(b, mod), blocks))
        else:
            partials = [_partial_sum(b, mod) for b in blocks]
        re = math.fsum(p[0] for p in partials)
        im = math.fsum(p[1] for p in partials)
    else:
        raise ValueError(f"unknown method {method!r}")

    value = complex(re, im)
    # Per-term phase error < 3 ulp of pi-scale plus sin/cos rounding; the
    # exactly rounded block sums contribute one rounding per combine.
    error_bound = 4.0e-15 * n_terms + 1.0e-12
    rho = math.log(n_terms) / (cfg.m.t * math.log(cfg.m.p)) if n_terms > 1 else 0.0
    return SumReport(
        n=n_terms,
        value=value,
        abs_value=abs(value),
        normalized=abs(value) / n_terms,
        rho=rho,
        method=method,
        error_bound=error_bound,
    )


@dataclass(frozen=True)
class FullPeriodRow:
    t: int
    tau: int
    abs_value: float
    theta: float


def full_period_exponent(
    cfg: GeneratorConfig,
    t_range: Sequence[int],
    tau_guard: int = 10**7,
    threads: int = 1,
) -> list[FullPeriodRow]:
    """Measured exponents theta_t = log|S(tau_t)| / log tau_t for each t."""
    rows = []
    p = cfg.m.p
    for t in t_range:
        profile = period_profile(cfg.a, p, t)
        tau = profile.tau(t)
        if tau > tau_guard:
            raise PeriodTooLargeError(f"tau_{t} = {tau} exceeds guard {tau_guard}")
        rep = exp_sum(cfg.at_exponent(t), tau, threads=threads)
        theta = (
            math.log(rep.abs_value) / math.log(tau)
            if rep.abs_value > 0
            else float("-inf")
        )
        rows.append(FullPeriodRow(t, tau, rep.abs_value, theta))
    return rows


def _product_multiplicities(m: int) -> Counter:
    """Multiplicities of the products x*y for 1 <= x, y <= m."""
    prods: Counter = Counter()
    if m <= 1500:
        for x in range(1, m + 1):
            for y in range(1, m + 1):
                prods[x * y] += 1
        return prods
    ys = np.arange(1, m + 1, dtype=np.int64)
    for x in range(1, m + 1):
        vals, cnts = np.unique(x * ys, return_counts=True)
        for v, c in zip(vals.tolist(), cnts.tolist()):
            prods[v] += c
    return prods


def double_sum_sigma(
    cfg: GeneratorConfig,
    n: int,
    s: int,
    r: int | None = None,
    grid_guard: int = 10**8,
) -> complex:
    """sigma_n = sum_{x,y=1}^{p^s} e(f_n(x, y)) with the exact polynomial phase
    f_n(x, y) = (sum_j H_{n,j} p^{sj} (xy)^j) / (p^t r! det A).

    By the expansion congruence this equals the inner double sum of the
    single-to-double reduction applied to the stream."""
    if cfg.v is None:
        raise ValueError("double sums need v in the config")
    p, t = cfg.m.p, cfg.m.t
    if r is None:
        r = t // s
    grid = p**s
    if r > grid:
        raise PreconditionViolatedError(f"r = {r} exceeds p^s = {grid}")
    if grid * grid > grid_guard:
        raise GridTooLargeError(f"grid p^{2 * s} exceeds guard {grid_guard}")
    tau_s = order_mod(cfg.a, cfg.m.at_exponent(s))
    b = theta_matrix(cfg.a, p, s, tau_s)
    h = h_coeffs(cfg.a, cfg.u0, cfg.v, b, n, r)
    big_h = H_coeffs(h, r, s, p)
    denom = p**t * math.factorial(r) * det_exact(cfg.a)
    sign = 1 if denom > 0 else -1
    dabs = abs(denom)
    coeffs = [big_h[j] * p ** (s * j) for j in range(r + 1)]

    total = 0.0 + 0.0j
    for prod, mult in sorted(_product_multiplicities(grid).items()):
        acc = 0
        for c in reversed(coeffs):
            acc = acc * prod + c
        frac = (acc * sign) % dabs
        total += mult * np.exp(2j * math.pi * (float(frac) / float(dabs)))
    return complex(total)


def korobov_reduction_residual(
    angles: Sequence[float | Fraction],
    n_terms: int,
    m: int,
    a: int,
) -> float:
    """rhs - lhs of the single-to-double reduction inequality
    |sum_x e(f(x))| <= (1/M^2) sum_x |sum_{y,z<=M} e(f(x + a y z))| + 2 a M^2,
    evaluated on a concrete phase table (indices 0 .. N-1 + a M^2)."""
    if m < 1 or a < 0 or n_terms < 1:
        raise ValueError("need M >= 1, a >= 0, N >= 1")
    needed = n_terms + a * m * m
    if len(angles) < needed:
        raise ValueError(f"need phase values for {needed} indices")
    table = np.exp(
        2j * math.pi * np.array([float(x) for x in angles[:needed]], dtype=np.float64)
    )
    lhs = abs(complex(np.sum(table[:n_terms])))
    inner = np.zeros(n_terms, dtype=np.complex128)
    for prod, mult in sorted(_product_multiplicities(m).items()):
        off = a * prod
        inner += mult * table[off : off + n_terms]
    rhs = float(np.sum(np.abs(inner))) / (m * m) + 2.0 * a * m * m
    return rhs - lhs


def korobov_reduction_check(cfg: GeneratorConfig, n_terms: int, m: int, a: int) -> float:
    """The reduction residual on the generator's own phase function
    f(x) = (v A^x u)/p^t; nonnegative by the inequality."""
    mod = cfg.m.modulus
    residues = scalar_residues(cfg, n_terms + a * m * m)
    if isinstance(residues, np.ndarray):
        angles = residues.astype(np.float64) / float(mod)
    else:
        angles = [float(x) / float(mod) for x in residues]
    return korobov_reduction_residual(angles, n_terms, m, a)
