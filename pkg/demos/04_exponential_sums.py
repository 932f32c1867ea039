"""Measure exponential sums over the stream and compare them with the
explicit envelope shapes.

|S(N)| near sqrt(N) is what a well-distributed stream looks like; the
full-period exponents theta_t hover around 1 - 1/d = 0.5 for d = 2.
"""

from matprng import GeneratorConfig, IntMatrix, PrimePowerModulus
from matprng.analysis import (
    double_sum_sigma,
    exp_sum,
    full_period_exponent,
    korobov_reduction_check,
    theorem_envelope,
)

fib = IntMatrix.from_rows([[0, 1], [1, 1]])
cfg = GeneratorConfig.create(fib, PrimePowerModulus(3, 4), (1, 0), (1, 0), level="thm1")

print("single sums S(N) = sum e(v A^n u / 81):")
print(f"  {'N':>5s} {'|S|':>10s} {'|S|/N':>8s} {'envelope':>12s}")
for n in (24, 72, 216, 648):
    rep = exp_sum(cfg, n)
    env = theorem_envelope(n, 3, 4, 2, eta=1.0, c=1.0)
    print(f"  {n:5d} {rep.abs_value:10.4f} {rep.normalized:8.4f} {float(env):12.4f}")

print("\nfull-period exponents theta_t = log|S(tau_t)| / log tau_t (reference 0.5):")
for row in full_period_exponent(cfg, range(4, 9)):
    print(f"  t = {row.t}: tau = {row.tau:6d}  |S| = {row.abs_value:9.3f}  theta = {row.theta:.4f}")

print("\npolynomial-phase double sum sigma_0 on the 3^s x 3^s grid:")
for s, r in ((1, 3), (2, None)):
    sigma = double_sum_sigma(cfg, n=0, s=s, r=r)
    print(f"  s = {s}: |sigma_0| = {abs(sigma):.4f}  (grid {3**s} x {3**s})")

print("\nsingle-to-double reduction residual (rhs - lhs of the inequality, >= 0):")
for m, a in ((1, 0), (3, 8), (4, 24)):
    res = korobov_reduction_check(cfg, 60, m, a)
    print(f"  M = {m}, a = {a:2d}: residual = {res:.4f}")
