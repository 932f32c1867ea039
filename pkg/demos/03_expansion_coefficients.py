"""The p-adic expansion behind the sum bounds: writing the subsequence
u_{n + tau_s m} as a polynomial in m with integer coefficients whose
p-divisibility is controlled in windows of d consecutive terms.

Everything here is an exact integer identity, checked on the spot.
"""

from math import comb, factorial

from matprng import IntMatrix, PrimePowerModulus, char_poly, det_exact
from matprng.arith import mat_pow, mat_vec, valuation, vec_dot
from matprng.padic import (
    H_coeffs,
    binomial_to_monomial,
    compute_w,
    h_coeffs,
    order_mod,
    theta_matrix,
)

fib = IntMatrix.from_rows([[0, 1], [1, 1]])
p, t, s = 3, 6, 2
u, v = (1, 0), (1, 0)

tau_s = order_mod(fib, PrimePowerModulus(p, s))
b = theta_matrix(fib, p, s, tau_s)
print(f"tau_{s} = {tau_s};  A^{tau_s} = I + {p}^{s} B with B = {b.entries}")

det = det_exact(fib)
h = h_coeffs(fib, u, v, b, 0, 9)
print("\nexpansion coefficients h_{0,j} (det A folded in):", h[:5], "...")
print("p-valuations:", [valuation(x, p) for x in h])
w = compute_w(char_poly(fib), p)
print(f"window constant w = {w}: every pair of consecutive h has one value with valuation < w")

print("\nexact binomial identity  det A * u_{n + tau_s m} = sum_j h_j p^(sj) C(m, j):")
for m in (0, 1, 7):
    lhs = det * vec_dot(v, mat_vec(mat_pow(fib, tau_s * m), u))
    rhs = sum(h[j] * p ** (s * j) * comb(m, j) for j in range(m + 1))
    print(f"  m = {m}: {lhs} == {rhs}: {lhs == rhs}")

r = t // s
big = H_coeffs(h, r, s, p)
print(f"\nmonomial form with r = {r} (binomial-to-monomial rows are Stirling numbers):")
for i in range(r + 1):
    print(f"  c_{i} = {binomial_to_monomial(i)}")
print("H_{0,j} =", big)

mod = p**t
print(f"\ncongruence  r! det A u_(n + tau_s m) = sum_j H_j p^(sj) m^j  (mod {p}^{t}):")
for m in (0, 2, 9):
    lhs = factorial(r) * det * vec_dot(v, mat_vec(mat_pow(fib, tau_s * m), u))
    rhs = sum(big[j] * p ** (s * j) * m**j for j in range(r + 1))
    print(f"  m = {m}: difference mod {mod} = {(lhs - rhs) % mod}")
