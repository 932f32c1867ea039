"""Generate matrix congruential streams and inspect how the period grows
with the modulus exponent.

The generator iterates u_{n+1} = A u_n (mod p^t) over integer vectors.  With
the Fibonacci companion matrix the first coordinate walks the Fibonacci
numbers, so the period modulo 3^s is the classical Pisano period.
"""

from matprng import GeneratorConfig, GeneratorState, IntMatrix, PrimePowerModulus
from matprng.generator import jump_ahead, scalar_sequence, step
from matprng.padic import period_profile

fib = IntMatrix.from_rows([[0, 1], [1, 1]])
cfg = GeneratorConfig.create(fib, PrimePowerModulus(3, 4), (0, 1), (1, 0))

print("first coordinates of the stream mod 81:")
state = GeneratorState(cfg)
coords = [state.u[0]] + [step(state)[0] for _ in range(11)]
print(" ", coords)

print("\nscalar sequence v A^n u (same thing through the dot product):")
print(" ", scalar_sequence(cfg, 0, 12))

print("\njump-ahead agrees with stepping:")
stepped = GeneratorState(cfg)
for _ in range(1000):
    step(stepped)
jumped = jump_ahead(GeneratorState(cfg), 1000)
print("  index", jumped.n, "vectors equal:", jumped.u == stepped.u)

print("\nperiod growth for p = 3 (tau_s = order of A mod 3^s):")
profile = period_profile(fib, 3, 8)
for s, tau in enumerate(profile.taus, start=1):
    print(f"  s = {s}:  tau_s = {tau}")
print(
    "stable law: tau_s = {} * 3^(s - {}) from s = {} on".format(
        profile.tau_star, profile.beta_star, profile.s_star
    )
)

print("\nsame matrix, p = 7:")
print(" ", period_profile(fib, 7, 3).taus)
