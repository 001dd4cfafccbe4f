"""Sifting primes with the Zeta recursions."""

import math

from formula_forge import render, rationals, sift_primes, zeta_step_basic
from formula_forge.errors import SoundnessError
from formula_forge.numtheory import eratosthenes
from formula_forge.zeta import SieveStats, initial_state, run_improved

# basic recursion: primes show up as gaps of two between known products
s = initial_state()
for _ in range(2):
    s = zeta_step_basic(s, 100)
    print("basic k=%d primes" % s.k, s.primes.values)
try:
    zeta_step_basic(s, 100)
except SoundnessError as exc:
    print("basic k=3:", exc)

# improved recursion: each iteration fills a dyadic window completely
state = run_improved(7)
print("covered 1..%d" % state.naturals.values[-1])
for v in (6, 7, 255, 256):
    print(v, render(state.naturals.expr_for(v)))

# agreement with a classic sieve and the growth of the work counter
for bits in range(8, 15):
    stats = SieveStats()
    primes = sift_primes(bits, stats=stats)
    n = 2**bits
    print(bits, len(primes), primes == eratosthenes(n), stats.manipulations, round(stats.manipulations / (n * n / math.log(n)), 3))

# rationals built from the same primes and exponents
for r in rationals(run_improved(1), 6)[:8]:
    print(r, render(r.numerator), render(r.denominator))
