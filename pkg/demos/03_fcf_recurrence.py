"""Generating FCF encodings in bulk with the subset-sum recurrence."""

from formula_forge import encode_fcf, render
from formula_forge.fcfgen import GenerationStats, fcf_generate, fcf_step, initial_level

level = initial_level()
for _ in range(3):
    level = fcf_step(level)
    print(f"level {level.k}: {len(level)} expressions, first few:", [render(e) for e in level.expressions[:5]])

# the last level covers 1..65535, already sorted, matching the direct encoder
print(render(level.expressions[254]))
print(all(e is encode_fcf(v) for v, e in enumerate(level.expressions, 1)))

# work stays linear in the number of generated integers
for target in (2**8, 2**12, 2**16):
    stats = GenerationStats()
    fcf_generate(target, stats=stats)
    print(f"n={target:6d} iterations={stats.iterations} manipulations={stats.manipulations} per n={stats.manipulations / target:.2f}")
