# The critical branching process behind the unit cascade.
#
# Near alpha = 1 each fresh unit spawns roughly Poisson(1) new units in
# the next round, so the cascade behaves like a critical Galton-Watson
# process: it dies out almost surely, but slowly, with survival
# probability at generation t decaying like 2/t.  That slow decay is
# what separates fixing n^q variables for q below one third from q
# above it.

import math

from critsat import gw_survival, gw_survival_exact, rounds_budget

# Exact survival via the generating-function recursion, against the
# 2/t asymptotic.
print(" gen   exact P(survive)   gen * P")
for gen in (1, 3, 10, 30, 100, 300, 1000):
    p = gw_survival_exact(gen)
    print(f"{gen:>4}   {p:16.6f}   {gen * p:7.3f}")

# Monte Carlo agrees.  One vectorized Poisson draw per generation,
# deterministic in the seed.
est = gw_survival(x0=1, gen=100, trials=200_000, seed=1)
exact = gw_survival_exact(100)
print()
print(f"simulated P(survive 100) = {est.estimate:.5f} +- {est.stderr:.5f}")
print(f"exact     P(survive 100) = {exact:.5f}")
print(f"extinct in one step: {1 - gw_survival(1, 1, 200_000, 1).estimate:.4f}"
      f"  (1/e = {math.exp(-1):.4f})")

# Starting mass matters: independent copies die independently, so
# survival from x0 = 8 is 1 - (1 - p)^8.
for x0 in (1, 2, 8):
    est = gw_survival(x0=x0, gen=50, trials=100_000, seed=2)
    pred = 1 - (1 - gw_survival_exact(50)) ** x0
    print(f"x0 = {x0}: simulated {est.estimate:.4f}, predicted {pred:.4f}")

# The round budgets tracked by the asymptotic analysis on each side of
# the cutoff: floor(n^(1-2q) * ln n) over-constrained, and the far
# smaller floor(n^(1-2q) / ln^3 n) under-constrained.  At desk-scale n
# the under-constrained budget rounds down to almost nothing, which is
# why the trajectory study just runs the cascade to its natural end.
print()
for n in (10**6, 10**9, 10**12):
    over = rounds_budget(n, 0.4, "over").rounds
    under = rounds_budget(n, 0.3, "under").rounds
    print(f"n = 10^{round(math.log10(n)):<2}  over-budget {over:>6}   under-budget {under}")
