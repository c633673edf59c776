"""Monte Carlo sweep: measured success rate against the test budget.

Sweeps the number of tests (as a multiple of K) at a fixed problem size,
running seeded random trials at each point, and plots the resulting success
curve as ASCII.  The same data is what `qgt simulate` emits as CSV.

Run:  python3 demos/monte_carlo_sweep.py
"""

from qgt.density import tests_needed
from qgt.simulate import run_sweep, sweep_csv

N_ITEMS, K, T, TRIALS, SEED = 2000, 25, 2, 60, 20240817

grid = [4.0, 5.0, 6.0, 7.0, 8.0, 10.0, 12.0, 14.0, 16.0, 18.0]
print(f"N={N_ITEMS}, K={K}, t={T}, {TRIALS} trials per point, seed={SEED}")
m_real, _ = tests_needed(N_ITEMS, K, T)
print(f"analytic target: {m_real:.0f} tests = {m_real / K:.1f} per defective\n")

points = run_sweep(N_ITEMS, K, T, grid, TRIALS, SEED)

print("m/K   tests  groups  success  unidentified")
for p in points:
    print(f"{p.m_over_k:4.0f}  {p.m_used:5d}  {p.m_groups:6d}  "
          f"{p.success_rate:7.2f}  {p.mean_unidentified:9.3f} "
          f"+- {p.stderr:.3f}")
print()

width = 40
print("success rate vs m/K:")
for p in points:
    bar = "#" * round(p.success_rate * width)
    print(f"  {p.m_over_k:4.0f} |{bar:<{width}}| {p.success_rate:.2f}")
print()

print("CSV (what `qgt simulate` writes):")
print(sweep_csv(points, N_ITEMS, K, T, 2, SEED))
