"""Solve one planted instance with every algorithm and compare reports."""

import numpy as np

from pgthresh import ALGORITHM_IDS, ProblemInstance, solve

rng = np.random.default_rng(1)
m, n, k = 60, 120, 8
a = rng.standard_normal((m, n)) / np.sqrt(m)
x_star = np.zeros(n)
x_star[rng.choice(n, size=k, replace=False)] = rng.standard_normal(k)
problem = ProblemInstance(a, a @ x_star, k=k, q=2 * k, truth=x_star)

print(f"planted instance: {m}x{n}, k={k}, q={2 * k}\n")
print(f"{'algorithm':<10}{'termination':<26}{'iters':>6}{'rel error':>12}")
for algo in ALGORITHM_IDS:
    if algo in ("pgot", "ot"):
        continue  # exhaustive subproblem is intractable at this size
    report = solve(problem, algo)
    rel = report.trace[-1].relative_error
    print(f"{algo:<10}{report.termination:<26}{report.iterations:>6}{rel:>12.2e}")
