"""Objective reduction of PGROTP for different partial-gradient widths.

Desk-scale analog of the objective-trace experiment: one planted instance,
PGROTP run with q = k, 2k, 3k and n, recording ||y - A x^p||_2 per
iteration.  Partial gradients frequently reduce the objective faster than
the full-gradient (q = n) variant at high sparsity levels.
"""

from pgthresh.bench import (ExperimentConfig, TRACE_HEADER,
                            objective_trace_experiment, write_csv)

cfg = ExperimentConfig(m=100, n=200, k_grid=(30,), q_list=("k", "2k", "3k", "n"),
                       algorithms=("pgrotp",), trials=1, seed=42,
                       trace_iterations=30)
rows = objective_trace_experiment(cfg)
write_csv(rows, "objective_trace.csv", TRACE_HEADER)
print(f"wrote objective_trace.csv ({len(rows)} rows)")

by_q = {}
for it, _algo, q, obj in rows:
    by_q.setdefault(q, []).append(obj)
print(f"\nm={cfg.m}, n={cfg.n}, k={cfg.k_grid[0]}: final objective by q")
for q, trace in sorted(by_q.items()):
    print(f"  q={q:>3}: start {trace[0]:.4f} -> iter {len(trace) - 1}: "
          f"{trace[-1]:.3e}")
