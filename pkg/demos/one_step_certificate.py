"""Verify the one-step error bound with brute-force isometry constants.

On matrices small enough to enumerate every column subset, the restricted
isometry constants delta_k, delta_2k, delta_3k are computed exactly; the
contraction inequality ||x^{p+1} - x*|| <= rho ||x^p - x*|| is then checked
against an actual exhaustive PGOT iteration from a random sparse start.
"""

import numpy as np

from pgthresh import RicTriple, brute_force_ric, contraction_constants, \
    verify_one_step_bound

rng = np.random.default_rng(123)
m, n, k = 30, 12, 1
q = 2 * k

held = 0
applicable = 0
trials = 20
print(f"instances: {m}x{n} Gaussian/sqrt(m), k={k}, q={q}\n")
for trial in range(trials):
    a = rng.standard_normal((m, n)) / np.sqrt(m)
    ric = RicTriple(*(brute_force_ric(a, s * k) for s in (1, 2, 3)))
    if ric.delta_2k >= 1.0:
        print(f"  trial {trial:2d}: delta_2k={ric.delta_2k:.3f} >= 1, "
              "bound not applicable")
        continue
    cc = contraction_constants(ric, q, k, "pgot")
    x_star = np.zeros(n)
    x_star[rng.choice(n, size=k, replace=False)] = rng.standard_normal(k)
    x_p = np.zeros(n)
    x_p[rng.choice(n, size=k, replace=False)] = rng.standard_normal(k)
    lhs, rhs, holds = verify_one_step_bound(a, x_star, x_p, q, k)
    applicable += 1
    held += holds
    print(f"  trial {trial:2d}: delta_3k={ric.delta_3k:.3f}, rho={cc.rho:6.2f}, "
          f"lhs={lhs:8.4f} <= rhs={rhs:8.4f}  [{'ok' if holds else 'VIOLATED'}]")

print(f"\nbound held in {held}/{applicable} applicable trials "
      f"({trials - applicable} skipped)")
