"""Print the RIC convergence thresholds and contraction constants.

Shows, for each partial-gradient width regime, the largest restricted
isometry constant delta_3k under which each thresholding variant is
guaranteed to converge, plus the per-iteration contraction factor rho at a
few sample delta values.
"""

from pgthresh import (RicTriple, contraction_constants, pgot_explicit_bound,
                      pgot_root_bound, pgrot_explicit_bound, pgrot_root_bound,
                      pgrotp_bound, table1)

print("RIC thresholds on delta_3k by q regime")
print(f"{'regime':<12}{'pgot':>10}{'pgrot':>10}{'pgrotp':>10}")
table = table1()
for regime in ("q=2k", "2k<q<=3k", "3k<q<=4k"):
    row = [table.get(v, regime) for v in ("pgot", "pgrot", "pgrotp")]
    print(f"{regime:<12}" + "".join(f"{v:>10.4f}" for v in row))

print("\nclosed-form sufficient bounds (strictly below the root bounds)")
for q in (2, 3, 4):
    print(f"  q/k={q}: pgot {pgot_explicit_bound(q, 1):.4f} < "
          f"{pgot_root_bound(q, 1):.4f}, "
          f"pgrot {pgrot_explicit_bound(q, 1):.4f} < "
          f"{pgrot_root_bound(q, 1):.4f}, "
          f"pgrotp {pgrotp_bound(q, 1):.4f}")

print("\ncontraction factor rho for PGOT at q=2k as delta grows")
root = pgot_root_bound(2, 1)
for delta in (0.0, 0.05, 0.10, 0.15, root + 0.01):
    cc = contraction_constants(RicTriple(delta, delta, delta), 2, 1, "pgot")
    tag = "converges" if cc.converges else "no guarantee"
    print(f"  delta={delta:.4f}: rho={cc.rho:.4f}, tau={cc.tau:.3f} ({tag})")
