"""Transition width versus time duration N at a wide bandwidth.

Fixes W = 1/4 and doubles N from 2^4 to 2^12, counting the eigenvalues in
(eps, 1-eps) for three thresholds and comparing against the even-integer
transition-width bound 2*ceil(log(4N) log(4/(eps(1-eps)))/pi^2). The gap
between bound and truth stays small (single digits) across the whole sweep.

Run: python demos/width_bounds_vs_duration.py
"""

from prolate.cli import figure2_instances, sweep_rows

eps_list = [1e-3, 1e-8, 1e-13]
rows = sweep_rows(figure2_instances(2**4, 2**12), eps_list)

print(f"{'N':>6} {'eps':>8} {'width':>6} {'bound':>6} {'gap':>4}  advisory")
for row in rows:
    flag = "+-1" if row["advisory"] else ""
    print(f"{row['N']:>6} {row['eps']:>8.0e} {row['width']:>6} "
          f"{row['bound_thm1']:>6} {row['gap']:>4}  {flag}")

gaps = [row["gap"] for row in rows]
print(f"\ngap range over the sweep: [{min(gaps)}, {max(gaps)}]")
print("advisory rows count eigenvalues at the 1e-15 resolution floor; their "
      "widths carry a +-1 uncertainty")
