"""Transition width versus bandwidth W at fixed N.

Fixes N = 2^12 and sweeps 25 log-spaced bandwidths between 2^-10 and 2^-2,
comparing the measured width of the transition region against the
bandwidth-aware bound (2/pi^2) log(100NW+25) log(5/(eps(1-eps))) + 7, whose
log(NW) scaling matches the measurement. The bandwidth-free bound from the
duration sweep would grow with log N instead and be much looser at small W.

Run: python demos/width_bounds_vs_bandwidth.py
"""

from prolate.cli import figure3_instances, sweep_rows

rows = sweep_rows(figure3_instances(2**12, 2**-10, 2**-2, 25), [1e-3, 1e-8])

print(f"{'W':>12} {'2NW':>8} {'eps':>8} {'width':>6} {'bound':>6} {'slack':>6}")
for row in rows:
    two_nw = 2 * row["N"] * row["W"]
    slack = row["bound_thm2"] - row["width"]
    print(f"{row['W']:>12.6f} {two_nw:>8.1f} {row['eps']:>8.0e} "
          f"{row['width']:>6} {row['bound_thm2']:>6} {slack:>6}")
