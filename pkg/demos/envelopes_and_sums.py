"""Per-index eigenvalue envelopes and head/tail sum bounds.

Every eigenvalue is pinned between a certified lower and upper bound that
decay exponentially away from the plunge at 2NW, and the sums of leading
defects (1 - lambda_k) and trailing eigenvalues obey matching caps. This
script prints the envelope around the plunge for N = 1000, W = 1/8 and
verifies a few sums against their caps.

Run: python demos/envelopes_and_sums.py
"""

from prolate import (
    ProlateParams,
    dense_spectrum,
    eig_envelope,
    eigensum_head,
    eigensum_tail,
    sum_bounds_cor2,
)

n, w = 1000, 0.125
params = ProlateParams(n, w)
spectrum = dense_spectrum(params)

print(f"envelopes around the plunge (N = {n}, W = {w}):")
print(f"{'k':>5} {'lower':>12} {'lambda_k':>12} {'upper':>12}  flags")
for k in (200, 240, 248, 249, 250, 252, 260, 300):
    env = eig_envelope(n, w, k)
    print(f"{k:>5} {env.lower:>12.4e} {spectrum.lam_at(k):>12.4e} "
          f"{env.upper:>12.4e}  {','.join(sorted(env.flags))}")

print("\nsum bounds:")
for K in (200, 230, 249):
    head = eigensum_head(params, K)
    cap = sum_bounds_cor2(n, w, K, "head")
    print(f"  head K={K:>3}: computed {head:.4e} <= cap {cap:.4e}")
for K in (251, 270, 300):
    tail = eigensum_tail(params, K)
    cap = sum_bounds_cor2(n, w, K, "tail")
    print(f"  tail K={K:>3}: computed {tail:.4e} <= cap {cap:.4e}")
