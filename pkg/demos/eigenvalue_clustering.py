"""Eigenvalue clustering of the prolate matrix.

The spectrum of the N x N prolate matrix with bandwidth W splits into three
clusters: roughly 2NW eigenvalues near 1, roughly N - 2NW near 0, and a thin
run in between. This script computes the classic N = 1000, W = 1/8 instance,
prints the cluster sizes, and walks through the plunge region comparing each
eigenvalue with its classical approximation.

Run: python demos/eigenvalue_clustering.py
"""

import numpy as np

from prolate import ProlateParams, dense_spectrum, slepian_approx, transition_width

params = ProlateParams(1000, 0.125)
print(f"instance: N = {params.n}, W = {params.w}, 2NW = {params.time_bandwidth:g}")

spectrum = dense_spectrum(params)
lam = spectrum.lam
print(f"trace = {spectrum.sum_lambdas():.12f} (equals 2NW)")
print(f"eigenvalues >= 0.999 : {np.sum(lam >= 0.999)}")
print(f"eigenvalues <= 0.001 : {np.sum(lam <= 0.001)}")

report = transition_width(params, 1e-3)
print(f"transition region (1e-3 < lambda < 1-1e-3): width {report.width}, "
      f"indices {report.k_first}..{report.k_last}")

print("\nplunge region, computed vs classical approximation:")
print(f"{'k':>5} {'lambda_k':>22} {'approximation':>16} {'advisory':>9}")
for k in range(report.k_first, report.k_last + 1):
    approx = slepian_approx(params.n, params.w, k)
    print(f"{k:>5} {spectrum.lam_at(k):>22.15f} {approx.value:>16.6f} "
          f"{'*' if approx.advisory else '':>9}")
print("(* approximation quoted outside its reliable range 0.2 < lambda < 0.8)")
