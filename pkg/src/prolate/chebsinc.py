"""Chebyshev interpolation of shifted sinc kernels and the near-block low-rank map.

A degree k-1 interpolant of g_n(t) = g(t - n) at the k Chebyshev nodes of
[a, b] has uniform error at most

    (b - a)^k / (2^(2k-1) k!) * max_{xi in [a,b]} |g_n^(k)(xi)|,

and every derivative of the sinc kernel obeys

    |g^(k)(t)| <= (2 pi W)^k * min(2W/(k+1), 2/(pi |t|)).

Chaining the two certifies, column by column, a rank-k approximation of the
near boundary block (rows -L1..-1 with L1 = floor(1/(4W))), whose Frobenius
error stays below sqrt(5600/pi) * (pi/48)^k.

Interpolants are evaluated in barycentric form for stability; the monomial
factorization is materialized only to exhibit the rank, with k capped at 8
to keep the Vandermonde factor well conditioned.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import ParameterError
from .kernel import ProlateParams, sinc_kernel

__all__ = [
    "sinc_derivative_bound",
    "ChebInterpolant",
    "cheb_interpolate",
    "interpolation_error_bound",
    "LowRankBlockApprox",
    "lowrank_block_approx",
    "MONOMIAL_RANK_CAP",
]

#: monomial factorization is only materialized up to this k
MONOMIAL_RANK_CAP = 8


def sinc_derivative_bound(w: float, k: int, t) -> np.ndarray | float:
    """Bound (2 pi W)^k * min(2W/(k+1), 2/(pi|t|)) on the k-th sinc derivative.

    At t = 0 the second branch is +inf, so the first rules.
    """
    if not (0.0 < w < 0.5):
        raise ParameterError(f"w must lie strictly in (0, 1/2), got {w}")
    if k < 0:
        raise ParameterError(f"k must be >= 0, got {k}")
    t = np.asarray(t, dtype=np.float64)
    scalar = t.ndim == 0
    t = np.atleast_1d(t)
    with np.errstate(divide="ignore"):
        second = np.where(t == 0.0, np.inf, 2.0 / (math.pi * np.abs(t)))
    out = (2.0 * math.pi * w) ** k * np.minimum(2.0 * w / (k + 1.0), second)
    return float(out[0]) if scalar else out


def _cheb_nodes(a: float, b: float, k: int) -> np.ndarray:
    m = np.arange(1, k + 1)
    return (b + a) / 2.0 + (b - a) / 2.0 * np.cos((2.0 * m - 1.0) * math.pi / (2.0 * k))


def _bary_weights(k: int) -> np.ndarray:
    # closed form for first-kind Chebyshev points (common scale factor dropped)
    m = np.arange(1, k + 1)
    return (-1.0) ** (m - 1) * np.sin((2.0 * m - 1.0) * math.pi / (2.0 * k))


@dataclass(frozen=True)
class ChebInterpolant:
    """Chebyshev interpolant of a shifted sinc kernel on [a, b].

    Degree k-1 through the k first-kind Chebyshev nodes; evaluation uses the
    barycentric formula and reproduces the node values exactly.
    """

    w: float
    shift: int
    a: float
    b: float
    nodes: np.ndarray
    values: np.ndarray
    weights: np.ndarray

    @property
    def degree(self) -> int:
        return self.nodes.size - 1

    def __call__(self, t) -> np.ndarray | float:
        t = np.asarray(t, dtype=np.float64)
        scalar = t.ndim == 0
        t = np.atleast_1d(t)
        diff = t[:, None] - self.nodes[None, :]
        out = np.empty(t.shape)
        hit = np.abs(diff) <= 0.0
        exact = hit.any(axis=1)
        if exact.any():
            out[exact] = self.values[np.argmax(hit[exact], axis=1)]
        rest = ~exact
        if rest.any():
            q = self.weights[None, :] / diff[rest]
            out[rest] = (q @ self.values) / q.sum(axis=1)
        return float(out[0]) if scalar else out

    def coefficients(self) -> np.ndarray:
        """Monomial coefficients p_0..p_{k-1} (ill-conditioned for large k)."""
        return np.polynomial.polynomial.polyfit(self.nodes, self.values, self.degree)


def cheb_interpolate(w: float, n: int, a: float, b: float, k: int) -> ChebInterpolant:
    """Interpolant of g_n(t) = g(t - n) at the k Chebyshev nodes of [a, b]."""
    if not a < b:
        raise ParameterError(f"need a < b, got a={a}, b={b}")
    if k < 1:
        raise ParameterError(f"k must be >= 1, got {k}")
    nodes = _cheb_nodes(a, b, k)
    values = sinc_kernel(w, nodes - n)
    return ChebInterpolant(w, n, float(a), float(b), nodes, values, _bary_weights(k))


def interpolation_error_bound(w: float, n: int, a: float, b: float, k: int) -> float:
    """Certified uniform error of the degree k-1 interpolant of g_n on [a, b].

    Combines the Chebyshev remainder (b-a)^k/(2^(2k-1) k!) with the sinc
    derivative bound maximized over the shifted interval [a-n, b-n].
    """
    lo, hi = a - n, b - n
    t_star = 0.0 if lo <= 0.0 <= hi else min(abs(lo), abs(hi))
    return (
        (b - a) ** k
        / (2.0 ** (2 * k - 1) * math.factorial(k))
        * float(sinc_derivative_bound(w, k, t_star))
    )


@dataclass
class LowRankBlockApprox:
    """Rank-k surrogate of the near boundary block with its certified error."""

    applicable: bool
    reason: str
    params: ProlateParams | None = None
    rank: int | None = None
    l1: int | None = None
    matrix: np.ndarray | None = None
    left_factor: np.ndarray | None = None
    right_factor: np.ndarray | None = None
    frobenius_error: float | None = None
    bound: float | None = None

    @property
    def passed(self) -> bool:
        return self.applicable and self.frobenius_error <= self.bound


def lowrank_block_approx(params: ProlateParams, k: int) -> LowRankBlockApprox:
    """Approximate the near block X[l, n] = g(l - n), l = -L1..-1, by rank k.

    Column n carries the interpolant of g_n on [-L1, -1]. The product of the
    monomial factor (powers of l) with the coefficient factor exhibits rank
    <= k; the Frobenius error is measured against the barycentric evaluation
    and compared with sqrt(5600/pi) * (pi/48)^k.
    """
    if k < 1:
        raise ParameterError(f"k must be >= 1, got {k}")
    if params.w >= 0.25:
        return LowRankBlockApprox(False, "not applicable: W >= 1/4")
    l1 = int(math.floor(1.0 / (4.0 * params.w)))
    a, b = -float(l1), -1.0
    ells = np.arange(-l1, 0, dtype=np.float64)
    n_cols = params.n
    block = np.empty((l1, n_cols))
    approx = np.empty((l1, n_cols))
    coefs = np.empty((k, n_cols)) if k <= MONOMIAL_RANK_CAP else None
    for n in range(n_cols):
        block[:, n] = sinc_kernel(params.w, ells - n)
        if l1 == 1:
            # degenerate interval [-1, -1]: interpolation at the point is exact
            approx[:, n] = block[:, n]
            if coefs is not None:
                coefs[0, n] = block[0, n]
                coefs[1:, n] = 0.0
            continue
        interp = cheb_interpolate(params.w, n, a, b, k)
        approx[:, n] = interp(ells)
        if coefs is not None:
            c = interp.coefficients()
            coefs[: c.size, n] = c
            coefs[c.size :, n] = 0.0
    err = float(np.linalg.norm(block - approx, "fro"))
    bound = math.sqrt(5600.0 / math.pi) * (math.pi / 48.0) ** k
    left = np.vander(ells, k, increasing=True) if coefs is not None else None
    return LowRankBlockApprox(
        applicable=True,
        reason="",
        params=params,
        rank=k,
        l1=l1,
        matrix=left @ coefs if coefs is not None else approx,
        left_factor=left,
        right_factor=coefs,
        frobenius_error=err,
        bound=bound,
    )
