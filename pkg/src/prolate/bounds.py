"""Closed-form eigenvalue and transition-width bounds, discrete and continuous.

Evaluators for the non-asymptotic transition-width bounds (``thm1``, ``thm2``
and their continuous counterpart ``thm3``), the per-index eigenvalue
envelopes and head/tail sum bounds derived from them, the earlier published
width bounds they are compared against (Zhu & Wakin 2015; Boulsane, Bourguiba
& Karoui 2020; and the log(8N)-style bound), Slepian's classical plunge
approximation, and the discrete-to-continuous eigenvalue proxy with its
certified radius.

Bounds on integer counts are reported both as the raw real value and its
floor. All functions are pure.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .errors import DomainError, ParameterError
from .kernel import ProlateParams, sin_cos_2pi_product, snap_to_integer

__all__ = [
    "BoundValue",
    "EnvelopeBound",
    "SlepianApprox",
    "PSWFProxy",
    "width_bound_thm1",
    "width_bound_thm2",
    "width_bound_prior",
    "eig_envelope",
    "eig_upper_prior",
    "sum_bounds_cor2",
    "slepian_approx",
    "pswf_width_bound",
    "pswf_eig_envelope",
    "pswf_sum_bounds",
    "pswf_proxy",
    "proxy_width_interval",
    "evaluate_bound_set",
    "EULER_MASCHERONI",
]

#: Euler-Mascheroni constant, 20 digits
EULER_MASCHERONI = 0.57721566490153286061

#: decay-rate constant printed in the eq4 eigenvalue tail bound
_ETA_EQ4 = 0.069

_PI2 = math.pi**2


class BoundValue(NamedTuple):
    """A bound on an integer count: raw real value and its integer report."""

    value: float
    integer: int


class EnvelopeBound(NamedTuple):
    """Two-sided envelope for a single eigenvalue, clamped to [0, 1]."""

    lower: float
    upper: float
    flags: frozenset


class SlepianApprox(NamedTuple):
    """Plunge-region approximation value with an out-of-validity advisory."""

    value: float
    advisory: bool


def _check_eps(eps: float) -> float:
    if not (0.0 < eps < 0.5):
        raise ParameterError(f"eps must lie in (0, 1/2), got {eps}")
    return float(eps)


def _check_c(c: float) -> float:
    if not c > 0.0:
        raise ParameterError(f"c must be positive, got {c}")
    return float(c)


def width_bound_thm1(n: int, eps: float) -> BoundValue:
    """Transition-width bound 2*ceil(log(4N)*log(4/(eps*(1-eps)))/pi^2).

    Already an even integer; bandwidth-independent.
    """
    if n < 1:
        raise ParameterError(f"n must be >= 1, got {n}")
    eps = _check_eps(eps)
    value = 2 * math.ceil(math.log(4.0 * n) * math.log(4.0 / (eps * (1.0 - eps))) / _PI2)
    return BoundValue(float(value), int(value))


def pswf_width_bound(c: float, eps: float) -> BoundValue:
    """Continuous transition-width bound (2/pi^2)*log(100c/pi+25)*log(5/(eps(1-eps))) + 7."""
    c = _check_c(c)
    eps = _check_eps(eps)
    value = (
        2.0 / _PI2 * math.log(100.0 * c / math.pi + 25.0) * math.log(5.0 / (eps * (1.0 - eps)))
        + 7.0
    )
    return BoundValue(value, int(math.floor(value)))


def width_bound_thm2(n: int, w: float, eps: float) -> BoundValue:
    """Transition-width bound (2/pi^2)*log(100NW+25)*log(5/(eps(1-eps))) + 7.

    Identical expression to :func:`pswf_width_bound` under c = pi*N*W, and
    implemented through it so the identity holds exactly in floating point.
    """
    p = ProlateParams(n, w)
    return pswf_width_bound(math.pi * p.n * p.w, eps)


def width_bound_prior(n: int, w: float, eps: float, which: str) -> BoundValue:
    """Earlier published transition-width bounds, evaluated verbatim.

    ``which`` selects:

    * ``'eq2'`` : [(2/pi^2) log(N-1) + (2/pi^2)(2N-1)/(N-1)] / (eps(1-eps)),
      valid for N >= 2  (Zhu & Wakin 2015);
    * ``'eq3'`` : [(1/pi^2) log(2NW) + 0.45 - (2/3)W^2
      + sin^2(2 pi N W)/(6 pi^2 N^2)] / (eps(1-eps))
      (Boulsane, Bourguiba & Karoui 2020);
    * ``'eq6'`` : ((8/pi^2) log(8N) + 12) * log(15/eps).
    """
    p = ProlateParams(n, w)
    eps = _check_eps(eps)
    if which == "eq2":
        if p.n < 2:
            raise DomainError("eq2 requires N >= 2")
        value = (2.0 / _PI2 * math.log(p.n - 1.0) + 2.0 / _PI2 * (2.0 * p.n - 1.0) / (p.n - 1.0)) / (
            eps * (1.0 - eps)
        )
    elif which == "eq3":
        s = float(sin_cos_2pi_product(p.w, np.array([float(p.n)]))[0][0])  # sin(2 pi N W)
        value = (
            1.0 / _PI2 * math.log(2.0 * p.n * p.w)
            + 0.45
            - 2.0 / 3.0 * p.w**2
            + s**2 / (6.0 * _PI2 * p.n**2)
        ) / (eps * (1.0 - eps))
    elif which == "eq6":
        value = (8.0 / _PI2 * math.log(8.0 * p.n) + 12.0) * math.log(15.0 / eps)
    else:
        raise ParameterError(f"which must be one of 'eq2', 'eq3', 'eq6', got {which!r}")
    return BoundValue(value, int(math.floor(value)))


def _envelope_rates(n: int, w: float) -> tuple[float, float]:
    t1 = 2.0 / _PI2 * math.log(4.0 * n)
    t2 = 2.0 / _PI2 * math.log(100.0 * n * w + 25.0)
    return t1, t2


def eig_envelope(n: int, w: float, k: int) -> EnvelopeBound:
    """Non-asymptotic envelope [lower, upper] for lambda_k.

    For k <= floor(2NW)-1 the lower bound is
    1 - min{8 exp(-(fl-k-2)/t1), 10 exp(-(fl-k-7)/t2)} with
    t1 = (2/pi^2) log(4N) and t2 = (2/pi^2) log(100NW+25); for
    k >= ceil(2NW) the mirrored expression bounds lambda_k from above. Raw
    values outside [0, 1] are clamped and flagged ``'uninformative'``. The
    midpoint indices additionally inherit the 1/2 split
    (lambda_{fl-1} >= 1/2 >= lambda_{ce}), flagged ``'midpoint'``.
    """
    p = ProlateParams(n, w)
    if not (0 <= k <= p.n - 1):
        raise ParameterError(f"k must lie in [0, {p.n - 1}], got {k}")
    fl, ce = p.tbp_floor, p.tbp_ceil
    t1, t2 = _envelope_rates(p.n, p.w)
    flags = set()
    if k <= fl - 1:
        raw = 1.0 - min(
            8.0 * math.exp(-(fl - k - 2) / t1), 10.0 * math.exp(-(fl - k - 7) / t2)
        )
        lower, upper = raw, 1.0
        if raw < 0.0:
            lower = 0.0
            flags.add("uninformative")
        if k == fl - 1 and lower < 0.5:
            lower = 0.5
            flags.add("midpoint")
    elif k >= ce:
        raw = min(8.0 * math.exp(-(k - ce - 1) / t1), 10.0 * math.exp(-(k - ce - 6) / t2))
        lower, upper = 0.0, raw
        if raw > 1.0:
            upper = 1.0
            flags.add("uninformative")
        if k == ce and upper > 0.5:
            upper = 0.5
            flags.add("midpoint")
    else:
        # single index strictly between fl-1 and ce (2NW non-integral)
        lower, upper = 0.0, 1.0
        flags.add("uninformative")
    return EnvelopeBound(lower, upper, frozenset(flags))


def eig_upper_prior(n: int, w: float, k: int, which: str) -> float | None:
    """Published per-index upper bounds on lambda_k; None outside validity.

    ``'eq4'`` : 2 exp(-eta (k-2NW)/(log(pi N W)+5)), eta = 0.069, valid for
    2NW + log(pi N W) + 6 <= k <= pi N W.
    ``'eq5'`` : 2 exp(-(2k+1) log((2k+2)/(e pi N W))), valid for
    2 <= (e pi/2) N W <= k <= N-1.
    """
    p = ProlateParams(n, w)
    if not (0 <= k <= p.n - 1):
        raise ParameterError(f"k must lie in [0, {p.n - 1}], got {k}")
    nw = p.n * p.w
    if which == "eq4":
        if not (2.0 * nw + math.log(math.pi * nw) + 6.0 <= k <= math.pi * nw):
            return None
        return 2.0 * math.exp(-_ETA_EQ4 * (k - 2.0 * nw) / (math.log(math.pi * nw) + 5.0))
    if which == "eq5":
        lo = math.e * math.pi / 2.0 * nw
        if not (2.0 <= lo <= k <= p.n - 1):
            return None
        return 2.0 * math.exp(-(2.0 * k + 1.0) * math.log((2.0 * k + 2.0) / (math.e * math.pi * nw)))
    raise ParameterError(f"which must be 'eq4' or 'eq5', got {which!r}")


def sum_bounds_cor2(n: int, w: float, K: int, side: str) -> float:
    """Bound on the head defect sum or tail sum of the spectrum.

    ``side='head'`` bounds sum_{k<K}(1 - lambda_k) for 1 <= K <= floor(2NW);
    ``side='tail'`` bounds sum_{k>=K} lambda_k for ceil(2NW) <= K <= N-1.
    Each is the min of a log(4N)-rate and a log(100NW+25)-rate expression.
    """
    p = ProlateParams(n, w)
    fl, ce = p.tbp_floor, p.tbp_ceil
    t1, t2 = _envelope_rates(p.n, p.w)
    a1 = 16.0 / _PI2 * math.log(4.0 * p.n)
    a2 = 20.0 / _PI2 * math.log(100.0 * p.n * p.w + 25.0)
    if side == "head":
        if not (1 <= K <= fl):
            raise DomainError(f"head side requires 1 <= K <= {fl}, got {K}")
        return min(
            a1 * math.exp(-(fl - K - 2) / t1),
            a2 * math.exp(-(fl - K - 7) / t2),
        )
    if side == "tail":
        if not (ce <= K <= p.n - 1):
            raise DomainError(f"tail side requires {ce} <= K <= {p.n - 1}, got {K}")
        return min(
            a1 * math.exp(-(K - ce - 2) / t1),
            a2 * math.exp(-(K - ce - 7) / t2),
        )
    raise ParameterError(f"side must be 'head' or 'tail', got {side!r}")


def slepian_approx(n: int, w: float, k: float) -> SlepianApprox:
    """Classical plunge approximation for lambda_k.

    Evaluates [1 + exp(-pi^2 (2NW - k - 1/2) / (log(8N sin(2 pi W)) + gamma))]^{-1}
    with gamma the Euler-Mascheroni constant. ``k`` may be real for diagnostic
    use. The advisory flag is set when the value falls outside (0.2, 0.8),
    where the approximation is not considered reliable.
    """
    p = ProlateParams(n, w)
    s = float(sin_cos_2pi_product(p.w, np.array([1.0]))[0][0])  # sin(2 pi W) > 0
    denom = math.log(8.0 * p.n * s) + EULER_MASCHERONI
    x = -_PI2 * (2.0 * p.n * p.w - k - 0.5) / denom
    # guard exp overflow; value saturates at 0 or 1 accordingly
    if x > 700.0:
        value = 0.0
    else:
        value = 1.0 / (1.0 + math.exp(x))
    return SlepianApprox(value, not (0.2 < value < 0.8))


def _pswf_tbp(c: float) -> float:
    return snap_to_integer(2.0 * c / math.pi)


def pswf_eig_envelope(c: float, k: int) -> EnvelopeBound:
    """Envelope for the k-th continuous-case eigenvalue.

    Mirrors :func:`eig_envelope` with 2NW replaced by 2c/pi and the rate
    log(100c/pi + 25); the continuous case has no N so there is no log(4N)
    branch and no midpoint refinement.
    """
    c = _check_c(c)
    if k < 0:
        raise ParameterError(f"k must be >= 0, got {k}")
    tbp = _pswf_tbp(c)
    fl, ce = int(math.floor(tbp)), int(math.ceil(tbp))
    t = 2.0 / _PI2 * math.log(100.0 * c / math.pi + 25.0)
    flags = set()
    if k <= fl - 1:
        raw = 1.0 - 10.0 * math.exp(-(fl - k - 7) / t)
        lower, upper = raw, 1.0
        if raw < 0.0:
            lower = 0.0
            flags.add("uninformative")
    elif k >= ce:
        raw = 10.0 * math.exp(-(k - ce - 6) / t)
        lower, upper = 0.0, raw
        if raw > 1.0:
            upper = 1.0
            flags.add("uninformative")
    else:
        lower, upper = 0.0, 1.0
        flags.add("uninformative")
    return EnvelopeBound(lower, upper, frozenset(flags))


def pswf_sum_bounds(c: float, K: int, side: str) -> float:
    """Head/tail sum bounds for the continuous-case eigenvalues.

    ``side='head'`` (1 <= K <= floor(2c/pi)) bounds sum_{k<K}(1 - lambda~_k);
    ``side='tail'`` (K >= ceil(2c/pi)) bounds sum_{k>=K} lambda~_k.
    """
    c = _check_c(c)
    tbp = _pswf_tbp(c)
    fl, ce = int(math.floor(tbp)), int(math.ceil(tbp))
    t = 2.0 / _PI2 * math.log(100.0 * c / math.pi + 25.0)
    a = 20.0 / _PI2 * math.log(100.0 * c / math.pi + 25.0)
    if side == "head":
        if not (1 <= K <= fl):
            raise DomainError(f"head side requires 1 <= K <= {fl}, got {K}")
        return a * math.exp(-(fl - K - 7) / t)
    if side == "tail":
        if not (K >= ce):
            raise DomainError(f"tail side requires K >= {ce}, got {K}")
        return a * math.exp(-(K - ce - 7) / t)
    raise ParameterError(f"side must be 'head' or 'tail', got {side!r}")


@dataclass(frozen=True)
class PSWFProxy:
    """Discrete proxy for continuous-case eigenvalues at matched 2c/pi.

    The entries are lambda_k(N, c/(pi N)); each lies within ``delta`` of the
    continuous eigenvalue lambda~_k(c), where

        delta = 4 c^3 / (3 pi N^3 sin(2c/N)).
    """

    c: float
    n: int
    kmin: int
    kmax: int
    lam: np.ndarray
    comp: np.ndarray
    delta: float

    @property
    def entries(self) -> list[tuple[int, float]]:
        return [(self.kmin + i, float(v)) for i, v in enumerate(self.lam)]


def proxy_delta(c: float, n: int) -> float:
    """Certified radius 4c^3/(3 pi N^3 sin(2c/N)); requires N > 2c/pi."""
    c = _check_c(c)
    if not n > 2.0 * c / math.pi:
        raise DomainError(f"need N > 2c/pi = {2.0 * c / math.pi:.6g}, got N = {n}")
    return 4.0 * c**3 / (3.0 * math.pi * n**3 * math.sin(2.0 * c / n))


def pswf_proxy(c: float, kmin: int, kmax: int, n: int) -> PSWFProxy:
    """Estimate continuous-case eigenvalues by the discrete instance (N, c/(pi N)).

    Parameters
    ----------
    c : float
        Half time-bandwidth product of the continuous problem.
    kmin, kmax : int
        Inclusive index range of eigenvalues to estimate.
    n : int
        Proxy dimension; must exceed 2c/pi (this also puts c/(pi N) < 1/2).
    """
    delta = proxy_delta(c, n)
    from .spectrum import tridiagonal_spectrum

    params = ProlateParams(n, c / (math.pi * n))
    slc = tridiagonal_spectrum(params, kmin, kmax)
    return PSWFProxy(
        c=float(c), n=int(n), kmin=kmin, kmax=kmax, lam=slc.lam, comp=slc.comp, delta=delta
    )


def proxy_width_interval(
    c: float, eps: float, n: int
) -> tuple[int | None, int | None, PSWFProxy]:
    """Bracket the continuous transition width using a proxy spectrum.

    Returns ``(lo, hi, proxy)`` where ``lo`` counts proxy eigenvalues with
    eps + delta < lambda < 1 - eps - delta (a certified lower estimate of the
    true width) and ``hi`` counts with thresholds loosened by delta (an upper
    estimate). ``hi`` is None when eps <= delta, in which case no upper
    estimate is certifiable. ``lo`` is None in the degenerate case
    eps + delta >= 1/2.
    """
    eps = _check_eps(eps)
    delta = proxy_delta(c, n)
    tbp = _pswf_tbp(c)
    center_lo = max(int(math.floor(tbp)) - 1, 0)
    center_hi = int(math.ceil(tbp))
    margin = pswf_width_bound(c, eps).integer + 8
    for _ in range(32):
        kmin = max(0, center_lo - margin)
        kmax = min(n - 1, center_hi + margin)
        proxy = pswf_proxy(c, kmin, kmax, n)
        eps_lo = eps + delta
        eps_hi = eps - delta
        # endpoints must exit the widest region we count
        exit_eps = eps_hi if eps_hi > 0.0 else eps_lo
        left_done = kmin == 0 or proxy.comp[0] <= exit_eps
        right_done = kmax == n - 1 or proxy.lam[-1] <= exit_eps
        if left_done and right_done:
            break
        margin *= 2
    else:
        raise DomainError("proxy window failed to close; increase n or eps")

    def _count(thr: float) -> int:
        mask = (proxy.lam > thr) & (proxy.comp > thr)
        idx = np.flatnonzero(mask)
        return 0 if idx.size == 0 else int(idx[-1] - idx[0] + 1)

    lo = _count(eps_lo) if eps_lo < 0.5 else None
    hi = _count(eps_hi) if eps_hi > 0.0 else None
    return lo, hi, proxy


def evaluate_bound_set(
    n: int,
    w: float,
    eps: float,
    k: int | None = None,
    K: int | None = None,
) -> dict:
    """Evaluate the full family of bounds for one instance, no spectrum needed.

    Always includes the width bounds (new and prior) and the continuous-case
    width bound at c = pi*N*W. When ``k`` is given, adds the per-index
    envelope, the prior per-index upper bounds, and the plunge approximation;
    when ``K`` is given, adds the head/tail sum bounds where valid.
    """
    p = ProlateParams(n, w)
    eps = _check_eps(eps)
    c = math.pi * p.n * p.w
    out: dict = {
        "thm1": width_bound_thm1(p.n, eps),
        "thm2": width_bound_thm2(p.n, p.w, eps),
        "eq3_boulsane": width_bound_prior(p.n, p.w, eps, "eq3"),
        "eq6_fst": width_bound_prior(p.n, p.w, eps, "eq6"),
        "thm3_pswf": pswf_width_bound(c, eps),
    }
    if p.n >= 2:
        out["eq2_zhuwakin"] = width_bound_prior(p.n, p.w, eps, "eq2")
    if k is not None:
        env = eig_envelope(p.n, p.w, k)
        out["cor1_lower"] = env.lower
        out["cor1_upper"] = env.upper
        out["slepian_approx"] = slepian_approx(p.n, p.w, k)
        out["eq4_boulsane1"] = eig_upper_prior(p.n, p.w, k, "eq4")
        out["eq5_boulsane2"] = eig_upper_prior(p.n, p.w, k, "eq5")
        penv = pswf_eig_envelope(c, k)
        out["cor3_lower"] = penv.lower
        out["cor3_upper"] = penv.upper
    if K is not None:
        fl, ce = p.tbp_floor, p.tbp_ceil
        if 1 <= K <= fl:
            out["cor2_head"] = sum_bounds_cor2(p.n, p.w, K, "head")
            out["cor4_head"] = pswf_sum_bounds(c, K, "head")
        if ce <= K <= p.n - 1:
            out["cor2_tail"] = sum_bounds_cor2(p.n, p.w, K, "tail")
        if K >= ce:
            out["cor4_tail"] = pswf_sum_bounds(c, K, "tail")
    return out
