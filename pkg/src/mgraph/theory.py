"""Branching-process constants and closed-form growth predictions.

From a truncated degree law lambda this module derives the residual
(size-biased, shifted) offspring law mu, its extinction probability q,
the pruned offspring law eta (finite branches removed, so eta(0) = 0),
and the regime-dependent predictions for the growth clock T~_d(n^x),
the distance scale d~_avg, the tail-decay constant c, the diameter and
the average distance, plus the constant C = 2*d~/(D - d~) that drives
the cost model of the refinement algorithms.

All logarithms are natural; bases appear only as ratios of natural logs.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np
from scipy.special import gammaln, logsumexp

_SUM_TOL = 1e-9
_FIXED_POINT_TOL = 1e-12


@dataclass(frozen=True)
class DiscreteDistribution:
    """Finite distribution on {0, 1, ..., K} as a dense probability array."""

    probabilities: np.ndarray

    def __post_init__(self):
        p = np.asarray(self.probabilities, dtype=np.float64)
        if p.ndim != 1 or p.size == 0:
            raise ValueError("probabilities must be a nonempty 1-d array")
        if p.min() < 0:
            raise ValueError("negative probability")
        s = float(p.sum())
        if abs(s - 1.0) > _SUM_TOL:
            raise ValueError(f"probabilities sum to {s}, not 1")
        # trim trailing zero mass for a tight support
        last = int(np.nonzero(p)[0][-1])
        object.__setattr__(self, "probabilities", p[:last + 1])
        self.probabilities.flags.writeable = False

    @classmethod
    def from_dict(cls, pmf: dict[int, float]) -> "DiscreteDistribution":
        k = max(pmf)
        p = np.zeros(k + 1)
        for deg, prob in pmf.items():
            p[deg] = prob
        return cls(p)

    @property
    def support_max(self) -> int:
        return self.probabilities.size - 1

    @property
    def mean(self) -> float:
        p = self.probabilities
        return float(np.dot(np.arange(p.size), p))

    def moment(self, r: int) -> float:
        p = self.probabilities
        return float(np.dot(np.arange(p.size, dtype=np.float64) ** r, p))

    def pgf(self, s: float) -> float:
        # Horner evaluation of sum_k p_k s^k
        acc = 0.0
        for pk in self.probabilities[::-1]:
            acc = acc * s + pk
        return acc


def residual_distribution(lam: DiscreteDistribution) -> DiscreteDistribution:
    """Size-biased shift: mu(k) = (k+1) lambda(k+1) / M1(lambda)."""
    m1 = lam.mean
    if not (m1 > 0 and math.isfinite(m1)):
        raise ValueError("distribution has zero mean")
    p = lam.probabilities
    k = np.arange(1, p.size, dtype=np.float64)
    mu = k * p[1:] / m1
    # renormalize away float dust; the mass is 1 by construction
    return DiscreteDistribution(mu / mu.sum())


def extinction_probability(mu: DiscreteDistribution) -> float:
    """Least fixed point of the generating function in [0, 1].

    Monotone iteration from 0 converges to the least fixed point; the
    subcritical/critical case returns 1 outright.
    """
    p = mu.probabilities
    if p.size >= 2 and p[1] == 1.0:
        return 0.0  # deterministic single child: every line is infinite
    if mu.mean <= 1.0:
        return 1.0
    s = 0.0
    for _ in range(1_000_000):
        nxt = mu.pgf(s)
        if nxt - s < _FIXED_POINT_TOL:
            return float(nxt)
        s = nxt
    return float(s)


def eta_distribution(mu: DiscreteDistribution) -> DiscreteDistribution:
    """Offspring law after pruning finite branches.

    For j >= 1:  eta(j) = sum_{k>=j} mu(k) C(k,j) (1-q)^j q^(k-j) / (1-q),
    with q the extinction probability; eta(0) = 0 by construction. When
    q = 0 nothing is pruned and eta = mu.
    """
    q = extinction_probability(mu)
    if q >= 1.0:
        raise ValueError("no giant component")
    if q == 0.0:
        return mu
    p = mu.probabilities
    kmax = p.size - 1
    ks = np.arange(kmax + 1, dtype=np.float64)
    js = np.arange(1, kmax + 1, dtype=np.float64)
    with np.errstate(divide="ignore"):
        logp = np.log(p)
    # log of mu(k) * C(k, j) * (1-q)^j * q^(k-j) on the j x k grid
    kk = ks[None, :]
    jj = js[:, None]
    logterm = (logp[None, :]
               + gammaln(kk + 1) - gammaln(jj + 1) - gammaln(kk - jj + 1)
               + jj * math.log1p(-q) + (kk - jj) * math.log(q))
    logterm = np.where(kk >= jj, logterm, -np.inf)
    eta = np.exp(logsumexp(logterm, axis=1)) / (1.0 - q)
    out = np.concatenate(([0.0], eta))
    return DiscreteDistribution(out / out.sum())


def power_law_degree_distribution(beta: float, n: int) -> DiscreteDistribution:
    """Degree law implied by the default quantile weights.

    Matches #{v : w_v > d} = n * d^-(beta-1) with round-to-nearest
    discretization, truncated at the natural maximum degree
    K = ceil(n^(1/(beta-1))) and renormalized.
    """
    if beta <= 1:
        raise ValueError("degree distribution undefined")
    k_max = int(math.ceil(n ** (1.0 / (beta - 1.0))))
    k_max = max(k_max, 3)
    d = np.arange(1, k_max + 1, dtype=np.float64)
    upper = (d + 0.5) ** (1.0 - beta)
    lower = (d - 0.5) ** (1.0 - beta)
    pmf = lower - upper
    pmf[0] = 1.0 - upper[0]  # weights never fall below 1
    p = np.concatenate(([0.0], pmf))
    return DiscreteDistribution(p / p.sum())


@dataclass(frozen=True)
class Prediction:
    """Regime-dependent closed-form targets for one (beta, n)."""

    beta: float
    n: int
    t_tilde_fn: Callable[[float, float], float] = field(compare=False)
    d_avg_tilde: float
    c: float
    c_exponent: float | None  # exponent of n when 1 < beta < 2, else None
    diameter_pred: float      # diameter closed form (floored integer for beta < 2)
    diameter_pred_alt: float | None  # conflicting closed form, beta < 2 only
    avg_dist_low: float
    avg_dist_high: float
    C: float | None
    m1_mu: float | None
    eta1: float | None
    q: float | None

    @property
    def avg_dist_pred(self) -> float:
        return self.avg_dist_high

    def to_dict(self) -> dict:
        return {
            "beta": self.beta,
            "n": self.n,
            "d_avg_tilde": self.d_avg_tilde,
            "c": self.c,
            "c_exponent": self.c_exponent,
            "diameter_pred": self.diameter_pred,
            "diameter_pred_alt": self.diameter_pred_alt,
            "avg_dist_low": self.avg_dist_low,
            "avg_dist_high": self.avg_dist_high,
            "C": self.C,
            "m1_mu": self.m1_mu,
            "eta1": self.eta1,
            "q": self.q,
        }


def _constant_C(d_avg: float, diameter: float) -> float | None:
    denom = diameter - d_avg
    if denom <= 0:
        return None
    return 2.0 * d_avg / denom


def predict(beta: float, n: int,
            lam: DiscreteDistribution | None = None) -> Prediction:
    """Fill the per-regime prediction table for one (beta, n).

    beta = 2 and beta = 3 are open cases and rejected. For beta > 2 the
    residual/pruned constants are computed from lam (defaulting to the
    quantile-implied degree law truncated at n^(1/(beta-1))).
    """
    if beta <= 1:
        raise ValueError("degree distribution undefined")
    if beta in (2.0, 3.0):
        raise ValueError("open case")
    ln_n = math.log(n)

    if beta < 2:
        c_exp = -(2.0 - beta) / (beta - 1.0)

        def t_tilde(d: float, x: float) -> float:
            return 1.0 if d >= n ** x else 2.0

        d_avg = 3.0
        # the two published closed forms disagree in this regime; expose
        # both rather than guess (the alt form is the eccentricity route:
        # d~ + 2 log n / (-log c) with -log c = (2-beta)/(beta-1) log n)
        diam_primary = float(math.floor(3.0 + (beta - 2.0) / (beta - 1.0)))
        diam_alt = float(math.floor(3.0 + 2.0 * (beta - 1.0) / (2.0 - beta)))
        return Prediction(
            beta=beta, n=n, t_tilde_fn=t_tilde, d_avg_tilde=d_avg,
            c=n ** c_exp, c_exponent=c_exp,
            diameter_pred=diam_primary,
            diameter_pred_alt=diam_alt,
            avg_dist_low=2.0, avg_dist_high=3.0,
            C=_constant_C(d_avg, diam_alt),
            m1_mu=None, eta1=None, q=None,
        )

    if lam is None:
        lam = power_law_degree_distribution(beta, n)
    mu = residual_distribution(lam)
    q = extinction_probability(mu)
    eta = eta_distribution(mu)
    eta1 = float(eta.probabilities[1]) if eta.support_max >= 1 else 0.0
    if not 0 < eta1 < 1:
        raise ValueError("degenerate pruned offspring law")
    dev_scale = 2.0 * ln_n / (-math.log(eta1))

    if beta < 3:
        base = math.log(1.0 / (beta - 2.0))

        def t_tilde(d: float, x: float) -> float:
            # degree-1 starts behave like degree 2 after one step
            d_eff = max(float(d), 2.0)
            return math.log(x * ln_n / math.log(d_eff)) / base

        d_avg = 2.0 * math.log(ln_n) / base
        diam = dev_scale
        return Prediction(
            beta=beta, n=n, t_tilde_fn=t_tilde, d_avg_tilde=d_avg,
            c=eta1, c_exponent=None,
            diameter_pred=diam, diameter_pred_alt=None,
            avg_dist_low=d_avg - 1.0, avg_dist_high=d_avg,
            C=_constant_C(d_avg, diam),
            m1_mu=float(mu.mean), eta1=eta1, q=float(q),
        )

    m1_mu = mu.mean
    if m1_mu <= 1.0:
        raise ValueError("subcritical residual law; no giant component")
    log_m1 = math.log(m1_mu)

    def t_tilde(d: float, x: float) -> float:
        return (x * ln_n - math.log(max(float(d), 1.0))) / log_m1

    d_avg = ln_n / log_m1
    diam = dev_scale + ln_n / log_m1
    return Prediction(
        beta=beta, n=n, t_tilde_fn=t_tilde, d_avg_tilde=d_avg,
        c=eta1, c_exponent=None,
        diameter_pred=diam, diameter_pred_alt=None,
        avg_dist_low=d_avg - 1.0, avg_dist_high=d_avg,
        C=_constant_C(d_avg, diam),
        m1_mu=float(m1_mu), eta1=eta1, q=float(q),
    )
