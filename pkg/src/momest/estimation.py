"""Empirical moments and the closed-form moment estimators (a_hat, b_hat).

Estimator maps, with Xbar the sample mean, M2 the mean of squares and
S2 the unbiased variance (divisor n-1):

* Gamma:   (Xbar^2 / S2, Xbar / S2)
* Beta:    (Xbar (Xbar - M2) / V, (1 - Xbar)(Xbar - M2) / V) with the
           *biased* variance V = M2 - Xbar^2 in the denominator
* Uniform: Xbar -/+ sqrt(3) * sqrt(S2)
* Fisher:  (2 Xbar^2 / (S2 (2 - Xbar) - Xbar^2 (Xbar - 1)),
            2 Xbar / (Xbar - 1))

Each map is only defined under the positivity conditions checked in
:func:`estimate`; violations raise typed errors naming the condition so that
the Monte-Carlo harness can count infeasible replications.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import (DegenerateSampleError, InfeasibleMomentError,
                     InsufficientDataError)
from .laws import LawKind

__all__ = [
    "HALF_WIDTH_FACTOR",
    "EmpiricalMoments",
    "ParamEstimate",
    "empirical_moments",
    "estimate",
]

#: sqrt(12)/2, the half-width of a uniform law per standard deviation.
HALF_WIDTH_FACTOR = math.sqrt(3.0)


@dataclass(frozen=True)
class EmpiricalMoments:
    """First two empirical moments of a sample of size n >= 2."""

    n: int
    mean: float
    mean_sq: float
    var_unbiased: float
    var_biased: float


@dataclass(frozen=True)
class ParamEstimate:
    kind: LawKind
    a_hat: float
    b_hat: float
    n: int


def empirical_moments(sample) -> EmpiricalMoments:
    """Mean, mean of squares and both variance flavors of ``sample``.

    Uses the two-pass variance so that var_biased >= 0 holds exactly;
    mean_sq is reconstructed as var_biased + mean^2, keeping the identity
    between the three fields exact in floating point.
    """
    x = np.asarray(sample, dtype=float)
    if x.ndim != 1:
        x = x.ravel()
    n = x.size
    if n < 2:
        raise InsufficientDataError(
            f"need at least 2 observations, got {n}")
    mean = float(np.mean(x))
    var_biased = float(np.var(x))
    return EmpiricalMoments(
        n=n,
        mean=mean,
        mean_sq=var_biased + mean * mean,
        var_unbiased=var_biased * n / (n - 1),
        var_biased=var_biased,
    )


def estimate(kind: LawKind, em: EmpiricalMoments) -> ParamEstimate:
    """Closed-form moment estimates for ``kind`` from empirical moments."""
    mean, msq = em.mean, em.mean_sq
    s2 = em.var_unbiased
    if kind is LawKind.GAMMA:
        if not s2 > 0.0:
            raise DegenerateSampleError(
                f"gamma estimator requires S^2 > 0, got S^2={s2}")
        return ParamEstimate(kind, mean * mean / s2, mean / s2, em.n)
    if kind is LawKind.BETA:
        vb = em.var_biased
        if not vb > 0.0:
            raise DegenerateSampleError(
                f"beta estimator requires a positive biased variance, got {vb}")
        if not mean - msq > 0.0:
            raise DegenerateSampleError(
                "beta estimator requires mean - mean_sq > 0, got "
                f"{mean - msq}")
        if not mean < 1.0:
            raise DegenerateSampleError(
                f"beta estimator requires mean < 1, got {mean}")
        common = (mean - msq) / vb
        return ParamEstimate(kind, mean * common, (1.0 - mean) * common, em.n)
    if kind is LawKind.UNIFORM:
        if s2 < 0.0:  # cannot happen with empirical_moments, kept as a guard
            raise DegenerateSampleError(f"negative variance {s2}")
        half = HALF_WIDTH_FACTOR * math.sqrt(s2)
        return ParamEstimate(kind, mean - half, mean + half, em.n)
    # Fisher
    if not mean > 1.0:
        raise InfeasibleMomentError(
            f"fisher estimator requires mean > 1, got {mean}")
    denom = s2 * (2.0 - mean) - mean * mean * (mean - 1.0)
    if not denom > 0.0:
        raise DegenerateSampleError(
            "fisher estimator requires S^2 (2 - mean) - mean^2 (mean - 1) "
            f"> 0, got {denom}")
    return ParamEstimate(
        kind, 2.0 * mean * mean / denom, 2.0 * mean / (mean - 1.0), em.n)
