"""Marginal Gaussian tests per parameter and the joint omnibus chi-square
test on both parameters at once."""

from __future__ import annotations

from dataclasses import dataclass

from .asymptotics import Covariance2
from .errors import DomainError, SingularCovarianceError
from .special import chisq_sf, normal_quantile, normal_sf

__all__ = ["TestReport", "marginal_test", "omnibus_test", "det_floor"]

#: Two-sided 5% critical value for the marginal statistics.
Z_CRIT_5PCT = normal_quantile(0.975)

ALPHA = 0.05


@dataclass(frozen=True)
class TestReport:
    """Outcome of one test.  ``df`` is 2 for the omnibus statistic and the
    sentinel 0 for marginal statistics (standard normal reference)."""

    statistic: float
    df: int
    p_value: float
    reject_at_5pct: bool
    sigma_method: str = ""


def marginal_test(theta_hat: float, theta0: float, var_entry: float,
                  n: int, sigma_method: str = "") -> TestReport:
    """Two-sided Gaussian test of one parameter.

    Statistic z = sqrt(n / var_entry) (theta_hat - theta0) with var_entry
    the matching diagonal entry of the asymptotic covariance; rejection at
    5% is the strict inequality p < 0.05, equivalently |z| above the 0.975
    normal quantile.
    """
    if not var_entry > 0.0:
        raise DomainError(
            f"marginal test requires a positive variance entry, got "
            f"{var_entry}")
    if n < 2:
        raise DomainError(f"marginal test requires n >= 2, got {n}")
    z = (n / var_entry) ** 0.5 * (theta_hat - theta0)
    p = 2.0 * normal_sf(abs(z))
    return TestReport(statistic=float(z), df=0, p_value=float(p),
                      reject_at_5pct=bool(p < ALPHA),
                      sigma_method=sigma_method)


def det_floor(sigma: Covariance2) -> float:
    """Relative singularity guard below which the joint test is refused."""
    return 1e-12 * max(1.0, sigma.s11 * sigma.s22)


def omnibus_test(a_hat: float, b_hat: float, a0: float, b0: float,
                 n: int, sigma: Covariance2) -> TestReport:
    """Joint chi-square test of both parameters.

    Q = n / det [ s22 (a_hat-a0)^2 + s11 (b_hat-b0)^2
                  - 2 s12 (a_hat-a0)(b_hat-b0) ]
    has a chi-square(2) limit when sigma is nonsingular.
    """
    if n < 2:
        raise DomainError(f"omnibus test requires n >= 2, got {n}")
    if sigma.det <= det_floor(sigma):
        raise SingularCovarianceError(
            f"covariance too close to singular for a joint test "
            f"(det={sigma.det}, floor={det_floor(sigma)})")
    da = a_hat - a0
    db = b_hat - b0
    q = (n / sigma.det) * (sigma.s22 * da * da + sigma.s11 * db * db
                           - 2.0 * sigma.s12 * da * db)
    q = max(q, 0.0)
    p = chisq_sf(q, 2)
    return TestReport(statistic=float(q), df=2, p_value=float(p),
                      reject_at_5pct=bool(p < ALPHA),
                      sigma_method=sigma.method.value)
