"""Influence functions of the moment estimators and their 2x2 asymptotic
covariance, computed four ways.

Both estimator coordinates are smooth functions g(m1, m2) of the first two
raw moments, so sqrt(n)(theta_hat - theta) is asymptotically the centered
empirical average of the quadratic influence function

    c1 * x + c2 * x^2 - E[c1 X + c2 X^2],
    (c1, c2) = (dg/dm1, dg/dm2) at the true moments.

``H`` always denotes the influence of a_hat and ``L`` that of b_hat.

Coefficient modes:

* ``canonical`` computes (c1, c2) as the exact delta-method gradient of the
  estimator map, independently cross-checked against finite differences in
  the test suite.
* ``verbatim`` reproduces a historical printed coefficient set for
  comparison tables.  For the Gamma H it carries a known slip -- the factor
  2 mu (sigma^2 + 1) / sigma^4 where the true gradient has
  2 mu (sigma^2 + mu^2) / sigma^4 -- and for the Fisher H the normalizing
  denominator is likewise off; both are kept exactly as printed on purpose.
  Beta and Uniform verbatim coefficients agree with the canonical gradient
  algebraically.

The four covariance routes:

* exact-moments: closed-form bilinear form in (c1, c2) and the raw moments
  m1..m4 (the independent oracle for everything else),
* exact-quadrature: trapezoid integration of the influence functions against
  the density over the truncated support [Q(eps), Q(1-eps)], eps = 1e-9,
  with geometric upper-tail extension for unbounded supports,
* plugin: sample variance/covariance of the influence values on one sample,
* replication: sample covariance of replicated sqrt(n) deviations.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from enum import Enum
from typing import Callable, Tuple

import numpy as np

from .errors import DomainError, InsufficientDataError
from .estimation import HALF_WIDTH_FACTOR
from .laws import LawKind, LawSpec, pdf, quantile, theoretical_moments
from .special import DEFAULT_QUAD_CONFIG, QuadratureConfig, trapezoid_integrate

__all__ = [
    "CoefficientMode",
    "SigmaMethod",
    "QuadraticInfluence",
    "Covariance2",
    "delta_gradient",
    "influence_pair",
    "covariance_exact_moments",
    "covariance_exact_quadrature",
    "covariance_plugin",
    "covariance_replication",
]

#: Quantile-level truncation of unbounded/singular supports in quadrature.
TRUNCATION_EPS = 1e-9


class CoefficientMode(str, Enum):
    CANONICAL = "canonical"
    VERBATIM = "verbatim"

    @classmethod
    def parse(cls, name: str) -> "CoefficientMode":
        key = name.strip().lower()
        if key in ("paper", "legacy"):
            key = "verbatim"
        try:
            return cls(key)
        except ValueError:
            raise DomainError(
                f"unknown coefficient mode {name!r}; expected canonical or "
                f"verbatim")


class SigmaMethod(str, Enum):
    EXACT_QUADRATURE = "exact-quadrature"
    EXACT_MOMENTS = "exact-moments"
    PLUGIN = "plugin"
    REPLICATION = "replication"

    @classmethod
    def parse(cls, name: str) -> "SigmaMethod":
        try:
            return cls(name.strip().lower())
        except ValueError:
            valid = ", ".join(m.value for m in cls)
            raise DomainError(
                f"unknown sigma method {name!r}; expected one of {valid}")


@dataclass(frozen=True)
class QuadraticInfluence:
    """c1 * x + c2 * x^2 - center, with center = E[c1 X + c2 X^2]."""

    c1: float
    c2: float
    center: float

    def evaluate(self, x):
        """Centered influence value(s) at x."""
        xs = np.asarray(x, dtype=float)
        out = self.c1 * xs + self.c2 * xs * xs - self.center
        return float(out) if out.ndim == 0 else out

    def raw(self, x):
        """Uncentered c1 * x + c2 * x^2."""
        xs = np.asarray(x, dtype=float)
        out = self.c1 * xs + self.c2 * xs * xs
        return float(out) if out.ndim == 0 else out


@dataclass(frozen=True)
class Covariance2:
    """Symmetric 2x2 covariance with its determinant and provenance tag."""

    s11: float
    s22: float
    s12: float
    det: float
    method: SigmaMethod

    @property
    def correlation(self) -> float:
        denom = math.sqrt(self.s11 * self.s22)
        if denom == 0.0:
            raise DomainError("correlation undefined for zero variance")
        return self.s12 / denom

    @classmethod
    def build(cls, s11: float, s22: float, s12: float,
              method: SigmaMethod) -> "Covariance2":
        scale = max(1.0, abs(s11), abs(s22))
        tol = 1e-9 * scale
        if s11 < -tol or s22 < -tol:
            raise DomainError(
                f"negative variance entries: s11={s11}, s22={s22}")
        s11, s22 = max(s11, 0.0), max(s22, 0.0)
        if abs(s12) > math.sqrt(s11 * s22) + tol:
            raise DomainError(
                f"covariance violates |s12| <= sqrt(s11 s22): "
                f"s11={s11}, s22={s22}, s12={s12}")
        return cls(s11=float(s11), s22=float(s22), s12=float(s12),
                   det=float(s11 * s22 - s12 * s12), method=method)


def delta_gradient(kind: LawKind, m1: float, m2: float
                   ) -> Tuple[float, float, float, float]:
    """Exact partial derivatives (da/dm1, da/dm2, db/dm1, db/dm2) of the
    estimator map at raw moments (m1, m2)."""
    d = m2 - m1 * m1
    if kind is LawKind.GAMMA:
        _need(d > 0.0, f"gamma gradient requires m2 > m1^2, got d={d}")
        d2 = d * d
        return (2.0 * m1 * m2 / d2, -m1 * m1 / d2,
                (m2 + m1 * m1) / d2, -m1 / d2)
    if kind is LawKind.BETA:
        _need(d > 0.0, f"beta gradient requires m2 > m1^2, got d={d}")
        _need(m1 - m2 > 0.0,
              f"beta gradient requires m1 > m2, got m1-m2={m1 - m2}")
        _need(m1 < 1.0, f"beta gradient requires m1 < 1, got {m1}")
        na = m1 * (m1 - m2)
        nb = (1.0 - m1) * (m1 - m2)
        d2 = d * d
        return (((2.0 * m1 - m2) * d + 2.0 * m1 * na) / d2,
                (-m1 * d - na) / d2,
                ((1.0 - 2.0 * m1 + m2) * d + 2.0 * m1 * nb) / d2,
                ((m1 - 1.0) * d - nb) / d2)
    if kind is LawKind.UNIFORM:
        _need(d > 0.0, f"uniform gradient requires m2 > m1^2, got d={d}")
        s = math.sqrt(d)
        lam = HALF_WIDTH_FACTOR
        return (1.0 + lam * m1 / s, -lam / (2.0 * s),
                1.0 - lam * m1 / s, lam / (2.0 * s))
    # Fisher
    _need(m1 > 1.0, f"fisher gradient requires m1 > 1, got {m1}")
    alpha = (2.0 - m1) * m2 - m1 * m1
    _need(alpha > 0.0,
          f"fisher gradient requires (2-m1) m2 - m1^2 > 0, got {alpha}")
    a2 = alpha * alpha
    return ((4.0 * m1 * alpha + 2.0 * m1 * m1 * (m2 + 2.0 * m1)) / a2,
            -2.0 * m1 * m1 * (2.0 - m1) / a2,
            -2.0 / (m1 - 1.0) ** 2, 0.0)


def _need(cond: bool, message: str) -> None:
    if not cond:
        raise DomainError(message)


def influence_pair(
    law: LawSpec,
    mode: CoefficientMode = CoefficientMode.CANONICAL,
) -> Tuple[QuadraticInfluence, QuadraticInfluence]:
    """The influence functions (H, L) of (a_hat, b_hat) under ``law``."""
    mom = theoretical_moments(law)
    m1 = mom.require(1)
    m2 = mom.require(2)
    if mode is CoefficientMode.CANONICAL:
        da1, da2, db1, db2 = delta_gradient(law.kind, m1, m2)
    else:
        da1, da2, db1, db2 = _verbatim_coefficients(law.kind, m1, m2)
    return (
        QuadraticInfluence(da1, da2, center=da1 * m1 + da2 * m2),
        QuadraticInfluence(db1, db2, center=db1 * m1 + db2 * m2),
    )


def _verbatim_coefficients(kind: LawKind, m1: float, m2: float
                           ) -> Tuple[float, float, float, float]:
    mu = m1
    s2 = m2 - m1 * m1
    _need(s2 > 0.0, f"verbatim coefficients require m2 > m1^2, got {s2}")
    s4 = s2 * s2
    if kind is LawKind.GAMMA:
        # known slip kept on purpose: (sigma^2 + 1) instead of
        # (sigma^2 + mu^2), and (sigma^2 + 2 mu) instead of
        # (sigma^2 + 2 mu^2)
        return (2.0 * mu * (s2 + 1.0) / s4, -mu * mu / s4,
                (s2 + 2.0 * mu) / s4, -mu / s4)
    if kind is LawKind.BETA:
        # algebraically identical to the canonical gradient
        return ((s2 * (2.0 * mu - m2) + 2.0 * mu * mu * (mu - m2)) / s4,
                -(s2 * mu + mu * (mu - m2)) / s4,
                (s2 * (m2 - 2.0 * mu + 1.0)
                 + 2.0 * mu * (1.0 - mu) * (mu - m2)) / s4,
                (mu - 1.0) * (s2 + mu - m2) / s4)
    if kind is LawKind.UNIFORM:
        s = math.sqrt(s2)
        lam = HALF_WIDTH_FACTOR
        return (1.0 + lam * mu / s, -lam / (2.0 * s),
                1.0 - lam * mu / s, lam / (2.0 * s))
    # Fisher: the printed normalizer, which differs from the true
    # denominator (2 - mu) sigma^2 - mu^2 (mu - 1) of the gradient
    _need(mu > 1.0, f"fisher coefficients require m1 > 1, got {mu}")
    beta = s2 + 2.0 * mu * (2.0 - mu) - mu * (3.0 * mu - 2.0)
    _need(beta != 0.0, "fisher verbatim normalizer vanished")
    return (2.0 * mu * (2.0 - mu) / beta,
            -2.0 * mu * mu * (2.0 - mu) / (beta * beta),
            -2.0 / (mu - 1.0) ** 2, 0.0)


def _required_moment_order(h: QuadraticInfluence, l: QuadraticInfluence) -> int:
    return 4 if (h.c2 != 0.0 or l.c2 != 0.0) else 2


def covariance_exact_moments(
    law: LawSpec,
    h: QuadraticInfluence,
    l: QuadraticInfluence,
) -> Covariance2:
    """Closed-form Var/Cov of the influence pair under ``law``:
    Var(c1 X + c2 X^2) = c1^2 v11 + 2 c1 c2 v12 + c2^2 v22 with
    v11 = Var X, v12 = Cov(X, X^2), v22 = Var X^2."""
    mom = theoretical_moments(law)
    m1 = mom.require(1)
    m2 = mom.require(2)
    if _required_moment_order(h, l) == 4:
        m4 = mom.require(4)
        m3 = mom.require(3)
    else:
        m3 = m4 = 0.0
    v11 = m2 - m1 * m1
    v12 = m3 - m1 * m2
    v22 = m4 - m2 * m2

    def bilinear(p: QuadraticInfluence, q: QuadraticInfluence) -> float:
        return (p.c1 * q.c1 * v11 + (p.c1 * q.c2 + p.c2 * q.c1) * v12
                + p.c2 * q.c2 * v22)

    return Covariance2.build(bilinear(h, h), bilinear(l, l), bilinear(h, l),
                             SigmaMethod.EXACT_MOMENTS)


def _fixed_trapezoid(g: Callable, lo: float, hi: float, panels: int) -> float:
    xs = np.linspace(lo, hi, panels + 1)
    ys = np.asarray(g(xs), dtype=float)
    h = (hi - lo) / panels
    return float(h * (0.5 * ys[0] + ys[1:-1].sum() + 0.5 * ys[-1]))


def _expectation(law: LawSpec, w: Callable, cfg: QuadratureConfig) -> float:
    """E[w(X)] by trapezoid of w(x) pdf(x) over [Q(eps), Q(1-eps)].

    ``cfg.tol`` is applied relative to the integral's magnitude.  For laws
    with unbounded upper support the window is extended by geometric blocks
    [x, 2x] until two consecutive blocks fall below the tolerance, so that
    slowly decaying tails (Fisher) are captured.
    """
    lo = quantile(law, TRUNCATION_EPS)
    hi = quantile(law, 1.0 - TRUNCATION_EPS)

    def g(x):
        return w(x) * pdf(law, x)

    scale = max(1.0, abs(_fixed_trapezoid(g, lo, hi, cfg.panels)))
    cfg_abs = replace(cfg, tol=cfg.tol * scale)
    total = trapezoid_integrate(g, lo, hi, cfg_abs)
    if law.kind in (LawKind.GAMMA, LawKind.FISHER):
        x0 = hi
        quiet = 0
        for _ in range(60):
            if quiet >= 2:
                break
            block = trapezoid_integrate(g, x0, 2.0 * x0, cfg_abs)
            total += block
            quiet = quiet + 1 if abs(block) < cfg_abs.tol else 0
            x0 *= 2.0
    return total


def covariance_exact_quadrature(
    law: LawSpec,
    h: QuadraticInfluence,
    l: QuadraticInfluence,
    cfg: QuadratureConfig = DEFAULT_QUAD_CONFIG,
) -> Covariance2:
    """Var/Cov of the influence pair by density-weighted trapezoid
    quadrature: s11 = E[H(X)^2] - E[H(X)]^2 and so on, each expectation an
    integral over the truncated support."""
    mom = theoretical_moments(law)
    if _required_moment_order(h, l) == 4:
        mom.require(4)  # integrability guard (Fisher: b > 8)
        mom.require(3)
    else:
        mom.require(2)
    eh = _expectation(law, h.raw, cfg)
    el = _expectation(law, l.raw, cfg)
    eh2 = _expectation(law, lambda x: h.raw(x) ** 2, cfg)
    el2 = _expectation(law, lambda x: l.raw(x) ** 2, cfg)
    ehl = _expectation(law, lambda x: h.raw(x) * l.raw(x), cfg)
    return Covariance2.build(eh2 - eh * eh, el2 - el * el, ehl - eh * el,
                             SigmaMethod.EXACT_QUADRATURE)


def covariance_plugin(sample, h: QuadraticInfluence,
                      l: QuadraticInfluence) -> Covariance2:
    """Sample variance/covariance (divisor n-1) of the influence values
    evaluated on one observed sample."""
    x = np.asarray(sample, dtype=float).ravel()
    if x.size < 2:
        raise InsufficientDataError(
            f"plugin covariance needs n >= 2, got {x.size}")
    hv = h.evaluate(x)
    lv = l.evaluate(x)
    c = np.cov(hv, lv, ddof=1)
    return Covariance2.build(float(c[0, 0]), float(c[1, 1]), float(c[0, 1]),
                             SigmaMethod.PLUGIN)


def covariance_replication(dev_a, dev_b) -> Covariance2:
    """Sample covariance (divisor B-1) of paired replicated deviations."""
    da = np.asarray(dev_a, dtype=float).ravel()
    db = np.asarray(dev_b, dtype=float).ravel()
    if da.size != db.size:
        raise InsufficientDataError(
            f"deviation arrays differ in length: {da.size} vs {db.size}")
    if da.size < 2:
        raise InsufficientDataError(
            f"replication covariance needs B >= 2, got {da.size}")
    c = np.cov(da, db, ddof=1)
    return Covariance2.build(float(c[0, 0]), float(c[1, 1]), float(c[0, 1]),
                             SigmaMethod.REPLICATION)
