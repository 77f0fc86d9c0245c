"""
Exponential kernels gamma(x, t) = exp(-x t) and their expectations over cycle laws
"""

import math
from dataclasses import dataclass, replace

import mpmath

from ..errors import DomainError
from ..renewal import Distribution


def exp_of(x):
    """exp that keeps mpmath precision for mpmath arguments"""
    return mpmath.exp(x) if isinstance(x, mpmath.mpf) else math.exp(x)


def expm1_of(x):
    return mpmath.expm1(x) if isinstance(x, mpmath.mpf) else math.expm1(x)


def gamma(x: float, t: float) -> float:
    return exp_of(-x * t)


@dataclass(frozen=True)
class TransformArgs:
    """Transform variables of the joint functional and of the Laplace-Carson pair"""

    theta0: float = 0.0
    theta1: float = 0.0
    vartheta0: float = 0.0
    vartheta1: float = 0.0
    u: float = 1.0
    v: float = 1.0

    def __post_init__(self):
        for name in ("theta0", "theta1", "vartheta0", "vartheta1"):
            value = getattr(self, name)
            if not value >= 0:
                raise DomainError(f"{name} must be >= 0, got {value}")
        if not (self.u > 0 and self.v > 0):
            raise DomainError(f"transform variables need u > 0 and v > 0, got u={self.u}, v={self.v}")

    def with_uv(self, u: float, v: float) -> "TransformArgs":
        return replace(self, u=u, v=v)


@dataclass(frozen=True)
class GammaTerms:
    """The gamma terms in tau (B side, v) and the upper Gamma terms in sigma (A side, u)"""

    args: TransformArgs

    def gamma0(self, t: float) -> float:
        return gamma(self.args.v, t)

    def gamma1(self, t: float) -> float:
        return gamma(self.args.vartheta0 + self.args.v, t)

    def gamma2(self, t: float) -> float:
        return gamma(self.args.vartheta0 + self.args.vartheta1 + self.args.v, t)

    def upper_gamma0(self, t: float) -> float:
        return gamma(self.args.u, t)

    def upper_gamma1(self, t: float) -> float:
        return gamma(self.args.theta0 + self.args.u, t)

    def upper_gamma2(self, t: float) -> float:
        return gamma(self.args.theta0 + self.args.theta1 + self.args.u, t)

    def upper_gamma(self, t: float) -> float:
        return self.gamma2(t) * self.upper_gamma2(t)

    @property
    def upper_gamma_rate(self) -> float:
        a = self.args
        return a.vartheta0 + a.vartheta1 + a.v + a.theta0 + a.theta1 + a.u

    @property
    def tau_growth(self) -> float:
        return self.args.vartheta0 + self.args.v

    @property
    def sigma_growth(self) -> float:
        return self.args.theta0 + self.args.u

    def tau_ratio(self, t: float) -> float:
        """(1 - gamma0) / (1 - gamma2), bounded in t"""
        a = self.args
        return expm1_of(-a.v * t) / expm1_of(-(a.vartheta0 + a.vartheta1 + a.v) * t)

    def sigma_ratio(self, t: float) -> float:
        """(1 - Gamma0) / (1 - Gamma), bounded in t"""
        return expm1_of(-self.args.u * t) / expm1_of(-self.upper_gamma_rate * t)

    def tau_factor(self, t: float) -> float:
        """(1 - gamma0) / (gamma1 (1 - gamma2)) at a cycle length t > 0"""
        return self.tau_ratio(t) / self.gamma1(t)

    def sigma_factor(self, t: float) -> float:
        """(1 - Gamma0) / (Gamma1 (1 - Gamma)) at a cycle length t > 0"""
        return self.sigma_ratio(t) / self.upper_gamma1(t)


def laplace_of(dist: Distribution, x: float) -> float:
    """E[exp(-x sigma)] for any x with rate + x > 0 (negative x allowed)"""
    if dist.is_deterministic:
        return exp_of(-x * dist.value)
    if not dist.rate + x > 0:
        raise DomainError(f"E[exp(-x sigma)] diverges for x={x} <= -rate={-dist.rate}")
    return dist.rate / (dist.rate + x)


def laplace_tail_of(dist: Distribution, x: float, lower: float) -> float:
    """E[exp(-x sigma); sigma >= lower] for any x with rate + x > 0"""
    if dist.is_deterministic:
        return exp_of(-x * dist.value) if dist.value >= lower else 0.0
    if lower <= 0:
        return laplace_of(dist, x)
    total = dist.rate + x
    if not total > 0:
        raise DomainError(f"E[exp(-x sigma)] diverges for x={x} <= -rate={-dist.rate}")
    return dist.rate / total * exp_of(-total * lower)


def expected_exponential(dist: Distribution, x: float) -> float:
    """
    Laplace transform of a cycle law.

    Args:
        dist: Deterministic or exponential law
        x: Exponent, x >= 0

    Returns:
        exp(-x d) for deterministic d, rate / (rate + x) for exponential laws
    """
    if not x >= 0:
        raise DomainError(f"x must be >= 0, got {x}")
    return laplace_of(dist, x)


def expected_exponential_tail(dist: Distribution, x: float, lower: float) -> float:
    """E[exp(-x sigma) 1{sigma >= lower}] for x >= 0"""
    if not x >= 0:
        raise DomainError(f"x must be >= 0, got {x}")
    return laplace_tail_of(dist, x, lower)
