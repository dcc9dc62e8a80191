"""
Model core for the Asian option boundary toolkit
Handles parameter types, averaging kernels and the transformed PDE coefficients
"""

import logging
from enum import Enum
from typing import Optional, Union

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, model_validator

from core.exceptions import DomainError

logger = logging.getLogger(__name__)

ArrayLike = Union[float, np.ndarray]


class OptionKind(str, Enum):
    """Call or put on the floating strike"""

    CALL = 'call'
    PUT = 'put'

    @property
    def rho(self) -> int:
        """+1 for a call, -1 for a put"""
        return 1 if self is OptionKind.CALL else -1


class AveragingMethod(str, Enum):
    """Continuous averaging operators"""

    ARITHMETIC = 'arith'
    GEOMETRIC = 'geom'
    WEIGHTED = 'weighted'


class ModelParams(BaseModel):
    """Market and contract parameters shared by every module"""

    model_config = ConfigDict(frozen=True)

    r: float = Field(..., gt=0, description="Risk-free rate per year")
    q: float = Field(0.0, ge=0, description="Continuous dividend yield per year")
    sigma: float = Field(..., gt=0, description="Volatility per sqrt-year")
    T: float = Field(..., gt=0, description="Maturity in years")

    def scaled(self) -> 'ModelParams':
        """Parameters of the equivalent contract with unit maturity"""
        return ModelParams(r=self.r * self.T, q=self.q * self.T, sigma=self.sigma * np.sqrt(self.T), T=1.0)


class AveragingSpec(BaseModel):
    """Averaging operator and its decay rate"""

    model_config = ConfigDict(frozen=True, populate_by_name=True)

    method: AveragingMethod = AveragingMethod.ARITHMETIC
    lam: Optional[float] = Field(None, alias='lambda', description="Decay rate for exponential weights")

    @model_validator(mode='after')
    def _check_lambda(self) -> 'AveragingSpec':
        if self.method is AveragingMethod.WEIGHTED:
            if self.lam is None or not self.lam > 0:
                raise ValueError("weighted averaging needs lambda > 0")
        elif self.lam is not None:
            raise ValueError(f"lambda is only meaningful for weighted averaging, got method {self.method.value}")
        return self

    @classmethod
    def arithmetic(cls) -> 'AveragingSpec':
        return cls(method=AveragingMethod.ARITHMETIC)

    @classmethod
    def geometric(cls) -> 'AveragingSpec':
        return cls(method=AveragingMethod.GEOMETRIC)

    @classmethod
    def weighted(cls, lam: float) -> 'AveragingSpec':
        return cls(method=AveragingMethod.WEIGHTED, lam=lam)


class GridSpec(BaseModel):
    """Uniform (xi, tau) grid of the front-fixing scheme"""

    model_config = ConfigDict(frozen=True)

    n: int = Field(200, ge=8, description="Spatial steps")
    m: int = Field(20000, ge=8, description="Time steps")
    L: float = Field(2.0, gt=0, description="Upper end of the xi domain")

    @property
    def h(self) -> float:
        return self.L / self.n

    def time_step(self, T: float) -> float:
        """k = T/m"""
        return T / self.m

    def xi_grid(self) -> np.ndarray:
        return np.linspace(0.0, self.L, self.n + 1)

    def tau_grid(self, T: float) -> np.ndarray:
        return np.linspace(0.0, T, self.m + 1)


def _weight_normaliser(lam: float, t: ArrayLike) -> ArrayLike:
    # lam / (1 - exp(-lam t)), finite as lam -> 0
    return lam / -np.expm1(-lam * np.asarray(t, dtype=float))


def averaging_drift(avg: AveragingSpec, x: ArrayLike, t: ArrayLike) -> ArrayLike:
    """
    Drift kernel f(x, t) of the averaging operator

    Args:
        avg: Averaging operator
        x: Ratio A/S, positive
        t: Time since the averaging started, positive

    Returns:
        f(x, t), elementwise for array input
    """
    x_arr = np.asarray(x, dtype=float)
    t_arr = np.asarray(t, dtype=float)
    if np.any(x_arr <= 0):
        raise DomainError(f"averaging drift needs x > 0, got {x}")
    if np.any(t_arr <= 0):
        raise DomainError(f"averaging drift needs t > 0, got {t}")

    if avg.method is AveragingMethod.ARITHMETIC:
        return (1.0 / x_arr - 1.0) / t_arr
    if avg.method is AveragingMethod.GEOMETRIC:
        return -np.log(x_arr) / t_arr
    return _weight_normaliser(avg.lam, t_arr) * (1.0 / x_arr - 1.0)


def reaction_coefficient(
    avg: AveragingSpec,
    params: ModelParams,
    xi: ArrayLike,
    tau: float,
    rho_val: float,
) -> ArrayLike:
    """
    Reaction term b = r - d/dx (x f(x, T - tau)) at x = exp(xi)/rho_val

    The derivative of x f is taken analytically for each kernel.
    """
    if tau >= params.T:
        raise DomainError(f"reaction coefficient needs tau < T, got tau={tau}, T={params.T}")
    if rho_val <= 0:
        raise DomainError(f"boundary value must be positive, got {rho_val}")
    remaining = params.T - tau
    xi_arr = np.asarray(xi, dtype=float)

    if avg.method is AveragingMethod.ARITHMETIC:
        return params.r + 1.0 / remaining + np.zeros_like(xi_arr)
    if avg.method is AveragingMethod.GEOMETRIC:
        return params.r + (xi_arr - np.log(rho_val) + 1.0) / remaining
    return params.r + _weight_normaliser(avg.lam, remaining) + np.zeros_like(xi_arr)


def convection_coefficient(
    avg: AveragingSpec,
    params: ModelParams,
    xi: ArrayLike,
    tau: float,
    rho_val: float,
    rho_dot_over_rho: float,
) -> ArrayLike:
    """Convection term a = rho'/rho + r - q - sigma^2/2 - f(exp(xi)/rho, T - tau)"""
    if tau >= params.T:
        raise DomainError(f"convection coefficient needs tau < T, got tau={tau}, T={params.T}")
    if rho_val <= 0:
        raise DomainError(f"boundary value must be positive, got {rho_val}")
    x = np.exp(np.asarray(xi, dtype=float)) / rho_val
    drift = averaging_drift(avg, x, params.T - tau)
    return rho_dot_over_rho + params.r - params.q - 0.5 * params.sigma ** 2 - drift
