"""
Quadrature rules used by the analytic pricing formulas
"""

from functools import lru_cache
from typing import Tuple

import numpy as np


@lru_cache(maxsize=32)
def _legendre_unit(n: int) -> Tuple[np.ndarray, np.ndarray]:
    nodes, weights = np.polynomial.legendre.leggauss(n)
    nodes.setflags(write=False)
    weights.setflags(write=False)
    return nodes, weights


def gauss_legendre(n: int, a: float, b: float) -> Tuple[np.ndarray, np.ndarray]:
    """
    n-point Gauss-Legendre nodes and weights on [a, b]

    Args:
        n: Number of nodes
        a: Lower bound
        b: Upper bound

    Returns:
        Tuple of (nodes, weights), nodes ascending
    """
    if n < 1:
        raise ValueError(f"quadrature needs at least one node, got {n}")
    unit_nodes, unit_weights = _legendre_unit(int(n))
    nodes = 0.5 * (a * (1.0 - unit_nodes) + b * (1.0 + unit_nodes))
    return nodes, unit_weights * (0.5 * (b - a))


def sqrt_substitution(n: int, t: float, T: float) -> Tuple[np.ndarray, np.ndarray]:
    """
    Nodes and weights for integrals over (t, T] with u = t + (T - t) s^2

    The Jacobian 2 (T - t) s cancels integrable 1/sqrt(u - t) endpoint terms.
    """
    s, w = gauss_legendre(n, 0.0, 1.0)
    u = t + (T - t) * s ** 2
    return u, w * 2.0 * (T - t) * s
