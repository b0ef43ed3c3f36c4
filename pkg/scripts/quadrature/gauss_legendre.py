#!/usr/bin/env python3
"""
Gauss-Legendre Rules on [-1, 1]

Nodes are the zeros of the degree-n Legendre polynomial, found by Newton
iteration from the asymptotic guesses cos(pi (k - 1/4) / (n + 1/2)); the
weights are the Christoffel numbers 2 / ((1 - z^2) P_n'(z)^2).

Only the non-negative half of the nodes is iterated; the other half is its
mirror image, so node and weight symmetry hold exactly.
"""

import logging
import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Tuple

import numpy as np

from .errors import ConvergenceError, DomainError

logger = logging.getLogger(__name__)

MAX_POINTS = 1024
MAX_NEWTON_STEPS = 100
NEWTON_STEP_TOL = 1e-15


@dataclass(frozen=True)
class GaussRule:
    """n-point Gauss-Legendre rule: increasing nodes in (-1, 1), positive weights."""

    n: int
    nodes: np.ndarray
    weights: np.ndarray

    def integrate(self, g: Callable[[np.ndarray], np.ndarray]) -> float:
        """Apply the rule to a vectorized integrand on [-1, 1]."""
        return float(np.sum(self.weights * g(self.nodes)))


def legendre_with_derivative(n: int, z: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    """
    Evaluate P_n and P_n' by the three-term recurrence.

    Args:
        n: Polynomial degree (>= 1)
        z: Points strictly inside (-1, 1)

    Returns:
        Tuple (P_n(z), P_n'(z))
    """
    p_prev = np.ones_like(z)
    p = z.copy()
    for j in range(2, n + 1):
        p_prev, p = p, ((2 * j - 1) * z * p - (j - 1) * p_prev) / j
    dp = n * (z * p - p_prev) / (z * z - 1.0)
    return p, dp


@lru_cache(maxsize=None)
def gl_rule(n: int) -> GaussRule:
    """
    Build the n-point Gauss-Legendre rule.

    Args:
        n: Number of points, 1 <= n <= 1024

    Returns:
        GaussRule with read-only node and weight arrays

    Raises:
        DomainError: If n is outside 1..1024
        ConvergenceError: If Newton does not settle within 100 steps
    """
    if int(n) != n or not 1 <= n <= MAX_POINTS:
        raise DomainError(f"Gauss-Legendre point count must be in 1..{MAX_POINTS}, got {n}")
    n = int(n)

    half = (n + 1) // 2
    k = np.arange(1, half + 1, dtype=float)
    z = np.cos(math.pi * (k - 0.25) / (n + 0.5))

    for step in range(1, MAX_NEWTON_STEPS + 1):
        p, dp = legendre_with_derivative(n, z)
        dz = p / dp
        z = z - dz
        if np.max(np.abs(dz)) <= NEWTON_STEP_TOL:
            break
    else:
        raise ConvergenceError(
            f"Newton iteration for {n}-point Gauss-Legendre rule did not converge "
            f"in {MAX_NEWTON_STEPS} steps"
        )

    if n % 2 == 1:
        z[-1] = 0.0
    _, dp = legendre_with_derivative(n, z)
    w = 2.0 / ((1.0 - z * z) * dp * dp)

    # z holds the non-negative roots in decreasing order
    if n % 2 == 1:
        nodes = np.concatenate([-z, z[-2::-1]])
        weights = np.concatenate([w, w[-2::-1]])
    else:
        nodes = np.concatenate([-z, z[::-1]])
        weights = np.concatenate([w, w[::-1]])

    nodes.setflags(write=False)
    weights.setflags(write=False)
    logger.debug(f"Built {n}-point Gauss-Legendre rule in {step} Newton steps")
    return GaussRule(n=n, nodes=nodes, weights=weights)
