#!/usr/bin/env python3
"""
Reference Integrator for Oscillatory Integrals

Independent ground truth for tests and convergence studies. Evaluates
int_{-a}^{a} kappa(omega (y - x)) f(x) dx for a vectorized callable f with a
composite Gauss-Legendre rule on panels aligned to a refinement of the
oscillation-aware partition, doubling the panel count until two successive
levels agree.

Nothing here goes through the product rule: Gauss nodes come from
numpy.polynomial.legendre.leggauss and the panel layout is rebuilt locally.
The Bernstein basis is the only shared piece (for reference moments).
"""

import logging
import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Iterator, NamedTuple, Optional, Tuple

import numpy as np

from .bernstein_gb import basis_eval
from .errors import ConvergenceError, DomainError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ReferenceConfig:
    """
    Refinement settings of the reference integrator.

    Attributes:
        refinement: Panels per oscillation-aware subinterval at the first level
        points_per_panel: Gauss-Legendre order on each panel
        target_tol: Mixed tolerance; successive levels must agree to
            target_tol * max(1, |value|)
        max_doublings: Cap on the number of panel doublings
    """

    refinement: int = 8
    points_per_panel: int = 32
    target_tol: float = 1e-13
    max_doublings: int = 12

    def __post_init__(self):
        if self.refinement < 1:
            raise DomainError(f"refinement must be >= 1, got {self.refinement}")
        if self.points_per_panel < 2:
            raise DomainError(f"points_per_panel must be >= 2, got {self.points_per_panel}")
        if not self.target_tol > 0:
            raise DomainError(f"target_tol must be > 0, got {self.target_tol}")
        if self.max_doublings < 1:
            raise DomainError(f"max_doublings must be >= 1, got {self.max_doublings}")


class ReferenceResult(NamedTuple):
    value: float
    achieved_tol: float


@lru_cache(maxsize=16)
def _leggauss(n: int) -> Tuple[np.ndarray, np.ndarray]:
    return np.polynomial.legendre.leggauss(n)


def _kernel(variant: str) -> Callable[[np.ndarray], np.ndarray]:
    if variant == 'sin':
        return np.sin
    if variant == 'cos':
        return np.cos
    raise DomainError(f"Unknown kernel variant '{variant}'")


def _composite(
    f: Callable[[np.ndarray], np.ndarray],
    variant: str,
    omega: float,
    a: float,
    y: float,
    panels: int,
    order: int
) -> float:
    z, lam = _leggauss(order)
    half = a / panels
    centers = a * (2.0 * np.arange(1, panels + 1) - 1.0 - panels) / panels
    x = (centers[:, None] + half * z[None, :]).ravel()
    values = np.asarray(f(x), dtype=float)
    if values.shape == ():
        values = np.full(x.shape, float(values))
    terms = np.tile(lam, panels) * _kernel(variant)(omega * (y - x)) * values
    return half * math.fsum(terms)


def reference_levels(
    f: Callable[[np.ndarray], np.ndarray],
    kernel,
    a: float,
    y: float,
    cfg: Optional[ReferenceConfig] = None
) -> Iterator[Tuple[int, float]]:
    """
    Yield (panel_count, value) for the base level and every doubling.

    Args:
        f: Vectorized integrand factor on [-a, a]
        kernel: Object with `variant` ('sin' or 'cos') and `omega` attributes
        a: Half-width
        y: Evaluation point in [-a, a]
        cfg: Refinement settings (defaults if None)

    Yields:
        max_doublings + 1 tuples, coarsest first
    """
    cfg = cfg or ReferenceConfig()
    a = float(a)
    if not math.isfinite(a) or a <= 0:
        raise DomainError(f"Half-width a must be a positive finite real, got {a}")
    if not abs(y) <= a:
        raise DomainError(f"Evaluation point y={y} outside [-{a}, {a}]")

    base = int(math.floor(kernel.omega * a / math.pi)) + 1
    panels = cfg.refinement * base
    for _ in range(cfg.max_doublings + 1):
        yield panels, _composite(f, kernel.variant, kernel.omega, a, float(y), panels, cfg.points_per_panel)
        panels *= 2


def reference_integral(
    f: Callable[[np.ndarray], np.ndarray],
    kernel,
    a: float,
    y: float,
    cfg: Optional[ReferenceConfig] = None
) -> ReferenceResult:
    """
    Reference value of int_{-a}^{a} kappa(omega (y - x)) f(x) dx.

    Levels are doubled until two successive values differ by at most
    target_tol * max(1, |value|).

    Args:
        f: Vectorized callable on [-a, a]
        kernel: Oscillatory kernel (variant, omega)
        a: Half-width
        y: Evaluation point
        cfg: Refinement settings

    Returns:
        ReferenceResult(value of the finer level, last interlevel difference)

    Raises:
        ConvergenceError: If max_doublings is reached first; the exception
            carries the last value and difference
    """
    cfg = cfg or ReferenceConfig()
    previous = None
    diff = math.inf
    value = math.nan
    for panels, value in reference_levels(f, kernel, a, y, cfg):
        if previous is not None:
            diff = abs(value - previous)
            logger.debug(f"Reference level: {panels} panels, value={value:.17g}, diff={diff:.3e}")
            if diff <= cfg.target_tol * max(1.0, abs(value)):
                return ReferenceResult(value=value, achieved_tol=diff)
        previous = value

    raise ConvergenceError(
        f"Reference integral did not reach tol {cfg.target_tol:.1e} after "
        f"{cfg.max_doublings} doublings (last difference {diff:.3e})",
        value=value,
        achieved_tol=diff,
    )


def reference_q(
    i: int,
    m: int,
    a: float,
    kernel,
    y: float,
    cfg: Optional[ReferenceConfig] = None
) -> float:
    """Reference modified moment int kappa(omega (y - x)) p_{m,i}(x) dx."""
    if int(i) != i or not 0 <= i <= m:
        raise DomainError(f"Moment index i={i} outside 0..{m}")
    return reference_integral(lambda x: basis_eval(m, a, int(i), x), kernel, a, y, cfg).value
