#!/usr/bin/env python3
"""
Product Integration Rule for Oscillatory Integrals

Approximates I(f, y) = int_{-a}^{a} kappa(omega (y - x)) f(x) dx, with
kappa in {sin, cos}, from the samples f(t_j) on an equispaced grid:

    I(f, y) ~ sum_j f(t_j) w_j(y),   w_j(y) = sum_i c_{i,j} q_i(y)

where c_{i,j} are the entries of the Boolean-sum matrix C_{m,l} and q_i(y) is
the modified moment of kappa against the Bernstein basis polynomial p_{m,i}.

The moments are computed on an oscillation-aware partition of [-a, a] into
N = floor(omega a / pi) + 1 equal subintervals (each spans at most half a
kernel period) with an n-point Gauss-Legendre rule on every subinterval.
Node and basis evaluations are shared across all basis indices i and across
all evaluation points y of one call.

Summation order is fixed: Gauss points are accumulated in order inside each
subinterval, subintervals are combined by a pairwise tree, and weights are
applied to samples with an exactly rounded sum. Results are therefore
identical whether y is evaluated alone or in a batch.
"""

import logging
import math
from dataclasses import dataclass
from typing import List, Optional, Sequence

import numpy as np

from .bernstein_gb import (
    GridFunction,
    basis_matrix,
    build_C,
    make_grid,
)
from .errors import DimensionError, DomainError
from .gauss_legendre import GaussRule, gl_rule

logger = logging.getLogger(__name__)

KERNEL_VARIANTS = ('sin', 'cos')


@dataclass(frozen=True)
class OscillatoryKernel:
    """kappa(theta) = sin(theta) or cos(theta), applied as kappa(omega (y - x))."""

    variant: str
    omega: float

    def __post_init__(self):
        if self.variant not in KERNEL_VARIANTS:
            raise DomainError(f"Kernel variant must be one of {KERNEL_VARIANTS}, got '{self.variant}'")
        omega = float(self.omega)
        if not math.isfinite(omega) or omega < 0:
            raise DomainError(f"Frequency omega must be finite and >= 0, got {self.omega}")
        object.__setattr__(self, 'omega', omega)

    def __call__(self, theta: np.ndarray) -> np.ndarray:
        if self.variant == 'sin':
            return np.sin(theta)
        return np.cos(theta)

    def at(self, y: float, x: np.ndarray) -> np.ndarray:
        """kappa(omega (y - x))."""
        return self(self.omega * (y - x))


@dataclass(frozen=True)
class Partition:
    """
    Equal subintervals [x_{h-1}, x_h], h = 1..N, of [-a, a].

    Subinterval h is mapped onto [-1, 1] by gamma_h(x) = 2 (x - x_{h-1}) / eta - 1.
    """

    N: int
    a: float
    eta: float
    breakpoints: np.ndarray

    def _check_index(self, h: int) -> None:
        if not 1 <= h <= self.N:
            raise DomainError(f"Subinterval index h={h} outside 1..{self.N}")

    def to_local(self, h: int, x: np.ndarray) -> np.ndarray:
        """gamma_h(x)."""
        self._check_index(h)
        return 2.0 * (np.asarray(x, dtype=float) - self.breakpoints[h - 1]) / self.eta - 1.0

    def from_local(self, h: int, z: np.ndarray) -> np.ndarray:
        """gamma_h^{-1}(z) = x_{h-1} + eta (z + 1) / 2."""
        self._check_index(h)
        return self.centers[h - 1] + 0.5 * self.eta * np.asarray(z, dtype=float)

    @property
    def centers(self) -> np.ndarray:
        h = np.arange(1, self.N + 1, dtype=float)
        return self.a * (2.0 * h - 1.0 - self.N) / self.N

    def points(self, gl: GaussRule) -> np.ndarray:
        """Mapped Gauss nodes, shape (N, n); row h-1 is gamma_h^{-1}(z_k)."""
        return self.centers[:, None] + (self.a / self.N) * gl.nodes[None, :]


@dataclass(frozen=True)
class MomentTable:
    """Modified moments q_i(y), i = 0..m, for one evaluation point."""

    y: float
    kernel: OscillatoryKernel
    m: int
    a: float
    q: np.ndarray


@dataclass(frozen=True)
class RuleWeights:
    """Per-sample weights w_j(y) = sum_i c_{i,j} q_i(y) of the product rule."""

    y: float
    kernel: OscillatoryKernel
    m: int
    a: float
    ell: int
    w: np.ndarray

    def apply(self, values: np.ndarray) -> float:
        """
        Contract the weights with samples f(t_j).

        Uses an exactly rounded sum, so the result does not depend on how the
        product terms happen to be ordered or vectorized.
        """
        values = np.asarray(values, dtype=float).ravel()
        if values.size != self.w.size:
            raise DimensionError(f"Expected {self.w.size} samples, got {values.size}")
        return math.fsum(values * self.w)

    def l1_norm(self) -> float:
        return float(np.sum(np.abs(self.w)))


def default_points(m: int) -> int:
    """Gauss points per subinterval: n = m, never fewer than 2."""
    return max(int(m), 2)


def make_partition(a: float, kernel: OscillatoryKernel) -> Partition:
    """
    Split [-a, a] into N = floor(omega a / pi) + 1 equal subintervals.

    Args:
        a: Half-width (> 0)
        kernel: Kernel whose frequency sets N

    Returns:
        Partition with exactly symmetric breakpoints
    """
    a = float(a)
    if not math.isfinite(a) or a <= 0:
        raise DomainError(f"Half-width a must be a positive finite real, got {a}")
    N = int(math.floor(kernel.omega * a / math.pi)) + 1
    h = np.arange(N + 1, dtype=float)
    breakpoints = a * (2.0 * h - N) / N
    breakpoints[0], breakpoints[-1] = -a, a
    breakpoints.setflags(write=False)
    return Partition(N=N, a=a, eta=2.0 * a / N, breakpoints=breakpoints)


def _check_point(y: float, a: float) -> float:
    y = float(y)
    if not math.isfinite(y) or abs(y) > a:
        raise DomainError(f"Evaluation point y={y} outside [-{a}, {a}]")
    return y


def _pairwise_rows(rows: np.ndarray) -> np.ndarray:
    """Sum the rows of a 2-D array along a fixed balanced binary tree."""
    if rows.shape[0] == 1:
        return rows[0].copy()
    mid = rows.shape[0] // 2
    return _pairwise_rows(rows[:mid]) + _pairwise_rows(rows[mid:])


def moment_tables(
    ys: Sequence[float],
    kernel: OscillatoryKernel,
    part: Partition,
    m: int,
    gl: GaussRule
) -> List[MomentTable]:
    """
    Compute all m+1 moments for each evaluation point.

    q_i(y) ~ (a/N) sum_h sum_k lambda_k p_{m,i}(gamma_h^{-1}(z_k))
             kappa(omega (y - gamma_h^{-1}(z_k)))

    Args:
        ys: Evaluation points in [-a, a]
        kernel: Oscillatory kernel
        part: Partition built from the kernel
        m: Bernstein degree
        gl: Gauss-Legendre rule used on every subinterval

    Returns:
        One MomentTable per entry of ys, in order
    """
    ys = [_check_point(y, part.a) for y in ys]
    if not ys:
        return []

    points = part.points(gl)
    partial = np.empty((len(ys), part.N, m + 1))
    for h in range(part.N):
        basis = basis_matrix(m, part.a, points[h])
        for idx, y in enumerate(ys):
            scaled = gl.weights * kernel.at(y, points[h])
            partial[idx, h] = np.sum(scaled[:, None] * basis, axis=0)

    logger.debug(
        f"Moments: m={m}, N={part.N}, n={gl.n}, {kernel.variant} omega={kernel.omega}, "
        f"{len(ys)} point(s)"
    )

    scale = part.a / part.N
    tables = []
    for idx, y in enumerate(ys):
        q = scale * _pairwise_rows(partial[idx])
        q.setflags(write=False)
        tables.append(MomentTable(y=y, kernel=kernel, m=m, a=part.a, q=q))
    return tables


def moment_table(
    y: float,
    kernel: OscillatoryKernel,
    part: Partition,
    m: int,
    gl: GaussRule
) -> MomentTable:
    """Moments q_0(y), ..., q_m(y) for a single evaluation point."""
    return moment_tables([y], kernel, part, m, gl)[0]


def moment(
    i: int,
    y: float,
    kernel: OscillatoryKernel,
    part: Partition,
    m: int,
    gl: GaussRule
) -> float:
    """
    Single modified moment q_i(y).

    Raises:
        DomainError: If i is outside 0..m or y outside [-a, a]
    """
    if int(i) != i or not 0 <= i <= m:
        raise DomainError(f"Moment index i={i} outside 0..{m}")
    return float(moment_table(y, kernel, part, m, gl).q[int(i)])


def compute_weights_many(
    m: int,
    a: float,
    ell: int,
    kernel: OscillatoryKernel,
    ys: Sequence[float],
    points: Optional[int] = None
) -> List[RuleWeights]:
    """
    Rule weights for several evaluation points, sharing C and basis evaluations.

    Args:
        m: Degree
        a: Half-width
        ell: Iteration parameter of the generalized Bernstein operator
        kernel: Oscillatory kernel
        ys: Evaluation points in [-a, a]
        points: Gauss points per subinterval (default max(m, 2))

    Returns:
        One RuleWeights per entry of ys
    """
    grid = make_grid(m, a)
    C = build_C(grid.m, grid.a, ell)
    part = make_partition(grid.a, kernel)
    gl = gl_rule(points if points is not None else default_points(grid.m))

    weights = []
    for table in moment_tables(ys, kernel, part, grid.m, gl):
        w = table.q @ C.entries
        w.setflags(write=False)
        weights.append(RuleWeights(
            y=table.y, kernel=kernel, m=grid.m, a=grid.a, ell=C.ell, w=w
        ))
    return weights


def compute_weights(
    m: int,
    a: float,
    ell: int,
    kernel: OscillatoryKernel,
    y: float,
    points: Optional[int] = None
) -> RuleWeights:
    """Rule weights w_j(y), j = 0..m, for one evaluation point."""
    return compute_weights_many(m, a, ell, kernel, [y], points)[0]


def integrate_many(
    fs: GridFunction,
    kernel: OscillatoryKernel,
    ell: int,
    ys: Sequence[float],
    points: Optional[int] = None
) -> List[float]:
    """
    Apply the product rule to one grid function at several evaluation points.

    The Boolean-sum matrix is built once; moments are computed per point.
    """
    weights = compute_weights_many(fs.m, fs.a, ell, kernel, ys, points)
    return [rule.apply(fs.values) for rule in weights]


def integrate(
    fs: GridFunction,
    kernel: OscillatoryKernel,
    ell: int,
    y: float,
    points: Optional[int] = None
) -> float:
    """
    Product-rule approximation of int_{-a}^{a} kappa(omega (y - x)) f(x) dx.

    Args:
        fs: Samples of f on the equispaced grid of degree m
        kernel: Oscillatory kernel
        ell: Iteration parameter
        y: Evaluation point in [-a, a]
        points: Gauss points per subinterval (default max(m, 2))

    Returns:
        Approximate integral value
    """
    return integrate_many(fs, kernel, ell, [y], points)[0]
