#!/usr/bin/env python3
"""
Bernstein Basis and Generalized Bernstein Operators on [-a, a]

Provides:
- Equispaced grids t_k = -a + 2ak/m and sampled grid functions
- The degree-m Bernstein basis, evaluated in log space so m up to 1024
  never overflows an intermediate
- The node matrix A (A[i, j] = p_{m,j}(t_i)) and the Boolean-sum matrix
  C_{m,l} = I + (I - A) + ... + (I - A)^(l-1)
- Evaluation of the generalized Bernstein polynomial B_{m,l}(f, x)

Built grids and matrices are immutable (read-only numpy buffers) and cached
per (m, a) / (m, a, l), so they can be shared freely between callers.
"""

import logging
import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Optional, Union

import numpy as np
from scipy.special import betaln

from .errors import DimensionError, DomainError

logger = logging.getLogger(__name__)

ArrayLike = Union[float, np.ndarray]

LN2 = math.log(2.0)
MAX_DEGREE = 1024


def _check_degree(m: int) -> int:
    if int(m) != m or m < 1:
        raise DomainError(f"Degree m must be a positive integer, got {m}")
    if m > MAX_DEGREE:
        raise DomainError(f"Degree m={m} exceeds supported maximum {MAX_DEGREE}")
    return int(m)


def _check_half_width(a: float) -> float:
    a = float(a)
    if not math.isfinite(a) or a <= 0:
        raise DomainError(f"Half-width a must be a positive finite real, got {a}")
    return a


def _readonly(array: np.ndarray) -> np.ndarray:
    array.setflags(write=False)
    return array


@dataclass(frozen=True)
class EquispacedGrid:
    """Nodes t_k = -a + 2ak/m, k = 0..m."""

    m: int
    a: float
    nodes: np.ndarray

    @property
    def step(self) -> float:
        return 2.0 * self.a / self.m

    def __len__(self) -> int:
        return self.m + 1


@dataclass(frozen=True)
class GridFunction:
    """Samples f(t_k) of a function on an equispaced grid."""

    grid: EquispacedGrid
    values: np.ndarray

    def __post_init__(self):
        values = np.array(self.values, dtype=float).ravel()
        if values.size != self.grid.m + 1:
            raise DimensionError(
                f"Expected {self.grid.m + 1} samples for degree {self.grid.m}, got {values.size}"
            )
        if not np.all(np.isfinite(values)):
            raise DomainError("Grid function samples must all be finite")
        object.__setattr__(self, 'values', _readonly(values))

    @property
    def m(self) -> int:
        return self.grid.m

    @property
    def a(self) -> float:
        return self.grid.a


@dataclass(frozen=True)
class BooleanSumMatrix:
    """
    The (m+1)x(m+1) matrix C_{m,l} of the l-fold iterated Boolean sum.

    Every row sums to 1 and ||C||_inf <= 2^l - 1.
    """

    m: int
    a: float
    ell: int
    entries: np.ndarray

    def inf_norm(self) -> float:
        """Maximum absolute row sum."""
        return float(np.max(np.sum(np.abs(self.entries), axis=1)))

    def row_sums(self) -> np.ndarray:
        return np.sum(self.entries, axis=1)


@lru_cache(maxsize=64)
def make_grid(m: int, a: float) -> EquispacedGrid:
    """
    Build the equispaced grid of degree m on [-a, a].

    Nodes are computed as a(2k - m)/m, which makes both endpoints exact and
    the grid exactly symmetric about 0.

    Args:
        m: Degree (number of nodes minus one)
        a: Half-width of the interval

    Returns:
        EquispacedGrid with m+1 strictly increasing nodes
    """
    m = _check_degree(m)
    a = _check_half_width(a)
    k = np.arange(m + 1, dtype=float)
    nodes = a * (2.0 * k - m) / m
    nodes[0], nodes[-1] = -a, a
    return EquispacedGrid(m=m, a=a, nodes=_readonly(nodes))


def sample(f: Callable[[np.ndarray], np.ndarray], grid: EquispacedGrid) -> GridFunction:
    """Sample a vectorized callable at the grid nodes."""
    values = np.asarray(f(grid.nodes), dtype=float)
    if values.shape == ():
        values = np.full(grid.m + 1, float(values))
    return GridFunction(grid=grid, values=values)


def _as_points(x: ArrayLike, a: float) -> np.ndarray:
    xs = np.atleast_1d(np.asarray(x, dtype=float))
    if not np.all(np.isfinite(xs)):
        raise DomainError("Evaluation points must be finite")
    if np.any(np.abs(xs) > a):
        bad = xs[np.abs(xs) > a][0]
        raise DomainError(f"Evaluation point x={bad} outside [-{a}, {a}]")
    return xs


def _log_binomials(m: int, k: np.ndarray) -> np.ndarray:
    # log C(m, k) = -log(m + 1) - log B(m - k + 1, k + 1)
    return -math.log(m + 1) - betaln(m - k + 1.0, k + 1.0)


def basis_matrix(m: int, a: float, xs: ArrayLike) -> np.ndarray:
    """
    Evaluate all m+1 Bernstein basis polynomials at many points.

    Args:
        m: Degree
        a: Half-width
        xs: Points in [-a, a] (scalar or array)

    Returns:
        Array of shape (len(xs), m+1); row r holds p_{m,k}(xs[r]), k = 0..m

    Raises:
        DomainError: If a point lies outside [-a, a]
    """
    m = _check_degree(m)
    a = _check_half_width(a)
    xs = _as_points(xs, a).ravel()

    k = np.arange(m + 1, dtype=float)
    out = np.zeros((xs.size, m + 1))

    interior = (xs > -a) & (xs < a)
    if np.any(interior):
        xi = xs[interior]
        log_u = np.log1p(xi / a) - LN2
        log_v = np.log1p(-xi / a) - LN2
        exponent = (_log_binomials(m, k)[None, :]
                    + k[None, :] * log_u[:, None]
                    + (m - k)[None, :] * log_v[:, None])
        out[interior] = np.exp(exponent)

    # Only one basis function survives at each endpoint
    out[xs == -a, 0] = 1.0
    out[xs == a, m] = 1.0
    return out


def basis_eval(m: int, a: float, k: int, x: ArrayLike) -> ArrayLike:
    """
    Evaluate p_{m,k}(x) = C(m,k) ((a+x)/2a)^k ((a-x)/2a)^(m-k).

    Args:
        m: Degree
        a: Half-width
        k: Basis index in 0..m
        x: Point(s) in [-a, a]

    Returns:
        float for scalar x, array of the same shape otherwise
    """
    m = _check_degree(m)
    a = _check_half_width(a)
    if int(k) != k or not 0 <= k <= m:
        raise DomainError(f"Basis index k={k} outside 0..{m}")
    k = int(k)

    scalar = np.ndim(x) == 0
    shape = np.shape(x)
    xs = _as_points(x, a).ravel()

    out = np.zeros(xs.size)
    interior = (xs > -a) & (xs < a)
    if np.any(interior):
        xi = xs[interior]
        log_u = np.log1p(xi / a) - LN2
        log_v = np.log1p(-xi / a) - LN2
        log_c = _log_binomials(m, np.array([float(k)]))[0]
        out[interior] = np.exp(log_c + k * log_u + (m - k) * log_v)
    if k == 0:
        out[xs == -a] = 1.0
    if k == m:
        out[xs == a] = 1.0

    if scalar:
        return float(out[0])
    return out.reshape(shape)


def basis_eval_all(m: int, a: float, x: float) -> np.ndarray:
    """Vector (p_{m,0}(x), ..., p_{m,m}(x))."""
    return basis_matrix(m, a, float(x))[0]


@lru_cache(maxsize=32)
def build_A(m: int, a: float) -> np.ndarray:
    """
    Build the row-stochastic node matrix A[i, j] = p_{m,j}(t_i).

    Args:
        m: Degree
        a: Half-width

    Returns:
        Read-only (m+1)x(m+1) array
    """
    grid = make_grid(m, a)
    A = basis_matrix(grid.m, grid.a, grid.nodes)
    logger.debug(f"Built node matrix A for m={grid.m}, a={grid.a}")
    return _readonly(A)


def _is_power_of_two(n: int) -> bool:
    return n > 0 and (n & (n - 1)) == 0


@lru_cache(maxsize=32)
def build_C(m: int, a: float, ell: int) -> BooleanSumMatrix:
    """
    Build C_{m,l} = I + (I - A) + ... + (I - A)^(l-1).

    For l = 2^p the doubling recurrence
        C_{m,2^p} = C_{m,2^(p-1)} + (I - A)^(2^(p-1)) C_{m,2^(p-1)}
    is used, squaring the running power (I - A)^(2^(p-1)) at each step.
    Other l fall back to Horner evaluation of the geometric sum.

    Args:
        m: Degree
        a: Half-width
        ell: Iteration parameter l >= 1

    Returns:
        BooleanSumMatrix with read-only entries

    Raises:
        DomainError: If ell is not a positive integer
    """
    if int(ell) != ell or ell < 1:
        raise DomainError(f"Iteration parameter ell must be a positive integer, got {ell}")
    ell = int(ell)
    grid = make_grid(m, a)
    identity = np.eye(grid.m + 1)
    residual = identity - build_A(grid.m, grid.a)

    if _is_power_of_two(ell):
        steps = ell.bit_length() - 1
        C = identity.copy()
        power = residual
        for step in range(steps):
            C = C + power @ C
            if step < steps - 1:
                power = power @ power
        logger.debug(f"Built C for m={grid.m}, ell={ell} by doubling ({steps} steps)")
    else:
        C = identity.copy()
        for _ in range(ell - 1):
            C = identity + residual @ C
        logger.debug(f"Built C for m={grid.m}, ell={ell} by Horner ({ell - 1} steps)")

    return BooleanSumMatrix(m=grid.m, a=grid.a, ell=ell, entries=_readonly(C))


def node_operator(C: BooleanSumMatrix) -> np.ndarray:
    """Matrix V = A C sending samples to the values of B_{m,l}f at the nodes."""
    return build_A(C.m, C.a) @ C.entries


def _check_pair(C: BooleanSumMatrix, fs: GridFunction) -> None:
    if C.m != fs.m or C.a != fs.a:
        raise DimensionError(
            f"Matrix (m={C.m}, a={C.a}) and samples (m={fs.m}, a={fs.a}) do not match"
        )


def gb_eval(C: BooleanSumMatrix, fs: GridFunction, x: float) -> float:
    """
    Evaluate B_{m,l}(f, x) = sum_i p_{m,i}(x) sum_j c_{i,j} f(t_j).

    Args:
        C: Boolean-sum matrix for (m, a, l)
        fs: Samples of f on the same grid
        x: Point in [-a, a]

    Returns:
        Value of the generalized Bernstein polynomial at x
    """
    _check_pair(C, fs)
    mixed = C.entries @ fs.values
    return float(basis_eval_all(C.m, C.a, x) @ mixed)


def gb_eval_many(C: BooleanSumMatrix, fs: GridFunction, xs: ArrayLike) -> np.ndarray:
    """Vectorized gb_eval over an array of points."""
    _check_pair(C, fs)
    mixed = C.entries @ fs.values
    return basis_matrix(C.m, C.a, xs) @ mixed


def approximation_error(
    f: Callable[[np.ndarray], np.ndarray],
    m: int,
    a: float,
    ell: int,
    xs: Optional[np.ndarray] = None
) -> float:
    """
    Uniform error max |f(x) - B_{m,l}(f, x)| over a set of points.

    Args:
        f: Vectorized function on [-a, a]
        m: Degree
        a: Half-width
        ell: Iteration parameter
        xs: Points to measure on (default: 2001 equispaced points)

    Returns:
        Maximum absolute error
    """
    grid = make_grid(m, a)
    if xs is None:
        xs = np.linspace(-grid.a, grid.a, 2001)
    fs = sample(f, grid)
    approx = gb_eval_many(build_C(grid.m, grid.a, ell), fs, xs)
    return float(np.max(np.abs(np.asarray(f(xs), dtype=float) - approx)))
