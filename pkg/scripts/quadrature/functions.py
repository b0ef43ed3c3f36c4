"""
Built-in test functions for convergence studies.

f1 is analytic on its interval; f2 = |x+1|^(9/2) has a fifth derivative
singularity at x = -1, which caps the convergence rate of the rule.
"""

from typing import Callable, Dict

import numpy as np

from .errors import UnknownFunctionError


def f1(x: np.ndarray) -> np.ndarray:
    """tanh(x + 1)."""
    return np.tanh(np.asarray(x, dtype=float) + 1.0)


def f2(x: np.ndarray) -> np.ndarray:
    """|x + 1|^(9/2)."""
    return np.abs(np.asarray(x, dtype=float) + 1.0) ** 4.5


BUILTIN_FUNCTIONS: Dict[str, Callable[[np.ndarray], np.ndarray]] = {
    'f1': f1,
    'f2': f2,
}


def get_function(name: str) -> Callable[[np.ndarray], np.ndarray]:
    """
    Look up a built-in function by name.

    Raises:
        UnknownFunctionError: If the name is not registered
    """
    if name not in BUILTIN_FUNCTIONS:
        raise UnknownFunctionError(f"Unknown built-in function '{name}' (known: {', '.join(BUILTIN_FUNCTIONS)})")
    return BUILTIN_FUNCTIONS[name]
