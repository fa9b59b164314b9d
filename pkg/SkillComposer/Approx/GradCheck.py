from typing import Callable

import numpy as np


def central_difference(f: Callable[[np.ndarray], float], x: np.ndarray, eps: float = 1e-5) -> np.ndarray:
    """Numerical gradient of scalar `f` at `x` by central differences, one coordinate at a time."""
    x = np.array(x, dtype=np.float64)
    out = np.zeros_like(x)
    flat = x.reshape(-1)
    grad_flat = out.reshape(-1)
    for i in range(flat.shape[0]):
        keep = flat[i]
        flat[i] = keep + eps
        upper = f(x)
        flat[i] = keep - eps
        lower = f(x)
        flat[i] = keep
        grad_flat[i] = (upper - lower) / (2.0 * eps)
    return out


def relative_errors(analytic: np.ndarray, numeric: np.ndarray, floor: float = 1e-7) -> np.ndarray:
    analytic = np.asarray(analytic, dtype=np.float64).reshape(-1)
    numeric = np.asarray(numeric, dtype=np.float64).reshape(-1)
    scale = np.maximum(np.maximum(np.abs(analytic), np.abs(numeric)), floor)
    return np.abs(analytic - numeric) / scale


def agreement(analytic: np.ndarray, numeric: np.ndarray, tolerance: float = 1e-4) -> float:
    """Fraction of coordinates whose relative error is within `tolerance`."""
    errors = relative_errors(analytic, numeric)
    if errors.size == 0:
        return 1.0
    return float(np.mean(errors <= tolerance))
