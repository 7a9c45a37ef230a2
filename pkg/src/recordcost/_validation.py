"""Input validation helpers shared by every module."""

import math

import numpy as np


class DomainError(ValueError):
    """An argument lies outside the domain where a formula is defined."""


class NoSolutionError(DomainError):
    """The requested condition cannot be met for the given inputs."""


def magnitude(x):
    # Quantity objects expose .value; plain numbers pass through
    return getattr(x, "value", x)


def check_finite(x, name):
    v = float(magnitude(x))
    if not math.isfinite(v):
        raise DomainError(f"{name} must be finite, got {v!r}")
    return v


def check_probability(p, name="p"):
    v = check_finite(p, name)
    if not 0.0 <= v <= 1.0:
        raise DomainError(f"{name} must lie in [0, 1], got {v!r}")
    return v


def check_nonnegative(x, name):
    v = check_finite(x, name)
    if v < 0.0:
        raise DomainError(f"{name} must be >= 0, got {v!r}")
    return v


def check_positive(x, name):
    v = check_finite(x, name)
    if v <= 0.0:
        raise DomainError(f"{name} must be > 0, got {v!r}")
    return v


def check_count(n, name, minimum=1):
    if isinstance(n, bool) or int(n) != n:
        raise DomainError(f"{name} must be an integer, got {n!r}")
    n = int(n)
    if n < minimum:
        raise DomainError(f"{name} must be >= {minimum}, got {n}")
    return n


def check_probability_array(p, name="p"):
    arr = np.asarray(p, dtype=float)
    if not np.all(np.isfinite(arr)):
        raise DomainError(f"{name} contains non-finite values")
    if np.any((arr < 0.0) | (arr > 1.0)):
        raise DomainError(f"{name} values must lie in [0, 1]")
    return arr


def check_binary_array(x, name="outcomes"):
    arr = np.asarray(x)
    if arr.size and not np.all((arr == 0) | (arr == 1)):
        raise DomainError(f"{name} must contain only 0 and 1")
    return arr.astype(np.uint8, copy=False)
