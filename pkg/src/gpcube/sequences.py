"""Fibonacci and Lucas numbers with checked 64-bit arithmetic."""

from __future__ import annotations

from .errors import PreconditionError

# Signed 64-bit ceiling; F_92 and L_93 are the last terms that fit.
INT64_MAX = 2**63 - 1


def _check_index(n: int) -> None:
    if not isinstance(n, int) or isinstance(n, bool) or n < 0:
        raise PreconditionError(f"sequence index must be a nonnegative integer, got {n!r}")


def fibonacci(n: int) -> int:
    """Return F_n with F_0 = 0, F_1 = 1.

    >>> [fibonacci(k) for k in range(8)]
    [0, 1, 1, 2, 3, 5, 8, 13]
    """
    _check_index(n)
    a, b = 0, 1
    for _ in range(n):
        a, b = b, a + b
        if a > INT64_MAX:
            raise OverflowError(f"fibonacci({n}) exceeds the signed 64-bit range")
    return a


def lucas(n: int) -> int:
    """Return L_n with L_0 = 2, L_1 = 1."""
    _check_index(n)
    a, b = 2, 1
    for _ in range(n):
        a, b = b, a + b
        if a > INT64_MAX:
            raise OverflowError(f"lucas({n}) exceeds the signed 64-bit range")
    return a


def product_inequality_holds(n: int, i: int) -> bool:
    """Whether F_n >= F_i * F_{n-i+1} for 0 <= i <= n // 2."""
    _check_index(n)
    _check_index(i)
    if n < 1:
        raise PreconditionError("n must be at least 1")
    if i > n // 2:
        raise PreconditionError(f"i must lie in [0, {n // 2}] for n={n}, got {i}")
    return fibonacci(n) >= fibonacci(i) * fibonacci(n - i + 1)
