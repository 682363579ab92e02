"""Exact scalar arithmetic: residues mod an odd prime, plus rational helpers.

All linear algebra in this package is exact.  Finite-field work uses
canonical residues in ``[0, p)`` with ``p`` an odd prime (default 31991);
the rational path uses :class:`fractions.Fraction`, which keeps values in
lowest terms by construction.
"""

from __future__ import annotations

from fractions import Fraction

DEFAULT_PRIME = 31991


class ZeroInverseError(ZeroDivisionError):
    """Raised when the inverse of 0 mod p is requested."""


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin primality test (exact for n < 3.3e24)."""
    if n < 2:
        return False
    for q in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % q == 0:
            return n == q
    d = n - 1
    s = 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def check_modulus(p: int, max_degree: int | None = None) -> int:
    """Validate a working prime: odd, prime, and larger than any degree in use.

    The degree bound keeps finite-difference style derivative checks exact
    (distinct interpolation nodes 0..d mod p).
    """
    if p % 2 == 0 or not is_prime(p):
        raise ValueError(f"modulus must be an odd prime, got {p}")
    if max_degree is not None and p <= max_degree:
        raise ValueError(f"prime {p} must exceed the working degree {max_degree}")
    return p


def inv_mod(x: int, p: int) -> int:
    """Multiplicative inverse of x mod p; raises ZeroInverseError on x = 0."""
    x %= p
    if x == 0:
        raise ZeroInverseError(f"0 has no inverse mod {p}")
    return pow(x, -1, p)


def as_fraction(value) -> Fraction:
    """Parse an exact scalar from JSON-ish input: int or 'num/den' string.

    Floats are rejected; this package never rounds.
    """
    if isinstance(value, bool):
        raise TypeError("booleans are not scalars")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, Fraction):
        return value
    if isinstance(value, str):
        return Fraction(value)
    raise TypeError(f"expected an integer or 'num/den' string, got {value!r}")


def scalar_to_json(value):
    """Inverse of as_fraction: ints stay ints, proper fractions become strings."""
    if isinstance(value, Fraction):
        if value.denominator == 1:
            return int(value)
        return f"{value.numerator}/{value.denominator}"
    return int(value)
