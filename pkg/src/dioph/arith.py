"""Exact integer primitives: roots, factorization, multiplicative functions.

All values are plain Python ints, so precision is unbounded.  gmpy2 backs
root extraction and primality testing, sympy backs factorization; both are
wrapped so that callers only ever see ints.  Every function here is pure
and safe to call from concurrent threads.
"""

from __future__ import annotations

from dataclasses import dataclass

import gmpy2
import sympy

from .errors import DomainError


@dataclass(frozen=True)
class Factorization:
    """Canonical factorization ``value = unit_sign * prod(p**e)``.

    ``factors`` is sorted by prime, exponents are positive, and every
    prime passes a primality check.
    """

    value: int
    factors: tuple[tuple[int, int], ...]
    unit_sign: int

    def reconstruct(self) -> int:
        out = self.unit_sign
        for p, e in self.factors:
            out *= p**e
        return out


def integer_kth_root(x: int, k: int) -> tuple[int, bool]:
    """Return ``(floor(x**(1/k)), exact)`` for x >= 1, k >= 2.

    ``exact`` is True exactly when ``root**k == x``.
    """
    if k < 2:
        raise DomainError(f"root index must be >= 2, got {k}")
    if x < 1:
        raise DomainError(f"radicand must be >= 1, got {x}")
    root, exact = gmpy2.iroot(x, k)
    return int(root), bool(exact)


def is_kth_power(value: int, k: int) -> bool:
    """True when value == m**k for some positive integer m.

    Zero and negative values never qualify: the power convention used
    throughout restricts bases to positive integers.
    """
    if value < 1:
        return False
    return integer_kth_root(value, k)[1]


def is_prime(n: int) -> bool:
    return bool(gmpy2.is_prime(n)) and n >= 2


def factorize(n: int) -> Factorization:
    """Canonical factorization of a nonzero integer.

    Units factor as an empty product: factorize(-1) has unit_sign -1
    and no prime factors.
    """
    if n == 0:
        raise DomainError("cannot factor 0")
    sign = 1 if n > 0 else -1
    mag = abs(n)
    factors = tuple(sorted(sympy.factorint(mag).items())) if mag > 1 else ()
    return Factorization(value=n, factors=factors, unit_sign=sign)


def radical(n: int) -> int:
    """Product of the distinct primes dividing |n|;  radical(+-1) == 1."""
    out = 1
    for p, _ in factorize(n).factors:
        out *= p
    return out


def omega(n: int) -> int:
    """Number of distinct prime factors of |n|;  omega(+-1) == 0."""
    return len(factorize(n).factors)


def euler_phi(k: int) -> int:
    """Euler totient of k >= 1."""
    if k < 1:
        raise DomainError(f"totient argument must be >= 1, got {k}")
    out = k
    for p, _ in factorize(k).factors:
        out -= out // p
    return out


def primes_in_progression(limit: int, k: int) -> list[int]:
    """All primes p <= limit with p = 1 (mod k), ascending.

    k == 1 yields every prime up to the limit.
    """
    if limit < 2:
        raise DomainError(f"limit must be >= 2, got {limit}")
    if k < 1:
        raise DomainError(f"modulus must be >= 1, got {k}")
    return [int(p) for p in sympy.primerange(2, limit + 1) if p % k == 1 % k]
