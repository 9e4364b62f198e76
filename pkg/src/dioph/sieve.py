"""Finite-field residue models and the larger-sieve bound computation.

The sieve quotient is evaluated in interval arithmetic with directed
rounding: the reported bound is the upper endpoint of the enclosing
interval, so it is a certified upper bound for the set being sieved.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from mpmath import iv

from ._iv import PRECISION_LOCK
from ._iv import lower as _iv_lower
from ._iv import upper as _iv_upper
from .arith import is_prime, primes_in_progression
from .errors import DomainError

PRECISION_DPS = 60


@dataclass(frozen=True)
class ResidueModel:
    """The set of k-th power residues modulo p (0 included)."""

    p: int
    k: int
    kth_powers: frozenset[int]


@dataclass(frozen=True)
class SieveReport:
    """One larger-sieve evaluation.

    ``numerator`` / ``denominator`` are (lower, upper) certified
    enclosures of  sum log p - log N  and  sum log p / |A_p| - log N.
    ``bound`` is present only when the denominator is certifiably
    positive; otherwise ``note`` says why.
    """

    N: int
    Q: int
    primes_used: tuple[int, ...]
    per_prime_image_sizes: dict[int, object]
    numerator: tuple[object, object]
    denominator: tuple[object, object]
    bound: object | None
    note: str = ""


def kth_power_residues(p: int, k: int) -> ResidueModel:
    """Exact set {x**k mod p : x in F_p}.  k == 1 gives every residue."""
    if not is_prime(p):
        raise DomainError(f"{p} is not prime")
    if k < 1:
        raise DomainError(f"power index must be >= 1, got {k}")
    residues = frozenset(pow(x, k, p) for x in range(p))
    return ResidueModel(p=p, k=k, kth_powers=residues)


def weil_bound(p: int, k: int, m: int):
    """Character-sum ceiling p / k**m + m * sqrt(p) on the mod-p model.

    Only valid for p = 1 (mod k); other primes are rejected.  Returned
    as an interval enclosure at PRECISION_DPS digits.
    """
    if not is_prime(p):
        raise DomainError(f"{p} is not prime")
    if m < 1:
        raise DomainError(f"m must be >= 1, got {m}")
    if p % k != 1 % k:
        raise DomainError(f"{p} is not 1 mod {k}")
    with PRECISION_LOCK:
        old = iv.dps
        iv.dps = PRECISION_DPS
        try:
            return iv.mpf(p) / iv.mpf(k**m) + iv.mpf(m) * iv.sqrt(iv.mpf(p))
        finally:
            iv.dps = old


def weil_bound_upper(p: int, k: int, m: int) -> int:
    """Integer cap floor(weil_bound) valid for any set it bounds."""
    return int(math.floor(_iv_upper(weil_bound(p, k, m))))


def max_B_mod_p(p: int, k: int, lam: int, A_p) -> tuple[int, frozenset[int]]:
    """Largest B_p in F_p with a*b + lam a k-th power residue for all
    a in A_p, b in B_p.

    The constraint is elementwise, so the maximum is exactly the
    intersection of the shifted preimages; it is computed exactly.
    """
    A_p = frozenset(x % p for x in A_p)
    if 0 in A_p:
        raise DomainError("A_p must avoid 0")
    if not A_p:
        raise DomainError("A_p must be nonempty")
    if lam % p == 0:
        raise DomainError("lambda must be nonzero mod p")
    if p % k != 1 % k:
        raise DomainError(f"{p} is not 1 mod {k}")
    model = kth_power_residues(p, k)
    witness = frozenset(
        b for b in range(p) if all((a * b + lam) % p in model.kth_powers for a in A_p)
    )
    return len(witness), witness


def _evaluate_quotient(N: int, Q: int, image_sizes: dict[int, object]) -> SieveReport:
    """Core quotient evaluation over exactly the primes in image_sizes."""
    PRECISION_LOCK.acquire()
    old = iv.dps
    iv.dps = PRECISION_DPS
    try:
        log_n = iv.log(iv.mpf(N))
        num = -log_n
        den = -log_n
        for p in sorted(image_sizes):
            lp = iv.log(iv.mpf(p))
            num += lp
            size = image_sizes[p]
            if isinstance(size, Fraction):
                den += lp * iv.mpf(size.denominator) / iv.mpf(size.numerator)
            else:
                den += lp / iv.mpf(size)
        num_pair = (_iv_lower(num), _iv_upper(num))
        den_pair = (_iv_lower(den), _iv_upper(den))
        if den_pair[1] <= 0:
            bound, note = None, "denominator nonpositive"
        elif den_pair[0] <= 0:
            raise DomainError(
                "degenerate input: denominator encloses zero, sign not certifiable"
            )
        else:
            bound, note = _iv_upper(num / den), ""
    finally:
        iv.dps = old
        PRECISION_LOCK.release()
    return SieveReport(
        N=N,
        Q=Q,
        primes_used=tuple(sorted(image_sizes)),
        per_prime_image_sizes=dict(image_sizes),
        numerator=num_pair,
        denominator=den_pair,
        bound=bound,
        note=note,
    )


def larger_sieve_bound(
    N: int, Q: int, image_sizes: dict[int, object], prime_filter: int = 1
) -> SieveReport:
    """Evaluate the larger-sieve quotient over primes p <= Q with
    p = 1 (mod prime_filter).

    ``image_sizes`` maps each required prime to |A_p| >= 1 (ints for real
    reduction data; Fraction caps are accepted).  Outward rounding on the
    numerator and inward rounding on the denominator make the returned
    bound a certified upper bound.  A denominator that is certifiably
    <= 0 yields a report with no bound; one whose sign cannot be
    certified (it encloses 0) is rejected as degenerate.
    """
    if not 1 < Q <= N:
        raise DomainError(f"need 1 < Q <= N, got Q={Q}, N={N}")
    primes = primes_in_progression(Q, prime_filter)
    for p in primes:
        if p not in image_sizes:
            raise DomainError(f"missing |A_p| for required prime {p}")
        if not image_sizes[p] >= 1:
            raise DomainError(f"|A_p| must be >= 1, got {image_sizes[p]} at p={p}")
    return _evaluate_quotient(N, Q, {p: image_sizes[p] for p in primes})


def sieve_pipeline(A, k: int, n: int, N: int, Q: int) -> SieveReport:
    """Larger-sieve bound on any B in [1, N] compatible with A.

    Builds the progression primes p <= Q, p = 1 (mod k), keeps the good
    ones (A injects mod p, 0 not in A_p, p does not divide n), caps each
    |B_p| by the character-sum ceiling, and evaluates the quotient over
    the good primes only.
    """
    A = sorted(set(A))
    if not A:
        raise DomainError("A must be nonempty")
    if any(a < 1 or a > N for a in A):
        raise DomainError("A must lie in [1, N]")
    if n == 0:
        raise DomainError("shift n must be nonzero")
    if k < 2:
        raise DomainError(f"power index must be >= 2, got {k}")
    if not 1 < Q <= N:
        raise DomainError(f"need 1 < Q <= N, got Q={Q}, N={N}")
    m = len(A)
    caps: dict[int, int] = {}
    for p in primes_in_progression(Q, k):
        image = {a % p for a in A}
        if len(image) != m or 0 in image or n % p == 0:
            continue
        caps[p] = min(weil_bound_upper(p, k, m), p)
    if not caps:
        return SieveReport(
            N=N,
            Q=Q,
            primes_used=(),
            per_prime_image_sizes={},
            numerator=(None, None),
            denominator=(None, None),
            bound=None,
            note="no good primes below Q",
        )
    return _evaluate_quotient(N, Q, caps)
