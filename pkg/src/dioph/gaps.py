"""Executable forms of the gap, anti-gap and approximation inequalities.

Everything that decides a verdict is computed in exact integer or rational
arithmetic; only the irrational quantities (the approximation exponent and
the abc quality) use high-precision floats, and those are evaluated with
interval arithmetic so that reported bounds are certified.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import mpmath
from mpmath import iv, mp

from ._iv import PRECISION_LOCK
from ._iv import lower as _iv_lower
from ._iv import upper as _iv_upper
from .arith import integer_kth_root, is_kth_power, radical
from .errors import BudgetError, DomainError
from .tuples import verify_bdkn

# Working precision for the non-rational outputs (significant digits).
PRECISION_DPS = 60


@dataclass(frozen=True)
class GapVerdict:
    """Outcome of one inequality audit.

    ``inequality_holds`` is only meaningful when ``hypotheses_met`` is
    True; it is still reported (with a note) otherwise.
    """

    hypotheses_met: bool
    inequality_holds: bool
    lhs: Fraction
    rhs: Fraction
    notes: tuple[str, ...] = ()


@dataclass(frozen=True)
class AntigapVerdict(GapVerdict):
    residual_max: object = None  # certified upper bound (mpf) on both residuals
    residual_bound: Fraction | None = None
    residual_within_bound: bool | None = None


@dataclass(frozen=True)
class GrowthFloors:
    """Doubly exponential growth floors b1**(theta**(i-1)).

    Each floor is a certified lower bound in base-2 mantissa/exponent
    form: (mantissa, e) stands for mantissa * 2**e with 1 <= mantissa < 2.
    """

    theta: Fraction
    floors: tuple[tuple[float, int], ...]
    b1_hypothesis_met: bool


@dataclass(frozen=True)
class BennettLambda:
    value: object  # mpf with PRECISION_DPS significant digits
    in_range: bool  # 1 < lambda < 2
    hypothesis_met: bool  # N > M**9 with M = max |c_i| >= 3
    gamma: Fraction
    notes: tuple[str, ...] = ()


def gap_floor(k: int, n: int, x: int, z: int) -> Fraction:
    """Exact value of k**k * (x*z)**(k-1) / (4**(k-1) * |n|**k)."""
    if k < 3:
        raise DomainError(f"gap floor needs k >= 3, got {k}")
    if n == 0:
        raise DomainError("shift n must be nonzero")
    if x < 1 or z < 1:
        raise DomainError("x and z must be positive")
    return Fraction(k**k * (x * z) ** (k - 1), 4 ** (k - 1) * abs(n) ** k)


def check_gap(k: int, n: int, x: int, y: int, z: int, w: int) -> GapVerdict:
    """Audit the growth forced on y*w by a 2x2 power configuration.

    Hypotheses: x*z >= 2|n| and all of x*z+n, y*z+n, x*w+n, y*w+n are
    k-th powers.  Conclusion: y*w >= gap_floor(k, n, x, z).
    """
    if not (0 < x < y and 0 < z < w):
        raise DomainError("need 0 < x < y and 0 < z < w")
    rhs = gap_floor(k, n, x, z)
    powers_ok = all(is_kth_power(p + n, k) for p in (x * z, y * z, x * w, y * w))
    hyp = x * z >= 2 * abs(n) and powers_ok
    lhs = Fraction(y * w)
    notes = []
    if x * z < 2 * abs(n):
        notes.append(f"x*z = {x*z} < 2|n| = {2*abs(n)}")
    if not powers_ok:
        notes.append("not all four cross products are k-th powers")
    return GapVerdict(
        hypotheses_met=hyp,
        inequality_holds=lhs >= rhs,
        lhs=lhs,
        rhs=rhs,
        notes=tuple(notes),
    )


def _float_below(x) -> float:
    """Largest double <= x (x an mpf)."""
    f = float(x)
    while mpmath.mpf(f) > x:
        f = math.nextafter(f, -math.inf)
    return f


def growth_floor_sequence(k: int, n: int, L, b1: int, m: int) -> GrowthFloors:
    """Floors b_i >= b1**(theta**(i-1)) for i = 1..m, theta = k - 2 - k/L.

    Requires k >= 4 and L > k/(k-3) so that theta > 1.  The hypothesis
    b1 >= 2|n|**L is checked exactly and reported, not enforced.
    """
    if k < 4:
        raise DomainError(f"growth floors need k >= 4, got {k}")
    if n == 0:
        raise DomainError("shift n must be nonzero")
    if b1 < 1 or m < 1:
        raise DomainError("b1 and m must be positive")
    L = Fraction(L)
    if L <= Fraction(k, k - 3):
        raise DomainError(f"L must exceed k/(k-3) = {Fraction(k, k-3)}, got {L}")
    theta = k - 2 - Fraction(k) / L
    # b1 >= 2*|n|**L  <=>  b1**q >= 2**q * |n|**p  with L = p/q
    p, q = L.numerator, L.denominator
    hyp = b1**q >= 2**q * abs(n) ** p

    floors = []
    with PRECISION_LOCK, mp.workdps(PRECISION_DPS + 20):
        old = iv.dps
        iv.dps = PRECISION_DPS + 20
        try:
            log2_b1 = iv.log(b1) / iv.log(2)
            for i in range(1, m + 1):
                e = theta ** (i - 1)
                lg = log2_b1 * iv.mpf(e.numerator) / iv.mpf(e.denominator)
                lo = _iv_lower(lg)
                e2 = int(mpmath.floor(lo))
                mant = mpmath.mpf(2) ** (lo - e2)
                mant = mant * (1 - mpmath.mpf(10) ** (-PRECISION_DPS))
                if mant < 1:
                    mant, e2 = mant * 2, e2 - 1
                floors.append((_float_below(mant), e2))
        finally:
            iv.dps = old
    return GrowthFloors(theta=theta, floors=tuple(floors), b1_hypothesis_met=hyp)


def _cube_products(a0, generators):
    products = [a0]
    for g in generators:
        products += [p * g for p in products]
    return products


def check_a0X(cube, k: int, n: int) -> GapVerdict:
    """Audit the top-half-product bound for an even-dimension cube.

    For a verified cube of even dimension d >= 10 with sorted generators,
    a0 * X must stay below |n|**(k/(k-2)) where X is the product of the
    top d/2 generators.  Compared exactly via (a0*X)**(k-2) < |n|**k.
    """
    if k < 3:
        raise DomainError(f"top-half-product bound needs k >= 3, got {k}")
    if n == 0:
        raise DomainError("shift n must be nonzero")
    gens = tuple(cube.generators)
    d = len(gens)
    if d > 30:
        raise BudgetError(f"dimension {d} exceeds the 2**d verification cap")
    notes = []
    verified = all(is_kth_power(p + n, k) for p in _cube_products(cube.a0, gens))
    if not verified:
        notes.append("cube is not verified for (k, n)")
    if d < 10 or d % 2 != 0:
        notes.append(f"dimension {d} is not an even number >= 10")
    hyp = verified and d >= 10 and d % 2 == 0
    top_half = gens[d // 2 :] if d else ()
    a0X = cube.a0
    for g in top_half:
        a0X *= g
    lhs = Fraction(a0X ** (k - 2))
    rhs = Fraction(abs(n) ** k)
    return GapVerdict(
        hypotheses_met=hyp,
        inequality_holds=lhs < rhs,
        lhs=lhs,
        rhs=rhs,
        notes=tuple(notes) + ("compared via (a0*X)**(k-2) < |n|**k",),
    )


def bennett_gamma(c0: int, c1: int, c2: int) -> tuple[Fraction, bool]:
    """The approximation constant gamma for (c0, c1, c2), plus a flag
    asserting the strict enclosure (c2-c0)**3/6 < gamma < (c2-c0)**3/2.
    """
    if not c0 < c1 < c2:
        raise DomainError("need c0 < c1 < c2")
    if 0 not in (c0, c1, c2):
        raise DomainError("one entry must be zero")
    if c2 - c1 >= c1 - c0:
        gamma = Fraction((c2 - c0) ** 2 * (c2 - c1) ** 2, 2 * c2 - c0 - c1)
    else:
        gamma = Fraction((c2 - c0) ** 2 * (c1 - c0) ** 2, c1 + c2 - 2 * c0)
    span3 = Fraction((c2 - c0) ** 3)
    within = span3 / 6 < gamma < span3 / 2
    return gamma, within


def bennett_lambda(N: int, c0: int, c1: int, c2: int) -> BennettLambda:
    """High-precision exponent lambda = 1 + log(33*N*gamma) / log(D) with
    D = 1.7 * N**2 * prod (c_i - c_j)**-2 over i < j.

    The hypothesis N > M**9 (M = max |c_i| >= 3) is checked exactly and
    reported.  D <= 1 would make the defining quotient meaningless and is
    rejected as a degenerate input.
    """
    gamma, _ = bennett_gamma(c0, c1, c2)
    if N < 1:
        raise DomainError("N must be positive")
    M = max(abs(c0), abs(c1), abs(c2))
    hyp = M >= 3 and N > M**9
    notes = []
    if not hyp:
        notes.append(f"hypothesis N > M**9 with M >= 3 fails (N={N}, M={M})")
    diff_sq = ((c0 - c1) * (c0 - c2) * (c1 - c2)) ** 2
    top_arg = 33 * N * gamma
    bottom_arg = Fraction(17 * N * N, 10 * diff_sq)
    if bottom_arg <= 1:
        raise DomainError("degenerate input: denominator log(1.7*N**2/prod) <= 0")
    with PRECISION_LOCK, mp.workdps(PRECISION_DPS):
        top = mpmath.log(mpmath.mpf(top_arg.numerator) / top_arg.denominator)
        bottom = mpmath.log(mpmath.mpf(bottom_arg.numerator) / bottom_arg.denominator)
        value = 1 + top / bottom
        in_range = bool(1 < value < 2)
    return BennettLambda(
        value=value,
        in_range=in_range,
        hypothesis_met=hyp,
        gamma=gamma,
        notes=tuple(notes),
    )


def antigap_audit(
    a1: int, a2: int, a3: int, b1: int, b2: int, n: int
) -> AntigapVerdict:
    """Audit the anti-gap bound b2 < b1**120 for a 3x2 square configuration.

    ({a1,a2,a3}, {b1,b2}) must verify as a BD_2(n) pair (re-checked here;
    failure is a domain error).  Hypotheses: b1 > a3**17 * |n|**10 and
    a3 >= 7.  Also reports the simultaneous-approximation residuals of
    the two derived square-root ratios against their certified ceiling
    a3*|n| / (a1*z**2).
    """
    if not a1 < a2 < a3:
        raise DomainError("need a1 < a2 < a3")
    if not b1 < b2:
        raise DomainError("need b1 < b2")
    report = verify_bdkn((a1, a2, a3), (b1, b2), 2, n)
    if not report.valid:
        raise DomainError(f"not a BD_2({n}) pair: violations {report.violations}")

    # n**10 appears with an even exponent, so |n| is equivalent and sign-safe
    hyp = b1 > a3**17 * abs(n) ** 10 and a3 >= 7
    notes = []
    if a3 < 7:
        notes.append(f"a3 = {a3} < 7")
    elif a3 == 7:
        notes.append("a3 == 7 boundary: the stated hypothesis admits equality")
    if b1 <= a3**17 * abs(n) ** 10:
        notes.append("b1 <= a3**17 * |n|**10")

    rr = integer_kth_root(a1 * b1 + n, 2)[0]
    ss = integer_kth_root(a2 * b1 + n, 2)[0]
    tt = integer_kth_root(a3 * b1 + n, 2)[0]
    xx = integer_kth_root(a1 * b2 + n, 2)[0]
    yy = integer_kth_root(a2 * b2 + n, 2)[0]
    zz = integer_kth_root(a3 * b2 + n, 2)[0]

    PRECISION_LOCK.acquire()
    old = iv.dps
    iv.dps = PRECISION_DPS
    try:
        sqrt_a1 = iv.sqrt(iv.mpf(a1))
        sqrt_a2 = iv.sqrt(iv.mpf(a2))
        sqrt_a3 = iv.sqrt(iv.mpf(a3))
        theta1 = iv.mpf(rr) * sqrt_a3 / (iv.mpf(tt) * sqrt_a1)
        theta2 = iv.mpf(ss) * sqrt_a3 / (iv.mpf(tt) * sqrt_a2)
        approx1 = iv.mpf(a3 * rr * xx) / iv.mpf(a1 * tt * zz)
        approx2 = iv.mpf(a3 * ss * yy) / iv.mpf(a2 * tt * zz)
        res1 = abs(theta1 - approx1)
        res2 = abs(theta2 - approx2)
        residual_max = max(_iv_upper(res1), _iv_upper(res2))  # certified upper bound
        bound = Fraction(a3 * abs(n), a1 * zz * zz)
        bound_lo = _iv_lower(iv.mpf(bound.numerator) / iv.mpf(bound.denominator))
        residual_within = bool(residual_max < bound_lo)
    finally:
        iv.dps = old
        PRECISION_LOCK.release()

    return AntigapVerdict(
        hypotheses_met=hyp,
        inequality_holds=b2 < b1**120,
        lhs=Fraction(b2),
        rhs=Fraction(b1**120),
        notes=tuple(notes),
        residual_max=residual_max,
        residual_bound=bound,
        residual_within_bound=residual_within,
    )


def abc_identity_quality(
    a1: int, a2: int, b1: int, b2: int, k: int, n: int
):
    """Check the exact cross-product identity of a 2x2 configuration and
    compute its abc quality.

    With x1**k = a1*b1+n, x2**k = a1*b2+n, x3**k = a2*b1+n, x4**k = a2*b2+n
    the identity  x1**k*x4**k - x2**k*x3**k = n*(a2-a1)*(b2-b1)  is forced
    algebraically; any failure means the inputs were not a verified pair
    (or an implementation bug).  Quality is
    log max(x1**k*x4**k, x2**k*x3**k) / log rad(x1**k*x4**k * x2**k*x3**k * c)
    with c the identity's right-hand side.
    """
    if a1 == a2 or b1 == b2:
        raise DomainError("degenerate configuration: a1 == a2 or b1 == b2")
    report = verify_bdkn(sorted((a1, a2)), sorted((b1, b2)), k, n)
    if not report.valid:
        raise DomainError(f"not a BD_{k}({n}) pair: violations {report.violations}")
    a1, a2 = sorted((a1, a2))
    b1, b2 = sorted((b1, b2))
    p1 = a1 * b1 + n
    p2 = a1 * b2 + n
    p3 = a2 * b1 + n
    p4 = a2 * b2 + n
    lhs = p1 * p4 - p2 * p3
    mid = n * (p1 + p4 - p2 - p3)
    rhs = n * (a2 - a1) * (b2 - b1)
    identity_holds = lhs == mid == rhs
    rad = radical(p1 * p4 * p2 * p3 * rhs)
    with PRECISION_LOCK, mp.workdps(PRECISION_DPS):
        quality = mpmath.log(max(p1 * p4, p2 * p3)) / mpmath.log(rad)
    return identity_holds, quality
