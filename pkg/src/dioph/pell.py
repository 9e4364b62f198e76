"""Generalized Pell equations x**2 - a*z**2 = u: continued fractions,
fundamental and base solutions, bounded enumeration, simultaneous systems.

Solution classes follow the classical structure: every solution is a base
solution times a power of the fundamental unit of x**2 - a*z**2 = 1.
Base solutions are the minimal positive representatives of the classes of
*primitive* solutions (gcd(x, z) = 1); each such class carries a residue
label l with l**2 = a (mod |u|), and the number of labelled classes is at
most 2**omega(u).  Imprimitive solutions are multiples g * (x', z') of
primitive solutions of x**2 - a*z**2 = u / g**2; the enumerator recovers
them by descent over the square divisors of u and tags them with the
scale g.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from math import gcd, isqrt

from .arith import omega
from .errors import DomainError


class ClassCountWarning(UserWarning):
    """More solution classes than the classical 2**omega(u) ceiling.

    Possible when gcd(a, u) carries repeated prime factors (e.g.
    a = 27, u = -27 has three primitive classes while 2**omega(27) = 2:
    l**2 = 0 (mod 27) already has three roots).  The ceiling is reliable
    when the square roots of a modulo |u| number at most 2**omega(u),
    in particular whenever u is squarefree.
    """


@dataclass(frozen=True)
class CFExpansion:
    """Periodic continued fraction of sqrt(a), a nonsquare."""

    a: int
    integer_part: int
    period: tuple[int, ...]


@dataclass(frozen=True)
class PellClass:
    """One solution class of x**2 - a*z**2 = u.

    ``base`` is the minimal positive representative ("minimal z, then
    minimal x"; x0 or z0 may be 0).  ``residue_label`` is the class label
    l (for scale 1: l**2 = a mod |u|); with ``scale`` g > 1 the class is
    the g-fold multiple of a primitive class of u / g**2 and the label
    refers to that reduced equation.  The base always satisfies the full
    equation: x0**2 - a*z0**2 = u.
    """

    a: int
    u: int
    base: tuple[int, int]
    residue_label: int
    scale: int = 1


@dataclass(frozen=True)
class PellSolution:
    """A positive solution x**2 - a*z**2 = u, tagged with its class and
    the power of the fundamental unit taking the base there."""

    x: int
    z: int
    class_ref: PellClass
    index: int


def _check_nonsquare(a: int) -> None:
    if a < 2:
        raise DomainError(f"coefficient must be >= 2, got {a}")
    r = isqrt(a)
    if r * r == a:
        raise DomainError(f"coefficient {a} is a perfect square")


def cf_sqrt(a: int) -> CFExpansion:
    """Canonical periodic continued fraction of sqrt(a).

    Standard recurrence on (m, d); the period ends at the term equal to
    twice the integer part.
    """
    _check_nonsquare(a)
    a0 = isqrt(a)
    period = []
    m, d, c = 0, 1, a0
    while True:
        m = d * c - m
        d = (a - m * m) // d
        c = (a0 + m) // d
        period.append(c)
        if c == 2 * a0:
            break
    return CFExpansion(a=a, integer_part=a0, period=tuple(period))


def fundamental_solution(a: int) -> tuple[int, int]:
    """Minimal positive solution of x**2 - a*z**2 = 1 via convergents.

    With period length r, the solution sits at convergent r-1 for even r
    and 2r-1 for odd r.  The result is cross-checked against the equation.
    """
    cf = cf_sqrt(a)
    r = len(cf.period)
    terms = [cf.integer_part] + list(cf.period) * 2
    h0, h1 = 1, terms[0]
    k0, k1 = 0, 1
    convergents = [(h1, k1)]
    for t in terms[1:]:
        h0, h1 = h1, t * h1 + h0
        k0, k1 = k1, t * k1 + k0
        convergents.append((h1, k1))
    idx = r - 1 if r % 2 == 0 else 2 * r - 1
    x, z = convergents[idx]
    if x * x - a * z * z != 1:
        raise AssertionError(f"convergent ({x}, {z}) does not solve the unit equation")
    return x, z


def residue_obstruction(a: int, u: int, moduli=(4, 8, 16, 3, 5, 7, 9, 11, 13)) -> int | None:
    """A modulus m with x**2 - a*z**2 = u (mod m) unsolvable, or None.

    Purely diagnostic: an obstruction proves the equation has no integer
    solutions at all.
    """
    for m in moduli:
        squares = {x * x % m for x in range(m)}
        if not any((s - a * t) % m == u % m for s in squares for t in squares):
            return m
    return None


def _nagell_scan_bound(a: int, u: int, x1: int, z1: int) -> int:
    """z range containing a representative of every solution class."""
    if u > 0:
        num, den = z1 * z1 * u, 2 * (x1 + 1)
    else:
        num, den = z1 * z1 * (-u), 2 * (x1 - 1)
    return isqrt(num // den) + 2


def _normalize(x: int, z: int) -> tuple[int, int]:
    """Flip sign so that z >= 0 (and x >= 0 when z == 0)."""
    if z < 0 or (z == 0 and x < 0):
        return -x, -z
    return x, z


def _unit_step(a, x1, z1, x, z, down=False):
    if down:
        return x * x1 - a * z * z1, z * x1 - x * z1
    return x * x1 + a * z * z1, x * z1 + z * x1


def _minimal_positive(a, u, x1, z1, member):
    """Minimal (z, then x) class member with x >= 0 and z >= 0."""
    x, z = _normalize(*member)
    visited = [(x, z)]
    cx, cz = x, z
    for _ in range(256):
        nx, nz = _normalize(*_unit_step(a, x1, z1, cx, cz, down=True))
        visited.append((nx, nz))
        if nz >= cz:
            break
        cx, cz = nx, nz
    # a couple of up-steps from the |z|-minimum catch the positive arm
    cx, cz = min(visited, key=lambda t: (t[1], abs(t[0])))
    for _ in range(3):
        cx, cz = _normalize(*_unit_step(a, x1, z1, cx, cz))
        visited.append((cx, cz))
    candidates = [(zz, xx) for xx, zz in visited if xx >= 0 and zz >= 0]
    zz, xx = min(candidates)
    if xx * xx - a * zz * zz != u:
        raise AssertionError(f"class walk left the conic at ({xx}, {zz})")
    return xx, zz


def base_solutions(a: int, u: int) -> list[PellClass]:
    """Minimal positive representatives of the primitive solution classes
    of x**2 - a*z**2 = u, sorted by residue label.

    The class count is checked against the classical ceiling
    2**omega(u); exceeding it (possible only when gcd(a, u) carries
    repeated primes) raises a ClassCountWarning.  An empty list means
    there are no primitive solutions; imprimitive ones may still exist
    and are reachable through ``enumerate_solutions``.
    """
    _check_nonsquare(a)
    if u == 0:
        raise DomainError("u must be nonzero")
    x1, z1 = fundamental_solution(a)
    au = abs(u)
    zb = _nagell_scan_bound(a, u, x1, z1)
    labels: dict[int, tuple[int, int]] = {}
    for z in range(zb + 1):
        t = a * z * z + u
        if t < 0:
            continue
        x = isqrt(t)
        if x * x != t:
            continue
        for sx in (x,) if x == 0 else (x, -x):
            if z == 0:
                if abs(sx) != 1:  # primitive z=0 solutions only exist for u = 1
                    continue
                label = 0
            else:
                if gcd(abs(sx), z) != 1:
                    continue
                if au == 1:
                    label = 0
                elif gcd(z, au) == 1:
                    label = sx * pow(z, -1, au) % au
                else:
                    continue  # primitive solutions always have gcd(z, u) = 1
            if label not in labels:
                labels[label] = _minimal_positive(a, u, x1, z1, (sx, z))
    classes = [
        PellClass(a=a, u=u, base=labels[l], residue_label=l, scale=1)
        for l in sorted(labels)
    ]
    if len(classes) > 2 ** omega(u):
        warnings.warn(
            f"{len(classes)} classes exceed 2**omega({u}) = {2 ** omega(u)} "
            f"for a = {a} (gcd(a, u) has repeated prime factors)",
            ClassCountWarning,
            stacklevel=2,
        )
    return classes


def _generating_classes(a: int, u: int) -> list[PellClass]:
    """Primitive classes of u plus scaled primitive classes of u/g**2."""
    out = list(base_solutions(a, u))
    g = 2
    while g * g <= abs(u):
        if u % (g * g) == 0:
            for cls in base_solutions(a, u // (g * g)):
                x0, z0 = cls.base
                out.append(
                    PellClass(
                        a=a,
                        u=u,
                        base=(g * x0, g * z0),
                        residue_label=cls.residue_label,
                        scale=g,
                    )
                )
        g += 1
    return out


def enumerate_solutions(a: int, u: int, z_max: int) -> list[PellSolution]:
    """All positive solutions (x >= 1, z in [1, z_max]) of
    x**2 - a*z**2 = u, ascending in z, each tagged with its class.

    Every class contributes its orbit base * unit**j; imprimitive
    solutions come from the scaled classes, so the union is exactly the
    brute-force solution set.
    """
    if z_max < 1:
        raise DomainError("z_max must be >= 1")
    x1, z1 = fundamental_solution(a)
    out = []
    for cls in _generating_classes(a, u):
        x, z = cls.base
        j = 0
        while z <= z_max:
            if x >= 1 and z >= 1:
                out.append(PellSolution(x=x, z=z, class_ref=cls, index=j))
            x, z = _unit_step(a, x1, z1, x, z)
            j += 1
    out.sort(key=lambda s: (s.z, s.x))
    return out


def brute_solutions(a: int, u: int, z_max: int) -> list[tuple[int, int]]:
    """Direct scan oracle: z in [1, z_max] with a*z**2 + u a positive
    square."""
    _check_nonsquare(a)
    if u == 0:
        raise DomainError("u must be nonzero")
    if z_max < 1:
        raise DomainError("z_max must be >= 1")
    out = []
    for z in range(1, z_max + 1):
        t = a * z * z + u
        if t < 1:
            continue
        x = isqrt(t)
        if x * x == t and x >= 1:
            out.append((x, z))
    return out


@dataclass(frozen=True)
class TripleGapRecord:
    """One audited triple of same-class-pair solutions."""

    class_x: PellClass
    class_y: PellClass
    z1: int
    z2: int
    z3: int
    applicable: bool  # z1 > max(|u|, |v|)**3 and both classes primitive
    cube_gap_holds: bool | None  # z3 > z1**3, meaningful when applicable


@dataclass(frozen=True)
class SimultaneousResult:
    common_z: tuple[int, ...]
    triple_audits: tuple[TripleGapRecord, ...]
    notes: tuple[str, ...]


def simultaneous_solve(a: int, u: int, b: int, v: int, z_max: int) -> SimultaneousResult:
    """Common z <= z_max solving x**2 - a*z**2 = u and y**2 - b*z**2 = v,
    with a triple-gap audit per pair of base classes.

    For each pair of primitive base classes holding >= 3 common solutions
    z1 < z2 < z3 with z1 > max(|u|, |v|)**3, the audit asserts z3 > z1**3.
    Triples involving scaled (imprimitive) classes fall outside that
    classification and are recorded as not applicable.
    """
    if a * v == b * u:
        raise DomainError("need a*v != b*u")
    sols_x = {s.z: s for s in enumerate_solutions(a, u, z_max)}
    sols_y = {s.z: s for s in enumerate_solutions(b, v, z_max)}
    common = sorted(set(sols_x) & set(sols_y))
    groups: dict[tuple, list[int]] = {}
    for z in common:
        key = (sols_x[z].class_ref, sols_y[z].class_ref)
        groups.setdefault(key, []).append(z)
    cutoff = max(abs(u), abs(v)) ** 3
    audits = []
    notes = []
    for (cx, cy), zs in sorted(groups.items(), key=lambda kv: kv[1]):
        zs = sorted(zs)
        for i in range(len(zs) - 2):
            for jj in range(i + 1, len(zs) - 1):
                for kk in range(jj + 1, len(zs)):
                    z1, z2, z3 = zs[i], zs[jj], zs[kk]
                    applicable = (
                        z1 > cutoff and cx.scale == 1 and cy.scale == 1
                    )
                    audits.append(
                        TripleGapRecord(
                            class_x=cx,
                            class_y=cy,
                            z1=z1,
                            z2=z2,
                            z3=z3,
                            applicable=applicable,
                            cube_gap_holds=(z3 > z1**3) if applicable else None,
                        )
                    )
    if not any(r.applicable for r in audits):
        notes.append(
            "no qualifying same-class triple at this scale; cube-gap audit vacuous"
        )
    return SimultaneousResult(
        common_z=tuple(common),
        triple_audits=tuple(audits),
        notes=tuple(notes),
    )
