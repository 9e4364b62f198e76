"""Multiplicative Hilbert cubes inside shifted k-th powers.

The cube H(a0; g1, ..., gd) is the set of a0 times all subset products of
the generators; its dimension is d (the generator count, regardless of
multiplicative collisions among the 2**d products).  A cube sits inside
{x**k - n : x positive} when every element e has e + n a k-th power.
"""

from __future__ import annotations

import math
import warnings
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from itertools import combinations

import mpmath

from . import gaps
from .arith import is_kth_power, omega
from .errors import BudgetError, DomainError

MAX_DIMENSION = 30


class CollisionWarning(UserWarning):
    """Distinct generators produced colliding subset products."""


@dataclass(frozen=True)
class HilbertCube:
    a0: int
    generators: tuple[int, ...]

    def __post_init__(self):
        if self.a0 < 1:
            raise DomainError("a0 must be a positive integer")
        gens = self.generators
        if any(g < 1 for g in gens):
            raise DomainError("generators must be positive integers")
        if len(set(gens)) != len(gens):
            raise DomainError("generators must be distinct")
        if tuple(sorted(gens)) != tuple(gens):
            raise DomainError("generators must be sorted ascending")

    @property
    def dimension(self) -> int:
        return len(self.generators)


@dataclass(frozen=True)
class CubeVerdict:
    """``failing_subsets`` lists generator index sets (1-based, ascending)
    whose product failed the shifted-power test."""

    failing_subsets: tuple[tuple[int, ...], ...]
    bounds: dict
    notes: tuple[str, ...] = ()

    @property
    def valid(self) -> bool:
        return not self.failing_subsets


def _subset_products(cube: HilbertCube):
    """(index_set, product) for every subset of the generators."""
    items = [((), cube.a0)]
    for i, g in enumerate(cube.generators, start=1):
        items += [(idx + (i,), p * g) for idx, p in items]
    return items


def cube_elements(cube: HilbertCube) -> list[int]:
    """Sorted distinct elements of the cube.

    Emits a CollisionWarning when distinct subsets collide
    multiplicatively (the dimension still counts generators).
    """
    if cube.dimension > MAX_DIMENSION:
        raise BudgetError(
            f"dimension {cube.dimension} exceeds the hard cap {MAX_DIMENSION}"
        )
    products = [p for _, p in _subset_products(cube)]
    distinct = sorted(set(products))
    if len(distinct) < len(products):
        warnings.warn(
            f"cube has {len(products) - len(distinct)} colliding subset products",
            CollisionWarning,
            stacklevel=2,
        )
    return distinct


def verify_cube(cube: HilbertCube, k: int, n: int) -> CubeVerdict:
    """Check every subset product (including the empty subset, i.e. a0
    itself) against the shifted-power condition."""
    if k < 2:
        raise DomainError(f"power index must be >= 2, got {k}")
    if n == 0:
        raise DomainError("shift n must be nonzero")
    if cube.dimension > MAX_DIMENSION:
        raise BudgetError(
            f"dimension {cube.dimension} exceeds the hard cap {MAX_DIMENSION}"
        )
    items = _subset_products(cube)
    failing = [idx for idx, p in items if not is_kth_power(p + n, k)]
    notes = []
    if len({p for _, p in items}) < len(items):
        notes.append("cube has colliding subset products")
    return CubeVerdict(
        failing_subsets=tuple(sorted(failing)), bounds={}, notes=tuple(notes)
    )


def _compatible(a0, products, g, k, n) -> bool:
    """Would adding generator g keep every new subset product shifted?"""
    return all(is_kth_power(p * g + n, k) for p in products)


def search_cubes(
    k: int,
    n: int,
    generator_limit: int,
    a0_limit: int,
    min_dim: int,
    *,
    threads: int = 1,
    budget: int = 10_000_000,
) -> list[HilbertCube]:
    """All verified cubes with generators in [2, generator_limit] and
    a0 <= a0_limit that are maximal within the limits and have dimension
    >= min_dim, in deterministic (a0, generators) order.

    Generator 1 is excluded: it multiplies every subset product by
    nothing and would inflate every cube's dimension for free.  Search
    grows cliques of the pairwise-compatible graph, re-verifying all new
    subset products at each extension.
    """
    if k < 2:
        raise DomainError(f"power index must be >= 2, got {k}")
    if n == 0:
        raise DomainError("shift n must be nonzero")
    if generator_limit < 2 or a0_limit < 1 or min_dim < 1:
        raise DomainError("limits must be positive (generator_limit >= 2)")
    if a0_limit * generator_limit > budget:
        raise BudgetError(
            f"a0_limit * generator_limit = {a0_limit * generator_limit} "
            f"exceeds budget {budget}"
        )
    results = []
    for a0 in range(1, a0_limit + 1):
        if not is_kth_power(a0 + n, k):
            continue  # the empty subset already fails
        cands = [
            g for g in range(2, generator_limit + 1) if is_kth_power(a0 * g + n, k)
        ]
        task = _RootTask(a0, cands, k, n, min_dim)
        if threads > 1:
            with ThreadPoolExecutor(max_workers=threads) as pool:
                for chunk in pool.map(task, range(len(cands))):
                    results.extend(chunk)
        else:
            for i in range(len(cands)):
                results.extend(task(i))
    results.sort(key=lambda c: (c.a0, c.generators))
    return results


class _RootTask:
    """Maximal verified cubes whose smallest generator is cands[i]."""

    def __init__(self, a0, cands, k, n, min_dim):
        self.a0 = a0
        self.cands = cands
        self.k = k
        self.n = n
        self.min_dim = min_dim

    def __call__(self, i):
        a0, cands, k, n = self.a0, self.cands, self.k, self.n
        out = []

        def extend(chosen, products, start):
            if len(chosen) > MAX_DIMENSION:
                raise BudgetError(
                    f"clique grew past the dimension cap {MAX_DIMENSION}"
                )
            for j in range(start, len(cands)):
                g = cands[j]
                if _compatible(a0, products, g, k, n):
                    extend(chosen + [g], products + [p * g for p in products], j + 1)
            if len(chosen) >= self.min_dim and not any(
                g not in chosen and _compatible(a0, products, g, k, n) for g in cands
            ):
                out.append(HilbertCube(a0=a0, generators=tuple(chosen)))

        g = cands[i]
        extend([g], [a0, a0 * g], i + 1)
        return out


def restricted_product_set(A, h: int) -> tuple[set[int], bool]:
    """Products of h distinct elements of A, with the restricted-sumset
    floor |A^(h)| >= h(|A| - h) + 1 asserted as a flag."""
    A = tuple(sorted(A))
    if len(set(A)) != len(A) or any(a < 1 for a in A):
        raise DomainError("A must be distinct positive integers")
    if not 1 <= h <= len(A):
        raise DomainError(f"h must be in [1, {len(A)}], got {h}")
    prods = set()
    for combo in combinations(A, h):
        p = 1
        for a in combo:
            p *= a
        prods.add(p)
    bound_ok = len(prods) >= h * (len(A) - h) + 1
    return prods, bound_ok


def verify_prodl(
    A,
    a0: int,
    k: int,
    n: int,
    l: int,
    *,
    allow_square: bool = False,
    budget: int = 1_000_000,
) -> CubeVerdict:
    """Check a0 * (product of B) + n is a k-th power for every size-l
    subset B of A.

    The size-l subset-product setting assumes k >= 3; k == 2 is rejected
    unless ``allow_square`` is set.  The verdict also reports the halving
    bipartition A1 / A2 and the restricted-product sizes it induces.
    """
    A = tuple(sorted(A))
    if len(set(A)) != len(A) or any(a < 1 for a in A):
        raise DomainError("A must be distinct positive integers")
    if a0 < 1:
        raise DomainError("a0 must be positive")
    if n == 0:
        raise DomainError("shift n must be nonzero")
    if not 2 <= l <= len(A):
        raise DomainError(f"l must be in [2, {len(A)}], got {l}")
    if k < 3 and not allow_square:
        raise DomainError("k >= 3 required (pass allow_square=True to relax)")
    if k < 2:
        raise DomainError(f"power index must be >= 2, got {k}")
    if math.comb(len(A), l) > budget:
        raise BudgetError(f"C({len(A)}, {l}) subsets exceed budget {budget}")
    failing = []
    for combo in combinations(range(1, len(A) + 1), l):
        p = a0
        for i in combo:
            p *= A[i - 1]
        if not is_kth_power(p + n, k):
            failing.append(combo)
    half = (len(A) + 1) // 2
    A1, A2 = A[:half], A[half:]
    h = l // 2
    bounds = {}
    if 1 <= h <= len(A1) and 1 <= l - h <= len(A2):
        s1, ok1 = restricted_product_set(A1, h)
        s2, ok2 = restricted_product_set(A2, l - h)
        bounds = {
            "bipartition": (A1, A2),
            "restricted_product_sizes": (len(s1), len(s2)),
            "restricted_product_floor_ok": ok1 and ok2,
        }
    return CubeVerdict(failing_subsets=tuple(failing), bounds=bounds)


def dimension_bounds(cube: HilbertCube, k: int, n: int) -> dict:
    """Named dimension diagnostics for a cube against (k, n).

    * ``class_count_m`` and ``pell_threshold``: the simultaneous-Pell
      ceiling (3 + sqrt(32m + 17)) / 2 with
      m = 2**min(omega(n(1-a1)), omega(n(1-a2))); applicable (k = 2) only
      when a0 > n**6 * a2**4 and the generators start at 2 or above.
    * ``sqrt_scale``: the k = 2 dimension scale
      2**(omega(n(1-a1))/2) + log|n|.
    * ``top_half_product``: the k >= 3, even d >= 10 product bound audit.
    """
    if k < 2:
        raise DomainError(f"power index must be >= 2, got {k}")
    if n == 0:
        raise DomainError("shift n must be nonzero")
    out: dict[str, object] = {}
    gens = cube.generators
    if len(gens) >= 2 and gens[0] > 1:
        a1, a2 = gens[0], gens[1]
        w1 = omega(n * (1 - a1))
        w2 = omega(n * (1 - a2))
        m = 2 ** min(w1, w2)
        out["class_count_m"] = m
        with mpmath.workdps(30):
            out["pell_threshold"] = (3 + mpmath.sqrt(32 * m + 17)) / 2
        out["pell_threshold_applicable"] = k == 2 and cube.a0 > n**6 * a2**4
        if k == 2:
            with mpmath.workdps(30):
                out["sqrt_scale"] = 2 ** (mpmath.mpf(w1) / 2) + mpmath.log(abs(n))
    elif gens and gens[0] == 1:
        out["note"] = "a1 == 1 makes n*(1 - a1) vanish; class bounds not applicable"
    else:
        out["note"] = "needs at least two generators"
    if k >= 3:
        out["top_half_product"] = gaps.check_a0X(cube, k, n)
    return out
