"""Verification and desk-scale exhaustive search for D_k(n) and BD_k(n) sets.

A set A has property D_k(n) when a*b + n is a k-th power (of a positive
integer) for every pair of distinct a, b in A.  A pair of sets (A, B),
each of size >= 2, has property BD_k(n) when a*b + n is a k-th power for
every a in A and b in B.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

from .arith import is_kth_power
from .errors import BudgetError, DomainError

# Pair-check budget for the maximal-set search; limit**2/2 checks are needed
# to build the compatibility graph.
DEFAULT_SEARCH_BUDGET = 200_000_000


@dataclass(frozen=True)
class TupleInstance:
    """A candidate (or verified) D_k(n) witness with sorted elements."""

    k: int
    n: int
    elements: tuple[int, ...]

    def __post_init__(self):
        _check_kn(self.k, self.n)
        _check_elements(self.elements)

    @property
    def size(self) -> int:
        return len(self.elements)


@dataclass(frozen=True)
class BipartitePair:
    """A candidate (or verified) BD_k(n) witness.

    ``ordered_flag`` records whether max(A) <= min(B), the setting in
    which the two sides can be read as one increasing chain.
    """

    k: int
    n: int
    A: tuple[int, ...]
    B: tuple[int, ...]

    def __post_init__(self):
        _check_kn(self.k, self.n)
        _check_elements(self.A)
        _check_elements(self.B)
        if len(self.A) < 2 or len(self.B) < 2:
            raise DomainError("both sides of a bipartite pair need >= 2 elements")

    @property
    def ordered_flag(self) -> bool:
        return max(self.A) <= min(self.B)

    @property
    def overlap(self) -> tuple[int, ...]:
        return tuple(sorted(set(self.A) & set(self.B)))


@dataclass(frozen=True)
class VerifyReport:
    """Outcome of a pairwise power check.

    ``violations`` lists (a, b, a*b + n) triples whose product failed the
    power test, in lexicographic order.
    """

    violations: tuple[tuple[int, int, int], ...]
    notes: tuple[str, ...] = ()

    @property
    def valid(self) -> bool:
        return not self.violations


@dataclass(frozen=True)
class BipartiteVerifyReport(VerifyReport):
    ordered_flag: bool = False
    overlap: tuple[int, ...] = ()


def _check_kn(k: int, n: int) -> None:
    if k < 2:
        raise DomainError(f"power index must be >= 2, got {k}")
    if n == 0:
        raise DomainError("shift n must be nonzero")


def _check_elements(elements) -> None:
    if any(e < 1 for e in elements):
        raise DomainError("elements must be positive integers")
    if len(set(elements)) != len(elements):
        raise DomainError("elements must be distinct")
    if tuple(sorted(elements)) != tuple(elements):
        raise DomainError("elements must be sorted ascending")


def verify_dkn(elements, k: int, n: int) -> VerifyReport:
    """Check every unordered pair of a candidate D_k(n) set."""
    _check_kn(k, n)
    els = tuple(sorted(elements))
    _check_elements(els)
    violations = []
    for i in range(len(els)):
        for j in range(i + 1, len(els)):
            v = els[i] * els[j] + n
            if not is_kth_power(v, k):
                violations.append((els[i], els[j], v))
    return VerifyReport(violations=tuple(violations))


def verify_bdkn(A, B, k: int, n: int) -> BipartiteVerifyReport:
    """Check all of A x B for a candidate BD_k(n) pair."""
    _check_kn(k, n)
    As = tuple(sorted(A))
    Bs = tuple(sorted(B))
    _check_elements(As)
    _check_elements(Bs)
    if len(As) < 2 or len(Bs) < 2:
        raise DomainError("both sides of a bipartite pair need >= 2 elements")
    violations = []
    for a in As:
        for b in Bs:
            v = a * b + n
            if not is_kth_power(v, k):
                violations.append((a, b, v))
    overlap = tuple(sorted(set(As) & set(Bs)))
    notes = ()
    if overlap:
        notes = (f"sides overlap in {list(overlap)}",)
    return BipartiteVerifyReport(
        violations=tuple(sorted(violations)),
        notes=notes,
        ordered_flag=max(As) <= min(Bs),
        overlap=overlap,
    )


def compatibility_graph(k: int, n: int, limit: int, *, self_loops: bool = False):
    """Adjacency sets of the graph on [1, limit] joining a ~ b iff a*b + n
    is a k-th power.

    Edges are found by enumerating k-th powers m**k <= limit**2 + n and
    splitting m**k - n into divisor pairs, which is much cheaper than the
    quadratic pair scan.  With ``self_loops`` a vertex a with a*a + n a
    k-th power is listed as its own neighbor (needed when the two sides
    of a bipartite configuration may share elements).
    """
    _check_kn(k, n)
    if limit < 1:
        raise DomainError("limit must be >= 1")
    nbrs: dict[int, set[int]] = {}
    m = 1
    while True:
        p = m**k - n
        if p > limit * limit:
            break
        if p >= 1:
            d = max(1, -(-p // limit))  # smallest divisor with cofactor <= limit
            top = p
            while d * d <= top:
                if p % d == 0:
                    a, b = d, p // d
                    if a == b:
                        if self_loops:
                            nbrs.setdefault(a, set()).add(a)
                    else:
                        nbrs.setdefault(a, set()).add(b)
                        nbrs.setdefault(b, set()).add(a)
                d += 1
        m += 1
    return nbrs


def _maximal_cliques_rooted(nbrs, root, min_size):
    """Maximal cliques whose smallest vertex is ``root`` (Bron-Kerbosch
    with a deterministic pivot)."""
    out = []

    def bk(clique, cand, excl):
        if not cand and not excl:
            if len(clique) >= min_size:
                out.append(tuple(sorted(clique)))
            return
        pivot = max(cand | excl, key=lambda v: (len(cand & nbrs.get(v, set())), -v))
        for v in sorted(cand - nbrs.get(pivot, set())):
            bk(clique + [v], cand & nbrs[v], excl & nbrs[v])
            cand = cand - {v}
            excl = excl | {v}

    adj = nbrs.get(root, set())
    bk([root], {u for u in adj if u > root}, {u for u in adj if u < root})
    return out


def search_dkn(
    k: int,
    n: int,
    limit: int,
    min_size: int,
    *,
    threads: int = 1,
    budget: int = DEFAULT_SEARCH_BUDGET,
) -> list[TupleInstance]:
    """All D_k(n) sets with elements <= limit that are maximal within the
    limit (no element <= limit extends them) and have size >= min_size.

    Results are lexicographically sorted and independent of the thread
    count.  Maximality is relative to the search limit only.
    """
    _check_kn(k, n)
    if limit < 2 or min_size < 2:
        raise DomainError("limit and min_size must be >= 2")
    if limit * limit // 2 > budget:
        raise BudgetError(
            f"graph construction needs ~{limit * limit // 2} pair checks, "
            f"budget is {budget}"
        )
    nbrs = compatibility_graph(k, n, limit)
    roots = sorted(nbrs)
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            chunks = pool.map(
                lambda r: _maximal_cliques_rooted(nbrs, r, min_size), roots
            )
            found = [c for chunk in chunks for c in chunk]
    else:
        found = [c for r in roots for c in _maximal_cliques_rooted(nbrs, r, min_size)]
    return [TupleInstance(k, n, els) for els in sorted(set(found))]


def extend_B(A, k: int, n: int, limit: int) -> list[int]:
    """Every b in [1, limit] with a*b + n a k-th power for all a in A.

    Products a*b + n <= 0 simply disqualify b; they are not errors.
    """
    _check_kn(k, n)
    As = tuple(sorted(A))
    if not As:
        raise DomainError("A must be nonempty")
    if any(a < 1 for a in As):
        raise DomainError("elements must be positive integers")
    return [
        b for b in range(1, limit + 1) if all(is_kth_power(a * b + n, k) for a in As)
    ]


def search_ordered_bipartite(
    k: int,
    n: int,
    limit: int,
    size_A: int,
    *,
    budget: int = 20_000_000,
) -> list[BipartitePair]:
    """For each size-2 or size-3 set A with elements <= limit, the maximal
    B inside [max(A), limit] completing a BD_k(n) pair with |B| >= 2.

    The two sides may share max(A) = min(B); this matches the ordered
    chain a_1 < a_2 <= b_1 < b_2 < ... setting.
    """
    _check_kn(k, n)
    if size_A not in (2, 3):
        raise DomainError("size_A must be 2 or 3")
    if limit < 2:
        raise DomainError("limit must be >= 2")
    n_subsets = limit**size_A // (2 if size_A == 2 else 6)
    if n_subsets > budget:
        raise BudgetError(f"~{n_subsets} candidate sets exceed budget {budget}")
    nbrs = compatibility_graph(k, n, limit, self_loops=True)
    results = []
    verts = sorted(nbrs)
    for i, a1 in enumerate(verts):
        n1 = nbrs[a1]
        for a2 in verts[i + 1 :]:
            common = n1 & nbrs[a2]
            if size_A == 2:
                B = sorted(b for b in common if b >= a2)
                if len(B) >= 2:
                    results.append(BipartitePair(k, n, (a1, a2), tuple(B)))
            else:
                for a3 in verts:
                    if a3 <= a2:
                        continue
                    B = sorted(b for b in common & nbrs[a3] if b >= a3)
                    if len(B) >= 2:
                        results.append(BipartitePair(k, n, (a1, a2, a3), tuple(B)))
    results.sort(key=lambda p: (p.A, p.B))
    return results


def bdkn_2x2_configs(k: int, n: int, limit: int) -> list[tuple[int, int, int, int]]:
    """All quadruples (x, y, z, w) with x < y, z < w, elements <= limit and
    x*z + n, x*w + n, y*z + n, y*w + n all k-th powers.

    The two pairs may overlap (z or w may equal x or y).  Each unordered
    configuration {x, y} x {z, w} is reported once, with the
    lexicographically smaller pair first.
    """
    nbrs = compatibility_graph(k, n, limit, self_loops=True)
    pair_common: dict[tuple[int, int], set[int]] = {}
    for c, adj in nbrs.items():
        sorted_adj = sorted(adj)
        for i in range(len(sorted_adj)):
            for j in range(i + 1, len(sorted_adj)):
                key = (sorted_adj[i], sorted_adj[j])
                pair_common.setdefault(key, set()).add(c)
    configs = set()
    for (x, y), common in pair_common.items():
        cs = sorted(common)
        for i in range(len(cs)):
            for j in range(i + 1, len(cs)):
                z, w = cs[i], cs[j]
                first, second = sorted(((x, y), (z, w)))
                configs.add(first + second)
    return sorted(configs)
