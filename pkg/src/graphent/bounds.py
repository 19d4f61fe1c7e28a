"""Colouring (lower) and matching (upper) bounds on graph-state entanglement.

For a graph state |G> on n qubits with a largest independent set A,

    max cut-rank  <=  E_g = E_R = log2(1 + R)  <=  n - |A|,

and 2**|A| states are LOCC-discriminable.  The report carries both ends of the
sandwich together with their witnesses.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from graphent import kernels
from graphent.graph import (
    DEFAULT_MIS_BUDGET,
    Graph,
    local_complement,
    mask_of,
    max_independent_set,
    members_of,
)
from graphent.stabilizer import Bipartition

EXHAUSTIVE_LIMIT = 24
DEFAULT_RESTARTS = 64


@dataclass(frozen=True)
class BoundsReport:
    n: int
    lower_log_N: int
    witness_set: frozenset[int]
    upper_log_N: int
    E_low: int
    E_high: int
    exact: bool
    witness_bipartition: Bipartition | None
    certified: bool

    def __post_init__(self):
        if self.E_low > self.E_high:
            raise AssertionError(f"bound sandwich violated: E_low={self.E_low} > E_high={self.E_high}")
        if self.exact != (self.E_low == self.E_high):
            raise AssertionError("exact flag disagrees with the bounds")

    @property
    def entanglement(self) -> int | None:
        """Common value of E_g, E_R and log2(1+R) when the bounds meet."""
        return self.E_low if self.exact else None

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "lower_log_N": self.lower_log_N,
            "witness_set": sorted(self.witness_set),
            "upper_log_N": self.upper_log_N,
            "E_low": self.E_low,
            "E_high": self.E_high,
            "exact": self.exact,
            "witness_bipartition": (
                self.witness_bipartition.to_dict() if self.witness_bipartition else None
            ),
            "certified": self.certified,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "BoundsReport":
        bp = d.get("witness_bipartition")
        return cls(
            n=int(d["n"]),
            lower_log_N=int(d["lower_log_N"]),
            witness_set=frozenset(d["witness_set"]),
            upper_log_N=int(d["upper_log_N"]),
            E_low=int(d["E_low"]),
            E_high=int(d["E_high"]),
            exact=bool(d["exact"]),
            witness_bipartition=(
                Bipartition(frozenset(bp["side_a"]), frozenset(bp["side_b"])) if bp else None
            ),
            certified=bool(d["certified"]),
        )


def coloring_lower_bound(g: Graph, budget: int = DEFAULT_MIS_BUDGET) -> tuple[frozenset[int], int]:
    """Amber set A and |A|; the 2**|A| states it labels are LOCC-discriminable."""
    mis = max_independent_set(g, budget)
    return mis.members, mis.size


@dataclass(frozen=True)
class MatchingResult:
    bipartition: Bipartition
    value: int
    complete: bool


def _canonical_side(mask: int, n: int) -> int:
    # side_a never holds vertex n-1, matching the exhaustive enumeration
    if (mask >> (n - 1)) & 1:
        mask ^= (1 << n) - 1
    return mask


def _local_search(g: Graph, ceiling: int, restarts: int, seed: int) -> tuple[int, int, bool]:
    n = g.n
    adj = list(g.rows)
    full = (1 << n) - 1
    rng = np.random.default_rng(seed)
    best, best_mask = -1, 0
    for _ in range(restarts):
        perm = rng.permutation(n)
        mask = mask_of(int(v) for v in perm[: n // 2])
        value = kernels.cut_rank(adj, n, mask)
        stale = 0
        while stale < 3 and value < ceiling:
            improved = False
            for v in rng.permutation(n):
                cand = mask ^ (1 << int(v))
                if cand == 0 or cand == full:
                    continue
                r = kernels.cut_rank(adj, n, cand)
                if r >= value:
                    improved |= r > value
                    mask, value = cand, r
                    if value >= ceiling:
                        break
            stale = 0 if improved else stale + 1
        mask = _canonical_side(mask, n)
        if value > best or (value == best and mask < best_mask):
            best, best_mask = value, mask
        if best >= ceiling:
            break
    return best, best_mask, best >= ceiling


def search_matching(
    g: Graph,
    strategy: str = "auto",
    *,
    restarts: int = DEFAULT_RESTARTS,
    seed: int = 0,
    ceiling: int | None = None,
) -> MatchingResult:
    """Bipartition with the largest cut-rank found, i.e. the most Bell pairs across a cut.

    ``exhaustive`` visits every bipartition (n <= 24); ``heuristic`` runs a
    seeded single-vertex-move local search with ``restarts`` random starts.
    ``auto`` picks exhaustive up to 24 vertices.  The search stops early once
    ``ceiling`` (default floor(n/2), the largest possible value) is reached, in
    which case the result is provably optimal.
    """
    n = g.n
    if n < 2:
        raise ValueError("matching bound needs at least two vertices")
    if strategy == "auto":
        strategy = "exhaustive" if n <= EXHAUSTIVE_LIMIT else "heuristic"
    cap = n // 2 if ceiling is None else min(ceiling, n // 2)
    if strategy == "exhaustive":
        if n > EXHAUSTIVE_LIMIT:
            raise ValueError(f"exhaustive matching limited to {EXHAUSTIVE_LIMIT} vertices")
        value, mask = kernels.max_cut_rank(list(g.rows), n, cap)
        complete = True
    elif strategy == "heuristic":
        value, mask, complete = _local_search(g, cap, restarts, seed)
    else:
        raise ValueError(f"unknown strategy {strategy!r}")
    return MatchingResult(Bipartition.of(n, members_of(mask)), value, complete)


def matching_upper_bound(g: Graph, strategy: str = "auto", **kwargs) -> tuple[Bipartition, int]:
    """``(bipartition, E_low)``; 2**(n - E_low) bounds the number of discriminable states."""
    res = search_matching(g, strategy, **kwargs)
    return res.bipartition, res.value


def _report(g: Graph, budget: int, strategy: str, restarts: int, seed: int) -> BoundsReport:
    mis = max_independent_set(g, budget)
    size = mis.size
    e_high = g.n - size
    if g.n < 2:
        return BoundsReport(g.n, size, mis.members, g.n, 0, e_high, e_high == 0, None, mis.certified)
    match = search_matching(
        g, strategy, restarts=restarts, seed=seed, ceiling=min(g.n // 2, e_high)
    )
    e_low = match.value
    return BoundsReport(
        n=g.n,
        lower_log_N=size,
        witness_set=mis.members,
        upper_log_N=g.n - e_low,
        E_low=e_low,
        E_high=e_high,
        exact=e_low == e_high,
        witness_bipartition=match.bipartition,
        certified=mis.certified and match.complete,
    )


def _rank_key(report: BoundsReport) -> tuple[int, int]:
    return (report.lower_log_N, report.E_low)


def lc_orbit_search(
    g: Graph,
    depth: int,
    beam: int = 16,
    budget: int = DEFAULT_MIS_BUDGET,
    *,
    strategy: str = "auto",
    restarts: int = DEFAULT_RESTARTS,
    seed: int = 0,
) -> tuple[Graph, BoundsReport]:
    """Best bounds over graphs reachable by up to ``depth`` local complementations.

    Each level expands every frontier graph at every vertex, drops graphs
    already seen (by adjacency bitstring), and keeps the ``beam`` best.
    Ties keep the shallower graph, then the smaller bitstring.
    """
    if depth < 0:
        raise ValueError("depth must be non-negative")
    best_graph = g
    best = _report(g, budget, strategy, restarts, seed)
    frontier = [g]
    seen = {g.canonical_key()}
    for _ in range(depth):
        found = []
        for h in frontier:
            for v in range(h.n):
                h2 = local_complement(h, v)
                key = h2.canonical_key()
                if key in seen:
                    continue
                seen.add(key)
                found.append((h2, key, _report(h2, budget, strategy, restarts, seed)))
        if not found:
            break
        found.sort(key=lambda item: (-item[2].lower_log_N, -item[2].E_low, item[1]))
        top = found[0]
        if _rank_key(top[2]) > _rank_key(best):
            best_graph, best = top[0], top[2]
        frontier = [item[0] for item in found[:beam]]
    return best_graph, best


def entanglement_report(
    g: Graph,
    *,
    budget: int = DEFAULT_MIS_BUDGET,
    strategy: str = "auto",
    restarts: int = DEFAULT_RESTARTS,
    seed: int = 0,
    lc_depth: int = 0,
    lc_beam: int = 16,
) -> BoundsReport:
    """Bounds report for ``g``.

    With ``lc_depth > 0`` the report belongs to the best graph found in the
    local-complementation orbit (same state up to local unitaries, so the same
    entanglement); use ``lc_orbit_search`` to get that graph as well.
    """
    if lc_depth:
        return lc_orbit_search(
            g, lc_depth, lc_beam, budget, strategy=strategy, restarts=restarts, seed=seed
        )[1]
    return _report(g, budget, strategy, restarts, seed)
