"""Pure-Python bitset kernels.

Every graph is passed as a list of adjacency bitmasks (bit ``j`` of ``adj[i]``
set iff ``i`` and ``j`` are joined).  These functions are the fallback for
``graphent._ckernels`` and must return identical results.
"""

from __future__ import annotations


def gf2_rank(rows: list[int]) -> int:
    """Rank over GF(2) of integer-encoded rows."""
    basis: dict[int, int] = {}
    for r in rows:
        while r:
            h = r.bit_length() - 1
            pivot = basis.get(h)
            if pivot is None:
                basis[h] = r
                break
            r ^= pivot
    return len(basis)


def cut_rank(adj: list[int], n: int, mask: int) -> int:
    full = (1 << n) - 1
    other = full & ~mask
    rows = []
    m = mask
    while m:
        low = m & -m
        rows.append(adj[low.bit_length() - 1] & other)
        m ^= low
    return gf2_rank(rows)


def max_cut_rank(adj: list[int], n: int, ceiling: int) -> tuple[int, int]:
    """Exhaustive maximum of the cut-rank over bipartitions.

    Vertex ``n-1`` is pinned to side B, so each unordered bipartition is
    visited exactly once.  Returns ``(best, mask_of_side_a)``; the first mask in
    increasing order that attains the maximum wins.  Stops early once
    ``ceiling`` is reached.
    """
    best, best_mask = -1, 0
    for mask in range(1, 1 << (n - 1)):
        pc = mask.bit_count()
        if min(pc, n - pc) <= best:
            continue
        r = cut_rank(adj, n, mask)
        if r > best:
            best, best_mask = r, mask
            if best >= ceiling:
                break
    return best, best_mask


def mis_search(
    adj: list[int], n: int, lower: int, stop_at: int, budget: int
) -> tuple[int, int, int, bool]:
    """Branch and bound for an independent set larger than ``lower``.

    Runs as a maximum-clique search on the complement graph, bounding each node
    by a greedy clique cover of the candidates.  Returns
    ``(mask, size, nodes, completed)``; ``mask`` is -1 when nothing larger than
    ``lower`` was found.  The search stops as soon as ``stop_at`` is reached, or
    when more than ``budget`` nodes were expanded (``completed`` is then False).
    """
    full = (1 << n) - 1
    comp = [full & ~adj[v] & ~(1 << v) for v in range(n)]
    best_size = lower
    best_mask = -1
    nodes = 0
    aborted = False

    def colour_sort(p: int) -> list[tuple[int, int]]:
        out = []
        colour = 0
        while p:
            colour += 1
            avail = p
            while avail:
                low = avail & -avail
                v = low.bit_length() - 1
                p ^= low
                avail &= ~low & ~comp[v]
                out.append((v, colour))
        return out

    def expand(r: int, size: int, p: int) -> None:
        nonlocal best_size, best_mask, nodes, aborted
        nodes += 1
        if nodes > budget:
            aborted = True
            return
        for v, colour in reversed(colour_sort(p)):
            if size + colour <= best_size or best_size >= stop_at:
                return
            bit = 1 << v
            pn = p & comp[v]
            if pn:
                expand(r | bit, size + 1, pn)
                if aborted:
                    return
            elif size + 1 > best_size:
                best_size = size + 1
                best_mask = r | bit
            p &= ~bit

    if n and best_size < stop_at:
        expand(0, 0, full)
    return best_mask, best_size, nodes, not aborted
