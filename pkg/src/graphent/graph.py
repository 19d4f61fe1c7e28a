"""Simple undirected graphs as adjacency bitmasks, plus the graph families and
combinatorial routines (two-colouring, local complementation, maximum
independent set) used by the bounds.
"""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass
from typing import Iterable

import numpy as np

from graphent import kernels

DEFAULT_MIS_BUDGET = 10**7

VertexSet = frozenset


class GraphError(ValueError):
    """Malformed graph, vertex or family parameters."""


def mask_of(vertices: Iterable[int]) -> int:
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


def members_of(mask: int) -> frozenset[int]:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return frozenset(out)


@dataclass(frozen=True)
class Graph:
    """Immutable simple graph; ``rows[i]`` is the neighbour bitmask of vertex ``i``."""

    n: int
    rows: tuple[int, ...]

    def __post_init__(self):
        if self.n < 1:
            raise GraphError("a graph needs at least one vertex")
        if len(self.rows) != self.n:
            raise GraphError("row count does not match n")
        full = (1 << self.n) - 1
        for i, r in enumerate(self.rows):
            if r & ~full:
                raise GraphError(f"vertex {i} has a neighbour out of range")
            if (r >> i) & 1:
                raise GraphError(f"self-loop at vertex {i}")
            m = r
            while m:
                low = m & -m
                j = low.bit_length() - 1
                if not (self.rows[j] >> i) & 1:
                    raise GraphError(f"adjacency not symmetric at ({i}, {j})")
                m ^= low

    @classmethod
    def empty(cls, n: int) -> "Graph":
        return cls(n, (0,) * n)

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> "Graph":
        if n < 1:
            raise GraphError("a graph needs at least one vertex")
        rows = [0] * n
        for e in edges:
            i, j = (int(x) for x in e)
            if not (0 <= i < n and 0 <= j < n):
                raise GraphError(f"edge ({i}, {j}) out of range for n={n}")
            if i == j:
                raise GraphError(f"self-loop at vertex {i}")
            if (rows[i] >> j) & 1:
                raise GraphError(f"duplicate edge ({min(i, j)}, {max(i, j)})")
            rows[i] |= 1 << j
            rows[j] |= 1 << i
        return cls(n, tuple(rows))

    @classmethod
    def from_adjacency(cls, matrix) -> "Graph":
        a = np.asarray(matrix)
        if a.ndim != 2 or a.shape[0] != a.shape[1]:
            raise GraphError("adjacency must be a square matrix")
        if not np.isin(a, (0, 1)).all():
            raise GraphError("adjacency must be binary")
        rows = tuple(mask_of(int(j) for j in np.flatnonzero(a[i])) for i in range(a.shape[0]))
        return cls(a.shape[0], rows)

    @property
    def adjacency(self) -> np.ndarray:
        a = np.zeros((self.n, self.n), dtype=np.uint8)
        for i, r in enumerate(self.rows):
            for j in members_of(r):
                a[i, j] = 1
        return a

    def neighbours(self, v: int) -> frozenset[int]:
        self._check_vertex(v)
        return members_of(self.rows[v])

    def degree(self, v: int) -> int:
        self._check_vertex(v)
        return self.rows[v].bit_count()

    def has_edge(self, i: int, j: int) -> bool:
        return bool((self.rows[i] >> j) & 1)

    def edges(self) -> list[tuple[int, int]]:
        return [(i, j) for i in range(self.n) for j in sorted(members_of(self.rows[i])) if i < j]

    @property
    def num_edges(self) -> int:
        return sum(r.bit_count() for r in self.rows) // 2

    def canonical_key(self) -> str:
        """Upper-triangle adjacency bitstring under the identity labelling."""
        return "".join(
            "1" if (self.rows[i] >> j) & 1 else "0"
            for i in range(self.n)
            for j in range(i + 1, self.n)
        )

    def _check_vertex(self, v: int) -> None:
        if not 0 <= v < self.n:
            raise GraphError(f"vertex {v} out of range for n={self.n}")

    def to_dict(self) -> dict:
        return {"n": self.n, "edges": [list(e) for e in self.edges()]}

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_dict(cls, data: dict) -> "Graph":
        try:
            n = int(data["n"])
            edges = data.get("edges", [])
        except (KeyError, TypeError, ValueError) as exc:
            raise GraphError(f"bad graph record: {exc}") from None
        for e in edges:
            if len(e) != 2:
                raise GraphError(f"edge {e!r} must have two endpoints")
        return cls.from_edges(n, edges)

    @classmethod
    def from_json(cls, text: str) -> "Graph":
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise GraphError(f"invalid JSON: {exc}") from None
        if not isinstance(data, dict):
            raise GraphError("graph JSON must be an object")
        return cls.from_dict(data)


@dataclass(frozen=True)
class Coloring:
    amber: frozenset[int]
    blue: frozenset[int]


# --- families --------------------------------------------------------------


def cluster1d(n: int) -> Graph:
    _require(n >= 1, "cluster1d needs n >= 1")
    return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)])


def cluster2d(rows: int, cols: int) -> Graph:
    """Grid graph, vertex ``r * cols + c``."""
    _require(rows >= 1 and cols >= 1, "cluster2d needs rows, cols >= 1")
    return cluster3d(rows, cols, 1)


def cluster3d(rows: int, cols: int, depth: int) -> Graph:
    """Cubic grid, vertex ``(layer * rows + r) * cols + c``."""
    _require(rows >= 1 and cols >= 1 and depth >= 1, "cluster3d needs rows, cols, depth >= 1")

    def idx(d, r, c):
        return (d * rows + r) * cols + c

    edges = []
    for d in range(depth):
        for r in range(rows):
            for c in range(cols):
                if c + 1 < cols:
                    edges.append((idx(d, r, c), idx(d, r, c + 1)))
                if r + 1 < rows:
                    edges.append((idx(d, r, c), idx(d, r + 1, c)))
                if d + 1 < depth:
                    edges.append((idx(d, r, c), idx(d + 1, r, c)))
    return Graph.from_edges(rows * cols * depth, edges)


def ghz_star(n: int) -> Graph:
    """Star with centre 0 and leaves 1..n-1."""
    _require(n >= 1, "ghz_star needs n >= 1")
    return Graph.from_edges(n, [(0, j) for j in range(1, n)])


def ghz_complete(n: int) -> Graph:
    _require(n >= 1, "ghz_complete needs n >= 1")
    return Graph.from_edges(n, [(i, j) for i in range(n) for j in range(i + 1, n)])


def ring(n: int) -> Graph:
    _require(n >= 3, "ring needs n >= 3")
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


# Bipartite graph of the [[7,1,3]] logical-zero codeword: check vertices 4, 5, 6
# attach to data vertices 0..3 through the non-identity block of the systematic
# Hamming parity-check matrix.
_STEANE_EDGES = (
    (0, 4), (1, 4), (3, 4),
    (0, 5), (2, 5), (3, 5),
    (1, 6), (2, 6), (3, 6),
)


def steane7() -> Graph:
    g = Graph.from_edges(7, _STEANE_EDGES)
    col = two_color(g)
    if col is None or len(col.amber) != 4:
        raise GraphError("steane7 graph failed validation: expected a 4/3 two-colouring")
    best, _ = kernels.max_cut_rank(list(g.rows), g.n, g.n // 2)
    if best != 3:
        raise GraphError(f"steane7 graph failed validation: maximum cut-rank {best}, expected 3")
    return g


def edge_list(n: int, edges: Iterable[tuple[int, int]]) -> Graph:
    return Graph.from_edges(n, edges)


FAMILIES = {
    "cluster1d": (cluster1d, ("n",)),
    "cluster2d": (cluster2d, ("rows", "cols")),
    "cluster3d": (cluster3d, ("rows", "cols", "depth")),
    "ghz_star": (ghz_star, ("n",)),
    "ghz_complete": (ghz_complete, ("n",)),
    "ring": (ring, ("n",)),
    "steane7": (steane7, ()),
    "edge_list": (edge_list, ("n", "edges")),
}


def build_family(name: str, **params) -> Graph:
    """Construct a named family, e.g. ``build_family("cluster2d", rows=4, cols=4)``."""
    try:
        ctor, names = FAMILIES[name]
    except KeyError:
        raise GraphError(f"unknown family {name!r}; choose from {sorted(FAMILIES)}") from None
    missing = [p for p in names if p not in params]
    extra = [p for p in params if p not in names]
    if missing or extra:
        raise GraphError(f"{name} takes parameters {list(names)}; missing {missing}, unexpected {extra}")
    args = [params[p] for p in names]
    for p, a in zip(names, args):
        if p != "edges" and (isinstance(a, bool) or not isinstance(a, (int, np.integer))):
            raise GraphError(f"{name}: parameter {p} must be an integer")
    return ctor(*args)


def _require(cond: bool, msg: str) -> None:
    if not cond:
        raise GraphError(msg)


# --- graph operations --------------------------------------------------------


def local_complement(g: Graph, v: int) -> Graph:
    """Complement the subgraph induced on the neighbourhood of ``v``."""
    g._check_vertex(v)
    nb = g.rows[v]
    rows = list(g.rows)
    m = nb
    while m:
        low = m & -m
        u = low.bit_length() - 1
        rows[u] ^= nb & ~low
        m ^= low
    return Graph(g.n, tuple(rows))


def toggle_edge(g: Graph, i: int, j: int) -> Graph:
    g._check_vertex(i)
    g._check_vertex(j)
    if i == j:
        raise GraphError("cannot toggle a self-loop")
    rows = list(g.rows)
    rows[i] ^= 1 << j
    rows[j] ^= 1 << i
    return Graph(g.n, tuple(rows))


def disjoint_union(g1: Graph, g2: Graph) -> Graph:
    shift = g1.n
    return Graph(g1.n + g2.n, g1.rows + tuple(r << shift for r in g2.rows))


def is_independent(g: Graph, s: Iterable[int]) -> bool:
    m = 0
    for v in s:
        g._check_vertex(v)
        m |= 1 << v
    return all(not (g.rows[v] & m) for v in members_of(m))


def two_color(g: Graph) -> Coloring | None:
    """Two-colouring with the larger side of each component in amber.

    Equal-sized sides go to whichever holds the component's lowest vertex.
    Returns None when ``g`` has an odd cycle.
    """
    colour = [-1] * g.n
    amber: set[int] = set()
    blue: set[int] = set()
    for start in range(g.n):
        if colour[start] != -1:
            continue
        colour[start] = 0
        sides: tuple[list[int], list[int]] = ([start], [])
        queue = deque([start])
        while queue:
            u = queue.popleft()
            for w in sorted(members_of(g.rows[u])):
                if colour[w] == -1:
                    colour[w] = 1 - colour[u]
                    sides[colour[w]].append(w)
                    queue.append(w)
                elif colour[w] == colour[u]:
                    return None
        big, small = (sides[1], sides[0]) if len(sides[1]) > len(sides[0]) else sides
        amber.update(big)
        blue.update(small)
    return Coloring(frozenset(amber), frozenset(blue))


@dataclass(frozen=True)
class IndependentSet:
    members: frozenset[int]
    certified: bool
    nodes: int

    @property
    def size(self) -> int:
        return len(self.members)


def _search_pool(g: Graph, pool: int, lower: int, stop_at: int, budget: int):
    # Relabel the pool so low-degree vertices (high degree in the complement)
    # get the lowest indices, which the kernel branches on first.
    verts = sorted(members_of(pool), key=lambda v: ((g.rows[v] & pool).bit_count(), v))
    pos = {v: i for i, v in enumerate(verts)}
    adj = []
    for v in verts:
        adj.append(mask_of(pos[u] for u in members_of(g.rows[v] & pool)))
    mask, size, nodes, completed = kernels.mis_search(adj, len(verts), lower, stop_at, budget)
    if mask < 0:
        return None, size, nodes, completed
    return mask_of(verts[i] for i in members_of(mask)), size, nodes, completed


def _greedy_independent(g: Graph) -> int:
    chosen, blocked = 0, 0
    for v in sorted(range(g.n), key=lambda v: (g.rows[v].bit_count(), v)):
        if not (blocked >> v) & 1:
            chosen |= 1 << v
            blocked |= g.rows[v] | (1 << v)
    return chosen


def max_independent_set(g: Graph, budget: int = DEFAULT_MIS_BUDGET) -> IndependentSet:
    """Maximum independent set by exact branch and bound.

    Among all maximum sets the one whose sorted member list is lexicographically
    smallest is returned.  When ``budget`` search nodes run out, the best set
    found so far comes back with ``certified=False``.
    """
    full = (1 << g.n) - 1
    greedy = _greedy_independent(g)
    mask, size, nodes, completed = _search_pool(g, full, 0, g.n, budget)
    if mask is None or greedy.bit_count() > size:
        mask, size = greedy, greedy.bit_count()
    if not completed:
        return IndependentSet(members_of(mask), False, nodes)

    # Fix vertices in increasing order, keeping each one whenever a maximum set
    # still fits in the remaining pool.
    chosen, pool = 0, full
    for v in range(g.n):
        if chosen.bit_count() == size:
            break
        if not (pool >> v) & 1:
            continue
        need = size - chosen.bit_count() - 1
        rest = pool & ~g.rows[v] & ~((1 << (v + 1)) - 1)
        feasible = need == 0
        if not feasible and rest.bit_count() >= need:
            found, _, used, done = _search_pool(g, rest, need - 1, need, max(budget - nodes, 1))
            nodes += used
            if not done and found is None:
                return IndependentSet(members_of(mask), True, nodes)
            feasible = found is not None
        if feasible:
            chosen |= 1 << v
            pool = rest
        else:
            pool &= ~(1 << v)
    if chosen.bit_count() != size:
        raise AssertionError("lexicographic reconstruction lost the maximum")
    return IndependentSet(members_of(chosen), True, nodes)
