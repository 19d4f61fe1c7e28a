"""Binary-symplectic Pauli algebra for graph states.

Paulis are stored as a pair of integer bitmasks ``(x, z)`` with bit ``q``
belonging to qubit ``q``, and a sign bit ``r`` (operator is ``(-1)**r`` times
the unsigned Pauli).  The unsigned Pauli on one qubit is ``i**(x*z) X**x Z**z``,
so ``x = z = 1`` encodes ``Y``.

The tableau follows the Aaronson-Gottesman layout: ``n`` destabilizer rows
followed by ``n`` stabilizer rows, which makes single-Pauli measurement
O(n^2) without solving linear systems.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from graphent import kernels
from graphent.graph import Graph, GraphError, mask_of, members_of

ORACLE_CAP = 12

_LETTERS = {(0, 0): "I", (1, 0): "X", (0, 1): "Z", (1, 1): "Y"}
_BITS = {v: k for k, v in _LETTERS.items()}


def _phase_exponent(x1: int, z1: int, x2: int, z2: int) -> int:
    """Power of i in P(x1,z1) P(x2,z2) = i**e P(x1^x2, z1^z2)."""
    x3, z3 = x1 ^ x2, z1 ^ z2
    return ((x1 & z1).bit_count() + (x2 & z2).bit_count()
            + 2 * (z1 & x2).bit_count() - (x3 & z3).bit_count()) % 4


def _anticommute(x1: int, z1: int, x2: int, z2: int) -> int:
    return ((x1 & z2) ^ (z1 & x2)).bit_count() & 1


@dataclass(frozen=True)
class PauliString:
    n: int
    x: int
    z: int
    sign: int = 1

    def __post_init__(self):
        if self.sign not in (1, -1):
            raise ValueError("sign must be +1 or -1")
        full = (1 << self.n) - 1
        if self.x & ~full or self.z & ~full:
            raise ValueError("Pauli support exceeds n qubits")

    @classmethod
    def from_str(cls, text: str) -> "PauliString":
        """Parse e.g. ``"+XZI"`` or ``"-ZXZ"``; the sign is optional."""
        s = text.strip()
        sign = 1
        if s and s[0] in "+-−":
            sign = -1 if s[0] in "-−" else 1
            s = s[1:]
        x = z = 0
        for q, ch in enumerate(s.upper()):
            if ch not in _BITS:
                raise ValueError(f"bad Pauli letter {ch!r} in {text!r}")
            bx, bz = _BITS[ch]
            x |= bx << q
            z |= bz << q
        return cls(len(s), x, z, sign)

    @classmethod
    def single(cls, n: int, qubit: int, letter: str) -> "PauliString":
        bx, bz = _BITS[letter.upper()]
        return cls(n, bx << qubit, bz << qubit)

    def __str__(self) -> str:
        body = "".join(_LETTERS[((self.x >> q) & 1, (self.z >> q) & 1)] for q in range(self.n))
        return ("+" if self.sign == 1 else "-") + body

    def commutes_with(self, other: "PauliString") -> bool:
        return not _anticommute(self.x, self.z, other.x, other.z)

    def __mul__(self, other: "PauliString") -> "PauliString":
        if other.n != self.n:
            raise ValueError("qubit count mismatch")
        e = _phase_exponent(self.x, self.z, other.x, other.z)
        if e % 2:
            raise ValueError("product of anticommuting Paulis is not Hermitian")
        return PauliString(self.n, self.x ^ other.x, self.z ^ other.z,
                           self.sign * other.sign * (-1 if e == 2 else 1))

    def matrix(self) -> np.ndarray:
        """Dense operator, qubit 0 as the most significant tensor factor."""
        single = {
            "I": np.eye(2, dtype=complex),
            "X": np.array([[0, 1], [1, 0]], dtype=complex),
            "Y": np.array([[0, -1j], [1j, 0]], dtype=complex),
            "Z": np.diag([1, -1]).astype(complex),
        }
        out = np.array([[self.sign]], dtype=complex)
        for ch in str(self)[1:]:
            out = np.kron(out, single[ch])
        return out


class StabilizerTableau:
    """Stabilizer generators (and, when available, destabilizers) of an n-qubit state.

    Mutable: ``measure_pauli`` updates it in place.  Share copies, not instances.
    """

    def __init__(self, n: int, xs: list[int], zs: list[int], rs: list[int],
                 has_destabilizers: bool):
        self.n = n
        self.xs = xs
        self.zs = zs
        self.rs = rs
        self.has_destabilizers = has_destabilizers

    @classmethod
    def from_generators(cls, generators: Sequence[PauliString | str]) -> "StabilizerTableau":
        gens = [PauliString.from_str(g) if isinstance(g, str) else g for g in generators]
        n = gens[0].n if gens else 0
        if any(g.n != n for g in gens):
            raise ValueError("generators act on different qubit counts")
        if len(gens) != n:
            raise ValueError(f"need exactly {n} generators, got {len(gens)}")
        t = cls(n, [0] * n + [g.x for g in gens], [0] * n + [g.z for g in gens],
                [0] * n + [0 if g.sign == 1 else 1 for g in gens], False)
        if check_commuting(t) and is_independent(t):
            t._fill_destabilizers()
        return t

    def copy(self) -> "StabilizerTableau":
        return StabilizerTableau(self.n, list(self.xs), list(self.zs), list(self.rs),
                                 self.has_destabilizers)

    @property
    def generators(self) -> list[PauliString]:
        n = self.n
        return [PauliString(n, self.xs[n + i], self.zs[n + i], -1 if self.rs[n + i] else 1)
                for i in range(n)]

    def __repr__(self) -> str:
        return f"StabilizerTableau({[str(g) for g in self.generators]})"

    def _fill_destabilizers(self) -> None:
        # Solve <d_i, s_j> = delta_ij over GF(2), then symplectic Gram-Schmidt
        # so the destabilizers commute among themselves.
        n = self.n
        stab = [(self.xs[n + j], self.zs[n + j]) for j in range(n)]
        rows = [((sz << n) | sx, 1 << j) for j, (sx, sz) in enumerate(stab)]
        pivots = []
        r = 0
        for col in range(2 * n):
            bit = 1 << col
            piv = next((i for i in range(r, n) if rows[i][0] & bit), None)
            if piv is None:
                continue
            rows[r], rows[piv] = rows[piv], rows[r]
            for i in range(n):
                if i != r and rows[i][0] & bit:
                    rows[i] = (rows[i][0] ^ rows[r][0], rows[i][1] ^ rows[r][1])
            pivots.append(col)
            r += 1
        if r != n:
            raise ValueError("generators are not independent")
        destab = []
        for i in range(n):
            d = 0
            for row_idx, col in enumerate(pivots):
                if (rows[row_idx][1] >> i) & 1:
                    d |= 1 << col
            destab.append([d >> n, d & ((1 << n) - 1)])
        for j in range(n):
            for i in range(j):
                if _anticommute(destab[i][0], destab[i][1], destab[j][0], destab[j][1]):
                    destab[j][0] ^= stab[i][0]
                    destab[j][1] ^= stab[i][1]
        for i, (dx, dz) in enumerate(destab):
            self.xs[i], self.zs[i], self.rs[i] = dx, dz, 0
        self.has_destabilizers = True

    def _rowmult(self, h: int, i: int) -> None:
        """Row h <- row i * row h (stabilizer-group product)."""
        e = _phase_exponent(self.xs[i], self.zs[i], self.xs[h], self.zs[h])
        self.rs[h] = (self.rs[h] + self.rs[i] + e // 2) % 2
        self.xs[h] ^= self.xs[i]
        self.zs[h] ^= self.zs[i]


def as_index(k, n: int) -> tuple[int, ...]:
    """Normalise a graph-state index: None, a bit string, or a bit sequence."""
    if k is None:
        return (0,) * n
    if isinstance(k, str):
        bits = tuple(int(c) for c in k)
    else:
        bits = tuple(int(b) for b in k)
    if len(bits) != n or any(b not in (0, 1) for b in bits):
        raise ValueError(f"index {k!r} is not an {n}-bit vector")
    return bits


def generators_of(g: Graph, k=None) -> StabilizerTableau:
    """Tableau of |G_k>: stabilizers (-1)**k_i X_i Z_N(i), destabilizers Z_i."""
    bits = as_index(k, g.n)
    n = g.n
    xs = [0] * n + [1 << i for i in range(n)]
    zs = [1 << i for i in range(n)] + list(g.rows)
    rs = [0] * n + list(bits)
    return StabilizerTableau(n, xs, zs, rs, True)


def check_commuting(t: StabilizerTableau) -> bool:
    n = t.n
    rows = [(t.xs[n + i], t.zs[n + i]) for i in range(n)]
    return all(not _anticommute(*rows[i], *rows[j])
               for i in range(n) for j in range(i + 1, n))


def is_independent(t: StabilizerTableau) -> bool:
    n = t.n
    rows = [(t.xs[n + i] << n) | t.zs[n + i] for i in range(n)]
    return kernels.gf2_rank(rows, 2 * n) == n


@dataclass(frozen=True)
class Bipartition:
    side_a: frozenset[int]
    side_b: frozenset[int]

    def __post_init__(self):
        if not self.side_a or not self.side_b:
            raise ValueError("both sides of a bipartition must be non-empty")
        if self.side_a & self.side_b:
            raise ValueError("bipartition sides overlap")

    @classmethod
    def of(cls, n: int, side_a: Iterable[int]) -> "Bipartition":
        a = frozenset(side_a)
        if any(not 0 <= v < n for v in a):
            raise ValueError(f"side {sorted(a)} has vertices outside 0..{n - 1}")
        return cls(a, frozenset(range(n)) - a)

    def to_dict(self) -> dict:
        return {"side_a": sorted(self.side_a), "side_b": sorted(self.side_b)}


def cut_rank(g: Graph, p: Bipartition) -> int:
    """GF(2) rank of the adjacency block between the two sides (= ebits across the cut)."""
    if (p.side_a | p.side_b) != frozenset(range(g.n)):
        raise ValueError("bipartition does not cover the graph's vertices")
    return kernels.cut_rank(list(g.rows), g.n, mask_of(p.side_a))


# --- dense oracle ----------------------------------------------------------------


def _check_cap(n: int, cap: int) -> None:
    if n > cap:
        raise ValueError(f"dense oracle limited to {cap} qubits, got {n}")


def basis_bits(n: int) -> np.ndarray:
    """(2**n, n) array of computational basis bits, qubit 0 most significant."""
    idx = np.arange(1 << n)
    return ((idx[:, None] >> (n - 1 - np.arange(n))[None, :]) & 1).astype(np.int64)


def sign_vector(g: Graph, k=None, cap: int = ORACLE_CAP) -> np.ndarray:
    """Integer amplitudes of |G_k> scaled by 2**(n/2): entries are +1 or -1."""
    _check_cap(g.n, cap)
    bits = as_index(k, g.n)
    b = basis_bits(g.n)
    upper = np.triu(g.adjacency.astype(np.int64), 1)
    expo = np.einsum("si,ij,sj->s", b, upper, b) + b @ np.asarray(bits, dtype=np.int64)
    return np.where(expo % 2 == 0, 1, -1).astype(np.int64)


def statevector(g: Graph, k=None, cap: int = ORACLE_CAP) -> np.ndarray:
    return sign_vector(g, k, cap).astype(complex) / np.sqrt(2.0**g.n)


def schmidt_rank_exponent(state: np.ndarray, n: int, side_a: Iterable[int]) -> int:
    """log2 of the number of non-zero Schmidt coefficients across ``side_a``."""
    a = sorted(side_a)
    b = [q for q in range(n) if q not in set(a)]
    m = np.asarray(state).reshape((2,) * n).transpose(a + b).reshape(1 << len(a), 1 << len(b))
    rank = int(np.linalg.matrix_rank(m))
    exp = rank.bit_length() - 1
    if 1 << exp != rank:
        raise ValueError(f"Schmidt rank {rank} is not a power of two")
    return exp


def schmidt_coefficients(state: np.ndarray, n: int, side_a: Iterable[int]) -> np.ndarray:
    a = sorted(side_a)
    b = [q for q in range(n) if q not in set(a)]
    m = np.asarray(state).reshape((2,) * n).transpose(a + b).reshape(1 << len(a), 1 << len(b))
    return np.linalg.svd(m, compute_uv=False)


def overlap(g1: Graph, k1, g2: Graph, k2, cap: int = ORACLE_CAP) -> complex:
    if g1.n != g2.n:
        raise ValueError("graphs have different qubit counts")
    return complex(np.vdot(statevector(g1, k1, cap), statevector(g2, k2, cap)))


# --- tableau dynamics ------------------------------------------------------------


def measure_pauli(t: StabilizerTableau, p: PauliString, rng: np.random.Generator):
    """Measure ``p`` on the state of ``t`` (updated in place).

    Returns ``(outcome, t)`` with outcome +1 or -1.  Deterministic when ``p`` or
    ``-p`` stabilizes the state; otherwise the outcome is a fair coin from
    ``rng`` and ``t`` is projected onto the ``outcome * p`` eigenspace.
    """
    n = t.n
    if p.n != n:
        raise ValueError("Pauli and tableau act on different qubit counts")
    if not t.has_destabilizers:
        if not (check_commuting(t) and is_independent(t)):
            raise ValueError("tableau generators do not define a stabilizer state")
        t._fill_destabilizers()
    px, pz = p.x, p.z
    xs, zs = t.xs, t.zs
    q = next((n + i for i in range(n) if _anticommute(xs[n + i], zs[n + i], px, pz)), None)
    if q is not None:
        for i in range(2 * n):
            if i != q and _anticommute(xs[i], zs[i], px, pz):
                t._rowmult(i, q)
                if i < n:
                    t.rs[i] = 0
        xs[q - n], zs[q - n], t.rs[q - n] = xs[q], zs[q], t.rs[q]
        flip = int(rng.integers(2))
        xs[q], zs[q] = px, pz
        t.rs[q] = (0 if p.sign == 1 else 1) ^ flip
        return (-1 if flip else 1), t

    sx = sz = sr = 0
    for i in range(n):
        if _anticommute(xs[i], zs[i], px, pz):
            e = _phase_exponent(xs[n + i], zs[n + i], sx, sz)
            sr = (sr + t.rs[n + i] + e // 2) % 2
            sx ^= xs[n + i]
            sz ^= zs[n + i]
    if (sx, sz) != (px, pz):
        raise AssertionError("commuting Pauli not reconstructed from the stabilizer group")
    value = -1 if sr else 1
    return value * p.sign, t


def tableau_to_graph(t: StabilizerTableau) -> tuple[Graph, tuple[int, ...]]:
    """Read off ``(G, k)`` when the stabilizer group is that of a graph state |G_k>."""
    n = t.n
    work = StabilizerTableau(n, [0] * n + t.xs[n:], [0] * n + t.zs[n:], [0] * n + t.rs[n:], False)
    for col in range(n):
        bit = 1 << col
        piv = next((n + i for i in range(col, n) if work.xs[n + i] & bit), None)
        if piv is None:
            raise ValueError("stabilizer group is not in graph form (singular X block)")
        h = n + col
        if piv != h:
            for arr in (work.xs, work.zs, work.rs):
                arr[h], arr[piv] = arr[piv], arr[h]
        for i in range(n, 2 * n):
            if i != h and work.xs[i] & bit:
                work._rowmult(i, h)
    zrows = work.zs[n:]
    for i, r in enumerate(zrows):
        if (r >> i) & 1:
            raise ValueError("stabilizer group is not in graph form (Y on a diagonal)")
    try:
        g = Graph(n, tuple(zrows))
    except GraphError as exc:
        raise ValueError(f"stabilizer group is not in graph form ({exc})") from None
    return g, tuple(work.rs[n:])


def apply_lc_unitary(t: StabilizerTableau, v: int) -> StabilizerTableau:
    """Conjugate by sqrt(K_v) = exp(-i pi/4 X_v) prod_{j in N(v)} exp(i pi/4 Z_j).

    ``t`` must stabilize a graph state; the neighbourhood of ``v`` is read from
    its graph form.  Returns a new tableau, ``t`` is left untouched.
    """
    if not 0 <= v < t.n:
        raise ValueError(f"vertex {v} out of range for n={t.n}")
    g, _ = tableau_to_graph(t)
    out = t.copy()
    vbit = 1 << v
    for i in range(2 * t.n):
        x, z = out.xs[i], out.zs[i]
        # exp(-i pi/4 X): X -> X, Z -> -Y, Y -> Z
        if z & vbit:
            if not x & vbit:
                out.rs[i] ^= 1
            x ^= vbit
        # exp(+i pi/4 Z): Z -> Z, X -> -Y, Y -> X
        for j in members_of(g.rows[v]):
            jb = 1 << j
            if x & jb:
                if not z & jb:
                    out.rs[i] ^= 1
                z ^= jb
        out.xs[i], out.zs[i] = x, z
        if i < t.n:
            out.rs[i] = 0
    return out
