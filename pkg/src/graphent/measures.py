"""Entanglement values: pure graph states, mixtures inside one Amber eigenspace,
two-graph mixtures, the closest separable state, and a numerical
geometric-measure oracle for small states.

All logarithms are base 2 and 0 log 0 = 0.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping

import numpy as np

from graphent.bounds import BoundsReport
from graphent.graph import Graph, is_independent, local_complement
from graphent.stabilizer import (
    ORACLE_CAP,
    PauliString,
    as_index,
    generators_of,
    overlap,
    sign_vector,
)

WEIGHT_TOLERANCE = 1e-9


class PreconditionError(ValueError):
    """The closed-form formulas do not apply to the given state or evidence."""


class EigenspaceError(PreconditionError):
    pass


class MixtureConditionError(PreconditionError):
    def __init__(self, failed: list[str]):
        self.failed = failed
        super().__init__("two-graph mixture conditions failed: " + ", ".join(failed))


@dataclass(frozen=True)
class MeasureValues:
    e_g: float | None = None
    e_r: float | None = None
    log_one_plus_r: float | None = None

    def to_dict(self) -> dict:
        return {"e_g": self.e_g, "e_r": self.e_r, "log_one_plus_r": self.log_one_plus_r}

    @classmethod
    def from_dict(cls, d: dict) -> "MeasureValues":
        return cls(d.get("e_g"), d.get("e_r"), d.get("log_one_plus_r"))


def entropy(probs) -> float:
    p = np.asarray([x for x in probs if x > 0], dtype=float)
    return float(-(p * np.log2(p)).sum()) if p.size else 0.0


def binary_entropy(p: float) -> float:
    return entropy([p, 1.0 - p])


def exact_pure_measures(report: BoundsReport) -> MeasureValues:
    if not report.exact:
        raise PreconditionError(
            f"bounds do not meet (E in [{report.E_low}, {report.E_high}]); no exact value"
        )
    e = float(report.E_low)
    return MeasureValues(e, e, e)


@dataclass(frozen=True)
class MixedGraphState:
    """Mixture of graph-state basis vectors sharing the Amber eigenvalues."""

    graph: Graph
    amber: frozenset[int]
    fixed_amber_bits: Mapping[int, int]
    weights: Mapping[tuple[int, ...], float]

    def __post_init__(self):
        g = self.graph
        if not is_independent(g, self.amber):
            raise EigenspaceError(f"Amber set {sorted(self.amber)} is not independent")
        if set(self.fixed_amber_bits) != set(self.amber):
            raise EigenspaceError("fixed_amber_bits must give one bit per Amber qubit")
        total = 0.0
        for k, lam in self.weights.items():
            if len(k) != g.n:
                raise EigenspaceError(f"index {k} has the wrong length")
            if lam < 0:
                raise EigenspaceError(f"negative weight {lam} on index {k}")
            for i in self.amber:
                if lam > 0 and k[i] != self.fixed_amber_bits[i]:
                    raise EigenspaceError(
                        f"index {''.join(map(str, k))} leaves the eigenspace: "
                        f"k_{i}={k[i]} but the Amber bit is fixed to {self.fixed_amber_bits[i]}"
                    )
            total += lam
        if abs(total - 1.0) > WEIGHT_TOLERANCE:
            raise EigenspaceError(f"weights sum to {total!r}, not 1")
        if len([w for w in self.weights.values() if w > 0]) > 2 ** (g.n - len(self.amber)):
            raise EigenspaceError("support exceeds the eigenspace dimension")

    @classmethod
    def from_weights(cls, graph: Graph, amber, weights: Mapping) -> "MixedGraphState":
        """Build from ``{index: weight}``; indices may be bit strings.  The
        Amber bits are read off the first supported index."""
        amber = frozenset(amber)
        w = {as_index(k, graph.n): float(v) for k, v in weights.items()}
        support = [k for k, v in w.items() if v > 0]
        if not support:
            raise EigenspaceError("no positive weights")
        fixed = {i: support[0][i] for i in amber}
        return cls(graph, amber, fixed, w)

    @property
    def probabilities(self) -> list[float]:
        return [w for w in self.weights.values() if w > 0]


def _blue_size(g: Graph, amber: frozenset[int], evidence: BoundsReport) -> int:
    if evidence.n != g.n:
        raise PreconditionError("evidence describes a graph of a different size")
    if not evidence.exact:
        raise PreconditionError("evidence is not exact: E_R = E_g = |B| is not established")
    if len(amber) != evidence.lower_log_N:
        raise PreconditionError(
            f"Amber set has {len(amber)} qubits but the evidence needs |A| = {evidence.lower_log_N}"
        )
    return g.n - len(amber)


def mixed_measures(m: MixedGraphState, evidence: BoundsReport) -> MeasureValues:
    """E_R = |B| - S(lambda), E_g = |B|, log2(1+R) = |B| + log2(max lambda)."""
    b = _blue_size(m.graph, m.amber, evidence)
    lam = m.probabilities
    return MeasureValues(
        e_g=float(b),
        e_r=b - entropy(lam),
        log_one_plus_r=b + math.log2(max(lam)),
    )


def mixed_robustness(m: MixedGraphState, evidence: BoundsReport) -> float:
    b = _blue_size(m.graph, m.amber, evidence)
    return 2.0**b * max(m.probabilities) - 1.0


def robustness_lower_bound(p0: float, r0: float) -> float:
    """p0 (1 + R(rho0)) - 1 for a component rho0 of weight p0; not clamped."""
    if not 0.0 <= p0 <= 1.0:
        raise ValueError(f"p0={p0} outside [0, 1]")
    if r0 < 0:
        raise ValueError(f"r0={r0} is negative")
    return p0 * (1.0 + r0) - 1.0


# --- closest separable state ---------------------------------------------------


@dataclass(frozen=True)
class ClosestSeparableState:
    """Equal mixture of the 2**|B| product states spanning one Amber eigenspace.

    Product state ``p`` has Blue qubit ``j`` in Z eigenstate ``z_signs[p][j]``
    and Amber qubit ``i`` in X eigenstate ``x_signs[p][i]``.
    """

    graph: Graph
    amber: frozenset[int]
    fixed_amber_bits: Mapping[int, int]
    z_signs: list[dict[int, int]] = field(repr=False)
    x_signs: list[dict[int, int]] = field(repr=False)

    def __len__(self) -> int:
        return len(self.z_signs)

    def stabilizers(self, p: int) -> list[PauliString]:
        """{(-1)**k_i K_i : i in A} with {+-Z_j : j not in A} for product state ``p``."""
        n = self.graph.n
        gens = generators_of(self.graph).generators
        out = []
        for i in sorted(self.amber):
            s = -1 if self.fixed_amber_bits[i] else 1
            out.append(PauliString(n, gens[i].x, gens[i].z, s))
        for j, s in sorted(self.z_signs[p].items()):
            out.append(PauliString(n, 0, 1 << j, s))
        return out

    def product_signs(self, p: int) -> np.ndarray:
        """Integer amplitudes of product state ``p`` scaled by 2**(|A|/2)."""
        vec = np.ones(1, dtype=np.int64)
        for q in range(self.graph.n):
            if q in self.amber:
                local = np.array([1, self.x_signs[p][q]], dtype=np.int64)
            else:
                local = np.array([1, 0] if self.z_signs[p][q] == 1 else [0, 1], dtype=np.int64)
            vec = np.kron(vec, local)
        return vec

    def product_vector(self, p: int) -> np.ndarray:
        return self.product_signs(p).astype(complex) / np.sqrt(2.0 ** len(self.amber))

    def density_matrix(self, cap: int = ORACLE_CAP) -> np.ndarray:
        if self.graph.n > cap:
            raise ValueError(f"dense oracle limited to {cap} qubits")
        dim = 1 << self.graph.n
        omega = np.zeros((dim, dim), dtype=complex)
        for p in range(len(self)):
            v = self.product_vector(p)
            omega += np.outer(v, v.conj())
        return omega / len(self)

    def exact_overlap(self, k=None) -> Fraction:
        """tr(|G_k><G_k| omega) in exact rational arithmetic."""
        n = self.graph.n
        g_signs = sign_vector(self.graph, k)
        total = Fraction(0)
        scale = 2 ** (n + len(self.amber))
        for p in range(len(self)):
            amp = int(np.dot(self.product_signs(p), g_signs))
            total += Fraction(amp * amp, scale)
        return total / len(self)


def closest_separable_state(
    g: Graph, a, fixed_amber_bits: Mapping[int, int], evidence: BoundsReport
) -> ClosestSeparableState:
    amber = frozenset(a)
    if not is_independent(g, amber):
        raise PreconditionError(f"Amber set {sorted(amber)} is not independent")
    if set(fixed_amber_bits) != set(amber):
        raise PreconditionError("fixed_amber_bits must give one bit per Amber qubit")
    _blue_size(g, amber, evidence)
    blue = [q for q in range(g.n) if q not in amber]
    z_signs, x_signs = [], []
    for pattern in itertools.product((1, -1), repeat=len(blue)):
        zs = dict(zip(blue, pattern))
        xs = {}
        for i in amber:
            s = -1 if fixed_amber_bits[i] else 1
            for j in g.neighbours(i):
                s *= zs[j]
            xs[i] = s
        z_signs.append(zs)
        x_signs.append(xs)
    return ClosestSeparableState(g, amber, dict(fixed_amber_bits), z_signs, x_signs)


# --- geometric measure oracle ----------------------------------------------------


@dataclass(frozen=True)
class GeometricResult:
    value: float
    overlap: float
    agreeing_restarts: int
    restarts: int

    @property
    def suspect(self) -> bool:
        """Only one restart reached the best overlap, so a better optimum may exist."""
        return self.agreeing_restarts < 2


def _contract_others(psi: np.ndarray, phis: list[np.ndarray], j: int) -> np.ndarray:
    t = psi
    # contract from the last axis down so axis indices stay valid
    for q in range(len(phis) - 1, -1, -1):
        if q != j:
            t = np.tensordot(t, phis[q].conj(), axes=([q], [0]))
    return t


def geometric_search(
    state: np.ndarray,
    restarts: int = 32,
    tolerance: float = 1e-12,
    seed: int = 0,
    max_sweeps: int = 500,
    cap: int = ORACLE_CAP,
) -> GeometricResult:
    """Maximise |<phi_1 ... phi_n|psi>| by single-qubit coordinate ascent.

    Each step replaces one factor by the normalised contraction of ``psi``
    with all other factors, which is the exact optimum for that qubit.
    """
    psi = np.asarray(state, dtype=complex)
    n = psi.size.bit_length() - 1
    if 1 << n != psi.size:
        raise ValueError("state length is not a power of two")
    if n > cap:
        raise ValueError(f"dense oracle limited to {cap} qubits, got {n}")
    if abs(np.linalg.norm(psi) - 1.0) > 1e-9:
        raise ValueError("state is not normalised")
    tensor = psi.reshape((2,) * n) if n else psi.reshape(())
    rng = np.random.default_rng(seed)
    results = []
    for _ in range(restarts):
        phis = []
        for _q in range(n):
            v = rng.normal(size=2) + 1j * rng.normal(size=2)
            phis.append(v / np.linalg.norm(v))
        best = 0.0
        for _sweep in range(max_sweeps):
            for j in range(n):
                v = _contract_others(tensor, phis, j)
                norm = np.linalg.norm(v)
                if norm > 0:
                    phis[j] = v / norm
            current = float(abs(_contract_others(tensor, phis, -1))) if n else float(abs(tensor))
            if current - best < tolerance:
                best = max(best, current)
                break
            best = current
        results.append(best)
    top = max(results)
    agreeing = sum(1 for r in results if top - r <= 1e-6)
    return GeometricResult(-math.log2(top * top), top, agreeing, restarts)


def geometric_oracle(
    state: np.ndarray, restarts: int = 32, tolerance: float = 1e-12, seed: int = 0
) -> float:
    """-log2 of the best product-state fidelity found: an upper bound on E_g that
    the restarts drive down to it in practice."""
    return geometric_search(state, restarts, tolerance, seed).value


# --- two-graph mixtures ------------------------------------------------------------


def two_graph_mixture_measures(
    g: Graph,
    g_prime: Graph,
    k,
    u: float,
    evidence: BoundsReport,
    evidence_prime: BoundsReport | None = None,
) -> MeasureValues:
    """E_g and E_R of u|G_k><G_k| + (1-u)|G'_k><G'_k|.

    The Amber set is ``evidence.witness_set``.  ``evidence_prime`` may be
    omitted when ``g_prime`` equals ``g`` or is its local complement at an
    Amber vertex, since local unitaries leave the entanglement unchanged.
    Robustness is not derived for these mixtures and is left null.
    """
    if not 0.0 <= u <= 1.0:
        raise ValueError(f"u={u} outside [0, 1]")
    amber = evidence.witness_set
    failed = []
    if g.n != g_prime.n:
        raise MixtureConditionError(["a_same_qubit_count"])
    bits = as_index(k, g.n)

    if evidence_prime is None and (
        g_prime == g or any(local_complement(g, v) == g_prime for v in amber)
    ):
        evidence_prime = evidence
    exact_ok = (
        evidence_prime is not None
        and evidence.n == g.n
        and evidence_prime.n == g_prime.n
        and evidence.exact
        and evidence_prime.exact
        and len(amber) == evidence.lower_log_N
        and evidence.E_low == g.n - len(amber)
        and evidence_prime.E_low == evidence.E_low
    )
    if not exact_ok:
        failed.append("b_exact_with_same_blue_size")
    if not (is_independent(g, amber) and is_independent(g_prime, amber)):
        failed.append("c_same_amber_eigenspace")
    if any(g.rows[i] != g_prime.rows[i] for i in amber):
        failed.append("d_amber_generators_unchanged")
    if failed:
        raise MixtureConditionError(failed)

    b = g.n - len(amber)
    c = abs(overlap(g, bits, g_prime, bits))
    disc = max(0.0, 1.0 - 4.0 * u * (1.0 - u) * (1.0 - c * c))
    root = math.sqrt(disc)
    eig = [(1 + root) / 2, (1 - root) / 2]
    return MeasureValues(e_g=float(b), e_r=b - entropy(eig), log_one_plus_r=None)
