"""Single-round LOCC discrimination of graph states by colouring.

Every Amber qubit (an independent set A) is measured in X and every other
qubit in Z.  Since K_i = X_i prod_{j in N(i)} Z_j and N(i) avoids A, the
product of the outcomes over {i} | N(i) is the K_i eigenvalue (-1)**k_i, so the
2**|A| states differing on the Amber bits are told apart with certainty.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from graphent.graph import Graph, GraphError, is_independent
from graphent.stabilizer import PauliString, as_index, generators_of, measure_pauli


class NotIndependentError(GraphError):
    pass


@dataclass(frozen=True)
class MeasurementPlan:
    x_qubits: frozenset[int]
    z_qubits: frozenset[int]
    parity_masks: dict[int, frozenset[int]]

    def order(self) -> list[tuple[int, str]]:
        """Amber X measurements first, then Z, each ascending by qubit."""
        return [(q, "X") for q in sorted(self.x_qubits)] + [(q, "Z") for q in sorted(self.z_qubits)]


@dataclass
class DiscriminationResult:
    recovered_bits: dict[int, int]
    trials: int = 1
    successes: int = 0
    trace: list[tuple[int, str, int]] = field(default_factory=list)

    @property
    def success_rate(self) -> float:
        return self.successes / self.trials if self.trials else 1.0

    def trace_lines(self) -> list[str]:
        lines = [f"{q} {basis} {outcome:+d}" for q, basis, outcome in self.trace]
        lines.append("recovered " + " ".join(f"{i}={b}" for i, b in sorted(self.recovered_bits.items())))
        return lines


def discrimination_protocol(g: Graph, a) -> MeasurementPlan:
    amber = frozenset(a)
    if not is_independent(g, amber):
        raise NotIndependentError(
            f"{sorted(amber)} is not independent: an Amber neighbour would need both X and Z"
        )
    rest = frozenset(range(g.n)) - amber
    masks = {i: frozenset({i}) | g.neighbours(i) for i in amber}
    return MeasurementPlan(amber, rest, masks)


def simulate_discrimination(g: Graph, a, k, seed) -> DiscriminationResult:
    """Run the protocol once on |G_k> and decode the Amber bits."""
    plan = discrimination_protocol(g, a)
    bits = as_index(k, g.n)
    rng = seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)
    t = generators_of(g, bits)
    outcome_bits = [0] * g.n
    trace = []
    for q, basis in plan.order():
        outcome, t = measure_pauli(t, PauliString.single(g.n, q, basis), rng)
        outcome_bits[q] = 0 if outcome == 1 else 1
        trace.append((q, basis, outcome))
    recovered = {i: sum(outcome_bits[j] for j in mask) % 2 for i, mask in plan.parity_masks.items()}
    ok = all(recovered[i] == bits[i] for i in recovered)
    return DiscriminationResult(recovered, 1, int(ok), trace)


def verify_perfect_discrimination(
    g: Graph, a, trials: int, seed: int = 0, *, randomize_others: bool = False
) -> float:
    """Fraction of ``trials`` random Amber labellings decoded exactly (should be 1.0).

    Non-Amber bits are 0 unless ``randomize_others`` is set.  Trial ``t`` draws
    from a generator seeded by ``(seed, t)``.
    """
    if trials < 1:
        raise ValueError("trials must be at least 1")
    amber = sorted(frozenset(a))
    discrimination_protocol(g, amber)
    successes = 0
    for trial in range(trials):
        rng = np.random.default_rng([seed, trial])
        k = rng.integers(0, 2, g.n) if randomize_others else np.zeros(g.n, dtype=int)
        for i in amber:
            k[i] = rng.integers(0, 2)
        successes += simulate_discrimination(g, amber, k, rng).successes
    return successes / trials
