"""Classical capacity bounds for LOCC decoding of graph-state ensembles.

A separable POVM element M_i = s_i omega_i succeeds with p(i|i) <= s_i 2**-E_g,
and the s_i sum to 2**n, so sum_i p(i|i) 2**E_g(rho_i) <= 2**n.  With E_g
additive over letters this caps the rate at n - mean(E_g).
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational
from typing import Sequence

from graphent.bounds import BoundsReport
from graphent.graph import Graph

MAX_ENUMERATED_AMBER = 20


class NonAdditiveError(ValueError):
    pass


@dataclass(frozen=True)
class EnsembleEntry:
    state_id: str
    e_g: float
    additive: bool = False

    def __post_init__(self):
        if self.e_g < 0:
            raise ValueError(f"{self.state_id}: E_g must be non-negative")


@dataclass(frozen=True)
class Ensemble:
    n: int
    entries: tuple[EnsembleEntry, ...]

    @property
    def mean_e_g(self) -> float:
        if not self.entries:
            raise ValueError("empty ensemble has no mean entanglement")
        return sum(e.e_g for e in self.entries) / len(self.entries)

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "entries": [
                {"id": e.state_id, "e_g": e.e_g, "additive": e.additive} for e in self.entries
            ],
        }

    @classmethod
    def from_dict(cls, data: dict, assume_additive: bool = False) -> "Ensemble":
        """Entries without an explicit ``additive: true`` are treated as
        non-additive unless ``assume_additive`` overrides them."""
        try:
            n = int(data["n"])
            entries = tuple(
                EnsembleEntry(
                    str(e.get("id", i)),
                    float(e["e_g"]),
                    bool(e.get("additive", False)) or assume_additive,
                )
                for i, e in enumerate(data["entries"])
            )
        except (KeyError, TypeError) as exc:
            raise ValueError(f"bad ensemble record: {exc}") from None
        return cls(n, entries)

    @classmethod
    def from_json(cls, text: str, assume_additive: bool = False) -> "Ensemble":
        return cls.from_dict(json.loads(text), assume_additive)


def _exact(x):
    if isinstance(x, (Rational, float)) and not isinstance(x, bool):
        return Fraction(x)
    raise TypeError(f"expected a real number, got {x!r}")


def povm_slack(success_probs: Sequence[float], e_g_values: Sequence[float], n: int):
    """2**n - sum_i p(i|i) 2**E_g_i, exact when every E_g is an integer."""
    if len(success_probs) != len(e_g_values):
        raise ValueError("success_probs and e_g_values differ in length")
    total = Fraction(0)
    inexact = 0.0
    for p, e in zip(success_probs, e_g_values):
        fp = _exact(p)
        if not 0 <= fp <= 1:
            raise ValueError(f"probability {p} outside [0, 1]")
        fe = _exact(e)
        if fe.denominator == 1:
            total += fp * Fraction(2) ** int(fe)
        else:
            inexact += float(fp) * 2.0 ** float(fe)
    slack = Fraction(2) ** n - total
    return slack if inexact == 0.0 else float(slack) - inexact


def povm_constraint_check(success_probs: Sequence[float], e_g_values: Sequence[float], n: int) -> bool:
    return povm_slack(success_probs, e_g_values, n) >= 0


def capacity_bound(ens: Ensemble) -> float:
    bad = [e.state_id for e in ens.entries if not e.additive]
    if bad:
        raise NonAdditiveError(
            f"entries {bad[:5]}{'...' if len(bad) > 5 else ''} are not known to have additive E_g; "
            "the geometric measure is not additive in general, so the rate bound would not follow"
        )
    return ens.n - ens.mean_e_g


def finite_blocklength_bound(L: int, epsilon: float, n: int, mean_e_g: float) -> float:
    """log2 N(L) / L <= n - mean E_g - log2(1 - epsilon) / L."""
    if L < 1:
        raise ValueError("blocklength L must be at least 1")
    if not 0.0 <= epsilon < 1.0:
        raise ValueError(f"epsilon={epsilon} must lie in [0, 1)")
    return n - mean_e_g - math.log2(1.0 - epsilon) / L


def achievable_rate(g: Graph, report: BoundsReport) -> int:
    """Bits per letter carried by the Amber labels and read out by the colouring protocol."""
    if report.n != g.n:
        raise ValueError("report describes a graph of a different size")
    return report.lower_log_N


def colouring_ensemble(g: Graph, report: BoundsReport) -> Ensemble:
    """The 2**|A| basis states labelled by the Amber bits (other bits zero).

    Exact graphs carry E_g = n - |A|.  Otherwise each entry holds the cut-rank
    E_low, a lower bound on E_g that is additive under tensor products (it is a
    bipartite pure-state quantity), so the resulting rate bound stays valid.
    """
    if report.n != g.n:
        raise ValueError("report describes a graph of a different size")
    amber = sorted(report.witness_set)
    if len(amber) > MAX_ENUMERATED_AMBER:
        raise ValueError(f"refusing to enumerate 2**{len(amber)} ensemble states")
    e = report.E_low
    entries = []
    for code in range(1 << len(amber)):
        bits = ["0"] * g.n
        for pos, q in enumerate(amber):
            bits[q] = str((code >> pos) & 1)
        entries.append(EnsembleEntry("".join(bits), float(e), True))
    return Ensemble(g.n, tuple(entries))


def rate_table(n: int, mean_e_g: float, epsilons: Sequence[float], lengths: Sequence[int]) -> list[dict]:
    return [
        {"L": L, "epsilon": eps, "rate_bound": finite_blocklength_bound(L, eps, n, mean_e_g)}
        for eps in epsilons
        for L in lengths
    ]
