"""Bounds table for the standard graph families, checked against closed forms."""

from __future__ import annotations

from dataclasses import dataclass

from graphent.bounds import BoundsReport, entanglement_report
from graphent.capacity import achievable_rate
from graphent.graph import DEFAULT_MIS_BUDGET, build_family

DEFAULT_ROWS: list[tuple[str, dict]] = (
    [("cluster1d", {"n": n}) for n in range(4, 11)]
    + [("cluster2d", {"rows": r, "cols": c}) for r in range(2, 5) for c in range(r, 5)]
    + [("cluster3d", {"rows": 2, "cols": 2, "depth": 2})]
    + [("ghz_star", {"n": n}) for n in range(3, 9)]
    + [("ring", {"n": n}) for n in range(4, 9)]
    + [("steane7", {})]
)


def closed_form(family: str, n: int) -> tuple[int, int, int]:
    """Expected ``(|A|, E_low, E_high)`` for a family on n qubits."""
    if family.startswith("cluster"):
        return (n + 1) // 2, n // 2, n // 2
    if family == "ghz_star":
        return n - 1, 1, 1
    if family == "ring":
        return n // 2, n // 2, (n + 1) // 2
    if family == "steane7":
        return 4, 3, 3
    raise KeyError(family)


@dataclass(frozen=True)
class TableRow:
    family: str
    params: dict
    report: BoundsReport
    rate: int
    expected: tuple[int, int, int]

    @property
    def label(self) -> str:
        if not self.params:
            return self.family
        return f"{self.family}({','.join(str(v) for v in self.params.values())})"

    @property
    def matches(self) -> bool:
        r = self.report
        return (r.lower_log_N, r.E_low, r.E_high) == self.expected

    def to_dict(self) -> dict:
        r = self.report
        return {
            "graph": self.label,
            "n": r.n,
            "lower_N": f"2^{r.lower_log_N}",
            "upper_N": f"2^{r.upper_log_N}",
            "E": r.E_low if r.exact else None,
            "E_low": r.E_low,
            "E_high": r.E_high,
            "exact": r.exact,
            "C_low": self.rate,
            "C_high": r.n - r.E_low,
            "certified": r.certified,
            "matches_closed_form": self.matches,
        }


def table1(
    rows=None, *, budget: int = DEFAULT_MIS_BUDGET, seed: int = 0
) -> list[TableRow]:
    out = []
    for family, params in rows or DEFAULT_ROWS:
        g = build_family(family, **params)
        report = entanglement_report(g, budget=budget, seed=seed)
        out.append(TableRow(family, dict(params), report, achievable_rate(g, report),
                            closed_form(family, g.n)))
    return out
