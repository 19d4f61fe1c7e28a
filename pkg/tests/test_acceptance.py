"""End-to-end acceptance checks, one test per criterion."""

import itertools
import math
import time
from fractions import Fraction

import numpy as np

from conftest import bipartitions, random_graph, record_acceptance
from graphent.bounds import entanglement_report
from graphent.capacity import (
    achievable_rate,
    capacity_bound,
    colouring_ensemble,
    povm_constraint_check,
    povm_slack,
)
from graphent.graph import Graph, build_family, disjoint_union, local_complement
from graphent.locc import simulate_discrimination, verify_perfect_discrimination
from graphent.measures import (
    MixedGraphState,
    closest_separable_state,
    geometric_oracle,
    mixed_measures,
    mixed_robustness,
)
from graphent.stabilizer import (
    Bipartition,
    apply_lc_unitary,
    cut_rank,
    generators_of,
    schmidt_rank_exponent,
    statevector,
    tableau_to_graph,
)


def family_suite(max_n):
    """Every standard family member with at most ``max_n`` vertices."""
    out = []
    for n in range(1, max_n + 1):
        out.append(("cluster1d", {"n": n}))
        out.append(("ghz_star", {"n": n}))
        out.append(("ghz_complete", {"n": n}))
        if n >= 3:
            out.append(("ring", {"n": n}))
    for r in range(2, max_n + 1):
        for c in range(r, max_n // r + 1):
            out.append(("cluster2d", {"rows": r, "cols": c}))
    for d in range(2, max_n + 1):
        if 4 * d <= max_n:
            out.append(("cluster3d", {"rows": 2, "cols": 2, "depth": d}))
    if max_n >= 7:
        out.append(("steane7", {}))
    return [(name, params, build_family(name, **params)) for name, params in out]


def exact_suite(max_n):
    """Families whose bounds meet: everything but odd rings and complete graphs."""
    return [
        (name, params, g)
        for name, params, g in family_suite(max_n)
        if name != "ghz_complete" and not (name == "ring" and g.n % 2)
    ]


def label(name, params):
    return f"{name}({','.join(map(str, params.values()))})"


def test_1_table_reproduction():
    start = time.perf_counter()
    failures = []

    def check(name, params, E=None, interval=None, A=None, C=None):
        g = build_family(name, **params)
        r = entanglement_report(g)
        got_interval = (r.E_low, r.E_high)
        ok = r.certified
        if E is not None:
            ok &= r.exact and r.E_low == E and r.lower_log_N == r.upper_log_N
        if interval is not None:
            ok &= got_interval == interval and not r.exact
        if A is not None:
            ok &= r.lower_log_N == A
        if C is not None:
            ok &= capacity_bound(colouring_ensemble(g, r)) == C == achievable_rate(g, r)
        if not ok:
            failures.append(f"{label(name, params)}: |A|={r.lower_log_N} E in {got_interval}")

    for n in range(2, 13):
        check("cluster1d", {"n": n}, E=n // 2)
    for n in range(3, 11):
        check("ghz_star", {"n": n}, E=1)
    for n in range(4, 13, 2):
        check("ring", {"n": n}, E=n // 2)
    for n in range(5, 12, 2):
        check("ring", {"n": n}, interval=(n // 2, (n + 1) // 2))
    for r in range(2, 6):
        for c in range(r, 6):
            check("cluster2d", {"rows": r, "cols": c}, E=r * c // 2)
    check("cluster3d", {"rows": 2, "cols": 2, "depth": 2}, E=4)
    check("steane7", {}, E=3, A=4, C=4)
    elapsed = time.perf_counter() - start
    ok = not failures and elapsed < 60
    record_acceptance(1, ok, f"family bounds table exact, {elapsed:.2f} s (< 60 s) {failures}")
    assert ok


def test_2_oracle_equivalence():
    rng = np.random.default_rng(2024)
    graphs = [g for _, _, g in family_suite(8)]
    graphs += [random_graph(rng, int(rng.integers(1, 9)), float(rng.uniform(0.1, 0.9)))
               for _ in range(200)]
    checked = mismatches = 0
    for g in graphs:
        if g.n < 2:
            continue
        psi = statevector(g)
        for side in bipartitions(g.n):
            checked += 1
            if cut_rank(g, Bipartition.of(g.n, side)) != schmidt_rank_exponent(psi, g.n, side):
                mismatches += 1
    ok = mismatches == 0
    record_acceptance(2, ok, f"{len(graphs)} graphs, {checked} cuts, {mismatches} mismatches")
    assert ok


def test_3_lc_invariance():
    rng = np.random.default_rng(33)
    checked = mismatches = 0
    for _ in range(100):
        n = int(rng.integers(2, 11))
        g = random_graph(rng, n, float(rng.uniform(0.2, 0.8)))
        h = g
        t = generators_of(g)
        for v in rng.integers(0, n, size=3):
            h = local_complement(h, int(v))
            t = apply_lc_unitary(t, int(v))
        if tableau_to_graph(t)[0] != h:
            mismatches += 1
        for _ in range(20):
            size = int(rng.integers(1, n))
            side = rng.choice(n, size=size, replace=False).tolist()
            p = Bipartition.of(n, side)
            checked += 1
            if cut_rank(g, p) != cut_rank(h, p):
                mismatches += 1
    ok = mismatches == 0
    record_acceptance(3, ok, f"100 graphs x 3 LC steps, {checked} cuts, {mismatches} mismatches")
    assert ok


def test_4_geometric_oracle():
    cases = (
        [("ghz_star", {"n": n}) for n in range(3, 9)]
        + [("cluster1d", {"n": n}) for n in range(2, 11)]
        + [("cluster2d", {"rows": r, "cols": c}) for r, c in [(2, 2), (2, 3), (2, 4), (3, 3)]]
        + [("ring", {"n": n}) for n in (4, 6, 8)]
    )
    start = time.perf_counter()
    worst = 0.0
    bad = []
    for name, params in cases:
        g = build_family(name, **params)
        exact = g.n - entanglement_report(g).lower_log_N
        err = abs(geometric_oracle(statevector(g)) - exact)
        worst = max(worst, err)
        if err > 1e-3:
            bad.append(label(name, params))
    elapsed = time.perf_counter() - start
    ok = not bad and elapsed < 300
    record_acceptance(4, ok, f"{len(cases)} states, max |error| {worst:.2e}, {elapsed:.1f} s {bad}")
    assert ok


def test_5_discrimination():
    bad = []
    suite = exact_suite(16)
    trials = 1000
    z_bad = []
    for name, params, g in suite:
        r = entanglement_report(g)
        assert r.exact
        if verify_perfect_discrimination(g, r.witness_set, trials, seed=5) != 1.0:
            bad.append(label(name, params))
        amber = sorted(r.witness_set)
        blue = [q for q in range(g.n) if q not in r.witness_set]
        if not blue:
            continue
        ones = dict.fromkeys(blue, 0)
        sample_rng = np.random.default_rng(55)
        k = [0] * g.n
        for i in amber:
            k[i] = int(sample_rng.integers(2))
        for t in range(trials):
            res = simulate_discrimination(g, amber, k, np.random.default_rng([55, t]))
            if res.recovered_bits != {i: k[i] for i in amber}:
                bad.append(label(name, params))
                break
            for q, basis, out in res.trace:
                if basis == "Z":
                    ones[q] += out == -1
        sigma = math.sqrt(trials * 0.25)
        for q, c in ones.items():
            if abs(c - trials / 2) > 5 * sigma:
                z_bad.append(f"{label(name, params)} qubit {q}: {c}/{trials}")
    ok = not bad and not z_bad
    record_acceptance(
        5, ok,
        f"{len(suite)} exact graphs, {trials} trials each, rate 1.0, Z outcomes in 5 sigma {bad} {z_bad}",
    )
    assert ok


def test_6_mixed_formulas():
    edge = Graph.from_edges(2, [(0, 1)])
    rep = entanglement_report(edge)
    m = MixedGraphState.from_weights(edge, {0}, {"00": 0.75, "01": 0.25})
    v = mixed_measures(m, rep)
    h = -(0.75 * math.log2(0.75) + 0.25 * math.log2(0.25))
    bell_ok = v.e_g == 1 and abs(v.e_r - (1 - h)) < 1e-9 and mixed_robustness(m, rep) == 0.5

    overlap_bad = []
    suite = exact_suite(10)
    for name, params, g in suite:
        r = entanglement_report(g)
        blue = g.n - r.lower_log_N
        fixed = {i: 0 for i in r.witness_set}
        omega = closest_separable_state(g, r.witness_set, fixed, r)
        exact = omega.exact_overlap()
        psi = statevector(g)
        dense = float(np.real(psi.conj() @ omega.density_matrix() @ psi))
        if exact != Fraction(1, 2**blue) or abs(dense - 2.0**-blue) > 1e-12:
            overlap_bad.append(label(name, params))
    ok = bell_ok and not overlap_bad
    record_acceptance(
        6, ok,
        f"Bell mixture E_g=1 E_R={v.e_r:.12f} R=0.5; tr(rho omega)=2^-|B| on {len(suite)} graphs {overlap_bad}",
    )
    assert ok


def test_7_capacity_consistency():
    bad = []
    suite = exact_suite(16) + [("cluster2d", {"rows": 5, "cols": 5},
                                build_family("cluster2d", rows=5, cols=5))]
    for name, params, g in suite:
        r = entanglement_report(g)
        ens = colouring_ensemble(g, r)
        probs = [1.0] * len(ens.entries)
        e_gs = [e.e_g for e in ens.entries]
        if not (povm_constraint_check(probs, e_gs, g.n) and povm_slack(probs, e_gs, g.n) == 0):
            bad.append(f"{label(name, params)} slack")
        if achievable_rate(g, r) != capacity_bound(ens):
            bad.append(f"{label(name, params)} rate")
    for n in range(5, 12, 2):
        g = build_family("ring", n=n)
        r = entanglement_report(g)
        if not achievable_rate(g, r) < capacity_bound(colouring_ensemble(g, r)):
            bad.append(f"ring({n}) gap")
    ok = not bad
    record_acceptance(7, ok, f"{len(suite)} exact graphs tight, odd rings 5..11 strictly below {bad}")
    assert ok


def test_8_additivity():
    pool = [(label(name, params), g) for name, params, g in exact_suite(12) if g.n >= 2]
    reports = {name: entanglement_report(g) for name, g in pool}
    bad = []
    pairs = 0
    for (n1, g1), (n2, g2) in itertools.combinations_with_replacement(pool, 2):
        if g1.n + g2.n > 16:
            continue
        pairs += 1
        r1, r2 = reports[n1], reports[n2]
        r = entanglement_report(disjoint_union(g1, g2))
        if not (
            r.exact
            and r.entanglement == r1.entanglement + r2.entanglement
            and r.lower_log_N == r1.lower_log_N + r2.lower_log_N
            and r.E_low == r1.E_low + r2.E_low
        ):
            bad.append(f"{n1}+{n2}")
    ok = not bad
    record_acceptance(8, ok, f"{pairs} disjoint unions additive in E, |A| and max cut-rank {bad[:5]}")
    assert ok
