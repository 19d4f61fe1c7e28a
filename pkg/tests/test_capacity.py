from fractions import Fraction

import pytest

from graphent.bounds import entanglement_report
from graphent.capacity import (
    Ensemble,
    EnsembleEntry,
    NonAdditiveError,
    achievable_rate,
    capacity_bound,
    colouring_ensemble,
    finite_blocklength_bound,
    povm_constraint_check,
    povm_slack,
    rate_table,
)
from graphent.graph import Graph, build_family, ring


def test_povm_examples():
    assert povm_constraint_check([1.0] * 8, [1] * 8, 4)
    assert povm_slack([1.0] * 8, [1] * 8, 4) == 0
    assert not povm_constraint_check([1.0] * 9, [1] * 9, 4)
    assert povm_constraint_check([], [], 3)


def test_povm_exact_for_dyadic():
    assert povm_slack([0.5, 0.25], [2, 3], 3) == Fraction(8 - 2 - 2)


def test_povm_bad_input():
    with pytest.raises(ValueError):
        povm_slack([1.0], [1, 2], 2)
    with pytest.raises(ValueError):
        povm_slack([1.5], [1], 2)


def test_capacity_examples():
    for n in (4, 7, 10):
        g = build_family("cluster1d", n=n)
        assert capacity_bound(colouring_ensemble(g, entanglement_report(g))) == n - n // 2
    g = build_family("ghz_star", n=6)
    assert capacity_bound(colouring_ensemble(g, entanglement_report(g))) == 5
    product = Ensemble(3, tuple(EnsembleEntry(str(i), 0.0, True) for i in range(4)))
    assert capacity_bound(product) == 3


def test_non_additive_refused():
    ens = Ensemble.from_dict({"n": 2, "entries": [{"id": "a", "e_g": 1.0}]})
    with pytest.raises(NonAdditiveError):
        capacity_bound(ens)
    ok = Ensemble.from_dict({"n": 2, "entries": [{"id": "a", "e_g": 1.0}]}, assume_additive=True)
    assert capacity_bound(ok) == 1.0


def test_ensemble_json_roundtrip():
    ens = Ensemble(2, (EnsembleEntry("x", 1.0, True), EnsembleEntry("y", 0.0, False)))
    assert Ensemble.from_dict(ens.to_dict()) == ens


def test_negative_e_g():
    with pytest.raises(ValueError):
        EnsembleEntry("bad", -1.0)


def test_finite_blocklength():
    assert finite_blocklength_bound(1, 0.5, 2, 1.0) == 2.0
    assert finite_blocklength_bound(7, 0.0, 5, 2.0) == 3.0
    vals = [finite_blocklength_bound(L, 0.1, 4, 2.0) for L in (1, 10, 100)]
    assert vals[0] > vals[1] > vals[2] > 2.0
    with pytest.raises(ValueError):
        finite_blocklength_bound(1, 1.0, 2, 1.0)
    with pytest.raises(ValueError):
        finite_blocklength_bound(0, 0.1, 2, 1.0)


def test_rate_table_shape():
    rows = rate_table(4, 2.0, [0.0, 0.1], [1, 10])
    assert len(rows) == 4 and rows[0] == {"L": 1, "epsilon": 0.0, "rate_bound": 2.0}


def test_achievable_rates():
    g = build_family("steane7")
    assert achievable_rate(g, entanglement_report(g)) == 4
    g = build_family("cluster2d", rows=5, cols=5)
    r = entanglement_report(g)
    assert achievable_rate(g, r) == 13 == 25 - r.entanglement
    g = ring(5)
    r = entanglement_report(g)
    assert achievable_rate(g, r) == 2 < capacity_bound(colouring_ensemble(g, r)) == 3


def test_report_size_mismatch():
    with pytest.raises(ValueError):
        achievable_rate(ring(4), entanglement_report(Graph.empty(2)))
