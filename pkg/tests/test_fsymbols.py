import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fusioncheck.catalog import catalog_get
from fusioncheck.errors import MissingEntry, MissingGaugeEntry
from fusioncheck.fsymbols import (FSymbolTable, GaugeTransformation, apply_gauge_f,
                                  check_f_unitarity, check_pentagon, is_unitary_gauge)
from oracles import dense_F, pentagon_residual

PHI = (1 + np.sqrt(5)) / 2
T = "tau"


def test_trivial_pentagon_and_unitarity():
    F = catalog_get("trivial").F
    assert check_pentagon(F) == 0.0
    assert check_f_unitarity(F) == 0.0


def test_fibonacci_matrix_and_pentagon():
    F = catalog_get("fibonacci").F
    rows, cols, M = F.matrix(T, T, T, T)
    assert rows == cols == (0, 1)
    np.testing.assert_allclose(M, [[1 / PHI, PHI ** -0.5], [PHI ** -0.5, -1 / PHI]], atol=1e-15)
    assert check_pentagon(F) < 1e-12
    assert pentagon_residual(dense_F(F)) < 1e-12


def test_fibonacci_sign_flip_breaks_pentagon():
    F = catalog_get("fibonacci").F
    values = F.values.copy()
    values[F.ring.sextuple_pos[(1, 1, 1, 1, 1, 1)]] *= -1
    bad = FSymbolTable(F.ring, values)
    assert check_pentagon(bad) > 0.1
    assert check_pentagon(bad) == pytest.approx(pentagon_residual(dense_F(bad)), rel=1e-12)


def test_pentagon_agrees_with_dense_oracle(model, rng):
    F = model.F
    assert check_pentagon(F) < 1e-9
    noisy = FSymbolTable(F.ring, F.values * (1 + 0.1 * rng.normal(size=len(F.values))))
    assert check_pentagon(noisy) == pytest.approx(pentagon_residual(dense_F(noisy)), rel=1e-9, abs=1e-14)


def test_unitarity_examples():
    assert check_f_unitarity(catalog_get("fibonacci").F) < 1e-12
    yl = catalog_get("yang_lee").F
    assert yl[(T, T, T, T, "1", "1")] == pytest.approx(2 / (1 - np.sqrt(5)))
    assert check_f_unitarity(yl) >= 0.5
    assert not is_unitary_gauge(yl)


def test_missing_entry_is_named():
    ring = catalog_get("fibonacci").ring
    with pytest.raises(MissingEntry, match=r"\(tau,tau,tau,tau,1,1\)"):
        FSymbolTable.from_entries(ring, {(T, T, T, T, "1", T): 1.0})


def test_identity_gauge_is_noop(model):
    F = model.F
    assert np.array_equal(apply_gauge_f(F, GaugeTransformation.identity(F.ring)).values, F.values)


def test_fibonacci_sign_gauge_keeps_pentagon():
    F = catalog_get("fibonacci").F
    g = GaugeTransformation.from_entries(F.ring, {(T, T, "1"): 1.0, (T, T, T): -1.0})
    assert check_pentagon(apply_gauge_f(F, g)) < 1e-12


def test_gauge_round_trip(rng):
    F = catalog_get("fibonacci").F
    g = GaugeTransformation.random(F.ring, rng, unimodular=True)
    back = apply_gauge_f(apply_gauge_f(F, g), g.inverse())
    np.testing.assert_allclose(back.values, F.values, atol=1e-9)


def test_gauge_requires_every_triple():
    ring = catalog_get("fibonacci").ring
    with pytest.raises(MissingGaugeEntry):
        GaugeTransformation.from_entries(ring, {(T, T, "1"): 2.0})
    with pytest.raises(MissingGaugeEntry):
        GaugeTransformation(ring, np.ones(2))
    other = catalog_get("yang_lee").ring
    with pytest.raises(MissingGaugeEntry):
        apply_gauge_f(catalog_get("fibonacci").F, GaugeTransformation.identity(other))


def test_gauge_invariance_of_pentagon(model, rng):
    F = model.F
    base = check_pentagon(F)
    for _ in range(100):
        g = GaugeTransformation.random(F.ring, rng)
        assert abs(check_pentagon(apply_gauge_f(F, g)) - base) <= 1e-8


def test_unimodular_gauge_preserves_unitarity_verdict(model, rng):
    F = model.F
    verdict = is_unitary_gauge(F)
    for _ in range(100):
        g = GaugeTransformation.random(F.ring, rng, unimodular=True)
        assert is_unitary_gauge(apply_gauge_f(F, g)) == verdict


def test_unit_triviality_exact(model, rng):
    g = GaugeTransformation.random(model.ring, rng)
    for F in (model.F, apply_gauge_f(model.F, g)):
        for t, v in F.items():
            if 0 in t[:3]:
                assert v == 1


@settings(max_examples=50, deadline=None)
@given(st.sampled_from(["fibonacci", "ising", "z3_pointed", "yang_lee"]),
       st.integers(0, 2**32 - 1), st.booleans())
def test_pentagon_residual_is_gauge_invariant(name, seed, unimodular):
    F = catalog_get(name).F
    g = GaugeTransformation.random(F.ring, np.random.default_rng(seed), unimodular=unimodular)
    assert check_pentagon(apply_gauge_f(F, g)) <= 1e-9
    back = apply_gauge_f(apply_gauge_f(F, g), g.inverse())
    np.testing.assert_allclose(back.values, F.values, atol=1e-12)
