import math

import numpy as np
import pytest

from conftest import SMALL
from mtcgauge import catalog
from mtcgauge.errors import GaugingError
from mtcgauge.gauging import (GaugedLabel, GaugingOptions, Kind, bantay_P, closed_form_fusion,
                              enumerate_gauged_labels, gauge_and_verify, gauged_label_names,
                              gauged_modular_data, gauged_s_and_twists)
from mtcgauge.modular_data import validate
from mtcgauge.numerics import unitarity_defect
from mtcgauge.verlinde import fusion_tensor

TORIC_S = np.array([[1, 1, 1, 1], [1, 1, -1, -1], [1, -1, 1, -1], [1, -1, -1, 1]])


def test_label_counts(trivial, fib, ising):
    assert gauged_label_names(trivial) == ["(1,+)", "(1,-)", "(^1,+)", "(^1,-)"]
    assert len(enumerate_gauged_labels(fib)) == 9
    assert len(enumerate_gauged_labels(ising)) == 15
    for N in (3, 5, 7):
        assert len(enumerate_gauged_labels(catalog.pointed_zn(N))) == N * (N - 1) // 2 + 4 * N


def test_label_validation():
    with pytest.raises(ValueError):
        GaugedLabel(Kind.PAIR, 2, 1)
    with pytest.raises(ValueError):
        GaugedLabel(Kind.DIAG, 0, None, 0)
    assert GaugedLabel.pair(3, 1) == GaugedLabel(Kind.PAIR, 1, 3)


def test_gauged_trivial_is_toric_code(trivial):
    g = gauged_modular_data(trivial, GaugingOptions(eta_sqrt_sign=1))
    assert g.rank == 4
    assert np.array_equal(g.s_unnorm, TORIC_S)
    assert np.array_equal(g.twists, [1, 1, 1, -1])
    tc = catalog.named_entry("toric_code_expected")
    assert np.array_equal(g.s_unnorm, tc.s_unnorm)


def test_quantum_dimensions_by_kind(fib):
    # Diag (X,e): d_X^2; Pair (X,Y): 2 d_X d_Y; Twisted (^X,e): delta d_X
    g = gauged_modular_data(fib)
    d, delta = fib.derived.qdims, fib.derived.delta
    for lab, dim in zip(enumerate_gauged_labels(fib), g.derived.qdims):
        if lab.kind is Kind.DIAG:
            assert dim == pytest.approx(d[lab.first] ** 2)
        elif lab.kind is Kind.PAIR:
            assert dim == pytest.approx(2 * d[lab.first] * d[lab.second])
        else:
            assert dim == pytest.approx(delta * d[lab.first])


def test_fibonacci_global_dimension(fib):
    g = gauged_modular_data(fib)
    assert g.rank == 9
    mu = fib.derived.global_dim
    assert g.derived.global_dim == pytest.approx(4 * mu ** 2, rel=1e-12)
    assert g.derived.global_dim == pytest.approx(52.3607, abs=1e-4)


def test_unit_row_at_twisted(any_theory):
    s, _ = gauged_s_and_twists(any_theory)
    delta, d = any_theory.derived.delta, any_theory.derived.qdims
    for i, lab in enumerate(enumerate_gauged_labels(any_theory)):
        if lab.kind is Kind.TWISTED:
            assert s[0, i] == pytest.approx(delta * d[lab.first], abs=1e-12)


@pytest.mark.parametrize("key", ["semion", "fibonacci", "ising", "pointed_z3"])
def test_eta_sqrt_sign_covariance(key):
    md = catalog.named_entry(key)
    s_p, t_p = gauged_s_and_twists(md, GaugingOptions(eta_sqrt_sign=1))
    s_m, t_m = gauged_s_and_twists(md, GaugingOptions(eta_sqrt_sign=-1))
    tw = np.array([lab.kind is Kind.TWISTED for lab in enumerate_gauged_labels(md)])
    assert np.allclose(t_m[tw], -t_p[tw])
    assert np.array_equal(t_m[~tw], t_p[~tw])
    assert np.array_equal(s_m, s_p)
    assert validate(gauged_modular_data(md, GaugingOptions(eta_sqrt_sign=-1))).passed


def test_delta_squared_variant_breaks_unitarity(fib):
    mu2 = 2 * fib.derived.global_dim
    good, _ = gauged_s_and_twists(fib, mixed_delta_power=1)
    bad, _ = gauged_s_and_twists(fib, mixed_delta_power=2)
    assert unitarity_defect(good / mu2) < 1e-8
    assert unitarity_defect(bad / mu2) > 0.1


def test_closed_form_fibonacci_example(fib):
    n = closed_form_fusion(fib)
    labels = gauged_label_names(fib)
    a, b = labels.index("(1,tau)"), labels.index("(tau,+)")
    # N_{(1 tau),(1 tau),(tau,+)} = N_{1 1 tau} N_{tau tau tau} + N_{1 tau tau} N_{tau 1 tau} = 1
    assert n.lowered()[a, a, b] == 1


def test_toric_code_fusion(trivial):
    n = closed_form_fusion(trivial).coeffs
    names = gauged_label_names(trivial)
    one_p, one_m, hat_p, hat_m = (names.index(x) for x in ("(1,+)", "(1,-)", "(^1,+)", "(^1,-)"))
    assert n[hat_p, hat_p, one_p] == 1 and n[hat_p, hat_p].sum() == 1
    assert n[hat_p, hat_m, one_m] == 1 and n[hat_p, hat_m].sum() == 1


@pytest.mark.parametrize("key", SMALL)
def test_unit_law(key):
    n = closed_form_fusion(catalog.named_entry(key))
    r = len(n.dual)
    assert np.array_equal(n.coeffs[0], np.eye(r, dtype=int))


@pytest.mark.parametrize("key", SMALL)
def test_closed_form_equals_verlinde(key):
    md = catalog.named_entry(key)
    closed = closed_form_fusion(md)
    verl = fusion_tensor(gauged_modular_data(md))
    assert closed == verl


def test_bantay_P_examples(trivial, semion, fib, any_theory):
    assert np.allclose(bantay_P(trivial), [[1]])
    p = bantay_P(semion)
    assert np.allclose(p @ p, semion.dual_matrix())
    assert np.allclose(p, [[0, 1], [1, 0]])
    # observed property, not a theorem: Fibonacci P is real
    assert np.abs(bantay_P(fib).imag).max() < 1e-9
    pa = bantay_P(any_theory)
    assert np.allclose(pa, pa.T)
    assert unitarity_defect(pa) < 1e-9


@pytest.mark.parametrize("key", SMALL)
def test_gauge_and_verify(key):
    md = catalog.named_entry(key)
    g, rep = gauge_and_verify(md)
    assert rep.passed, str(rep)
    r = md.rank
    assert g.rank == r * (r - 1) // 2 + 4 * r


def test_gauged_z3_rank():
    g, rep = gauge_and_verify(catalog.named_entry("pointed_z3"))
    assert g.rank == 15 and rep.passed


def test_double_gauging(trivial):
    once = gauged_modular_data(trivial)
    twice, rep = gauge_and_verify(once, GaugingOptions(tol=1e-8))
    assert twice.rank == 22
    assert validate(twice, 1e-8).passed
    assert rep.passed


def test_gauging_non_modular_input_names_block(fib):
    bad = fib.replace(twists=[1, 1])
    with pytest.raises(GaugingError) as err:
        gauged_modular_data(bad)
    assert "/" in err.value.block


def test_sqrt_twist_override_changes_twisted_sector(semion):
    # the other root on the nontrivial label is still a valid family
    alt = GaugingOptions(sqrt_twists=(1, -np.exp(1j * math.pi / 4)))
    g = gauged_modular_data(semion, alt)
    assert validate(g).passed
