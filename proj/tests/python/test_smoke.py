import math

import pytest

import expbern


def test_fundamental_function_trig():
    lam = expbern.EigenvalueMultiset([0, 1j, -1j])
    phi = expbern.fundamental_function(lam)
    for x in [0.0, 0.5, math.pi, 2.5]:
        assert phi.eval(x) == pytest.approx(1.0 - math.cos(x), abs=1e-12)
    assert phi.is_real_valued()


def test_pair_test_window():
    lam = expbern.EigenvalueMultiset([0, 1j, -1j])
    diag = expbern.chebyshev_interval_test(lam, 0.0, 3.0)
    assert diag.pair_ok
    assert diag.interval_ok is True
    assert diag.window_bound == pytest.approx(math.pi)
    assert diag.window_certificate()


def test_two_point_operator():
    lam = expbern.EigenvalueMultiset([0, 1])
    op = expbern.build_operator(lam, 0.0, 1.0, 0, 1)
    assert op.nodes == pytest.approx([0.0, 1.0])
    assert op.weights == pytest.approx([1.0, 1.0 / (math.e - 1.0)])
    r0, r1 = expbern.fixed_point_residuals(op)
    assert max(r0, r1) < 1e-10


def test_counterexample_flags():
    lam = expbern.EigenvalueMultiset([-1, 1, 1j, -1j])
    op = expbern.build_operator(lam, 0.0, 3.5, -1, 1)
    assert not op.nodes_ordered
    assert op.weights_positive
    assert op.step_ratios[1] == pytest.approx(2.8454, abs=1e-3)


def test_apply_and_basis():
    lam = expbern.EigenvalueMultiset([0, 1, 1j, -1j])
    basis = expbern.build_basis(lam, 0.0, 2.0)
    assert len(basis) == 4
    assert basis.at(0).eval(0.0) == pytest.approx(1.0)
    op = expbern.build_operator(lam, 0.0, 2.0, 0, 1)
    assert op.apply(lambda t: math.exp(t), 1.3) == pytest.approx(
        math.exp(1.3), rel=1e-9
    )


def test_confluent_operator():
    lam = expbern.EigenvalueMultiset([0, 0, 0])
    op = expbern.build_operator_confluent(lam, 0.0, 1.0, 0)
    assert op.confluent
    assert op.nodes == pytest.approx([0.0, 0.5, 1.0], abs=1e-5)


def test_convergence_study_classical():
    errs = expbern.convergence_study(
        "classical", lambda x: x * x, [4, 8], grid=257, lambda0=0.0, a=0.0, b=1.0
    )
    for e in errs:
        assert e["sup_error"] == pytest.approx(1.0 / (4 * e["n"]), rel=0.01)


def test_convergence_study_trigonometric():
    f = expbern.test_function("abs_mid", 0.0, 2.0)
    errs = expbern.convergence_study(
        "morigi_neamtu", f, [2, 8], grid=257, mu0=1j, mu1=-1j, a=0.0, b=2.0
    )
    assert errs[1]["sup_error"] < errs[0]["sup_error"]


def test_hypothesis_report():
    rep = expbern.hypothesis_report(
        "equidistant", 4, lambda0=0.0, omega_total=1.0, a=0.0, b=1.0
    )
    assert rep["hypothesis_ok"]
    assert rep["mesh"] == pytest.approx(0.25, rel=1e-9)
    for a in rep["a_vals"]:
        assert a == pytest.approx(math.exp(-0.25), rel=1e-9)


def test_muntz():
    lam, a, b = expbern.muntz_to_exponential([0.0, 1.0, 2.0], 1.0, math.e)
    assert a == pytest.approx(0.0)
    assert b == pytest.approx(1.0)
    assert lam.dimension() == 3


def test_errors_surface():
    lam = expbern.EigenvalueMultiset([1j, -1j])
    with pytest.raises(expbern.ComputationError):
        expbern.build_basis(lam, 0.0, math.pi)
    with pytest.raises(ValueError):
        expbern.EigenvalueMultiset([])
