import cmath

import numpy as np
import pytest

import lftd


def test_example0_symmetry_is_point_reflection():
    dom = lftd.example0(2, 2)
    y = np.array([[1.0, 2.0], [0.5j, -1.0]])
    z = np.array([[0.3, 0.0], [1.0, 2.0 + 1.0j]])
    u = lftd.symmetry(dom, y)
    np.testing.assert_allclose(u(z), 2 * y - z, atol=1e-14)
    np.testing.assert_allclose(u(u(z)), z, atol=1e-13)
    np.testing.assert_allclose(lftd.symmetry_apply(dom, y, z), 2 * y - z, atol=1e-14)


def test_example1_symmetry_and_membership():
    dom = lftd.example1(2)
    y = np.array([[2.0, 1.0], [0.0, 1.0]], dtype=complex)
    z = np.array([[1.0, 0.0], [1.0, 3.0]], dtype=complex)
    np.testing.assert_allclose(lftd.symmetry(dom, y)(z), y @ np.linalg.inv(z) @ y, atol=1e-13)
    assert dom.contains(z)
    assert not dom.contains(np.zeros((2, 2)))
    assert dom.verdict(np.zeros((2, 2))) == "Singular"


def test_det_membership_vanishes_off_the_domain():
    dom = lftd.new_domain(np.eye(2), np.eye(2), np.zeros((2, 2)))
    assert abs(dom.det_membership(-np.eye(2))) == 0.0
    assert abs(dom.det_membership(np.diag([1.0, 2.0])) - 6.0) <= 1e-14
    assert not dom.contains(np.diag([-1.0, 2.0]))


def test_chain_reaches_target():
    dom = lftd.example0(2, 2)
    w0 = np.array([[3.0, -1.0 + 1.0j], [0.5 - 2.0j, 2.0]])
    chain = lftd.transitive_chain(dom, w0)
    assert len(chain.factors) % 2 == 0
    np.testing.assert_allclose(chain(dom.base_point), w0, atol=1e-8)
    assert chain.residual <= 1e-8 * (1 + np.linalg.norm(w0, 2))


def test_chain_with_supplied_path():
    dom = lftd.example1(1)
    with pytest.raises(lftd.LftdError, match="step bound"):
        lftd.transitive_chain(dom, np.array([[-1.0]]))
    path = [np.array([[cmath.exp(1j * cmath.pi * k / 8)]]) for k in range(9)]
    chain = lftd.transitive_chain(dom, np.array([[-1.0]]), path)
    assert abs(chain(np.array([[1.0]]))[0, 0] + 1.0) <= 1e-8


def test_liouville_scalar():
    dom = lftd.example1(1)
    curve = lftd.liouville_curve(dom, np.array([[1.5]]))
    for lam in (0.0, 1.0, 0.5 + 0.5j, -2.0):
        assert abs(curve(lam)[0, 0] - cmath.exp(lam * cmath.log(1.5))) <= 1e-10


def test_potapov_ginzburg_involution():
    e = np.diag([1.0, 0.0])
    u = lftd.potapov_ginzburg(e)
    x = np.array([[0.2, 0.1], [0.0, 0.4]], dtype=complex)
    np.testing.assert_allclose(u(u(x)), x, atol=1e-12)


def test_circular_maps():
    z = np.vstack([np.zeros((1, 2)), 2 * np.eye(2)])
    assert lftd.siegel_member(2, 1, z)
    np.testing.assert_allclose(lftd.cayley(2, 1, z), np.vstack([np.zeros((1, 2)), 0.5 * np.eye(2)]), atol=1e-15)
    t = lftd.mobius_ball(np.array([[0.5]]))
    assert abs(t(np.array([[0.0]]))[0, 0] - 0.5) <= 1e-15
    p = lftd.product_transitive(1, 1, np.array([[0.5], [2.0]]))
    assert abs(p.b[0, 0] - 0.25) <= 1e-15
    j = np.diag([1.0, 1.0, -1.0])
    h, f = lftd.hyperbolic_transitive(j, np.array([0.0, 0.0, 2.0]))
    np.testing.assert_allclose(h.l @ f, [0.0, 0.0, 2.0], atol=1e-12)
    np.testing.assert_allclose(h.l.conj().T @ j @ h.l, h.scale * j, atol=1e-12)


def test_errors_surface_as_value_errors():
    with pytest.raises(ValueError):
        lftd.new_domain(np.eye(2), np.zeros((2, 2)), np.zeros((2, 2)))
    with pytest.raises(ValueError):
        lftd.report(trials=0)


def test_report_is_deterministic():
    a = lftd.report(seed=5, trials=10, group="symmetry")
    b = lftd.report(seed=5, trials=10, group="symmetry")
    assert a == b
    assert a["pass"] is True
    assert {s["suite"] for s in a["suites"]} >= {"symmetry.involution", "symmetry.fixed_point"}
