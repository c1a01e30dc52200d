import math

import numpy as np
import pytest

from rqpd import qmat
from rqpd.game_core import StrategyParams, entangler, strategy_unitary


def random_unitary2(rng):
    # U(theta, phi) draws cover enough of U(2) for norm/product checks.
    theta = rng.uniform(0.0, math.pi)
    phi = rng.uniform(0.0, 0.5 * math.pi)
    return strategy_unitary(StrategyParams(theta, phi))


def random_state(rng):
    v = rng.normal(size=4) + 1j * rng.normal(size=4)
    return qmat.state4(v)


def test_tensor2_identity():
    eye2 = qmat.identity(2)
    assert np.array_equal(qmat.tensor2(eye2, eye2), np.eye(4))


def test_tensor2_dxd_hand_expansion():
    d = qmat.mat2([[0, 1], [-1, 0]])
    expected = np.zeros((4, 4), dtype=complex)
    expected[0, 3] = 1
    expected[1, 2] = -1
    expected[2, 1] = -1
    expected[3, 0] = 1
    assert np.array_equal(qmat.tensor2(d, d), expected)


def test_tensor2_basis_action():
    rng = np.random.default_rng(7)
    a, b = random_unitary2(rng), random_unitary2(rng)
    lhs = qmat.apply(qmat.tensor2(a, b), qmat.basis_state(0))
    rhs = np.kron(a[:, 0], b[:, 0])
    assert np.allclose(lhs, rhs, atol=1e-12)


def test_tensor2_mixed_product_property():
    rng = np.random.default_rng(11)
    for _ in range(50):
        a, b, x, y = (random_unitary2(rng) for _ in range(4))
        lhs = qmat.tensor2(a, b) @ qmat.tensor2(x, y)
        rhs = qmat.tensor2(a @ x, b @ y)
        assert np.allclose(lhs, rhs, atol=1e-12)


def test_tensor2_is_bilinear():
    rng = np.random.default_rng(13)
    a, b, c = (random_unitary2(rng) for _ in range(3))
    alpha, beta = 0.3 - 0.2j, 1.1 + 0.7j
    lhs = qmat.tensor2(qmat.mat2(alpha * a + beta * b), c)
    rhs = alpha * qmat.tensor2(a, c) + beta * qmat.tensor2(b, c)
    assert np.allclose(lhs, rhs, atol=1e-12)


def test_apply_identity_and_zero():
    v = random_state(np.random.default_rng(3))
    assert np.array_equal(qmat.apply(qmat.identity(4), v), v)
    zero = qmat.state4([0, 0, 0, 0])
    assert np.array_equal(qmat.apply(qmat.identity(4), zero), zero)


def test_apply_entangler_to_cc():
    got = qmat.apply(entangler(0.5 * math.pi), qmat.basis_state(0))
    expected = np.array([1, 0, 0, 1j], dtype=complex) / math.sqrt(2)
    assert np.allclose(got, expected, atol=1e-12)


def test_apply_is_linear():
    rng = np.random.default_rng(5)
    m = entangler(1.0)
    u, v = random_state(rng), random_state(rng)
    alpha, beta = 0.25 + 0.5j, -1.5 + 0.125j
    lhs = qmat.apply(m, qmat.state4(alpha * u + beta * v))
    rhs = alpha * qmat.apply(m, u) + beta * qmat.apply(m, v)
    assert np.allclose(lhs, rhs, atol=1e-12)


def test_adjoint_examples():
    assert np.array_equal(qmat.adjoint(qmat.identity(4)), np.eye(4))
    assert np.array_equal(
        qmat.adjoint(qmat.mat2([[1j, 0], [0, -1j]])), np.diag([-1j, 1j])
    )


def test_adjoint_involution():
    rng = np.random.default_rng(17)
    m = qmat.tensor2(random_unitary2(rng), random_unitary2(rng))
    assert np.array_equal(qmat.adjoint(qmat.adjoint(m)), m)


def test_adjoint_of_entangler_is_inverse():
    j = entangler(1.2)
    assert np.allclose(qmat.adjoint(j) @ j, np.eye(4), atol=1e-12)


def test_unitarity_defect_identity_is_zero():
    assert qmat.unitarity_defect(qmat.identity(4)) == 0.0
    assert qmat.unitarity_defect(qmat.identity(2)) == 0.0


def test_unitarity_defect_random_strategy_unitaries():
    rng = np.random.default_rng(23)
    for _ in range(100):
        assert qmat.unitarity_defect(random_unitary2(rng)) < 1e-12


def test_unitarity_defect_flags_nonunitary():
    m = qmat.mat4(np.eye(4) * 1.5)
    assert qmat.unitarity_defect(m) == pytest.approx(1.25)


def test_unitary_tensor_preserves_norm():
    rng = np.random.default_rng(29)
    for _ in range(100):
        m = qmat.tensor2(random_unitary2(rng), random_unitary2(rng))
        v = random_state(rng)
        assert abs(qmat.norm(qmat.apply(m, v)) - qmat.norm(v)) < 1e-12


@pytest.mark.parametrize("bad", [float("nan"), float("inf"), -float("inf")])
def test_nonfinite_entries_rejected(bad):
    with pytest.raises(ValueError):
        qmat.mat2([[bad, 0], [0, 1]])
    with pytest.raises(ValueError):
        qmat.state4([bad, 0, 0, 0])


def test_shape_validation():
    with pytest.raises(ValueError):
        qmat.mat2(np.eye(3))
    with pytest.raises(ValueError):
        qmat.mat4(np.eye(2))
    with pytest.raises(ValueError):
        qmat.state4([1, 0])
    with pytest.raises(ValueError):
        qmat.basis_state(4)


def test_outputs_are_read_only():
    m = qmat.tensor2(qmat.identity(2), qmat.identity(2))
    with pytest.raises(ValueError):
        m[0, 0] = 2.0
