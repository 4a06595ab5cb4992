import numpy as np
import pytest

from lamecurve import (
    DifferenceOperator,
    TestFunctionFamily,
    build_A,
    build_sklyanin,
    commutator,
    default_context,
    lame_operator,
    op_residual,
)
from lamecurve.diffop import (
    a_coefficient,
    build_intertwiner,
    parity_conjugate,
    span_membership_residual,
    theta_basis,
    theta_monodromy_residual,
    theta_space_dim,
)
from lamecurve.errors import DomainError, ValidationError
from lamecurve.verify import (
    baxter_operator_residual,
    sklyanin_residuals,
    wronskian_residual,
)

# Frozen from an independent mpmath evaluation of the two-term operator at 30 digits.
S0_REF = 1.43951093619702703254276585617 + 0.882117491340482368730582382801j


def test_lame_operator_oracle(ctx1):
    L = lame_operator(ctx1)
    v = L.apply(lambda x: np.exp(2j * np.pi * x), 0.2)
    assert abs(v - S0_REF) < 1e-12


def test_compose_rule(ctx1):
    c = lambda x: np.sin(x) + 2
    d = lambda x: np.cos(x) + 3
    D1 = DifferenceOperator([(0.1, c)])
    D2 = DifferenceOperator([(0.2, d)])
    f = lambda x: np.exp(x)
    x = 0.37 + 0.1j
    assert abs((D1 @ D2).apply(f, x) - c(x) * d(x + 0.1) * f(x + 0.3)) < 1e-14


def test_shift_merging():
    one = lambda x: np.ones_like(x)
    D = DifferenceOperator([(0.1, one), (0.1 + 1e-15, one)])
    assert len(D.terms) == 1
    assert abs(D.apply(lambda x: x, 0.0) - 0.2) < 1e-14


def test_commutator_of_shifts_vanishes():
    tf = TestFunctionFamily(seed=1)
    a, b = DifferenceOperator.shift(0.1), DifferenceOperator.shift(-0.23)
    assert op_residual(commutator(a, b), DifferenceOperator([]), tf) < 1e-14


def test_family_is_deterministic():
    a, b = TestFunctionFamily(seed=5), TestFunctionFamily(seed=5)
    assert np.array_equal(a.sample_points, b.sample_points)
    assert np.array_equal(a.coeffs, b.coeffs)


@pytest.mark.parametrize("spin", [0.5, 1, 1.5, 2])
def test_sklyanin_relations(ctx1, spin):
    tf = TestFunctionFamily(seed=42)
    assert max(sklyanin_residuals(ctx1, spin, tf)) < 1e-9


def test_sklyanin_rejects_bad_index(ctx1):
    with pytest.raises(DomainError):
        build_sklyanin(4, ctx1)
    with pytest.raises(ValidationError):
        build_sklyanin(0, ctx1, spin=0.3)


@pytest.mark.parametrize("ell", [1, 2])
def test_commuting_family(ell):
    ctx = default_context(ell)
    tf = TestFunctionFamily(seed=42)
    L = lame_operator(ctx)
    A1, A2 = build_A(0.21 + 0.03j, ctx), build_A(-0.37 + 0.08j, ctx)
    zero = DifferenceOperator([])
    assert op_residual(commutator(L, A1), zero, tf) < 1e-9
    assert op_residual(commutator(A1, A2), zero, tf) < 1e-9
    assert baxter_operator_residual(ctx, 0.21 + 0.03j, tf) < 1e-9
    assert wronskian_residual(ctx, 0.21 + 0.03j, tf) < 1e-9


def test_a_coefficient_symmetric(ctx2):
    x, lam = 0.31 + 0.04j, -0.17 + 0.12j
    for k in range(3):
        assert abs(a_coefficient(k, x, lam, ctx2) - a_coefficient(k, lam, x, ctx2)) < 1e-12


def test_special_members(ctx2):
    tf = TestFunctionFamily(seed=42)
    eta = ctx2.eta
    assert op_residual(build_A(2 * eta, ctx2), DifferenceOperator.identity(), tf) < 1e-9
    L = lame_operator(ctx2).scale(ctx2.num(2) / ctx2.num(4))
    assert op_residual(build_A(eta, ctx2), L, tf) < 1e-9
    assert op_residual(build_A(eta, ctx2), build_A(-eta, ctx2), tf) < 1e-9
    A = build_A(0.3 + 0.1j, ctx2)
    assert op_residual(parity_conjugate(A), build_A(-0.3 - 0.1j, ctx2), tf) < 1e-9


@pytest.mark.parametrize("spin", [0.5, 1, 1.5])
def test_intertwiner(ctx1, spin):
    tf = TestFunctionFamily(seed=42)
    W = build_intertwiner(ctx1, spin)
    assert len(W.terms) == int(2 * spin) + 2
    r = max(
        op_residual(build_sklyanin(a, ctx1, -spin - 1) @ W, W @ build_sklyanin(a, ctx1, spin), tf)
        for a in range(4)
    )
    assert r < 1e-9


def test_theta_space_dims():
    assert theta_space_dim(4) == 4
    assert theta_space_dim(8, "even") == 5
    with pytest.raises(DomainError):
        theta_space_dim(5, "even")


@pytest.mark.parametrize("parity, n", [("all", 3), ("even", 4), ("even", 8)])
def test_theta_basis(ctx1, parity, n):
    basis = theta_basis(n, parity, ctx1, seed=3)
    assert len(basis) == theta_space_dim(n, parity)
    xs = np.array([0.13 + 0.05j, 0.71 - 0.2j, 0.44 + 0.17j])
    for i in range(len(basis)):
        assert theta_monodromy_residual(basis.function(i), n, ctx1, xs) < 1e-9


def test_span_membership():
    rng = np.random.default_rng(0)
    B = rng.normal(size=(10, 3))
    assert span_membership_residual(B @ np.array([1.0, -2.0, 0.5]), B) < 1e-14
    assert span_membership_residual(rng.normal(size=10), B) > 1e-3
