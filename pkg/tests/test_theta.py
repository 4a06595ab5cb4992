import numpy as np
import pytest

from lamecurve import EllipticContext, ValidationError, elliptic_binom, elliptic_num, theta
from lamecurve.errors import PoleError
from lamecurve.theta import lattice_distance, theta_series

# Frozen from an independent mpmath jtheta evaluation at 30 digits.
THETA3_REF = 0.969833549385936056971148120209 - 0.0485652294219566830117882731727j
NUM1_REF = 0.625695786778310521386719904532 + 0.22153933146605458822781794791j


def test_theta3_oracle():
    v = theta_series(3, 0.31 + 0.12j, 1.1j)
    assert abs(v - THETA3_REF) < 1e-13


def test_elliptic_number_oracle():
    ctx = EllipticContext(tau=1.1j, eta=0.123 + 0.057j, ell=1)
    assert abs(elliptic_num(1, ctx) - NUM1_REF) < 1e-13


def test_theta1_odd_and_quasiperiodic(ctx1):
    x = np.array([0.17 + 0.05j, -0.42 + 0.3j, 0.9 - 0.2j])
    t = lambda y: ctx1.theta(1, y)
    assert np.max(np.abs(t(-x) + t(x))) < 1e-14
    assert np.max(np.abs(t(x + 1) + t(x))) < 1e-13
    tau = ctx1.tau
    rhs = -np.exp(-1j * np.pi * tau - 2j * np.pi * x) * t(x)
    assert np.max(np.abs(t(x + tau) - rhs)) < 1e-12


def test_theta_half_shift(ctx1):
    x = 0.23 + 0.11j
    assert abs(ctx1.theta(1, x + 0.5) - ctx1.theta(2, x)) < 1e-14


def test_jacobi_identity(ctx1):
    th = [abs(ctx1.theta(a, 0.0)) for a in (2, 3, 4)]
    t2, t3, t4 = [ctx1.theta(a, 0.0) for a in (2, 3, 4)]
    assert abs(t3**4 - t2**4 - t4**4) < 1e-12 * max(th) ** 4


def test_zero_and_negative_numbers(ctx1):
    assert elliptic_num(0, ctx1) == 0
    assert elliptic_num(-2, ctx1) == -elliptic_num(2, ctx1)


def test_binom(ctx1):
    n = lambda k: elliptic_num(k, ctx1)
    assert abs(elliptic_binom(2, 1, ctx1) - n(2) / n(1)) < 1e-14
    assert elliptic_binom(3, 0, ctx1) == 1
    v = elliptic_binom(5, 2, ctx1)
    assert abs(v - elliptic_binom(5, 3, ctx1)) < 1e-13 * abs(v)


def test_theta_rejects_bad_index(ctx1):
    with pytest.raises(ValueError):
        theta(5, 0.1, ctx1)


@pytest.mark.parametrize(
    "tau, eta",
    [(1.1, 0.1 + 0.05j), (-0.2j, 0.1), (1.1j, 0.25), (1.1j, 0.5), (1.1j, 3.0 + 0.1j)],
)
def test_invalid_contexts(tau, eta):
    with pytest.raises(ValidationError):
        EllipticContext(tau=tau, eta=eta, ell=1)


def test_invalid_ell():
    with pytest.raises(ValidationError):
        EllipticContext(tau=1.1j, eta=0.123 + 0.057j, ell=0)


def test_pole_guard(ctx1):
    with pytest.raises(PoleError):
        ctx1.th1_denominator(1e-9)


def test_lattice_distance():
    assert lattice_distance(1 + 1.1j, 1.1j) < 1e-15
    assert abs(lattice_distance(0.5, 1.1j) - 0.5) < 1e-15


def test_phi_pole_and_shift(ctx1):
    zeta, x = 0.31 + 0.2j, 0.21 + 0.07j
    v = ctx1.phi(x, zeta)
    assert abs(ctx1.phi(x + 1, zeta) - v) < 1e-12 * abs(v)
    w = ctx1.phi(x + ctx1.tau, zeta)
    assert abs(w - np.exp(-2j * np.pi * zeta) * v) < 1e-12 * abs(v)
    h = 1e-5
    dth = np.pi * ctx1.theta(2, 0) * ctx1.theta(3, 0) * ctx1.theta(4, 0)
    assert abs(h * ctx1.phi(h, zeta) * dth - 1) < 1e-4
