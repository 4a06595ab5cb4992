import numpy as np
import pytest

from lamecurve.errors import DegreeMismatchError, DomainError
from lamecurve.polyalg import (
    PolynomialC,
    TridiagBordered,
    det_tridiag_bordered,
    extract_poly,
    poly_mul,
    poly_roots,
    root_residual,
)


def _rand_poly(rng, deg):
    return PolynomialC(rng.normal(size=deg + 1) + 1j * rng.normal(size=deg + 1))


def test_product_pointwise():
    rng = np.random.default_rng(1)
    p, q = _rand_poly(rng, 4), _rand_poly(rng, 4)
    r = poly_mul(p, q)
    zs = rng.normal(size=10) + 1j * rng.normal(size=10)
    for z in zs:
        assert abs(r(z) - p(z) * q(z)) < 1e-12 * max(1, abs(r(z)))
    assert r.degree == 8


def test_arithmetic_and_trim():
    p = PolynomialC([1, 2, 0, 0])
    assert p.degree == 1
    assert PolynomialC([0, 0]).is_zero()
    q = p - p
    assert q.is_zero()
    assert (p * 2).coeff(1) == 4
    assert (p + 1).coeff(0) == 2


def test_roots_vieta():
    rng = np.random.default_rng(2)
    p = _rand_poly(rng, 5)
    r = poly_roots(p)
    rebuilt = PolynomialC.from_roots(r, leading=p.coeffs[-1])
    assert np.max(np.abs(rebuilt.coeffs - p.coeffs)) < 1e-8 * p.max_abs()
    assert max(root_residual(p, z) for z in r) < 1e-10


def test_roots_of_constant_raise():
    with pytest.raises(DomainError):
        poly_roots(PolynomialC([3.0]))
    with pytest.raises(DomainError):
        poly_roots(PolynomialC())


def test_even_part_in_square():
    p = PolynomialC([1, 0, -3, 0, 2])
    q = p.even_part_in_square()
    assert np.allclose(q.coeffs, [1, -3, 2])


def test_extract_poly():
    p = PolynomialC([1 + 1j, -2, 0.5j, 3])
    q = extract_poly(p, 3, radius=1.5)
    assert np.max(np.abs(q.coeffs - p.coeffs)) < 1e-12


def test_extract_poly_degree_mismatch():
    with pytest.raises(DegreeMismatchError):
        extract_poly(lambda z: np.exp(z), 3)


def test_tridiag_plain_matches_dense():
    rng = np.random.default_rng(3)
    E = PolynomialC([0, 1])
    diag = [E * complex(rng.normal()) + complex(rng.normal()) for _ in range(4)]
    sub = rng.normal(size=3) + 1j * rng.normal(size=3)
    sup = rng.normal(size=3) + 1j * rng.normal(size=3)
    m = TridiagBordered(diag, sub, sup)
    d = det_tridiag_bordered(m)
    for z in (0.3 - 0.2j, 1.7, -0.4 + 1.1j):
        assert abs(d(z) - np.linalg.det(m.dense(z))) < 1e-11 * max(1, abs(d(z)))


def test_tridiag_bordered_matches_dense():
    rng = np.random.default_rng(4)
    E = PolynomialC([0, 1])
    diag = [E - complex(rng.normal()) for _ in range(4)]
    sub = rng.normal(size=3) + 1j * rng.normal(size=3)
    sup = rng.normal(size=3) + 1j * rng.normal(size=3)
    last = rng.normal(size=3) + 1j * rng.normal(size=3)
    m = TridiagBordered(diag, sub, sup, last)
    d = det_tridiag_bordered(m)
    assert d.degree == 4
    for z in (0.3 - 0.2j, 1.7, -0.4 + 1.1j):
        assert abs(d(z) - np.linalg.det(m.dense(z))) < 1e-11 * max(1, abs(d(z)))


def test_tridiag_shape_errors():
    with pytest.raises(DomainError):
        TridiagBordered([1, 2], [1, 2], [1])
