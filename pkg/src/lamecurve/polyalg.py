"""Dense complex polynomials, root finding and structured determinants."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional, Sequence

import numpy as np
from numpy.polynomial import polynomial as npoly

from .errors import DegreeMismatchError, DomainError

TRIM_TOL = 1e-12
ROOT_TOL = 1e-8
INTERP_TOL = 1e-9


class PolynomialC:
    """Univariate polynomial with complex coefficients in ascending order.

    The representation is trimmed: trailing coefficients below
    ``TRIM_TOL * max|c|`` are dropped, and the zero polynomial is ``[]``.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=(), trim_tol=TRIM_TOL):
        c = np.atleast_1d(np.asarray(coeffs, dtype=complex)).copy()
        if c.size:
            scale = np.max(np.abs(c))
            if scale == 0:
                c = c[:0]
            else:
                nz = np.nonzero(np.abs(c) > trim_tol * scale)[0]
                c = c[: nz[-1] + 1]
        self.coeffs = c

    @classmethod
    def constant(cls, value):
        return cls([value])

    @classmethod
    def monomial(cls, degree, value=1.0):
        c = np.zeros(degree + 1, dtype=complex)
        c[degree] = value
        return cls(c)

    @classmethod
    def from_roots(cls, roots, leading=1.0):
        return cls(leading * npoly.polyfromroots(np.asarray(roots, dtype=complex)))

    @property
    def degree(self) -> int:
        return max(len(self.coeffs) - 1, 0)

    def is_zero(self) -> bool:
        return len(self.coeffs) == 0

    def coeff(self, k: int) -> complex:
        return complex(self.coeffs[k]) if 0 <= k < len(self.coeffs) else 0j

    def padded(self, length: int) -> np.ndarray:
        out = np.zeros(length, dtype=complex)
        out[: len(self.coeffs)] = self.coeffs
        return out

    def __call__(self, x):
        if self.is_zero():
            return np.zeros(np.shape(x), dtype=complex) if np.ndim(x) else 0j
        return npoly.polyval(x, self.coeffs)

    def __add__(self, other):
        other = _as_poly(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return PolynomialC(self.padded(n) + other.padded(n))

    __radd__ = __add__

    def __neg__(self):
        return PolynomialC(-self.coeffs)

    def __sub__(self, other):
        return self + (-_as_poly(other))

    def __rsub__(self, other):
        return _as_poly(other) - self

    def __mul__(self, other):
        if isinstance(other, PolynomialC):
            return poly_mul(self, other)
        return PolynomialC(self.coeffs * complex(other))

    __rmul__ = __mul__

    def __truediv__(self, scalar):
        return PolynomialC(self.coeffs / complex(scalar))

    def reflect(self):
        """``p(-E)``."""
        k = np.arange(len(self.coeffs))
        return PolynomialC(self.coeffs * (-1.0) ** k)

    def even_part_in_square(self):
        """Polynomial ``q`` with ``q(E^2)`` equal to the even part of ``p(E)``."""
        return PolynomialC(self.coeffs[0::2])

    def max_abs(self) -> float:
        return float(np.max(np.abs(self.coeffs))) if len(self.coeffs) else 0.0

    def __repr__(self):
        return f"PolynomialC({np.array2string(self.coeffs, precision=6)})"


def _as_poly(p) -> PolynomialC:
    return p if isinstance(p, PolynomialC) else PolynomialC([p])


def poly_mul(p: PolynomialC, q: PolynomialC) -> PolynomialC:
    if p.is_zero() or q.is_zero():
        return PolynomialC()
    return PolynomialC(np.convolve(p.coeffs, q.coeffs))


def poly_roots(p: PolynomialC) -> np.ndarray:
    """All complex roots with multiplicity (companion-matrix eigenvalues)."""
    if p.is_zero():
        raise DomainError("the zero polynomial has no well-defined roots")
    if p.degree < 1:
        raise DomainError("polynomial of degree 0 has no roots")
    c = p.coeffs / p.coeffs[-1]
    return npoly.polyroots(c)


def root_residual(p: PolynomialC, r) -> float:
    """``|p(r)| / (max|c| * max(1, |r|)^deg)``, the acceptance measure for a root."""
    return float(abs(p(r)) / (p.max_abs() * max(1.0, abs(r)) ** p.degree))


def extract_poly(
    f: Callable[[complex], complex],
    degree: int,
    radius: float = 1.0,
    tol: float = INTERP_TOL,
    check_points: Optional[Sequence[complex]] = None,
) -> PolynomialC:
    """Recover a polynomial of known maximal degree from a scalar evaluator.

    Samples ``f`` at the ``degree + 1`` scaled roots of unity, inverts the
    discrete Fourier transform, then checks three fresh points.
    """
    if degree < 0:
        raise DomainError("degree must be non-negative")
    n = degree + 1
    nodes = radius * np.exp(2j * np.pi * np.arange(n) / n)
    values = np.array([complex(f(z)) for z in nodes])
    coeffs = np.fft.fft(values) / n / radius ** np.arange(n)
    p = PolynomialC(coeffs)
    if check_points is None:
        check_points = radius * np.array([0.61 + 0.23j, -0.37 + 0.71j, 0.13 - 0.83j])
    scale = max(np.max(np.abs(values)), 1e-300)
    for z in check_points:
        err = abs(p(z) - complex(f(z)))
        if err > tol * scale:
            raise DegreeMismatchError(
                f"interpolant of degree {degree} misses f at {z}: error {err:.3e}"
            )
    return p


@dataclass
class TridiagBordered:
    """Tridiagonal matrix whose final row may be replaced by constants.

    ``diag`` holds the (polynomial) diagonal; ``sub[k]`` is entry ``(k+1, k)``
    and ``sup[k]`` entry ``(k, k+1)``.  ``last_row`` gives columns
    ``0 .. n-2`` of the final row; the final diagonal entry is ``diag[-1]``.
    """

    diag: Sequence
    sub: Sequence[complex]
    sup: Sequence[complex]
    last_row: Optional[Sequence[complex]] = None

    def __post_init__(self):
        n = len(self.diag)
        if n < 1:
            raise DomainError("empty matrix")
        if len(self.sub) != n - 1 or len(self.sup) != n - 1:
            raise DomainError(
                f"off-diagonals must have length {n - 1}, got {len(self.sub)}, {len(self.sup)}"
            )
        if self.last_row is not None and len(self.last_row) != n - 1:
            raise DomainError(f"last_row must have length {n - 1}, got {len(self.last_row)}")
        self.diag = [_as_poly(d) for d in self.diag]

    @property
    def size(self) -> int:
        return len(self.diag)

    def dense(self, E) -> np.ndarray:
        """Numeric matrix at a given value of the diagonal variable."""
        n = self.size
        m = np.zeros((n, n), dtype=complex)
        for k in range(n):
            m[k, k] = self.diag[k](E)
        for k in range(n - 1):
            m[k + 1, k] = self.sub[k]
            m[k, k + 1] = self.sup[k]
        if self.last_row is not None:
            m[n - 1, : n - 1] = self.last_row
        return m


def _prefix_dets(diag, sub, sup):
    dets = [PolynomialC([1.0])]
    for k, d in enumerate(diag):
        nxt = d * dets[-1]
        if k >= 1:
            nxt = nxt - dets[-2] * (sub[k - 1] * sup[k - 1])
        dets.append(nxt)
    return dets


def det_tridiag_bordered(m: TridiagBordered) -> PolynomialC:
    """Determinant as a polynomial in the diagonal variable.

    Three-term recurrence for the tridiagonal part; with a replaced final row,
    cofactor expansion along it.  Removing row ``n-1`` and column ``j`` leaves
    a block-triangular matrix: the leading ``j x j`` tridiagonal block and a
    triangular block whose diagonal is ``sup[j:]``.
    """
    n = m.size
    if m.last_row is None:
        return _prefix_dets(m.diag, m.sub, m.sup)[n]
    prefix = _prefix_dets(m.diag[: n - 1], m.sub, m.sup)
    total = m.diag[n - 1] * prefix[n - 1]
    for j in range(n - 1):
        entry = complex(m.last_row[j])
        if entry == 0:
            continue
        tail = complex(np.prod(m.sup[j:])) if j < n - 1 else 1.0
        total = total + prefix[j] * ((-1) ** (n - 1 + j) * entry * tail)
    return total
