"""Jacobi theta functions, elliptic numbers and the double-Bloch kernel.

Conventions follow the classical definitions with nome ``q = exp(i*pi*tau)``:

    theta_1(x) = sum_k exp(i pi tau (k+1/2)^2 + 2 pi i (x-1/2)(k+1/2))
    theta_2(x) = sum_k exp(i pi tau (k+1/2)^2 + 2 pi i x (k+1/2))
    theta_3(x) = sum_k exp(i pi tau k^2 + 2 pi i x k)
    theta_4(x) = sum_k exp(i pi tau k^2 + 2 pi i (x+1/2) k)

so that theta_1 is odd with zeros on the lattice ``Z + tau Z``, starts as
``2 q^(1/4) sin(pi x)`` and obeys ``theta_1(x + 1/2) = theta_2(x)``.  The elliptic
number ``[n]`` is ``theta_1(2 n eta)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import DomainError, PoleError, ValidationError

SERIES_TOL = 1e-18
CHECK_TOL = 1e-9
POLE_GUARD = 1e-6


def theta_series(a, x, tau, tol=SERIES_TOL):
    """Evaluate ``theta_a(x | tau)`` by direct q-series summation.

    Works elementwise on arrays.  The summation window is symmetric in the
    summation index and wide enough that every omitted term is smaller than
    ``tol`` times the largest retained one.
    """
    if a not in (1, 2, 3, 4):
        raise DomainError(f"theta index must be 1..4, got {a}")
    tau = complex(tau)
    if tau.imag <= 0:
        raise ValidationError(f"Im(tau) must be positive, got tau={tau}")
    x = np.asarray(x, dtype=complex)
    t = tau.imag
    # |term(n)| = exp(-pi t n^2 - 2 pi n Im x) peaks at n = -Im x / t
    ymax = float(np.max(np.abs(x.imag))) if x.size else 0.0
    width = math.sqrt(-math.log(tol) / (math.pi * t))
    m = int(math.ceil(ymax / t + width)) + 2
    if a in (1, 2):
        n = np.arange(-m - 1, m + 1) + 0.5
    else:
        n = np.arange(-m, m + 1).astype(float)
    shift = {1: -0.5, 2: 0.0, 3: 0.0, 4: 0.5}[a]
    phase = 1j * math.pi * tau * n * n + 2j * math.pi * np.multiply.outer(x + shift, n)
    out = np.exp(phase).sum(axis=-1)
    if out.ndim == 0:
        return complex(out)
    return out


def lattice_distance(x, tau):
    """Distance from ``x`` to the nearest point of ``Z + tau Z``."""
    x = np.asarray(x, dtype=complex)
    tau = complex(tau)
    n = np.round(x.imag / tau.imag)
    r = x - n * tau
    r = r - np.round(r.real)
    d = np.abs(r)
    # the nearest lattice point can sit one row over when Re(tau) != 0
    for dn in (-1, 1):
        r2 = x - (n + dn) * tau
        r2 = r2 - np.round(r2.real)
        d = np.minimum(d, np.abs(r2))
    return d


@dataclass(frozen=True)
class EllipticContext:
    """Immutable parameter bundle ``(tau, eta, ell)`` with derived constants.

    ``ell`` is the (integer) spin of the difference Lame operator.  The
    elliptic numbers ``[n]`` are precomputed for ``|n| <= 8*ell + 8``.
    """

    tau: complex
    eta: complex
    ell: int
    series_tol: float = SERIES_TOL
    check_tol: float = CHECK_TOL
    pole_guard: float = POLE_GUARD
    _numbers: dict = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        tau = complex(self.tau)
        eta = complex(self.eta)
        object.__setattr__(self, "tau", tau)
        object.__setattr__(self, "eta", eta)
        if tau.imag <= 0:
            raise ValidationError(f"Im(tau) must be positive, got tau={tau}")
        if int(self.ell) != self.ell or self.ell < 1:
            raise ValidationError(f"ell must be a positive integer, got {self.ell}")
        object.__setattr__(self, "ell", int(self.ell))
        b = eta.imag / tau.imag
        a = eta.real - b * tau.real
        eps = 1e-12
        if not (-eps <= a <= 1 + eps and -eps <= b <= 1 + eps):
            raise ValidationError(
                f"eta={eta} is outside the fundamental parallelogram 0, 1, tau, 1+tau"
            )
        nmax = 8 * self.ell + 8
        ns = np.arange(0, nmax + 1)
        vals = theta_series(1, 2 * ns * eta, tau, self.series_tol)
        numbers = {0: 0j}
        for n, v in zip(ns[1:], vals[1:]):
            numbers[int(n)] = complex(v)
            numbers[-int(n)] = -complex(v)
        object.__setattr__(self, "_numbers", numbers)
        scale = abs(theta_series(2, 0.0, tau))
        for k in range(1, 4 * self.ell + 3):
            if abs(numbers[k]) <= self.check_tol * scale:
                raise ValidationError(
                    f"resonant eta={eta}: |theta_1({2 * k}*eta)| = {abs(numbers[k]):.3e}"
                )

    @property
    def nome(self) -> complex:
        return complex(np.exp(1j * np.pi * self.tau))

    @property
    def N(self) -> int:
        return self.ell * (self.ell + 1) // 2

    @property
    def half_periods(self) -> tuple:
        return (0j, 0.5 + 0j, (1 + self.tau) / 2, self.tau / 2)

    def with_ell(self, ell: int) -> "EllipticContext":
        return EllipticContext(
            self.tau, self.eta, ell, self.series_tol, self.check_tol, self.pole_guard
        )

    # -- theta calculus -------------------------------------------------

    def theta(self, a, x):
        return theta_series(a, x, self.tau, self.series_tol)

    def th1(self, x):
        return theta_series(1, x, self.tau, self.series_tol)

    def th1_denominator(self, x):
        """``theta_1(x)`` for use as a divisor; raises near the zero lattice."""
        d = lattice_distance(x, self.tau)
        if np.any(d < self.pole_guard):
            bad = np.asarray(x)[d < self.pole_guard] if np.ndim(x) else x
            raise PoleError(f"theta_1 denominator vanishes near x={bad}", bad)
        return self.th1(x)

    def num(self, n: int) -> complex:
        """Elliptic number ``[n] = theta_1(2 n eta)``."""
        n = int(n)
        try:
            return self._numbers[n]
        except KeyError:
            return complex(self.th1(2 * n * self.eta))

    def factorial(self, n: int) -> complex:
        if n < 0:
            raise DomainError(f"elliptic factorial needs n >= 0, got {n}")
        out = 1 + 0j
        for j in range(1, n + 1):
            out *= self.num(j)
        return out

    def binom(self, n: int, m: int) -> complex:
        """Elliptic binomial ``[n]! / ([m]! [n-m]!)``, built factor by factor."""
        if n < 0 or m < 0 or m > n:
            raise DomainError(f"elliptic binomial needs 0 <= m <= n, got n={n}, m={m}")
        m = min(m, n - m)
        out = 1 + 0j
        for i in range(1, m + 1):
            out *= self.num(n - m + i) / self.num(i)
        return out

    def phi(self, x, zeta):
        """Double-Bloch kernel ``theta_1(zeta+x) / (theta_1(x) theta_1(zeta))``."""
        return self.th1(zeta + x) / (self.th1_denominator(x) * self.th1_denominator(zeta))


def theta(a, x, ctx: EllipticContext):
    return ctx.theta(a, x)


def elliptic_num(n: int, ctx: EllipticContext) -> complex:
    return ctx.num(n)


def elliptic_binom(n: int, m: int, ctx: EllipticContext) -> complex:
    return ctx.binom(n, m)


def phi(x, zeta, ctx: EllipticContext):
    return ctx.phi(x, zeta)


def default_context(ell: int = 1) -> EllipticContext:
    """Working parameters used throughout the tests: generic and fast."""
    return EllipticContext(tau=0.1 + 1.1j, eta=0.123 + 0.057j, ell=ell)
