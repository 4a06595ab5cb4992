"""Difference operators with theta-function coefficients.

An operator is a finite sum ``(D f)(x) = sum_d c_d(x) f(x + d)`` over complex
shifts ``d``.  Coefficients are callables that accept numpy arrays, so whole
grids of sample points are processed in one call.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from .errors import ConstructionError, DomainError, PoleError, ValidationError
from .theta import EllipticContext

SHIFT_MERGE_TOL = 1e-12
MAX_RETRIES = 3


def _const(value):
    value = complex(value)
    return lambda x: value * np.ones(np.shape(x), dtype=complex)


def _scaled(c, s):
    return lambda x: s * c(x)


def _product(c1, c2, delta):
    return lambda x: c1(x) * c2(x + delta)


def _sum(c1, c2):
    return lambda x: c1(x) + c2(x)


def _reflected(c):
    return lambda x: c(-np.asarray(x))


class DifferenceOperator:
    """Immutable finite linear combination of shift operators.

    ``terms`` is a sequence of ``(shift, coefficient)`` pairs.  Shifts closer
    than ``merge_tol`` are identified and their coefficients added.
    """

    def __init__(self, terms, merge_tol=SHIFT_MERGE_TOL, label=""):
        self.merge_tol = merge_tol
        self.label = label
        merged: list[tuple[complex, Callable]] = []
        for shift, coeff in terms:
            shift = complex(shift)
            for i, (s, c) in enumerate(merged):
                if abs(s - shift) <= merge_tol:
                    merged[i] = (s, _sum(c, coeff))
                    break
            else:
                merged.append((shift, coeff))
        self.terms = tuple(merged)

    @classmethod
    def identity(cls, merge_tol=SHIFT_MERGE_TOL):
        return cls([(0j, _const(1.0))], merge_tol, "id")

    @classmethod
    def shift(cls, delta, merge_tol=SHIFT_MERGE_TOL):
        return cls([(delta, _const(1.0))], merge_tol, f"exp({delta} d)")

    @property
    def shifts(self):
        return [s for s, _ in self.terms]

    def coefficient(self, shift):
        for s, c in self.terms:
            if abs(s - shift) <= self.merge_tol:
                return c
        return None

    def apply(self, f, x):
        """Evaluate ``(D f)(x)``; ``f`` may return an extra leading axis."""
        x = np.asarray(x, dtype=complex)
        out = 0
        for s, c in self.terms:
            out = out + c(x) * f(x + s)
        return out

    __call__ = apply

    def compose(self, other: "DifferenceOperator") -> "DifferenceOperator":
        """``self o other``: shifts add, ``c(x) = c1(x) c2(x + d1)``."""
        tol = min(self.merge_tol, other.merge_tol)
        terms = [
            (s1 + s2, _product(c1, c2, s1))
            for s1, c1 in self.terms
            for s2, c2 in other.terms
        ]
        return DifferenceOperator(terms, tol, f"({self.label})({other.label})")

    def __matmul__(self, other):
        return self.compose(other)

    def __add__(self, other):
        tol = min(self.merge_tol, other.merge_tol)
        return DifferenceOperator(self.terms + other.terms, tol, f"{self.label}+{other.label}")

    def __neg__(self):
        return self.scale(-1)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, s):
        """Multiply by a constant, or on the left by a function of ``x``."""
        if callable(s):
            terms = [(d, _product(s, c, 0)) for d, c in self.terms]
        else:
            terms = [(d, _scaled(c, complex(s))) for d, c in self.terms]
        return DifferenceOperator(terms, self.merge_tol, self.label)

    def __rmul__(self, s):
        return self.scale(s)

    def __repr__(self):
        return f"DifferenceOperator({self.label!r}, shifts={self.shifts})"


def op_apply(D: DifferenceOperator, f, x):
    return D.apply(f, x)


def op_compose(D1: DifferenceOperator, D2: DifferenceOperator) -> DifferenceOperator:
    return D1.compose(D2)


def commutator(D1, D2):
    return D1 @ D2 - D2 @ D1


def parity_conjugate(D: DifferenceOperator) -> DifferenceOperator:
    """``Xi D Xi^-1`` with ``(Xi f)(x) = f(-x)``."""
    return DifferenceOperator(
        [(-s, _reflected(c)) for s, c in D.terms], D.merge_tol, f"Xi({D.label})"
    )


# -- test functions and residuals ---------------------------------------------


@dataclass
class TestFunctionFamily:
    """Seeded random trigonometric polynomials ``sum_{|k|<=3} c_k e^{2 pi i k x}``."""

    __test__ = False

    seed: int = 42
    n_functions: int = 4
    n_points: int = 20
    box: tuple = (0.0, 1.0, -0.3, 0.3)
    coeffs: np.ndarray = field(init=False, repr=False)
    sample_points: np.ndarray = field(init=False, repr=False)

    def __post_init__(self):
        self._rng = np.random.default_rng(self.seed)
        c = self._rng.normal(size=(self.n_functions, 7)) + 1j * self._rng.normal(
            size=(self.n_functions, 7)
        )
        self.coeffs = c / np.sqrt(2)
        self._k = np.arange(-3, 4)
        self.sample_points = self.draw_points()

    def draw_points(self, n=None):
        n = self.n_points if n is None else n
        x0, x1, y0, y1 = self.box
        re = self._rng.uniform(x0, x1, size=n)
        im = self._rng.uniform(y0, y1, size=n)
        return re + 1j * im

    def resample(self):
        self.sample_points = self.draw_points()
        return self.sample_points

    def __call__(self, x):
        """Values of every function at ``x``: shape ``(n_functions,) + x.shape``."""
        x = np.asarray(x, dtype=complex)
        waves = np.exp(2j * np.pi * np.multiply.outer(x, self._k))
        return np.moveaxis(waves @ self.coeffs.T, -1, 0)


def _residual_once(D1, D2, tf, xs):
    v1 = D1.apply(tf, xs)
    v2 = D2.apply(tf, xs)
    return float(np.max(np.abs(v1 - v2) / (1 + np.abs(v1) + np.abs(v2))))


def op_residual(D1, D2, tf: TestFunctionFamily) -> float:
    """Normalized max deviation between two operators on a test family.

    ``|(D1 - D2) f(x)| / (1 + |D1 f(x)| + |D2 f(x)|)`` maximized over the
    functions and sample points.  Sample points hitting a coefficient pole are
    redrawn up to three times.
    """
    xs = tf.sample_points
    for attempt in range(MAX_RETRIES + 1):
        try:
            return _residual_once(D1, D2, tf, xs)
        except PoleError:
            if attempt == MAX_RETRIES:
                raise
            xs = tf.resample()
    raise AssertionError("unreachable")


def function_residual(g1, g2, xs) -> float:
    """Same normalization as :func:`op_residual` for two plain evaluators."""
    v1 = np.asarray(g1(xs))
    v2 = np.asarray(g2(xs))
    return float(np.max(np.abs(v1 - v2) / (1 + np.abs(v1) + np.abs(v2))))


# -- the operators ---------------------------------------------------------------


def _merge_tol(ctx):
    return SHIFT_MERGE_TOL * abs(ctx.eta)


def _th1_eta_multiple(ctx, base, m):
    """``theta_1(base + 2 m eta)``, exact via ``[n]`` when ``base = 2 n eta``."""
    n = base / (2 * ctx.eta)
    if abs(n - round(n.real)) < 1e-12:
        return ctx.num(int(round(n.real)) + m)
    return complex(ctx.th1(base + 2 * m * ctx.eta))


def build_sklyanin(a: int, ctx: EllipticContext, spin=None) -> DifferenceOperator:
    """Generator ``S_a`` of the Sklyanin algebra in spin ``spin`` (default ``ctx.ell``).

    ``S_a = th_{a+1}(2x - 2 s eta)/th_1(2x) T_eta - th_{a+1}(-2x - 2 s eta)/th_1(2x) T_-eta``.
    ``S_0`` is the difference Lame operator.
    """
    if a not in (0, 1, 2, 3):
        raise DomainError(f"Sklyanin index must be 0..3, got {a}")
    s = ctx.ell if spin is None else spin
    if 2 * s != int(2 * s):
        raise ValidationError(f"spin must be a half-integer, got {s}")
    eta = ctx.eta
    th = lambda x: ctx.theta(a + 1, x)

    def forward(x):
        return th(2 * x - 2 * s * eta) / ctx.th1_denominator(2 * x)

    def backward(x):
        return -th(-2 * x - 2 * s * eta) / ctx.th1_denominator(2 * x)

    return DifferenceOperator(
        [(eta, forward), (-eta, backward)], _merge_tol(ctx), f"S{a}^({s})"
    )


def lame_operator(ctx: EllipticContext) -> DifferenceOperator:
    return build_sklyanin(0, ctx)


def a_coefficient(k: int, x, lam, ctx: EllipticContext):
    """Coefficient ``A_k(x, lambda)`` of the commuting family; symmetric in ``x, lambda``."""
    ell, eta = ctx.ell, ctx.eta
    x = np.asarray(x, dtype=complex)
    out = (-1) ** k * ctx.factorial(ell) / ctx.factorial(2 * ell) * ctx.binom(ell, k)
    out = out * np.ones(x.shape, dtype=complex)
    for j in range(ell - k):
        out = out * (
            ctx.th1(2 * x + 2 * (ell - j) * eta)
            * ctx.th1(2 * lam + 2 * (ell - j) * eta)
            / ctx.th1_denominator(2 * x + 2 * lam + 2 * (k - j) * eta)
        )
    for j in range(k):
        out = out * (
            ctx.th1(2 * x - 2 * (ell - j) * eta)
            * ctx.th1(2 * lam - 2 * (ell - j) * eta)
            / ctx.th1_denominator(2 * x + 2 * lam + 2 * (k + j - ell) * eta)
        )
    return out


def build_A(lam, ctx: EllipticContext) -> DifferenceOperator:
    """Member ``A_lambda`` of the commuting family (Baxter Q-operator ``Q(2 lambda)``).

    Shifts are ``(2k - ell) eta + lambda`` for ``k = 0..ell``.  For
    ``lambda = m eta`` the constant factors are taken from the exact elliptic
    numbers, so coefficients that vanish identically are dropped.
    """
    ell, eta = ctx.ell, ctx.eta
    lam = complex(lam)
    m = lam / eta
    integer_m = abs(m - round(m.real)) < 1e-12
    terms = []
    for k in range(ell + 1):
        const = (-1) ** k * ctx.factorial(ell) / ctx.factorial(2 * ell) * ctx.binom(ell, k)
        for j in range(ell - k):
            const *= _th1_eta_multiple(ctx, 2 * lam, ell - j)
        for j in range(k):
            const *= _th1_eta_multiple(ctx, 2 * lam, -(ell - j))
        if integer_m and const == 0:
            continue

        def coeff(x, k=k, const=const):
            x = np.asarray(x, dtype=complex)
            out = const * np.ones(x.shape, dtype=complex)
            for j in range(ell - k):
                out = out * (
                    ctx.th1(2 * x + 2 * (ell - j) * eta)
                    / ctx.th1_denominator(2 * x + 2 * lam + 2 * (k - j) * eta)
                )
            for j in range(k):
                out = out * (
                    ctx.th1(2 * x - 2 * (ell - j) * eta)
                    / ctx.th1_denominator(2 * x + 2 * lam + 2 * (k + j - ell) * eta)
                )
            return out

        terms.append(((2 * k - ell) * eta + lam, coeff))
    return DifferenceOperator(terms, _merge_tol(ctx), f"A({lam})")


def build_W(ctx: EllipticContext) -> DifferenceOperator:
    """``W = A_{(ell+1) eta} - A_{-(ell+1) eta}``."""
    e = (ctx.ell + 1) * ctx.eta
    return build_A(e, ctx) - build_A(-e, ctx)


def build_intertwiner(ctx: EllipticContext, spin=None) -> DifferenceOperator:
    """Intertwiner between spins ``s`` and ``-(s+1)``; ``2s + 2`` shifts ``(2s - 2k + 1) eta``."""
    s = ctx.ell if spin is None else spin
    if 2 * s != int(2 * s) or s < 0:
        raise ValidationError(f"spin must be a non-negative half-integer, got {s}")
    n = int(round(2 * s))  # 2s
    eta = ctx.eta
    terms = []
    for k in range(n + 2):
        const = (-1) ** k * ctx.binom(n + 1, k)

        def coeff(x, k=k, const=const):
            x = np.asarray(x, dtype=complex)
            out = const * ctx.th1(2 * x + 2 * (n - 2 * k + 1) * eta)
            for j in range(n - k + 2):
                out = out / ctx.th1_denominator(2 * x + 2 * j * eta)
            for j in range(1, k + 1):
                out = out / ctx.th1_denominator(2 * x - 2 * j * eta)
            return out

        terms.append(((n - 2 * k + 1) * eta, coeff))
    return DifferenceOperator(terms, _merge_tol(ctx), f"Wcheck^({s})")


def intertwiner_prefactor(ctx: EllipticContext):
    """``phi_ell(x) = prod_{j=0}^{2 ell} theta_1(2x + 2(j - ell) eta)``."""
    ell, eta = ctx.ell, ctx.eta

    def varphi(x):
        x = np.asarray(x, dtype=complex)
        out = np.ones(x.shape, dtype=complex)
        for j in range(2 * ell + 1):
            out = out * ctx.th1(2 * x + 2 * (j - ell) * eta)
        return out

    return varphi


# -- theta function spaces ---------------------------------------------------------


@dataclass
class ThetaBasis:
    """Basis of ``Theta_n`` (parity ``"all"``) or its even part ``Theta_n^+``."""

    n: int
    parity: str
    zeros: np.ndarray
    ctx: EllipticContext = field(repr=False)
    grid: np.ndarray = field(repr=False, default=None)

    def __len__(self):
        return len(self.zeros)

    def __call__(self, x):
        x = np.asarray(x, dtype=complex)
        out = []
        for zs in self.zeros:
            v = np.ones(x.shape, dtype=complex)
            for z in zs:
                v = v * self.ctx.th1(x - z)
            out.append(v)
        return np.array(out)

    def function(self, i):
        zs = self.zeros[i]

        def f(x):
            x = np.asarray(x, dtype=complex)
            v = np.ones(x.shape, dtype=complex)
            for z in zs:
                v = v * self.ctx.th1(x - z)
            return v

        return f


def theta_space_dim(n: int, parity: str = "all") -> int:
    if parity == "all":
        return n
    if n % 2:
        raise DomainError("the even theta space is defined here for even order only")
    return n // 2 + 1


def numerical_rank(matrix, rtol=1e-9) -> int:
    sv = np.linalg.svd(matrix, compute_uv=False)
    if sv.size == 0 or sv[0] == 0:
        return 0
    return int(np.sum(sv > rtol * sv[0]))


def theta_basis(n: int, parity: str, ctx: EllipticContext, seed: int = 0, max_retries=5):
    """Random product basis ``prod theta_1(x - x_i)``, ``sum x_i = 0``, rank-verified."""
    if n < 1:
        raise DomainError("theta space order must be >= 1")
    if parity not in ("all", "even"):
        raise DomainError(f"parity must be 'all' or 'even', got {parity!r}")
    dim = theta_space_dim(n, parity)
    rng = np.random.default_rng(seed)
    tau = ctx.tau
    for _ in range(max_retries + 1):
        zeros = []
        for _ in range(dim):
            if parity == "even":
                half = rng.uniform(0, 1, n // 2) + tau * rng.uniform(0, 1, n // 2)
                zs = np.concatenate([half, -half])
            else:
                zs = rng.uniform(0, 1, n) + tau * rng.uniform(0, 1, n)
                zs[-1] = -np.sum(zs[:-1])
            zeros.append(zs)
        zeros = np.array(zeros)
        grid = rng.uniform(0, 1, 3 * n) + 1j * rng.uniform(-0.3, 0.3, 3 * n)
        basis = ThetaBasis(n, parity, zeros, ctx, grid)
        values = basis(grid).T
        scale = np.max(np.abs(values), axis=0)
        if numerical_rank(values / scale) == dim:
            return basis
    raise ConstructionError(f"could not build a rank-{dim} basis of order {n}")


def theta_monodromy_residual(f, n: int, ctx: EllipticContext, xs) -> float:
    """Deviation from ``F(x+1) = (-1)^n F(x)``, ``F(x+tau) = (-1)^n e^{-i pi n tau - 2 pi i n x} F(x)``.

    These are the multipliers of a product of ``n`` factors ``theta_1(x - x_i)``
    with ``sum x_i = 0``.
    """
    xs = np.asarray(xs, dtype=complex)
    tau = ctx.tau
    fx = f(xs)
    r1 = np.abs(f(xs + 1) - (-1) ** n * fx)
    factor = (-1) ** n * np.exp(-1j * np.pi * n * tau - 2j * np.pi * n * xs)
    r2 = np.abs(f(xs + tau) - factor * fx)
    scale = np.abs(fx) + 1e-300
    return float(max(np.max(r1 / scale), np.max(r2 / (np.abs(factor) * scale))))


def span_membership_residual(values, basis_values) -> float:
    """Relative least-squares residual of ``values`` against the columns of ``basis_values``."""
    coef, *_ = np.linalg.lstsq(basis_values, values, rcond=None)
    r = basis_values @ coef - values
    return float(np.linalg.norm(r) / np.linalg.norm(values))
