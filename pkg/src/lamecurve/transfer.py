"""Eigenvalue polynomials of the transfer matrices and of the commuting family.

``T_s(u, E)`` is the eigenvalue of the fused transfer matrix on a common
eigenfunction of the Lame operator with eigenvalue ``E``; ``A_{j eta}(E)`` is
the eigenvalue of ``A_{j eta}``.  Every quantity is computed along two
independent routes and the routes are compared; disagreement is an error.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass

import numpy as np

from .errors import ConsistencyError, DomainError, NormalizationError, NumericalLimitError
from .polyalg import PolynomialC, TridiagBordered, det_tridiag_bordered, extract_poly
from .theta import EllipticContext

AE_TOL = 1e-10
FUSION_TOL = 1e-9
LIMIT_DELTA = 1e-3
LIMIT_TOL = 1e-8
PARITY_TOL = 1e-10

# fixed probe values of E for the fusion cross-check
_FUSION_PROBES = np.array([0.7 - 0.4j, -0.3 + 0.9j, 1.1 + 0.2j, -0.8 - 0.6j, 0.25 + 0.05j])

_E = PolynomialC([0.0, 1.0])


@dataclass(frozen=True)
class APoly:
    """Eigenvalue ``A_{j eta}(E)`` of the commuting family at ``lambda = j eta``."""

    j: int
    poly: PolynomialC


@dataclass(frozen=True)
class TransferPoly:
    """``T_s(u, E)`` as a polynomial in ``E`` at fixed ``u``."""

    s: int
    u: complex
    poly: PolynomialC


# -- A_{j eta}(E) ---------------------------------------------------------------


def _rel_diff(p: PolynomialC, q: PolynomialC) -> float:
    n = max(len(p.coeffs), len(q.coeffs), 1)
    scale = max(p.max_abs(), q.max_abs(), 1e-300)
    return float(np.max(np.abs(p.padded(n) - q.padded(n))) / scale)


@functools.lru_cache(maxsize=64)
def _a_recurrence(ctx: EllipticContext) -> dict:
    """``A_{(ell-s) eta}`` for ``s = 0..ell`` by the three-term recurrence."""
    ell, n = ctx.ell, ctx.num
    A = {ell: PolynomialC([1.0])}
    if ell >= 1:
        A[ell - 1] = _E * (n(ell) / n(2 * ell))
    for s in range(1, ell):
        A[ell - s - 1] = _E * A[ell - s] * (n(ell - s) / n(2 * ell - s)) + A[ell - s + 1] * (
            n(s) / n(2 * ell - s)
        )
    return A


def a_determinant(s: int, ctx: EllipticContext) -> PolynomialC:
    """``A_{(ell-s) eta}(E)`` from its ``s x s`` tridiagonal determinant."""
    ell, n = ctx.ell, ctx.num
    if not 0 <= s <= ell:
        raise DomainError(f"determinant route needs 0 <= s <= ell, got s={s}")
    if s == 0:
        return PolynomialC([1.0])
    m = TridiagBordered(
        [_E] * s,
        [n(2 * ell + 2 - i) / n(ell + 1 - i) for i in range(2, s + 1)],
        [n(-i) / n(ell + 1 - i) for i in range(1, s)],
    )
    return det_tridiag_bordered(m) * (ctx.binom(ell, s) / ctx.binom(2 * ell, s))


@functools.lru_cache(maxsize=64)
def _a_checked(ctx: EllipticContext) -> dict:
    A = _a_recurrence(ctx)
    for s in range(ctx.ell + 1):
        err = _rel_diff(A[ctx.ell - s], a_determinant(s, ctx))
        if err > AE_TOL:
            raise ConsistencyError(
                f"A_(ell-{s})eta: recurrence and determinant differ by {err:.3e}"
            )
    return A


def a_poly(j: int, ctx: EllipticContext) -> APoly:
    """Eigenvalue polynomial of ``A_{j eta}``, ``|j| <= ell``; degree ``ell - |j|``."""
    if abs(j) > ctx.ell:
        raise DomainError(f"a_poly needs |j| <= ell = {ctx.ell}, got j={j}")
    return APoly(int(j), _a_checked(ctx)[abs(int(j))])


def a_polys(ctx: EllipticContext) -> dict:
    """All ``A_{j eta}(E)`` for ``-ell <= j <= ell`` keyed by ``j``."""
    A = _a_checked(ctx)
    return {j: A[abs(j)] for j in range(-ctx.ell, ctx.ell + 1)}


def a_parity_residual(ctx: EllipticContext) -> float:
    """Max relative deviation from ``A_{(ell-s) eta}(-E) = (-1)^s A_{(ell-s) eta}(E)``."""
    A = _a_checked(ctx)
    worst = 0.0
    for s in range(ctx.ell + 1):
        p = A[ctx.ell - s]
        worst = max(worst, _rel_diff(p.reflect(), p * ((-1) ** s)))
    return worst


# -- T_s(u, E) ------------------------------------------------------------------


def _tij(s, u, ctx):
    ell, eta, th = ctx.ell, ctx.eta, ctx.th1
    diag = [complex(th(u + (s + 1 - 2 * i) * eta)) for i in range(1, s + 1)]
    sup = [complex(th(u + (s - 2 * ell - 1 - 2 * i) * eta)) for i in range(1, s)]
    sub = [complex(th(u + (s + 2 * ell + 3 - 2 * i) * eta)) for i in range(2, s + 1)]
    return diag, sub, sup


def _t_prefactor(s, u, ctx):
    """Denominator of the determinant formula for ``s > 2 ell`` (1 otherwise)."""
    ell, eta = ctx.ell, ctx.eta
    out = 1 + 0j
    for i in range(1, s - 2 * ell + 1):
        out *= complex(ctx.th1_denominator(u + (2 * ell + 2 * i - s - 1) * eta))
    return out


def t_dense(s: int, u, E, ctx: EllipticContext) -> complex:
    """Scalar ``T_s(u, E)`` from the dense determinant (before any division)."""
    if s == 0:
        return 1 + 0j
    diag, sub, sup = _tij(s, u, ctx)
    m = np.diag(np.asarray(diag) * E).astype(complex)
    m += np.diag(sub, -1) + np.diag(sup, 1)
    return complex(np.linalg.det(m))


def t_fusion(s: int, u, E, ctx: EllipticContext) -> complex:
    """Scalar ``T_s(u, E)`` from the fusion recurrence."""
    ell, eta, th = ctx.ell, ctx.eta, ctx.th1

    @functools.lru_cache(maxsize=None)
    def rec(s, u):
        if s == 0:
            return 1 + 0j
        if s == 1:
            return E * complex(th(u))
        r = s - 1
        first = E * complex(th(u - r * eta)) * rec(r, u + eta)
        if r < 2 * ell:
            w = th(u - r * eta - 2 * ell * eta) * th(u - r * eta + 2 * (ell + 1) * eta)
            return first - complex(w) * rec(r - 1, u + 2 * eta)
        if r == 2 * ell:
            w = th(u + 2 * eta) * th(u - 4 * ell * eta)
            return (first - complex(w) * rec(r - 1, u + 2 * eta)) / complex(ctx.th1_denominator(u))
        w = th(u - r * eta - 2 * ell * eta)
        den = ctx.th1_denominator(u - r * eta + 2 * ell * eta)
        return (first - complex(w) * rec(r - 1, u + 2 * eta)) / complex(den)

    return rec(int(s), complex(u))


def t_poly(s: int, u, ctx: EllipticContext, check: bool = True) -> TransferPoly:
    """``T_s(u, E)`` in ``E`` from the tridiagonal determinant.

    For ``s > 2 ell`` the determinant is divided by the prefactor product; the
    quotient is a polynomial.  With ``check`` the result is compared with the
    fusion recurrence at five probe values of ``E``.
    """
    if s < 0:
        raise DomainError(f"transfer level must be >= 0, got {s}")
    u = complex(u)
    if s == 0:
        return TransferPoly(0, u, PolynomialC([1.0]))
    diag, sub, sup = _tij(s, u, ctx)
    m = TridiagBordered([PolynomialC([0.0, d]) for d in diag], sub, sup)
    poly = det_tridiag_bordered(m) / _t_prefactor(s, u, ctx)
    if check:
        for E in _FUSION_PROBES:
            a, b = poly(E), t_fusion(s, u, E, ctx)
            err = abs(a - b) / max(abs(a), abs(b), 1e-300)
            if err > FUSION_TOL:
                raise ConsistencyError(
                    f"T_{s}(u={u}): determinant and fusion differ by {err:.3e} at E={E}"
                )
    return TransferPoly(s, u, poly)


def fusion_residual(s: int, u, ctx: EllipticContext) -> float:
    """Max relative gap between determinant and fusion values over the probe ``E``."""
    poly = t_poly(s, u, ctx, check=False).poly
    worst = 0.0
    for E in _FUSION_PROBES:
        a, b = poly(E), t_fusion(s, u, E, ctx)
        worst = max(worst, abs(a - b) / max(abs(a), abs(b), 1e-300))
    return float(worst)


def t_limit_check(s: int, u0, ctx: EllipticContext, h: float = 1e-4) -> float:
    """Two-sided approach to ``u0`` for ``s > 2 ell``: symmetric averages at
    ``h`` and ``h/2`` must agree, which they do when the limit is finite."""

    def avg(k):
        p = t_poly(s, u0 + k, ctx, check=False).poly
        q = t_poly(s, u0 - k, ctx, check=False).poly
        return (p + q) / 2

    return _rel_diff(avg(h), avg(h / 2))


def t_monodromy_residual(s: int, E, us, ctx: EllipticContext) -> float:
    """Theta-space law in ``u`` for ``T_s(u, E)``, ``1 <= s <= 2 ell``."""
    from .diffop import theta_monodromy_residual

    if not 1 <= s <= 2 * ctx.ell:
        raise DomainError(f"monodromy law holds for 1 <= s <= 2 ell, got s={s}")
    f = np.vectorize(lambda u: t_dense(s, u, E, ctx), otypes=[complex])
    return theta_monodromy_residual(f, s, ctx, us)


def _t_top_scalar(E, ctx, delta):
    s = 2 * ctx.ell + 1

    def f(h):
        return t_dense(s, h, E, ctx) / complex(ctx.th1(h))

    def g(h):
        return (f(h) + f(-h)) / 2

    return (4 * g(delta / 2) - g(delta)) / 3


@functools.lru_cache(maxsize=64)
def _t_top(ctx: EllipticContext, delta: float) -> PolynomialC:
    deg = 2 * ctx.ell + 1
    p = extract_poly(lambda E: _t_top_scalar(E, ctx, delta), deg)
    q = extract_poly(lambda E: _t_top_scalar(E, ctx, 2 * delta), deg)
    err = _rel_diff(p, q)
    if err > LIMIT_TOL:
        raise NumericalLimitError(f"u -> 0 extrapolation unstable: {err:.3e}")
    if np.max(np.abs(p.coeffs[0::2])) > PARITY_TOL * p.max_abs():
        raise ConsistencyError("T_{2 ell + 1}(0, E) is not odd in E")
    return p


def t_top_zero(ctx: EllipticContext, delta: float = LIMIT_DELTA) -> PolynomialC:
    """``T_{2 ell + 1}(0, E)``, the ``u -> 0`` limit of ``det / theta_1(u)``.

    The limit is taken by Richardson extrapolation of the even part in ``u``
    from ``delta`` and ``delta / 2``, repeated with ``2 delta`` as a
    stability check.
    """
    return _t_top(ctx, float(delta))


def at_identification(s: int, ctx: EllipticContext) -> float:
    """Relative gap between ``A_{(ell-s) eta}`` and ``[2ell-s]!/[2ell]! T_s((2ell-s+1) eta)``."""
    ell = ctx.ell
    if not 0 <= s <= 2 * ell:
        raise DomainError(f"identification needs 0 <= s <= 2 ell, got s={s}")
    t = t_poly(s, (2 * ell - s + 1) * ctx.eta, ctx).poly
    scaled = t * (ctx.factorial(2 * ell - s) / ctx.factorial(2 * ell))
    return _rel_diff(a_poly(ell - s, ctx).poly, scaled)


# -- Q-function -----------------------------------------------------------------


def q_value(bs, u) -> complex:
    """``Q(u) = Psi(u/2) / Psi(ell eta)`` on a Bloch solution."""
    return complex(bs.Psi(complex(u) / 2)) / _psi_norm(bs)


def _psi_norm(bs) -> complex:
    cached = getattr(bs, "_norm", None)
    if cached is not None:
        return cached
    ctx = bs.ctx
    eta, ell = ctx.eta, ctx.ell
    norm = complex(bs.Psi(ell * eta))
    ref = max(abs(complex(bs.Psi(j * eta))) for j in range(-ell - 1, ell + 2))
    if abs(norm) < ctx.pole_guard * ref:
        raise NormalizationError(f"Psi(ell eta) = {norm:.3e} vanishes")
    bs._norm = norm
    return norm


def baxter_residual(bs, u) -> float:
    """Normalized residual of the T-Q relation at ``u``."""
    ctx = bs.ctx
    eta, ell, th = ctx.eta, ctx.ell, ctx.th1
    E = bs.point.E
    terms = [
        th(u - 2 * ell * eta) * q_value(bs, u + 2 * eta),
        th(u + 2 * ell * eta) * q_value(bs, u - 2 * eta),
        -E * th(u) * q_value(bs, u),
    ]
    return float(abs(sum(terms)) / sum(abs(t) for t in terms))


def q_transfer_value(bs, s: int, u) -> complex:
    """``T_s(u, E)`` expressed through ``Q``; for ``s = 2 ell`` the prefactor
    product is empty."""
    ctx = bs.ctx
    eta, ell, th = ctx.eta, ctx.ell, ctx.th1
    if not 1 <= s <= 2 * ell:
        raise DomainError(f"Q-expression checked for 1 <= s <= 2 ell, got s={s}")
    Q = lambda v: q_value(bs, v)
    pref = Q(u + (s + 1) * eta) * Q(u - (s + 1) * eta)
    for p in range(1, 2 * ell - s + 1):
        pref /= complex(ctx.th1_denominator(u + (2 * ell + 1 - s - 2 * p) * eta))
    total = 0j
    for j in range(s + 1):
        num = 1 + 0j
        for q in range(1, 2 * ell + 1):
            num *= complex(th(u + (2 * ell + 1 + s - 2 * j - 2 * q) * eta))
        total += num / (Q(u + (s - 2 * j - 1) * eta) * Q(u + (s - 2 * j + 1) * eta))
    return pref * total


def q_transfer_residual(bs, s: int, u, t: PolynomialC = None) -> float:
    """Relative gap between the Q-expression and ``T_s(u, E)``.

    ``t`` may carry a precomputed ``T_s(u, .)``.
    """
    a = q_transfer_value(bs, s, u)
    t = t_poly(s, u, bs.ctx).poly if t is None else t
    b = t(bs.point.E)
    return float(abs(a - b) / max(abs(b), 1e-300))


def taa_residual(bs, xs) -> float:
    """``[2ell]! (A_{(ell+1) eta} + A_{-(ell+1) eta}) Psi = T_{2ell+1}(0, E) Psi``."""
    from .diffop import build_A

    ctx = bs.ctx
    lam = (ctx.ell + 1) * ctx.eta
    op = build_A(lam, ctx) + build_A(-lam, ctx)
    xs = np.asarray(xs, dtype=complex)
    lhs = ctx.factorial(2 * ctx.ell) * op.apply(bs.Psi, xs)
    rhs = t_top_zero(ctx)(bs.point.E) * bs.Psi(xs)
    return float(np.max(np.abs(lhs - rhs) / (np.abs(lhs) + np.abs(rhs))))
