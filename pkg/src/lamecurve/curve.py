"""The spectral curve in its covering and hyperelliptic presentations.

Points are triples ``(zeta, K, E)``: ``zeta`` and ``K`` fix the Bloch
multipliers of a double-Bloch eigenfunction, ``E`` its eigenvalue.  The
covering form is a polynomial of degree ``N = ell (ell + 1) / 2`` in ``K^2``
with theta-function coefficients in ``zeta``; the hyperelliptic form is
``w^2 = binom(2ell, ell)^-2 P(E^2)``.
"""

from __future__ import annotations

import itertools
import warnings
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .errors import (
    AsymptoticsError,
    ConsistencyError,
    DegenerateFibreError,
    DomainError,
    PoleError,
)
from .polyalg import PolynomialC, TridiagBordered, det_tridiag_bordered, poly_roots
from .theta import EllipticContext
from .transfer import a_polys, q_value, t_top_zero

POINT_TOL = 1e-8
NULL_TOL = 1e-7
EDGE_TOL = 1e-6
EIGEN_TOL = 1e-8
GLUE_TOL = 1e-9
MULTIPLIER_TOL = 1e-8
HYPER_PARITY_TOL = 1e-10
W_TOL = 1e-8
SEPARATION_TOL = 1e-6


@dataclass(frozen=True)
class BlochPoint:
    zeta: complex
    K: complex
    E: complex

    def multipliers(self, ctx: EllipticContext):
        """``(B_1, B_tau)`` on the principal branch of ``log K``."""
        logK = np.log(complex(self.K))
        B1 = np.exp(logK / (2 * ctx.eta))
        Btau = np.exp(ctx.tau * logK / (2 * ctx.eta) - 2j * np.pi * self.zeta)
        return complex(B1), complex(Btau)


@dataclass
class BlochSolution:
    """Double-Bloch eigenfunction at a curve point.

    ``Psi`` is the entire eigenfunction of the Lame operator, ``psi`` its
    gauge-transformed double-Bloch version.  Both use the same branch of
    ``log K`` as :meth:`BlochPoint.multipliers`.
    """

    point: BlochPoint
    s: np.ndarray
    ctx: EllipticContext = field(repr=False)
    sigma_ratio: float = 0.0
    diagnostics: dict = field(default_factory=dict)
    _norm: complex = field(default=None, repr=False, compare=False)

    @property
    def _logK(self):
        return np.log(complex(self.point.K))

    def psi(self, x):
        ctx, zeta = self.ctx, self.point.zeta
        x = np.asarray(x, dtype=complex)
        total = 0
        for m, sm in enumerate(self.s, start=1):
            total = total + sm * ctx.phi(2 * x - 2 * m * ctx.eta, zeta)
        return np.exp(x / ctx.eta * self._logK) * total

    def Psi(self, x):
        ctx, zeta, ell, eta = self.ctx, self.point.zeta, self.ctx.ell, self.ctx.eta
        x = np.asarray(x, dtype=complex)
        total = 0
        for m, sm in enumerate(self.s, start=1):
            t = sm * ctx.th1(zeta + 2 * x - 2 * m * eta) / ctx.th1(zeta)
            for j in range(1, ell + 1):
                if j != m:
                    t = t * ctx.th1(2 * x - 2 * j * eta)
            total = total + t
        return np.exp(x / eta * self._logK) * total


@dataclass
class SpectralCurve:
    ctx: EllipticContext
    C: np.ndarray
    T_top: PolynomialC
    D: PolynomialC
    P: PolynomialC
    edges_bloch: np.ndarray
    edges_hyper: np.ndarray


# -- Bloch linear system ----------------------------------------------------------


@dataclass
class BlochMatrix:
    """``M(E) = const - E * mask`` with ``(ell+1) x ell`` entries.

    ``addends`` holds, per entry, the sum of magnitudes of its
    E-independent terms (used to normalize minors).
    """

    const: np.ndarray
    mask: np.ndarray
    addends: np.ndarray

    def __call__(self, E):
        return self.const - E * self.mask

    def abs_bound(self, E):
        return self.addends + abs(E) * self.mask


def bloch_matrix(zeta, K, ctx: EllipticContext) -> BlochMatrix:
    """Coefficient matrix of the linear system for ``s_1..s_ell``.

    Row ``i = 0..ell`` is the vanishing of the residue of the eigen-equation
    at the ``i``-th pole; column ``j`` multiplies ``s_j``.
    """
    ell, eta, n = ctx.ell, ctx.eta, ctx.num
    th = lambda x: complex(ctx.th1(x))
    thz = complex(ctx.th1_denominator(zeta))
    K = complex(K)
    const = np.zeros((ell + 1, ell), dtype=complex)
    addends = np.zeros((ell + 1, ell))
    mask = np.zeros((ell + 1, ell))
    for i in range(ell + 1):
        for j in range(1, ell + 1):
            terms = []
            if i == j - 1:
                terms.append(K)
            if i == j:
                mask[i, j - 1] = 1.0
            if i == j + 1:
                terms.append(n(j + ell + 1) * n(j - ell) / (n(j + 1) * n(j)) / K)
            if i in (0, 1):
                sign = 1 if i == 0 else -1
                terms.append(
                    sign
                    / K
                    * th(zeta - 2 * (j - i + 1) * eta)
                    / thz
                    * n(i + ell)
                    * n(i - ell - 1)
                    / (n(1) * n(j - i + 1))
                )
            const[i, j - 1] = sum(terms)
            addends[i, j - 1] = sum(abs(t) for t in terms)
    return BlochMatrix(const, mask, addends)


def minor_residuals(p: BlochPoint, ctx: EllipticContext):
    """Normalized ``det M^(0)``, ``det M^(1)``: the minors without row 0 / row 1.

    Each is divided by the Hadamard bound of the matrix of addend magnitudes.
    """
    bm = bloch_matrix(p.zeta, p.K, ctx)
    M, B = bm(p.E), bm.abs_bound(p.E)
    out = []
    for row in (0, 1):
        sub = np.delete(M, row, axis=0)
        bound = np.prod(np.linalg.norm(np.delete(B, row, axis=0), axis=1))
        out.append(float(abs(np.linalg.det(sub)) / max(bound, 1e-300)))
    return tuple(out)


def _curve_equation_terms(p: BlochPoint, ctx: EllipticContext):
    ell, eta, th = ctx.ell, ctx.eta, ctx.th1
    A = a_polys(ctx)
    zeta, K, E = complex(p.zeta), complex(p.K), complex(p.E)
    t0 = [
        (-1) ** j * K ** (-j) * complex(th(zeta - 2 * j * eta)) * ctx.binom(ell, j) * A[j](E)
        for j in range(ell + 1)
    ]
    t1 = [
        (-1) ** j
        * K ** (-j)
        * complex(th(zeta - 2 * j * eta))
        * ctx.num(j - 1)
        * ctx.binom(ell + 1, j)
        * A[j - 1](E)
        for j in range(ell + 2)
    ]
    return t0, t1


def curve_residuals(p: BlochPoint, ctx: EllipticContext):
    """The two curve equations at ``p``, each divided by its largest addend."""
    out = []
    for terms in _curve_equation_terms(p, ctx):
        scale = max(abs(t) for t in terms)
        out.append(float(abs(sum(terms)) / max(scale, 1e-300)))
    return tuple(out)


def curve_coeffs(ctx: EllipticContext) -> np.ndarray:
    """``C_0 .. C_N`` of the covering form by enumeration of subsets of ``1..ell``."""
    ell, n = ctx.ell, ctx.num
    C = np.zeros(ctx.N + 1, dtype=complex)
    parts = range(1, ell + 1)
    for r in range(ell + 1):
        kappa = r * ell + r * (r - 1) // 2
        for J in itertools.combinations(parts, r):
            rest = [k for k in parts if k not in J]
            j = sum(J)
            term = (-1) ** (kappa + j) + 0j
            for k in J:
                for kp in rest:
                    term *= n(k + kp) / n(k - kp)
            C[j] += term
    return C


def curve_eval(zeta, K, C, ctx: EllipticContext):
    """``sum_j (-1)^j C_j theta_1(zeta - 4 j eta) K^(2(N-j))`` and its
    magnitude relative to the largest addend."""
    N, eta = ctx.N, ctx.eta
    terms = [
        (-1) ** j * C[j] * complex(ctx.th1(zeta - 4 * j * eta)) * complex(K) ** (2 * (N - j))
        for j in range(N + 1)
    ]
    value = sum(terms)
    scale = max(abs(t) for t in terms)
    return complex(value), float(abs(value) / max(scale, 1e-300))


def _ksq_poly(zeta, C, ctx):
    N, eta = ctx.N, ctx.eta
    coeffs = np.zeros(N + 1, dtype=complex)
    for j in range(N + 1):
        coeffs[N - j] = (-1) ** j * C[j] * complex(ctx.th1(zeta - 4 * j * eta))
    return PolynomialC(coeffs, trim_tol=0.0)


def _g_matrix(zeta, ctx):
    ell, eta, n = ctx.ell, ctx.eta, ctx.num
    G = np.zeros((ell, ell), dtype=complex)
    for m in range(1, ell + 1):
        pref = (-1) ** (ell + 1) * n(2 * m)
        for j in range(1, ell + 1):
            if j != m:
                pref *= n(m + j) / n(m - j)
        for k in range(1, ell + 1):
            G[m - 1, k - 1] = pref * complex(ctx.phi(-2 * (m + k) * eta, zeta))
    return G


def _null_vector(K, G, ell, null_tol):
    powers = np.array([K ** (2 * m) for m in range(1, ell + 1)])
    M = np.diag(powers) + G
    _, sv, vh = np.linalg.svd(M)
    scale = max(sv[0], np.max(np.abs(powers)), np.max(np.abs(G)))
    ratio = sv[-1] / scale
    if ratio >= null_tol:
        raise DegenerateFibreError(f"no null direction: sigma_min/scale = {ratio:.3e}")
    if ell >= 2 and sv[-2] / scale < 10 * null_tol:
        raise DegenerateFibreError("null space is not one-dimensional")
    s = vh[-1].conj()
    s = s / s[np.argmax(np.abs(s))]
    if abs(s[-1]) > 1e-8:
        s = s / s[-1]
    return s, float(ratio)


def _sample_points(rng, n, ok: Callable):
    pts = []
    tries = 0
    while len(pts) < n:
        tries += 1
        if tries > 50 * n:
            raise PoleError("could not draw pole-free sample points")
        x = complex(rng.uniform(0, 1) + 1j * rng.uniform(-0.3, 0.3))
        try:
            ok(x)
        except PoleError:
            continue
        pts.append(x)
    return np.array(pts)


def eigen_residual(bs: BlochSolution, xs) -> float:
    """Residual of the gauge-transformed eigen-equation for ``psi``."""
    ctx = bs.ctx
    ell, eta, th = ctx.ell, ctx.eta, ctx.th1
    E = bs.point.E
    worst = 0.0
    for x in np.atleast_1d(xs):
        coef = (
            th(2 * x + 2 * ell * eta)
            * th(2 * x - 2 * (ell + 1) * eta)
            / (ctx.th1_denominator(2 * x) * ctx.th1_denominator(2 * x - 2 * eta))
        )
        terms = [bs.psi(x + eta), coef * bs.psi(x - eta), -E * bs.psi(x)]
        worst = max(worst, abs(sum(terms)) / sum(abs(t) for t in terms))
    return float(worst)


def glueing_residual(bs: BlochSolution) -> float:
    eta = bs.ctx.eta
    vals = [bs.Psi(j * eta) for j in range(1, bs.ctx.ell + 1)]
    ref = max(abs(bs.Psi(j * eta)) for j in range(-bs.ctx.ell - 1, bs.ctx.ell + 2))
    return float(max(abs(v - bs.Psi(-j * eta)) for j, v in enumerate(vals, start=1)) / ref)


def multiplier_residual(bs: BlochSolution, xs) -> float:
    B1, Btau = bs.point.multipliers(bs.ctx)
    tau = bs.ctx.tau
    worst = 0.0
    for x in np.atleast_1d(xs):
        p = bs.psi(x)
        worst = max(
            worst,
            abs(bs.psi(x + 0.5) - B1 * p) / (abs(B1 * p)),
            abs(bs.psi(x + tau / 2) - Btau * p) / (abs(Btau * p)),
        )
    return float(worst)


def fibre_over_zeta(
    zeta,
    ctx: EllipticContext,
    seed: int = 0,
    null_tol: float = NULL_TOL,
    point_tol: float = POINT_TOL,
    verify: bool = True,
) -> list:
    """All ``2N`` Bloch solutions over ``zeta``.

    Solves the covering equation for ``K^2``, takes both square roots, finds
    the null vector ``s`` of the reduced system and recovers ``E`` from
    ``Psi((ell-1) eta) / Psi(ell eta)``.  With ``verify`` every solution is
    checked against both curve equations, the covering equation and the
    eigen-equation at 10 random points.
    """
    zeta = complex(zeta)
    ell, eta = ctx.ell, ctx.eta
    ctx.th1_denominator(zeta)
    C = curve_coeffs(ctx)
    ys = poly_roots(_ksq_poly(zeta, C, ctx))
    G = _g_matrix(zeta, ctx)
    order = np.lexsort((np.round(np.angle(ys), 12), np.round(np.abs(ys), 12)))
    rng = np.random.default_rng(seed)
    out = []
    for y in ys[order]:
        if abs(y) == 0:
            raise DegenerateFibreError("K = 0 lies over this zeta")
        for sign in (1, -1):
            K = complex(sign * np.sqrt(y))
            s, ratio = _null_vector(K, G, ell, null_tol)
            bs = BlochSolution(BlochPoint(zeta, K, 0j), s, ctx, ratio)
            E = ctx.num(2 * ell) / ctx.num(ell) * bs.Psi((ell - 1) * eta) / bs.Psi(ell * eta)
            bs.point = BlochPoint(zeta, K, complex(E))
            if verify:
                _verify_solution(bs, C, rng, point_tol)
            out.append(bs)
    return out


def _verify_solution(bs, C, rng, point_tol):
    ctx, p = bs.ctx, bs.point
    r0, r1 = curve_residuals(p, ctx)
    _, rc = curve_eval(p.zeta, p.K, C, ctx)
    xs = _sample_points(rng, 10, lambda x: eigen_residual(bs, x))
    re = eigen_residual(bs, xs)
    d = bs.diagnostics
    d.update(curve_equations=(r0, r1), covering=rc, eigen=re, glueing=glueing_residual(bs))
    d["multiplier"] = multiplier_residual(bs, xs[:3])
    if max(r0, r1, rc) > point_tol:
        raise ConsistencyError(f"fibre point off the curve: residuals {r0:.2e}, {r1:.2e}, {rc:.2e}")
    if re > EIGEN_TOL:
        raise ConsistencyError(f"eigen-equation residual {re:.2e}")


# -- band edges and hyperelliptic form ----------------------------------------------


def _dedupe(values, tol):
    out = []
    for v in values:
        if all(abs(v - w) > tol * max(1.0, abs(v)) for w in out):
            out.append(v)
    return out


def band_edges_bloch(ctx: EllipticContext, edge_tol: float = EDGE_TOL) -> np.ndarray:
    """Edges as common roots of the two curve equations at the half-periods.

    For each ``a`` the first polynomial is solved and its roots are kept
    when the second one, divided by the sum of its addend magnitudes, is
    below ``edge_tol``.  The union is closed under ``E -> -E``.
    """
    ell, N, eta, n = ctx.ell, ctx.N, ctx.eta, ctx.num
    A = a_polys(ctx)
    found = []
    for a in range(1, 5):
        w = [complex(ctx.theta(a, 2 * (N - j) * eta)) for j in range(ell + 2)]
        p1 = PolynomialC()
        for j in range(ell + 1):
            p1 = p1 + A[j] * (w[j] * ctx.binom(ell, j))
        addends2 = [
            (lambda E, j=j: A[j - 1](E) * (w[j] * n(j - 1) * ctx.binom(ell + 1, j)))
            for j in range(ell + 2)
        ]
        if p1.degree < 1:
            continue
        for r in poly_roots(p1):
            vals = [f(r) for f in addends2]
            scale = sum(abs(v) for v in vals)
            if scale == 0 or abs(sum(vals)) / scale < edge_tol:
                found.append(complex(r))
    found = _dedupe(found, 1e-9)
    closed = list(found)
    for e in found:
        if all(abs(-e - w) > 1e-9 * max(1.0, abs(e)) for w in closed):
            closed.append(-e)
    return np.array(closed, dtype=complex)


def hyper_d(ctx: EllipticContext) -> PolynomialC:
    """``D_{2 ell}(E)`` from the bordered tridiagonal determinant."""
    ell, n = ctx.ell, ctx.num
    size = 2 * ell
    sub = [n(2 * ell + 1 + i) / n(ell + 1 + i) for i in range(2, size + 1)]
    sup = [n(i + 1) / n(ell + 1 + i) for i in range(1, size)]
    last = np.zeros(size - 1, dtype=complex)
    for k in range(1, ell + 1):
        last[2 * k - 2] += d_coefficient(k, ctx)
    last[size - 2] += n(4 * ell + 1) / n(3 * ell + 1)
    m = TridiagBordered([PolynomialC([0.0, -1.0])] * size, sub, sup, last)
    scale = (-1) ** ell * n(2 * ell + 1) / n(ell + 1) / ctx.binom(2 * ell, ell)
    return det_tridiag_bordered(m) * scale


def d_coefficient(k: int, ctx: EllipticContext) -> complex:
    """Entry ``d_{2k}`` of the last row of the D-matrix."""
    ell, n = ctx.ell, ctx.num
    return (
        (-1) ** (ell - k)
        * n(ell + 2 * k)
        / n(k)
        * ctx.binom(3 * ell, ell)
        * ctx.binom(2 * ell + 1, ell + k)
        / ctx.binom(2 * ell + k + 1, k)
    )


def d_last_element(ctx: EllipticContext) -> complex:
    """Entry ``(2 ell, 2 ell - 1)`` of the D-matrix (1-based)."""
    ell = ctx.ell
    v = ctx.num(4 * ell + 1) / ctx.num(3 * ell + 1)
    if ell >= 1:
        v += d_coefficient(ell, ctx)
    return v


@dataclass
class HyperData:
    T_top: PolynomialC
    D: PolynomialC
    P: PolynomialC
    odd_residual: float


def hyperelliptic(ctx: EllipticContext) -> HyperData:
    """``T_{2ell+1}(0, E)``, ``D_{2ell}(E)`` and ``P_{2ell+1}(y)``, ``y = E^2``."""
    ell = ctx.ell
    T = t_top_zero(ctx)
    D = hyper_d(ctx)
    Q = T * T * (1 / ctx.factorial(2 * ell) ** 2) - D * 4
    odd = float(np.max(np.abs(Q.coeffs[1::2])) / Q.max_abs()) if Q.degree else 0.0
    if odd > HYPER_PARITY_TOL:
        raise ConsistencyError(f"T^2/[2ell]!^2 - 4D is not even: {odd:.3e}")
    P = Q.even_part_in_square() * ctx.binom(2 * ell, ell) ** 2
    return HyperData(T, D, P, odd)


def root_separation(p: PolynomialC) -> float:
    r = poly_roots(p)
    if len(r) < 2:
        return float("inf")
    d = np.abs(r[:, None] - r[None, :])
    return float(np.min(d[~np.eye(len(r), dtype=bool)]))


def band_edges_hyper(ctx: EllipticContext, hyper: HyperData = None) -> np.ndarray:
    """``+-sqrt(y_i)`` over the roots ``y_i`` of ``P``."""
    hyper = hyperelliptic(ctx) if hyper is None else hyper
    y = poly_roots(hyper.P)
    if root_separation(hyper.P) < SEPARATION_TOL:
        warnings.warn("near-multiple roots of P: band edges are ill-conditioned", RuntimeWarning)
    r = np.sqrt(y.astype(complex))
    return np.concatenate([r, -r])


def match_multisets(a, b) -> float:
    """Max discrepancy of an optimal one-to-one matching (greedy on sorted distances)."""
    a, b = list(np.asarray(a)), list(np.asarray(b))
    if len(a) != len(b):
        return float("inf")
    pairs = sorted(
        ((abs(x - y), i, j) for i, x in enumerate(a) for j, y in enumerate(b)), key=lambda t: t[0]
    )
    used_a, used_b, worst = set(), set(), 0.0
    for d, i, j in pairs:
        if i in used_a or j in used_b:
            continue
        used_a.add(i)
        used_b.add(j)
        worst = max(worst, d)
    return float(worst)


def spectral_curve(ctx: EllipticContext) -> SpectralCurve:
    hyper = hyperelliptic(ctx)
    return SpectralCurve(
        ctx,
        curve_coeffs(ctx),
        hyper.T_top,
        hyper.D,
        hyper.P,
        band_edges_bloch(ctx),
        band_edges_hyper(ctx, hyper),
    )


# -- values on points ------------------------------------------------------------


def z_value(bs: BlochSolution) -> complex:
    """Eigenvalue of ``A_{(ell+1) eta}``, i.e. ``Q(2 (ell+1) eta)``."""
    return q_value(bs, 2 * (bs.ctx.ell + 1) * bs.ctx.eta)


def w_value(p: BlochPoint, z, ctx: EllipticContext, tol: float = W_TOL) -> complex:
    """``w = 2 z - T_{2ell+1}(0, E) / [2ell]!``, checked against ``P(E^2)``."""
    ell = ctx.ell
    hyper = hyperelliptic(ctx)
    E = complex(p.E)
    w = 2 * complex(z) - hyper.T_top(E) / ctx.factorial(2 * ell)
    rhs = hyper.P(E * E) / ctx.binom(2 * ell, ell) ** 2
    scale = max(abs(w) ** 2, abs(rhs), abs(hyper.T_top(E) / ctx.factorial(2 * ell)) ** 2)
    if abs(w * w - rhs) > tol * scale:
        raise ConsistencyError(f"w^2 does not match P(E^2): {abs(w * w - rhs) / scale:.3e}")
    return complex(w)


def epsilon_xi(E, z, ctx: EllipticContext):
    """Eigenvalues of ``A_{(ell-2) eta}`` and ``A_{(ell+2) eta}`` from ``(E, z)``."""
    ell, n = ctx.ell, ctx.num
    if ell < 2:
        raise DomainError("epsilon needs ell >= 2")
    E, z = complex(E), complex(z)
    eps = n(ell - 1) * n(ell) / (n(2 * ell) * n(2 * ell - 1)) * (
        E * E + n(1) * n(2 * ell) / (n(ell - 1) * n(ell))
    )
    xi = n(ell + 1) / n(1) * (E * z - n(2 * ell + 1) / n(ell + 1))
    return complex(eps), complex(xi)


def operator_eigenvalue(bs: BlochSolution, lam) -> complex:
    """``(A_lambda Psi)(ell eta) / Psi(ell eta)``."""
    from .diffop import build_A

    x = bs.ctx.ell * bs.ctx.eta
    return complex(build_A(lam, bs.ctx).apply(bs.Psi, x) / bs.Psi(x))


def epsilon_xi_residual(bs: BlochSolution) -> float:
    ctx = bs.ctx
    eps, xi = epsilon_xi(bs.point.E, z_value(bs), ctx)
    e2 = operator_eigenvalue(bs, (ctx.ell - 2) * ctx.eta)
    x2 = operator_eigenvalue(bs, (ctx.ell + 2) * ctx.eta)
    return float(max(abs(eps - e2) / abs(e2), abs(xi - x2) / abs(x2)))


# -- symmetries ---------------------------------------------------------------------


def lattice_image(p: BlochPoint, ctx: EllipticContext) -> BlochPoint:
    return BlochPoint(p.zeta + ctx.tau, p.K * np.exp(4j * np.pi * ctx.eta), p.E)


def reflection_image(p: BlochPoint) -> BlochPoint:
    return BlochPoint(p.zeta, -p.K, -p.E)


def involution_partner(bs: BlochSolution, seed: int = 0) -> BlochSolution:
    """Solution over ``4 N eta - zeta`` whose ``K`` is closest to ``1/K``."""
    ctx, p = bs.ctx, bs.point
    fibre = fibre_over_zeta(4 * ctx.N * ctx.eta - p.zeta, ctx, seed=seed)
    return min(fibre, key=lambda b: abs(b.point.K - 1 / p.K))


def involution_residuals(bs: BlochSolution) -> dict:
    """Residuals of the lattice shift, the reflection and the hyperelliptic involution."""
    ctx, p = bs.ctx, bs.point
    C = curve_coeffs(ctx)
    partner = involution_partner(bs)
    q = partner.point
    return {
        "lattice": max(curve_residuals(lattice_image(p, ctx), ctx)),
        "reflection": max(curve_residuals(reflection_image(p), ctx)),
        "involution_curve": curve_eval(4 * ctx.N * ctx.eta - p.zeta, 1 / p.K, C, ctx)[1],
        "involution_K": float(abs(q.K - 1 / p.K) / abs(1 / p.K)),
        "involution_E": float(abs(q.E - p.E) / max(abs(p.E), 1.0)),
    }


# -- infinite points -----------------------------------------------------------------


def asymptotics_check(ctx: EllipticContext, distances=(1e-3, 1e-4)) -> dict:
    """Leading behaviour near the two points over ``E = infinity``.

    Near ``zeta = 0`` the large-``|K|`` branch has ``E/K -> 1`` and
    ``K^2 theta_1(zeta) -> -[ell][ell+1]/[1]``; near ``zeta = 4 N eta`` the
    small-``|K|`` branch has ``E K -> 1``.
    """
    ell, n = ctx.ell, ctx.num
    ref = -n(ell) * n(ell + 1) / n(1)
    plus, minus, ksq = [], [], []
    for d in distances:
        big = max(fibre_over_zeta(d, ctx, verify=False), key=lambda b: abs(b.point.K))
        small = min(
            fibre_over_zeta(4 * ctx.N * ctx.eta + d, ctx, verify=False),
            key=lambda b: abs(b.point.K),
        )
        K, E = big.point.K, big.point.E
        plus.append(float(abs(E / K - 1)))
        ksq.append(float(abs(K * K * complex(ctx.th1(d)) / ref - 1)))
        minus.append(float(abs(small.point.E * small.point.K - 1)))
    report = {
        "distances": list(distances),
        "plus": plus,
        "minus": minus,
        "ksq": ksq,
        "plus_ratio": plus[0] / plus[-1],
        "minus_ratio": minus[0] / minus[-1],
    }
    for key in ("plus_ratio", "minus_ratio"):
        if not 5 <= report[key] <= 20:
            raise AsymptoticsError(f"{key} = {report[key]:.3f} is not first order")
    if ksq[-1] > 5e-3:
        raise AsymptoticsError(f"K^2 theta_1(zeta) off by {ksq[-1]:.3e}")
    return report
