"""Matrix forms of the commuting pair ``L``, ``A = A_{(ell+1) eta}``.

The ``(2ell+1) x (2ell+1)`` pair acts on vectors of shifted values of an
eigenfunction; the dual ``2 x 2`` monodromy matrix acts on
``(Psi(x), Psi(x + eta))``.  Both yield the spectral curve as a
characteristic equation.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from .errors import ConditioningError, ConsistencyError, DomainError, PoleError
from .diffop import a_coefficient, build_A
from .polyalg import PolynomialC, extract_poly
from .theta import EllipticContext

COND_LIMIT = 1e10
COEFF_TOL = 1e-10
Z_SAMPLES = (1.0, 2.0, 1.0 + 1.0j)


def _maxabs(m):
    return float(np.max(np.abs(m)))


def c_plus(x, ctx: EllipticContext):
    return ctx.th1(2 * x + 2 * ctx.ell * ctx.eta) / ctx.th1_denominator(2 * x)


def c_minus(x, ctx: EllipticContext):
    return ctx.th1(2 * x - 2 * ctx.ell * ctx.eta) / ctx.th1_denominator(2 * x)


def a_odd(k: int, x, ctx: EllipticContext):
    """``a_{2k+1}(x)``: coefficient of the shift ``(2k+1) eta`` in ``A_{(ell+1) eta}``."""
    return a_coefficient(k, x, (ctx.ell + 1) * ctx.eta, ctx)


@dataclass
class LaxPair:
    ctx: EllipticContext
    a: Callable = None

    def __post_init__(self):
        if self.a is None:
            self.a = lambda k, x: complex(a_odd(k, x, self.ctx))

    @property
    def size(self):
        return 2 * self.ctx.ell + 1

    def A_mat(self, x, z):
        """Maps ``(Psi(x+eta), .., Psi(x+(2ell+1)eta))`` to the same vector at ``x - eta``."""
        n, ell = self.size, self.ctx.ell
        m = np.zeros((n, n), dtype=complex)
        for k in range(ell + 1):
            m[0, 2 * k] = self.a(k, x) / z
        m[np.arange(1, n), np.arange(n - 1)] = 1.0
        return m

    def A_inv_closed(self, x, z):
        """Inverse of ``A_mat(x, z)`` written out: shift up, last row solved for."""
        n, ell = self.size, self.ctx.ell
        m = np.zeros((n, n), dtype=complex)
        m[np.arange(n - 1), np.arange(1, n)] = 1.0
        top = self.a(ell, x)
        m[n - 1, 0] = z / top
        for k in range(ell):
            m[n - 1, 2 * k + 1] = -self.a(k, x) / top
        return m

    def C_plus(self, x):
        eta = self.ctx.eta
        return np.array([complex(c_plus(x + j * eta, self.ctx)) for j in range(1, self.size + 1)])

    def C_minus(self, x):
        eta = self.ctx.eta
        return np.array([complex(c_minus(x + j * eta, self.ctx)) for j in range(1, self.size + 1)])

    def L_mat(self, x, z):
        """``C_+ A(x, z) + C_- A(x + eta, z)^-1``, the inverse taken numerically."""
        nxt = self.A_mat(x + self.ctx.eta, z)
        cond = np.linalg.cond(nxt)
        if not cond < COND_LIMIT:
            raise ConditioningError(f"A(x + eta, z) has condition number {cond:.3e}")
        inv = np.linalg.inv(nxt)
        return self.C_plus(x)[:, None] * self.A_mat(x, z) + self.C_minus(x)[:, None] * inv


def lax_build(ctx: EllipticContext, seed: int = 0) -> LaxPair:
    """Build the pair and cross-check it.

    The ``a`` coefficients are compared with the operator ``A_{(ell+1) eta}``
    and the numeric inverse with the closed form, each at three random points.
    """
    pair = LaxPair(ctx)
    op = build_A((ctx.ell + 1) * ctx.eta, ctx)
    rng = np.random.default_rng(seed)
    for x in _random_points(rng, 3, lambda x: pair.L_mat(x, 1.3 - 0.4j)):
        for k in range(ctx.ell + 1):
            c = op.coefficient((2 * k + 1) * ctx.eta)
            ref, val = complex(c(x)), pair.a(k, x)
            if abs(ref - val) > COEFF_TOL * max(abs(ref), 1.0):
                raise ConsistencyError(f"a_{2 * k + 1}({x}) differs from the operator coefficient")
        z = 0.7 + 0.5j
        num = np.linalg.inv(pair.A_mat(x + ctx.eta, z))
        closed = pair.A_inv_closed(x + ctx.eta, z)
        if _maxabs(num - closed) > COEFF_TOL * max(_maxabs(closed), 1.0):
            raise ConsistencyError("numeric and closed-form inverses of A differ")
    return pair


def _random_points(rng, n, probe):
    pts = []
    while len(pts) < n:
        x = complex(rng.uniform(0, 1) + 1j * rng.uniform(-0.3, 0.3))
        try:
            probe(x)
        except (PoleError, ConditioningError):
            continue
        pts.append(x)
    return pts


def sample_points(ctx: EllipticContext, n: int, seed: int = 0, pair: "LaxPair" = None):
    """Random ``x`` where ``L(x - eta)`` and ``L(x)`` are finite and well conditioned."""
    pair = LaxPair(ctx) if pair is None else pair
    rng = np.random.default_rng(seed)

    def probe(x):
        pair.L_mat(x - ctx.eta, 1.0)
        pair.L_mat(x, 1.0)

    return np.array(_random_points(rng, n, probe))


def lax_residual(ctx: EllipticContext, z, samples, pair: LaxPair = None) -> float:
    """``max |L(x - eta) A(x) - A(x) L(x)| / max(|L(x - eta) A(x)|, |A(x) L(x)|)``."""
    pair = lax_build(ctx) if pair is None else pair
    worst = 0.0
    rng = np.random.default_rng(12345)
    for x in np.atleast_1d(samples):
        for _ in range(4):
            try:
                left = pair.L_mat(x - ctx.eta, z) @ pair.A_mat(x, z)
                right = pair.A_mat(x, z) @ pair.L_mat(x, z)
                break
            except PoleError:
                x = complex(rng.uniform(0, 1) + 1j * rng.uniform(-0.3, 0.3))
        else:
            raise PoleError("could not find a pole-free sample", x)
        worst = max(worst, _maxabs(left - right) / max(_maxabs(left), _maxabs(right)))
    return worst


def lax_vector(Psi, x, ctx: EllipticContext):
    return np.array([complex(Psi(x + j * ctx.eta)) for j in range(1, 2 * ctx.ell + 2)])


def char_decompose(ctx: EllipticContext, x, pair: LaxPair = None, z_scale: float = 1.0):
    """``det(L(x, z) - E) = alpha z + F(E) + G(E) / z``.

    Three values of ``z`` per node in ``E`` give ``(alpha, F, G)``; ``F`` and
    ``G`` are then interpolated as polynomials of degree ``2 ell + 1`` and
    ``2 ell``.  ``alpha`` is the mean over nodes; its spread is reported.
    """
    pair = lax_build(ctx) if pair is None else pair
    n = pair.size
    zs = np.array(Z_SAMPLES, dtype=complex) * z_scale
    system = np.array([[z, 1.0, 1.0 / z] for z in zs])
    if np.linalg.cond(system) > COND_LIMIT:
        raise DomainError("z-sample system is singular")
    Ls = [pair.L_mat(x, z) for z in zs]
    cache = {}

    def solve(E):
        E = complex(E)
        if E not in cache:
            vals = [np.linalg.det(L - E * np.eye(n)) for L in Ls]
            cache[E] = np.linalg.solve(system, vals)
        return cache[E]

    F = extract_poly(lambda E: solve(E)[1], n)
    G = extract_poly(lambda E: solve(E)[2], n)
    alphas = np.array([v[0] for v in cache.values()])
    alpha = complex(np.mean(alphas))
    spread = float(np.max(np.abs(alphas - alpha)) / abs(alpha))
    return alpha, F, G, spread


@dataclass
class DualMonodromy:
    ctx: EllipticContext

    def calL(self, x, E):
        ctx = self.ctx
        cp = complex(c_plus(x + ctx.eta, ctx))
        cm = complex(c_minus(x + ctx.eta, ctx))
        return np.array([[0.0, 1.0], [-cp / cm, E / cm]], dtype=complex)

    def calA(self, x, E):
        """``sum_k diag(a_{2k+1}(x), a_{2k+1}(x + eta)) L(x + 2k eta) .. L(x)``."""
        ctx = self.ctx
        total = np.zeros((2, 2), dtype=complex)
        for k in range(ctx.ell + 1):
            prod = np.eye(2, dtype=complex)
            for j in range(2 * k + 1):
                prod = self.calL(x + j * ctx.eta, E) @ prod
            weights = np.diag([complex(a_odd(k, x, ctx)), complex(a_odd(k, x + ctx.eta, ctx))])
            total += weights @ prod
        return total


def dual_build(ctx: EllipticContext) -> DualMonodromy:
    return DualMonodromy(ctx)


def dual_residual(dual: DualMonodromy, x, E) -> float:
    """``A(x + eta) L(x) - L(x) A(x)``, normalized."""
    left = dual.calA(x + dual.ctx.eta, E) @ dual.calL(x, E)
    right = dual.calL(x, E) @ dual.calA(x, E)
    return _maxabs(left - right) / max(_maxabs(left), _maxabs(right))


def dual_invariants(dual: DualMonodromy, xs, E):
    """Trace and determinant of ``calA`` at each ``x``."""
    out = []
    for x in np.atleast_1d(xs):
        m = dual.calA(x, E)
        out.append((complex(np.trace(m)), complex(np.linalg.det(m))))
    return out


def cauchy_residual(n: int, xs, zeta, ctx: EllipticContext) -> float:
    """Elliptic Cauchy determinant against its product form.

    ``det(theta_1(x_i + x_j + zeta) / theta_1(x_i + x_j))`` equals
    ``theta_1(zeta)^(n-1) theta_1(zeta + 2 sum x_i) / prod theta_1(2 x_i)``
    times ``prod_{i<j} theta_1(x_i - x_j)^2 / theta_1(x_i + x_j)^2``.
    """
    xs = np.asarray(xs, dtype=complex)
    if len(xs) != n:
        raise DomainError(f"need {n} points, got {len(xs)}")
    th = ctx.th1
    S = xs[:, None] + xs[None, :]
    try:
        mat = th(S + zeta) / ctx.th1_denominator(S)
    except PoleError as exc:
        raise DomainError(f"Cauchy identity needs theta_1(x_i + x_j) != 0: {exc}") from exc
    rhs = complex(th(zeta)) ** (n - 1) * complex(th(zeta + 2 * np.sum(xs)))
    rhs /= complex(np.prod(th(2 * xs)))
    for i in range(n):
        for j in range(i + 1, n):
            rhs *= (complex(th(xs[i] - xs[j])) / complex(th(xs[i] + xs[j]))) ** 2
    lhs = complex(np.linalg.det(mat))
    return float(abs(lhs - rhs) / max(abs(lhs), abs(rhs)))


def z_triangle(bs, pair: LaxPair = None) -> dict:
    """Three values of the ``A``-eigenvalue at a curve point.

    ``q``: from the Q-function; ``dual``: the eigenvalue of ``calA(x, E)``
    closest to it; ``hyper``: the root of ``z + D(E)/z = T(0, E)/[2ell]!``
    closest to it.
    """
    from .curve import hyperelliptic, z_value

    ctx, E = bs.ctx, bs.point.E
    zq = z_value(bs)
    x = 0.137 + 0.071j
    ev = np.linalg.eigvals(DualMonodromy(ctx).calA(x, E))
    zd = complex(ev[np.argmin(np.abs(ev - zq))])
    h = hyperelliptic(ctx)
    roots = np.roots([1.0, -h.T_top(E) / ctx.factorial(2 * ctx.ell), h.D(E)])
    zh = complex(roots[np.argmin(np.abs(roots - zq))])
    rel = lambda a, b: float(abs(a - b) / max(abs(a), abs(b)))
    return {
        "q": zq,
        "dual": zd,
        "hyper": zh,
        "q_dual": rel(zq, zd),
        "q_hyper": rel(zq, zh),
        "dual_hyper": rel(zd, zh),
    }
