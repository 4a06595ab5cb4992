"""Acceptance criteria 1-11, one test each; every test prints a PASS/FAIL line."""

import time

import numpy as np
import pytest

from lamecurve import closed_forms, transfer
from lamecurve.curve import (
    asymptotics_check,
    band_edges_bloch,
    band_edges_hyper,
    curve_coeffs,
    curve_eval,
    curve_residuals,
    fibre_over_zeta,
    hyperelliptic,
    involution_residuals,
    match_multisets,
    minor_residuals,
    root_separation,
)
from lamecurve.diffop import (
    DifferenceOperator,
    TestFunctionFamily,
    build_A,
    build_intertwiner,
    build_sklyanin,
    commutator,
    op_residual,
)
from lamecurve.theta import EllipticContext, default_context
from lamecurve.transfer import baxter_residual, q_transfer_residual, t_poly, t_top_zero
from lamecurve.verify import (
    DEFAULT_ZETAS,
    baxter_operator_residual,
    even_space_checks,
    sklyanin_residuals,
    suite_lax,
    symmetry_residual,
    wronskian_residual,
)

SECOND = dict(tau=-0.2 + 0.9j, eta=0.081 + 0.033j)


@pytest.fixture
def report(capsys):
    def emit(n, ok, detail):
        with capsys.disabled():
            print(f"\ncriterion {n:2d}: {'PASS' if ok else 'FAIL'}  {detail}")

    return emit


def _coeff_rel(p, ref):
    """Per-coefficient relative error; identically zero entries are measured against max|ref|."""
    ref = np.asarray(ref, dtype=complex)
    a = p.padded(max(len(ref), len(p.coeffs)))
    b = np.zeros(len(a), dtype=complex)
    b[: len(ref)] = ref
    scale = np.max(np.abs(b))
    den = np.where(np.abs(b) > 0, np.abs(b), scale)
    return float(np.max(np.abs(a - b) / den))


def _clear_caches():
    transfer._a_recurrence.cache_clear()
    transfer._a_checked.cache_clear()
    transfer._t_top.cache_clear()


def test_criterion_01_curve_golden(report):
    t0 = time.perf_counter()
    worst = 0.0
    for params in (dict(tau=0.1 + 1.1j, eta=0.123 + 0.057j), SECOND):
        for ell in (1, 2, 3, 4):
            ctx = EllipticContext(ell=ell, **params)
            C, ref = curve_coeffs(ctx), closed_forms.covering_coeffs(ctx)
            assert len(C) == len(ref) == ctx.N + 1
            worst = max(worst, float(np.max(np.abs(C - ref) / np.abs(ref))))
    dt = time.perf_counter() - t0
    ok = worst < 1e-9 and dt < 2
    report(1, ok, f"max rel err {worst:.2e} (< 1e-9), {dt:.2f}s (< 2s)")
    assert ok


def test_criterion_02_polynomial_golden(report):
    _clear_caches()
    t0 = time.perf_counter()
    worst = 0.0
    for ell in (1, 2):
        ctx = default_context(ell)
        worst = max(worst, _coeff_rel(t_top_zero(ctx), closed_forms.t_top(ctx)))
        worst = max(worst, _coeff_rel(hyperelliptic(ctx).D, closed_forms.d_poly(ctx)))
    dt = time.perf_counter() - t0
    ok = worst < 1e-9 and dt < 2
    report(2, ok, f"T3, T5, D2, D4 max rel err {worst:.2e} (< 1e-9), {dt:.2f}s (< 2s)")
    assert ok


def _edges(ell):
    ctx = default_context(ell)
    eb, eh = band_edges_bloch(ctx), band_edges_hyper(ctx)
    return eb, eh, 2 * (2 * ell + 1)


def test_criterion_03_band_edges(report):
    _clear_caches()
    t0 = time.perf_counter()
    worst, sizes_ok = 0.0, True
    for ell in (1, 2):
        eb, eh, size = _edges(ell)
        sizes_ok &= len(eb) == len(eh) == size
        worst = max(worst, match_multisets(eb, eh))
    dt = time.perf_counter() - t0
    ok = sizes_ok and worst < 1e-6 and dt < 5
    report(3, ok, f"sizes 6, 10 ok={sizes_ok}, discrepancy {worst:.2e} (< 1e-6), {dt:.2f}s (< 5s)")
    assert ok


def test_criterion_04_operator_algebra(report):
    t0 = time.perf_counter()
    tf = TestFunctionFamily(seed=42, n_points=20)
    zero = DifferenceOperator([])
    rows = {}
    for spin in (1, 1.5, 2, 3):
        ctx = default_context(int(np.ceil(spin)))
        for i, r in enumerate(sklyanin_residuals(ctx, spin, tf)):
            rows[f"spin {spin:g} sklyanin.{i + 1}"] = r
        if spin != int(spin):
            continue
        ctx = default_context(int(spin))
        rng = np.random.default_rng(42)
        lam, lam2 = rng.uniform(0, 1, 2) + 1j * rng.uniform(-0.3, 0.3, 2)
        L, A, A2 = build_sklyanin(0, ctx), build_A(lam, ctx), build_A(lam2, ctx)
        rows[f"spin {spin:g} baxter"] = baxter_operator_residual(ctx, lam, tf)
        rows[f"spin {spin:g} wr"] = wronskian_residual(ctx, lam, tf)
        rows[f"spin {spin:g} symm"] = symmetry_residual(ctx, tf, rng, n=20)
        rows[f"spin {spin:g} A_m_eta even"] = max(
            op_residual(build_A(m * ctx.eta, ctx), build_A(-m * ctx.eta, ctx), tf)
            for m in range(1, ctx.ell + 1)
        )
        rows[f"spin {spin:g} [L,A]"] = op_residual(commutator(L, A), zero, tf)
        rows[f"spin {spin:g} [A,A']"] = op_residual(commutator(A, A2), zero, tf)
    dt = time.perf_counter() - t0
    name, worst = max(rows.items(), key=lambda kv: kv[1])
    ok = worst < 1e-9 and dt < 10
    report(4, ok, f"{len(rows)} residuals, worst {worst:.2e} at {name} (< 1e-9), {dt:.2f}s (< 10s)")
    assert ok


def test_criterion_05_intertwiner(report):
    tf = TestFunctionFamily(seed=42)
    s3 = 0.0
    for spin in (0.5, 1, 1.5):
        ctx = default_context(1)
        W = build_intertwiner(ctx, spin)
        s3 = max(
            s3,
            max(
                op_residual(build_sklyanin(a, ctx, -spin - 1) @ W, W @ build_sklyanin(a, ctx, spin), tf)
                for a in range(4)
            ),
        )
    ann, member, rank = 0.0, 0.0, 0.0
    for ell in (1, 2):
        ev = even_space_checks(default_context(ell), 0.27 + 0.06j, 42)
        ann = max(ann, ev["annihilation"])
        member = max(member, ev["membership"])
        rank = max(rank, ev["rank_deficit"], ev["monodromy"] > 1e-9)
    ok = s3 < 1e-9 and ann < 1e-8 and member < 1e-8 and rank == 0
    report(5, ok, f"intertwining {s3:.2e} (< 1e-9), annihilation {ann:.2e} (< 1e-8), membership {member:.2e} (< 1e-8), rank ok={rank == 0}")
    assert ok


def test_criterion_06_bloch_fibres(report):
    worst, sizes = {}, {}
    for ell in (1, 2):
        ctx = default_context(ell)
        C = curve_coeffs(ctx)
        for zeta in DEFAULT_ZETAS:
            fibre = fibre_over_zeta(zeta, ctx, seed=42)
            sizes[ell, zeta] = len(fibre)
            for bs in fibre:
                d = bs.diagnostics
                vals = {
                    "curve_equations": max(curve_residuals(bs.point, ctx)),
                    "minors": max(minor_residuals(bs.point, ctx)),
                    "eigen": d["eigen"],
                    "glueing": d["glueing"],
                    "multiplier": d["multiplier"],
                    "covering": curve_eval(bs.point.zeta, bs.point.K, C, ctx)[1],
                }
                for k, v in vals.items():
                    worst[k] = max(worst.get(k, 0.0), v)
    size_ok = all(n == (2 if ell == 1 else 6) for (ell, _), n in sizes.items())
    top = max(worst.values())
    ok = size_ok and top < 1e-7
    detail = ", ".join(f"{k} {v:.1e}" for k, v in worst.items())
    report(6, ok, f"sizes ok={size_ok}; {detail} (all < 1e-7)")
    assert ok


LAX_ROWS = {
    "lax_equation": 1e-9,
    "dual_lax_equation": 1e-9,
    "char_x_invariance": 1e-9,
    "char_alpha": 1e-8,
    "char_F_is_T_top": 1e-8,
    "char_G_is_D": 1e-8,
    "dual_trace_is_T_top": 1e-8,
    "dual_det_is_D": 1e-8,
    "z_triangle": 1e-7,
}


def test_criterion_07_lax(report):
    worst = {}
    for ell in (1, 2):
        rows = {r.name: r for r in suite_lax(default_context(ell), seed=42)}
        for name, thr in LAX_ROWS.items():
            r = rows[name]
            assert not r.error, r.error
            worst[name] = max(worst.get(name, 0.0), r.residual)
    ok = all(worst[k] < thr for k, thr in LAX_ROWS.items())
    detail = ", ".join(f"{k} {v:.1e}" for k, v in worst.items())
    report(7, ok, detail)
    assert ok


def test_criterion_08_q_function(report):
    bax, q00 = 0.0, 0.0
    for ell in (1, 2):
        ctx = default_context(ell)
        rng = np.random.default_rng(42)
        us = rng.uniform(0, 1, 5) + 1j * rng.uniform(-0.3, 0.3, 5)
        tp = {(s, u): t_poly(s, u, ctx).poly for s in range(1, 2 * ell + 1) for u in us}
        for zeta in DEFAULT_ZETAS[:2]:
            for bs in fibre_over_zeta(zeta, ctx, seed=42):
                for u in us:
                    bax = max(bax, baxter_residual(bs, u))
                    for s in range(1, 2 * ell + 1):
                        q00 = max(q00, q_transfer_residual(bs, s, u, tp[s, u]))
    ok = bax < 1e-7 and q00 < 1e-7
    report(8, ok, f"Baxter {bax:.2e}, T_s from Q {q00:.2e} (< 1e-7)")
    assert ok


def _involutions():
    worst = {}
    exact = True
    for ell in (1, 2):
        ctx = default_context(ell)
        for zeta in DEFAULT_ZETAS[:3]:
            for bs in fibre_over_zeta(zeta, ctx, seed=42):
                for k, v in involution_residuals(bs).items():
                    worst[k] = max(worst.get(k, 0.0), v)
        eb, eh, _ = _edges(ell)
        exact &= match_multisets(eb, -eb) == 0.0 and match_multisets(eh, -eh) == 0.0
    return worst, exact


def test_criterion_09_involutions(report):
    worst, exact = _involutions()
    ok = exact and max(worst.values()) < 1e-7
    detail = ", ".join(f"{k} {v:.1e}" for k, v in worst.items())
    report(9, ok, f"{detail} (< 1e-7); edge negation exact={exact}")
    assert ok


def test_criterion_10_asymptotics(report):
    parts = []
    ok = True
    for ell in (1, 2):
        rep = asymptotics_check(default_context(ell))
        good = 5 <= rep["plus_ratio"] <= 20 and 5 <= rep["minus_ratio"] <= 20 and rep["ksq"][-1] < 5e-3
        ok &= good
        parts.append(
            f"ell={ell}: ratios {rep['plus_ratio']:.2f}, {rep['minus_ratio']:.2f}, K^2 theta_1 off {rep['ksq'][-1]:.1e}"
        )
    report(10, ok, "; ".join(parts) + " (ratios in [5, 20], < 5e-3)")
    assert ok


def test_criterion_11_hyperelliptic_model(report):
    degs, seps = [], []
    for ell in (1, 2, 3, 4):
        P = hyperelliptic(default_context(ell)).P
        degs.append(P.degree == 2 * ell + 1)
        seps.append(root_separation(P))
    disc = max(match_multisets(*_edges(ell)[:2]) for ell in (1, 2))
    inv, exact = _involutions()
    ok = all(degs) and min(seps) > 1e-6 and disc < 1e-6 and exact and max(inv.values()) < 1e-7
    report(
        11,
        ok,
        f"deg P ok={all(degs)}, min root separation {min(seps):.2e} (> 1e-6), "
        f"edges {disc:.1e}, involutions {max(inv.values()):.1e}",
    )
    assert ok
