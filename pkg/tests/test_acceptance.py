"""Acceptance criteria, one test per criterion; each prints a PASS/FAIL line.

Run directly with ``python3 tests/test_acceptance.py`` or through pytest with
``-s`` to see the lines as they are produced (they are also repeated in the
terminal summary).
"""
import math
import sys
import time

import numpy as np
import pytest
import sympy as sp
from threadpoolctl import threadpool_limits

import test_denselin as kernel_dl
import test_structure as kernel_st
from conftest import random_symmetrizable, record_criterion
from dissipa.denselin import spd_inv_sqrt
from dissipa.dissipativity import FrequencyGrid, asymptotic_fit, classify_type, sweep
from dissipa.errors import DissipaError
from dissipa.evolution import EnvelopeSpec, InitialData, l2_decay, verify_envelope
from dissipa.models import (
    CATALOG,
    build_dnsf1d,
    build_dnsf3d,
    build_efk1d,
    build_efk_md,
    build_model,
    build_nsfk3d,
    build_nsk2d,
    build_qhd_full,
    build_qhd_iso,
)
from dissipa.structure import (
    SymmetrizedPair,
    constant_symmetrizer,
    drazin_compensator,
    friedrichs_feasibility,
    genuine_coupling,
    pointwise_symmetrizer_feasibility,
    symmetrize,
    validate_compensator,
)
from dissipa.symbolkit import CoefficientSystem, FrequencyPoint, assemble_symbols, dispersion_eigenvalues


def _verdict(number, checks, detail):
    passed = all(checks.values())
    failed = [k for k, ok in checks.items() if not ok]
    record_criterion(number, passed, detail + ("" if passed else f" [failed: {', '.join(failed)}]"))
    assert passed, failed


# --- 1 ---------------------------------------------------------------------

def _partial_pair(system, S_fn, p):
    """Pair under a symmetrizer that only symmetrizes the odd part; B_S is replaced by its symmetric part."""
    pair = assemble_symbols(system, p)
    S = S_fn(p)
    R = spd_inv_sqrt(S @ system.mass)
    A = R @ S @ pair.a_sym @ R
    B = R @ S @ pair.b_sym @ R
    return SymmetrizedPair.from_matrices(0.5 * (A + A.T), 0.5 * (B + B.T), p)


def _disagreements(system, S_fn, grid, partial=False):
    records = sweep(system, None if partial else S_fn, grid)
    bad, count = [], 0
    for rec in records:
        p = rec.at
        sp_ = _partial_pair(system, S_fn, p) if partial else symmetrize(system, S_fn, p)
        tol = 1e-9 * np.linalg.norm(sp_.b_s, 2)
        strict = rec.ok and rec.max_re < -tol
        coupled = genuine_coupling(sp_).coupled
        try:
            theta_ok = drazin_compensator(sp_.a_s, sp_.b_s, at=p).theta > tol
        except DissipaError as exc:
            bad.append((p.radius, f"drazin: {type(exc).__name__}"))
            continue
        finally:
            count += 1
        if not strict == coupled == theta_ok:
            bad.append((p.radius, (strict, coupled, theta_ok)))
    return bad, count


def test_c01_equivalence_cross_check():
    t0 = time.perf_counter()
    per_model = {}
    total = 0
    with threadpool_limits(limits=1):
        for name in sorted(CATALOG):
            b = build_model(name)
            d = b.system.d
            grid = FrequencyGrid.default(d, 0.1, 10.0, 8, None if d == 1 else (16 if d == 2 else 24))
            if b.symmetrizer is None:
                bad, n = _disagreements(b.system, b.partial_symmetrizer, grid, partial=True)
            else:
                bad, n = _disagreements(b.system, b.symmetrizer, grid)
            per_model[name] = bad
            total += n
        rng = np.random.default_rng(20240601)
        random_bad = 0
        for k in range(200):
            n_, d_, m_ = int(rng.integers(1, 5)), int(rng.integers(1, 4)), int(rng.integers(1, 5))
            system, S = random_symmetrizable(rng, n_, d_, m_, uncoupled=k % 4 == 0)
            grid = FrequencyGrid.default(d_, 0.1, 10.0, 4, None if d_ == 1 else (8 if d_ == 2 else 12))
            bad, n = _disagreements(system, constant_symmetrizer(S), grid)
            random_bad += len(bad)
            total += n
    elapsed = time.perf_counter() - t0
    counts = ", ".join(f"{k}={len(v)}" for k, v in per_model.items())
    first_qhd = per_model["qhd-full"][0][0] if per_model["qhd-full"] else None
    detail = (f"{total} points, disagreements: {counts}, random={random_bad}; {elapsed:.1f}s single-threaded"
              + (f"; qhd-full first disagreement at |xi|={first_qhd:.3g} (no symbol symmetrizer there)" if first_qhd else ""))
    checks = {f"model {k}": not v for k, v in per_model.items()}
    checks["random systems"] = random_bad == 0
    checks["runtime < 60 s"] = elapsed < 60
    _verdict(1, checks, detail)


# --- 2 ---------------------------------------------------------------------

def test_c02_nsk_compensator_and_type():
    nsk = build_nsk2d()
    rng = np.random.default_rng(2)
    worst = 0.0
    for _ in range(50):
        p = FrequencyPoint.polar(10 ** rng.uniform(-3, 3), rng.standard_normal(2))
        s = symmetrize(nsk.system, nsk.symmetrizer, p)
        K = drazin_compensator(s.a_s, s.b_s / p.radius**2, at=p).k_matrix
        worst = max(worst, np.abs(K - nsk.reference_compensator(p)).max())
    cls = classify_type(sweep(nsk.system, nsk.symmetrizer, FrequencyGrid.default(2)))
    checks = {
        "compensator": worst <= 1e-10,
        "type": (cls.p, cls.q) == (1, 0) and cls.kind == "regularity-gain",
        "slopes": abs(cls.low_slope - 2) <= 0.15 and abs(cls.high_slope - 2) <= 0.15,
    }
    _verdict(2, checks, f"max |K_drazin - K_ref| = {worst:.2e}; type ({cls.p},{cls.q}); "
                        f"slopes {cls.low_slope:.3f}, {cls.high_slope:.3f}")


# --- 3 ---------------------------------------------------------------------

def test_c03_efk1d():
    efk = build_efk1d()
    radii = np.logspace(-3, 3, 97)
    prof = []
    for r in radii:
        p = FrequencyPoint.from_xi([r])
        s = symmetrize(efk.system, efk.symmetrizer, p)
        hom = SymmetrizedPair.from_matrices(s.a_s, s.b_s / r**2, p)
        prof.append(validate_compensator(efk.reference_compensator(p), hom).theta * (1 + r * r))
    prof = np.array(prof)
    cls = classify_type(sweep(efk.system, efk.symmetrizer, FrequencyGrid.default(1)))
    dec = l2_decay(efk.system, InitialData("gaussian"), density_index=efk.density_index)
    checks = {
        "theta (1+r^2) positive": prof.min() > 0,
        # no decay towards either end of the range
        "profile flat at the ends": abs(prof[-1] / prof[-9] - 1) < 1e-2 and abs(prof[0] / prof[8] - 1) < 1e-2,
        "type": (cls.p, cls.q) == (1, 1),
        "L2 exponent": abs(dec.exponent + 0.25) <= 0.1,
    }
    _verdict(3, checks, f"min theta(1+r^2) = {prof.min():.4f} (ends {prof[0]:.4f}, {prof[-1]:.4f}); "
                        f"type ({cls.p},{cls.q}); L2 exponent {dec.exponent:.3f}")


# --- 4 ---------------------------------------------------------------------

def test_c04_efk_multid_witness():
    checks, parts = {}, []
    for d in (2, 3):
        efk = build_efk_md(d=d)
        grid = FrequencyGrid.default(d, 0.01, 100, 2, 8 if d == 2 else 12)
        worst_b, worst_shape, all_false, near_zero = 0.0, 0.0, True, 0
        for p in grid.points:
            s = symmetrize(efk.system, efk.symmetrizer, p)
            v = genuine_coupling(s)
            all_false &= not v.coupled
            if v.witness is None:
                continue
            _, psi = v.witness
            psi = psi / np.linalg.norm(psi)
            worst_b = max(worst_b, np.linalg.norm(s.b_s @ psi))
            u = psi[1:1 + d]
            worst_shape = max(worst_shape, abs(psi[0]), abs(psi[-1]), abs(u @ p.direction))
            ev = dispersion_eigenvalues(efk.system, p)
            near_zero += int(np.min(np.abs(ev.real)) <= 1e-9)
        checks[f"d={d} not coupled"] = all_false
        checks[f"d={d} witness"] = worst_b <= 1e-10 and worst_shape <= 1e-10
        checks[f"d={d} undamped root"] = near_zero == len(grid)
        parts.append(f"d={d}: {len(grid)} points, max |B_S psi| {worst_b:.1e}, shape residual {worst_shape:.1e}, "
                     f"undamped root at {near_zero}")
    _verdict(4, checks, "; ".join(parts))


# --- 5 ---------------------------------------------------------------------

def _slow_branch_leading_coefficient(system: CoefficientSystem):
    """Exact c in lambda ~ c z^-2 (z = i xi) for the branch that vanishes at infinity."""
    lam, w, c = sp.symbols("lam w c")
    n = system.n
    z = 1 / w
    M = lam * sp.Matrix(system.mass.tolist()).applyfunc(sp.nsimplify)
    for alpha, L in system.coeffs.items():
        M += z ** alpha.order() * sp.Matrix(L.tolist()).applyfunc(sp.nsimplify)
    p = sp.expand(sp.together(M.det().subs(lam, c * w**2)))
    num = sp.Poly(sp.numer(sp.together(p)), w)
    low = min(m[0] for m in num.monoms())
    lead = sp.factor(num.as_expr().coeff(w, low))
    roots = [r for r in sp.solve(lead, c) if r != 0]
    assert len(roots) == 1
    return roots[0]


def test_c05_dnsf1d_asymptotics():
    branches = asymptotic_fit(build_dnsf1d().system)
    third = sorted(b[3].real for b in branches)
    second = sorted(b[2].real for b in branches[1:])
    slow = branches[0][-2].real
    target3 = 8 / 9 * math.sqrt(1.5)
    checks = {
        "lambda3 = +-(8/9)sqrt(3/2)": abs(third[0] / -target3 - 1) <= 1e-2 and abs(third[2] / target3 - 1) <= 1e-2,
        "lambda2 = 1": all(abs(x - 1) <= 1e-2 for x in second),
        "lambda-2 = 9/8": abs(slow / (9 / 8) - 1) <= 1e-2,
    }
    _verdict(5, checks, f"lambda3 {third[0]:.5f}, {third[2]:.5f} (target {target3:.5f}); lambda2 {second[0]:.5f}, "
                        f"{second[1]:.5f}; lambda-2 {slow:.5f} vs published 1.125 (re-derived 9/16 = 0.5625)")


def test_dnsf1d_slow_coefficient_matches_exact_expansion():
    # independent oracle for the fitted slow coefficient: leading order of det(lam A0 + sum L z^k)
    system = build_dnsf1d().system
    exact = _slow_branch_leading_coefficient(system)
    assert exact == sp.Rational(9, 16)
    slow = asymptotic_fit(system)[0][-2].real
    assert slow == pytest.approx(float(exact), rel=1e-2)


# --- 6 ---------------------------------------------------------------------

def test_c06_dnsf3d_regularity_loss():
    dn = build_dnsf3d()
    cls = classify_type(sweep(dn.system, dn.symmetrizer, FrequencyGrid.default(3)))
    checks = {
        "type": (cls.p, cls.q) == (1, 2) and cls.kind == "regularity-loss",
        "high slope": abs(cls.high_slope + 2) <= 0.15,
    }
    _verdict(6, checks, f"type ({cls.p},{cls.q}) {cls.kind}; high-radius slope {cls.high_slope:.3f}")


# --- 7 ---------------------------------------------------------------------

def test_c07_qhd_margin_and_envelope():
    qhd = build_qhd_iso()
    grid = FrequencyGrid(FrequencyGrid.default(3).directions, np.logspace(-3, 3, 49))
    worst = min(
        validate_compensator(qhd.reference_compensator(p), symmetrize(qhd.system, qhd.symmetrizer, p)).theta
        for p in grid.points
    )
    spec = EnvelopeSpec("full", lambda p: 1 / 6)
    rep = verify_envelope(qhd.system, qhd.symmetrizer, spec, FrequencyGrid.default(3).points, np.logspace(-1, 2, 10))
    checks = {"margin": worst >= 1 / 6 - 1e-9, "envelope": rep.passed and not rep.violations}
    _verdict(7, checks, f"min lambda_min = {worst:.12f} over {len(grid)} points (bound {1 / 6:.12f}); envelope "
                        f"C={rep.C:.4f} k={rep.k:.4f}, {len(rep.violations)} violations in {rep.samples} samples")


# --- 8 ---------------------------------------------------------------------

def _paper_polynomial_root(params) -> float:
    r = sp.symbols("r", positive=True)
    n, g = sp.nsimplify(params.n), sp.nsimplify(params.g)
    kap, hb, tw = sp.nsimplify(params.kappa), sp.nsimplify(params.hbar), sp.nsimplify(params.tau_w)
    H = sp.Rational(2, 3) * g + r**2 * hb**2 / 18
    G = -(r**4) / n * kap * hb**2 / 36
    R = n / tw + r**2 * sp.Rational(2, 3) * kap
    P = sp.expand(sp.Rational(3, 2) * H / n * G + H * R * g - sp.Rational(2, 3) * g * G)
    assert sp.Poly(P, r).LC() < 0
    roots = [x for x in sp.real_roots(sp.Poly(P, r)) if x > 0]
    assert len(roots) == 1
    return float(roots[0])


def test_c08_obstruction_certificates():
    checks, parts = {}, []
    nsk = friedrichs_feasibility(build_nsk2d().system)
    checks["NSK forced zeros"] = nsk.feasible is False and {(1, 1), (1, 2), (2, 2)} <= set(nsk.forced_zero)
    parts.append(f"NSK infeasible, forced zero {sorted(nsk.forced_zero)}")

    full = build_qhd_full()
    exact = math.sqrt(12 + math.sqrt(180))
    paper_root = _paper_polynomial_root(full.params)
    dirs = FrequencyGrid.default(3, n_directions=12).directions
    radii = np.concatenate([[exact * 1.001, paper_root], np.geomspace(exact * 1.01, 1e3, 14)])
    infeasible = all(
        pointwise_symmetrizer_feasibility(full.system, FrequencyPoint.polar(r, w)).feasible is False
        for r in radii for w in dirs
    )
    below = all(
        pointwise_symmetrizer_feasibility(full.system, FrequencyPoint.polar(r, w)).feasible is True
        for r in (0.1, 1.0, exact * 0.999) for w in dirs[:4]
    )
    checks["QHD-full infeasible above threshold"] = infeasible
    checks["QHD-full feasible below threshold"] = below
    parts.append(f"QHD-full threshold sqrt(12+sqrt(180)) = {exact:.5f} (displayed polynomial root {paper_root:.5f}); "
                 f"infeasible at all {radii.size * len(dirs)} samples above")

    for b in (build_dnsf1d(), build_dnsf3d()):
        cert = friedrichs_feasibility(b.system)
        S = b.symmetrizer(FrequencyPoint.polar(1.0, np.ones(b.system.d)))
        ok = cert.feasible is True and cert.contains(S) and np.linalg.eigvalsh(cert.witness)[0] > 0
        checks[f"{b.name} Friedrichs witness"] = ok
    parts.append("DNSF 1D/3D Friedrichs feasible, displayed symmetrizer contained in the certificate")
    _verdict(8, checks, "; ".join(parts))


# --- 9 ---------------------------------------------------------------------

def test_c09_kernel_property_suites():
    suites = {
        "eig residuals": kernel_dl.test_eig_residuals,
        "projection algebra": kernel_dl.test_projection_algebra,
        "projection identity": kernel_st.test_projection_identity,
        "exp semigroup": kernel_dl.test_matrix_exp_semigroup,
    }
    checks = {}
    for name, fn in suites.items():
        assert fn.hypothesis.inner_test is not None
        try:
            fn()
            checks[name] = True
        except AssertionError:
            checks[name] = False
    draws = {kernel_dl.DRAWS.max_examples, kernel_st.DRAWS.max_examples}
    checks[">= 500 draws"] = min(draws) >= 500
    _verdict(9, checks, f"4 suites, {min(draws)} draws each")


# --- 10 --------------------------------------------------------------------

def test_c10_l2_decay_rates():
    nsk, nsfk = build_nsk2d(), build_nsfk3d()
    a = l2_decay(nsk.system, InitialData("gaussian"), density_index=nsk.density_index)
    b = l2_decay(nsfk.system, InitialData("gaussian"), density_index=nsfk.density_index)
    checks = {
        "NSK -0.5": abs(a.exponent + 0.5) <= 0.1,
        "NSFK -0.75": abs(b.exponent + 0.75) <= 0.1,
        "grid doubling < 1%": max(a.discrepancy, b.discrepancy) < 0.01,
    }
    _verdict(10, checks, f"NSK {a.exponent:.3f}, NSFK {b.exponent:.3f}; "
                         f"doubling discrepancy {max(a.discrepancy, b.discrepancy):.1e}")


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-v", "-s"]))
