import json

import numpy as np
import pytest
import sympy as sp
from scipy.optimize import linear_sum_assignment
from hypothesis import given, settings, strategies as st

from conftest import random_system
from dissipa.errors import ContractError, DomainError
from dissipa.models import airy_system, build_efk1d, build_nsk2d, build_qhd_iso, heat_system, transport_system
from dissipa.symbolkit import (
    CoefficientSystem,
    FrequencyPoint,
    MultiIndex,
    assemble_batch,
    assemble_symbols,
    dispersion_eigenvalues,
    dumps_system,
    loads_system,
    raw_symbol,
    system_from_dict,
    system_to_dict,
)


def direct_symbol(sys, xi):
    """Sum of (i xi)^alpha L^alpha, term by term in plain Python."""
    out = np.zeros((sys.n, sys.n), dtype=complex)
    for alpha, L in sys.coeffs.items():
        c = 1.0 + 0j
        for x, k in zip(xi, alpha.entries):
            c *= (1j * x) ** k
        out += c * L
    return out


def test_multi_index_is_hashable_and_validated():
    assert MultiIndex((1, 2)) == MultiIndex.of(1, 2)
    assert {MultiIndex((1, 0)): 1}[MultiIndex((1, 0))] == 1
    assert MultiIndex((2, 1, 0)).order() == 3
    with pytest.raises(ContractError):
        MultiIndex((-1, 0))


def test_system_rejects_bad_input():
    with pytest.raises(ContractError):
        CoefficientSystem.build({(0,): [[1.0]]})  # no derivative
    with pytest.raises(ContractError):
        CoefficientSystem.build({(1,): [[1.0]]}, mass=[[-1.0]])
    with pytest.raises(ContractError):
        CoefficientSystem.build({(1,): np.eye(2)}, mass=[[1.0, 1.0], [0.0, 1.0]])
    with pytest.raises(ContractError):
        CoefficientSystem.build({(3,): [[1.0]]}, m=2)
    with pytest.raises(ContractError):
        CoefficientSystem.build({(1,): [[np.nan]]})


def test_frequency_point_invariants():
    p = FrequencyPoint.from_xi([3.0, 4.0])
    assert p.radius == 5.0
    assert abs(np.linalg.norm(p.direction) - 1) < 1e-14
    assert np.allclose(p.radius * p.direction, p.xi, rtol=1e-12)
    q = FrequencyPoint.polar(2.0, [0.0, 5.0])
    assert np.allclose(q.xi, [0.0, 2.0])
    with pytest.raises(DomainError):
        FrequencyPoint.from_xi([0.0, 0.0])


def test_heat_symbol():
    pair = assemble_symbols(heat_system(), FrequencyPoint.from_xi([2.0]))
    assert pair.a_sym[0, 0] == 0.0
    assert pair.b_sym[0, 0] == pytest.approx(4.0)


def test_airy_symbol():
    pair = assemble_symbols(airy_system(), FrequencyPoint.from_xi([1.0]))
    assert pair.a_sym[0, 0] == pytest.approx(-1.0)
    assert pair.b_sym[0, 0] == 0.0
    assert pair.full()[0, 0] == pytest.approx((1j) ** 3)


def test_nsk_transport_entry():
    # beta = p_rho + k rho |xi|^2 = 2 at |xi| = 1
    pair = assemble_symbols(build_nsk2d().system, FrequencyPoint.from_xi([1.0, 0.0]))
    assert pair.a_sym[1, 0] == pytest.approx(2.0, abs=1e-14)


def test_symbols_reject_zero_frequency_and_dimension_mismatch():
    with pytest.raises(DomainError):
        FrequencyPoint.polar(0.0, [1.0])
    with pytest.raises(ContractError):
        assemble_symbols(heat_system(2), FrequencyPoint.from_xi([1.0]))


def test_raw_symbol_examples():
    qhd = build_qhd_iso()
    L0 = qhd.system.coefficient((0, 0, 0))
    assert np.array_equal(raw_symbol(qhd.system, np.zeros(3)), L0)
    assert raw_symbol(transport_system(), [3.0])[0, 0] == pytest.approx(3j)
    M = raw_symbol(qhd.system, [1.0, 0.0, 0.0])
    # tau = 1: relaxation 1/tau on the momentum diagonal, density row untouched
    assert np.allclose(np.diag(M.real), [0.0, 1.0, 1.0, 1.0])


def test_dispersion_examples():
    assert np.allclose(dispersion_eigenvalues(heat_system(), FrequencyPoint.from_xi([2.0])), [-4.0])
    assert np.allclose(dispersion_eigenvalues(transport_system(), FrequencyPoint.from_xi([3.0])), [-3j])


def sympy_roots(sys, xi):
    """Roots of det(lambda A0 + sum (i xi)^alpha L^alpha) from exact arithmetic."""
    lam = sp.Symbol("lam")
    n = sys.n
    M = lam * sp.Matrix(n, n, [sp.nsimplify(x) for x in sys.mass.ravel()])
    for alpha, L in sys.coeffs.items():
        c = sp.Integer(1)
        for x, k in zip(xi, alpha.entries):
            c *= (sp.I * sp.nsimplify(x)) ** k
        M += c * sp.Matrix(n, n, [sp.nsimplify(v) for v in L.ravel()])
    poly = sp.Poly(sp.expand(M.det()), lam)
    return np.array([complex(r) for r in poly.nroots(n=30)])


def match(a, b):
    """Multiset distance via optimal pairing."""
    cost = np.abs(np.asarray(a)[:, None] - np.asarray(b)[None, :])
    rows, cols = linear_sum_assignment(cost)
    return cost[rows, cols].max()


def test_efk1d_dispersion_against_characteristic_polynomial():
    sys = build_efk1d().system
    ev = dispersion_eigenvalues(sys, FrequencyPoint.from_xi([1.0]))
    oracle = sympy_roots(sys, [1.0])
    assert match(ev, oracle) < 1e-10
    assert np.all(oracle.real < 0)


def test_reconstruction_identity_random_systems():
    rng = np.random.default_rng(7)
    worst = 0.0
    for _ in range(1000):
        n, d, m = int(rng.integers(1, 6)), int(rng.integers(1, 4)), int(rng.integers(1, 5))
        sys = random_system(rng, n, d, m)
        for _ in range(10):
            xi = rng.standard_normal(d) * 10 ** rng.uniform(-1, 1)
            pair = assemble_symbols(sys, FrequencyPoint.from_xi(xi))
            assert np.isrealobj(pair.a_sym) and np.isrealobj(pair.b_sym)
            r = np.linalg.norm(xi)
            err = np.abs(pair.full() - direct_symbol(sys, xi)).max()
            scale = max(1.0, max(np.abs(L).max() for L in sys.coeffs.values()))
            worst = max(worst, err / (scale * (1 + r**m)))
    assert worst <= 1e-12


def test_batch_matches_pointwise():
    rng = np.random.default_rng(3)
    sys = random_system(rng, 3, 2, 4)
    radii = np.array([0.1, 1.0, 7.0])
    dirs = np.array([[1.0, 0.0], [0.6, 0.8]])
    a, b = assemble_batch(sys, radii, dirs)
    for i, r in enumerate(radii):
        for j, w in enumerate(dirs):
            pair = assemble_symbols(sys, FrequencyPoint.polar(r, w))
            assert np.allclose(a[i, j], pair.a_sym, rtol=1e-13, atol=1e-13)
            assert np.allclose(b[i, j], pair.b_sym, rtol=1e-13, atol=1e-13)


def test_mass_folding_preserves_spectrum():
    rng = np.random.default_rng(11)
    for _ in range(200):
        n, d, m = int(rng.integers(1, 5)), int(rng.integers(1, 4)), int(rng.integers(1, 4))
        sys = random_system(rng, n, d, m)
        p = FrequencyPoint.from_xi(rng.standard_normal(d))
        a = dispersion_eigenvalues(sys, p)
        b = dispersion_eigenvalues(sys.with_mass_folded(), p)
        assert match(a, b) <= 1e-9 * max(1.0, np.abs(a).max())


@settings(max_examples=200)
@given(n=st.integers(1, 5), d=st.integers(1, 3), seed=st.integers(0, 2**32 - 1))
def test_odd_only_symmetric_systems_are_conservative(n, d, seed):
    rng = np.random.default_rng(seed)
    G = rng.standard_normal((n, n))
    mass = G @ G.T + n * np.eye(n)
    coeffs = {}
    for k in (1, 3):
        for j in range(d):
            X = rng.standard_normal((n, n))
            alpha = [0] * d
            alpha[j] = k
            coeffs[tuple(alpha)] = X + X.T
    sys = CoefficientSystem.build(coeffs, mass=mass)
    ev = dispersion_eigenvalues(sys, FrequencyPoint.from_xi(rng.standard_normal(d)))
    assert np.abs(ev.real).max() <= 1e-9 * max(1.0, np.abs(ev).max())


def test_json_round_trip_is_exact():
    rng = np.random.default_rng(5)
    for _ in range(50):
        sys = random_system(rng, int(rng.integers(1, 5)), int(rng.integers(1, 4)), int(rng.integers(1, 5)))
        back = loads_system(dumps_system(sys))
        assert (back.n, back.d, back.m) == (sys.n, sys.d, sys.m)
        assert np.array_equal(back.mass, sys.mass)
        assert list(back.coeffs) == list(sys.coeffs)
        for a in sys.coeffs:
            assert np.array_equal(back.coeffs[a], sys.coeffs[a])
        assert dumps_system(back) == dumps_system(sys)
    doc = system_to_dict(build_nsk2d().system)
    assert set(doc) >= {"n", "d", "m", "mass", "coeffs"}
    assert system_from_dict(json.loads(json.dumps(doc))).n == 3


def test_malformed_document_is_rejected():
    with pytest.raises(ContractError):
        loads_system('{"n": 2, "d": 1}')
    with pytest.raises(ContractError):
        loads_system('{"n": 1, "d": 1, "m": 1, "coeffs": [{"alpha": [1], "matrix": [1, 2]}]}')
