import numpy as np
import pytest
from hypothesis import HealthCheck, settings

from dissipa.symbolkit import CoefficientSystem

settings.register_profile(
    "dissipa",
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow, HealthCheck.data_too_large],
    derandomize=True,
)
settings.load_profile("dissipa")

ACCEPTANCE_LINES: list[str] = []


def record_criterion(number: int, passed: bool, detail: str) -> str:
    line = f"CRITERION {number:>2} {'PASS' if passed else 'FAIL'}: {detail}"
    ACCEPTANCE_LINES.append(line)
    print(line)
    return line


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)


def all_multi_indices(d: int, m: int):
    out = []

    def rec(prefix, left, slots):
        if slots == 1:
            out.append(tuple(prefix) + (left,))
            return
        for k in range(left + 1):
            rec(prefix + [k], left - k, slots - 1)

    for order in range(m + 1):
        rec([], order, d)
    return out


def random_system(rng: np.random.Generator, n: int, d: int, m: int, density: float = 0.6) -> CoefficientSystem:
    """Arbitrary system: random sparse coefficients and an SPD mass."""
    coeffs = {}
    for alpha in all_multi_indices(d, m):
        if sum(alpha) >= 1 and rng.random() < density:
            coeffs[alpha] = rng.standard_normal((n, n))
    if not coeffs:
        coeffs[(1,) + (0,) * (d - 1)] = rng.standard_normal((n, n))
    G = rng.standard_normal((n, n))
    mass = G @ G.T + n * np.eye(n)
    if rng.random() < 0.5:
        coeffs[(0,) * d] = rng.standard_normal((n, n))
    return CoefficientSystem.build(coeffs, mass=mass, m=m)


def random_psd(rng, n, rank):
    X = rng.standard_normal((n, rank))
    return X @ X.T


def random_symmetrizable(rng: np.random.Generator, n: int, d: int, m: int, uncoupled: bool = False):
    """A symbol-symmetrizable system with a constant symmetrizer.

    Returns ``(system, S)``.  Coefficients are written as
    ``L = S^{-1} W^{1/2} M W^{1/2}`` with ``W = S A0``, so ``M`` is exactly the
    symmetrized coefficient.  Odd orders get symmetric ``M``; even orders get
    signed PSD blocks on pure-axis multi-indices, which keeps ``B_S`` PSD.
    With ``uncoupled`` a fixed unit vector is an eigenvector of every
    transport block and lies in the kernel of every dissipative block.
    """
    if rng.random() < 0.5:
        S = np.diag(rng.uniform(0.5, 2.0, n))
        mass = np.diag(rng.uniform(0.5, 2.0, n))
    else:
        G = rng.standard_normal((n, n))
        S = G @ G.T + n * np.eye(n)
        mass = np.eye(n)
    W = S @ mass
    w, U = np.linalg.eigh(W)
    Wh = (U * np.sqrt(w)) @ U.T
    lift = lambda M: np.linalg.solve(S, Wh @ M @ Wh)
    v = np.linalg.qr(rng.standard_normal((n, n)))[0][:, 0]
    Pv = np.eye(n) - np.outer(v, v)

    def sym():
        X = rng.standard_normal((n, n))
        M = X + X.T
        return Pv @ M @ Pv + rng.standard_normal() * np.outer(v, v) if uncoupled else M

    def psd():
        P = random_psd(rng, n, int(rng.integers(1, n + 1)))
        return Pv @ P @ Pv if uncoupled else P

    def axis(j, k):
        alpha = [0] * d
        alpha[j] = k
        return tuple(alpha)

    coeffs = {}
    for k in range(1, m + 1, 2):
        for j in range(d):
            if rng.random() < 0.8:
                coeffs[axis(j, k)] = lift(sym())
    if rng.random() < 0.5:
        coeffs[(0,) * d] = lift(psd())
    for k in range(2, m + 1, 2):
        for j in range(d):
            coeffs[axis(j, k)] = (-1) ** (k // 2) * lift(psd())
    if not any(sum(a) % 2 for a in coeffs):
        coeffs[axis(0, 1)] = lift(sym())
    return CoefficientSystem.build(coeffs, mass=mass, m=m), S


@pytest.fixture
def rng():
    return np.random.default_rng(12345)
