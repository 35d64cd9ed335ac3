"""Symmetrization, genuine coupling and compensating matrices.

Everything here is evaluated one frequency at a time.  The symmetrized pair
``(A_S, B_S)`` lives in the coordinates ``V = W^{1/2} U`` with
``W = S(xi) A0``; compensators built there are lifted back with
``K = W^{1/2} K_S W^{-1/2}``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np
import scipy.optimize

from .denselin import (
    DEFAULT_REL_GAP,
    EigenClusterSet,
    cluster_projections,
    eig_general,
    eig_hermitian,
    hermitian_part,
    kernel_basis,
    min_eig_sym,
    spd_inv_sqrt,
    spd_sqrt,
)
from .errors import ConditioningError, ContractError, DomainError
from .symbolkit import CoefficientSystem, FrequencyPoint, SymbolPair, assemble_symbols

__all__ = [
    "SymmetrizerFn",
    "identity_symmetrizer",
    "constant_symmetrizer",
    "SymmetrizerReport",
    "verify_symmetrizer",
    "SymmetrizedPair",
    "symmetrize",
    "CouplingVerdict",
    "genuine_coupling",
    "pi_projection",
    "CompensatorResult",
    "drazin_compensator",
    "validate_compensator",
    "validate_compensator_raw",
    "lift_compensator",
    "smoothstep_partition",
    "SecondOrderLift",
    "second_order_lift",
    "spectral_bound_from_theta",
    "FeasibilityCertificate",
    "friedrichs_feasibility",
    "pointwise_symmetrizer_feasibility",
]

SYM_TOL = 1e-10
GAP_FLOOR = 1e-8
IDENTITY_TOL = 1e-8


def _norm(M) -> float:
    return float(np.linalg.norm(M, 2)) if np.size(M) else 0.0


def _asym(M) -> float:
    return _norm(M - M.T)


# --- symmetrizers ---------------------------------------------------------

@dataclass(frozen=True)
class SymmetrizerFn:
    """Frequency-indexed symmetric positive definite matrix ``S(xi)``."""

    eval: Callable[[FrequencyPoint], np.ndarray]
    label: str = ""
    claims_friedrichs: bool = False

    def __call__(self, p: FrequencyPoint) -> np.ndarray:
        return np.asarray(self.eval(p), dtype=float)


def identity_symmetrizer(n: int) -> SymmetrizerFn:
    eye = np.eye(n)
    return SymmetrizerFn(lambda p: eye, label="identity", claims_friedrichs=True)


def constant_symmetrizer(S, label: str = "constant") -> SymmetrizerFn:
    S = np.array(S, dtype=float)
    return SymmetrizerFn(lambda p: S, label=label, claims_friedrichs=True)


@dataclass
class SymmetrizerReport:
    passed: bool
    max_residuals: dict[str, float]
    failures: list[tuple[FrequencyPoint, str, float, np.ndarray]] = field(default_factory=list)

    @property
    def first_failure(self):
        return self.failures[0] if self.failures else None


def verify_symmetrizer(
    sys: CoefficientSystem,
    S: SymmetrizerFn,
    grid: Sequence[FrequencyPoint],
    tol: float = SYM_TOL,
) -> SymmetrizerReport:
    """Check the symbol-symmetrizer conditions at every grid point.

    Checks: S symmetric positive definite, S A0 symmetric (needed for the
    change of variables), S A(xi) and S B(xi) symmetric, S B(xi) PSD.
    Residuals are relative to the norms of the factors.
    """
    if len(grid) == 0:
        raise ContractError("empty frequency grid")
    keys = ("S_sym", "S_pd", "SA0_sym", "SA_sym", "SB_sym", "SB_psd")
    worst = {k: 0.0 for k in keys}
    failures = []
    for p in grid:
        Sm = S(p)
        pair = assemble_symbols(sys, p)
        nS = max(_norm(Sm), 1e-300)
        checks = {}
        checks["S_sym"] = (_asym(Sm) / nS, Sm)
        lmin = float(np.linalg.eigvalsh(0.5 * (Sm + Sm.T))[0])
        checks["S_pd"] = (max(0.0, -lmin / nS) if lmin <= 0 else 0.0, Sm)
        pd_fail = lmin <= 0
        for key, M in (("SA0_sym", sys.mass), ("SA_sym", pair.a_sym), ("SB_sym", pair.b_sym)):
            SM = Sm @ M
            checks[key] = (_asym(SM) / max(nS * _norm(M), 1e-300), SM)
        SB = Sm @ pair.b_sym
        lb = min_eig_sym(SB)
        checks["SB_psd"] = (max(0.0, -lb) / max(nS * _norm(pair.b_sym), 1e-300), SB)
        for key, (val, mat) in checks.items():
            worst[key] = max(worst[key], val)
            if val > tol or (key == "S_pd" and pd_fail):
                failures.append((p, key, val, mat))
    return SymmetrizerReport(not failures, worst, failures)


@dataclass(frozen=True, eq=False)
class SymmetrizedPair:
    a_s: np.ndarray
    b_s: np.ndarray
    weight_sqrt: np.ndarray
    at: FrequencyPoint | None = None
    s_matrix: np.ndarray | None = None

    @classmethod
    def from_matrices(cls, a_s, b_s, at: FrequencyPoint | None = None) -> "SymmetrizedPair":
        a_s = np.asarray(a_s, dtype=float)
        b_s = np.asarray(b_s, dtype=float)
        n = a_s.shape[0]
        return cls(0.5 * (a_s + a_s.T), 0.5 * (b_s + b_s.T), np.eye(n), at, np.eye(n))

    @property
    def n(self) -> int:
        return self.a_s.shape[0]

    def generator(self) -> np.ndarray:
        """``i|xi| A_S + B_S`` (the radius defaults to 1 without a frequency)."""
        r = self.at.radius if self.at is not None else 1.0
        return 1j * r * self.a_s + self.b_s


def symmetrize(sys: CoefficientSystem, S: SymmetrizerFn, p: FrequencyPoint, tol: float = SYM_TOL) -> SymmetrizedPair:
    pair = assemble_symbols(sys, p)
    Sm = S(p)
    W = Sm @ sys.mass
    if _asym(W) > tol * max(_norm(W), 1e-300):
        raise ContractError("S(xi) A0 is not symmetric", at=p)
    W = 0.5 * (W + W.T)
    R = spd_sqrt(W)
    Ri = spd_inv_sqrt(W)
    a_s = Ri @ Sm @ pair.a_sym @ Ri
    b_s = Ri @ Sm @ pair.b_sym @ Ri
    for name, M in (("A_S", a_s), ("B_S", b_s)):
        if _asym(M) > 1e3 * tol * max(_norm(M), 1.0):
            raise ContractError(f"{name} not symmetric: symmetrizer fails at this frequency", at=p)
    return SymmetrizedPair(0.5 * (a_s + a_s.T), 0.5 * (b_s + b_s.T), R, p, Sm)


# --- coupling and projections --------------------------------------------

def _clusters(A, rel_gap: float) -> EigenClusterSet:
    A = np.asarray(A)
    if np.isrealobj(A) and _asym(A) <= SYM_TOL * max(_norm(A), 1e-300):
        return cluster_projections(eig_hermitian(A), rel_gap)
    return cluster_projections(eig_general(A), rel_gap)


def _realify(M):
    M = np.asarray(M)
    if np.iscomplexobj(M) and np.abs(M.imag).max(initial=0.0) <= 1e-12 * max(np.abs(M).max(), 1e-300):
        return M.real.copy()
    return M


def pi_projection(A, B, rel_gap: float = DEFAULT_REL_GAP) -> np.ndarray:
    """``sum_j P_j B P_j`` over the spectral clusters of ``A``."""
    cl = _clusters(A, rel_gap)
    out = sum(c.projection @ B @ c.projection for c in cl)
    return _realify(hermitian_part(out))


@dataclass
class CouplingVerdict:
    coupled: bool
    theta_tilde: float
    tol: float
    witness: tuple[float, np.ndarray] | None = None
    witness_residual: float | None = None


def genuine_coupling(
    sp: SymmetrizedPair,
    coupling_tol: float | None = None,
    rel_gap: float = DEFAULT_REL_GAP,
    rel_tol: float = 1e-9,
) -> CouplingVerdict:
    """Decide whether no eigenvector of ``A_S`` lies in ``ker B_S``.

    ``theta_tilde = lambda_min(Pi_A(B))``; a witness ``(mu, psi)`` minimizing
    ``|B_S psi|`` over each eigenspace is attached when the test fails.
    The threshold is ``coupling_tol`` if given, else ``rel_tol * |B_S|``.
    """
    A, B = sp.a_s, sp.b_s
    nb = _norm(B)
    tol = coupling_tol if coupling_tol is not None else rel_tol * nb
    cl = cluster_projections(eig_hermitian(A), rel_gap)
    Pi = hermitian_part(sum(c.projection @ B @ c.projection for c in cl))
    theta_t = float(np.linalg.eigvalsh(Pi)[0])
    if theta_t > tol:
        return CouplingVerdict(True, theta_t, tol)
    dec = eig_hermitian(A)
    best = None
    for c in cl:
        Q = dec.vectors[:, list(c.indices)]
        _, s, vh = np.linalg.svd(B @ Q)
        coeff = vh[-1].conj()
        psi = Q @ coeff
        psi = psi / np.linalg.norm(psi)
        # fix sign for reproducibility: largest entry positive
        k = int(np.argmax(np.abs(psi)))
        psi = psi * np.sign(psi[k])
        res = float(np.linalg.norm(B @ psi))
        if best is None or res < best[2]:
            best = (float(np.real(c.representative)), np.real_if_close(psi), res)
    return CouplingVerdict(False, theta_t, tol, (best[0], best[1]), best[2])


# --- compensators ---------------------------------------------------------

@dataclass
class CompensatorResult:
    k_matrix: np.ndarray
    theta: float
    skew_residual: float
    at: FrequencyPoint | None = None
    identity_residual: float | None = None
    source: str = ""


def _theta(K, A, B) -> float:
    return min_eig_sym(K @ A + hermitian_part(B))


def drazin_compensator(
    A,
    B,
    rel_gap: float = DEFAULT_REL_GAP,
    gap_floor: float = GAP_FLOOR,
    at: FrequencyPoint | None = None,
) -> CompensatorResult:
    """Reduced-resolvent compensator ``K = sum_{i!=j} P_i B P_j / (mu_i - mu_j)``.

    Verifies ``B = Pi_A(B) + A K - K A`` to 1e-8 relative and returns
    ``theta = lambda_min([K A]^s + B)``.
    """
    A = np.asarray(A)
    B = np.asarray(B)
    cl = _clusters(A, rel_gap)
    reps = cl.representatives
    diam = float(np.max(np.abs(reps[:, None] - reps[None, :]))) if len(reps) > 1 else 0.0
    floor = gap_floor * (1.0 + diam)
    K = np.zeros(A.shape, dtype=complex)
    Pi = np.zeros(A.shape, dtype=complex)
    for i, ci in enumerate(cl):
        PiB = ci.projection @ B
        Pi += PiB @ ci.projection
        for j, cj in enumerate(cl):
            if i == j:
                continue
            gap = ci.representative - cj.representative
            if abs(gap) < floor:
                raise ConditioningError(f"cluster gap {abs(gap):.3e} below floor {floor:.3e}", at=at)
            K += PiB @ cj.projection / gap
    K = _realify(K)
    Pi = _realify(Pi)
    ident = _norm(B - Pi - (A @ K - K @ A)) / max(_norm(B), 1e-300)
    if _norm(B) > 0 and ident > IDENTITY_TOL:
        raise ConditioningError(f"projection identity residual {ident:.3e} exceeds {IDENTITY_TOL:g}", at=at)
    skew = _norm(K + K.T) if np.isrealobj(K) else _norm(K + K.conj().T)
    return CompensatorResult(K, _theta(K, A, B), skew, at, ident, "drazin")


def validate_compensator(K, sp: SymmetrizedPair) -> CompensatorResult:
    """Check an arbitrary compensator in symmetrized coordinates."""
    K = np.asarray(K, dtype=float)
    return CompensatorResult(K, _theta(K, sp.a_s, sp.b_s), _norm(K + K.T), sp.at, None, "given")


def validate_compensator_raw(K, S, A, B, mass=None, at: FrequencyPoint | None = None) -> CompensatorResult:
    """Check ``K`` against the unsymmetrized triplet.

    Skewness is measured on ``K S A0`` and ``theta`` is the smallest
    eigenvalue of ``[K S A]^s + S B``.
    """
    K = np.asarray(K, dtype=float)
    S = np.asarray(S, dtype=float)
    mass = np.eye(K.shape[0]) if mass is None else np.asarray(mass, dtype=float)
    KW = K @ S @ mass
    theta = min_eig_sym(K @ S @ A + hermitian_part(S @ B))
    return CompensatorResult(K, theta, _norm(KW + KW.T), at, None, "raw")


def lift_compensator(K_s, S, mass, p: FrequencyPoint | None = None) -> np.ndarray:
    """``K = W^{1/2} K_S W^{-1/2}`` with ``W = S A0``."""
    S = np.asarray(S(p) if callable(S) else S, dtype=float)
    W = S @ np.asarray(mass, dtype=float)
    return spd_sqrt(W) @ np.asarray(K_s, dtype=float) @ spd_inv_sqrt(W)


# --- second-order lift ----------------------------------------------------

def smoothstep_partition(eps: float = 0.1) -> tuple[Callable, Callable]:
    """Pair ``(phi1, phi2)`` with ``phi1 + phi2 = 1``; the switch happens on (1, 1+eps)."""
    if eps <= 0:
        raise ContractError("eps must be positive")

    def phi2(x):
        t = np.clip((np.asarray(x, dtype=float) - 1.0) / eps, 0.0, 1.0)
        return t * t * (3.0 - 2.0 * t)

    def phi1(x):
        return 1.0 - phi2(x)

    return phi1, phi2


@dataclass
class SecondOrderLift:
    k_tilde: Callable[[FrequencyPoint], np.ndarray]
    margin: Callable[[float], float]
    sigma_bar: float
    c: float
    eps: float
    min_excess: float
    checked_points: int

    @property
    def passed(self) -> bool:
        return self.min_excess >= -1e-10


def second_order_lift(
    k_omega: Callable[[np.ndarray], np.ndarray],
    a_omega: Callable[[np.ndarray], np.ndarray],
    l_block,
    b_omega: Callable[[np.ndarray], np.ndarray],
    directions,
    radii,
    c: float | None = None,
    eps: float = 0.1,
) -> SecondOrderLift:
    """Radial rescaling of a direction-only compensator.

    Requires ``[K(w) A(w)]^s + L + B(w) >= sigma I`` on the direction grid
    (``sigma`` is the grid minimum).  Returns ``K~(xi)`` and the margin
    ``f(|xi|)``, and records ``min(lambda_min(...) - f)`` over the
    radius x direction grid.
    """
    L = np.asarray(l_block, dtype=float)
    dirs = np.atleast_2d(np.asarray(directions, dtype=float))
    sig = min(min_eig_sym(k_omega(w) @ a_omega(w) + L + b_omega(w)) for w in dirs)
    if sig <= 0:
        raise ContractError(f"direction-level positivity fails: sigma = {sig:.3e}")
    phi1, phi2 = smoothstep_partition(eps)
    prof = lambda r: r * r * phi1(r) + phi2(r)
    if c is None:
        xs = np.linspace(1.0, 1.0 + eps, 2001)
        c = 1.0 / max(1.0, float(np.max(prof(xs))))
    if not 0 < c <= 1:
        raise ContractError("c must lie in (0, 1]")

    def margin(r: float) -> float:
        r = float(r)
        if r >= 1.0:
            return sig * c * float(prof(r))
        return sig * c * r * r * float(phi1(r))

    def k_tilde(p: FrequencyPoint) -> np.ndarray:
        return c * float(prof(p.radius)) * k_omega(p.direction)

    excess = np.inf
    count = 0
    for r in np.asarray(radii, dtype=float):
        for w in dirs:
            Kt = c * float(prof(r)) * k_omega(w)
            val = min_eig_sym(Kt @ a_omega(w) + L + r * r * b_omega(w))
            excess = min(excess, val - margin(r))
            count += 1
    return SecondOrderLift(k_tilde, margin, sig, c, eps, float(excess), count)


def spectral_bound_from_theta(theta: float, k_norm: float, b_norm: float, xi_norm: float) -> float:
    """Upper bound on ``Re lambda`` implied by a compensator margin."""
    if theta <= 0:
        raise ContractError("theta must be positive")
    r = xi_norm
    den = 4 * r * k_norm * theta + 4 * r * r * theta + 4 * k_norm**2 * b_norm
    return -3.0 * r * r * theta**2 / den


# --- feasibility certificates -------------------------------------------

@dataclass
class FeasibilityCertificate:
    feasible: bool | None  # None means unknown
    forced_zero: list[tuple[int, int]]
    solution_dim: int
    witness: np.ndarray | None = None
    diagonal_weights: np.ndarray | None = None
    description: str = ""
    basis: np.ndarray | None = None
    dual_matrix: np.ndarray | None = None

    def contains(self, S, tol: float = 1e-9) -> bool:
        """Whether the symmetric matrix ``S`` solves the linear constraints."""
        S = np.asarray(S, dtype=float)
        n = S.shape[0]
        v = np.array([S[i, j] for i in range(n) for j in range(i, n)])
        if self.basis is None or self.basis.shape[1] == 0:
            return bool(np.linalg.norm(v) <= tol)
        resid = v - self.basis @ (self.basis.T @ v)
        return bool(np.linalg.norm(resid) <= tol * max(np.linalg.norm(v), 1.0))

    @property
    def verdict(self) -> str:
        return {True: "feasible", False: "infeasible", None: "unknown"}[self.feasible]


def _sym_basis(n: int):
    idx = [(i, j) for i in range(n) for j in range(i, n)]
    mats = []
    for i, j in idx:
        E = np.zeros((n, n))
        E[i, j] = E[j, i] = 1.0
        mats.append(E)
    return idx, mats


def _constraint_rows(M, mats) -> np.ndarray:
    n = M.shape[0]
    iu = np.triu_indices(n, 1)
    nm = _norm(M)
    if nm == 0:
        return np.zeros((0, len(mats)))
    M = M / nm
    cols = []
    for E in mats:
        X = E @ M
        cols.append((X - X.T)[iu])
    return np.array(cols).T


def _feasibility(mats_to_symmetrize: Sequence[np.ndarray], n: int, seed: int, draws: int, label: str) -> FeasibilityCertificate:
    idx, basis = _sym_basis(n)
    rows = [_constraint_rows(np.asarray(M, dtype=float), basis) for M in mats_to_symmetrize]
    C = np.vstack(rows) if rows else np.zeros((0, len(idx)))
    if C.shape[0] == 0:
        N = np.eye(len(idx))
    else:
        _, s, vh = np.linalg.svd(C)
        tol = 1e-10 * max(s[0], 1.0) * len(idx)
        rank = int(np.sum(s > tol))
        N = vh[rank:].T
    dim = N.shape[1]

    def to_mat(y):
        v = N @ y
        S = np.zeros((n, n))
        for (i, j), val in zip(idx, v):
            S[i, j] = S[j, i] = val
        return S

    forced = [idx[k] for k in range(len(idx)) if dim == 0 or np.linalg.norm(N[k]) <= 1e-9]
    if dim == 0:
        return FeasibilityCertificate(False, forced, 0, basis=N, description=f"{label}: only S = 0 solves the constraints")
    diag_rows = np.array([k for k, (i, j) in enumerate(idx) if i == j])
    forced_diag = [idx[k] for k in diag_rows if np.linalg.norm(N[k]) <= 1e-9]
    if forced_diag:
        return FeasibilityCertificate(
            False, forced, dim, basis=N,
            description=f"{label}: diagonal entries {forced_diag} forced to zero",
        )
    # nonnegative diagonal combination vanishing on the solution space
    D = N[diag_rows, :]
    res = scipy.optimize.linprog(
        np.zeros(n),
        A_eq=np.vstack([D.T, np.ones((1, n))]),
        b_eq=np.concatenate([np.zeros(dim), [1.0]]),
        bounds=[(0, None)] * n,
        method="highs",
    )
    if res.status == 0:
        cvec = np.asarray(res.x)
        if np.linalg.norm(D.T @ cvec) <= 1e-8:
            return FeasibilityCertificate(
                False, forced, dim, diagonal_weights=cvec, basis=N,
                description=f"{label}: sign contradiction, sum_i c_i s_ii = 0 with c >= 0",
            )
    rng = np.random.default_rng(seed)
    eye_proj = N.T @ np.array([1.0 if i == j else 0.0 for i, j in idx])
    candidates = [eye_proj] + [rng.standard_normal(dim) for _ in range(draws)]
    for y in candidates:
        S = to_mat(y)
        for sgn in (1.0, -1.0):
            T = sgn * S
            lam = np.linalg.eigvalsh(T)
            if lam[0] > 1e-8 * max(lam[-1], 1e-300):
                W = T / np.abs(T).max()
                return FeasibilityCertificate(True, forced, dim, witness=W, basis=N, description=f"{label}: PD witness found")
    # diagonal congruence S -> D S D keeps definiteness and balances the scales
    dscale = np.array([np.linalg.norm(N[k]) for k in diag_rows]) ** -0.5
    verdict, y, Z = _max_lambda_min(lambda y: dscale[:, None] * to_mat(y) * dscale[None, :], dim, n)
    if Z is not None:
        Z = dscale[:, None] * Z * dscale[None, :]
        Z = Z / np.trace(Z)
    if verdict is True:
        T = to_mat(y)
        return FeasibilityCertificate(
            True, forced, dim, witness=T / np.abs(T).max(), basis=N, description=f"{label}: PD witness found by cutting planes"
        )
    if verdict is False:
        return FeasibilityCertificate(
            False, forced, dim, basis=N, dual_matrix=Z,
            description=f"{label}: PSD dual Z != 0 orthogonal to every solution",
        )
    return FeasibilityCertificate(None, forced, dim, basis=N, description=f"{label}: no PD element and no dual certificate found")


def _max_lambda_min(to_mat, dim: int, n: int, iters: int = 300, tol: float = 1e-10, lp_tol: float = 1e-7):
    """Kelley cutting planes for ``max lambda_min(S(y))`` over ``|y|_inf <= 1``.

    Each cut ``t <= v' S(y) v`` comes from a minimizing eigenvector.  The LP
    value bounds the true maximum from above, so a non-positive value proves
    that no PD element exists; its dual weights give ``Z = sum c_k v_k v_k'``.
    The LP solver works to about ``lp_tol``, so that is the infeasibility
    margin: a reported obstruction means ``max lambda_min <= lp_tol``.
    """
    mats = [to_mat(e) for e in np.eye(dim)]
    cuts = [v for v in np.eye(n)]
    for _ in range(iters):
        # variables (y, t); maximize t subject to t - v' S(y) v <= 0
        G = np.array([[-(v @ M @ v) for M in mats] + [1.0] for v in cuts])
        res = scipy.optimize.linprog(
            np.r_[np.zeros(dim), -1.0], A_ub=G, b_ub=np.zeros(len(cuts)),
            bounds=[(-1, 1)] * dim + [(None, 1.0)], method="highs",
        )
        if res.status != 0:
            return None, None, None
        y, t = res.x[:dim], res.x[dim]
        lam, vec = np.linalg.eigh(to_mat(y))
        if lam[0] > tol * max(lam[-1], 1.0):
            return True, y, None
        if t <= lp_tol:
            c = np.maximum(-np.asarray(res.ineqlin.marginals), 0.0)
            Z = sum(ck * np.outer(v, v) for ck, v in zip(c, cuts))
            return False, None, Z / np.trace(Z)
        cuts.append(vec[:, 0])
    return None, None, None


def friedrichs_feasibility(sys: CoefficientSystem, seed: int = 20240601, draws: int = 1000) -> FeasibilityCertificate:
    """Constant symmetrizer with every ``S L^alpha`` symmetric."""
    return _feasibility(list(sys.coeffs.values()), sys.n, seed, draws, "friedrichs")


def pointwise_symmetrizer_feasibility(
    sys: CoefficientSystem, p: FrequencyPoint, seed: int = 20240601, draws: int = 1000
) -> FeasibilityCertificate:
    """Symmetrizer at one frequency: ``S A(xi)`` and ``S B(xi)`` symmetric."""
    if p.radius <= 0:
        raise DomainError("needs xi != 0")
    pair = assemble_symbols(sys, p)
    return _feasibility([pair.a_sym, pair.b_sym], sys.n, seed, draws, f"pointwise |xi|={p.radius:g}")
