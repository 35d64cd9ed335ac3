"""Catalog of linearized physical systems.

Each builder returns a :class:`ModelBundle`: the coefficient system, a symbol
symmetrizer when one exists, a reference compensator in symmetrized
coordinates and the verdicts the analysis is expected to reproduce.

Systems are written through their Fourier symbols.  ``transport`` terms are
polynomials ``T(xi)`` with ``i T(xi)`` entering the symbol (so
``|xi| A(xi) = T(xi)``) and ``viscosity`` terms are polynomials ``V(xi)``
entering ``B(xi)`` directly.  :func:`_from_symbols` converts both to the
coefficients ``L^alpha``.
"""
from __future__ import annotations

import itertools
from dataclasses import asdict, dataclass, field, fields, replace
from typing import Callable, Mapping

import numpy as np

from .errors import ContractError
from .structure import SymmetrizerFn
from .symbolkit import CoefficientSystem, FrequencyPoint, MultiIndex

__all__ = [
    "Expected",
    "ModelBundle",
    "NSKParams",
    "NSFKParams",
    "EFKParams",
    "DNSFParams",
    "QHDIsoParams",
    "QHDFullParams",
    "build_nsk2d",
    "build_nsfk3d",
    "build_efk1d",
    "build_efk_md",
    "build_dnsf",
    "build_dnsf1d",
    "build_dnsf3d",
    "build_qhd_iso",
    "build_qhd_full",
    "CATALOG",
    "build_model",
    "heat_system",
    "transport_system",
    "airy_system",
]

Poly = dict  # MultiIndex -> n x n matrix


# --- polynomial helpers ---------------------------------------------------

def _unit(d: int, *axes: int) -> MultiIndex:
    e = [0] * d
    for a in axes:
        e[a] += 1
    return MultiIndex(tuple(e))


def _add(poly: Poly, alpha: MultiIndex, M) -> None:
    M = np.asarray(M, dtype=float)
    if alpha in poly:
        poly[alpha] = poly[alpha] + M
    else:
        poly[alpha] = M.copy()


def _linear(d: int, mats) -> Poly:
    """``sum_j xi_j M_j``."""
    out: Poly = {}
    for j in range(d):
        _add(out, _unit(d, j), mats[j])
    return out


def _quadratic(d: int, fn: Callable[[int, int], np.ndarray]) -> Poly:
    """``sum_{j,k} xi_j xi_k fn(j, k)``."""
    out: Poly = {}
    for j in range(d):
        for k in range(d):
            _add(out, _unit(d, j, k), fn(j, k))
    return out


def _cubic_radial(d: int, mats) -> Poly:
    """``|xi|^2 sum_j xi_j M_j``."""
    out: Poly = {}
    for j in range(d):
        for k in range(d):
            _add(out, _unit(d, j, k, k), mats[j])
    return out


def _quartic_radial(d: int, M) -> Poly:
    """``|xi|^4 M``."""
    out: Poly = {}
    for j in range(d):
        for k in range(d):
            _add(out, _unit(d, j, j, k, k), M)
    return out


def _from_symbols(
    n: int,
    d: int,
    transport: list[Poly],
    viscosity: list[Poly],
    relaxation=None,
    mass=None,
    label: str = "",
) -> CoefficientSystem:
    coeffs: dict[MultiIndex, np.ndarray] = {}
    for poly in transport:
        for alpha, T in poly.items():
            k = alpha.order()
            if k % 2 == 0:
                raise ContractError("transport terms must have odd order")
            _add(coeffs, alpha, (-1.0) ** ((k - 1) // 2) * T)
    for poly in viscosity:
        for alpha, V in poly.items():
            k = alpha.order()
            if k % 2:
                raise ContractError("viscosity terms must have even order")
            _add(coeffs, alpha, (-1.0) ** (k // 2) * V)
    if relaxation is not None:
        _add(coeffs, MultiIndex((0,) * d), relaxation)
    coeffs = {a: M for a, M in coeffs.items() if np.any(M != 0)}
    return CoefficientSystem.build(coeffs, mass=mass, label=label)


def _E(n: int, i: int, j: int, v: float = 1.0) -> np.ndarray:
    M = np.zeros((n, n))
    M[i, j] = v
    return M


def _positive(params, *names: str) -> None:
    for name in names:
        v = getattr(params, name)
        if not np.isfinite(v) or v <= 0:
            raise ContractError(f"parameter {name} must be positive, got {v}")


def _velocity(u, d: int) -> np.ndarray:
    if u is None:
        return np.zeros(d)
    u = np.atleast_1d(np.asarray(u, dtype=float))
    if u.size == 1 and d > 1 and u[0] == 0:
        return np.zeros(d)
    if u.size != d:
        raise ContractError(f"background velocity needs {d} components")
    return u


# --- bundle ---------------------------------------------------------------

@dataclass(frozen=True)
class Expected:
    coupled: bool
    type: tuple[int, int] | None
    friedrichs: bool | None
    symbol_symmetrizable: bool = True
    l2_exponent: float | None = None


@dataclass(frozen=True, eq=False)
class ModelBundle:
    """A catalog model with its analysis metadata.

    ``reference_compensator`` returns a matrix in symmetrized coordinates.
    With ``compensator_scope == "homogeneous"`` it pairs with
    ``B_S(xi)/|xi|^2``; with ``"full"`` it pairs with ``B_S(xi)`` itself.
    """

    name: str
    system: CoefficientSystem
    params: object
    expected: Expected
    symmetrizer: SymmetrizerFn | None = None
    reference_compensator: Callable[[FrequencyPoint], np.ndarray] | None = None
    compensator_scope: str = "homogeneous"
    partial_symmetrizer: SymmetrizerFn | None = None
    density_index: int = 0
    notes: str = ""

    def params_dict(self) -> dict:
        return asdict(self.params) if self.params is not None else {}


# --- Navier-Stokes-Korteweg, two dimensions ------------------------------

@dataclass(frozen=True)
class NSKParams:
    """Isothermal capillary fluid: density rho, pressure slope p_rho, capillarity k,
    shear and bulk viscosities nu and lam, background velocity u."""

    rho: float = 1.0
    p_rho: float = 1.0
    k: float = 1.0
    nu: float = 1.0
    lam: float = 1.0
    u: tuple[float, ...] = (0.0, 0.0)

    def validate(self) -> None:
        _positive(self, "rho", "p_rho", "nu")
        if self.k < 0:
            raise ContractError("capillarity k must be non-negative")
        if 2 * self.nu + self.lam <= 0:
            raise ContractError("need 2 nu + lam > 0")


def build_nsk2d(params: NSKParams | None = None) -> ModelBundle:
    p = params or NSKParams()
    p.validate()
    d, n = 2, 3
    u = _velocity(p.u, d)
    rho, prho, k, nu, lam = p.rho, p.p_rho, p.k, p.nu, p.lam
    A1 = np.array([[u[0], rho, 0], [prho, rho * u[0], 0], [0, 0, rho * u[0]]])
    A2 = np.array([[u[1], 0, rho], [0, rho * u[1], 0], [prho, 0, rho * u[1]]])
    C = [_E(n, 1, 0, k * rho), _E(n, 2, 0, k * rho)]

    def visc(j, l):
        M = np.zeros((n, n))
        M[1 + j, 1 + l] += nu + lam
        if j == l:
            M[1:, 1:] += nu * np.eye(2)
        return M

    sys = _from_symbols(
        n, d, [_linear(d, [A1, A2]), _cubic_radial(d, C)], [_quadratic(d, visc)],
        mass=np.diag([1.0, rho, rho]), label="nsk2d",
    )

    def beta(r):
        return prho + k * rho * r * r

    S = SymmetrizerFn(lambda q: np.diag([beta(q.radius) / rho, 1.0, 1.0]), "diag(beta/rho, 1, 1)")

    def kbar(q: FrequencyPoint) -> np.ndarray:
        w = q.direction
        c = (2 * nu + lam) / (4 * np.sqrt(beta(q.radius)) * rho)
        return c * np.array([[0, w[0], w[1]], [-w[0], 0, 0], [-w[1], 0, 0]])

    return ModelBundle(
        "nsk2d", sys, p, Expected(True, (1, 0), False, True, -0.5),
        symmetrizer=S, reference_compensator=kbar, compensator_scope="homogeneous",
    )


# --- Navier-Stokes-Fourier-Korteweg, three dimensions --------------------

@dataclass(frozen=True)
class NSFKParams:
    """Heat-conducting capillary fluid linearized at (rho, u, theta)."""

    rho: float = 1.0
    theta: float = 1.0
    p_rho: float = 1.0
    p_theta: float = 1.0
    e_theta: float = 1.0
    k: float = 1.0
    nu: float = 1.0
    lam: float = 1.0
    alpha: float = 1.0
    u: tuple[float, ...] = (0.0, 0.0, 0.0)
    delta: float = 0.25

    def validate(self) -> None:
        _positive(self, "rho", "theta", "p_rho", "p_theta", "e_theta", "nu", "alpha", "delta")
        if self.k < 0:
            raise ContractError("capillarity k must be non-negative")
        if 2 * self.nu + self.lam <= 0:
            raise ContractError("need 2 nu + lam > 0")


def _fluid_transport(d, rho, theta, p_rho, p_theta, e_theta, u):
    """First-order transport of the (rho, u, theta) fluid block with mass diag(1, rho I, rho e_theta)."""
    n = d + 2
    mats = []
    for j in range(d):
        M = np.zeros((n, n))
        M[0, 0] = u[j]
        M[0, 1 + j] = rho
        M[1 + j, 0] = p_rho
        M[1 + j, n - 1] = p_theta
        M[n - 1, 1 + j] = theta * p_theta
        for i in range(1, d + 1):
            M[i, i] = rho * u[j]
        M[n - 1, n - 1] = rho * e_theta * u[j]
        mats.append(M)
    return mats


def _gamma(theta, p_theta, e_theta, rho):
    return np.sqrt(theta) * p_theta / (np.sqrt(e_theta) * rho)


def build_nsfk3d(params: NSFKParams | None = None) -> ModelBundle:
    p = params or NSFKParams()
    p.validate()
    d, n = 3, 5
    u = _velocity(p.u, d)
    rho, th = p.rho, p.theta
    A = _fluid_transport(d, rho, th, p.p_rho, p.p_theta, p.e_theta, u)
    C = [_E(n, 1 + j, 0, p.k * rho) for j in range(d)]

    def visc(j, l):
        M = np.zeros((n, n))
        M[1 + j, 1 + l] += p.nu + p.lam
        if j == l:
            M[1:4, 1:4] += p.nu * np.eye(3)
            M[4, 4] += p.alpha
        return M

    mass = np.diag([1.0, rho, rho, rho, rho * p.e_theta])
    sys = _from_symbols(n, d, [_linear(d, A), _cubic_radial(d, C)], [_quadratic(d, visc)], mass=mass, label="nsfk3d")

    def beta(r):
        return p.p_rho + p.k * rho * r * r

    S = SymmetrizerFn(
        lambda q: np.diag([beta(q.radius) / rho, 1.0, 1.0, 1.0, 1.0 / th]), "diag(beta/rho, I, 1/theta)"
    )
    gam = _gamma(th, p.p_theta, p.e_theta, rho)

    def kbar(q: FrequencyPoint) -> np.ndarray:
        b = beta(q.radius)
        bb = gam / np.sqrt(b)
        K = np.zeros((n, n))
        for j, wj in enumerate(q.direction):
            K[0, 1 + j] += wj
            K[1 + j, 0] -= wj
            K[1 + j, 4] += bb * wj
            K[4, 1 + j] -= bb * wj
        return p.delta / (rho * np.sqrt(b)) * K

    return ModelBundle(
        "nsfk3d", sys, p, Expected(True, (1, 0), False, True, -0.75),
        symmetrizer=S, reference_compensator=kbar, compensator_scope="homogeneous",
    )


# --- Euler-Fourier-Korteweg ---------------------------------------------

@dataclass(frozen=True)
class EFKParams:
    """Inviscid heat-conducting capillary fluid."""

    rho: float = 1.0
    theta: float = 1.0
    p_rho: float = 1.0
    p_theta: float = 1.0
    e_theta: float = 1.0
    k: float = 1.0
    alpha: float = 1.0
    u: tuple[float, ...] | float = 0.0

    def validate(self) -> None:
        _positive(self, "rho", "theta", "p_rho", "p_theta", "e_theta", "alpha")
        if self.k < 0:
            raise ContractError("capillarity k must be non-negative")


def _efk(p: EFKParams, d: int):
    n = d + 2
    u = _velocity(p.u, d)
    rho, th = p.rho, p.theta
    A = _fluid_transport(d, rho, th, p.p_rho, p.p_theta, p.e_theta, u)
    C = [_E(n, 1 + j, 0, p.k * rho) for j in range(d)]
    visc = lambda j, l: _E(n, n - 1, n - 1, p.alpha) if j == l else np.zeros((n, n))
    mass = np.diag([1.0] + [rho] * d + [rho * p.e_theta])
    label = "efk1d" if d == 1 else f"efk-md(d={d})"
    sys = _from_symbols(n, d, [_linear(d, A), _cubic_radial(d, C)], [_quadratic(d, visc)], mass=mass, label=label)

    def beta(r):
        return p.p_rho + p.k * rho * r * r

    S = SymmetrizerFn(
        lambda q: np.diag([beta(q.radius) / rho] + [1.0] * d + [1.0 / th]), "diag(beta/rho, I, 1/theta)"
    )
    return sys, S, beta


def build_efk1d(params: EFKParams | None = None) -> ModelBundle:
    p = params or EFKParams()
    p.validate()
    sys, S, beta = _efk(p, 1)
    gam = _gamma(p.theta, p.p_theta, p.e_theta, p.rho)
    al, rho, et = p.alpha, p.rho, p.e_theta

    def kbar(q: FrequencyPoint) -> np.ndarray:
        b = beta(q.radius)
        g2 = gam * gam
        c = 1.0 / (4 * (b + g2) ** 2 * rho * et)
        x = 3 * al * np.sqrt(b) * g2
        y = al * gam * (4 * b + g2)
        K = c * np.array([[0, x, 0], [-x, 0, y], [0, -y, 0]])
        return float(q.direction[0]) * K

    return ModelBundle(
        "efk1d", sys, p, Expected(True, (1, 1), False, True, -0.25),
        symmetrizer=S, reference_compensator=kbar, compensator_scope="homogeneous",
    )


def build_efk_md(params: EFKParams | None = None, d: int = 2) -> ModelBundle:
    if d < 2:
        raise ContractError("efk-md needs d >= 2; use build_efk1d")
    p = params or EFKParams()
    p.validate()
    sys, S, _ = _efk(p, d)
    return ModelBundle("efk-md", sys, p, Expected(False, None, False, True), symmetrizer=S)


# --- dispersive Navier-Stokes-Fourier ------------------------------------

@dataclass(frozen=True)
class DNSFParams:
    """Dispersive correction to the Navier-Stokes-Fourier system.

    ``tau1`` and ``tau4`` must satisfy ``tau4 = theta tau1 / 2``; leaving
    ``tau1`` as ``None`` derives it from ``tau4``.
    """

    rho: float = 1.0
    theta: float = 1.0
    mu: float = 1.0
    alpha: float = 1.0
    tau4: float = 1.0
    tau1: float | None = None
    u: tuple[float, ...] | float = 0.0
    delta: float = 0.25

    def resolved(self) -> "DNSFParams":
        t1 = 2 * self.tau4 / self.theta if self.tau1 is None else self.tau1
        return replace(self, tau1=float(t1))

    def validate(self) -> None:
        _positive(self, "rho", "theta", "mu", "alpha", "tau4", "delta")
        t1 = self.resolved().tau1
        if t1 <= 0:
            raise ContractError("tau1 must be positive")
        if abs(self.tau4 - 0.5 * self.theta * t1) > 1e-12 * max(1.0, self.tau4):
            raise ContractError("dispersive coefficients must satisfy tau4 = theta tau1 / 2")


def build_dnsf(params: DNSFParams | None = None, d: int = 3) -> ModelBundle:
    p = (params or DNSFParams()).resolved()
    p.validate()
    if d not in (1, 2, 3):
        raise ContractError("dnsf supports d in {1, 2, 3}")
    n = d + 2
    u = _velocity(p.u, d)
    rho, th, mu, al, t1, t4 = p.rho, p.theta, p.mu, p.alpha, p.tau1, p.tau4
    A = []
    for j in range(d):
        M = np.zeros((n, n))
        for i in range(n):
            M[i, i] = u[j]
        M[0, 1 + j] = rho
        M[1 + j, 0] = th / rho
        M[1 + j, n - 1] = 1.0
        M[n - 1, 1 + j] = 2.0 * th / 3.0
        A.append(M)
    C = []
    for j in range(d):
        M = np.zeros((n, n))
        M[1 + j, n - 1] = 2.0 / (3.0 * rho) * t1
        M[n - 1, 1 + j] = 8.0 / (9.0 * rho) * t4
        C.append(M)

    def visc(j, l):
        M = np.zeros((n, n))
        M[1 + j, 1 + l] += mu / (3.0 * rho)
        if j == l:
            M[1 : d + 1, 1 : d + 1] += mu / rho * np.eye(d)
            M[n - 1, n - 1] += 2.0 * al / (3.0 * rho)
        return M

    name = f"dnsf{d}d"
    sys = _from_symbols(n, d, [_linear(d, A), _cubic_radial(d, C)], [_quadratic(d, visc)], label=name)
    Sc = np.diag([2.0 / 3.0 * th * th / rho**2] + [2.0 / 3.0 * th] * d + [1.0])
    S = SymmetrizerFn(lambda q: Sc, "constant diag(2 theta^2/(3 rho^2), 2 theta/3 I, 1)", claims_friedrichs=True)

    def beta(r):
        beta2 = 2.0 / 3.0 * th + 8.0 / (9.0 * rho) * t4 * r * r
        return np.sqrt(1.5 / th) * beta2

    def kbar(q: FrequencyPoint) -> np.ndarray:
        b = beta(q.radius)
        a_, b_ = 1.0 / b**2, 1.0 / b**1.5
        K = np.zeros((n, n))
        for j, wj in enumerate(q.direction):
            K[0, 1 + j] += a_ * wj
            K[1 + j, 0] -= a_ * wj
            K[1 + j, n - 1] += b_ * wj
            K[n - 1, 1 + j] -= b_ * wj
        return p.delta * K

    return ModelBundle(
        name, sys, p, Expected(True, (1, 2), True, True),
        symmetrizer=S, reference_compensator=kbar, compensator_scope="homogeneous",
    )


def build_dnsf1d(params: DNSFParams | None = None) -> ModelBundle:
    return build_dnsf(params, 1)


def build_dnsf3d(params: DNSFParams | None = None) -> ModelBundle:
    return build_dnsf(params, 3)


# --- quantum hydrodynamics ----------------------------------------------

@dataclass(frozen=True)
class QHDIsoParams:
    """Isentropic quantum fluid with artificial viscosity ``mu_int``."""

    n: float = 1.0
    p_prime: float = 1.0
    mu_int: float = 1.0
    eps: float = 1.0
    tau: float = 1.0

    def validate(self) -> None:
        _positive(self, "n", "p_prime", "mu_int", "eps", "tau")


def build_qhd_iso(params: QHDIsoParams | None = None, d: int = 3) -> ModelBundle:
    p = params or QHDIsoParams()
    p.validate()
    N = d + 1
    nb, tau = p.n, p.tau
    A, C = [], []
    for j in range(d):
        M = np.zeros((N, N))
        M[0, 1 + j] = nb
        M[1 + j, 0] = (p.p_prime + p.mu_int) / nb
        A.append(M)
        C.append(_E(N, 1 + j, 0, p.eps**2 / (12.0 * nb)))
    relax = np.diag([0.0] + [1.0 / tau] * d)
    sys = _from_symbols(N, d, [_linear(d, A), _cubic_radial(d, C)], [], relaxation=relax, label="qhd-iso")

    def Theta(r):
        return p.p_prime + p.mu_int + p.eps**2 * r * r / 12.0

    S = SymmetrizerFn(lambda q: np.diag([Theta(q.radius) / nb**2] + [1.0] * d), "diag(Theta/n^2, I)")

    def ks(q: FrequencyPoint) -> np.ndarray:
        w = q.direction
        K = np.zeros((N, N))
        K[0, 1:] = w
        K[1:, 0] = -w
        return K / (6.0 * np.sqrt(Theta(q.radius)) * tau)

    return ModelBundle(
        "qhd-iso", sys, p, Expected(True, (1, 1), False, True),
        symmetrizer=S, reference_compensator=ks, compensator_scope="full",
    )


@dataclass(frozen=True)
class QHDFullParams:
    """Full quantum fluid with energy exchange; ``g = 3 theta0 / 2`` at equilibrium."""

    n: float = 1.0
    theta0: float = 1.0
    tau_p: float = 1.0
    tau_w: float = 1.0
    kappa: float = 1.0
    hbar: float = 1.0

    def validate(self) -> None:
        _positive(self, "n", "theta0", "tau_p", "tau_w", "kappa", "hbar")

    @property
    def g(self) -> float:
        return 1.5 * self.theta0


def build_qhd_full(params: QHDFullParams | None = None) -> ModelBundle:
    p = params or QHDFullParams()
    p.validate()
    d, N = 3, 5
    nb, g, hb = p.n, p.g, p.hbar
    A, C = [], []
    for j in range(d):
        M = np.zeros((N, N))
        M[0, 1 + j] = nb
        M[1 + j, 0] = 2.0 / 3.0 * g
        M[1 + j, 4] = 2.0 / 3.0 * nb
        M[4, 1 + j] = 2.0 / 3.0 * nb * g
        A.append(M)
        C.append(_E(N, 1 + j, 0, hb * hb / 18.0))
    visc = lambda j, l: _E(N, 4, 4, 2.0 / 3.0 * p.kappa) if j == l else np.zeros((N, N))
    quart = _quartic_radial(d, _E(N, 4, 0, -p.kappa * hb * hb / (36.0 * nb)))
    relax = np.diag([0.0, nb / p.tau_p, nb / p.tau_p, nb / p.tau_p, nb / p.tau_w])
    mass = np.diag([1.0, nb, nb, nb, nb])
    sys = _from_symbols(
        N, d, [_linear(d, A), _cubic_radial(d, C)], [_quadratic(d, visc), quart],
        relaxation=relax, mass=mass, label="qhd-full",
    )

    def H(r):
        return 2.0 / 3.0 * g + r * r * hb * hb / 18.0

    S1 = SymmetrizerFn(lambda q: np.diag([H(q.radius) / nb, 1.0, 1.0, 1.0, 1.0 / g]), "S1 (transport only)")
    return ModelBundle(
        "qhd-full", sys, p, Expected(False, None, False, False),
        partial_symmetrizer=S1,
        notes="symmetrizes (A0, A(xi)) only; no symbol symmetrizer for the pair (A, B) exists",
    )


# --- registry -------------------------------------------------------------

CATALOG: dict[str, tuple[type, Callable]] = {
    "nsk2d": (NSKParams, build_nsk2d),
    "nsfk3d": (NSFKParams, build_nsfk3d),
    "efk1d": (EFKParams, build_efk1d),
    "efk-md": (EFKParams, build_efk_md),
    "dnsf1d": (DNSFParams, build_dnsf1d),
    "dnsf3d": (DNSFParams, build_dnsf3d),
    "qhd-iso": (QHDIsoParams, build_qhd_iso),
    "qhd-full": (QHDFullParams, build_qhd_full),
}


def _coerce(cls, overrides: Mapping) -> object:
    known = {f.name: f for f in fields(cls)}
    kw = {}
    for key, val in overrides.items():
        if key not in known:
            raise ContractError(f"unknown parameter {key!r} for {cls.__name__}; known: {sorted(known)}")
        if key == "u":
            kw[key] = tuple(float(x) for x in np.atleast_1d(val))
        elif val is None:
            kw[key] = None
        else:
            kw[key] = float(val)
    return cls(**kw)


def build_model(name: str, overrides: Mapping | None = None, d: int | None = None) -> ModelBundle:
    """Look up a catalog model by its command-line name."""
    if name not in CATALOG:
        raise ContractError(f"unknown model {name!r}; choose from {sorted(CATALOG)}")
    cls, builder = CATALOG[name]
    params = _coerce(cls, overrides or {})
    if name == "efk-md":
        return builder(params, d=d or 2)
    if d is not None and name in ("dnsf1d", "dnsf3d") and d != int(name[4]):
        raise ContractError(f"{name} is fixed to d={name[4]}")
    return builder(params)


# --- scalar sanity systems ---------------------------------------------

def heat_system(d: int = 1, diffusivity: float = 1.0) -> CoefficientSystem:
    """``u_t = c Laplacian u``."""
    return _from_symbols(1, d, [], [_quadratic(d, lambda j, l: np.eye(1) * diffusivity * (j == l))], label="heat")


def transport_system(speed: float = 1.0) -> CoefficientSystem:
    return CoefficientSystem.build({(1,): [[speed]]}, label="transport")


def airy_system() -> CoefficientSystem:
    return CoefficientSystem.build({(3,): [[1.0]]}, label="airy")
