"""Decay of Fourier modes and of frequency-space L2 norms.

Pointwise: ``V(xi, t) = exp(-t(i|xi| A_S + B_S)) v0`` against envelopes
``C exp(-k rate(xi) t)``.  Global: Plancherel-equivalent norms of ``U(t)``
obtained by radial-angular quadrature, with an algebraic rate fitted on the
late times.
"""
from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from .denselin import matrix_exp, matrix_exp_batch
from .dissipativity import default_directions
from .errors import ContractError, ResolutionError
from .structure import SymmetrizedPair, SymmetrizerFn, symmetrize
from .symbolkit import CoefficientSystem, FrequencyPoint, assemble_batch

__all__ = [
    "EnvelopeSpec",
    "EnvelopeReport",
    "InitialData",
    "propagate_point",
    "verify_envelope",
    "DecaySeries",
    "l2_decay",
    "decay_to_csv",
]


def propagate_point(sp: SymmetrizedPair, v0, t: float) -> np.ndarray:
    """``exp(-t(i|xi| A_S + B_S)) v0``."""
    if t < 0:
        raise ContractError("t must be non-negative")
    if sp.at is None:
        raise ContractError("symmetrized pair carries no frequency")
    v0 = np.asarray(v0, dtype=complex)
    return matrix_exp(-sp.generator(), t) @ v0


# --- pointwise envelopes --------------------------------------------------

@dataclass(frozen=True)
class EnvelopeSpec:
    """``kind`` is ``"full"`` (rate ``|xi|^2 f/(1+|xi|^2)``) or
    ``"relaxation-free"`` (rate ``|xi|^2 g``)."""

    kind: str
    margin_fn: Callable[[FrequencyPoint], float]

    def __post_init__(self) -> None:
        if self.kind not in ("full", "relaxation-free"):
            raise ContractError(f"unknown envelope kind {self.kind!r}")

    def rate(self, p: FrequencyPoint) -> float:
        m = float(self.margin_fn(p))
        if not m > 0:
            raise ContractError(f"margin must be positive, got {m} at |xi|={p.radius:g}")
        r2 = p.radius**2
        return r2 * m / (1 + r2) if self.kind == "full" else r2 * m


@dataclass
class EnvelopeReport:
    C: float
    k: float
    samples: int
    violations: list[tuple[float, float, float]] = field(default_factory=list)
    admissible: bool = True

    @property
    def passed(self) -> bool:
        return self.admissible and not self.violations


def _upper_hull(x: np.ndarray, y: np.ndarray) -> list[int]:
    order = np.lexsort((y, x))
    hull: list[int] = []
    for i in order:
        while len(hull) >= 2:
            a, b = hull[-2], hull[-1]
            cross = (x[b] - x[a]) * (y[i] - y[a]) - (y[b] - y[a]) * (x[i] - x[a])
            if cross >= 0:
                hull.pop()
            else:
                break
        hull.append(int(i))
    return hull


def verify_envelope(
    sys: CoefficientSystem,
    S: SymmetrizerFn,
    spec: EnvelopeSpec,
    points: Sequence[FrequencyPoint],
    times,
    c_max: float = 1e3,
    k_floor: float = 1e-8,
    floor: float = 1e-12,
) -> EnvelopeReport:
    """Fit ``|V(xi,t)| <= C exp(-k rate(xi) t)|v0|`` over all samples.

    The sample ratio is the operator 2-norm of the propagator, i.e. the worst
    case over all ``v0``.  ``k`` is minus the slope of the last segment of
    the upper convex hull of ``(rate*t, log ratio)`` and ``C`` the smallest
    constant covering every sample with that ``k``.  Ratios below ``floor``
    are at roundoff level and are not fitted.
    """
    times = np.asarray(times, dtype=float)
    if np.any(times < 0):
        raise ContractError("times must be non-negative")
    gens, rates = [], []
    for p in points:
        sp = symmetrize(sys, S, p)
        gens.append(-sp.generator())
        rates.append(spec.rate(p))
    G = np.array(gens)
    rates = np.array(rates)
    P = matrix_exp_batch(times[None, :, None, None] * G[:, None, :, :])
    ratio = np.linalg.norm(P, ord=2, axis=(-2, -1))  # (points, times)
    s = (rates[:, None] * times[None, :]).ravel()
    y = ratio.ravel()
    keep = y >= floor
    sx, ly = s[keep], np.log(y[keep])
    if sx.size < 2:
        raise ContractError("too few samples above the roundoff floor")
    hull = _upper_hull(sx, ly)
    if len(hull) >= 2:
        a, b = hull[-2], hull[-1]
        k = -(ly[b] - ly[a]) / (sx[b] - sx[a])
    else:
        k = 0.0
    C = float(np.exp(np.max(ly + k * sx)))
    admissible = bool(k > k_floor and C <= c_max)
    k_use = max(k, k_floor)
    C_use = min(C, c_max)
    bound = C_use * np.exp(-k_use * s) * (1 + 1e-9)
    viol_idx = np.nonzero(keep & (y > bound))[0]
    nt = times.size
    violations = [(points[i // nt].radius, float(times[i % nt]), float(y[i])) for i in viol_idx[:100]]
    return EnvelopeReport(C, float(k), int(y.size), violations, admissible)


# --- L2 decay -------------------------------------------------------------

@dataclass(frozen=True)
class InitialData:
    """Radial profile of ``U0`` in frequency space times component weights."""

    profile: str = "gaussian"
    amplitude: float = 1.0
    width: float = 1.0
    weights: tuple[float, ...] | None = None

    def __post_init__(self) -> None:
        if self.profile not in ("gaussian", "compact-bump", "inverse-poly"):
            raise ContractError(f"unknown profile {self.profile!r}")
        if self.width <= 0:
            raise ContractError("width must be positive")

    def radial(self, r: np.ndarray) -> np.ndarray:
        x = self.width * np.asarray(r, dtype=float)
        if self.profile == "gaussian":
            return self.amplitude * np.exp(-0.5 * x * x)
        if self.profile == "inverse-poly":
            return self.amplitude / (1 + x * x) ** 2
        out = np.zeros_like(x)
        inside = x < 1
        out[inside] = np.exp(1 - 1 / (1 - x[inside] ** 2))
        return self.amplitude * out

    def vector(self, n: int) -> np.ndarray:
        w = np.ones(n) if self.weights is None else np.asarray(self.weights, dtype=float)
        if w.shape != (n,):
            raise ContractError(f"weights need {n} components")
        return w


@dataclass
class DecaySeries:
    times: np.ndarray
    norms: np.ndarray
    exponent: float
    discrepancy: float
    running_rate: np.ndarray


def _angular(d: int, count: int | None) -> tuple[np.ndarray, np.ndarray]:
    if d == 1:
        return np.array([[1.0], [-1.0]]), np.array([1.0, 1.0])
    dirs = default_directions(d, count)
    total = 2 * np.pi if d == 2 else 4 * np.pi if d == 3 else None
    if total is None:
        total = 2 * np.pi ** (d / 2) / math.gamma(d / 2)
    return dirs, np.full(dirs.shape[0], total / dirs.shape[0])


def _norms(sys, init, ell, times, radii, dirs, wdir, density_index):
    n, d = sys.n, sys.d
    a, b = assemble_batch(sys, radii, dirs)
    gen = -np.linalg.solve(sys.mass[None, None], 1j * radii[:, None, None, None] * a + b)
    lam, V = np.linalg.eig(gen)
    u0 = init.radial(radii)[:, None, None] * init.vector(n)[None, None, :]
    c = np.linalg.solve(V, np.broadcast_to(u0, lam.shape)[..., None])[..., 0]  # (R, D, n)
    weight = np.ones(n)
    dens = np.zeros(n)
    if density_index is not None:
        dens[density_index] = 1.0
    # trapezoid in log r: dr = r dlog r
    logr = np.log(radii)
    tw = np.zeros_like(radii)
    tw[1:] += 0.5 * np.diff(logr)
    tw[:-1] += 0.5 * np.diff(logr)
    rad_w = tw * radii**d * radii ** (2 * ell)
    out = []
    for t in times:
        u = np.einsum("rdij,rdj->rdi", V, c * np.exp(lam * t))
        mag = np.abs(u) ** 2
        dens_term = (radii**2)[:, None] * (mag @ dens)
        dens_mag = mag @ weight + dens_term
        integral = np.einsum("r,d,rd->", rad_w, wdir, dens_mag)
        out.append(math.sqrt(max(integral, 0.0)))
    return np.array(out)


def l2_decay(
    sys: CoefficientSystem,
    init: InitialData,
    ell: int = 0,
    times=None,
    r_min: float = 1e-5,
    r_max: float = 10.0,
    per_decade: int = 24,
    n_directions: int | None = None,
    density_index: int | None = 0,
    fit_window: float = 10.0,
    resolution_tol: float = 0.01,
) -> DecaySeries:
    """Norm of ``D^ell U(t)`` through Plancherel, plus the late-time exponent.

    The integrand is ``|xi|^{2 ell}`` times ``|U_hat|^2`` with the density
    component additionally weighted by ``1+|xi|^2``.  The quadrature is run
    again with doubled radial and angular resolution; a relative difference
    above ``resolution_tol`` at any time raises :class:`ResolutionError`.
    The exponent is the least-squares slope of ``log norm`` against
    ``log t`` over the last ``fit_window`` factor of positive times.
    """
    times = np.logspace(1, 4, 31) if times is None else np.asarray(times, dtype=float)
    if np.any(times < 0) or np.any(np.diff(times) <= 0):
        raise ContractError("times must be non-negative and increasing")
    if ell < 0:
        raise ContractError("ell must be non-negative")
    decades = math.log10(r_max / r_min)
    R = int(round(decades * per_decade)) + 1
    radii = np.logspace(math.log10(r_min), math.log10(r_max), R)
    dirs, wdir = _angular(sys.d, n_directions)
    coarse = _norms(sys, init, ell, times, radii, dirs, wdir, density_index)
    radii2 = np.logspace(math.log10(r_min), math.log10(r_max), 2 * R - 1)
    dirs2, wdir2 = _angular(sys.d, None if sys.d == 1 else 2 * dirs.shape[0])
    fine = _norms(sys, init, ell, times, radii2, dirs2, wdir2, density_index)
    disc = float(np.max(np.abs(fine - coarse) / np.maximum(fine, 1e-300)))
    if disc > resolution_tol:
        raise ResolutionError(f"grid doubling changed the norm by {disc:.2%}")
    pos = times > 0
    lt, ln = np.log(times[pos]), np.log(fine[pos])
    window = times[pos] >= times[pos][-1] / fit_window
    if window.sum() < 2:
        raise ContractError("need at least two times in the fit window")
    exponent = float(np.polyfit(lt[window], ln[window], 1)[0])
    running = np.full(times.shape, np.nan)
    if pos.sum() >= 2:
        running[pos] = np.gradient(ln, lt)
    return DecaySeries(times, fine, exponent, disc, running)


def decay_to_csv(series: DecaySeries) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["t", "norm", "fitted_rate_running"])
    for t, nv, rr in zip(series.times, series.norms, series.running_rate):
        w.writerow([repr(float(t)), repr(float(nv)), "" if not np.isfinite(rr) else repr(float(rr))])
    return buf.getvalue()
