"""Frequency sweeps, strict dissipativity and decay-type classification.

Real parts near zero are the quantities of interest here, and they can be
many orders of magnitude below ``|lambda|`` (for instance ``|xi|^{-2}``
against ``|xi|^3``).  When a symmetrizer is supplied, each real part is
therefore recomputed from the eigenvector as ``-v* B_S v / v* v``, which is
accurate relative to ``|B_S|`` rather than to the full generator.
"""
from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass, field
from typing import Callable, Iterable, Sequence

import mpmath
import numpy as np
from scipy.optimize import linear_sum_assignment

from .denselin import RESIDUAL_TOL, spd_inv_sqrt
from .errors import ClassificationError, ContractError, DissipaError, TrackingError
from .structure import SymmetrizedPair, SymmetrizerFn, drazin_compensator, symmetrize
from .symbolkit import CoefficientSystem, FrequencyPoint, assemble_batch

__all__ = [
    "FrequencyGrid",
    "fibonacci_sphere",
    "SweepRecord",
    "sweep",
    "drazin_theta",
    "StrictVerdict",
    "certify_strict",
    "DecayClassification",
    "classify_type",
    "AsymptoticBranch",
    "asymptotic_fit",
    "records_to_csv",
]


# --- grids ----------------------------------------------------------------

def fibonacci_sphere(count: int) -> np.ndarray:
    """Nearly uniform unit vectors on the 2-sphere (golden-angle spiral)."""
    k = np.arange(count) + 0.5
    z = 1.0 - 2.0 * k / count
    rho = np.sqrt(1.0 - z * z)
    phi = np.pi * (3.0 - np.sqrt(5.0)) * k
    pts = np.stack([rho * np.cos(phi), rho * np.sin(phi), z], axis=1)
    return pts / np.linalg.norm(pts, axis=1)[:, None]


def default_directions(d: int, count: int | None = None) -> np.ndarray:
    if d == 1:
        return np.array([[1.0], [-1.0]])
    if d == 2:
        count = count or 64
        ang = 2 * np.pi * np.arange(count) / count
        return np.stack([np.cos(ang), np.sin(ang)], axis=1)
    if d == 3:
        return fibonacci_sphere(count or 144)
    count = count or 16 * d
    rng = np.random.default_rng(d)
    v = rng.standard_normal((count, d))
    return v / np.linalg.norm(v, axis=1)[:, None]


@dataclass(frozen=True, eq=False)
class FrequencyGrid:
    directions: np.ndarray
    radii: np.ndarray

    def __post_init__(self) -> None:
        dirs = np.atleast_2d(np.asarray(self.directions, dtype=float))
        radii = np.atleast_1d(np.asarray(self.radii, dtype=float))
        if dirs.size == 0 or radii.size == 0:
            raise ContractError("grid needs at least one direction and one radius")
        if np.any(radii <= 0) or np.any(np.diff(radii) <= 0):
            raise ContractError("radii must be positive and strictly increasing")
        dirs = dirs / np.linalg.norm(dirs, axis=1)[:, None]
        object.__setattr__(self, "directions", dirs)
        object.__setattr__(self, "radii", radii)

    @classmethod
    def default(
        cls,
        d: int,
        r_min: float = 1e-3,
        r_max: float = 1e3,
        per_decade: int = 16,
        n_directions: int | None = None,
    ) -> "FrequencyGrid":
        if not 0 < r_min < r_max:
            raise ContractError("need 0 < r_min < r_max")
        decades = math.log10(r_max / r_min)
        count = int(round(decades * per_decade)) + 1
        return cls(default_directions(d, n_directions), np.logspace(math.log10(r_min), math.log10(r_max), count))

    @property
    def d(self) -> int:
        return self.directions.shape[1]

    def __len__(self) -> int:
        return self.radii.size * self.directions.shape[0]

    @property
    def points(self) -> list[FrequencyPoint]:
        return [FrequencyPoint.polar(r, w) for r in self.radii for w in self.directions]


# --- sweep ----------------------------------------------------------------

@dataclass(eq=False)
class SweepRecord:
    at: FrequencyPoint
    eigenvalues: np.ndarray
    max_re: float
    theta: float | None = None
    error: str | None = None
    index: tuple[int, int] = (0, 0)

    @property
    def ok(self) -> bool:
        return self.error is None


def drazin_theta(sp: SymmetrizedPair) -> float:
    """Margin of the Drazin compensator for ``(A_S, B_S)``."""
    return drazin_compensator(sp.a_s, sp.b_s, at=sp.at).theta


def _sorted(vals: np.ndarray) -> np.ndarray:
    return vals[np.lexsort((vals.imag, vals.real))]


def sweep(
    sys: CoefficientSystem,
    S: SymmetrizerFn | None,
    grid: FrequencyGrid,
    theta_fn: Callable[[SymmetrizedPair], float] | None = None,
) -> list[SweepRecord]:
    """Dispersion eigenvalues over the grid, ordered radius-major.

    Eigenvalues come from batched LAPACK calls.  With a symmetrizer the
    generator is first brought to symmetrized coordinates and the real parts
    are refined by Rayleigh quotients.  Failures are stored per record.
    """
    if grid.d != sys.d:
        raise ContractError(f"grid dimension {grid.d} does not match system dimension {sys.d}")
    radii, dirs = grid.radii, grid.directions
    R, D, n = radii.size, dirs.shape[0], sys.n
    a, b = assemble_batch(sys, radii, dirs)
    pencil = 1j * radii[:, None, None, None] * a + b
    points = [[FrequencyPoint.polar(r, w) for w in dirs] for r in radii]
    errors: dict[tuple[int, int], str] = {}
    pairs: dict[tuple[int, int], SymmetrizedPair] = {}

    if S is not None:
        gen = np.empty_like(pencil)
        bs = np.empty((R, D, n, n))
        for i in range(R):
            for j in range(D):
                try:
                    sp = symmetrize(sys, S, points[i][j])
                except DissipaError as exc:
                    errors[(i, j)] = f"{type(exc).__name__}: {exc}"
                    gen[i, j] = np.nan
                    bs[i, j] = np.nan
                    continue
                pairs[(i, j)] = sp
                gen[i, j] = -(1j * radii[i] * sp.a_s + sp.b_s)
                bs[i, j] = sp.b_s
    else:
        gen = -np.linalg.solve(sys.mass[None, None], pencil)
        bs = None

    safe = np.where(np.isfinite(gen), gen, 0.0)
    vals, vecs = np.linalg.eig(safe)
    vecs = vecs / np.linalg.norm(vecs, axis=-2, keepdims=True)
    res = np.linalg.norm(safe @ vecs - vecs * vals[..., None, :], axis=-2).max(axis=-1)
    scale = np.linalg.norm(safe, ord=2, axis=(-2, -1))
    if bs is not None:
        rq = np.einsum("...ki,...kl,...li->...i", vecs.conj(), bs, vecs).real
        vals = -rq + 1j * vals.imag

    records: list[SweepRecord] = []
    for i in range(R):
        for j in range(D):
            p = points[i][j]
            err = errors.get((i, j))
            if err is None and res[i, j] > RESIDUAL_TOL * max(scale[i, j], 1e-300):
                err = f"EigenError: residual {res[i, j]:.3e} exceeds contract"
            if err is not None:
                records.append(SweepRecord(p, np.full(n, np.nan + 0j), float("nan"), None, err, (i, j)))
                continue
            ev = _sorted(vals[i, j])
            theta = None
            if theta_fn is not None and (i, j) in pairs:
                try:
                    theta = float(theta_fn(pairs[(i, j)]))
                except DissipaError as exc:
                    err = f"{type(exc).__name__}: {exc}"
            records.append(SweepRecord(p, ev, float(ev.real.max()), theta, err, (i, j)))
    return records


# --- certification --------------------------------------------------------

def strict_normalizer(r):
    r = np.asarray(r, dtype=float)
    return r * r / (1.0 + r * r) ** 2


@dataclass
class StrictVerdict:
    passed: bool
    worst: SweepRecord
    failures: int
    errors: int


def certify_strict(records: Sequence[SweepRecord], tol: float = 1e-9) -> StrictVerdict:
    """Every ``max_re < -tol * |xi|^2 / (1 + |xi|^2)^2``; errored records count as failures."""
    if len(records) == 0:
        raise ContractError("no sweep records")
    worst, worst_score, fails, errs = None, -np.inf, 0, 0
    for rec in records:
        if not rec.ok or not np.isfinite(rec.max_re):
            errs += 1
            fails += 1
            if worst_score < np.inf:
                worst, worst_score = rec, np.inf
            continue
        score = rec.max_re / strict_normalizer(rec.at.radius)
        if score >= -tol:
            fails += 1
        if score > worst_score:
            worst, worst_score = rec, score
    return StrictVerdict(fails == 0, worst, fails, errs)


@dataclass
class DecayClassification:
    p: int
    q: int
    c_fit: float
    low_slope: float
    high_slope: float

    @property
    def kind(self) -> str:
        if self.p > self.q:
            return "regularity-gain"
        if self.p == self.q:
            return "standard"
        return "regularity-loss"


def radial_profile(records: Sequence[SweepRecord]) -> tuple[np.ndarray, np.ndarray]:
    """Radii and ``-max over directions of max_re`` per radius."""
    worst: dict[float, float] = {}
    for rec in records:
        if not rec.ok:
            raise ContractError(f"record at |xi|={rec.at.radius:g} has an error: {rec.error}")
        r = rec.at.radius
        worst[r] = max(worst.get(r, -np.inf), rec.max_re)
    radii = np.array(sorted(worst))
    return radii, -np.array([worst[r] for r in radii])


def _slope(x, y) -> float:
    return float(np.polyfit(np.log(x), np.log(y), 1)[0])


def classify_type(records: Sequence[SweepRecord], guard: float = 0.25) -> DecayClassification:
    """Fit ``(p, q)`` from the extreme decades of the radial profile."""
    radii, g = radial_profile(records)
    decades = math.log10(radii[-1] / radii[0])
    if decades < 4 - 1e-9:
        raise ContractError("classification needs radii spanning at least 4 decades")
    low = radii <= radii[0] * 10 * (1 + 1e-12)
    high = radii >= radii[-1] / 10 * (1 - 1e-12)
    if low.sum() < 10 or high.sum() < 10:
        raise ContractError("classification needs at least 10 radii per extreme decade")
    if np.any(g <= 0):
        raise ContractError("classification needs max_re < 0 at every radius")
    s_low, s_high = _slope(radii[low], g[low]), _slope(radii[high], g[high])
    k_low, k_high = round(s_low), round(s_high)
    if abs(s_low - k_low) > guard or abs(s_high - k_high) > guard or k_low % 2 or k_high % 2:
        raise ClassificationError(
            f"slopes {s_low:.3f} (low) and {s_high:.3f} (high) are not near even integers", s_low, s_high
        )
    p = k_low // 2
    q = p - k_high // 2
    if p < 0 or q < 0:
        raise ClassificationError(f"slopes give negative exponents p={p}, q={q}", s_low, s_high)
    c_fit = float(np.min(g * (1 + radii**2) ** q / radii ** (2 * p)))
    return DecayClassification(int(p), int(q), c_fit, s_low, s_high)


# --- high-frequency asymptotics ------------------------------------------

@dataclass
class AsymptoticBranch:
    coefficients: dict[int, complex]
    residual: float
    values: np.ndarray

    def __getitem__(self, order: int) -> complex:
        return self.coefficients[order]


def _mp_eigs(sys: CoefficientSystem, r: float, direction: float, dps: int) -> np.ndarray:
    xi = direction * r
    with mpmath.workdps(dps):
        n = sys.n
        M = mpmath.zeros(n, n)
        for alpha, L in sys.coeffs.items():
            z = (mpmath.mpc(0, 1) * mpmath.mpf(xi)) ** alpha.order()
            for i in range(n):
                for j in range(n):
                    if L[i, j] != 0:
                        M[i, j] += z * mpmath.mpf(L[i, j])
        mass = mpmath.matrix(sys.mass.tolist())
        G = -(mpmath.inverse(mass) * M)
        if n == 1:
            return np.array([complex(G[0, 0])])
        ev = mpmath.eig(G, left=False, right=False)
        return np.array([complex(e) for e in ev])


def asymptotic_fit(
    sys: CoefficientSystem,
    direction: float = 1.0,
    orders: Iterable[int] = (3, 2, 1, 0, -1, -2),
    radii=None,
    dps: int = 50,
) -> list[AsymptoticBranch]:
    """Fit ``lambda(xi) ~ sum_n lambda^(n) (i xi)^n`` on each continued branch.

    Eigenvalues are computed with ``dps`` significant digits (the slow branch
    of a dispersive system is many orders below the fast ones).  Branches are
    continued from the smallest radius by optimal assignment; a match farther
    than half the local eigenvalue spacing raises :class:`TrackingError`.
    Branches are returned ordered by ``|lambda|`` at the smallest radius.
    """
    if sys.d != 1:
        raise ContractError("asymptotic_fit needs a one-dimensional system")
    if direction not in (1.0, -1.0, 1, -1):
        raise ContractError("direction must be +1 or -1")
    radii = np.logspace(2, 4, 161) if radii is None else np.asarray(radii, dtype=float)
    if np.any(np.diff(radii) <= 0):
        raise ContractError("radii must be increasing")
    orders = list(orders)
    n = sys.n
    first = _mp_eigs(sys, radii[0], direction, dps)
    first = first[np.argsort(np.abs(first), kind="stable")]
    tracks = [first]
    for r in radii[1:]:
        new = _mp_eigs(sys, r, direction, dps)
        prev = tracks[-1]
        cost = np.abs(prev[:, None] - new[None, :])
        rows, cols = linear_sum_assignment(cost)
        spacing = np.abs(new[:, None] - new[None, :])
        spacing[np.diag_indices(n)] = np.inf
        for rr, cc in zip(rows, cols):
            local = spacing[cc].min()
            if n > 1 and cost[rr, cc] > 0.5 * local:
                raise TrackingError(
                    f"branch {rr} jump {cost[rr, cc]:.3e} exceeds half the spacing {local:.3e}", radius=float(r)
                )
        out = np.empty(n, dtype=complex)
        out[rows] = new[cols]
        tracks.append(out)
    lam = np.array(tracks)  # (radii, branches)
    z = 1j * direction * radii
    basis = np.stack([z**k for k in orders], axis=1)
    colscale = np.abs(basis).max(axis=0)
    branches = []
    for k in range(n):
        y = lam[:, k]
        w = 1.0 / np.maximum(np.abs(y), 1e-300)
        Aw = basis / colscale[None, :] * w[:, None]
        coef, *_ = np.linalg.lstsq(Aw, y * w, rcond=None)
        coef = coef / colscale
        resid = float(np.linalg.norm((basis @ coef - y) * w) / math.sqrt(len(y)))
        branches.append(AsymptoticBranch({o: complex(c) for o, c in zip(orders, coef)}, resid, y))
    return branches


# --- output ---------------------------------------------------------------

def _fmt(x) -> str:
    if x is None:
        return ""
    return repr(float(x))


def records_to_csv(records: Sequence[SweepRecord]) -> str:
    """CSV with header; floats in shortest round-trip form; LF line endings."""
    if not records:
        return ""
    d = records[0].at.d
    n = records[0].eigenvalues.size
    header = (
        [f"xi_{k + 1}" for k in range(d)]
        + ["radius"]
        + [f"re_lambda_{k + 1}" for k in range(n)]
        + [f"im_lambda_{k + 1}" for k in range(n)]
        + ["max_re", "theta"]
    )
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for rec in records:
        w.writerow(
            [_fmt(x) for x in rec.at.xi]
            + [_fmt(rec.at.radius)]
            + [_fmt(v.real) for v in rec.eigenvalues]
            + [_fmt(v.imag) for v in rec.eigenvalues]
            + [_fmt(rec.max_re), _fmt(rec.theta)]
        )
    return buf.getvalue()
