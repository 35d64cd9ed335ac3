"""Constant-coefficient systems and their Fourier symbols.

A system ``A0 U_t + sum_alpha L^alpha D^alpha U = 0`` is stored as a sparse
mapping from multi-indices to real ``n x n`` matrices.  At a frequency
``xi = |xi| omega`` the symbol splits into a real transport part ``A(xi)``
(odd orders) and a real viscosity part ``B(xi)`` (even orders) so that

    i|xi| A(xi) + B(xi) = sum_alpha (i xi)^alpha L^alpha.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Iterable, Mapping

import numpy as np

from .denselin import EigenError, eig_general
from .errors import ContractError, DomainError

__all__ = [
    "MultiIndex",
    "CoefficientSystem",
    "FrequencyPoint",
    "SymbolPair",
    "assemble_symbols",
    "assemble_batch",
    "raw_symbol",
    "dispersion_eigenvalues",
    "system_to_dict",
    "system_from_dict",
    "dumps_system",
    "loads_system",
]


@dataclass(frozen=True, order=True)
class MultiIndex:
    """Tuple of non-negative integers; hashable and ordered."""

    entries: tuple[int, ...]

    def __post_init__(self) -> None:
        ent = tuple(int(e) for e in self.entries)
        if any(e < 0 for e in ent):
            raise ContractError(f"negative multi-index entry in {ent}")
        if len(ent) == 0:
            raise ContractError("empty multi-index")
        object.__setattr__(self, "entries", ent)

    @property
    def d(self) -> int:
        return len(self.entries)

    def order(self) -> int:
        return sum(self.entries)

    def monomial(self, x: np.ndarray) -> complex | float:
        """Evaluate ``x^alpha``; ``x`` may be real or complex."""
        out = 1.0
        for xi, e in zip(x, self.entries):
            if e:
                out = out * xi**e
        return out

    @classmethod
    def of(cls, *entries: int) -> "MultiIndex":
        return cls(tuple(entries))

    def __repr__(self) -> str:
        return f"MultiIndex{self.entries}"


def _frozen(a: np.ndarray) -> np.ndarray:
    a = np.array(a, dtype=float, copy=True)
    a.setflags(write=False)
    return a


def _sort_key(alpha: MultiIndex) -> tuple:
    return (alpha.order(), alpha.entries)


@dataclass(frozen=True, eq=False)
class CoefficientSystem:
    """Immutable family ``{L^alpha}`` with mass matrix ``A0``.

    Build with :meth:`build`, which infers ``n``, ``d`` and ``m``.  Absent
    multi-indices stand for zero matrices.
    """

    n: int
    d: int
    m: int
    mass: np.ndarray
    coeffs: Mapping[MultiIndex, np.ndarray]
    label: str = ""

    def __post_init__(self) -> None:
        n, d, m = int(self.n), int(self.d), int(self.m)
        if n < 1 or d < 1 or m < 1:
            raise ContractError(f"need n, d, m >= 1, got {(n, d, m)}")
        mass = _frozen(self.mass)
        if mass.shape != (n, n):
            raise ContractError(f"mass has shape {mass.shape}, expected {(n, n)}")
        if not np.allclose(mass, mass.T, rtol=0, atol=1e-12 * max(1.0, np.abs(mass).max())):
            raise ContractError("mass matrix is not symmetric")
        if np.linalg.eigvalsh(mass).min() <= 0:
            raise ContractError("mass matrix is not positive definite")
        clean: dict[MultiIndex, np.ndarray] = {}
        for alpha, mat in self.coeffs.items():
            if not isinstance(alpha, MultiIndex):
                alpha = MultiIndex(tuple(alpha))
            if alpha.d != d:
                raise ContractError(f"{alpha} has length {alpha.d}, expected {d}")
            if alpha.order() > m:
                raise ContractError(f"{alpha} exceeds maximal order {m}")
            mat = _frozen(mat)
            if mat.shape != (n, n):
                raise ContractError(f"L^{alpha.entries} has shape {mat.shape}")
            if not np.all(np.isfinite(mat)):
                raise ContractError(f"L^{alpha.entries} has non-finite entries")
            clean[alpha] = mat
        if not any(a.order() >= 1 for a in clean):
            raise ContractError("system needs at least one derivative term")
        ordered = dict(sorted(clean.items(), key=lambda kv: _sort_key(kv[0])))
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "d", d)
        object.__setattr__(self, "m", m)
        object.__setattr__(self, "mass", mass)
        object.__setattr__(self, "coeffs", ordered)

    @classmethod
    def build(
        cls,
        coeffs: Mapping,
        mass: np.ndarray | None = None,
        m: int | None = None,
        label: str = "",
    ) -> "CoefficientSystem":
        items = {
            (k if isinstance(k, MultiIndex) else MultiIndex(tuple(k))): np.asarray(v, dtype=float)
            for k, v in coeffs.items()
        }
        if not items:
            raise ContractError("empty coefficient family")
        first = next(iter(items.values()))
        n = first.shape[0]
        d = next(iter(items)).d
        if m is None:
            m = max(a.order() for a in items)
        if mass is None:
            mass = np.eye(n)
        return cls(n=n, d=d, m=m, mass=np.asarray(mass, dtype=float), coeffs=items, label=label)

    def coefficient(self, alpha: MultiIndex | Iterable[int]) -> np.ndarray:
        if not isinstance(alpha, MultiIndex):
            alpha = MultiIndex(tuple(alpha))
        got = self.coeffs.get(alpha)
        return np.zeros((self.n, self.n)) if got is None else got

    def with_mass_folded(self) -> "CoefficientSystem":
        """Same dynamics with identity mass: ``L^alpha -> A0^{-1} L^alpha``."""
        inv = np.linalg.inv(self.mass)
        return CoefficientSystem.build(
            {a: inv @ L for a, L in self.coeffs.items()}, np.eye(self.n), self.m, self.label
        )

    def has_relaxation(self) -> bool:
        zero = MultiIndex((0,) * self.d)
        return zero in self.coeffs and bool(np.any(self.coeffs[zero] != 0))

    def orders(self) -> list[int]:
        return sorted({a.order() for a in self.coeffs})


@dataclass(frozen=True, eq=False)
class FrequencyPoint:
    """A nonzero wave vector with its polar decomposition."""

    xi: np.ndarray
    radius: float
    direction: np.ndarray

    @classmethod
    def from_xi(cls, xi) -> "FrequencyPoint":
        xi = np.atleast_1d(np.asarray(xi, dtype=float))
        r = float(np.linalg.norm(xi))
        if not np.isfinite(r) or r <= 0.0:
            raise DomainError("frequency xi = 0 has no direction")
        return cls(_frozen(xi), r, _frozen(xi / r))

    @classmethod
    def polar(cls, radius: float, direction) -> "FrequencyPoint":
        w = np.atleast_1d(np.asarray(direction, dtype=float))
        nw = np.linalg.norm(w)
        if nw == 0 or radius <= 0:
            raise DomainError("polar frequency needs radius > 0 and nonzero direction")
        w = w / nw
        return cls(_frozen(radius * w), float(radius), _frozen(w))

    @property
    def d(self) -> int:
        return self.xi.shape[0]


@dataclass(frozen=True, eq=False)
class SymbolPair:
    a_sym: np.ndarray
    b_sym: np.ndarray
    at: FrequencyPoint

    def full(self) -> np.ndarray:
        """``i|xi| A + B`` as a complex matrix."""
        return 1j * self.at.radius * self.a_sym + self.b_sym


def _split_factor(k: int, r: float) -> tuple[bool, float]:
    """Return (odd?, scalar) so that (i xi)^alpha = i|xi| * s * w^alpha (odd) or s * w^alpha."""
    if k % 2:
        return True, r ** (k - 1) * (-1.0) ** ((k - 1) // 2)
    return False, r**k * (-1.0) ** (k // 2)


def assemble_symbols(sys: CoefficientSystem, p: FrequencyPoint) -> SymbolPair:
    if p.radius <= 0:
        raise DomainError("assemble_symbols needs xi != 0")
    if p.d != sys.d:
        raise ContractError(f"frequency has dimension {p.d}, system has {sys.d}")
    a = np.zeros((sys.n, sys.n))
    b = np.zeros((sys.n, sys.n))
    for alpha, L in sys.coeffs.items():
        odd, s = _split_factor(alpha.order(), p.radius)
        w = alpha.monomial(p.direction)
        if w == 0.0:
            continue
        if odd:
            a += (s * w) * L
        else:
            b += (s * w) * L
    return SymbolPair(a, b, p)


def assemble_batch(sys: CoefficientSystem, radii, directions) -> tuple[np.ndarray, np.ndarray]:
    """Vectorized symbols on a product grid.

    Returns arrays of shape ``(len(radii), len(directions), n, n)`` for A and B.
    """
    radii = np.asarray(radii, dtype=float)
    dirs = np.atleast_2d(np.asarray(directions, dtype=float))
    R, D, n = radii.size, dirs.shape[0], sys.n
    a = np.zeros((R, D, n, n))
    b = np.zeros((R, D, n, n))
    for alpha, L in sys.coeffs.items():
        k = alpha.order()
        mono = np.prod(dirs ** np.array(alpha.entries)[None, :], axis=1)
        if k % 2:
            rs = radii ** (k - 1) * (-1.0) ** ((k - 1) // 2)
            a += rs[:, None, None, None] * mono[None, :, None, None] * L
        else:
            rs = radii**k * (-1.0) ** (k // 2)
            b += rs[:, None, None, None] * mono[None, :, None, None] * L
    return a, b


def raw_symbol(sys: CoefficientSystem, xi) -> np.ndarray:
    xi = np.atleast_1d(np.asarray(xi, dtype=float))
    out = np.zeros((sys.n, sys.n), dtype=complex)
    ixi = 1j * xi
    for alpha, L in sys.coeffs.items():
        out += alpha.monomial(ixi) * L
    return out


def dispersion_eigenvalues(sys: CoefficientSystem, p: FrequencyPoint) -> np.ndarray:
    """Roots of ``det(lambda A0 + i|xi| A + B) = 0``, sorted by (Re, Im).

    Raises :class:`EigenError` (carrying ``at=p``) if the solver fails or an
    eigenpair misses the residual contract.
    """
    pair = assemble_symbols(sys, p)
    pencil = pair.full()
    M = -np.linalg.solve(sys.mass, pencil)
    try:
        dec = eig_general(M)
    except EigenError as exc:
        raise EigenError(str(exc), at=p) from exc
    scale = np.linalg.norm(pencil, 2)
    mass_norm = np.linalg.norm(sys.mass, 2)
    for lam, phi in zip(dec.values, dec.vectors.T):
        res = np.linalg.norm((lam * sys.mass + pencil) @ phi)
        bound = 1e-9 * max(scale + abs(lam) * mass_norm, 1e-300)
        if res > bound:
            raise EigenError(f"pencil residual {res:.3e} exceeds {bound:.3e}", at=p)
    vals = dec.values
    order = np.lexsort((vals.imag, vals.real))
    return vals[order]


# --- serialization -------------------------------------------------------

def system_to_dict(sys: CoefficientSystem) -> dict:
    return {
        "n": sys.n,
        "d": sys.d,
        "m": sys.m,
        "label": sys.label,
        "mass": [float(x) for x in sys.mass.ravel()],
        "coeffs": [
            {"alpha": list(a.entries), "matrix": [float(x) for x in L.ravel()]}
            for a, L in sys.coeffs.items()
        ],
    }


def system_from_dict(doc: Mapping) -> CoefficientSystem:
    try:
        n, d, m = int(doc["n"]), int(doc["d"]), int(doc["m"])
        mass = np.array(doc.get("mass", np.eye(n).ravel()), dtype=float).reshape(n, n)
        coeffs = {
            MultiIndex(tuple(item["alpha"])): np.array(item["matrix"], dtype=float).reshape(n, n)
            for item in doc["coeffs"]
        }
    except (KeyError, ValueError, TypeError) as exc:
        raise ContractError(f"malformed system document: {exc}") from exc
    sys = CoefficientSystem(n=n, d=d, m=m, mass=mass, coeffs=coeffs, label=str(doc.get("label", "")))
    return sys


def dumps_system(sys: CoefficientSystem) -> str:
    # json writes floats with repr, the shortest string that round-trips exactly
    return json.dumps(system_to_dict(sys), indent=1)


def loads_system(text: str) -> CoefficientSystem:
    return system_from_dict(json.loads(text))
