"""Command-line front end.

Subcommands: ``analyze``, ``sweep``, ``simulate``, ``asymptotics`` and
``list-models``.  Settings come from built-in defaults, then an optional
flat ``key = value`` config file with dotted keys, then command-line flags.
"""
from __future__ import annotations

import argparse
import configparser
import hashlib
import json
import math
import os
import sys as _sys
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any

import numpy as np

from . import __version__
from .denselin import cluster_projections, eig_hermitian, projection_jump
from .dissipativity import (
    FrequencyGrid,
    asymptotic_fit,
    certify_strict,
    classify_type,
    default_directions,
    records_to_csv,
    sweep,
)
from .errors import ClassificationError, ConditioningError, ContractError, DissipaError
from .evolution import InitialData, decay_to_csv, l2_decay
from .models import CATALOG, ModelBundle, build_model, heat_system
from .structure import (
    constant_symmetrizer,
    drazin_compensator,
    friedrichs_feasibility,
    genuine_coupling,
    identity_symmetrizer,
    pointwise_symmetrizer_feasibility,
    symmetrize,
    verify_symmetrizer,
)
from .symbolkit import FrequencyPoint, loads_system

SCHEMA_VERSION = 1
DEFAULT_SEED = 20240601

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_STRICT = 2
EXIT_COUPLING = 3
EXIT_SYMMETRIZER = 4
EXIT_INTERNAL = 5

EXTRA_MODELS = {"heat": "scalar heat equation u_t = u_xx (sanity case)"}


# --- configuration --------------------------------------------------------

@dataclass
class GridConfig:
    r_min: float = 1e-3
    r_max: float = 1e3
    per_decade: int = 16
    directions: int | None = None


@dataclass
class TolConfig:
    strict: float = 1e-9
    symmetrizer: float = 1e-10
    coupling: float = 1e-14  # relative to |B_S|
    classify_guard: float = 0.25


@dataclass
class SimConfig:
    ell: int = 0
    t_min: float = 10.0
    t_max: float = 1e4
    count: int = 31
    include_zero: bool = True
    r_min: float = 1e-5
    r_max: float = 10.0
    per_decade: int = 24
    profile: str = "gaussian"
    amplitude: float = 1.0
    width: float = 1.0


@dataclass
class RunConfig:
    model: str | None = None
    d: int | None = None
    params: dict[str, Any] = field(default_factory=dict)
    grid: GridConfig = field(default_factory=GridConfig)
    tol: TolConfig = field(default_factory=TolConfig)
    sim: SimConfig = field(default_factory=SimConfig)
    seed: int = DEFAULT_SEED
    out: str | None = None
    format: str = "json"

    def validate(self) -> None:
        if not self.model:
            raise ContractError("no model given")
        if not 0 < self.grid.r_min < self.grid.r_max:
            raise ContractError("need 0 < grid.r_min < grid.r_max")
        if self.grid.per_decade < 1:
            raise ContractError("grid.per_decade must be at least 1")
        for name in ("strict", "symmetrizer", "coupling", "classify_guard"):
            if not getattr(self.tol, name) > 0:
                raise ContractError(f"tol.{name} must be positive")
        if self.format not in ("json", "csv"):
            raise ContractError("format must be json or csv")

    def canonical(self) -> dict:
        return {
            "model": self.model,
            "d": self.d,
            "params": {k: self.params[k] for k in sorted(self.params)},
            "grid": vars(self.grid).copy(),
            "tol": vars(self.tol).copy(),
            "sim": vars(self.sim).copy(),
            "seed": self.seed,
        }

    def hash(self) -> str:
        text = json.dumps(self.canonical(), sort_keys=True, separators=(",", ":"))
        return hashlib.sha256(text.encode()).hexdigest()


def _parse_value(text: str) -> Any:
    t = text.strip()
    low = t.lower()
    if low in ("none", "null", ""):
        return None
    if low in ("true", "false"):
        return low == "true"
    if "," in t:
        return tuple(float(x) for x in t.split(","))
    try:
        return int(t)
    except ValueError:
        pass
    try:
        return float(t)
    except ValueError:
        return t


def read_config_file(path: str | Path) -> dict[str, Any]:
    """Flat ``key = value`` lines; ``#`` comments; dotted keys name sections."""
    cp = configparser.ConfigParser(interpolation=None, delimiters=("=",), comment_prefixes=("#", ";"))
    cp.optionxform = str
    cp.read_string("[root]\n" + Path(path).read_text())
    return {k: _parse_value(v) for k, v in cp["root"].items()}


_SECTIONS = {"grid": "grid", "tol": "tol", "sim": "sim", "simulate": "sim", "init": "sim"}


def apply_settings(cfg: RunConfig, settings: dict[str, Any]) -> None:
    for key, val in settings.items():
        if val is None and key not in ("grid.directions", "d"):
            continue
        head, _, rest = key.partition(".")
        if not rest:
            if key not in ("model", "d", "seed", "out", "format"):
                raise ContractError(f"unknown config key {key!r}")
            setattr(cfg, key, val if key not in ("d", "seed") or val is None else int(val))
        elif head == "params":
            cfg.params[rest] = val
        elif head in _SECTIONS:
            target = getattr(cfg, _SECTIONS[head])
            if not hasattr(target, rest):
                raise ContractError(f"unknown config key {key!r}")
            current = getattr(target, rest)
            if isinstance(current, bool):
                val = bool(val)
            elif isinstance(current, int) and val is not None:
                val = int(val)
            elif isinstance(current, float) and val is not None and not isinstance(val, str):
                val = float(val)
            setattr(target, rest, val)
        elif head == "output" and rest in ("dir", "format"):
            setattr(cfg, "out" if rest == "dir" else "format", val)
        else:
            raise ContractError(f"unknown config key {key!r}")


# --- model resolution -----------------------------------------------------

@dataclass
class Resolved:
    name: str
    bundle: ModelBundle | None
    system: Any
    symmetrizer: Any
    friedrichs: Any


def resolve_model(cfg: RunConfig) -> Resolved:
    name = cfg.model
    if name in CATALOG:
        bundle = build_model(name, cfg.params, cfg.d)
        fr = friedrichs_feasibility(bundle.system, seed=cfg.seed)
        return Resolved(name, bundle, bundle.system, bundle.symmetrizer, fr)
    if name == "heat":
        d = cfg.d or 1
        sys = heat_system(d, float(cfg.params.get("diffusivity", 1.0)))
        return Resolved(name, None, sys, identity_symmetrizer(1), friedrichs_feasibility(sys, seed=cfg.seed))
    path = Path(name)
    if path.is_file():
        sys = loads_system(path.read_text())
        fr = friedrichs_feasibility(sys, seed=cfg.seed)
        S = constant_symmetrizer(fr.witness, "friedrichs witness") if fr.feasible else None
        return Resolved(sys.label or path.stem, None, sys, S, fr)
    raise ContractError(f"unknown model {name!r}; see list-models")


def make_grid(cfg: RunConfig, d: int) -> FrequencyGrid:
    g = cfg.grid
    if d == 1 and g.directions == 1:
        dirs = np.array([[1.0]])
    else:
        dirs = default_directions(d, g.directions)
    count = int(round(math.log10(g.r_max / g.r_min) * g.per_decade)) + 1
    return FrequencyGrid(dirs, np.logspace(math.log10(g.r_min), math.log10(g.r_max), count))


# --- JSON helpers ---------------------------------------------------------

def _num(x):
    if x is None:
        return None
    x = float(x) + 0.0  # folds -0.0
    return x if math.isfinite(x) else repr(x)


def _vec(v) -> list:
    v = np.asarray(v)
    if np.iscomplexobj(v):
        if np.max(np.abs(v.imag), initial=0.0) == 0.0:
            v = v.real
        else:
            return [[_num(z.real), _num(z.imag)] for z in v.ravel()]
    return [_num(z) for z in np.asarray(v, dtype=float).ravel()]


def _dump(doc: dict) -> str:
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


def _certificate(cert) -> dict:
    return {
        "feasible": cert.feasible,
        "verdict": cert.verdict,
        "forced_zero": [list(ij) for ij in cert.forced_zero],
        "solution_dim": cert.solution_dim,
        "description": cert.description,
        "witness": None if cert.witness is None else [_vec(row) for row in cert.witness],
        "diagonal_weights": None if cert.diagonal_weights is None else _vec(cert.diagonal_weights),
    }


def _header(cfg: RunConfig, command: str) -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "command": command,
        "tool": {"name": "dissipa", "version": __version__},
        "config": cfg.canonical(),
        "config_hash": cfg.hash(),
        "seeds": {"feasibility": cfg.seed},
    }


# --- analyze --------------------------------------------------------------

def _pointwise_scan(system, grid: FrequencyGrid, seed: int) -> dict:
    # a generic (non-axis) direction from the grid
    w = grid.directions[min(1, grid.directions.shape[0] - 1)]
    rows, threshold = [], None
    for r in grid.radii:
        cert = pointwise_symmetrizer_feasibility(system, FrequencyPoint.polar(r, w), seed=seed, draws=200)
        rows.append({"radius": _num(r), "verdict": cert.verdict})
    verdicts = [row["verdict"] for row in rows]
    for k in range(len(verdicts)):
        if all(v == "infeasible" for v in verdicts[k:]):
            threshold = rows[k]["radius"]
            break
    return {"direction": _vec(w), "radii": rows, "infeasible_from": threshold}


def _compensator_summary(res: Resolved, pairs, grid: FrequencyGrid) -> dict:
    bundle = res.bundle
    per_radius: dict[float, float] = {}
    sources = {"drazin": 0, "reference": 0, "failed": 0}
    for sp in pairs:
        r = sp.at.radius
        try:
            theta = drazin_compensator(sp.a_s, sp.b_s, at=sp.at).theta
            sources["drazin"] += 1
        except ConditioningError:
            if bundle is None or bundle.reference_compensator is None:
                sources["failed"] += 1
                continue
            K = bundle.reference_compensator(sp.at)
            if bundle.compensator_scope == "homogeneous":
                K = r * r * K
            M = K @ sp.a_s
            theta = float(np.linalg.eigvalsh(0.5 * (M + M.T) + sp.b_s)[0])
            sources["reference"] += 1
        per_radius[r] = min(per_radius.get(r, np.inf), theta)
    radii = sorted(per_radius)
    # smoothness of the spectral projections of A_S is only monitored: jumps between
    # neighbouring radii on each ray, and changes of cluster structure
    D = grid.directions.shape[0]
    clusters = [cluster_projections(eig_hermitian(sp.a_s)) for sp in pairs]
    jumps = [projection_jump(clusters[k - D], clusters[k]) for k in range(D, len(clusters))]
    finite = [j for j in jumps if math.isfinite(j)]
    return {
        "min_theta": _num(min(per_radius.values())) if per_radius else None,
        "sources": sources,
        "projection_continuity": {
            "max_jump": _num(max(finite)) if finite else None,
            "structure_changes": len(jumps) - len(finite),
        },
        "profile": [{"radius": _num(r), "min_theta": _num(per_radius[r])} for r in radii],
    }


def cmd_analyze(cfg: RunConfig) -> tuple[dict, int]:
    res = resolve_model(cfg)
    system = res.system
    grid = make_grid(cfg, system.d)
    report = _header(cfg, "analyze")
    report["model"] = {"name": res.name, "n": system.n, "d": system.d, "label": system.label}
    if res.bundle is not None:
        e = res.bundle.expected
        report["model"]["params"] = {k: (list(v) if isinstance(v, tuple) else v) for k, v in res.bundle.params_dict().items()}
        report["expected"] = {
            "coupled": e.coupled, "type": None if e.type is None else list(e.type),
            "friedrichs": e.friedrichs, "symbol_symmetrizable": e.symbol_symmetrizable,
        }
    verdicts: dict[str, Any] = {"friedrichs": _certificate(res.friedrichs)}
    report["verdicts"] = verdicts
    points = grid.points

    # symmetrizer
    S = res.symmetrizer
    candidate = S if S is not None else (res.bundle.partial_symmetrizer if res.bundle else None)
    if candidate is not None:
        srep = verify_symmetrizer(system, candidate, points, tol=cfg.tol.symmetrizer)
        first = srep.first_failure
        verdicts["symmetrizer"] = {
            "passed": srep.passed,
            "label": candidate.label,
            "max_residuals": {k: _num(v) for k, v in sorted(srep.max_residuals.items())},
            "failures": len(srep.failures),
            "first_failure": None if first is None else {
                "xi": _vec(first[0].xi), "check": first[1], "residual": _num(first[2]),
            },
        }
        sym_ok = srep.passed
    else:
        verdicts["symmetrizer"] = {"passed": False, "label": None, "failures": None}
        sym_ok = False
    if not sym_ok:
        verdicts["symmetrizer"]["pointwise_certificate"] = _pointwise_scan(system, grid, cfg.seed)
        S = None

    # coupling and compensator (symmetrized coordinates)
    if S is not None:
        pairs = [symmetrize(system, S, p) for p in points]
        worst, witness = math.inf, None
        for sp in pairs:
            v = genuine_coupling(sp, rel_tol=cfg.tol.coupling)
            worst = min(worst, v.theta_tilde / max(np.linalg.norm(sp.b_s, 2), 1e-300))
            if not v.coupled and witness is None:
                mu, psi = v.witness
                witness = {
                    "xi": _vec(sp.at.xi), "mu": _num(mu), "psi": _vec(psi),
                    "residual": _num(v.witness_residual),
                }
        verdicts["coupling"] = {
            "passed": witness is None, "min_relative_theta_tilde": _num(worst), "witness": witness,
        }
        report["compensator"] = _compensator_summary(res, pairs, grid)
    else:
        verdicts["coupling"] = {"passed": None, "skipped": "no symbol symmetrizer"}

    # strict dissipativity and classification
    records = sweep(system, S, grid)
    sv = certify_strict(records, tol=cfg.tol.strict)
    verdicts["strict"] = {
        "passed": sv.passed,
        "failures": sv.failures,
        "errors": sv.errors,
        "points": len(records),
        "worst": {"xi": _vec(sv.worst.at.xi), "max_re": _num(sv.worst.max_re), "error": sv.worst.error},
    }
    code = EXIT_OK
    if sv.passed:
        try:
            c = classify_type(records, guard=cfg.tol.classify_guard)
            verdicts["classification"] = {
                "p": c.p, "q": c.q, "kind": c.kind, "c_fit": _num(c.c_fit),
                "low_slope": _num(c.low_slope), "high_slope": _num(c.high_slope),
            }
        except (ClassificationError, ContractError) as exc:
            verdicts["classification"] = {"error": f"{type(exc).__name__}: {exc}"}
            code = EXIT_INTERNAL
    else:
        verdicts["classification"] = None

    if not sym_ok:
        code = EXIT_SYMMETRIZER
    elif verdicts["coupling"]["passed"] is False:
        code = EXIT_COUPLING
    elif not sv.passed:
        code = EXIT_STRICT
    if res.bundle is not None:
        e = res.bundle.expected
        cls = verdicts["classification"]
        report["expected_met"] = bool(
            sym_ok == e.symbol_symmetrizable
            and (res.friedrichs.feasible is True) == bool(e.friedrichs)
            and (verdicts["coupling"]["passed"] is True) == e.coupled
            and sv.passed == e.coupled
            and (e.type is None or (bool(cls) and [cls.get("p"), cls.get("q")] == list(e.type)))
        )
    report["exit_code"] = code
    return report, code


# --- sweep ----------------------------------------------------------------

def cmd_sweep(cfg: RunConfig) -> tuple[str, int]:
    res = resolve_model(cfg)
    grid = make_grid(cfg, res.system.d)
    records = sweep(res.system, res.symmetrizer, grid)
    if cfg.format == "csv":
        return records_to_csv(records), EXIT_OK
    doc = _header(cfg, "sweep")
    doc["model"] = res.name
    doc["records"] = [
        {
            "xi": _vec(r.at.xi), "radius": _num(r.at.radius),
            "eigenvalues": _vec(r.eigenvalues) if r.ok else None,
            "max_re": _num(r.max_re), "error": r.error,
        }
        for r in records
    ]
    return _dump(doc), EXIT_OK


# --- simulate -------------------------------------------------------------

def sim_times(s: SimConfig) -> np.ndarray:
    t = np.logspace(math.log10(s.t_min), math.log10(s.t_max), s.count)
    return np.concatenate([[0.0], t]) if s.include_zero else t


def cmd_simulate(cfg: RunConfig) -> tuple[str, dict, int]:
    res = resolve_model(cfg)
    s = cfg.sim
    init = InitialData(s.profile, s.amplitude, s.width)
    dens = res.bundle.density_index if res.bundle is not None else None
    series = l2_decay(
        res.system, init, ell=s.ell, times=sim_times(s),
        r_min=s.r_min, r_max=s.r_max, per_decade=s.per_decade, density_index=dens,
    )
    summary = _header(cfg, "simulate")
    summary["model"] = res.name
    summary["fit"] = {
        "exponent": _num(series.exponent),
        "grid_doubling_discrepancy": _num(series.discrepancy),
        "expected_exponent": None if res.bundle is None else res.bundle.expected.l2_exponent,
    }
    return decay_to_csv(series), summary, EXIT_OK


# --- asymptotics ----------------------------------------------------------

def dnsf_closed_forms(p) -> dict[str, float]:
    """Leading coefficients of the three branches at high frequency."""
    rho, th, mu, al, t4 = p.rho, p.theta, p.mu, p.alpha, p.tau4
    return {
        "lambda3_23": 8.0 / (9.0 * rho) * t4 * math.sqrt(1.5 / th),
        "lambda2_23": (2.0 * mu + al) / (3.0 * rho),
        "lambda-2_1_published": 9.0 / 8.0 * rho * al * th * th / t4,
        "lambda-2_1_rederived": 9.0 / 16.0 * rho * al * th * th / (t4 * t4),
    }


def cmd_asymptotics(cfg: RunConfig) -> tuple[dict, int]:
    res = resolve_model(cfg)
    if res.system.d != 1:
        raise ContractError("asymptotics needs a one-dimensional model")
    branches = asymptotic_fit(res.system)
    doc = _header(cfg, "asymptotics")
    doc["model"] = res.name
    doc["branches"] = [
        {
            "index": k + 1,
            "residual": _num(b.residual),
            "coefficients": {str(o): _vec([c])[0] for o, c in sorted(b.coefficients.items(), reverse=True)},
        }
        for k, b in enumerate(branches)
    ]
    if res.name == "dnsf1d" and np.allclose(np.atleast_1d(res.bundle.params.u), 0):
        doc["closed_forms"] = {k: _num(v) for k, v in dnsf_closed_forms(res.bundle.params).items()}
    elif res.name == "heat":
        doc["closed_forms"] = {"lambda2_1": _num(float(cfg.params.get("diffusivity", 1.0)))}
    return doc, EXIT_OK


def _asymptotic_table(doc: dict) -> str:
    lines = [f"# model {doc['model']}"]
    orders = list(doc["branches"][0]["coefficients"])
    lines.append("branch," + ",".join(f"re_l{o},im_l{o}" for o in orders) + ",residual")
    for b in doc["branches"]:
        vals = []
        for o in orders:
            c = b["coefficients"][o]
            re, im = (c, 0.0) if not isinstance(c, list) else c
            vals += [repr(float(re)), repr(float(im))]
        lines.append(f"{b['index']}," + ",".join(vals) + f",{b['residual']!r}")
    for k, v in doc.get("closed_forms", {}).items():
        lines.append(f"# closed form {k} = {v!r}")
    return "\n".join(lines) + "\n"


# --- list-models ----------------------------------------------------------

def cmd_list_models() -> str:
    lines = []
    for name, (cls, builder) in CATALOG.items():
        b = builder() if name != "efk-md" else builder(d=2)
        lines.append(f"{name}\tn={b.system.n}\td={b.system.d}\t{cls.__name__}")
    for name, desc in EXTRA_MODELS.items():
        lines.append(f"{name}\tn=1\td=1\t{desc}")
    return "\n".join(lines) + "\n"


# --- entry point ----------------------------------------------------------

class _Parser(argparse.ArgumentParser):
    # argparse would exit with 2, which is reserved for a failed strict check
    def error(self, message):
        self.print_usage(_sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="dissipa", description="Dissipative structure analysis")
    ap.add_argument("--version", action="version", version=f"dissipa {__version__}")
    sub = ap.add_subparsers(dest="command", required=True, parser_class=_Parser)
    for name in ("analyze", "sweep", "simulate", "asymptotics"):
        p = sub.add_parser(name)
        p.add_argument("model_pos", nargs="?", metavar="MODEL")
        p.add_argument("--model")
        p.add_argument("--config")
        p.add_argument("--out")
        p.add_argument("--format", choices=("json", "csv"))
        p.add_argument("--seed", type=int)
        p.add_argument("--d", type=int)
        p.add_argument("--param", action="append", default=[], metavar="KEY=VALUE")
        p.add_argument("--grid.r_min", dest="grid.r_min", type=float)
        p.add_argument("--grid.r_max", dest="grid.r_max", type=float)
        p.add_argument("--grid.per_decade", dest="grid.per_decade", type=int)
        p.add_argument("--grid.directions", dest="grid.directions", type=int)
        p.add_argument("--tol.strict", dest="tol.strict", type=float)
        p.add_argument("--tol.symmetrizer", dest="tol.symmetrizer", type=float)
        p.add_argument("--tol.coupling", dest="tol.coupling", type=float)
        p.add_argument("--tol.classify_guard", dest="tol.classify_guard", type=float)
        if name == "simulate":
            p.add_argument("--ell", dest="sim.ell", type=int)
    sub.add_parser("list-models")
    return ap


def config_from_args(args) -> RunConfig:
    cfg = RunConfig()
    if args.config:
        apply_settings(cfg, read_config_file(args.config))
    flags = {k: v for k, v in vars(args).items() if "." in k and v is not None}
    for item in args.param:
        key, sep, val = item.partition("=")
        if not sep:
            raise ContractError(f"--param expects KEY=VALUE, got {item!r}")
        flags[f"params.{key.strip()}"] = _parse_value(val)
    for key in ("model", "d", "seed", "out", "format"):
        v = getattr(args, key, None)
        if v is not None:
            flags[key] = v
    if args.model_pos:
        flags["model"] = args.model_pos
    apply_settings(cfg, flags)
    cfg.validate()
    return cfg


def _emit(text: str, out: str | None, filename: str) -> None:
    if out:
        d = Path(out)
        d.mkdir(parents=True, exist_ok=True)
        with open(d / filename, "w", newline="\n") as fh:
            fh.write(text)
    _sys.stdout.write(text)


def _run(args) -> int:
    if args.command == "list-models":
        _sys.stdout.write(cmd_list_models())
        return EXIT_OK
    cfg = config_from_args(args)
    if args.command == "analyze":
        report, code = cmd_analyze(cfg)
        _emit(_dump(report), cfg.out, "report.json")
        return code
    if args.command == "sweep":
        text, code = cmd_sweep(cfg)
        _emit(text, cfg.out, f"sweep.{cfg.format}")
        return code
    if args.command == "simulate":
        csv_text, summary, code = cmd_simulate(cfg)
        if cfg.format == "csv":
            _emit(csv_text, cfg.out, "decay.csv")
            _sys.stderr.write(f"fitted exponent {summary['fit']['exponent']!r}\n")
            if cfg.out:
                (Path(cfg.out) / "decay.json").write_text(_dump(summary))
        else:
            summary["series"] = csv_text
            _emit(_dump(summary), cfg.out, "decay.json")
        return code
    doc, code = cmd_asymptotics(cfg)
    _emit(_dump(doc) if cfg.format == "json" else _asymptotic_table(doc), cfg.out, f"asymptotics.{cfg.format}")
    return code


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    threads = os.environ.get("DISSIPA_THREADS")
    try:
        if threads:
            from threadpoolctl import threadpool_limits

            with threadpool_limits(limits=max(1, int(threads))):
                return _run(args)
        return _run(args)
    except ContractError as exc:
        _sys.stderr.write(f"error: {exc}\n")
        return EXIT_USAGE
    except DissipaError as exc:
        _sys.stderr.write(f"numerical error: {type(exc).__name__}: {exc}\n")
        return EXIT_INTERNAL
    except (ArithmeticError, np.linalg.LinAlgError) as exc:
        _sys.stderr.write(f"internal numerical error: {exc}\n")
        return EXIT_INTERNAL


if __name__ == "__main__":
    raise SystemExit(main())
