"""JSON run configuration.

Minimal document: ``{"problem": {"scenario": "table1/m4/tg0"}}``; every GA
setting falls back to its default.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field, fields, replace
from pathlib import Path
from typing import Optional

import numpy as np

from ruptureopt.errors import ConfigError
from ruptureopt.optimizer import GaConfig
from ruptureopt.scenarios import DesignProblem, get_design, get_problem

_PROBLEM_KEYS = {f.name for f in fields(DesignProblem)} - {"name"}
_GA_KEYS = {f.name for f in fields(GaConfig)}


@dataclass
class RunConfig:
    problem: Optional[DesignProblem] = None
    ga: GaConfig = field(default_factory=GaConfig)
    output_dir: Path = Path("out")
    emit_svg: bool = True
    emit_csv: bool = True
    design: Optional[np.ndarray] = None
    designs: list = field(default_factory=list)  # (label, problem, G)


def load_json(path) -> dict:
    try:
        with open(path, encoding="utf-8") as fh:
            doc = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from exc
    if not isinstance(doc, dict):
        raise ConfigError("config must be a JSON object")
    return doc


def parse_matrix(value) -> np.ndarray:
    """Moment arms in meters as an (M, N) array; a flat list means one joint."""
    if isinstance(value, str):
        try:
            value = json.loads(value)
        except json.JSONDecodeError as exc:
            raise ConfigError(f"bad matrix {value!r}: {exc}") from exc
    try:
        G = np.array(value, dtype=float)
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"bad matrix {value!r}") from exc
    if G.ndim == 1:
        G = G[:, None]
    if G.ndim != 2 or G.size == 0 or not np.all(np.isfinite(G)):
        raise ConfigError(f"matrix must be a non-empty finite M x N array, got shape {G.shape}")
    return G


def problem_from(doc: dict, G=None, name="inline") -> DesignProblem:
    doc = dict(doc or {})
    unknown = set(doc) - _PROBLEM_KEYS - {"scenario", "name"}
    if unknown:
        raise ConfigError(f"unknown problem keys {sorted(unknown)}")
    if "scenario" in doc:
        base = get_problem(doc.pop("scenario"))
        doc.pop("name", None)
        try:
            return replace(base, **doc)
        except TypeError as exc:
            raise ConfigError(str(exc)) from exc
    if G is not None:
        m, n = G.shape
        doc.setdefault("muscle_count", m)
        doc.setdefault("joint_count", n)
    doc.setdefault("m_min", doc.get("muscle_count", 0))
    doc.setdefault("tau_g", [0.0] * doc.get("joint_count", 0))
    name = doc.pop("name", name)
    try:
        return DesignProblem(name=name, **doc)
    except TypeError as exc:
        raise ConfigError(f"incomplete problem: {exc}") from exc


def ga_from(doc: dict, problem: Optional[DesignProblem]) -> GaConfig:
    doc = dict(doc or {})
    unknown = set(doc) - _GA_KEYS
    if unknown:
        raise ConfigError(f"unknown ga keys {sorted(unknown)}")
    if problem is not None:
        doc.setdefault("g_min", problem.g_min)
        doc.setdefault("g_max", problem.g_max)
    try:
        return GaConfig(**doc)
    except TypeError as exc:
        raise ConfigError(str(exc)) from exc


def design_entry(entry: dict):
    """``(label, problem, G)`` from a ``designs`` list entry."""
    if not isinstance(entry, dict):
        raise ConfigError("design entries must be objects")
    scen = entry.get("scenario")
    G = parse_matrix(entry["G"]) if "G" in entry else None
    if G is None and scen:
        named = get_design(scen)
        if named is None:
            raise ConfigError(f"scenario {scen!r} has no reference design")
        G = named.G
    if G is None:
        raise ConfigError("design entry needs G or a scenario with a reference design")
    pdoc = dict(entry.get("problem", {}))
    if scen and "scenario" not in pdoc:
        pdoc["scenario"] = scen
    label = entry.get("label", scen or "inline")
    return label, problem_from(pdoc, G, label), G


def run_config(doc: dict) -> RunConfig:
    unknown = set(doc) - {"problem", "ga", "output", "design", "designs"}
    if unknown:
        raise ConfigError(f"unknown config keys {sorted(unknown)}")
    design = None
    if "design" in doc:
        d = doc["design"]
        design = parse_matrix(d["G"] if isinstance(d, dict) else d)
    problem = problem_from(doc["problem"], design) if "problem" in doc else None
    out = doc.get("output", {})
    return RunConfig(
        problem=problem,
        ga=ga_from(doc.get("ga"), problem),
        output_dir=Path(out.get("dir", "out")),
        emit_svg=bool(out.get("svg", True)),
        emit_csv=bool(out.get("csv", True)),
        design=design,
        designs=[design_entry(e) for e in doc.get("designs", [])],
    )
