"""Command-line front end: ``rits``, ``eval``, ``optimize`` and ``sweep``.

Exit codes: 0 success (a design with E = 0 is a result, not an error),
2 configuration error, 3 unsupported dimensions.
"""
from __future__ import annotations

import argparse
import csv
import logging
import sys
import time
from dataclasses import replace
from pathlib import Path

import numpy as np

from ruptureopt import _backend
from ruptureopt.config import RunConfig, load_json, parse_matrix, problem_from, run_config
from ruptureopt.errors import BudgetExceededError, ConfigError, DimensionError, RuptureOptError
from ruptureopt.evaluation import evaluate
from ruptureopt.optimizer import optimize
from ruptureopt.report import ReportRow, fmt, format_design, write_csv
from ruptureopt.rits import calc_rits
from ruptureopt.scenarios import get_design, get_problem, scenario_ids
from ruptureopt.svg import panel_extent, render_panel
from ruptureopt.sweep import SWEEP_FIELDS, run_sweep
from ruptureopt.torque_space import build_torque_polytope, rupture

log = logging.getLogger("ruptureopt")

EXIT_CONFIG = 2
EXIT_DIMENSION = 3


def slug(name: str) -> str:
    return name.replace("/", "_")


def _common(p):
    p.add_argument("--config", type=Path, help="JSON run configuration")
    p.add_argument("--seed", type=int, help="GA seed (unsigned 64-bit)")
    p.add_argument("--out", type=Path, help="output directory")
    p.add_argument("--scenario", action="append", default=[], help="scenario or design id")
    p.add_argument("--rupture", type=int, help="muscle index (1-based) to rupture")
    p.add_argument("--no-svg", action="store_true", help="skip SVG panels")
    p.add_argument("--G", dest="G", help="moment arms in meters as JSON, rows = muscles")
    p.add_argument("--tau-g", dest="tau_g", help="required torque, comma separated")
    p.add_argument("--m-min", dest="m_min", type=int)
    p.add_argument("--backend", choices=("python", "cython"), help="kernel backend")
    p.add_argument("--timings", action="store_true", help="record wall time in reports")
    p.add_argument("-v", "--verbose", action="store_true")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="ruptureopt", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    for name, help_ in (("rits", "inscribed radius of one design"),
                        ("eval", "rupture robustness of designs"),
                        ("optimize", "GA design search"),
                        ("sweep", "reproduce a table over its scenario grid")):
        p = sub.add_parser(name, help=help_)
        _common(p)
        if name == "sweep":
            p.add_argument("grid", choices=("table1", "table2"))
    sub.add_parser("list", help="list built-in scenario ids")
    return parser


def _config(args) -> RunConfig:
    cfg = run_config(load_json(args.config)) if args.config else RunConfig()
    if args.out:
        cfg.output_dir = args.out
    if args.no_svg:
        cfg.emit_svg = False
    if args.seed is not None:
        if not 0 <= args.seed < 2**64:
            raise ConfigError("seed must be an unsigned 64-bit integer")
        cfg.ga = replace(cfg.ga, seed=args.seed)
    return cfg


def _tau(args):
    if args.tau_g is None:
        return None
    try:
        return [float(t) for t in args.tau_g.split(",")]
    except ValueError as exc:
        raise ConfigError(f"bad --tau-g {args.tau_g!r}") from exc


def _inline_problem(args, cfg, G):
    doc = {}
    if _tau(args) is not None:
        doc["tau_g"] = _tau(args)
    if args.m_min is not None:
        doc["m_min"] = args.m_min
    if cfg.problem is not None and not doc:
        return cfg.problem
    if cfg.problem is not None:
        return replace(cfg.problem, **{k: tuple(v) if k == "tau_g" else v for k, v in doc.items()})
    # inline matrices may exceed the default moment-arm range
    doc.setdefault("g_min", min(-0.1, float(G.min())))
    doc.setdefault("g_max", max(0.1, float(G.max())))
    return problem_from(doc, G)


def _designs(args, cfg):
    """(label, problem, G) triples from flags, then the config file."""
    out = []
    for sid in args.scenario:
        named = get_design(sid)
        if named is None:
            get_problem(sid)  # unknown id raises ConfigError
            raise ConfigError(f"scenario {sid!r} has no reference design")
        prob = named.problem
        if args.tau_g is not None or args.m_min is not None:
            prob = replace(prob, **({"tau_g": tuple(_tau(args))} if args.tau_g else {}),
                           **({"m_min": args.m_min} if args.m_min is not None else {}))
        out.append((sid, prob, np.array(named.G)))
    if args.G:
        G = parse_matrix(args.G)
        out.append(("inline", _inline_problem(args, cfg, G), G))
    elif cfg.design is not None and not args.scenario:
        out.append((cfg.problem.name if cfg.problem else "inline", _inline_problem(args, cfg, cfg.design), cfg.design))
    elif not args.scenario and cfg.problem is not None and get_design(cfg.problem.name):
        out.append((cfg.problem.name, cfg.problem, np.array(get_design(cfg.problem.name).G)))
    out.extend(cfg.designs)
    for _, prob, G in out:
        if G.shape != (prob.muscle_count, prob.joint_count):
            raise ConfigError(f"design shape {G.shape} does not match problem "
                              f"({prob.muscle_count} muscles, {prob.joint_count} joints)")
        if prob.joint_count > 3:
            raise DimensionError(f"{prob.joint_count} joints; at most 3 supported")
        if prob.muscle_count > 20:
            raise DimensionError(f"{prob.muscle_count} muscles; at most 20 supported")
    return out


def _write(path: Path, text: str) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(text)


def _panels(label, prob, G, cfg, indices):
    """SVG files for the intact design (index 0) and chosen ruptures."""
    if not cfg.emit_svg or prob.joint_count != 2:
        return []
    bounds, tau = prob.bounds, prob.tau
    extent = panel_extent(build_torque_polytope(G, bounds).vertices, tau)
    paths = []
    for i in indices:
        Gi = G if i == 0 else rupture(G, i)
        res = calc_rits(Gi, bounds, tau)
        poly = build_torque_polytope(Gi, bounds)
        title = f"{label} intact" if i == 0 else f"{label} muscle {i} ruptured"
        path = cfg.output_dir / f"{slug(label)}_rupt{i}.svg"
        _write(path, render_panel(poly.vertices, tau, res.radius, res.included, extent, title))
        paths.append(path)
    return paths


def cmd_rits(args) -> int:
    cfg = _config(args)
    designs = _designs(args, cfg)
    if len(designs) != 1:
        raise ConfigError("rits needs exactly one design (--scenario, --G or config)")
    label, prob, G = designs[0]
    Gr = G if args.rupture is None else rupture(G, args.rupture)
    res = calc_rits(Gr, prob.bounds, prob.tau)
    print(f"scenario: {label}")
    print(f"design (10G^T): {format_design(G)}")
    print(f"rupture: {args.rupture if args.rupture is not None else 'none'}")
    print(f"radius: {fmt(res.radius)}")
    print(f"included: {'yes' if res.included else 'no'}")
    print(f"limiting facet: {'-' if res.limiting_facet is None else res.limiting_facet}")
    print(f"degenerate: {'yes' if res.degenerate else 'no'}")
    if cfg.emit_svg and prob.joint_count == 2:
        poly = build_torque_polytope(Gr, prob.bounds)
        extent = panel_extent(build_torque_polytope(G, prob.bounds).vertices, prob.tau)
        tag = "rits" if args.rupture is None else f"rupt{args.rupture}"
        path = cfg.output_dir / f"{slug(label)}_{tag}.svg"
        _write(path, render_panel(poly.vertices, prob.tau, res.radius, res.included, extent, label))
        print(f"svg: {path}")
    return 0


def _eval_rows(designs, cfg, args):
    rows = []
    for label, prob, G in designs:
        t0 = time.perf_counter()
        ev = evaluate(G, prob.bounds, prob.tau, prob.m_min, backend=args.backend)
        wall = time.perf_counter() - t0 if args.timings else None
        rows.append(ReportRow.from_eval(label, G, ev, wall))
        _panels(label, prob, G, cfg, range(G.shape[0] + 1))
    return rows


def _print_rows(rows):
    for row in rows:
        status = "no solution" if row.no_solution else f"E={fmt(row.e)}"
        print(f"{row.scenario}: [{row.design}] r=({', '.join(fmt(r) for r in row.radii)}) "
              f"count={row.e_count} {status}")


def cmd_eval(args) -> int:
    cfg = _config(args)
    rows = _eval_rows(_designs(args, cfg), cfg, args)
    _print_rows(rows)
    if cfg.emit_csv:
        path = cfg.output_dir / "eval.csv"
        path.parent.mkdir(parents=True, exist_ok=True)
        with open(path, "w", encoding="utf-8", newline="") as fh:
            write_csv(rows, fh)
        print(f"csv: {path}")
    return 0


def _problem(args, cfg):
    if args.scenario:
        if len(args.scenario) != 1:
            raise ConfigError("optimize takes a single --scenario")
        prob = get_problem(args.scenario[0])
    elif cfg.problem is not None:
        prob = cfg.problem
    else:
        raise ConfigError("optimize needs --scenario or a config problem")
    if args.tau_g is not None:
        prob = replace(prob, tau_g=tuple(_tau(args)))
    if args.m_min is not None:
        prob = replace(prob, m_min=args.m_min)
    if prob.joint_count > 3:
        raise DimensionError(f"{prob.joint_count} joints; at most 3 supported")
    if prob.muscle_count > 20:
        raise DimensionError(f"{prob.muscle_count} muscles; at most 20 supported")
    return prob


def cmd_optimize(args) -> int:
    cfg = _config(args)
    prob = _problem(args, cfg)
    ga = replace(cfg.ga, g_min=prob.g_min, g_max=prob.g_max)
    t0 = time.perf_counter()
    res = optimize(prob, ga, backend=args.backend,
                   callback=lambda g, mx, mean: log.info("gen %d max %.6g mean %.6g", g, mx, mean))
    G = res.best.design(prob.joint_count)
    ev = evaluate(G, prob.bounds, prob.tau, prob.m_min, backend=args.backend)
    wall = time.perf_counter() - t0 if args.timings else None
    row = ReportRow.from_eval(prob.name, G, ev, wall)
    _print_rows([row])
    if row.no_solution:
        print("no solution")
    if cfg.emit_csv:
        base = cfg.output_dir / slug(prob.name)
        base.parent.mkdir(parents=True, exist_ok=True)
        with open(f"{base}_history.csv", "w", encoding="utf-8", newline="") as fh:
            w = csv.writer(fh, lineterminator="\n")
            w.writerow(["generation", "max", "mean"])
            for gen, mx, mean in res.history:
                w.writerow([gen, fmt(mx), fmt(mean)])
        with open(f"{base}_best.csv", "w", encoding="utf-8", newline="") as fh:
            write_csv([row], fh)
        print(f"csv: {base}_best.csv, {base}_history.csv")
    _panels(prob.name, prob, G, cfg, range(G.shape[0] + 1))
    return 0


def cmd_sweep(args) -> int:
    cfg = _config(args)
    rows = run_sweep(args.grid, cfg.ga, backend=args.backend)
    for r in rows:
        d = r.as_dict()
        flag = "no solution" if d["no_solution"] == "yes" else f"E={d['e']}"
        cert = f" oracle E={d['oracle_e']} certified={d['certified']}" if d["oracle_e"] else ""
        print(f"{d['scenario']}: {d['fingerprint']} {flag}{cert}")
    if cfg.emit_csv:
        path = cfg.output_dir / f"{args.grid}_sweep.csv"
        path.parent.mkdir(parents=True, exist_ok=True)
        with open(path, "w", encoding="utf-8", newline="") as fh:
            write_csv(rows, fh, SWEEP_FIELDS)
        print(f"csv: {path}")
    return 0


COMMANDS = {"rits": cmd_rits, "eval": cmd_eval, "optimize": cmd_optimize, "sweep": cmd_sweep}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.command == "list":
        print("\n".join(scenario_ids()))
        return 0
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(message)s")
    log.info("kernel backend: %s", args.backend or _backend.BACKEND)
    try:
        return COMMANDS[args.command](args)
    except DimensionError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DIMENSION
    except (ConfigError, BudgetExceededError, IndexError, KeyError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except RuptureOptError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
