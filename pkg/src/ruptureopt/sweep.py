"""Table-style sweeps: GA per scenario cell, certified by the grid oracle when affordable."""
from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, replace
from typing import Optional

from ruptureopt.evaluation import evaluate
from ruptureopt.errors import ConfigError
from ruptureopt.optimizer import GaConfig, enumeration_count, exhaustive_search, grid_values, optimize
from ruptureopt.report import fingerprint, fmt, format_design
from ruptureopt.scenarios import builtin_scenarios

GRIDS = ("table1", "table2")
SWEEP_FIELDS = [
    "scenario", "joint_count", "muscle_count", "m_min", "tau_g", "design", "fingerprint",
    "radii", "e", "e_count", "no_solution", "oracle_step", "oracle_e", "oracle_fingerprint", "certified",
]


def oracle_step(problem) -> float:
    if problem.joint_count == 1 and problem.muscle_count <= 4:
        return 0.01
    return 0.05


@dataclass(frozen=True)
class SweepRow:
    problem: object
    design: object
    evaluation: object
    oracle_step: Optional[float] = None
    oracle_design: object = None
    oracle_e: Optional[float] = None

    @property
    def certified(self) -> Optional[bool]:
        if self.oracle_e is None:
            return None
        return self.evaluation.e >= 0.99 * self.oracle_e - 1e-9

    def as_dict(self) -> dict:
        ev = self.evaluation
        return {
            "scenario": self.problem.name,
            "joint_count": self.problem.joint_count,
            "muscle_count": self.problem.muscle_count,
            "m_min": self.problem.m_min,
            "tau_g": " ".join(f"{t:g}" for t in self.problem.tau_g),
            "design": format_design(self.design),
            "fingerprint": fingerprint(self.design),
            "radii": " ".join(fmt(r) for r in ev.r),
            "e": fmt(ev.e),
            "e_count": ev.e_count,
            "no_solution": "yes" if ev.e == 0 else "no",
            "oracle_step": "" if self.oracle_step is None else f"{self.oracle_step:g}",
            "oracle_e": "" if self.oracle_e is None else fmt(self.oracle_e),
            "oracle_fingerprint": "" if self.oracle_design is None else fingerprint(self.oracle_design),
            "certified": {None: "", True: "yes", False: "no"}[self.certified],
        }


def thread_count() -> int:
    raw = os.environ.get("RUPTUREOPT_THREADS", "0")
    try:
        n = int(raw)
    except ValueError as exc:
        raise ConfigError(f"RUPTUREOPT_THREADS must be an integer, got {raw!r}") from exc
    return n if n > 0 else (os.cpu_count() or 1)


def grid_problems(grid: str) -> list:
    if grid not in GRIDS:
        raise ConfigError(f"unknown grid {grid!r}; choose from {GRIDS}")
    return [p for p in builtin_scenarios() if p.name.startswith(grid + "/")]


def sweep_cell(problem, ga: GaConfig, backend=None, oracle_budget: int = 200_000) -> SweepRow:
    cfg = replace(ga, g_min=problem.g_min, g_max=problem.g_max)
    res = optimize(problem, cfg, backend=backend)
    G = res.best.design(problem.joint_count)
    ev = evaluate(G, problem.bounds, problem.tau, problem.m_min, backend=backend)
    step = oracle_step(problem)
    n_rows = len(grid_values(problem.g_min, problem.g_max, step)) ** problem.joint_count
    if enumeration_count(n_rows, problem.muscle_count, True) > oracle_budget:
        return SweepRow(problem, G, ev)
    ex = exhaustive_search(problem, step, backend=backend)
    return SweepRow(problem, G, ev, step, ex.genome, ex.e)


def run_sweep(grid: str, ga: Optional[GaConfig] = None, backend=None,
              threads: Optional[int] = None, oracle_budget: int = 200_000) -> list:
    """One row per scenario cell, in grid order regardless of thread count."""
    problems = grid_problems(grid)
    ga = ga or GaConfig()
    threads = threads or thread_count()
    if threads == 1:
        return [sweep_cell(p, ga, backend, oracle_budget) for p in problems]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(lambda p: sweep_cell(p, ga, backend, oracle_budget), problems))
