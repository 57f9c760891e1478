"""Design search over moment-arm matrices maximizing the robustness score E.

``optimize`` is a generational real-valued GA (tournament selection, blend
crossover, Gaussian mutation, clamping and rounding, one elite).
``exhaustive_search`` enumerates a grid and certifies small instances.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field, replace

import numpy as np

from ruptureopt import _backend
from ruptureopt.errors import BudgetExceededError, ConfigError
from ruptureopt.scenarios import DesignProblem

TIE_TOL = 1e-9


@dataclass(frozen=True)
class GaConfig:
    population: int = 200
    generations: int = 50
    crossover_prob: float = 0.5
    mutation_prob: float = 0.2
    tournament_size: int = 3
    blend_alpha: float = 0.5
    mut_sigma: float = 0.02
    mut_indpb: float = 0.2
    g_min: float = -0.1
    g_max: float = 0.1
    round_decimals: int = 2
    seed: int = 0

    def __post_init__(self):
        for name in ("crossover_prob", "mutation_prob", "mut_indpb"):
            if not 0.0 <= getattr(self, name) <= 1.0:
                raise ConfigError(f"{name} must lie in [0, 1]")
        if not self.population >= self.tournament_size >= 1:
            raise ConfigError("need population >= tournament_size >= 1")
        if self.generations < 0:
            raise ConfigError("generations must be non-negative")
        if not self.g_min < self.g_max:
            raise ConfigError("g_min must be below g_max")
        if self.round_decimals < 0:
            raise ConfigError("round_decimals must be non-negative")
        if self.blend_alpha < 0 or self.mut_sigma < 0:
            raise ConfigError("blend_alpha and mut_sigma must be non-negative")
        if not 0 <= self.seed < 2**64:
            raise ConfigError("seed must be an unsigned 64-bit integer")

    @classmethod
    def for_problem(cls, problem: DesignProblem, **overrides) -> "GaConfig":
        return cls(g_min=problem.g_min, g_max=problem.g_max, **overrides)


@dataclass
class Individual:
    genome: np.ndarray  # flat, M * N, row-major over (muscle, joint)
    fitness: float = 0.0
    fresh: bool = False

    def design(self, joint_count: int) -> np.ndarray:
        return self.genome.reshape(-1, joint_count)


@dataclass
class GaResult:
    best: Individual
    history: list = field(default_factory=list)  # (generation, max, mean)
    evaluations: int = 0


def _repair(x, cfg: GaConfig):
    # +0.0 folds negative zeros so printed genomes are stable
    return np.round(np.clip(x, cfg.g_min, cfg.g_max), cfg.round_decimals) + 0.0


def optimize(problem: DesignProblem, cfg: GaConfig, backend=None, callback=None) -> GaResult:
    """Run the GA; identical ``cfg.seed`` gives a bit-identical result.

    Random numbers are drawn only in the selection and variation phase, so
    fitness evaluation order never perturbs the stream.
    """
    m, n = problem.muscle_count, problem.joint_count
    length = m * n
    bounds, tau = problem.bounds, problem.tau
    rng = np.random.Generator(np.random.PCG64(cfg.seed))
    evals = 0

    def fitness(genomes):
        nonlocal evals
        evals += len(genomes)
        if len(genomes) == 0:
            return np.zeros(0)
        return _backend.population_scores(genomes.reshape(-1, m, n), bounds, tau, problem.m_min, backend)

    pop = _repair(rng.uniform(cfg.g_min, cfg.g_max, (cfg.population, length)), cfg)
    fit = fitness(pop)
    history = [(0, float(fit.max()), float(fit.mean()))]
    if callback:
        callback(*history[-1])

    half = cfg.population // 2
    for gen in range(1, cfg.generations + 1):
        elite = int(np.argmax(fit))
        elite_genome, elite_fit = pop[elite].copy(), fit[elite]

        aspirants = rng.integers(0, cfg.population, (cfg.population, cfg.tournament_size))
        winners = aspirants[np.arange(cfg.population), np.argmax(fit[aspirants], axis=1)]
        off = pop[winners].copy()
        off_fit = fit[winners].copy()
        stale = np.zeros(cfg.population, dtype=bool)

        do_cx = rng.random(half) < cfg.crossover_prob
        gamma = (1.0 + 2.0 * cfg.blend_alpha) * rng.random((half, length)) - cfg.blend_alpha
        for k in np.flatnonzero(do_cx):
            a, b = off[2 * k].copy(), off[2 * k + 1].copy()
            g = gamma[k]
            off[2 * k] = (1.0 - g) * a + g * b
            off[2 * k + 1] = g * a + (1.0 - g) * b
            stale[2 * k] = stale[2 * k + 1] = True

        do_mut = rng.random(cfg.population) < cfg.mutation_prob
        genes = rng.random((cfg.population, length)) < cfg.mut_indpb
        noise = rng.normal(0.0, cfg.mut_sigma, (cfg.population, length))
        off[do_mut] += np.where(genes[do_mut], noise[do_mut], 0.0)
        stale |= do_mut & genes.any(axis=1)

        off = _repair(off, cfg)
        off_fit[stale] = fitness(off[stale])

        worst = int(np.argmin(off_fit))
        off[worst], off_fit[worst] = elite_genome, elite_fit
        pop, fit = off, off_fit
        history.append((gen, float(fit.max()), float(fit.mean())))
        if callback:
            callback(*history[-1])

    best = int(np.argmax(fit))
    return GaResult(Individual(pop[best].copy(), float(fit[best]), True), history, evals)


@dataclass(frozen=True)
class ExhaustiveResult:
    genome: np.ndarray  # (M, N)
    e: float
    count: int


def grid_values(g_min: float, g_max: float, step: float, decimals: int = 10) -> np.ndarray:
    k = int(round((g_max - g_min) / step))
    if k < 1 or not math.isclose(g_min + k * step, g_max, abs_tol=1e-9):
        raise ConfigError(f"step {step} does not tile [{g_min}, {g_max}]")
    return np.round(g_min + step * np.arange(k + 1), decimals) + 0.0


def enumeration_count(n_rows: int, m: int, symmetry_reduction: bool) -> int:
    return math.comb(n_rows + m - 1, m) if symmetry_reduction else n_rows**m


def exhaustive_search(problem: DesignProblem, grid_step: float, symmetry_reduction: bool = True,
                      budget: int = 10**8, backend=None, batch: int = 8192) -> ExhaustiveResult:
    """Best genome on the grid, ties broken towards the lexicographically smallest.

    With ``symmetry_reduction`` only designs whose muscle rows are sorted are
    visited; that representative is also the smallest of its permutations.
    """
    m, n = problem.muscle_count, problem.joint_count
    rows = np.array(list(itertools.product(grid_values(problem.g_min, problem.g_max, grid_step), repeat=n)))
    count = enumeration_count(len(rows), m, symmetry_reduction)
    if count > budget:
        raise BudgetExceededError(count, budget)
    if symmetry_reduction:
        it = itertools.combinations_with_replacement(range(len(rows)), m)
    else:
        it = itertools.product(range(len(rows)), repeat=m)

    bounds, tau = problem.bounds, problem.tau
    kept = []  # (start, index array, scores) of batches that may hold the optimum
    running = -np.inf
    start = 0
    while True:
        chunk = list(itertools.islice(it, batch))
        if not chunk:
            break
        idx = np.array(chunk)
        scores = _backend.population_scores(rows[idx], bounds, tau, problem.m_min, backend)
        top = scores.max()
        if top >= running - TIE_TOL:
            kept.append((start, idx, scores))
            if top > running:
                running = top
                kept = [b for b in kept if b[2].max() >= running - TIE_TOL]
        start += len(chunk)

    for _, idx, scores in kept:
        hits = np.flatnonzero(scores >= running - TIE_TOL)
        if hits.size:
            j = hits[0]
            return ExhaustiveResult(rows[idx[j]].copy(), float(scores[j]), count)
    raise AssertionError("empty enumeration")


def with_seed(cfg: GaConfig, seed: int) -> GaConfig:
    return replace(cfg, seed=seed)
