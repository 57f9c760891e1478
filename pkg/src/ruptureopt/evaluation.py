"""Robustness of a design against any single muscle rupture."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ruptureopt import _backend
from ruptureopt.torque_space import TensionBounds, as_moment_arms

# r_i above this counts as "can still exert torque in every direction"
POSITIVE_TOL = 1e-9


@dataclass(frozen=True)
class RobustnessEval:
    r: np.ndarray  # r[0] intact, r[i] muscle i ruptured
    e_value: float
    e_count: int
    e: float
    m_min: int

    @property
    def no_solution(self) -> bool:
        return self.e == 0.0


def score(r, m_min: int) -> RobustnessEval:
    """Combine per-scenario radii into ``E``; gated on ``m_min + 1`` positive radii."""
    r = np.asarray(r, dtype=float)
    e_value = float(r.sum())
    e_count = int(np.count_nonzero(r > POSITIVE_TOL))
    e = e_value if e_count >= m_min + 1 else 0.0
    return RobustnessEval(r, e_value, e_count, e, m_min)


def evaluate(G, bounds: TensionBounds, tau_g, m_min: int, backend=None) -> RobustnessEval:
    G = as_moment_arms(G)
    if not 0 <= m_min <= G.shape[0]:
        raise ValueError(f"m_min must lie in 0..{G.shape[0]}, got {m_min}")
    return score(_backend.rupture_radii(G, bounds, tau_g, backend), m_min)
