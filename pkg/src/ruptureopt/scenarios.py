"""Built-in problems and reference designs.

Designs are written here exactly as tables print them, as ``10 G^T`` (one
row per joint), and converted to ``G`` in meters by a single division.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ruptureopt.errors import ConfigError
from ruptureopt.torque_space import TensionBounds


@dataclass(frozen=True)
class DesignProblem:
    name: str
    joint_count: int
    muscle_count: int
    m_min: int
    tau_g: tuple
    f_min: float = 0.0
    f_max: float = 200.0
    g_min: float = -0.1
    g_max: float = 0.1

    def __post_init__(self):
        if len(self.tau_g) != self.joint_count:
            raise ConfigError(f"{self.name}: tau_g has {len(self.tau_g)} entries for {self.joint_count} joints")
        if not 0 <= self.m_min <= self.muscle_count:
            raise ConfigError(f"{self.name}: m_min must lie in 0..{self.muscle_count}")
        if not self.g_min < self.g_max:
            raise ConfigError(f"{self.name}: g_min must be below g_max")
        if not 0 <= self.f_min <= self.f_max:
            raise ConfigError(f"{self.name}: need 0 <= f_min <= f_max")
        object.__setattr__(self, "tau_g", tuple(float(t) for t in self.tau_g))

    @property
    def bounds(self) -> TensionBounds:
        return TensionBounds.uniform(self.muscle_count, self.f_min, self.f_max)

    @property
    def tau(self) -> np.ndarray:
        return np.array(self.tau_g)


@dataclass(frozen=True)
class NamedDesign:
    label: str
    printed: tuple  # 10 G^T, rows = joints
    source: str
    problem: DesignProblem

    @property
    def G(self) -> np.ndarray:
        G = np.array(self.printed, dtype=float).T / 10.0
        G.setflags(write=False)
        return G


def _tg_tag(tau_g):
    return "tg" + "".join(f"{t:g}" for t in tau_g)


def _table1():
    out = []
    for m in (3, 4, 5, 6):
        for tg in (0.0, -5.0):
            out.append(DesignProblem(f"table1/m{m}/{_tg_tag((tg,))}", 1, m, m, (tg,)))
    return out


def _table2():
    out = []
    for m in (4, 5):
        for tg in ((0.0, 0.0), (-5.0, 0.0)):
            for mmin in (m, m - 1):
                out.append(DesignProblem(f"table2/m{m}/mmin{mmin}/{_tg_tag(tg)}", 2, m, mmin, tg))
    return out


def builtin_scenarios() -> list:
    """The 1-DOF and 2-DOF sweep grids (8 problems each)."""
    return _table1() + _table2()


_TABLE1 = {
    "table1/m3/tg-5": ((-1, 1, 1),),
    "table1/m4/tg-5": ((-1, 1, 1, 1),),
    "table1/m4/tg0": ((-1, -1, 1, 1),),
    "table1/m5/tg-5": ((-1, -1, 1, 1, 1),),
    "table1/m5/tg0": ((-1, -1, 1, 1, 1),),
    "table1/m6/tg-5": ((-1, -1, -1, 1, 1, 1),),
    "table1/m6/tg0": ((-1, -1, -1, 1, 1, 1),),
}

_TABLE2 = {
    "table2/m4/mmin4/tg-50": ((-0.5, -0.5, 1, 1), (-1, 1, -0.2, 0.2)),
    "table2/m4/mmin3/tg-50": ((-1, 0.7, 0.8, 0.8), (0, 1, -1, 1)),
    "table2/m5/mmin5/tg-50": ((-1, 0.2, 0.6, 1, 1), (-0.4, 1, 1, -1, -0.9)),
    "table2/m5/mmin5/tg00": ((-1, -0.8, 0, 0.8, 1), (-0.5, 1, -1, 1, 0.5)),
    "table2/m5/mmin4/tg-50": ((-1, -1, 0.7, 0.8, 0.9), (0, 0.1, -1, 1, -1)),
    "table2/m5/mmin4/tg00": ((-1, -1, 0.5, 1, 1), (-0.4, 0.4, -1, -1, 1)),
}

_TABLE3 = {
    "table3/original": (4, ((-0.47, -0.26, 0.43, 0.42), (-0.17, 0.20, -0.15, 0.24))),
    "table3/mmin4": (4, ((-0.18, -0.29, 0.61, 0.43), (-0.10, 0.20, -0.043, 0.036))),
    "table3/mmin3": (3, ((-0.47, 0.50, 0.66, 0.73), (0.047, -0.19, -0.30, 0.18))),
}


def sign_maximized(printed) -> tuple:
    """Same signs, every moment arm at full magnitude (zeros stay zero)."""
    return tuple(tuple(float(np.sign(v)) for v in row) for row in printed)


def builtin_designs() -> list:
    problems = {p.name: p for p in builtin_scenarios()}
    out = [NamedDesign(k, v, "1-DOF optimum", problems[k]) for k, v in _TABLE1.items()]
    out += [NamedDesign(k, v, "2-DOF optimum", problems[k]) for k, v in _TABLE2.items()]
    a = _TABLE2["table2/m4/mmin4/tg-50"]
    fig5 = DesignProblem("fig5", 2, 4, 4, (-5.0, 0.0))
    out.append(NamedDesign("fig5/A", a, "2-DOF optimum, M=4, m_min=4, tau_g=(-5,0)", fig5))
    out.append(NamedDesign("fig5/A-prime", sign_maximized(a), "design A with full-magnitude moment arms", fig5))
    for k, (mmin, v) in _TABLE3.items():
        prob = DesignProblem(k, 2, 4, mmin, (-5.0, 0.0))
        out.append(NamedDesign(k, v, "learned elbow Jacobian", prob))
    return out


def get_problem(name: str) -> DesignProblem:
    for p in builtin_scenarios():
        if p.name == name:
            return p
    for d in builtin_designs():
        if d.label == name:
            return d.problem
    raise ConfigError(f"unknown scenario {name!r}")


def get_design(name: str):
    """Named design for ``name``, or None when only a problem exists."""
    for d in builtin_designs():
        if d.label == name:
            return d
    return None


def scenario_ids() -> list:
    ids = [p.name for p in builtin_scenarios()]
    return ids + [d.label for d in builtin_designs() if d.label not in ids]
