"""Available joint-torque polytope of a tendon-driven joint.

Muscle tensions ``f`` live in a box and map to joint torques through
``tau = -G.T @ f`` where ``G`` is the (M muscles x N joints) moment-arm
matrix in meters.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ruptureopt.errors import BoundsError, DimensionError
from ruptureopt.geometry import ConvexPolytope, convex_hull, hypercube_vertices


@dataclass(frozen=True)
class TensionBounds:
    """Per-muscle tension limits in newtons. Muscles only pull."""

    f_min: np.ndarray
    f_max: np.ndarray

    def __post_init__(self):
        lo = np.atleast_1d(np.asarray(self.f_min, dtype=float))
        hi = np.atleast_1d(np.asarray(self.f_max, dtype=float))
        if lo.shape != hi.shape or lo.ndim != 1:
            raise BoundsError("f_min and f_max must be vectors of equal length")
        if np.any(lo < 0) or np.any(lo > hi):
            raise BoundsError("tension bounds must satisfy 0 <= f_min <= f_max")
        object.__setattr__(self, "f_min", lo)
        object.__setattr__(self, "f_max", hi)

    @classmethod
    def uniform(cls, m: int, f_min: float = 0.0, f_max: float = 200.0) -> "TensionBounds":
        return cls(np.full(m, float(f_min)), np.full(m, float(f_max)))

    @property
    def muscle_count(self) -> int:
        return self.f_min.size


def as_moment_arms(G, g_min=None, g_max=None) -> np.ndarray:
    """Validate a moment-arm matrix and return it as a float (M, N) array.

    A 1-D input is read as a single-joint design (one entry per muscle).
    """
    arr = np.asarray(G, dtype=float)
    if arr.ndim == 1:
        arr = arr[:, None]
    if arr.ndim != 2 or arr.shape[0] < 1 or arr.shape[1] < 1:
        raise DimensionError(f"moment-arm matrix must be M x N, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise ValueError("moment arms must be finite")
    if g_min is not None and np.any(arr < g_min - 1e-12):
        raise BoundsError(f"moment arm below {g_min}")
    if g_max is not None and np.any(arr > g_max + 1e-12):
        raise BoundsError(f"moment arm above {g_max}")
    return arr


def _check(G, bounds):
    G = as_moment_arms(G)
    if bounds.muscle_count != G.shape[0]:
        raise DimensionError(
            f"{bounds.muscle_count} tension bounds for {G.shape[0]} muscles"
        )
    return G


def torque_points(G, bounds: TensionBounds) -> np.ndarray:
    """Images ``-G.T @ v`` of every tension-box corner, one row per corner."""
    G = _check(G, bounds)
    return -hypercube_vertices(bounds.f_min, bounds.f_max) @ G


def build_torque_polytope(G, bounds: TensionBounds) -> ConvexPolytope:
    """Convex hull of the projected tension-box corners (a zonotope)."""
    G = _check(G, bounds)
    if G.shape[1] > 3:
        raise DimensionError(f"torque polytopes support at most 3 joints, got {G.shape[1]}")
    return convex_hull(torque_points(G, bounds), G.shape[1])


def zonotope_center(G, bounds: TensionBounds) -> np.ndarray:
    G = _check(G, bounds)
    return -G.T @ ((bounds.f_min + bounds.f_max) / 2.0)


def rupture(G, i: int) -> np.ndarray:
    """Copy of ``G`` with muscle ``i`` (1-based) carrying no moment arm."""
    G = as_moment_arms(G)
    if not 1 <= i <= G.shape[0]:
        raise IndexError(f"muscle index {i} outside 1..{G.shape[0]}")
    out = G.copy()
    out[i - 1] = 0.0
    return out


def support_function(G, bounds: TensionBounds, u) -> float:
    """Closed-form ``max_{f in F} u . (-G.T f)``, independent of any hull."""
    return float(support_values(G, bounds, np.atleast_1d(np.asarray(u, dtype=float))[None, :])[0])


def support_values(G, bounds: TensionBounds, directions) -> np.ndarray:
    """``support_function`` for each row of ``directions``."""
    G = _check(G, bounds)
    w = -G @ np.asarray(directions, dtype=float).T  # (M, D)
    return bounds.f_max @ np.maximum(w, 0.0) + bounds.f_min @ np.minimum(w, 0.0)
