"""Radius of the ball around the required torque that fits in the torque polytope."""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Optional

import numpy as np

from ruptureopt.geometry import signed_distance
from ruptureopt.torque_space import (
    TensionBounds,
    as_moment_arms,
    build_torque_polytope,
    support_values,
)

# d1 * d2 below -INCLUSION_TOL puts the required torque outside
INCLUSION_TOL = 1e-9


@dataclass(frozen=True)
class RitsResult:
    radius: float
    included: bool
    limiting_facet: Optional[int] = None
    degenerate: bool = False


def calc_rits(G, bounds: TensionBounds, tau_g) -> RitsResult:
    """Inscribed radius around ``tau_g`` using the hull's facets.

    The required torque is tested against every facet on the same side as
    the vertex centroid; a point on the boundary is included with radius 0.
    A polytope that is not full-dimensional gives radius 0.
    """
    G = as_moment_arms(G)
    tau_g = np.atleast_1d(np.asarray(tau_g, dtype=float))
    poly = build_torque_polytope(G, bounds)
    if not poly.full_dimensional:
        return RitsResult(0.0, False, None, True)
    c = poly.centroid
    included = True
    radius = np.inf
    limiting = None
    for k, plane in enumerate(poly.facets):
        d1 = signed_distance(tau_g, plane)
        d2 = signed_distance(c, plane)
        if d1 * d2 < -INCLUSION_TOL:
            included = False
        if abs(d1) < radius:
            radius, limiting = abs(d1), k
    if not included:
        return RitsResult(0.0, False, None, False)
    return RitsResult(float(radius), True, limiting, False)


def zonotope_facet_normals(G, bounds: TensionBounds) -> np.ndarray:
    """Candidate facet normals of the torque zonotope, derived from the generators alone."""
    G = as_moment_arms(G)
    n = G.shape[1]
    gens = G * (bounds.f_max - bounds.f_min)[:, None]
    gens = gens[np.linalg.norm(gens, axis=1) > 1e-12]
    if n == 1:
        return np.array([[1.0], [-1.0]])
    out = []
    if n == 2:
        for w in gens:
            out.append(np.array([-w[1], w[0]]))
    else:
        for a, b in combinations(gens, n - 1):
            out.append(np.cross(a, b))
    out = [v / np.linalg.norm(v) for v in out if np.linalg.norm(v) > 1e-12]
    if not out:
        return np.zeros((0, n))
    out = np.array(out)
    return np.vstack([out, -out])


def rits_oracle(G, bounds: TensionBounds, tau_g, n_directions: int = 256, seed: int = 0) -> float:
    """Support-function estimate of the inscribed radius.

    Takes the minimum of ``h(u) - u . tau_g`` over random unit directions
    plus the generator-derived facet normals, which makes it exact.
    """
    if n_directions < 64:
        raise ValueError("n_directions must be at least 64")
    G = as_moment_arms(G)
    n = G.shape[1]
    tau_g = np.atleast_1d(np.asarray(tau_g, dtype=float))
    gens = G * (bounds.f_max - bounds.f_min)[:, None]
    if np.linalg.matrix_rank(gens, tol=1e-9) < n:
        return 0.0
    rng = np.random.default_rng(seed)
    dirs = rng.standard_normal((n_directions, n))
    dirs /= np.linalg.norm(dirs, axis=1, keepdims=True)
    dirs = np.vstack([dirs, zonotope_facet_normals(G, bounds)])
    gaps = support_values(G, bounds, dirs) - dirs @ tau_g
    if np.any(gaps < -1e-9):
        return 0.0
    return float(max(gaps.min(), 0.0))
