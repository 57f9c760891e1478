"""Pure-Python kernels. Same API as the compiled ``_ckernels`` module."""
import numpy as np

from ruptureopt.rits import calc_rits
from ruptureopt.torque_space import TensionBounds, rupture

POSITIVE_TOL = 1e-9


def rits_radius(G, f_min, f_max, tau_g):
    res = calc_rits(G, TensionBounds(f_min, f_max), tau_g)
    return res.radius, res.included, -1 if res.limiting_facet is None else res.limiting_facet, res.degenerate


def rupture_radii(G, f_min, f_max, tau_g):
    G = np.asarray(G, dtype=float)
    bounds = TensionBounds(f_min, f_max)
    out = np.empty(G.shape[0] + 1)
    out[0] = calc_rits(G, bounds, tau_g).radius
    for i in range(1, G.shape[0] + 1):
        out[i] = calc_rits(rupture(G, i), bounds, tau_g).radius
    return out


def population_scores(genomes, f_min, f_max, tau_g, m_min):
    genomes = np.asarray(genomes, dtype=float)
    out = np.empty(len(genomes))
    for k, G in enumerate(genomes):
        r = rupture_radii(G, f_min, f_max, tau_g)
        out[k] = r.sum() if np.count_nonzero(r > POSITIVE_TOL) >= m_min + 1 else 0.0
    return out
