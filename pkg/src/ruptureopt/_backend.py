"""Kernel selection: compiled extension when importable, else pure Python.

Set ``RUPTUREOPT_BACKEND=python`` to force the fallback.
"""
import os

import numpy as np

from ruptureopt import _pykernels

try:
    if os.environ.get("RUPTUREOPT_BACKEND", "").lower() == "python":
        raise ImportError("compiled kernels disabled by RUPTUREOPT_BACKEND")
    from ruptureopt import _ckernels
except ImportError:
    _ckernels = None

BACKEND = "cython" if _ckernels is not None else "python"
AVAILABLE = ("python",) + (("cython",) if _ckernels is not None else ())


def kernels_for(n_joints, backend=None):
    name = backend or BACKEND
    if name not in AVAILABLE:
        raise ValueError(f"backend {name!r} not available (have {AVAILABLE})")
    if name == "cython" and n_joints <= 2:
        return _ckernels
    return _pykernels


def rupture_radii(G, bounds, tau_g, backend=None):
    G = np.asarray(G, dtype=float)
    k = kernels_for(G.shape[1], backend)
    return k.rupture_radii(G, bounds.f_min, bounds.f_max, tau_g)


def population_scores(genomes, bounds, tau_g, m_min, backend=None):
    genomes = np.asarray(genomes, dtype=float)
    k = kernels_for(genomes.shape[2], backend)
    return k.population_scores(genomes, bounds.f_min, bounds.f_max, tau_g, m_min)
