import os
import subprocess
import sys

import numpy as np
import pytest

from ruptureopt import _backend, _pykernels
from ruptureopt.errors import DimensionError
from ruptureopt.torque_space import TensionBounds

compiled = pytest.mark.skipif(_backend._ckernels is None, reason="compiled kernels not built")


def designs(count, seed):
    rng = np.random.default_rng(seed)
    for _ in range(count):
        n = int(rng.integers(1, 3))
        m = int(rng.integers(1, 8))
        G = np.round(rng.uniform(-0.1, 0.1, (m, n)), 2)
        if rng.random() < 0.2:
            G[rng.integers(m)] = 0.0
        lo = np.round(rng.uniform(0, 30, m))
        hi = lo + np.round(rng.uniform(0, 200, m))
        tau = np.round(rng.uniform(-15, 15, n), 1)
        yield G, lo, hi, tau


@compiled
def test_compiled_matches_python_radius_and_facet():
    ck = _backend._ckernels
    for G, lo, hi, tau in designs(500, 1):
        r_py = _pykernels.rits_radius(G, lo, hi, tau)
        r_c = ck.rits_radius(G, lo, hi, tau)
        assert r_c[0] == pytest.approx(r_py[0], abs=1e-9)
        assert r_c[1:] == r_py[1:]


@compiled
def test_compiled_matches_python_rupture_radii():
    ck = _backend._ckernels
    for G, lo, hi, tau in designs(300, 2):
        assert np.allclose(ck.rupture_radii(G, lo, hi, tau), _pykernels.rupture_radii(G, lo, hi, tau), atol=1e-9)


@compiled
def test_compiled_matches_python_population_scores():
    rng = np.random.default_rng(3)
    for n, m in ((1, 4), (2, 4), (2, 5)):
        genomes = np.round(rng.uniform(-0.1, 0.1, (60, m, n)), 2)
        bounds = TensionBounds.uniform(m)
        tau = np.zeros(n)
        for m_min in (m - 1, m):
            a = _backend.population_scores(genomes, bounds, tau, m_min, "python")
            b = _backend.population_scores(genomes, bounds, tau, m_min, "cython")
            assert np.allclose(a, b, atol=1e-9)


@compiled
def test_compiled_rejects_unsupported_shapes():
    ck = _backend._ckernels
    with pytest.raises(DimensionError):
        ck.rupture_radii(np.zeros((3, 3)), 0.0, 200.0, [0, 0, 0])
    with pytest.raises(DimensionError):
        ck.rupture_radii(np.zeros((21, 1)), 0.0, 200.0, [0])


def test_three_joints_route_to_python(backend):
    G = np.array([[0.1, 0, 0], [-0.1, 0, 0], [0, 0.1, 0], [0, -0.1, 0], [0, 0, 0.1], [0, 0, -0.1]])
    r = _backend.rupture_radii(G, TensionBounds.uniform(6), [0, 0, 0], backend)
    assert r[0] == pytest.approx(20.0)
    assert np.all(r[1:] == 0)  # each rupture leaves the origin on a face


def test_unknown_backend():
    with pytest.raises(ValueError):
        _backend.kernels_for(1, "fortran")


def test_env_forces_python_backend():
    env = dict(os.environ, RUPTUREOPT_BACKEND="python")
    out = subprocess.run([sys.executable, "-c", "from ruptureopt import _backend; print(_backend.BACKEND)"],
                         env=env, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "python"
