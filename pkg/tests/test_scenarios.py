import numpy as np
import pytest

from ruptureopt.errors import ConfigError
from ruptureopt.evaluation import evaluate
from ruptureopt.report import format_design, parse_design
from ruptureopt.rits import calc_rits
from ruptureopt.scenarios import (
    DesignProblem,
    builtin_designs,
    builtin_scenarios,
    get_design,
    get_problem,
    scenario_ids,
)
from ruptureopt.torque_space import rupture


def radii(label):
    d = get_design(label)
    return evaluate(d.G, d.problem.bounds, d.problem.tau, d.problem.m_min).r


def test_grid_counts():
    probs = builtin_scenarios()
    assert sum(p.joint_count == 1 for p in probs) == 8
    assert sum(p.joint_count == 2 for p in probs) == 8
    assert all(p.f_max == 200 and p.f_min == 0 for p in probs)
    assert all((p.g_min, p.g_max) == (-0.1, 0.1) for p in probs)
    assert len(set(scenario_ids())) == len(scenario_ids())


def test_table2_grid_m_min():
    for p in builtin_scenarios():
        if p.joint_count == 2:
            assert p.m_min in (p.muscle_count, p.muscle_count - 1)
        else:
            assert p.m_min == p.muscle_count


def test_design_a_values():
    G = get_design("fig5/A").G
    assert np.allclose(G.T, [[-0.05, -0.05, 0.1, 0.1], [-0.1, 0.1, -0.02, 0.02]], atol=1e-15)
    assert get_design("fig5/A").problem.tau_g == (-5.0, 0.0)


def test_elbow_original_row():
    G = get_design("table3/original").G
    assert np.allclose(G.T[0], [-0.047, -0.026, 0.043, 0.042], atol=1e-15)


def test_a_prime_rule():
    a, ap = get_design("fig5/A").G, get_design("fig5/A-prime").G
    assert np.array_equal(ap, np.sign(a) * 0.1)


def test_printed_round_trip():
    for d in builtin_designs():
        text = format_design(d.G)
        assert np.allclose(parse_design(text), d.G, atol=1e-15)
        assert np.allclose(d.G.T * 10, d.printed, atol=1e-12)


def test_designs_are_immutable():
    G = get_design("fig5/A").G
    with pytest.raises(ValueError):
        G[0, 0] = 1.0
    with pytest.raises(AttributeError):
        get_problem("table1/m4/tg0").m_min = 3


def test_unknown_scenario():
    with pytest.raises(ConfigError):
        get_problem("table9/m1")
    assert get_design("table1/m3/tg0") is None


def test_problem_validation():
    with pytest.raises(ConfigError):
        DesignProblem("x", 2, 4, 4, (0.0,))
    with pytest.raises(ConfigError):
        DesignProblem("x", 1, 4, 5, (0.0,))


def test_design_a_survives_every_rupture():
    assert np.all(radii("fig5/A") > 1e-9)


def test_design_a_prime_loses_three_and_four():
    r = radii("fig5/A-prime")
    assert np.flatnonzero(r[1:] <= 1e-9).tolist() == [2, 3]


def test_m4_mmin3_design_has_one_fatal_rupture():
    r = radii("table2/m4/mmin3/tg-50")
    assert np.count_nonzero(r[1:] <= 1e-9) == 1


def test_elbow_patterns():
    assert np.flatnonzero(radii("table3/original")[1:] <= 1e-9).tolist() == [2, 3]
    assert np.all(radii("table3/mmin4") > 1e-9)


@pytest.mark.xfail(strict=True, reason="rupture of muscle 3 leaves tau_g exactly on a facet; see decisions ledger")
def test_m5_mmin5_zero_torque_design_all_positive():
    assert np.all(radii("table2/m5/mmin5/tg00") > 1e-9)


def test_m5_mmin5_zero_torque_design_stays_included():
    d = get_design("table2/m5/mmin5/tg00")
    r = radii("table2/m5/mmin5/tg00")
    assert r[3] <= 1e-9 and np.count_nonzero(r > 1e-9) == 5
    assert calc_rits(rupture(d.G, 3), d.problem.bounds, d.problem.tau).included
