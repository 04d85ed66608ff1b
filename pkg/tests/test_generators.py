from fractions import Fraction as F

import pytest

from lplab.errors import BudgetExceeded, GenerationFailed
from lplab.generators import (
    MdpSpec,
    TuNetworkSpec,
    gen_klee_minty,
    gen_mdp,
    gen_random_dense,
    gen_tu_network,
    incidence_matrix,
    is_totally_unimodular,
    mdp_lp,
    network_lp,
)
from lplab import linalg
from lplab.bounds import distinct_bfs_bound
from lplab.oracle import enumerate_vertices
from lplab.serialize import dumps, lp_to_dict
from lplab.simplex import PivotRule, SolveStatus, phase_one, solve

I2 = [[1, 0], [0, 1]]


# -- MDP --------------------------------------------------------------------


def test_mdp_identity_transitions():
    lp = mdp_lp(MdpSpec(F(1, 2), I2, I2, [1, 2], [3, 4]))
    assert lp.A == ((F(1, 2), 0, F(1, 2), 0), (0, F(1, 2), 0, F(1, 2)))
    assert lp.b == (1, 1)
    assert lp.c == (1, 2, 3, 4)


@pytest.mark.parametrize("theta", [F(1, 2), F(3, 4), F(9, 10)])
def test_mdp_single_state(theta):
    lp = gen_mdp(1, theta, 0)
    assert lp.A == ((1 - theta, 1 - theta),)
    census = enumerate_vertices(lp)
    assert census.delta == census.gamma == 1 / (1 - theta)


def test_mdp_spec_rejects_bad_input():
    with pytest.raises(ValueError):
        MdpSpec(F(1), I2, I2, [0, 0], [0, 0])
    with pytest.raises(ValueError):
        MdpSpec(F(1, 2), [[1, 1], [0, 1]], I2, [0, 0], [0, 0])


@pytest.mark.parametrize("m", [1, 2, 3])
@pytest.mark.parametrize("theta", [F(1, 2), F(9, 10)])
def test_mdp_structure(m, theta):
    lp = gen_mdp(m, theta, seed=m)
    assert (lp.m, lp.n) == (m, 2 * m)
    for j in range(lp.n):
        assert lp.A[j % m][j] >= 1 - theta
        assert sum(lp.column(j)) == 1 - theta


@pytest.mark.parametrize("seed", range(6))
def test_mdp_census_properties(seed):
    m, theta = 1 + seed % 3, [F(1, 2), F(3, 4), F(9, 10)][seed % 3]
    census = enumerate_vertices(gen_mdp(m, theta, seed))
    assert census.all_nondegenerate
    assert census.delta >= 1
    assert census.gamma <= m / (1 - theta)


def test_mdp_deterministic():
    assert gen_mdp(3, F(3, 4), 11) == gen_mdp(3, F(3, 4), 11)
    assert gen_mdp(3, F(3, 4), 11) != gen_mdp(3, F(3, 4), 12)


# -- networks ---------------------------------------------------------------


def test_two_node_network():
    lp = network_lp(TuNetworkSpec(2, ((0, 1),), (1, -1), (0,)))
    assert lp.A == ((1,),) and lp.b == (1,)


def test_triangle_network():
    spec = TuNetworkSpec(3, ((0, 1), (1, 2), (2, 0)), (1, 0, -1), (1, 1, 1))
    lp = network_lp(spec)
    assert lp.A == ((1, 0, -1), (-1, 1, 0))
    assert lp.b == (1, 0)
    assert all(v in (-1, 0, 1) for row in lp.A for v in row)


def test_incidence_matrix_columns_sum_to_zero():
    M = incidence_matrix(4, [(0, 1), (2, 3), (3, 0)])
    assert all(sum(col) == 0 for col in zip(*M))


def test_network_spec_validation():
    with pytest.raises(ValueError):
        TuNetworkSpec(2, ((0, 1),), (1, 0), (0,))
    with pytest.raises(ValueError):
        TuNetworkSpec(2, ((0, 0),), (0, 0), (0,))


def test_network_generation_limits():
    with pytest.raises(GenerationFailed):
        gen_tu_network(1, 0, 0)
    with pytest.raises(GenerationFailed):
        gen_tu_network(3, 7, 0)


@pytest.mark.parametrize("seed", range(10))
def test_generated_networks_are_tu_and_integral(seed):
    nodes = 2 + seed % 4
    arcs = min(nodes * (nodes - 1), nodes - 1 + seed % 4)
    lp = gen_tu_network(nodes, arcs, seed)
    assert is_totally_unimodular(lp.A)
    assert all(v.denominator == 1 for v in lp.b)
    census = enumerate_vertices(lp)
    assert all(x.denominator == 1 for v in census.distinct_vertices for x in v.x)
    assert census.delta >= 1 and census.gamma <= sum(abs(v) for v in lp.b)


# -- TU oracle --------------------------------------------------------------


@pytest.mark.parametrize("k", [1, 2, 4])
def test_identity_is_tu(k):
    assert is_totally_unimodular(linalg.identity(k))


def test_det_two_is_not_tu():
    assert not is_totally_unimodular([[1, 1], [-1, 1]])


def test_non_unit_entry_is_not_tu():
    assert not is_totally_unimodular([[2, 0], [0, 1]])


def test_tu_budget():
    with pytest.raises(BudgetExceeded):
        is_totally_unimodular(linalg.identity(6), budget=10)


# -- Klee-Minty -------------------------------------------------------------


def test_klee_minty_one_dimension():
    lp = gen_klee_minty(1)
    assert lp.A == ((1, 1),) and lp.b == (1,) and lp.c == (-1, 0)
    res = solve(lp, [1])
    assert res.iterations == 1 and res.z == -1


def test_klee_minty_two_dimensions():
    lp = gen_klee_minty(2)
    res = solve(lp, [2, 3], PivotRule.MOST_NEGATIVE)
    census = enumerate_vertices(lp)
    assert res.distinct_bfs_count > 2
    assert res.distinct_bfs_count <= distinct_bfs_bound(2, 4, census.delta, census.gamma)


@pytest.mark.parametrize("d", [1, 2, 3, 4])
def test_klee_minty_exponential_under_dantzig(d):
    res = solve(gen_klee_minty(d), range(d, 2 * d), PivotRule.MOST_NEGATIVE)
    assert res.status is SolveStatus.OPTIMAL
    assert res.iterations == 2**d - 1


def test_klee_minty_ratio_grows():
    census = enumerate_vertices(gen_klee_minty(3))
    assert census.gamma / census.delta >= 4


# -- random dense -----------------------------------------------------------


def test_random_dense_seed_stable():
    a = dumps(lp_to_dict(gen_random_dense(3, 6, 42)))
    b = dumps(lp_to_dict(gen_random_dense(3, 6, 42)))
    assert a == b
    assert a != dumps(lp_to_dict(gen_random_dense(3, 6, 43)))


@pytest.mark.parametrize("seed", range(8))
def test_random_dense_feasible_and_bounded(seed):
    m, n = 1 + seed % 4, 5 + seed % 3
    lp = gen_random_dense(m, n, seed)
    assert linalg.rank(lp.A) == m
    assert solve(lp, phase_one(lp)).status is SolveStatus.OPTIMAL


def test_random_dense_rejects_shape():
    with pytest.raises(ValueError):
        gen_random_dense(3, 3, 0)
