import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gen import connected_hypergraphs, multigraphs, random_connected
from oracles import dense_tensor_apply, graph_rho

from hyperspec.errors import BudgetError, ContractError
from hyperspec.families import generate
from hyperspec.hypergraph import UniformHypergraph
from hyperspec.multigraph import kth_power, power_rho
from hyperspec.tensor import apply, residual, spectral_radius

EDGE3 = UniformHypergraph(3, 3, ((0, 1, 2),))


def test_apply_single_edge():
    assert np.allclose(apply(EDGE3, [1, 1, 1]), [1, 1, 1])
    assert np.allclose(apply(EDGE3, [1, 2, 3]), [6, 3, 2])


def test_apply_u2_00():
    U = generate("U2:k=3,a=0,b=0")
    assert np.allclose(apply(U, np.ones(U.n)), [2, 2, 1, 1])


def test_apply_rejects_bad_vectors():
    with pytest.raises(ContractError):
        apply(EDGE3, [1, 1])
    with pytest.raises(ContractError):
        apply(EDGE3, [1, -1, 1])
    with pytest.raises(ContractError):
        apply(EDGE3, [1, np.nan, 1])


@settings(max_examples=60)
@given(connected_hypergraphs(k_values=(2, 3, 4), m_max=4), st.integers(0, 2**32 - 1))
def test_apply_matches_dense_tensor(H, seed):
    if H.n > 9:
        return
    x = np.random.default_rng(seed).random(H.n) + 0.1
    assert np.allclose(apply(H, x), dense_tensor_apply(H.k, H.n, H.edges, x))


@settings(max_examples=60)
@given(connected_hypergraphs(), st.integers(0, 2**32 - 1), st.floats(0.1, 10))
def test_apply_scale_covariance_and_monotonicity(H, seed, c):
    rng = np.random.default_rng(seed)
    x = rng.random(H.n)
    assert np.allclose(apply(H, c * x), c ** (H.k - 1) * apply(H, x))
    bigger = x + rng.random(H.n)
    assert np.all(apply(H, x) <= apply(H, bigger) + 1e-12)


@pytest.mark.parametrize("k", [2, 3, 4, 5, 7])
def test_single_edge_radius_is_one(k):
    est = spectral_radius(UniformHypergraph(k, k, (tuple(range(k)),)))
    assert abs(est.rho - 1) < 1e-10
    assert np.allclose(est.perron, 1)


def test_u2_60_anchor():
    est = spectral_radius(generate("U2:k=3,a=6,b=0"))
    assert abs(est.rho - 10 ** (1 / 3)) < 1e-6
    assert residual(generate("U2:k=3,a=6,b=0"), est.rho, est.perron) <= 1e-8


def test_star_power_supertree():
    assert abs(spectral_radius(generate("star_power:k=3,m=7")).rho - 7 ** (1 / 3)) < 1e-6


def test_disconnected_is_refused():
    with pytest.raises(ContractError, match="not connected"):
        spectral_radius(UniformHypergraph(3, 6, ((0, 1, 2), (3, 4, 5))))


def test_budget_error_carries_bracket():
    with pytest.raises(BudgetError) as exc:
        spectral_radius(generate("U2:k=3,a=6,b=0"), max_iter=3)
    lo, hi = exc.value.bracket
    assert lo < 10 ** (1 / 3) < hi


def test_residual_examples():
    assert residual(EDGE3, 1.0, [1, 1, 1]) == 0
    assert residual(EDGE3, 1.0, [1, 1, 1.001]) > 0
    with pytest.raises(ContractError):
        residual(EDGE3, 1.0, [1, 0, 1])


@settings(max_examples=40)
@given(connected_hypergraphs(k_values=(2, 3, 4), m_max=7))
def test_estimate_invariants(H):
    est = spectral_radius(H)
    assert est.lower_bound <= est.rho <= est.upper_bound
    assert est.width <= est.tol
    assert np.all(est.perron > 0) and est.perron.max() == 1.0
    assert est.residual <= est.tol
    assert abs(residual(H, est.rho, est.perron) - est.residual) < 1e-15


@settings(max_examples=30)
@given(connected_hypergraphs(k_values=(3, 4), m_max=6))
def test_removing_an_edge_never_increases_radius(H):
    rho = spectral_radius(H).rho
    for i in range(H.m):
        sub = H.edge_subgraph([j for j in range(H.m) if j != i])
        if sub.m and sub.is_connected():
            assert spectral_radius(sub).rho <= rho + 1e-9


@settings(max_examples=40)
@given(multigraphs(n_max=6))
def test_power_hypergraph_agreement(G):
    for k in (3, 4, 5):
        assert abs(spectral_radius(kth_power(G, k)).rho - power_rho(G, k)) < 1e-6


@settings(max_examples=40)
@given(multigraphs(n_max=6))
def test_graph_case_matches_matrix_eigenvalue(G):
    if any(a > 1 for row in G.adjacency for a in row):
        return
    assert abs(spectral_radius(kth_power(G, 2)).rho - graph_rho(G.adjacency)) < 1e-8


def test_deterministic_output():
    H = random_connected(np.random.default_rng(5), 4, 7)
    a, b = spectral_radius(H), spectral_radius(H)
    assert a.rho == b.rho and np.array_equal(a.perron, b.perron)
