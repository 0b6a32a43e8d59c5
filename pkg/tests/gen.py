"""Random instance generators (numpy-seeded) and hypothesis strategies."""

from __future__ import annotations

import numpy as np
from hypothesis import strategies as st

from hyperspec.hypergraph import UniformHypergraph
from hyperspec.multigraph import Multigraph


def random_connected(rng: np.random.Generator, k: int, m: int, max_fresh=None) -> UniformHypergraph:
    """Grow a connected simple k-graph edge by edge; each edge meets the current vertex set."""
    edges = [tuple(range(k))]
    n = k
    seen = {edges[0]}
    tries = 0
    while len(edges) < m:
        tries += 1
        if tries > 1000:
            raise RuntimeError("could not grow hypergraph")
        hi = k - 1 if max_fresh is None else min(k - 1, max_fresh)
        fresh = int(rng.integers(0, hi + 1))
        old = rng.choice(n, size=k - fresh, replace=False)
        e = tuple(sorted(int(v) for v in old) + list(range(n, n + fresh)))
        if e in seen:
            continue
        seen.add(e)
        edges.append(e)
        n += fresh
    return UniformHypergraph(k, n, tuple(edges))


def random_multigraph(rng: np.random.Generator, n_max=7, mult_max=3) -> Multigraph:
    """Connected loopless multigraph: random spanning tree plus random extra multiplicity."""
    n = int(rng.integers(2, n_max + 1))
    A = np.zeros((n, n), dtype=int)
    order = rng.permutation(n)
    for i in range(1, n):
        j = int(rng.integers(0, i))
        a, b = order[i], order[j]
        A[a, b] = A[b, a] = int(rng.integers(1, mult_max + 1))
    for a in range(n):
        for b in range(a + 1, n):
            if A[a, b] == 0 and rng.random() < 0.3:
                A[a, b] = A[b, a] = int(rng.integers(1, mult_max + 1))
    return Multigraph(n, tuple(map(tuple, A.tolist())))


def ne_instance(rng: np.random.Generator, k: int, extra: int):
    """A hypergraph meeting the pendency hypotheses of ``ne_move``.

    Returns ``(H, e, f, v1, u2)``. Edges ``e`` and ``f`` share ``k - r``
    vertices; only ``u1 in e - f`` and ``v1 in f - e`` carry further edges
    (alongside the shared vertices), so every other private vertex stays pendent.
    """
    r = int(rng.integers(2, k))
    s = k - r
    shared = list(range(s))
    u1, v1 = s, s + 1
    u_rest = list(range(s + 2, s + 2 + r - 1))
    v_rest = list(range(s + 1 + r, s + 1 + 2 * (r - 1) + 1))
    e = tuple(sorted(shared + [u1] + u_rest))
    f = tuple(sorted(shared + [v1] + v_rest))
    n = s + 2 * r
    edges = [e, f]
    seen = set(edges)
    allowed = shared + [u1, v1]
    must = [u1, v1]
    tries = 0
    while len(edges) < 2 + extra or must:
        tries += 1
        if tries > 2000:
            raise RuntimeError("could not build instance")
        anchor = must[0] if must else None
        fresh = int(rng.integers(0, k))
        pool = [x for x in allowed if x != anchor]
        take = k - fresh - (anchor is not None)
        if take < 0 or take > len(pool):
            continue
        old = list(rng.choice(pool, size=take, replace=False)) if take else []
        if anchor is not None:
            old.append(anchor)
        if not old:
            continue
        new = list(range(n, n + fresh))
        cand = tuple(sorted(int(v) for v in old) + new)
        if cand in seen:
            continue
        seen.add(cand)
        edges.append(cand)
        n += fresh
        allowed += new
        if anchor is not None:
            must.pop(0)
    H = UniformHypergraph(k, n, tuple(edges))
    u2 = u_rest[0]
    return H, 0, 1, v1, u2


def move_instance(rng: np.random.Generator, k: int, m: int):
    """``(H, EdgeMove)`` with the Perron entry at the target at least every source entry.

    Returns ``None`` when the draw has no eligible move.
    """
    from hyperspec.moves import EdgeMove
    from hyperspec.tensor import spectral_radius

    H = random_connected(rng, k, m)
    x = spectral_radius(H).perron
    u = int(rng.integers(H.n))
    options = []
    for i, e in enumerate(H.edges):
        if u in e:
            continue
        low = [v for v in e if x[v] <= x[u]]
        if low:
            options.append((i, int(rng.choice(low))))
    if not options:
        return None
    size = int(rng.integers(1, len(options) + 1))
    picked = rng.choice(len(options), size=size, replace=False)
    return H, EdgeMove(tuple(options[j] for j in sorted(picked)), u)


def pm_instance(rng: np.random.Generator, k: int, m: int):
    """``(H, u1, u2)``: adjacent vertices that both lie in an edge the other misses, or ``None``."""
    H = random_connected(rng, k, m)
    pairs = []
    for u1 in range(H.n):
        for u2 in range(H.n):
            if u1 == u2 or not H.common_edges(u1, u2):
                continue
            own1 = set(H.incidence[u1]) - set(H.incidence[u2])
            own2 = set(H.incidence[u2]) - set(H.incidence[u1])
            if own1 and own2:
                pairs.append((u1, u2))
    if not pairs:
        return None
    u1, u2 = pairs[int(rng.integers(len(pairs)))]
    return H, u1, u2


def max_component_rho(H: UniformHypergraph) -> float:
    from hyperspec.tensor import spectral_radius

    comps = H.components()
    if len(comps) == 1:
        return spectral_radius(H).rho
    best = 0.0
    for comp in comps:
        members = set(comp)
        idx = [i for i, e in enumerate(H.edges) if e[0] in members]
        if idx:
            best = max(best, spectral_radius(H.edge_subgraph(idx)).rho)
    return best


@st.composite
def connected_hypergraphs(draw, k_values=(2, 3, 4), m_max=6):
    k = draw(st.sampled_from(k_values))
    m = draw(st.integers(1, m_max))
    seed = draw(st.integers(0, 2**32 - 1))
    return random_connected(np.random.default_rng(seed), k, m)


@st.composite
def multigraphs(draw, n_max=7, mult_max=3):
    seed = draw(st.integers(0, 2**32 - 1))
    return random_multigraph(np.random.default_rng(seed), n_max, mult_max)


@st.composite
def small_matrices(draw, n_max=6, entry_max=3):
    """Symmetric loopless nonnegative integer matrices (not necessarily connected)."""
    n = draw(st.integers(1, n_max))
    A = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            A[i][j] = A[j][i] = draw(st.integers(0, entry_max))
    return A
