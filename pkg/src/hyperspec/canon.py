"""Isomorphism-invariant keys and exhaustive enumeration of small hypergraphs.

``canonical_form`` explores every labelling produced by individualisation
and colour refinement (twins are branched on only once) and keeps the
lexicographically smallest sorted edge list. ``fingerprint`` first strips
every pendent vertex, keeping only how many each edge had, so it stays
cheap on the large families where most vertices are pendent.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import combinations
from typing import Sequence

from .errors import BudgetError, ContractError
from .hypergraph import UniformHypergraph, analyze

CANON_MAX_N = 12


def _refine(colors: list[int], edges: Sequence[tuple[int, ...]], inc, labels) -> list[int]:
    while True:
        edge_sig = [(labels[i], tuple(sorted(colors[v] for v in e))) for i, e in enumerate(edges)]
        sig = [(colors[v], tuple(sorted(edge_sig[i] for i in inc[v]))) for v in range(len(colors))]
        rank = {s: r for r, s in enumerate(sorted(set(sig)))}
        new = [rank[s] for s in sig]
        if len(rank) == len(set(colors)):
            return new
        colors = new


def _canonical_labelling_key(n: int, edges, initial: Sequence, labels: Sequence = ()):
    labels = list(labels) or [0] * len(edges)
    inc: list[list[int]] = [[] for _ in range(n)]
    for i, e in enumerate(edges):
        for v in e:
            inc[v].append(i)
    order = {c: r for r, c in enumerate(sorted(set(initial)))}
    start = [order[c] for c in initial]
    best = None

    def search(colors):
        nonlocal best
        colors = _refine(colors, edges, inc, labels)
        cells: dict[int, list[int]] = {}
        for v, c in enumerate(colors):
            cells.setdefault(c, []).append(v)
        target = next((c for c in sorted(cells) if len(cells[c]) > 1), None)
        if target is None:
            key = (
                tuple(sorted((labels[i], tuple(sorted(colors[v] for v in e))) for i, e in enumerate(edges))),
                tuple(c for _, c in sorted(zip(colors, initial))),
            )
            if best is None or key < best:
                best = key
            return
        tried = set()
        for v in cells[target]:
            twin = frozenset(inc[v])
            if twin in tried:
                continue
            tried.add(twin)
            search([2 * c if w == v else 2 * c + 1 for w, c in enumerate(colors)])

    search(start)
    return best


def _encode(k: int, n: int, key, extra=()) -> bytes:
    edges, colors = key
    body = ";".join((f"{lab}:" if lab else "") + ",".join(map(str, e)) for lab, e in edges)
    parts = [f"k={k}", f"n={n}", body]
    if any(colors):
        parts.append("c=" + ",".join(map(str, colors)))
    parts.extend(extra)
    return "|".join(parts).encode()


def canonical_form(H: UniformHypergraph, max_n: int = CANON_MAX_N) -> bytes:
    """Canonical byte string: equal for two hypergraphs iff they are isomorphic."""
    if H.n > max_n:
        raise BudgetError(f"canonical_form is limited to n <= {max_n} (got n={H.n})")
    return _encode(H.k, H.n, _canonical_labelling_key(H.n, H.edges, [0] * H.n))


def fingerprint(H: UniformHypergraph) -> bytes:
    """Isomorphism-complete key for hypergraphs of any size.

    A pendent vertex lies in one edge only, so ``H`` is determined up to
    isomorphism by its non-pendent vertices and, for each edge, the set of
    non-pendent vertices it contains plus its number of pendent ones.
    Edges meeting one non-pendent vertex become a count on that vertex;
    edges with the same larger core merge into one labelled core edge.
    The result is canonicalised by individualisation and refinement.
    """
    rep = analyze(H)
    pendent = rep.pendent_vertices
    isolated = 0
    counts: dict[int, int] = {}
    cores: dict[tuple[int, ...], list[int]] = {}
    for e in H.edges:
        core = tuple(v for v in e if v not in pendent)
        if not core:
            isolated += 1
        elif len(core) == 1:
            counts[core[0]] = counts.get(core[0], 0) + 1
        else:
            cores.setdefault(core, []).append(H.k - len(core))
    verts = sorted(v for v in range(H.n) if v not in pendent)
    label = {v: i for i, v in enumerate(verts)}
    edges = [tuple(label[v] for v in core) for core in cores]
    labels = [".".join(map(str, sorted(p))) for p in cores.values()]
    initial = [counts.get(v, 0) for v in verts]
    key = _canonical_labelling_key(len(verts), edges, initial, labels)
    return _encode(H.k, len(verts), key, (f"iso={isolated}",))


@lru_cache(maxsize=None)
def _connected_by_size(k: int, m: int) -> tuple[UniformHypergraph, ...]:
    if m == 1:
        return (UniformHypergraph(k, k, (tuple(range(k)),)),)
    out: dict[bytes, UniformHypergraph] = {}
    for H in _connected_by_size(k, m - 1):
        existing = set(H.edges)
        for fresh in range(k):
            new = tuple(range(H.n, H.n + fresh))
            for old in combinations(range(H.n), k - fresh):
                e = tuple(sorted(old + new))
                if e in existing:
                    continue
                G = UniformHypergraph(k, H.n + fresh, H.edges + (e,))
                out.setdefault(canonical_form(G), G)
    return tuple(out[key] for key in sorted(out))


def enumerate_connected(k: int, m: int, r: int) -> list[UniformHypergraph]:
    """All connected simple k-graphs with ``m`` edges and cyclic order ``r``, up to isomorphism.

    Grows hypergraphs one edge at a time, each new edge touching the current
    vertex set, so every connected hypergraph is reached through some
    connected prefix.
    """
    if k < 2 or m < 1:
        raise ContractError("enumerate_connected needs k >= 2 and m >= 1")
    if m * (k - 1) + 1 > CANON_MAX_N:
        raise BudgetError(f"enumeration of k={k}, m={m} exceeds the n <= {CANON_MAX_N} oracle budget")
    n = m * (k - 1) - r + 1
    return [H for H in _connected_by_size(k, m) if H.n == n]


def enumerate_all_connected(k: int, m: int) -> list[UniformHypergraph]:
    if m * (k - 1) + 1 > CANON_MAX_N:
        raise BudgetError(f"enumeration of k={k}, m={m} exceeds the n <= {CANON_MAX_N} oracle budget")
    return list(_connected_by_size(k, m))
