"""Uniform hypergraphs: construction, validation, structure and cycles.

Vertices are the integers ``0..n-1`` and every vertex must lie in some edge.
Edges are stored as sorted tuples; their position in ``edges`` is the edge
index used throughout the package (moves, weighted incidence matrices).
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from functools import cached_property
from itertools import combinations
from pathlib import Path
from typing import Iterable, Iterator, Optional, Sequence

import numpy as np

from .errors import BudgetError, ContractError, ParseError, ValidationError

Edge = tuple[int, ...]


@dataclass(frozen=True)
class UniformHypergraph:
    k: int
    n: int
    edges: tuple[Edge, ...]

    def __post_init__(self):
        object.__setattr__(self, "edges", tuple(tuple(sorted(e)) for e in self.edges))

    @classmethod
    def from_edges(cls, k: int, edges: Iterable[Iterable[int]], n: Optional[int] = None) -> "UniformHypergraph":
        """Build and validate; ``n`` defaults to one past the largest label."""
        edges = [tuple(e) for e in edges]
        if n is None:
            n = 1 + max((v for e in edges for v in e), default=-1)
        H = cls(k, n, tuple(edges))
        problems = validate(H)
        if problems:
            raise ValidationError(problems)
        return H

    @property
    def m(self) -> int:
        return len(self.edges)

    @cached_property
    def incidence(self) -> tuple[tuple[int, ...], ...]:
        """``incidence[v]`` lists the indices of edges containing ``v``."""
        inc: list[list[int]] = [[] for _ in range(self.n)]
        for i, e in enumerate(self.edges):
            for v in e:
                if 0 <= v < self.n:
                    inc[v].append(i)
        return tuple(tuple(x) for x in inc)

    @cached_property
    def edge_array(self) -> np.ndarray:
        return np.array(self.edges, dtype=np.intp).reshape(self.m, self.k)

    def degree(self, v: int) -> int:
        return len(self.incidence[v])

    def is_pendent(self, v: int) -> bool:
        return self.degree(v) == 1

    def common_edges(self, *vertices: int) -> list[int]:
        """Indices of edges containing all the given vertices."""
        sets = [set(self.incidence[v]) for v in vertices]
        return sorted(set.intersection(*sets)) if sets else list(range(self.m))

    def neighbors(self, v: int) -> set[int]:
        return {w for i in self.incidence[v] for w in self.edges[i] if w != v}

    def components(self) -> list[list[int]]:
        """Connected components as sorted vertex lists (incidence-graph BFS)."""
        seen = [False] * self.n
        comps = []
        for s in range(self.n):
            if seen[s]:
                continue
            seen[s] = True
            stack, comp = [s], []
            while stack:
                v = stack.pop()
                comp.append(v)
                for i in self.incidence[v]:
                    for w in self.edges[i]:
                        if not seen[w]:
                            seen[w] = True
                            stack.append(w)
            comps.append(sorted(comp))
        return comps

    def is_connected(self) -> bool:
        return self.n > 0 and len(self.components()) == 1

    def edge_subgraph(self, indices: Iterable[int]) -> "UniformHypergraph":
        """Subgraph induced by an edge subset, relabelled to ``0..n'-1``."""
        chosen = [self.edges[i] for i in indices]
        return relabel_compact(self.k, chosen)[0]

    def relabel(self, perm: Sequence[int]) -> "UniformHypergraph":
        """Apply the vertex map ``v -> perm[v]`` (edge order kept)."""
        return UniformHypergraph(self.k, self.n, tuple(tuple(perm[v] for v in e) for e in self.edges))

    def __str__(self) -> str:
        return f"{self.k}-graph n={self.n} m={self.m} " + " ".join(
            "{" + ",".join(map(str, e)) + "}" for e in self.edges
        )


def relabel_compact(k: int, edges: Sequence[Sequence[int]]) -> tuple[UniformHypergraph, dict[int, int]]:
    """Drop unused labels, keeping relative order; returns the map old -> new."""
    used = sorted({v for e in edges for v in e})
    mapping = {v: i for i, v in enumerate(used)}
    H = UniformHypergraph(k, len(used), tuple(tuple(mapping[v] for v in e) for e in edges))
    return H, mapping


def validate(H: UniformHypergraph) -> list[str]:
    problems = []
    if H.k < 2:
        problems.append(f"uniformity k={H.k} is below 2")
    if H.n < 1:
        problems.append("vertex set is empty")
    seen: dict[Edge, int] = {}
    covered = set()
    for i, e in enumerate(H.edges):
        if len(e) != H.k:
            problems.append(f"edge {i} {e} has {len(e)} vertices, expected {H.k}")
        if len(set(e)) != len(e):
            problems.append(f"edge {i} {e} repeats a vertex")
        bad = [v for v in e if not 0 <= v < H.n]
        if bad:
            problems.append(f"edge {i} {e} has labels outside [0, {H.n}): {bad}")
        if e in seen:
            problems.append(f"edge {i} {e} duplicates edge {seen[e]}")
        else:
            seen[e] = i
        covered.update(e)
    for v in range(H.n):
        if v not in covered:
            problems.append(f"vertex {v} is not covered by any edge")
    return problems


def require_valid(H: UniformHypergraph) -> None:
    problems = validate(H)
    if problems:
        raise ValidationError(problems)


@dataclass(frozen=True)
class StructureReport:
    component_count: int
    cyclic_order: int
    is_linear: bool
    pendent_vertices: frozenset[int]
    pendent_edges: frozenset[int]
    non_pendent_count: int

    @property
    def is_connected(self) -> bool:
        return self.component_count == 1


def analyze(H: UniformHypergraph) -> StructureReport:
    require_valid(H)
    l = len(H.components())
    pendent = frozenset(v for v in range(H.n) if H.is_pendent(v))
    # an isolated edge has k pendent vertices and still counts as pendent
    pendent_edges = frozenset(
        i for i, e in enumerate(H.edges) if sum(v in pendent for v in e) >= H.k - 1
    )
    linear = all(len(set(e) & set(f)) <= 1 for e, f in combinations(H.edges, 2))
    return StructureReport(
        component_count=l,
        cyclic_order=H.m * (H.k - 1) - H.n + l,
        is_linear=linear,
        pendent_vertices=pendent,
        pendent_edges=pendent_edges,
        non_pendent_count=H.n - len(pendent),
    )


def iter_cycles(H: UniformHypergraph, length_cap: int, max_steps: int = 2_000_000) -> Iterator[tuple[tuple[int, ...], tuple[int, ...]]]:
    """Yield each cycle once as ``(vertices, edges)``.

    A cycle ``v0 e1 v1 ... el v0`` has distinct vertices and distinct edges,
    ``2 <= l <= length_cap``, and ``v_{i-1}, v_i`` in ``e_i``. The yielded
    representative starts at its smallest vertex and is oriented so that
    the first edge index is smaller than the last.
    """
    steps = 0
    inc = H.incidence

    def extend(path_v, path_e, used_e):
        nonlocal steps
        steps += 1
        if steps > max_steps:
            raise BudgetError(f"cycle search exceeded {max_steps} steps")
        s, c = path_v[0], path_v[-1]
        for i in inc[c]:
            if i in used_e:
                continue
            if path_e and s in H.edges[i] and path_e[0] < i:
                # each cycle is reached in both directions; keep one
                yield tuple(path_v), tuple(path_e) + (i,)
            if len(path_e) + 1 < length_cap:
                used_e.add(i)
                path_e.append(i)
                for w in H.edges[i]:
                    if w > s and w not in path_v:
                        path_v.append(w)
                        yield from extend(path_v, path_e, used_e)
                        path_v.pop()
                path_e.pop()
                used_e.discard(i)

    for s in range(H.n):
        yield from extend([s], [], set())


def count_cycles(H: UniformHypergraph, length_cap: int, max_steps: int = 2_000_000) -> int:
    """Number of cycles of length at most ``length_cap``, up to rotation and reflection."""
    if not H.is_connected():
        raise ContractError("count_cycles requires a connected hypergraph")
    return sum(1 for _ in iter_cycles(H, length_cap, max_steps))


def power_structure(H: UniformHypergraph):
    """The loopless multigraph whose kth power is ``H``, or ``None``.

    Non-pendent vertices keep their relative order as labels ``0..t-1``;
    a pendent edge contributes one extra degree-one vertex, and an isolated
    edge contributes two.
    """
    from .multigraph import Multigraph

    require_valid(H)
    pendent = [H.is_pendent(v) for v in range(H.n)]
    if any(sum(pendent[v] for v in e) < H.k - 2 for e in H.edges):
        return None
    core = [v for v in range(H.n) if not pendent[v]]
    label = {v: i for i, v in enumerate(core)}
    nxt = len(core)
    pairs = []
    for e in H.edges:
        ends = [label[v] for v in e if not pendent[v]]
        while len(ends) < 2:
            ends.append(nxt)
            nxt += 1
        pairs.append(tuple(ends))
    return Multigraph.from_edges(nxt, pairs)


def proposition_violations(H: UniformHypergraph, r: int) -> list[str]:
    """Shared-edge bounds for unicyclic (r=1) and bicyclic (r=2) hypergraphs.

    Pairs of vertices may share at most ``r+1`` edges and triples at most
    ``r`` edges.
    """
    if r not in (1, 2):
        return []
    out = []
    for size, limit in ((2, r + 1), (3, r)):
        counts: Counter = Counter()
        for e in H.edges:
            counts.update(combinations(e, size))
        for verts, c in sorted(counts.items()):
            if c > limit:
                out.append(f"vertices {verts} share {c} edges (limit {limit})")
    return out


# -- .hg text format ---------------------------------------------------------

def parse_hg(text: str) -> UniformHypergraph:
    """Parse the ``.hg`` format: header ``k n m`` then ``m`` edge lines.

    Blank lines and ``#`` comments are skipped; line numbers in errors refer
    to the physical line.
    """
    rows = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            rows.append((lineno, line.split()))
    if not rows:
        raise ParseError("empty input", 1)
    lineno, head = rows[0]
    if len(head) != 3:
        raise ParseError(f"header must be 'k n m', got {len(head)} fields", lineno)
    try:
        k, n, m = (int(t) for t in head)
    except ValueError:
        raise ParseError("header fields must be integers", lineno) from None
    if k < 2 or n < 1 or m < 0:
        raise ParseError(f"header values out of range: k={k} n={n} m={m}", lineno)
    body = rows[1:]
    if len(body) != m:
        at = body[m][0] if len(body) > m else (body[-1][0] if body else lineno)
        raise ParseError(f"header declares {m} edges but {len(body)} edge lines follow", at)
    edges = []
    for lineno, toks in body:
        if len(toks) != k:
            raise ParseError(f"expected {k} vertex indices, got {len(toks)}", lineno)
        try:
            e = tuple(int(t) for t in toks)
        except ValueError:
            raise ParseError("vertex indices must be integers", lineno) from None
        if any(not 0 <= v < n for v in e):
            raise ParseError(f"vertex index outside [0, {n})", lineno)
        if len(set(e)) != k:
            raise ParseError("edge repeats a vertex", lineno)
        edges.append(e)
    H = UniformHypergraph(k, n, tuple(edges))
    problems = validate(H)
    if problems:
        raise ValidationError(problems)
    return H


def format_hg(H: UniformHypergraph) -> str:
    lines = [f"{H.k} {H.n} {H.m}"]
    lines += [" ".join(map(str, e)) for e in sorted(H.edges)]
    return "\n".join(lines) + "\n"


def read_hg(path) -> UniformHypergraph:
    return parse_hg(Path(path).read_text())


def write_hg(H: UniformHypergraph, path) -> None:
    Path(path).write_text(format_hg(H))
