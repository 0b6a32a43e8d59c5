"""Edge moves that re-anchor edges at a new vertex.

Moving edge ``e`` from ``v`` (in ``e``) to ``u`` (not in ``e``) replaces it
with ``(e - {v}) | {u}``. Under the right Perron-vector or pendency
hypotheses such moves strictly increase the spectral radius; the
operations here check those hypotheses and perform the moves.
"""

from __future__ import annotations

import re
import warnings
from dataclasses import dataclass
from typing import Sequence

from .errors import ContractError, IdentityMoveWarning, MultiEdgeError, ParseError
from .hypergraph import UniformHypergraph, relabel_compact


@dataclass(frozen=True)
class EdgeMove:
    sources: tuple[tuple[int, int], ...]  # (edge index, vertex leaving that edge)
    target: int

    def __post_init__(self):
        object.__setattr__(self, "sources", tuple((int(i), int(v)) for i, v in self.sources))
        idx = [i for i, _ in self.sources]
        if len(set(idx)) != len(idx):
            raise ContractError("source edges must be pairwise distinct")

    def check(self, H: UniformHypergraph) -> None:
        if not 0 <= self.target < H.n:
            raise ContractError(f"target {self.target} is not a vertex")
        for i, v in self.sources:
            if not 0 <= i < H.m:
                raise ContractError(f"edge index {i} out of range [0, {H.m})")
            e = H.edges[i]
            if v not in e:
                raise ContractError(f"vertex {v} is not in edge {i} {e}")
            if self.target in e:
                raise ContractError(f"target {self.target} already lies in source edge {i} {e}")


def move_edges(H: UniformHypergraph, mv: EdgeMove) -> tuple[UniformHypergraph, dict[int, int]]:
    """Apply ``mv``; returns the new hypergraph and the old -> new label map.

    Vertices left without edges are dropped and the remaining labels are
    compacted in order. Edge order is preserved.
    """
    mv.check(H)
    edges = list(H.edges)
    for i, v in mv.sources:
        edges[i] = tuple(sorted(mv.target if x == v else x for x in edges[i]))
    seen = {}
    for i, e in enumerate(edges):
        if e in seen:
            raise MultiEdgeError(f"move creates a repeated edge {e} (edges {seen[e]} and {i})")
        seen[e] = i
    return relabel_compact(H.k, edges)


def pm_merge(H: UniformHypergraph, u1: int, u2: int) -> UniformHypergraph:
    """Move every edge at ``u2`` not shared with ``u1`` over to ``u1``.

    Labels are unchanged: ``u2`` keeps the shared edges, so nothing is
    stranded. If either vertex has no private edges the result is
    isomorphic to ``H`` and an ``IdentityMoveWarning`` is issued.
    """
    for x in (u1, u2):
        if not 0 <= x < H.n:
            raise ContractError(f"{x} is not a vertex")
    if u1 == u2:
        raise ContractError("u1 and u2 must differ")
    shared = set(H.common_edges(u1, u2))
    if not shared:
        raise ContractError(f"vertices {u1} and {u2} are not adjacent")
    movable = [i for i in H.incidence[u2] if i not in shared]
    if not movable:
        warnings.warn(f"vertex {u2} has no edges beyond those shared with {u1}; nothing to move", IdentityMoveWarning)
        return H
    if all(i in shared for i in H.incidence[u1]):
        warnings.warn(f"vertex {u1} has no private edges; the merge only swaps roles", IdentityMoveWarning)
    H2, _ = move_edges(H, EdgeMove(tuple((i, u2) for i in movable), u1))
    return H2


def ne_move(H: UniformHypergraph, e: int, f: int, v1: int, u2: int) -> UniformHypergraph:
    """Move every edge at ``v1`` except ``f`` to the pendent vertex ``u2`` of ``e``.

    Requires ``|e & f| = k - r`` with ``2 <= r <= k - 1``; ``f - e`` holds
    exactly one non-pendent vertex, ``v1``, and ``e - f`` exactly one
    non-pendent vertex besides the pendent ``u2``.
    """
    k = H.k
    for i in (e, f):
        if not 0 <= i < H.m:
            raise ContractError(f"edge index {i} out of range [0, {H.m})")
    if e == f:
        raise ContractError("e and f must be different edges")
    E, F = set(H.edges[e]), set(H.edges[f])
    r = k - len(E & F)
    if not 2 <= r <= k - 1:
        raise ContractError(f"intersection size: |e & f| = {k - r} needs 1 <= |e & f| <= k - 2")
    e_only, f_only = E - F, F - E
    if v1 not in f_only:
        raise ContractError(f"v1={v1} is not in f - e")
    if u2 not in e_only:
        raise ContractError(f"u2={u2} is not in e - f")
    if H.is_pendent(v1):
        raise ContractError(f"pendency: v1={v1} must be non-pendent")
    if not H.is_pendent(u2):
        raise ContractError(f"pendency: u2={u2} must be pendent")
    if any(not H.is_pendent(x) for x in f_only - {v1}):
        raise ContractError("pendency: every vertex of f - e other than v1 must be pendent")
    heavy = [x for x in e_only if not H.is_pendent(x)]
    if len(heavy) != 1:
        raise ContractError(f"pendency: e - f must have exactly one non-pendent vertex (found {len(heavy)})")
    movable = [i for i in H.incidence[v1] if i != f]
    H2, _ = move_edges(H, EdgeMove(tuple((i, v1) for i in movable), u2))
    return H2


def check_perron_hypothesis(H: UniformHypergraph, mv: EdgeMove, slack: float = 1e-9, tol: float = 1e-10) -> bool:
    """Whether the Perron vector satisfies ``x_target >= max x_source``.

    ``slack`` absorbs solver noise, so exact ties (from automorphisms)
    count as satisfied.
    """
    from .tensor import spectral_radius

    mv.check(H)
    x = spectral_radius(H, tol=tol).perron
    if not mv.sources:
        return True
    return bool(x[mv.target] >= max(x[v] for _, v in mv.sources) - slack)


# -- move scripts ------------------------------------------------------------

_MOVE_RE = re.compile(r"^MOVE\s+(.+?)\s*->\s*(\d+)$")


def parse_script(text: str) -> list[tuple]:
    """Parse one move per line: ``MOVE e:v ... -> u``, ``PM u1 u2``, ``NE e f v1 u2``."""
    ops = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        word = line.split()[0].upper()
        try:
            if word == "MOVE":
                match = _MOVE_RE.match(line)
                if not match:
                    raise ParseError("expected 'MOVE e:v ... -> u'", lineno)
                pairs = []
                for tok in match.group(1).split():
                    i, sep, v = tok.partition(":")
                    if not sep:
                        raise ParseError(f"source {tok!r} must be 'edge:vertex'", lineno)
                    pairs.append((int(i), int(v)))
                ops.append(("MOVE", EdgeMove(tuple(pairs), int(match.group(2)))))
            elif word in ("PM", "NE"):
                args = [int(t) for t in line.split()[1:]]
                want = 2 if word == "PM" else 4
                if len(args) != want:
                    raise ParseError(f"{word} takes {want} integers", lineno)
                ops.append((word, *args))
            else:
                raise ParseError(f"unknown move {word!r}", lineno)
        except ValueError as exc:
            if isinstance(exc, ParseError):
                raise
            raise ParseError(str(exc), lineno) from None
    return ops


def apply_script(H: UniformHypergraph, ops: Sequence[tuple]) -> UniformHypergraph:
    """Apply parsed moves in order; later lines see the relabelled result."""
    for op in ops:
        if op[0] == "MOVE":
            H, _ = move_edges(H, op[1])
        elif op[0] == "PM":
            H = pm_merge(H, *op[1:])
        else:
            H = ne_move(H, *op[1:])
    return H
