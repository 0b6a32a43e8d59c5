"""Loopless multigraphs, their characteristic polynomials and kth powers."""

from __future__ import annotations

import math
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Sequence

from .errors import ContractError, MultiEdgeError, ParseError
from .hypergraph import UniformHypergraph
from .polynomial import IntPolynomial, largest_root


@dataclass(frozen=True)
class Multigraph:
    n: int
    adjacency: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        A = tuple(tuple(int(a) for a in row) for row in self.adjacency)
        object.__setattr__(self, "adjacency", A)
        if len(A) != self.n or any(len(row) != self.n for row in A):
            raise ContractError(f"adjacency must be {self.n}x{self.n}")
        for i in range(self.n):
            if A[i][i] != 0:
                raise ContractError(f"loop at vertex {i}")
            for j in range(i):
                if A[i][j] != A[j][i]:
                    raise ContractError(f"adjacency is not symmetric at ({i},{j})")
                if A[i][j] < 0:
                    raise ContractError(f"negative multiplicity at ({i},{j})")

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Sequence[int]]) -> "Multigraph":
        A = [[0] * n for _ in range(n)]
        for u, v in edges:
            if u == v:
                raise ContractError(f"loop at vertex {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise ContractError(f"edge ({u},{v}) outside [0, {n})")
            A[u][v] += 1
            A[v][u] += 1
        return cls(n, tuple(map(tuple, A)))

    @property
    def m(self) -> int:
        return sum(map(sum, self.adjacency)) // 2

    def edge_list(self) -> list[tuple[int, int]]:
        """One ``(u, v)`` pair per parallel edge, ``u < v``, lexicographic."""
        return [
            (i, j)
            for i in range(self.n)
            for j in range(i + 1, self.n)
            for _ in range(self.adjacency[i][j])
        ]

    def is_connected(self) -> bool:
        if self.n == 0:
            return False
        seen = {0}
        stack = [0]
        while stack:
            i = stack.pop()
            for j, a in enumerate(self.adjacency[i]):
                if a and j not in seen:
                    seen.add(j)
                    stack.append(j)
        return len(seen) == self.n

    def delete_vertex(self, v: int) -> "Multigraph":
        keep = [i for i in range(self.n) if i != v]
        return Multigraph(self.n - 1, tuple(tuple(self.adjacency[i][j] for j in keep) for i in keep))

    def relabel(self, perm: Sequence[int]) -> "Multigraph":
        return Multigraph.from_edges(self.n, [(perm[u], perm[v]) for u, v in self.edge_list()])


def disjoint_union(G: Multigraph, K: Multigraph) -> Multigraph:
    edges = G.edge_list() + [(u + G.n, v + G.n) for u, v in K.edge_list()]
    return Multigraph.from_edges(G.n + K.n, edges)


def amalgamate(G: Multigraph, u: int, K: Multigraph, v: int) -> Multigraph:
    """Glue vertex ``u`` of ``G`` to vertex ``v`` of ``K``.

    The glued vertex keeps label ``u``; the other vertices of ``K`` follow
    those of ``G`` in their original order.
    """
    label = {}
    nxt = G.n
    for j in range(K.n):
        if j == v:
            label[j] = u
        else:
            label[j] = nxt
            nxt += 1
    edges = G.edge_list() + [(label[a], label[b]) for a, b in K.edge_list()]
    return Multigraph.from_edges(G.n + K.n - 1, edges)


def char_poly(G: Multigraph) -> IntPolynomial:
    """det(xI - A) by the Faddeev-LeVerrier recurrence in exact integers."""
    n = G.n
    A = [list(row) for row in G.adjacency]
    coeffs = [0] * (n + 1)
    coeffs[n] = 1
    M = [[0] * n for _ in range(n)]
    for step in range(1, n + 1):
        # M <- A M + c_{n-step+1} I, then c_{n-step} = -tr(A M) / step
        c_prev = coeffs[n - step + 1]
        AM = [[sum(A[i][t] * M[t][j] for t in range(n) if A[i][t]) for j in range(n)] for i in range(n)]
        for i in range(n):
            AM[i][i] += c_prev
        M = AM
        trace = sum(A[i][t] * M[t][i] for i in range(n) for t in range(n) if A[i][t])
        q, r = divmod(-trace, step)
        if r:
            raise ArithmeticError("non-integral Faddeev-LeVerrier step")
        coeffs[n - step] = q
    return IntPolynomial(tuple(coeffs))


def amalgamate_poly(pH: IntPolynomial, pHu: IntPolynomial, pK: IntPolynomial, pKv: IntPolynomial) -> IntPolynomial:
    """Characteristic polynomial of a vertex amalgamation from its parts.

    ``pHu`` and ``pKv`` are the polynomials of the parts with the glued
    vertex deleted.
    """
    if pHu.degree != pH.degree - 1 or pKv.degree != pK.degree - 1:
        raise ContractError("vertex-deleted polynomials must have degree one less than their graph's")
    x = IntPolynomial.x()
    return pH * pKv + pHu * pK - x * pHu * pKv


def _quadratic_top(p: float, q: float) -> float:
    """Largest root of ``t^2 - p t + q``."""
    disc = p * p - 4 * q
    if disc < 0:
        raise ContractError(f"t^2 - {p} t + {q} has no real root")
    return 0.5 * (p + math.sqrt(disc))


CLOSED_FORM_FAMILIES = ("Gab", "G2", "G3", "Mab")


def closed_form_rho_squared(family: str, m: int, a: int = 0, b: int = 0) -> float:
    """Squared spectral radius of a named unicyclic/bicyclic multigraph.

    ``Gab`` and ``Mab`` use the quadratics in ``t = x^2``
    ``t^2 - (m+2) t + ab`` and ``t^2 - (m+6) t + ab``; ``G2`` and ``G3``
    use their radicals directly.
    """
    if family == "Gab":
        if a < 0 or b < 0 or a + b != m - 2:
            raise ContractError(f"G(a,b) needs a, b >= 0 and a + b = m - 2 (m={m}, a={a}, b={b})")
        return _quadratic_top(m + 2, a * b)
    if family == "Mab":
        if a < 0 or b < 0 or a + b != m - 3:
            raise ContractError(f"M(a,b) needs a, b >= 0 and a + b = m - 3 (m={m}, a={a}, b={b})")
        return _quadratic_top(m + 6, a * b)
    if family == "G2":
        if m < 4:
            raise ContractError("G2 needs m >= 4")
        return 0.5 * (m + 2 + math.sqrt(m * m - 12 * m + 52))
    if family == "G3":
        if m < 4:
            raise ContractError("G3 needs m >= 4")
        return 0.5 * (m + 2 + math.sqrt(m * m + 4))
    raise ContractError(f"no closed form for family {family!r}; expected one of {CLOSED_FORM_FAMILIES}")


def kth_power(G: Multigraph, k: int) -> UniformHypergraph:
    """Blow each edge up to a k-edge with ``k - 2`` fresh vertices.

    Graph vertices keep their labels; fresh vertices follow in edge-list
    order.
    """
    if k < 2:
        raise ContractError("kth_power needs k >= 2")
    if not G.is_connected() or G.m == 0:
        raise ContractError("kth_power needs a connected multigraph with at least one edge")
    if k == 2 and any(a > 1 for row in G.adjacency for a in row):
        raise MultiEdgeError("the 2nd power of a multigraph with parallel edges is not simple")
    edges = []
    nxt = G.n
    for u, v in G.edge_list():
        edges.append((u, v) + tuple(range(nxt, nxt + k - 2)))
        nxt += k - 2
    return UniformHypergraph(k, nxt, tuple(edges))


def spectral_radius(G: Multigraph, tol: float = 1e-12) -> float:
    return largest_root(char_poly(G), tol)


def power_rho(G: Multigraph, k: int, tol: float = 1e-12) -> float:
    """rho(G^k) = rho(G)^(2/k)."""
    if k < 2:
        raise ContractError("power_rho needs k >= 2")
    return spectral_radius(G, tol) ** (2.0 / k)


# -- .mg text format ---------------------------------------------------------

def parse_mg(text: str) -> Multigraph:
    rows = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            rows.append((lineno, line.split()))
    if not rows:
        raise ParseError("empty input", 1)
    lineno, head = rows[0]
    if len(head) != 2:
        raise ParseError("header must be 'n m'", lineno)
    try:
        n, m = int(head[0]), int(head[1])
    except ValueError:
        raise ParseError("header fields must be integers", lineno) from None
    if n < 1 or m < 0:
        raise ParseError(f"header values out of range: n={n} m={m}", lineno)
    if len(rows) - 1 != m:
        raise ParseError(f"header declares {m} edges but {len(rows) - 1} edge lines follow", rows[-1][0])
    edges = []
    for lineno, toks in rows[1:]:
        if len(toks) != 2:
            raise ParseError("edge line must be 'u v'", lineno)
        try:
            u, v = int(toks[0]), int(toks[1])
        except ValueError:
            raise ParseError("vertex indices must be integers", lineno) from None
        if not (0 <= u < n and 0 <= v < n):
            raise ParseError(f"vertex index outside [0, {n})", lineno)
        if u == v:
            raise ParseError(f"loop at vertex {u} is not allowed", lineno)
        edges.append((u, v))
    return Multigraph.from_edges(n, edges)


def format_mg(G: Multigraph) -> str:
    lines = [f"{G.n} {G.m}"] + [f"{u} {v}" for u, v in G.edge_list()]
    return "\n".join(lines) + "\n"


def read_mg(path) -> Multigraph:
    return parse_mg(Path(path).read_text())


def write_mg(G: Multigraph, path) -> None:
    Path(path).write_text(format_mg(G))
