"""Weighted incidence matrices and alpha-normality certificates.

A certificate is a positive weight on each vertex-edge incidence. Vertex
sums at most 1 and edge products at least ``alpha``, together with
consistency around every cycle, pin the spectral radius: equality
everywhere gives ``rho = alpha^(-1/k)``; any strict slack gives
``rho < alpha^(-1/k)``.
"""

from __future__ import annotations

import json
import math
from collections import deque
from dataclasses import dataclass, field
from typing import Optional

from .errors import ContractError
from .families import FamilySpec, generate
from .hypergraph import UniformHypergraph
from .multigraph import closed_form_rho_squared

NORMAL = "normal"
STRICT = "strictly-subnormal"
NOT_SUBNORMAL = "not-subnormal"


@dataclass(frozen=True)
class WeightedIncidenceMatrix:
    weights: dict[tuple[int, int], float] = field(default_factory=dict)

    def __getitem__(self, key: tuple[int, int]) -> float:
        return self.weights[key]


@dataclass(frozen=True)
class NormalityCertificate:
    alpha: float
    vertex_slacks: dict[int, float]
    edge_excess: dict[int, float]
    consistent: bool
    verdict: str

    def positive_excess_edges(self, tol: float = 1e-12) -> list[int]:
        return sorted(i for i, x in self.edge_excess.items() if x > tol)


@dataclass(frozen=True)
class BoundStatement:
    kind: str  # "exact" or "strict-upper"
    value: float

    def __str__(self) -> str:
        op = "=" if self.kind == "exact" else "<"
        return f"rho {op} {self.value!r}"


def _check_support(H: UniformHypergraph, B: WeightedIncidenceMatrix) -> None:
    expected = {(v, i) for i, e in enumerate(H.edges) for v in e}
    got = set(B.weights)
    if got != expected:
        missing = sorted(expected - got)[:3]
        extra = sorted(got - expected)[:3]
        raise ContractError(f"weight support does not match incidences (missing {missing}, extra {extra})")
    bad = [key for key, w in B.weights.items() if not w > 0]
    if bad:
        raise ContractError(f"weights must be positive: {bad[:3]}")


def check_consistency(H: UniformHypergraph, B: WeightedIncidenceMatrix, tol: float = 1e-12) -> bool:
    """Whether every cycle's alternating weight-ratio product is 1.

    Equivalent to ``log B(v, e) = p(v) + q(e)`` for some vertex and edge
    potentials: potentials are propagated along a BFS spanning forest of
    the incidence graph and every other incidence is checked against them.
    """
    _check_support(H, B)
    logw = {key: math.log(w) for key, w in B.weights.items()}
    pv: dict[int, float] = {}
    pe: dict[int, float] = {}
    for root in range(H.n):
        if root in pv:
            continue
        pv[root] = 0.0
        queue = deque([("v", root)])
        while queue:
            kind, node = queue.popleft()
            if kind == "v":
                for i in H.incidence[node]:
                    if i not in pe:
                        pe[i] = logw[(node, i)] - pv[node]
                        queue.append(("e", i))
            else:
                for v in H.edges[node]:
                    if v not in pv:
                        pv[v] = logw[(v, node)] - pe[node]
                        queue.append(("v", v))
    return all(abs(lw - pv[v] - pe[i]) <= tol for (v, i), lw in logw.items())


def check(H: UniformHypergraph, B: WeightedIncidenceMatrix, alpha: float, tol: float = 1e-12) -> NormalityCertificate:
    _check_support(H, B)
    if not alpha > 0:
        raise ContractError("alpha must be positive")
    slacks = {v: 1.0 - sum(B[(v, i)] for i in H.incidence[v]) for v in range(H.n)}
    excess = {i: math.prod(B[(v, i)] for v in e) - alpha for i, e in enumerate(H.edges)}
    values = list(slacks.values()) + list(excess.values())
    if all(abs(x) <= tol for x in values):
        verdict = NORMAL
    elif all(x >= -tol for x in values):
        verdict = STRICT
    else:
        verdict = NOT_SUBNORMAL
    return NormalityCertificate(alpha, slacks, excess, check_consistency(H, B, tol), verdict)


def bound_from_certificate(cert: NormalityCertificate, k: int) -> BoundStatement:
    if not cert.consistent:
        raise ContractError("certificate is inconsistent; no bound follows")
    value = cert.alpha ** (-1.0 / k)
    if cert.verdict == NORMAL:
        return BoundStatement("exact", value)
    if cert.verdict == STRICT:
        return BoundStatement("strict-upper", value)
    raise ContractError(f"certificate verdict is {cert.verdict}; no bound follows")


# -- constructions from the extremal proofs ----------------------------------

CERTIFICATE_TAGS = ("U31-subnormal", "B31-normal", "B31-subnormal", "B33-subnormal", "B4-subnormal")
CLAIMED_VERDICT = {
    "U31-subnormal": STRICT,
    "B31-normal": NORMAL,
    "B31-subnormal": STRICT,
    "B33-subnormal": STRICT,
    "B4-subnormal": STRICT,
}
MIN_M = {"U31-subnormal": 8, "B31-normal": 5, "B31-subnormal": 5, "B33-subnormal": 5, "B4-subnormal": 5}
MIN_K = {"U31-subnormal": 3, "B31-normal": 4, "B31-subnormal": 4, "B33-subnormal": 3, "B4-subnormal": 4}


@dataclass(frozen=True)
class BuiltCertificate:
    tag: str
    spec: FamilySpec
    hypergraph: UniformHypergraph
    weights: WeightedIncidenceMatrix
    alpha: float
    comparison: str  # the family whose radius alpha^(-1/k) equals
    A: Optional[float] = None

    def __iter__(self):
        return iter((self.hypergraph, self.weights, self.alpha))


def _base_weights(H: UniformHypergraph, alpha: float) -> dict[tuple[int, int], float]:
    """1 on pendent vertices; ``alpha`` where a pendent edge meets its anchor."""
    w = {}
    for i, e in enumerate(H.edges):
        pend = [v for v in e if H.is_pendent(v)]
        if len(pend) >= H.k - 1:
            for v in e:
                w[(v, i)] = 1.0 if H.is_pendent(v) else alpha
        else:
            for v in pend:
                w[(v, i)] = 1.0
    return w


def _cycle_edges(H: UniformHypergraph, *core: int) -> list[int]:
    """Non-pendent edges containing all given vertices, in index order."""
    return [i for i in H.common_edges(*core) if sum(H.is_pendent(v) for v in H.edges[i]) < H.k - 1]


def build_certificate(tag: str, m: int, k: int, a: int = 0) -> BuiltCertificate:
    """Reconstruct one of the explicit weightings used to compare radii.

    ``alpha`` (or ``beta``) is recomputed from the closed-form radii of the
    source multigraphs. ``a`` is only used by ``U31-subnormal``.
    """
    if tag not in CERTIFICATE_TAGS:
        raise ContractError(f"unknown certificate {tag!r}; expected one of {CERTIFICATE_TAGS}")
    if m < MIN_M[tag]:
        raise ContractError(f"{tag} holds for m >= {MIN_M[tag]} (got m={m})")
    if k < MIN_K[tag]:
        raise ContractError(f"{tag} requires k >= {MIN_K[tag]} (got k={k})")
    u, v, w = 0, 1, 2

    if tag == "U31-subnormal":
        if a not in (0, 1):
            raise ContractError(f"U31-subnormal holds for a <= 1 (got a={a})")
        spec = FamilySpec("U31", k=k, a=a, b=0, c=m - 2 - a)
        H = generate(spec)
        alpha = 1.0 / closed_form_rho_squared("Gab", m, m - 4, 2)
        W = _base_weights(H, alpha)
        (e_w,) = _cycle_edges(H, u, v, w)
        (e_o,) = [i for i in _cycle_edges(H, u, v) if i != e_w]
        A = math.sqrt(1.0 / alpha - a) - 1.0
        x1 = (1.0 - a * alpha) / (1.0 + A)
        y1 = 1.0 / (1.0 + A)
        W[(u, e_o)], W[(u, e_w)] = x1, A * x1
        W[(v, e_o)], W[(v, e_w)] = y1, A * y1
        W[(w, e_w)] = 1.0 - (m - 2 - a) * alpha
        return BuiltCertificate(tag, spec, H, WeightedIncidenceMatrix(W), alpha, f"U2:k={k},a={m - 4},b=2", A)

    if tag == "B31-normal":
        spec = FamilySpec("B3_1", k=k, a=m - 2, b=0, c=0)
        H = generate(spec)
        alpha = 1.0 / closed_form_rho_squared("Mab", m, m - 3, 0)
        W = _base_weights(H, alpha)
        for i in _cycle_edges(H, u, v, w):
            W[(u, i)] = (1.0 - (m - 2) * alpha) / 2.0
            W[(v, i)] = W[(w, i)] = 0.5
        return BuiltCertificate(tag, spec, H, WeightedIncidenceMatrix(W), alpha, f"B2:k={k},a={m - 3},b=0")

    beta = 1.0 / closed_form_rho_squared("Mab", m, m - 4, 1)
    comparison = f"B2:k={k},a={m - 4},b=1"

    if tag == "B31-subnormal":
        spec = FamilySpec("B3_1", k=k, a=m - 3, b=1, c=0)
        H = generate(spec)
        W = _base_weights(H, beta)
        e1, e2 = _cycle_edges(H, u, v, w)
        sx, sy, sz = 1.0 - (m - 3) * beta, 1.0 - beta, 1.0
        A = (sx * sy * sz / beta) ** (1.0 / 3.0) - 1.0
        for vert, total in ((u, sx), (v, sy), (w, sz)):
            small = total / (1.0 + A)
            W[(vert, e2)], W[(vert, e1)] = small, A * small
        return BuiltCertificate(tag, spec, H, WeightedIncidenceMatrix(W), beta, comparison, A)

    if tag == "B33-subnormal":
        spec = FamilySpec("B3_3", k=k, a=0, b=m - 3, c=0)
        H = generate(spec)
        W = _base_weights(H, beta)
        (e1,) = _cycle_edges(H, u, v, w)
        (e2,) = [i for i in _cycle_edges(H, u, v) if i != e1]
        (e3,) = [i for i in _cycle_edges(H, v, w) if i != e1]
        q = (1.0 - (m - 3) * beta) / beta
        A = 0.5 * (-3.0 + math.sqrt(1.0 + 4.0 * q))  # positive root of (A+1)(A+2) = q
        x2 = z3 = 1.0 / (A + 1.0)
        y2 = y3 = (1.0 - (m - 3) * beta) / (A + 2.0)
        W[(u, e1)], W[(u, e2)] = A * x2, x2
        W[(w, e1)], W[(w, e3)] = A * z3, z3
        W[(v, e1)], W[(v, e2)], W[(v, e3)] = A * y2, y2, y3
        return BuiltCertificate(tag, spec, H, WeightedIncidenceMatrix(W), beta, comparison, A)

    # B4-subnormal
    spec = FamilySpec("B4", k=k, m=m)
    H = generate(spec)
    W = _base_weights(H, beta)
    t = 3
    (e2,) = _cycle_edges(H, u, v, w, t)
    (e1,) = [i for i in _cycle_edges(H, u, v, w) if i != e2]
    root = beta ** (1.0 / 3.0)
    A = 1.0 / root - 1.0
    for vert in (u, v, w):
        W[(vert, e1)] = root
        W[(vert, e2)] = A * root
    W[(t, e2)] = 1.0 - (m - 2) * beta
    return BuiltCertificate(tag, spec, H, WeightedIncidenceMatrix(W), beta, comparison, A)


def u31_margin(m: int) -> float:
    """``[1/alpha - (m-2)] (sqrt(1-alpha) - sqrt(alpha))^2`` with ``1/alpha = rho(G(m-4,2))^2``.

    A value above 1 makes the U31 weighting strictly subnormal.
    """
    inv = closed_form_rho_squared("Gab", m, m - 4, 2)
    alpha = 1.0 / inv
    return (inv - (m - 2)) * (math.sqrt(1.0 - alpha) - math.sqrt(alpha)) ** 2


def certificate_to_json(built: BuiltCertificate, cert: NormalityCertificate, bound: Optional[BoundStatement] = None, extra: Optional[dict] = None) -> str:
    doc = {
        "certificate": built.tag,
        "hypergraph": str(built.spec),
        "k": built.hypergraph.k,
        "n": built.hypergraph.n,
        "edges": [list(e) for e in built.hypergraph.edges],
        "alpha": built.alpha,
        "weights": {f"({v},{i})": x for (v, i), x in sorted(built.weights.weights.items())},
        "verdict": cert.verdict,
        "consistent": cert.consistent,
        "vertex_slacks": {str(v): s for v, s in sorted(cert.vertex_slacks.items())},
        "edge_excess": {str(i): x for i, x in sorted(cert.edge_excess.items())},
    }
    if bound is not None:
        doc["bound"] = {"kind": bound.kind, "value": bound.value}
    if extra:
        doc.update(extra)
    return json.dumps(doc, indent=2, sort_keys=True)
