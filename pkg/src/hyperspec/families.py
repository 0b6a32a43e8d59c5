"""Named unicyclic and bicyclic families and their multigraph sources.

Core vertices are labelled first (``u=0, v=1, w=2``, then ``t``/``x``
where a family has them), and every other vertex is created fresh in edge
order. Where a definition says "an arbitrary pendent vertex", the lowest
eligible label is used.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from itertools import product
from typing import Iterator, Optional, Union

from .canon import fingerprint
from .errors import ContractError
from .hypergraph import UniformHypergraph, analyze
from .multigraph import Multigraph, kth_power

HYPER_TAGS = (
    "U2", "U31", "U32", "B2",
    "B3_1", "B3_2", "B3_3", "B3_4", "B3_5", "B3_6", "B4",
    "G1_power", "G2_power", "G3_power", "star_power",
)
GRAPH_TAGS = ("Gab", "Mab", "G1", "G2", "G3")

# tag -> (parameter names, offset with m = sum(params) + offset, or None if m is a parameter)
_SHAPE = {
    "U2": ("ab", 2), "U31": ("abc", 2), "U32": ("abc", 3), "B2": ("ab", 3),
    "B3_1": ("abc", 2), "B3_2": ("abc", 3), "B3_3": ("abc", 3),
    "B3_4": ("abc", 4), "B3_5": ("abc", 4), "B3_6": ("abc", 4),
    "B4": ("", None), "G1_power": ("", None), "G2_power": ("", None),
    "G3_power": ("", None), "star_power": ("", None),
    "Gab": ("ab", 2), "Mab": ("ab", 3),
    "G1": ("", None), "G2": ("", None), "G3": ("", None),
}
_MIN_K = {"B3_1": 4, "B4": 4}
_C_POSITIVE = {"U31", "U32", "B3_2", "B3_4"}
_MIN_M = {"B4": 3, "G1_power": 3, "G2_power": 4, "G3_power": 4, "star_power": 1, "G1": 3, "G2": 4, "G3": 4}
_CYCLIC = {
    "U2": 1, "U31": 1, "U32": 1, "G1_power": 1, "G2_power": 1, "G3_power": 1,
    "B2": 2, "B3_1": 2, "B3_2": 2, "B3_3": 2, "B3_4": 2, "B3_5": 2, "B3_6": 2, "B4": 2,
    "star_power": 0,
}


@dataclass(frozen=True)
class FamilySpec:
    tag: str
    k: Optional[int] = None
    a: int = 0
    b: int = 0
    c: int = 0
    m: Optional[int] = None

    def __post_init__(self):
        if self.tag not in _SHAPE:
            raise ContractError(f"unknown family tag {self.tag!r}")
        names, offset = _SHAPE[self.tag]
        for name in "abc":
            value = getattr(self, name)
            if name not in names and value:
                raise ContractError(f"{self.tag} takes no parameter {name}")
            if value < 0:
                raise ContractError(f"parameter {name} must be nonnegative")
        if offset is not None:
            total = sum(getattr(self, name) for name in names) + offset
            if self.m is not None and self.m != total:
                raise ContractError(f"{self.tag} with {self._params_text()} has m={total}, not m={self.m}")
            object.__setattr__(self, "m", total)
        elif self.m is None:
            raise ContractError(f"{self.tag} needs m")
        if self.m < _MIN_M.get(self.tag, 0):
            raise ContractError(f"{self.tag} needs m >= {_MIN_M[self.tag]}")
        if self.tag in _C_POSITIVE and self.c < 1:
            raise ContractError(f"{self.tag} needs c >= 1")
        if self.is_hypergraph:
            if self.k is None:
                raise ContractError(f"{self.tag} needs k")
            need = _MIN_K.get(self.tag, 3)
            if self.k < need:
                raise ContractError(f"{self.tag} requires k >= {need} (got k={self.k})")
        elif self.k is not None:
            raise ContractError(f"{self.tag} is a multigraph family and takes no k")

    @property
    def is_hypergraph(self) -> bool:
        return self.tag in HYPER_TAGS

    @property
    def cyclic_order(self) -> Optional[int]:
        return _CYCLIC.get(self.tag)

    def _params_text(self) -> str:
        names, _ = _SHAPE[self.tag]
        return ",".join(f"{n}={getattr(self, n)}" for n in names)

    def __str__(self) -> str:
        names, offset = _SHAPE[self.tag]
        parts = []
        if self.k is not None:
            parts.append(f"k={self.k}")
        if offset is None or not self.is_hypergraph:
            parts.append(f"m={self.m}")
        parts += [f"{n}={getattr(self, n)}" for n in names]
        return f"{self.tag}:" + ",".join(parts)


_SPEC_RE = re.compile(r"^\s*(\w+)\s*(?::\s*(.*))?$")


def parse_spec(text: str) -> FamilySpec:
    """Parse ``TAG:key=value,...``, e.g. ``U2:k=3,a=6,b=0`` or ``Gab:m=8,a=4,b=2``."""
    match = _SPEC_RE.match(text)
    if not match:
        raise ContractError(f"cannot parse family spec {text!r}")
    tag, body = match.group(1), match.group(2) or ""
    kwargs = {}
    for item in filter(None, (s.strip() for s in body.split(","))):
        key, sep, value = item.partition("=")
        key = key.strip()
        if not sep or key not in ("k", "a", "b", "c", "m"):
            raise ContractError(f"bad parameter {item!r} in {text!r}")
        try:
            kwargs[key] = int(value)
        except ValueError:
            raise ContractError(f"parameter {key} must be an integer in {text!r}") from None
    return FamilySpec(tag, **kwargs)


class _Builder:
    def __init__(self, k: int, core: int):
        self.k = k
        self.n = core
        self.edges: list[tuple[int, ...]] = []

    def fresh(self, count: int) -> list[int]:
        out = list(range(self.n, self.n + count))
        self.n += count
        return out

    def edge(self, *core: int) -> tuple[int, ...]:
        e = tuple(core) + tuple(self.fresh(self.k - len(core)))
        self.edges.append(e)
        return e

    def pendent(self, at: int, count: int) -> None:
        for _ in range(count):
            self.edge(at)

    def build(self) -> UniformHypergraph:
        return UniformHypergraph(self.k, self.n, tuple(self.edges))


def _u31(k, a, b, c, extra=None) -> UniformHypergraph:
    B = _Builder(k, 3)
    u, v, w = 0, 1, 2
    B.edge(u, v, w)
    B.edge(u, v)
    if extra:
        B.edge(*extra)
    B.pendent(u, a)
    B.pendent(v, b)
    B.pendent(w, c)
    return B.build()


def _u32(k, a, b, c, extra=None) -> UniformHypergraph:
    # U2(a+1, b) with w a pendent vertex of one of u's pendent edges
    B = _Builder(k, 3)
    u, v, w = 0, 1, 2
    B.edge(u, v)
    B.edge(u, v)
    B.edge(u, w)
    if extra:
        B.edge(*extra)
    B.pendent(u, a)
    B.pendent(v, b)
    B.pendent(w, c)
    return B.build()


def _b31(k, a, b, c, t_edges=0) -> UniformHypergraph:
    B = _Builder(k, 4 if t_edges else 3)
    u, v, w = 0, 1, 2
    B.edge(u, v, w)
    if t_edges:
        B.edge(u, v, w, 3)
        B.pendent(3, t_edges)
    else:
        B.edge(u, v, w)
    B.pendent(u, a)
    B.pendent(v, b)
    B.pendent(w, c)
    return B.build()


def _graph(spec: FamilySpec) -> Multigraph:
    tag, m = spec.tag, spec.m
    if tag == "Gab":
        edges = [(0, 1), (0, 1)] + [(0, 2 + i) for i in range(spec.a)] + [(1, 2 + spec.a + i) for i in range(spec.b)]
        return Multigraph.from_edges(m, edges)
    if tag == "Mab":
        edges = [(0, 1)] * 3 + [(0, 2 + i) for i in range(spec.a)] + [(1, 2 + spec.a + i) for i in range(spec.b)]
        return Multigraph.from_edges(m - 1, edges)
    if tag == "G1":
        edges = [(0, 1), (0, 2), (1, 2)] + [(0, 3 + i) for i in range(m - 3)]
        return Multigraph.from_edges(m, edges)
    if tag == "G2":
        # 2-cycle u-v, edge u-w, m-3 pendent edges at w
        edges = [(0, 1), (0, 1), (0, 2)] + [(2, 3 + i) for i in range(m - 3)]
        return Multigraph.from_edges(m, edges)
    if tag == "G3":
        # 2-cycle u-v, path u-w-x, m-4 pendent edges at u
        edges = [(0, 1), (0, 1), (0, 2), (2, 3)] + [(0, 4 + i) for i in range(m - 4)]
        return Multigraph.from_edges(m, edges)
    raise ContractError(f"{tag} is not a multigraph family")


def source_graph(spec: FamilySpec) -> Optional[Multigraph]:
    """The multigraph whose kth power a hypergraph family is, if any."""
    mapping = {
        "U2": ("Gab", dict(a=spec.a, b=spec.b)),
        "B2": ("Mab", dict(a=spec.a, b=spec.b)),
        "G1_power": ("G1", dict(m=spec.m)),
        "G2_power": ("G2", dict(m=spec.m)),
        "G3_power": ("G3", dict(m=spec.m)),
    }
    if spec.tag == "star_power":
        return Multigraph.from_edges(spec.m + 1, [(0, i + 1) for i in range(spec.m)])
    if spec.tag not in mapping:
        return None
    tag, kw = mapping[spec.tag]
    return _graph(FamilySpec(tag, **kw))


def generate(spec: Union[FamilySpec, str]) -> Union[UniformHypergraph, Multigraph]:
    if isinstance(spec, str):
        spec = parse_spec(spec)
    if not spec.is_hypergraph:
        return _graph(spec)
    k, a, b, c, tag = spec.k, spec.a, spec.b, spec.c, spec.tag
    if tag == "U2":
        B = _Builder(k, 2)
        B.edge(0, 1)
        B.edge(0, 1)
        B.pendent(0, a)
        B.pendent(1, b)
        return B.build()
    if tag == "B2":
        B = _Builder(k, 2)
        for _ in range(3):
            B.edge(0, 1)
        B.pendent(0, a)
        B.pendent(1, b)
        return B.build()
    if tag == "U31":
        return _u31(k, a, b, c)
    if tag == "U32":
        return _u32(k, a, b, c)
    if tag == "B3_1":
        return _b31(k, a, b, c)
    if tag == "B3_2":
        return _u31(k, a, b, c, extra=(0, 1))
    if tag == "B3_3":
        return _u31(k, a, b, c, extra=(1, 2))
    if tag == "B3_4":
        return _u32(k, a, b, c, extra=(0, 1))
    if tag == "B3_5":
        return _u32(k, a, b, c, extra=(0, 2))
    if tag == "B3_6":
        return _u32(k, a, b, c, extra=(1, 2))
    if tag == "B4":
        return _b31(k, 0, 0, 0, t_edges=spec.m - 2)
    return kth_power(source_graph(spec), k)


def _splits(total: int, parts: int) -> Iterator[tuple[int, ...]]:
    """Nonnegative compositions of ``total``, first part descending."""
    if parts == 1:
        yield (total,)
        return
    for first in range(total, -1, -1):
        for rest in _splits(total - first, parts - 1):
            yield (first,) + rest


def family_specs(tag: str, k: int, m: int, canonical_only: bool = False) -> list[FamilySpec]:
    """Every valid spec of ``tag`` with uniformity ``k`` and ``m`` edges.

    With ``canonical_only``, parameter tuples related by the family's
    symmetry (``U2(a,b) = U2(b,a)`` and the like) appear once.
    """
    names, offset = _SHAPE[tag]
    if k < _MIN_K.get(tag, 3):
        return []
    if offset is None:
        return [FamilySpec(tag, k=k, m=m)] if m >= _MIN_M.get(tag, 0) else []
    total = m - offset
    if total < 0:
        return []
    out = []
    for params in _splits(total, len(names)):
        kw = dict(zip(names, params))
        if tag in _C_POSITIVE and kw["c"] < 1:
            continue
        if canonical_only and not _is_canonical(tag, kw):
            continue
        out.append(FamilySpec(tag, k=k, **kw))
    return out


def _is_canonical(tag: str, kw: dict) -> bool:
    if tag in ("U2", "B2", "U31", "B3_2"):
        return kw["a"] >= kw["b"]
    if tag == "B3_1":
        return kw["a"] >= kw["b"] >= kw["c"]
    if tag == "B3_3":
        return kw["a"] >= kw["c"]
    return True


UNICYCLIC_POOL_TAGS = ("U2", "U31", "U32", "G1_power", "G2_power", "G3_power")
BICYCLIC_POOL_TAGS = ("B2", "B3_1", "B3_2", "B3_3", "B3_4", "B3_5", "B3_6", "B4")


def candidate_pool(cyclicity: int, k: int, m: int) -> list[tuple[FamilySpec, UniformHypergraph]]:
    """Every named-family instance at ``(k, m)``, one per isomorphism class.

    The earliest tag in the pool order wins when two families coincide
    (``G3_power`` is ``U32(m-4,0;1)``, for instance).
    """
    if cyclicity not in (1, 2):
        raise ContractError("cyclicity must be 1 or 2")
    if m < 5 or k < 3:
        raise ContractError("candidate_pool needs m >= 5 and k >= 3")
    tags = UNICYCLIC_POOL_TAGS if cyclicity == 1 else BICYCLIC_POOL_TAGS
    seen = set()
    pool = []
    for tag in tags:
        for spec in family_specs(tag, k, m, canonical_only=True):
            H = generate(spec)
            key = fingerprint(H)
            if key in seen:
                continue
            seen.add(key)
            pool.append((spec, H))
    return pool


def _degree_profile(H: UniformHypergraph) -> tuple[int, ...]:
    return tuple(sorted(H.degree(v) for v in range(H.n)))


def classify(H: UniformHypergraph) -> Optional[FamilySpec]:
    """The named family ``H`` belongs to, or ``None``.

    Candidates with the same ``k``, ``m`` and cyclic order are generated in
    a fixed order (descending first parameter) and compared by fingerprint;
    the first match is returned.
    """
    rep = analyze(H)
    if rep.component_count != 1:
        return None
    profile = _degree_profile(H)
    key = None
    for tag in HYPER_TAGS:
        if _CYCLIC[tag] != rep.cyclic_order or H.k < _MIN_K.get(tag, 3):
            continue
        for spec in family_specs(tag, H.k, H.m):
            G = generate(spec)
            if G.n != H.n or _degree_profile(G) != profile:
                continue
            if key is None:
                key = fingerprint(H)
            if fingerprint(G) == key:
                return spec
    return None


def all_instances(tags, k: int, m_values) -> Iterator[tuple[FamilySpec, UniformHypergraph]]:
    for tag, m in product(tags, m_values):
        for spec in family_specs(tag, k, m):
            yield spec, generate(spec)
