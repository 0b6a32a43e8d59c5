"""End-to-end acceptance checks; each test is tagged with its criterion number.

A PASS/FAIL line per criterion is printed in the terminal summary.
"""

import time
from itertools import combinations

import numpy as np
import pytest

from gen import max_component_rho, move_instance, ne_instance, pm_instance, random_multigraph
from oracles import brute_cycle_count, graph_rho

from hyperspec.canon import enumerate_all_connected
from hyperspec.certificates import (
    CERTIFICATE_TAGS,
    CLAIMED_VERDICT,
    MIN_K,
    MIN_M,
    NORMAL,
    bound_from_certificate,
    build_certificate,
    check,
)
from hyperspec.errors import MultiEdgeError
from hyperspec.families import FamilySpec, candidate_pool, generate
from hyperspec.moves import check_perron_hypothesis, move_edges, ne_move, pm_merge
from hyperspec.multigraph import kth_power, power_rho
from hyperspec.tensor import spectral_radius
from hyperspec.verify import oracle_enum, verify_bicyclic

acceptance = pytest.mark.acceptance


def rho(H):
    return spectral_radius(H, tol=1e-10).rho


def report(*parts):
    print(" ".join(str(p) for p in parts))


@acceptance("1", "closed-form anchors U2(m-2,0) and B2(m-3,0)")
def test_closed_form_anchors():
    t0 = time.perf_counter()
    worst = 0.0
    for k in (3, 4, 5):
        for m in range(5, 15):
            u = rho(generate(FamilySpec("U2", k=k, a=m - 2, b=0)))
            b = rho(generate(FamilySpec("B2", k=k, a=m - 3, b=0)))
            du = abs(u - (m + 2) ** (1 / k))
            db = abs(b - (m + 6) ** (1 / k))
            assert du < 1e-6, (k, m, u)
            assert db < 1e-6, (k, m, b)
            worst = max(worst, du, db)
    elapsed = time.perf_counter() - t0
    report("largest deviation", worst, "seconds", round(elapsed, 2))
    assert elapsed < 60


def _unicyclic_top(k, m):
    return [
        FamilySpec("U2", k=k, a=m - 4, b=2),
        FamilySpec("U32", k=k, a=m - 4, b=0, c=1),
        FamilySpec("U31", k=k, a=m - 3, b=0, c=1),
        FamilySpec("U2", k=k, a=m - 3, b=1),
        FamilySpec("U2", k=k, a=m - 2, b=0),
    ]


@acceptance("2", "unicyclic five-member chain, equality at m=8")
@pytest.mark.parametrize("k", [3, 4])
def test_unicyclic_ordering(k):
    for m in range(9, 15):
        radii = [rho(generate(s)) for s in _unicyclic_top(k, m)]
        gaps = np.diff(radii)
        report(f"k={k} m={m} smallest gap", gaps.min())
        assert np.all(gaps > 1e-8), (m, radii)
    low, high = _unicyclic_top(k, 8)[:2]
    diff = abs(rho(generate(low)) - rho(generate(high)))
    report(f"k={k} m=8 |rho(U2(4,2)) - rho(U32(4,0;1))| =", diff)
    assert diff < 1e-8


@acceptance("3", "bicyclic ordering at k=4 with certificate equality")
def test_bicyclic_ordering():
    k = 4
    for m in range(5, 13):
        top = rho(generate(FamilySpec("B2", k=k, a=m - 3, b=0)))
        twin_H = generate(FamilySpec("B3_1", k=k, a=m - 2, b=0, c=0))
        twin = rho(twin_H)
        assert abs(twin - top) < 1e-8, m
        built = build_certificate("B31-normal", m, k)
        cert = check(*built)
        assert cert.verdict == NORMAL and cert.consistent
        exact = bound_from_certificate(cert, k).value
        assert abs(exact - top) < 1e-8, m
        second = rho(generate(FamilySpec("B2", k=k, a=m - 4, b=1)))
        assert top - second > 1e-8, m
        others = [rho(H) for spec, H in candidate_pool(2, k, m)
                  if str(spec) not in {f"B2:k=4,a={m - 3},b=0", f"B2:k=4,a={m - 4},b=1", f"B3_1:k=4,a={m - 2},b=0,c=0"}]
        assert second - max(others) > 1e-8, m
        rep = verify_bicyclic(k, m)
        assert rep.ok
        report(f"m={m} top={top:.12f} twin-top={twin - top:+.1e} cert-top={exact - top:+.1e} "
               f"second gap={top - second:.3e} rest gap={second - max(others):.3e} ({len(others)} others)")


@acceptance("4", "certificate verdicts and bound soundness for m up to 20")
def test_certificate_soundness():
    count = 0
    tightest = None
    for tag in CERTIFICATE_TAGS:
        for k in (3, 4, 5):
            if k < MIN_K[tag]:
                continue
            for m in range(MIN_M[tag], 21):
                for a in ((0, 1) if tag == "U31-subnormal" else (0,)):
                    built = build_certificate(tag, m, k, a)
                    cert = check(*built)
                    assert cert.verdict == CLAIMED_VERDICT[tag], (tag, k, m, a)
                    assert cert.consistent, (tag, k, m, a)
                    bound = bound_from_certificate(cert, k)
                    r = rho(built.hypergraph)
                    if bound.kind == "exact":
                        assert abs(bound.value - r) < 1e-8, (tag, k, m)
                    else:
                        margin = bound.value - r
                        assert margin > 1e-9, (tag, k, m, a, margin)
                        if tightest is None or margin < tightest[0]:
                            tightest = (margin, tag, k, m, a)
                    count += 1
    report(count, "certificates; tightest strict margin", tightest)


def _sample(op, rng, want=200, max_tries=5000):
    gaps, skipped, tries = [], 0, 0
    while len(gaps) < want:
        tries += 1
        assert tries <= max_tries, f"{op}: only {len(gaps)} valid samples"
        k = int(rng.choice([3, 4]))
        if op == "move_edges":
            inst = move_instance(rng, k, int(rng.integers(3, 8)))
            if inst is None:
                continue
            H, mv = inst
            assert check_perron_hypothesis(H, mv)
            try:
                H2, _ = move_edges(H, mv)
            except MultiEdgeError:
                skipped += 1
                continue
        elif op == "pm_merge":
            inst = pm_instance(rng, k, int(rng.integers(3, 8)))
            if inst is None:
                continue
            H, u1, u2 = inst
            try:
                H2 = pm_merge(H, u1, u2)
            except MultiEdgeError:
                skipped += 1
                continue
        else:
            H, e, f, v1, u2 = ne_instance(rng, int(rng.choice([3, 4, 5])), int(rng.integers(0, 5)))
            try:
                H2 = ne_move(H, e, f, v1, u2)
            except MultiEdgeError:
                skipped += 1
                continue
        gaps.append(max_component_rho(H2) - rho(H))
    return np.array(gaps), skipped


@acceptance("5", "edge moves strictly increase the radius")
@pytest.mark.parametrize("op", ["move_edges", "pm_merge", "ne_move"])
def test_edge_move_monotonicity(op):
    rng = np.random.default_rng({"move_edges": 101, "pm_merge": 202, "ne_move": 303}[op])
    gaps, skipped = _sample(op, rng)
    report(f"{op}: {len(gaps)} instances, {skipped} multi-edge draws skipped, smallest gain {gaps.min():.3e}")
    assert len(gaps) == 200
    assert np.all(gaps > 1e-9)


def _shared_ok(edges, r):
    """Pairs of vertices in at most r+1 common edges, triples in at most r."""
    verts = sorted(set().union(*map(set, edges)))
    for size, limit in ((2, r + 1), (3, r)):
        for S in combinations(verts, size):
            if sum(set(S) <= set(e) for e in edges) > limit:
                return False
    return True


@acceptance("6", "exhaustive oracle at k=3, m<=4")
def test_oracle_equivalence():
    t0 = time.perf_counter()
    rows = oracle_enum(3, 4)
    bad = [ce for row in rows for ce in row.counterexamples]
    assert bad == []
    total = 0
    for m in range(1, 5):
        for H in enumerate_all_connected(3, m):
            total += 1
            r = m * 2 - H.n + 1
            cycles = brute_cycle_count(H.edges)
            assert (r == 0) == (cycles == 0), H.edges
            assert (r == 1) == (cycles == 1), H.edges
            if r in (1, 2):
                assert _shared_ok(H.edges, r), H.edges
    elapsed = time.perf_counter() - t0
    assert total == sum(row.instances for row in rows)
    report(total, "instances, 0 counterexamples,", round(elapsed, 2), "s")
    assert elapsed < 60


@acceptance("7", "power relation on random multigraphs")
def test_power_relation():
    rng = np.random.default_rng(7)
    worst = 0.0
    for _ in range(100):
        G = random_multigraph(rng, n_max=7, mult_max=3)
        base = graph_rho(G.adjacency)
        for k in (3, 4):
            t = rho(kth_power(G, k))
            assert abs(t - base ** (2 / k)) < 1e-6
            assert abs(power_rho(G, k) - base ** (2 / k)) < 1e-9
            worst = max(worst, abs(t - base ** (2 / k)))
    report("largest |solver - rho(G)^(2/k)|", worst)
