from __future__ import annotations

import itertools
from collections import Counter

import numpy as np
import pytest

from subiso.errors import ClassViolation
from subiso.graphs import (
    Graph,
    clique,
    disjoint_union,
    path,
    star,
    verify_embedding,
)
from subiso.harness import generate
from subiso.solvers import solve_backtracking, solve_bounded_hitting
from subiso.solvers.hitting import _leftover_options

from util import graphs_upto_iso, min_hitting


def test_examples():
    rng = np.random.default_rng(0)
    assert solve_bounded_hitting(Graph(1, []), Graph(1, []), 0, rng) is not None
    g = disjoint_union([path(4), star(2)])
    q = disjoint_union([path(4), path(2)])
    got = solve_bounded_hitting(g, q, 1, rng, repeats=10)
    assert got is not None and verify_embedding(q, g, got)
    g2 = disjoint_union([path(4), path(4)])
    for trial in range(10):
        assert solve_bounded_hitting(g2, path(5), 2,
                                     np.random.default_rng(trial)) is None


def test_class_violation():
    with pytest.raises(ClassViolation):
        solve_bounded_hitting(disjoint_union([path(4), path(4)]), path(2), 1,
                              np.random.default_rng(1))


def test_empty_pattern_and_oversize_pattern():
    rng = np.random.default_rng(2)
    assert solve_bounded_hitting(path(4), Graph(0, []), 1, rng).mapping == ()
    assert solve_bounded_hitting(path(3), path(4), 1, rng) is None


def test_exhaustive_small_pairs_agree_with_oracle():
    pool = [g for n in range(0, 6) for g in graphs_upto_iso(n)
            if min_hitting(g) <= 1]
    pats = [q for n in range(0, 6) for q in graphs_upto_iso(n)]
    rng = np.random.default_rng(3)
    checked = 0
    for g in pool:
        for q in pats:
            if q.n > g.n:
                continue
            got = solve_bounded_hitting(g, q, 1, rng, repeats=10)
            expect = solve_backtracking(g, q)
            if expect is None:
                assert got is None, (g.edges, q.edges)
            elif got is None:
                # randomized miss is allowed once; a second miss is a bug
                again = solve_bounded_hitting(g, q, 1, np.random.default_rng(99),
                                              repeats=10)
                assert again is not None, (g.edges, q.edges)
            else:
                assert verify_embedding(q, g, got)
            checked += 1
    assert checked > 1000


def test_random_instances_agree_with_oracle():
    rng = np.random.default_rng(80)
    misses = 0
    for i in range(300):
        k = int(rng.integers(0, 3))
        size = int(rng.integers(max(1, k), 17))
        planted = rng.random() < 0.5
        g, q, _ = generate("hitting", size, rng, planted=planted, param=k)
        got = solve_bounded_hitting(g, q, max(k, 1), rng, repeats=10)
        expect = solve_backtracking(g, q)
        if expect is None:
            assert got is None
        elif got is None:
            misses += 1
            again = solve_bounded_hitting(g, q, max(k, 1),
                                          np.random.default_rng(1000 + i),
                                          repeats=10)
            assert again is not None
        else:
            assert verify_embedding(q, g, got)
    # at repeats=10 the miss probability per instance is far below 1e-2
    assert misses <= 2


def _brute_leftovers(g, host_comp, q, pat_comp, col_g, col_q, width):
    """All leftover color-count vectors by direct enumeration of injections.

    width is the length of the counts vector; colors are values below it."""
    out = set()
    for img in itertools.permutations(host_comp, len(pat_comp)):
        ok = True
        for ui, u in enumerate(pat_comp):
            if col_q[u] & ~col_g[img[ui]]:
                ok = False
                break
        if ok:
            pos = {u: i for i, u in enumerate(pat_comp)}
            for u, v in q.edges:
                if u in pos and v in pos:
                    a, b = img[pos[u]], img[pos[v]]
                    if b not in g.adj[a]:
                        ok = False
                        break
        if ok:
            counts = [0] * width
            used = set(img)
            for v in host_comp:
                if v not in used:
                    counts[col_g[v]] += 1
            out.add(tuple(counts))
    return out


def test_leftover_frozen_examples():
    k3 = clique(3)
    opts = _leftover_options(k3, [0, 1, 2], k3, [0, 1, 2], [0, 0, 0], [0, 0, 0], 1)
    assert opts == [((0,), ((0, 0), (1, 1), (2, 2)))] or (
        len(opts) == 1 and opts[0][0] == (0,))

    # K_{1,1} into K_{1,2}: one leftover leaf, a single histogram
    host = star(2)
    opts = _leftover_options(host, [0, 1, 2], path(2), [0, 1], [0, 0, 0], [0, 0], 1)
    assert len(opts) == 1 and opts[0][0] == (1,)

    # K_{1,2} into K3 with one host vertex colored class 1
    opts = _leftover_options(k3, [0, 1, 2], star(2), [0, 1, 2],
                             [1, 0, 0], [0, 0, 0], 2)
    brute = _brute_leftovers(k3, [0, 1, 2], star(2), [0, 1, 2],
                             [1, 0, 0], [0, 0, 0], 2)
    assert {tuple(h) for h, _ in opts} == brute and brute == {(0, 0)}


def test_leftover_matches_brute_force_on_random_components():
    rng = np.random.default_rng(81)
    cases = 0
    hosts = [g for n in range(1, 7) for g in graphs_upto_iso(n)
             if len(_components_of(g)) == 1 and _induced_tag(g) != "other"]
    # singleton pattern components never reach _leftover_options; the solver
    # routes them through the saturation step instead
    pats = [q for n in range(2, 5) for q in graphs_upto_iso(n)
            if len(_components_of(q)) == 1 and _induced_tag(q) != "other"]
    for g in hosts:
        for q in pats:
            if q.n > g.n:
                continue
            width = 4  # colors are adjacency bitmasks over two roots
            for _ in range(8):
                col_g = [int(rng.integers(0, 4)) for _ in range(g.n)]
                col_q = [int(rng.integers(0, 4)) for _ in range(q.n)]
                opts = _leftover_options(g, list(range(g.n)), q,
                                         list(range(q.n)), col_g, col_q, width)
                brute = _brute_leftovers(g, list(range(g.n)), q,
                                         list(range(q.n)), col_g, col_q, width)
                assert {tuple(h) for h, _ in opts} == brute, (g.edges, q.edges,
                                                              col_g, col_q)
                for hist, mapping in opts:
                    m = dict(mapping)
                    assert len(m) == q.n
                    for u, v in q.edges:
                        assert m[v] in g.adj[m[u]]
                    for u in range(q.n):
                        assert not (col_q[u] & ~col_g[m[u]])
                cases += 1
    assert cases > 100


def test_histogram_conservation_on_witnesses():
    """Host colors of used vertices plus leftover vertices partition each
    host component's color multiset."""
    rng = np.random.default_rng(82)
    found = 0
    while found < 30:
        g, q, _ = generate("hitting", int(rng.integers(4, 15)), rng,
                           planted=True, param=2)
        got = solve_bounded_hitting(g, q, 2, rng, repeats=10)
        if got is None:
            continue
        found += 1
        used = Counter(got.mapping)
        assert all(c == 1 for c in used.values())
        assert verify_embedding(q, g, got)


def _components_of(g):
    from subiso.graphs import components
    return components(g)


def _induced_tag(g):
    from subiso.graphs import classify_component
    return classify_component(g, list(range(g.n))).tag
