"""Shared oracles and enumerators for the test suite.

Everything here is deliberately naive: brute force over injections, subsets,
or integer boxes.   Solvers are judged against these, never the other way
around.
"""

from __future__ import annotations

import itertools
import math
from functools import lru_cache

import numpy as np

from subiso.graphs import Graph, components


def naive_embed(g: Graph, q: Graph) -> bool:
    """All-injections subgraph isomorphism check, exponential and exact."""
    if q.n > g.n:
        return False
    for img in itertools.permutations(range(g.n), q.n):
        if all(g.has_edge(img[u], img[v]) for u, v in q.edges):
            return True
    return False


@lru_cache(maxsize=None)
def graphs_upto_iso(n: int) -> tuple[Graph, ...]:
    """All graphs on exactly n vertices, one representative per iso class."""
    pairs = list(itertools.combinations(range(n), 2))
    pair_idx = {p: i for i, p in enumerate(pairs)}
    # sigma[p][b]: where edge slot b lands under permutation p
    sigma = np.array(
        [
            [pair_idx[tuple(sorted((perm[u], perm[v])))] for u, v in pairs]
            for perm in itertools.permutations(range(n))
        ],
        dtype=np.int64,
    ) if pairs else np.zeros((1, 0), dtype=np.int64)
    seen: set[int] = set()
    out: list[Graph] = []
    for bits in range(1 << len(pairs)):
        slots = [b for b in range(len(pairs)) if bits >> b & 1]
        if slots:
            canon = int((1 << sigma[:, slots]).sum(axis=1).min())
        else:
            canon = 0
        if canon in seen:
            continue
        seen.add(canon)
        out.append(Graph(n, [pairs[b] for b in slots]))
    return tuple(out)


def small_graph_catalog(max_n: int) -> list[Graph]:
    out: list[Graph] = []
    for n in range(max_n + 1):
        out.extend(graphs_upto_iso(n))
    return out


def random_graph(rng: np.random.Generator, n: int, p: float) -> Graph:
    edges = [
        (u, v)
        for u in range(n)
        for v in range(u + 1, n)
        if rng.random() < p
    ]
    return Graph(n, edges)


def vi_set_exists(g: Graph, k: int) -> bool:
    """Exhaustive search for a set S, |S| <= k, with all components of g - S
    of order at most k - |S|."""
    for size in range(min(k, g.n) + 1):
        for sep in itertools.combinations(range(g.n), size):
            if all(len(c) <= k - size for c in components(g, exclude=sep)):
                return True
    return False


def min_vi(g: Graph) -> int:
    k = 0
    while not vi_set_exists(g, k):
        k += 1
    return k


def minimal_vi_sets_brute(g: Graph, k: int) -> set[frozenset]:
    """All vi(k) sets having no proper subset that is also a vi(k) set."""
    valid: list[frozenset] = []
    for size in range(min(k, g.n) + 1):
        for sep in itertools.combinations(range(g.n), size):
            if all(len(c) <= k - size for c in components(g, exclude=sep)):
                valid.append(frozenset(sep))
    return {
        s for s in valid
        if not any(t < s for t in valid)
    }


def _has_p4(g: Graph, removed: frozenset) -> bool:
    alive = [v for v in range(g.n) if v not in removed]
    for quad in itertools.permutations(alive, 4):
        a, b, c, d = quad
        if a > d:
            continue
        if g.has_edge(a, b) and g.has_edge(b, c) and g.has_edge(c, d):
            return True
    return False


def hitting_set_exists(g: Graph, k: int) -> bool:
    for size in range(min(k, g.n) + 1):
        for sep in itertools.combinations(range(g.n), size):
            if not _has_p4(g, frozenset(sep)):
                return True
    return False


def min_hitting(g: Graph) -> int:
    k = 0
    while not hitting_set_exists(g, k):
        k += 1
    return k


def path_packing_brute(g: Graph, length: int, count: int) -> bool:
    """Do `count` vertex-disjoint paths on `length` vertices exist?"""
    paths: list[frozenset] = []
    seen: set[frozenset] = set()
    for seq in itertools.permutations(range(g.n), length):
        if seq[0] > seq[-1]:
            continue
        if all(g.has_edge(seq[i], seq[i + 1]) for i in range(length - 1)):
            key = frozenset(seq)
            if key not in seen:
                seen.add(key)
                paths.append(key)

    def pick(start: int, left: int, used: frozenset) -> bool:
        if left == 0:
            return True
        for i in range(start, len(paths)):
            if not paths[i] & used:
                if pick(i + 1, left - 1, used | paths[i]):
                    return True
        return False

    return pick(0, count, frozenset())


def dp_matching_weights(b) -> set[tuple[int, ...]]:
    """All achievable perfect-matching weight vectors of a
    WeightedBipartiteMultigraph, by dynamic programming over column subsets."""
    s = b.left_count
    if s == 0:
        return {()}
    width = 1 << b.edges[0].weight.q if b.edges else 1
    by_left: list[list] = [[] for _ in range(s)]
    for e in b.edges:
        by_left[e.left].append(e)
    frontier: dict[int, set[tuple[int, ...]]] = {0: {(0,) * width}}
    for left in range(s):
        nxt: dict[int, set[tuple[int, ...]]] = {}
        for mask, weights in frontier.items():
            for e in by_left[left]:
                if mask >> e.right & 1:
                    continue
                m2 = mask | 1 << e.right
                bucket = nxt.setdefault(m2, set())
                for w in weights:
                    bucket.add(
                        tuple(a + c for a, c in zip(w, e.weight.counts))
                    )
        frontier = nxt
        if not frontier:
            return set()
    full = (1 << s) - 1
    return frontier.get(full, set())


def random_sat21(rng, n: int):
    """Random formula where every variable occurs twice positive, once
    negative, clause sizes 2 or 3, distinct variables inside a clause."""
    from subiso.reductions import Sat21Formula

    while True:
        pool = [v + 1 for v in range(n) for _ in range(2)]
        pool += [-(v + 1) for v in range(n)]
        t3_max = n
        t3_choices = [t3 for t3 in range(t3_max + 1) if (3 * n - 3 * t3) % 2 == 0]
        t3 = int(rng.choice(t3_choices))
        sizes = [3] * t3 + [2] * ((3 * n - 3 * t3) // 2)
        order = list(rng.permutation(len(pool)))
        pool = [pool[i] for i in order]
        clauses = []
        ok = True
        for size in sizes:
            picked = []
            used_vars = set()
            rest = []
            for lit in pool:
                if len(picked) < size and abs(lit) not in used_vars:
                    picked.append(lit)
                    used_vars.add(abs(lit))
                else:
                    rest.append(lit)
            if len(picked) < size:
                ok = False
                break
            pool = rest
            clauses.append(tuple(picked))
        if not ok or pool:
            continue
        f = Sat21Formula(n, tuple(clauses))
        try:
            f.validate()
        except ValueError:
            continue
        return f


def random_3partition(rng, m: int, b_hi: int = 16):
    """Random instance with m triples; roughly half are solvable.

    Keep b_hi modest: the naive oracle pays dearly for packing long paths
    into long paths on no-instances."""
    from subiso.reductions import ThreePartitionInstance

    while True:
        b = int(rng.integers(8, b_hi))
        lo, hi = b // 4 + 1, (2 * b - 1) // 4
        if hi - lo < 1:
            continue
        vals = [int(rng.integers(lo, hi + 1)) for _ in range(3 * m - 1)]
        last = m * b - sum(vals)
        if not lo <= last <= hi:
            continue
        inst = ThreePartitionInstance(tuple(vals + [last]), b)
        try:
            inst.validate()
        except ValueError:
            continue
        return inst


def random_x3c(rng, n: int, extra_sets: int, plant: bool):
    """Random exact-cover instance over n elements; plant adds a hidden
    perfect cover."""
    from subiso.reductions import X3CInstance

    sets = set()
    if plant:
        perm = list(rng.permutation(n))
        for i in range(0, n, 3):
            sets.add(tuple(sorted(perm[i : i + 3])))
    want = min(n // 3 + extra_sets, math.comb(n, 3))
    while len(sets) < want:
        pick = tuple(sorted(rng.choice(n, size=3, replace=False).tolist()))
        sets.add(pick)
    return X3CInstance(n, tuple(sorted(sets)))
