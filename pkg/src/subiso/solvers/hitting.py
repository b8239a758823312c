"""Randomized solver for hosts whose 4-vertex paths can all be hit by at
most k vertices.

After guessing which hitting-set vertices the embedding uses and where the
pattern maps onto them, both leftovers decompose into singletons, triangles,
and stars.  Vertices are colored by their adjacency into the mapped roots;
embedding a component leaves behind a color histogram of unused vertices.
A perfect matching of prescribed total histogram in a small auxiliary
multigraph decides the rest, via the randomized exact-weight matcher.  The
answer "no" can be wrong with probability at most 2^-repeats; every "yes"
carries a verified witness.
"""

from __future__ import annotations

import itertools
from collections import Counter

import numpy as np

from ..errors import Budget, ClassViolation, as_budget
from ..graphs import (
    ComponentKind,
    Embedding,
    Graph,
    classify_component,
    components,
    find_path_subgraph,
    induced,
    verify_embedding,
)
from ..matching import (
    ColorHistogram,
    WeightedBipartiteMultigraph,
    achievable_weight_tensor,
    exact_weight_perfect_matching,
)
from ..recognizers import find_p4_hitting_set


def solve_bounded_hitting(
    g: Graph,
    q: Graph,
    k: int,
    rng: np.random.Generator | None = None,
    repeats: int = 8,
    budget: Budget | int | None = None,
) -> Embedding | None:
    """Embedding of q into g, host P4-hitting number at most k.

    Randomized with false negatives only: a returned None on a yes-instance
    happens with probability at most 2^-repeats; every returned Embedding is
    verified.  Raises ClassViolation when no size-k hitting set exists.
    """
    bud = as_budget(budget)
    if rng is None:
        rng = np.random.default_rng(0)
    t_set = find_p4_hitting_set(g, k)
    if t_set is None:
        raise ClassViolation("host P4-hitting number exceeds the parameter")
    if q.n == 0:
        return Embedding(())
    if q.n > g.n:
        return None
    t_list = list(t_set)
    g_comps = components(g, exclude=t_list)
    for comp in g_comps:
        assert _induced_kind(g, comp).tag != "other"
    for r_size in range(len(t_list) + 1):
        for r_tuple in itertools.combinations(t_list, r_size):
            for s_tuple in itertools.permutations(range(q.n), r_size):
                bud.spend()
                emb = _try_guess(g, q, r_tuple, s_tuple, g_comps, rng, repeats)
                if emb is not None:
                    return emb
    return None


def _try_guess(
    g: Graph,
    q: Graph,
    r_tuple: tuple[int, ...],
    s_tuple: tuple[int, ...],
    g_comps: list[list[int]],
    rng: np.random.Generator,
    repeats: int,
) -> Embedding | None:
    roots = len(r_tuple)
    width = 1 << roots
    for a in range(roots):
        for b_i in range(a + 1, roots):
            if q.has_edge(s_tuple[a], s_tuple[b_i]) and not g.has_edge(
                r_tuple[a], r_tuple[b_i]
            ):
                return None
    s_set = set(s_tuple)
    alive = [v not in s_set for v in range(q.n)]
    if find_path_subgraph(q, 4, alive=alive) is not None:
        return None
    g_rest_total = sum(len(c) for c in g_comps)
    if q.n - roots > g_rest_total:
        return None

    image_base = [-1] * q.n
    for i in range(roots):
        image_base[s_tuple[i]] = r_tuple[i]
    if q.n == roots:
        emb = Embedding(tuple(image_base))
        assert verify_embedding(q, g, emb)
        return emb

    col_g = [0] * g.n
    in_t = set()
    for comp in g_comps:
        in_t.update(comp)
    in_t = set(range(g.n)) - in_t  # T itself
    for i, r in enumerate(r_tuple):
        for w in g.adj[r]:
            if w not in in_t:
                col_g[w] |= 1 << i
    col_q = [0] * q.n
    for i, s in enumerate(s_tuple):
        for w in q.adj[s]:
            if w not in s_set:
                col_q[w] |= 1 << i

    q_comps = components(q, exclude=s_tuple)
    singles = [c[0] for c in q_comps if len(c) == 1]
    nonsingle = [c for c in q_comps if len(c) >= 2]
    if len(nonsingle) > len(g_comps):
        return None
    target_total = g_rest_total - sum(len(c) for c in nonsingle)

    b = WeightedBipartiteMultigraph(
        len(g_comps), len(nonsingle), len(g_comps) - len(nonsingle)
    )
    for x, hcomp in enumerate(g_comps):
        for y, pcomp in enumerate(nonsingle):
            for counts, recipe in _leftover_options(
                g, hcomp, q, pcomp, col_g, col_q, width
            ):
                b.add_edge(x, y, ColorHistogram(roots, counts), recipe)
        full = [0] * width
        for v in hcomp:
            full[col_g[v]] += 1
        full_hist = ColorHistogram(roots, tuple(full))
        for z in range(len(nonsingle), len(g_comps)):
            b.add_edge(x, z, full_hist, None)

    single_cols = [col_q[u] for u in singles]
    for _ in range(max(1, repeats)):
        tensor = achievable_weight_tensor(b, rng)
        if tensor is None:
            return None
        for idx in np.argwhere(tensor != 0):
            if int(idx.sum()) != target_total:
                continue
            h_a = tuple(int(v) for v in idx)
            sat = _saturate(single_cols, h_a, width)
            if sat is None:
                continue
            match = exact_weight_perfect_matching(
                b, ColorHistogram(roots, h_a), rng, repeats=4
            )
            if match is None:
                continue
            return _assemble(
                g, q, image_base, b, match, singles, sat, col_g, g_comps, len(nonsingle)
            )
    return None


# ---------------------------------------------------------------------------
# per-component leftover enumeration


def _induced_kind(g: Graph, comp: list[int]) -> ComponentKind:
    # comp is a component of g minus deleted vertices, so shape queries must
    # ignore edges leaving comp
    sub, _ = induced(g, comp)
    return classify_component(sub, list(range(sub.n)))


def _induced_star_center(g: Graph, comp: list[int]) -> int:
    comp_set = set(comp)
    if len(comp) == 2:
        return comp[0]
    for v in comp:
        if sum(1 for w in g.adj[v] if w in comp_set) == len(comp) - 1:
            return v
    raise ValueError("component is not a star")


def _leftover_options(
    g: Graph,
    host_comp: list[int],
    q: Graph,
    pat_comp: list[int],
    col_g: list[int],
    col_q: list[int],
    width: int,
) -> list[tuple[tuple[int, ...], tuple[tuple[int, int], ...]]]:
    """Distinct leftover color histograms from embedding the pattern
    component into the host component, each with one realizing map.

    Host components of order <= 3 are handled by brute force; bigger hosts
    are stars, where the center must carry the pattern center and leaf
    placement is a small transportation problem over color classes.
    """
    if len(pat_comp) > len(host_comp):
        return []
    found: dict[tuple[int, ...], tuple[tuple[int, int], ...]] = {}

    if len(host_comp) <= 3:
        for img in itertools.permutations(host_comp, len(pat_comp)):
            ok = True
            for ui, u in enumerate(pat_comp):
                if col_q[u] & ~col_g[img[ui]]:
                    ok = False
                    break
            if ok:
                for a in range(len(pat_comp)):
                    for b in range(a + 1, len(pat_comp)):
                        if q.has_edge(pat_comp[a], pat_comp[b]) and not g.has_edge(
                            img[a], img[b]
                        ):
                            ok = False
                            break
                    if not ok:
                        break
            if not ok:
                continue
            counts = [0] * width
            used = set(img)
            for v in host_comp:
                if v not in used:
                    counts[col_g[v]] += 1
            key = tuple(counts)
            if key not in found:
                found[key] = tuple(zip(pat_comp, img))
        return sorted(found.items())

    # host is a star with at least 3 leaves
    hc = _induced_star_center(g, host_comp)
    host_leaves = [v for v in host_comp if v != hc]
    pat_kind = _induced_kind(q, pat_comp)
    if pat_kind.tag != "star":
        return []
    pc = _induced_star_center(q, pat_comp)
    pat_leaves = [u for u in pat_comp if u != pc]

    host_classes: dict[int, list[int]] = {}
    for v in host_leaves:
        host_classes.setdefault(col_g[v], []).append(v)
    class_keys = sorted(host_classes)
    caps = [len(host_classes[c]) for c in class_keys]
    leaf_cols = [col_q[u] for u in pat_leaves]
    s = len(pat_leaves)

    def leftover_from(used_per_class: list[int], center_img: int) -> list[int]:
        counts = [0] * width
        for v in host_comp:
            counts[col_g[v]] += 1
        counts[col_g[center_img]] -= 1
        for ci, usedc in enumerate(used_per_class):
            counts[class_keys[ci]] -= usedc
        return counts

    if not col_q[pc] & ~col_g[hc]:
        def rec(ci: int, left: int, acc: list[int]):
            if ci == len(class_keys):
                if left == 0:
                    _try_used(list(acc))
                return
            room_after = sum(caps[ci + 1 :])
            lo = max(0, left - room_after)
            for take in range(lo, min(caps[ci], left) + 1):
                acc.append(take)
                rec(ci + 1, left - take, acc)
                acc.pop()

        def _try_used(used: list[int]):
            packed = {class_keys[ci]: used[ci] for ci in range(len(class_keys))}
            h_vec = [packed.get(c, 0) for c in range(width)]
            assign = _saturate(leaf_cols, tuple(h_vec), width)
            if assign is None:
                return
            counts = leftover_from(used, hc)
            key = tuple(counts)
            if key in found:
                return
            cursor = {c: 0 for c in class_keys}
            pairs = [(pc, hc)]
            for u, cls in zip(pat_leaves, assign):
                v = host_classes[cls][cursor[cls]]
                cursor[cls] += 1
                pairs.append((u, v))
            found[key] = tuple(pairs)

        rec(0, s, [])

    if len(pat_comp) == 2:
        # the flipped embedding of an edge: pattern leaf onto the host center
        pl = pat_leaves[0]
        if not col_q[pl] & ~col_g[hc]:
            for c in class_keys:
                if col_q[pc] & ~c:
                    continue
                w = host_classes[c][0]
                counts = [0] * width
                for v in host_comp:
                    counts[col_g[v]] += 1
                counts[col_g[hc]] -= 1
                counts[c] -= 1
                key = tuple(counts)
                if key not in found:
                    found[key] = ((pc, w), (pl, hc))
    return sorted(found.items())


# ---------------------------------------------------------------------------
# singleton placement and final assembly


def _saturate(
    needs: list[int], caps: tuple[int, ...], width: int
) -> list[int] | None:
    """Assign each singleton color to a color class with spare capacity,
    where class c can take color u iff u is a subset of c.  Augmenting
    search; returns the class per singleton or None."""
    if sum(caps) < len(needs):
        return None
    holders: dict[int, list[int]] = {c: [] for c in range(width)}
    cls_of: dict[int, int] = {}

    def aug(u: int, visited: set[int]) -> bool:
        for c in range(width):
            if needs[u] & ~c or caps[c] == 0 or c in visited:
                continue
            visited.add(c)
            if len(holders[c]) < caps[c]:
                holders[c].append(u)
                cls_of[u] = c
                return True
            for u2 in list(holders[c]):
                if aug(u2, visited):
                    holders[c].remove(u2)
                    holders[c].append(u)
                    cls_of[u] = c
                    return True
        return False

    for u in range(len(needs)):
        if not aug(u, set()):
            return None
    return [cls_of[u] for u in range(len(needs))]


def _assemble(
    g: Graph,
    q: Graph,
    image_base: list[int],
    b: WeightedBipartiteMultigraph,
    match: list[int],
    singles: list[int],
    sat: list[int],
    col_g: list[int],
    g_comps: list[list[int]],
    y_count: int,
) -> Embedding:
    image = list(image_base)
    pool: dict[int, list[int]] = {}
    for ei in match:
        e = b.edges[ei]
        comp = g_comps[e.left]
        if e.right < y_count:
            used = set()
            for qv, gv in e.payload:
                image[qv] = gv
                used.add(gv)
            rest = [v for v in comp if v not in used]
        else:
            rest = comp
        for v in rest:
            pool.setdefault(col_g[v], []).append(v)
    for lst in pool.values():
        lst.sort()
    for u, cls in zip(singles, sat):
        image[u] = pool[cls].pop(0)
    emb = Embedding(tuple(image))
    assert verify_embedding(q, g, emb), "hitting-set witness failed verification"
    return emb
