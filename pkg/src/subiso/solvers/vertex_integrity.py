"""FPT solver for bounded vertex integrity, plus the dispatcher for hosts
that exclude a path-plus-small-paths forest.

The search guesses, in order: a minimal separator S of the pattern, an
injection of S into the host separator T, and a set F of host edges the
embedding leaves unused, chosen so that the image R of S separates the host
into pieces of order at most k - |R|.  What remains is a component-matching
problem between the pattern components and the surviving host pieces, solved
as a bounded ILP over component types and realized greedily.

Component types are canonical forms (individualize-and-refine) of the small
components together with their adjacency signature to the root set, so equal
types really are interchangeable.
"""

from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass

from .. import ilp
from ..errors import Budget, ClassViolation, as_budget
from ..graphs import (
    Embedding,
    Graph,
    components,
    contains_path_subgraph,
    verify_embedding,
)
from ..recognizers import enumerate_minimal_vi_sets, find_vi_set
from .p4free import solve_p4_free

# ---------------------------------------------------------------------------
# canonical rooted component types

_canon_cache: dict = {}


def _refine(classes: list[list[int]], masks: tuple[int, ...]) -> list[list[int]]:
    while True:
        class_bits = [sum(1 << v for v in c) for c in classes]
        new: list[list[int]] = []
        for cls in classes:
            if len(cls) == 1:
                new.append(cls)
                continue
            groups: dict[tuple, list[int]] = {}
            for v in cls:
                inv = tuple(bin(masks[v] & cb).count("1") for cb in class_bits)
                groups.setdefault(inv, []).append(v)
            for key in sorted(groups):
                new.append(groups[key])
        if len(new) == len(classes):
            return new
        classes = new


def _homogeneous(classes: list[list[int]], masks: tuple[int, ...]) -> bool:
    """After stable refinement: is every class pair fully joined or fully
    separated (and every class internally complete or empty)?  Then any
    class-respecting vertex order gives the same canonical form."""
    class_bits = [sum(1 << v for v in c) for c in classes]
    for a, ca in enumerate(classes):
        for b in range(a, len(classes)):
            v = ca[0]
            d = bin(masks[v] & class_bits[b]).count("1")
            full = len(classes[b]) - (1 if a == b else 0)
            if d != 0 and d != full:
                return False
    return True


def _emit(order: list[int], masks: tuple[int, ...], sigs: tuple[int, ...]) -> tuple:
    pos = {v: i for i, v in enumerate(order)}
    rows = []
    for v in order:
        row = 0
        rest = masks[v]
        while rest:
            low = rest & (-rest)
            row |= 1 << pos[low.bit_length() - 1]
            rest ^= low
        rows.append(row)
    return (tuple(sigs[v] for v in order), tuple(rows))


def canonical_rooted_type(masks: tuple[int, ...], sigs: tuple[int, ...]) -> tuple:
    """Canonical (signature tuple, adjacency row tuple) of a rooted component.

    masks[i] is the local adjacency bitmask of vertex i, sigs[i] the bitmask
    of root vertices it is adjacent to.  Two components get the same result
    iff some isomorphism between them preserves signatures exactly.
    """
    key = (masks, sigs)
    hit = _canon_cache.get(key)
    if hit is not None:
        return hit
    n = len(masks)
    start: dict[tuple, list[int]] = {}
    for v in range(n):
        start.setdefault((sigs[v], bin(masks[v]).count("1")), []).append(v)
    classes = [start[k] for k in sorted(start)]
    best: tuple | None = None

    def descend(classes: list[list[int]]) -> None:
        nonlocal best
        classes = _refine(classes, masks)
        if all(len(c) == 1 for c in classes) or _homogeneous(classes, masks):
            cand = _emit([v for c in classes for v in c], masks, sigs)
            if best is None or cand < best:
                best = cand
            return
        at = next(i for i, c in enumerate(classes) if len(c) > 1)
        cell = classes[at]
        for v in cell:
            rest = [w for w in cell if w != v]
            descend(classes[:at] + [[v], rest] + classes[at + 1 :])

    descend(classes)
    _canon_cache[key] = best
    return best


@dataclass
class _Comp:
    """One concrete component: global vertex list plus its local form."""

    vertices: tuple[int, ...]
    masks: tuple[int, ...]
    sigs: tuple[int, ...]
    type_key: tuple

    @property
    def order(self) -> int:
        return len(self.vertices)


def _build_comp(vertices: list[int], edges: set[tuple[int, int]], sig_of) -> _Comp:
    vs = tuple(sorted(vertices))
    pos = {v: i for i, v in enumerate(vs)}
    masks = [0] * len(vs)
    for u, v in edges:
        masks[pos[u]] |= 1 << pos[v]
        masks[pos[v]] |= 1 << pos[u]
    masks = tuple(masks)
    sigs = tuple(sig_of(v) for v in vs)
    return _Comp(vs, masks, sigs, canonical_rooted_type(masks, sigs))


def _graph_comp(g: Graph, vertices: list[int], sig_of) -> _Comp:
    member = set(vertices)
    edges = {
        (u, v) for u in vertices for v in g.adj[u] if v in member and u < v
    }
    return _build_comp(vertices, edges, sig_of)


# ---------------------------------------------------------------------------
# joint embedding of small components ("fits")


def _fits_map(
    parts: list[tuple[tuple[int, ...], tuple[int, ...]]],
    host_masks: tuple[int, ...],
    host_sigs: tuple[int, ...],
) -> list[list[int]] | None:
    """Injective edge-preserving map of the disjoint union of parts into the
    host component; a part vertex with root signature A may only land on a
    host vertex whose signature contains A.  Returns per-part local maps."""
    total = sum(len(p[0]) for p in parts)
    h = len(host_masks)
    if total > h:
        return None
    host_deg = [bin(m).count("1") for m in host_masks]
    flat: list[tuple[int, int, int, int]] = []  # (part, local v, sig, mask-of-earlier)
    for pi, (masks, sigs) in enumerate(parts):
        for v in range(len(masks)):
            flat.append((pi, v, sigs[v], masks[v] & ((1 << v) - 1)))
    part_deg = [
        [bin(m).count("1") for m in masks] for masks, _ in parts
    ]
    image: list[list[int]] = [[-1] * len(masks) for masks, _ in parts]
    used = [False] * h

    def place(i: int) -> bool:
        if i == len(flat):
            return True
        pi, v, sig, earlier = flat[i]
        for x in range(h):
            if used[x]:
                continue
            if host_deg[x] < part_deg[pi][v]:
                continue
            if sig & ~host_sigs[x]:
                continue
            ok = True
            rest = earlier
            while rest:
                low = rest & (-rest)
                w = low.bit_length() - 1
                rest ^= low
                if not (host_masks[x] >> image[pi][w]) & 1:
                    ok = False
                    break
            if not ok:
                continue
            image[pi][v] = x
            used[x] = True
            if place(i + 1):
                return True
            image[pi][v] = -1
            used[x] = False
        return False

    if place(0):
        return image
    return None


# ---------------------------------------------------------------------------
# the ILP layer over component types


def _enumerate_multisets(
    sigmas: list[tuple], counts: dict, orders: dict, max_order: int
) -> list[tuple]:
    """All nonempty multisets of pattern types (as sorted tuples of type keys)
    with total order <= max_order and multiplicities within availability."""
    out: list[tuple] = []

    def rec(i: int, room: int, acc: list):
        if i == len(sigmas):
            if acc:
                out.append(tuple(acc))
            return
        sig = sigmas[i]
        top = min(counts[sig], room // orders[sig] if orders[sig] else 0)
        for mult in range(top + 1):
            rec(i + 1, room - mult * orders[sig], acc + [sig] * mult)

    rec(0, max_order, [])
    return out


def _census_feasible(
    census: Counter,
    pat_counts: Counter,
    max_order: int,
    fits_memo: dict,
) -> tuple[list[tuple], list[int]] | None:
    """ILP over (multiset, host type) variables; returns (variables, values)
    of a feasible assignment or None."""
    sigmas = sorted(pat_counts)
    orders = {s: len(s[0]) for s in sigmas}
    if any(pat_counts[s] and orders[s] > max_order for s in sigmas):
        return None
    taus = sorted(census)
    multisets = _enumerate_multisets(sigmas, pat_counts, orders, max_order)
    variables: list[tuple] = []
    for m in multisets:
        for tau in taus:
            if len(tau[0]) < sum(orders[s] for s in m):
                continue
            key = (m, tau)
            hit = fits_memo.get(key)
            if hit is None:
                hit = (
                    _fits_map([(s[1], s[0]) for s in m], tau[1], tau[0])
                    is not None
                )
                fits_memo[key] = hit
            if hit:
                variables.append(key)
    if not variables:
        if sum(pat_counts.values()) == 0:
            return ([], [])
        return None
    constraints: list[tuple[list[int], str, int]] = []
    for tau in taus:
        coeffs = [1 if var[1] == tau else 0 for var in variables]
        constraints.append((coeffs, "<=", census[tau]))
    for sig in sigmas:
        coeffs = [var[0].count(sig) for var in variables]
        constraints.append((coeffs, "==", pat_counts[sig]))
    inst = ilp.ILPInstance(
        var_count=len(variables),
        lower_bounds=[0] * len(variables),
        upper_bounds=[None] * len(variables),
        constraints=constraints,
    )
    values = ilp.feasible(inst)
    if values is None:
        return None
    return (variables, values)


# ---------------------------------------------------------------------------
# main solver


def solve_bounded_integrity(
    g: Graph, q: Graph, k: int, budget: Budget | int | None = None
) -> Embedding | None:
    """Embedding of q into g when both have vertex integrity at most k.

    Raises ClassViolation when either side has no vi(k) separator, and
    BudgetExceeded when the guess enumeration outgrows the budget.
    """
    bud = as_budget(budget)
    t_set = find_vi_set(g, k)
    if t_set is None:
        raise ClassViolation("host vertex integrity exceeds the parameter")
    if q.n == 0:
        return Embedding(())
    min_seps = enumerate_minimal_vi_sets(q, k)
    if not min_seps:
        raise ClassViolation("pattern vertex integrity exceeds the parameter")
    if q.n > g.n:
        return None
    t_list = list(t_set)
    fits_memo: dict = {}

    for s_tuple in min_seps:
        max_order = k - len(s_tuple)
        s_pos = {s: i for i, s in enumerate(s_tuple)}

        def pat_sig(v, s_pos=s_pos):
            out = 0
            for w in q.adj[v]:
                i = s_pos.get(w)
                if i is not None:
                    out |= 1 << i
            return out

        pat_comps = [
            _graph_comp(q, comp, pat_sig) for comp in components(q, exclude=s_tuple)
        ]
        if any(c.order > max_order for c in pat_comps):
            continue
        pat_counts = Counter(c.type_key for c in pat_comps)
        for injection in itertools.permutations(t_list, len(s_tuple)):
            ok = True
            for a in range(len(s_tuple)):
                for b in range(a + 1, len(s_tuple)):
                    if q.has_edge(s_tuple[a], s_tuple[b]) and not g.has_edge(
                        injection[a], injection[b]
                    ):
                        ok = False
                        break
                if not ok:
                    break
            if not ok:
                continue
            emb = _extend(
                g, q, k, s_tuple, injection, t_list, pat_comps, pat_counts, fits_memo, bud
            )
            if emb is not None:
                return emb
    return None


def _extend(
    g: Graph,
    q: Graph,
    k: int,
    s_tuple: tuple[int, ...],
    injection: tuple[int, ...],
    t_list: list[int],
    pat_comps: list[_Comp],
    pat_counts: Counter,
    fits_memo: dict,
    bud: Budget,
) -> Embedding | None:
    r_set = set(injection)
    max_order = k - len(injection)
    r_pos = {r: i for i, r in enumerate(injection)}
    host_sig = [0] * g.n
    for v in range(g.n):
        out = 0
        for w in g.adj[v]:
            i = r_pos.get(w)
            if i is not None:
                out |= 1 << i
        host_sig[v] = out

    def sig_of(v):
        return host_sig[v]

    t_minus_r = [t for t in t_list if t not in r_set]
    tmr_set = set(t_minus_r)
    base_comps = [
        _graph_comp(g, comp, sig_of) for comp in components(g, exclude=t_list)
    ]

    # candidate components that might keep edges into T-R after deletion
    cand: list[tuple[_Comp, list[tuple[int, int]], list[tuple[int, int]]]] = []
    for c in base_comps:
        if c.order > max_order - 1:
            continue
        attach = [
            (u, w) for u in c.vertices for w in g.adj[u] if w in tmr_set
        ]
        if not attach:
            continue
        member = set(c.vertices)
        internal = [
            (u, w) for u in c.vertices for w in g.adj[u] if w in member and u < w
        ]
        cand.append((c, sorted(attach), internal))

    # group candidates by their full-T signature type, so picking the first
    # few of a group loses nothing
    t_pos = {t: i for i, t in enumerate(t_list)}

    def full_t_sig(v):
        out = 0
        for w in g.adj[v]:
            i = t_pos.get(w)
            if i is not None:
                out |= 1 << i
        return out

    groups: dict[tuple, list[int]] = {}
    for ci, (c, _, _) in enumerate(cand):
        vs = c.vertices
        pos = {v: i for i, v in enumerate(vs)}
        masks = [0] * len(vs)
        for i, u in enumerate(vs):
            for w in g.adj[u]:
                j = pos.get(w)
                if j is not None:
                    masks[i] |= 1 << j
        sel_key = canonical_rooted_type(tuple(masks), tuple(full_t_sig(v) for v in vs))
        groups.setdefault(sel_key, []).append(ci)
    group_list = [groups[key] for key in sorted(groups)]

    tr_edges = [
        (u, v) for u, v in itertools.combinations(t_minus_r, 2) if g.has_edge(u, v)
    ]
    failed: set[frozenset] = set()

    for f1_bits in range(1 << len(tr_edges)):
        kept_tr = [e for i, e in enumerate(tr_edges) if not (f1_bits >> i) & 1]
        pieces = _split(t_minus_r, kept_tr)
        if any(len(p) > max_order for p in pieces):
            continue
        size_room = len(pieces) * max_order - len(t_minus_r)
        for chosen in _selections(group_list, cand, size_room):
            keep_options = [
                _nonempty_subsets(cand[ci][1]) for ci in chosen
            ]
            internal_all = [e for ci in chosen for e in cand[ci][2]]
            for kept_attach in itertools.product(*keep_options):
                for f3_bits in range(1 << len(internal_all)):
                    bud.spend()
                    kept_internal = [
                        e for i, e in enumerate(internal_all) if not (f3_bits >> i) & 1
                    ]
                    edges = set(kept_tr) | set(kept_internal)
                    for es in kept_attach:
                        edges.update(es)
                    verts = list(t_minus_r)
                    for ci in chosen:
                        verts.extend(cand[ci][0].vertices)
                    merged = _split(verts, sorted(edges))
                    if any(len(p) > max_order for p in merged):
                        continue
                    merged_comps = []
                    for p in merged:
                        pset = set(p)
                        piece_edges = {e for e in edges if e[0] in pset}
                        merged_comps.append(_build_comp(p, piece_edges, sig_of))
                    chosen_set = {cand[ci][0].vertices for ci in chosen}
                    host_comps = [
                        c for c in base_comps if c.vertices not in chosen_set
                    ] + merged_comps
                    census = Counter(c.type_key for c in host_comps)
                    key = frozenset(census.items())
                    if key in failed:
                        continue
                    plan = _census_feasible(census, pat_counts, max_order, fits_memo)
                    if plan is None:
                        failed.add(key)
                        continue
                    return _realize(
                        g, q, s_tuple, injection, pat_comps, host_comps, plan
                    )
    return None


def _split(vertices: list[int], edges: list[tuple[int, int]]) -> list[list[int]]:
    """Connected components of an explicit small edge list."""
    adj: dict[int, list[int]] = {v: [] for v in vertices}
    for u, v in edges:
        if u in adj and v in adj:
            adj[u].append(v)
            adj[v].append(u)
    seen: set[int] = set()
    out: list[list[int]] = []
    for root in sorted(adj):
        if root in seen:
            continue
        comp = [root]
        seen.add(root)
        stack = [root]
        while stack:
            u = stack.pop()
            for w in adj[u]:
                if w not in seen:
                    seen.add(w)
                    comp.append(w)
                    stack.append(w)
        out.append(sorted(comp))
    return out


def _nonempty_subsets(items: list) -> list[tuple]:
    out = []
    for bits in range(1, 1 << len(items)):
        out.append(tuple(items[i] for i in range(len(items)) if (bits >> i) & 1))
    return out


def _selections(
    group_list: list[list[int]], cand, size_room: int
) -> list[list[int]]:
    """Choose how many components of each attachment type join the kept side;
    within a type the first few stand for any few.

    Each chosen component keeps at least one edge into T-R, and every kept
    edge consumes one slot in some merged piece, so the count of chosen
    components is capped by size_room; their total order is not, as deleted
    internal edges can strand the rest of a component outside the merge.
    """
    out: list[list[int]] = []

    def rec(gi: int, room: int, acc: list[int]):
        if gi == len(group_list):
            out.append(list(acc))
            return
        ids = group_list[gi]
        top = min(len(ids), room)
        for take in range(top + 1):
            rec(gi + 1, room - take, acc + ids[:take])

    rec(0, size_room, [])
    return out


def _realize(
    g: Graph,
    q: Graph,
    s_tuple: tuple[int, ...],
    injection: tuple[int, ...],
    pat_comps: list[_Comp],
    host_comps: list[_Comp],
    plan: tuple[list[tuple], list[int]],
) -> Embedding:
    variables, values = plan
    pat_pool: dict[tuple, list[_Comp]] = {}
    for c in pat_comps:
        pat_pool.setdefault(c.type_key, []).append(c)
    host_pool: dict[tuple, list[_Comp]] = {}
    for c in sorted(host_comps, key=lambda c: c.vertices):
        host_pool.setdefault(c.type_key, []).append(c)
    image = [-1] * q.n
    for i, s in enumerate(s_tuple):
        image[s] = injection[i]
    for (multiset, tau), count in zip(variables, values):
        for _ in range(count):
            host = host_pool[tau].pop(0)
            parts = [pat_pool[sig].pop(0) for sig in multiset]
            local = _fits_map(
                [(p.masks, p.sigs) for p in parts], host.masks, host.sigs
            )
            assert local is not None, "type-level fit must realize"
            for p, lmap in zip(parts, local):
                for v_local, x_local in enumerate(lmap):
                    image[p.vertices[v_local]] = host.vertices[x_local]
    emb = Embedding(tuple(image))
    assert verify_embedding(q, g, emb), "realized witness failed verification"
    return emb


# ---------------------------------------------------------------------------
# dispatcher for hosts excluding P4 plus k small paths


def solve_p4_plus_small_paths(
    g: Graph, q: Graph, k: int, budget: Budget | int | None = None
) -> Embedding | None:
    """SI when the host excludes the disjoint union of a P4 and k P3's as a
    minor.  P4-free cases go to the star solver; otherwise the host's
    vertex integrity is at most 3k+3 and the integrity solver applies.
    """
    host_has_p4 = contains_path_subgraph(g, 4)
    if not host_has_p4:
        if contains_path_subgraph(q, 4):
            return None
        return solve_p4_free(g, q)
    bound = 3 * k + 3
    if find_vi_set(q, bound) is None:
        return None
    return solve_bounded_integrity(g, q, bound, budget)
