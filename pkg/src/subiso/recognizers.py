"""Structural recognizers: separators for vertex integrity, P4 hitting sets,
and twin partitions for neighborhood diversity."""

from __future__ import annotations

from dataclasses import dataclass

from .graphs import Graph, components, find_path_subgraph, without_vertices


@dataclass(frozen=True)
class ViCertificate:
    """Witness that deleting `separator` leaves components of order
    at most `bound` - len(separator)."""

    separator: tuple[int, ...]
    bound: int


def is_vi_set(g: Graph, separator, k: int) -> bool:
    """True when separator has size <= k and every component of g minus the
    separator has at most k - |separator| vertices."""
    sep = set(separator)
    if len(sep) > k:
        return False
    allowed = k - len(sep)
    return all(len(c) <= allowed for c in components(g, exclude=sep))


def _bfs_prefix(g: Graph, comp: list[int], size: int) -> list[int]:
    # every prefix of a BFS order is connected, which the branching rule needs
    start = comp[0]
    inside = set(comp)
    order = [start]
    seen = {start}
    i = 0
    while i < len(order) and len(order) < size:
        for w in g.adj[order[i]]:
            if w in inside and w not in seen:
                seen.add(w)
                order.append(w)
                if len(order) == size:
                    break
        i += 1
    return order


def find_vi_set(g: Graph, k: int) -> tuple[int, ...] | None:
    """Some separator certifying vertex integrity <= k, or None.

    Branches on a connected (k - |partial|) + 1 vertex piece of an oversized
    component: any extension of the partial separator must meet it.
    """
    if k < 0:
        return None
    visited: set[frozenset] = set()

    def rec(sep: frozenset) -> tuple[int, ...] | None:
        if sep in visited:
            return None
        visited.add(sep)
        allowed = k - len(sep)
        big = None
        for c in components(g, exclude=sep):
            if len(c) > allowed:
                big = c
                break
        if big is None:
            return tuple(sorted(sep))
        if allowed == 0:
            return None
        for x in _bfs_prefix(g, big, allowed + 1):
            got = rec(sep | {x})
            if got is not None:
                return got
        return None

    return rec(frozenset())


def enumerate_minimal_vi_sets(g: Graph, k: int) -> list[tuple[int, ...]]:
    """All inclusion-minimal separators certifying vertex integrity <= k.

    Every minimal separator survives the same branching as find_vi_set, so
    collecting all leaves and filtering to inclusion-minimal is exact.
    """
    if k < 0:
        return []
    leaves: set[frozenset] = set()
    visited: set[frozenset] = set()

    def rec(sep: frozenset) -> None:
        if sep in visited:
            return
        visited.add(sep)
        allowed = k - len(sep)
        big = None
        for c in components(g, exclude=sep):
            if len(c) > allowed:
                big = c
                break
        if big is None:
            leaves.add(sep)
            return
        if allowed == 0:
            return
        for x in _bfs_prefix(g, big, allowed + 1):
            rec(sep | {x})

    rec(frozenset())
    out = [s for s in leaves if not any(t < s for t in leaves)]
    return sorted((tuple(sorted(s)) for s in out), key=lambda t: (len(t), t))


def find_p4_hitting_set(g: Graph, k: int) -> tuple[int, ...] | None:
    """A set of <= k vertices meeting every 4-vertex path, or None.

    Standard 4-way branching on a found path.
    """
    if k < 0:
        return None

    def rec(removed: frozenset, budget: int) -> tuple[int, ...] | None:
        alive = [v not in removed for v in range(g.n)]
        path = find_path_subgraph(g, 4, alive=alive)
        if path is None:
            return tuple(sorted(removed))
        if budget == 0:
            return None
        for x in path:
            got = rec(removed | {x}, budget - 1)
            if got is not None:
                return got
        return None

    return rec(frozenset(), k)


def kp3_free_vi_bound(g: Graph, k: int) -> ViCertificate | None:
    """Certificate that a graph with no k disjoint 3-vertex paths has vertex
    integrity at most 3k - 1.

    Greedily deletes the vertex sets of 3-vertex paths.  If k deletions are
    possible the promise is violated and the answer is None; otherwise the
    deleted set is the separator and every remaining component has at most
    2 vertices.
    """
    removed: set[int] = set()
    for _ in range(k):
        alive = [v not in removed for v in range(g.n)]
        path = find_path_subgraph(g, 3, alive=alive)
        if path is None:
            cert = ViCertificate(tuple(sorted(removed)), 3 * k - 1)
            assert is_vi_set(g, cert.separator, cert.bound)
            return cert
        removed.update(path)
    return None


# ---------------------------------------------------------------------------
# twin partition


@dataclass(frozen=True)
class TwinPartition:
    """Partition of the vertices into twin classes.

    kinds[i] is "clique" or "independent"; size-1 classes count as
    independent.  adjacency[i][j] says whether classes i and j are fully
    joined; the diagonal mirrors the kind.
    """

    classes: tuple[tuple[int, ...], ...]
    kinds: tuple[str, ...]
    adjacency: tuple[tuple[bool, ...], ...]

    @property
    def width(self) -> int:
        return len(self.classes)


def _are_twins(g: Graph, u: int, v: int) -> bool:
    return set(g.adj[u]) - {v} == set(g.adj[v]) - {u}


def twin_partition(g: Graph) -> TwinPartition:
    parent = list(range(g.n))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for u in range(g.n):
        for v in range(u + 1, g.n):
            if find(u) != find(v) and _are_twins(g, u, v):
                parent[find(v)] = find(u)

    groups: dict[int, list[int]] = {}
    for v in range(g.n):
        groups.setdefault(find(v), []).append(v)
    classes = sorted((tuple(sorted(grp)) for grp in groups.values()), key=lambda c: c[0])

    kinds = []
    for cls in classes:
        if len(cls) == 1:
            kinds.append("independent")
            continue
        inner = sum(1 for i, u in enumerate(cls) for v in cls[i + 1 :] if g.has_edge(u, v))
        full = len(cls) * (len(cls) - 1) // 2
        if inner == full:
            kinds.append("clique")
        elif inner == 0:
            kinds.append("independent")
        else:
            raise AssertionError("twin class neither clique nor independent")

    width = len(classes)
    adjacency = []
    for i in range(width):
        row = []
        for j in range(width):
            if i == j:
                row.append(kinds[i] == "clique")
            else:
                row.append(g.has_edge(classes[i][0], classes[j][0]))
        adjacency.append(tuple(row))
    return TwinPartition(tuple(classes), tuple(kinds), tuple(adjacency))
