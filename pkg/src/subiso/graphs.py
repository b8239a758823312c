"""Core graph type and the small structural toolbox every solver builds on.

Graphs are simple and undirected, with vertices 0..n-1.  Operations that
rename vertices return the relabeling alongside the new graph.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterable, NamedTuple, Sequence


class Graph:
    """Immutable simple undirected graph on vertices 0..n-1."""

    __slots__ = ("n", "edges", "edge_set", "adj")

    def __init__(self, n: int, edges: Iterable[tuple[int, int]] = ()):
        if n < 0:
            raise ValueError("vertex count must be nonnegative")
        norm: list[tuple[int, int]] = []
        for u, v in edges:
            if u == v:
                raise ValueError(f"loop at vertex {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u}, {v}) out of range for n={n}")
            norm.append((u, v) if u < v else (v, u))
        edge_set = frozenset(norm)
        if len(edge_set) != len(norm):
            raise ValueError("duplicate edge")
        self.n = n
        self.edges: tuple[tuple[int, int], ...] = tuple(sorted(edge_set))
        self.edge_set = edge_set
        adj: list[list[int]] = [[] for _ in range(n)]
        for u, v in self.edges:
            adj[u].append(v)
            adj[v].append(u)
        for lst in adj:
            lst.sort()
        self.adj: tuple[tuple[int, ...], ...] = tuple(tuple(lst) for lst in adj)

    @property
    def m(self) -> int:
        return len(self.edges)

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def neighbors(self, v: int) -> tuple[int, ...]:
        return self.adj[v]

    def has_edge(self, u: int, v: int) -> bool:
        return (u, v) in self.edge_set if u < v else (v, u) in self.edge_set

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Graph) and self.n == other.n and self.edge_set == other.edge_set

    def __hash__(self) -> int:
        return hash((self.n, self.edge_set))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m})"


@dataclass(frozen=True)
class Embedding:
    """Map from pattern vertices to host vertices, indexed by pattern id."""

    mapping: tuple[int, ...]

    def __getitem__(self, u: int) -> int:
        return self.mapping[u]

    def __len__(self) -> int:
        return len(self.mapping)


class ComponentKind(NamedTuple):
    tag: str  # "singleton" | "triangle" | "star" | "other"
    leaves: int | None = None


SINGLETON = ComponentKind("singleton")
TRIANGLE = ComponentKind("triangle")
OTHER = ComponentKind("other")


def star_kind(leaves: int) -> ComponentKind:
    return ComponentKind("star", leaves)


# ---------------------------------------------------------------------------
# family constructors


def path(n: int) -> Graph:
    if n < 1:
        raise ValueError("path needs at least one vertex")
    return Graph(n, [(i, i + 1) for i in range(n - 1)])


def clique(n: int) -> Graph:
    if n < 1:
        raise ValueError("clique needs at least one vertex")
    return Graph(n, [(i, j) for i in range(n) for j in range(i + 1, n)])


def star(leaves: int) -> Graph:
    """K_{1,leaves} with the center at vertex 0."""
    if leaves < 1:
        raise ValueError("star needs at least one leaf")
    return Graph(leaves + 1, [(0, i) for i in range(1, leaves + 1)])


def double_star(a: int, b: int) -> Graph:
    """Two adjacent centers (vertices 0 and 1) carrying a and b leaves."""
    if a < 1 or b < 1:
        raise ValueError("double star needs at least one leaf per side")
    edges = [(0, 1)]
    edges += [(0, 2 + i) for i in range(a)]
    edges += [(1, 2 + a + i) for i in range(b)]
    return Graph(2 + a + b, edges)


def disjoint_union(graphs: Sequence[Graph]) -> Graph:
    """Union with vertices relabeled consecutively: part i is shifted by the
    total order of parts 0..i-1."""
    n = 0
    edges: list[tuple[int, int]] = []
    for g in graphs:
        edges.extend((u + n, v + n) for u, v in g.edges)
        n += g.n
    return Graph(n, edges)


def complement(g: Graph) -> Graph:
    edges = [
        (u, v)
        for u in range(g.n)
        for v in range(u + 1, g.n)
        if (u, v) not in g.edge_set
    ]
    return Graph(g.n, edges)


def make_family(desc) -> Graph:
    """Build a graph from a nested descriptor tuple.

    Descriptors: ("path", n), ("clique", n), ("star", leaves),
    ("double_star", a, b), ("union", [desc, ...]), ("complement", desc).
    """
    if not isinstance(desc, tuple) or not desc:
        raise ValueError(f"bad family descriptor: {desc!r}")
    tag = desc[0]
    if tag == "path":
        return path(desc[1])
    if tag == "clique":
        return clique(desc[1])
    if tag == "star":
        return star(desc[1])
    if tag == "double_star":
        return double_star(desc[1], desc[2])
    if tag == "union":
        return disjoint_union([make_family(d) for d in desc[1]])
    if tag == "complement":
        return complement(make_family(desc[1]))
    raise ValueError(f"unknown family tag: {tag!r}")


# ---------------------------------------------------------------------------
# basic structure


def components(g: Graph, exclude: Iterable[int] | None = None) -> list[list[int]]:
    """Connected components as sorted vertex lists, ordered by minimum vertex.

    Vertices in exclude count as deleted; no relabeling happens.
    """
    seen = [False] * g.n
    if exclude is not None:
        for v in exclude:
            seen[v] = True
    out: list[list[int]] = []
    for root in range(g.n):
        if seen[root]:
            continue
        seen[root] = True
        comp = [root]
        queue = deque([root])
        while queue:
            u = queue.popleft()
            for w in g.adj[u]:
                if not seen[w]:
                    seen[w] = True
                    comp.append(w)
                    queue.append(w)
        comp.sort()
        out.append(comp)
    return out


def induced(g: Graph, vertices: Sequence[int]) -> tuple[Graph, list[int]]:
    """Induced subgraph plus the list mapping new ids to old ids."""
    old = sorted(set(vertices))
    pos = {v: i for i, v in enumerate(old)}
    member = set(old)
    edges = [
        (pos[u], pos[v])
        for u, v in g.edges
        if u in member and v in member
    ]
    return Graph(len(old), edges), old


def without_vertices(g: Graph, drop: Iterable[int]) -> tuple[Graph, list[int]]:
    dropped = set(drop)
    return induced(g, [v for v in range(g.n) if v not in dropped])


def classify_component(g: Graph, comp: Sequence[int]) -> ComponentKind:
    """Classify a connected component as singleton, triangle, star, or other.

    K2 counts as a one-leaf star; a triangle is never a star.
    """
    size = len(comp)
    if size == 1:
        return SINGLETON
    degsum = 0
    maxdeg = 0
    for v in comp:
        d = len(g.adj[v])
        degsum += d
        if d > maxdeg:
            maxdeg = d
    m_c = degsum // 2
    if size == 3 and m_c == 3:
        return TRIANGLE
    if m_c == size - 1 and maxdeg == size - 1:
        return star_kind(size - 1)
    return OTHER


def star_center(g: Graph, comp: Sequence[int]) -> int:
    """Center of a star component; for K2 the lower-numbered endpoint."""
    size = len(comp)
    if size == 2:
        return comp[0]
    for v in comp:
        if len(g.adj[v]) == size - 1:
            return v
    raise ValueError("component is not a star")


# ---------------------------------------------------------------------------
# path detection

_PATH_CAP = 8


def find_path_subgraph(
    g: Graph, k: int, alive: Sequence[bool] | None = None
) -> list[int] | None:
    """First path on k vertices in the graph induced by alive, or None.

    DFS over simple paths with depth cap k; acyclic components take a
    diameter shortcut.  Deterministic: lowest-numbered choices first.
    """
    if not 1 <= k <= _PATH_CAP:
        raise ValueError(f"path order must be between 1 and {_PATH_CAP}")
    if alive is None:
        alive = [True] * g.n
    if k == 1:
        for v in range(g.n):
            if alive[v]:
                return [v]
        return None

    seen = [False] * g.n
    for root in range(g.n):
        if seen[root] or not alive[root]:
            continue
        comp = [root]
        seen[root] = True
        queue = deque([root])
        degsum = 0
        while queue:
            u = queue.popleft()
            live = [w for w in g.adj[u] if alive[w]]
            degsum += len(live)
            for w in live:
                if not seen[w]:
                    seen[w] = True
                    comp.append(w)
                    queue.append(w)
        if len(comp) < k:
            continue
        m_c = degsum // 2
        if m_c == len(comp) - 1:
            found = _tree_longest_path(g, comp[0], alive)
            if len(found) >= k:
                return found[:k]
            continue
        found = _dfs_path(g, k, comp, alive)
        if found is not None:
            return found
    return None


def _tree_longest_path(g: Graph, root: int, alive: Sequence[bool]) -> list[int]:
    """Diameter path of the acyclic component containing root."""

    def bfs(src: int) -> tuple[int, dict[int, int]]:
        parent = {src: -1}
        order = [src]
        queue = deque([src])
        while queue:
            u = queue.popleft()
            for w in g.adj[u]:
                if alive[w] and w not in parent:
                    parent[w] = u
                    order.append(w)
                    queue.append(w)
        return order[-1], parent

    far, _ = bfs(root)
    end, parent = bfs(far)
    out = []
    v = end
    while v != -1:
        out.append(v)
        v = parent[v]
    return out


def _dfs_path(
    g: Graph, k: int, comp: Sequence[int], alive: Sequence[bool]
) -> list[int] | None:
    on_path = [False] * g.n
    stack: list[int] = []

    def extend(u: int) -> list[int] | None:
        stack.append(u)
        on_path[u] = True
        if len(stack) == k:
            hit = list(stack)
            stack.pop()
            on_path[u] = False
            return hit
        for w in g.adj[u]:
            if alive[w] and not on_path[w]:
                hit = extend(w)
                if hit is not None:
                    stack.pop()
                    on_path[u] = False
                    return hit
        stack.pop()
        on_path[u] = False
        return None

    for s in comp:
        hit = extend(s)
        if hit is not None:
            return hit
    return None


def contains_path_subgraph(g: Graph, k: int) -> bool:
    """Does g contain a path on k vertices as a subgraph?  Pre: 1 <= k <= 8."""
    return find_path_subgraph(g, k) is not None


# ---------------------------------------------------------------------------
# vertex-disjoint path packings


def contains_disjoint_p5(g: Graph, p: int) -> bool:
    """Does g contain p vertex-disjoint paths on 5 vertices?  Pre: p <= 4."""
    if p > 4:
        raise ValueError("packing count capped at 4")
    return has_disjoint_path_packing(g, 5, p)


def has_disjoint_path_packing(g: Graph, length: int, count: int) -> bool:
    """Exact test for count vertex-disjoint P_length subgraphs.

    Greedy packing gives a quick yes, a hitting-set branch a quick no, and a
    pivot branch settles the remaining gap exactly.
    """
    if count <= 0:
        return True
    stuck = _greedy_pack(g, length, count, None)
    if stuck is None:
        return True
    # Greedy can jam when an early path straddles several cut vertices that
    # later paths each need; retrying with each step steered around one
    # vertex of the jammed configuration usually frees it, and anything the
    # steered run returns is still a genuine packing.
    for v in sorted({u for hit in stuck for u in hit}):
        if _greedy_pack(g, length, count, v) is None:
            return True
    if _path_hitting_set_within(g, length, count - 1, [True] * g.n):
        return False
    return _packing_branch(g, length, count, [True] * g.n)


def _greedy_pack(
    g: Graph, length: int, count: int, avoid: int | None
) -> list[list[int]] | None:
    """Pack paths first-found-first; None on success, else the jammed paths.

    Each step first looks for a path skipping the avoid vertex and only then
    for an arbitrary one, so avoid is spent as late as possible.
    """
    alive = [True] * g.n
    removed: list[list[int]] = []
    while len(removed) < count:
        hit = None
        if avoid is not None and alive[avoid]:
            alive[avoid] = False
            hit = find_path_subgraph(g, length, alive)
            alive[avoid] = True
        if hit is None:
            hit = find_path_subgraph(g, length, alive)
        if hit is None:
            return removed
        for v in hit:
            alive[v] = False
        removed.append(hit)
    return None


def _path_hitting_set_within(
    g: Graph, length: int, budget: int, alive: list[bool]
) -> bool:
    """Can all P_length subgraphs be hit by deleting at most budget vertices?"""
    hit = find_path_subgraph(g, length, alive)
    if hit is None:
        return True
    if budget == 0:
        return False
    for v in hit:
        alive[v] = False
        if _path_hitting_set_within(g, length, budget - 1, alive):
            alive[v] = True
            return True
        alive[v] = True
    return False


def _packing_branch(g: Graph, length: int, count: int, alive: list[bool]) -> bool:
    if count == 0:
        return True
    if sum(alive) < length * count:
        return False
    first = find_path_subgraph(g, length, alive)
    if first is None:
        return False
    pivot = min(first, key=lambda v: (len(g.adj[v]), v))
    # Either no packing element uses the pivot, or one of the paths through
    # the pivot is an element.  A low-degree pivot keeps the path list short.
    alive[pivot] = False
    if _packing_branch(g, length, count, alive):
        alive[pivot] = True
        return True
    alive[pivot] = True
    for path_set in _paths_through(g, length, pivot, alive):
        for v in path_set:
            alive[v] = False
        ok = _packing_branch(g, length, count - 1, alive)
        for v in path_set:
            alive[v] = True
        if ok:
            return True
    return False


def _paths_through(
    g: Graph, length: int, pivot: int, alive: Sequence[bool]
) -> list[frozenset[int]]:
    """Vertex sets of all alive P_length subgraphs containing the pivot."""
    arms: dict[int, list[list[int]]] = {}

    def collect(stature: int) -> list[list[int]]:
        # simple paths of `stature` edges starting at pivot, pivot excluded
        out: list[list[int]] = []
        used = [False] * g.n
        used[pivot] = True
        arm: list[int] = []

        def go(u: int) -> None:
            if len(arm) == stature:
                out.append(list(arm))
                return
            for w in g.adj[u]:
                if alive[w] and not used[w]:
                    used[w] = True
                    arm.append(w)
                    go(w)
                    arm.pop()
                    used[w] = False

        go(pivot)
        return out

    for ell in range(length):
        arms[ell] = collect(ell)
    seen: set[frozenset[int]] = set()
    out: list[frozenset[int]] = []
    for left_len in range(length):
        right_len = length - 1 - left_len
        if left_len > right_len:
            break
        for left in arms[left_len]:
            left_used = set(left)
            for right in arms[right_len]:
                if left_used.isdisjoint(right):
                    key = frozenset([pivot, *left, *right])
                    if len(key) == length and key not in seen:
                        seen.add(key)
                        out.append(key)
    return out


# ---------------------------------------------------------------------------
# embedding verification


def verify_embedding(q: Graph, g: Graph, e: Embedding | Sequence[int]) -> bool:
    """Does e map q injectively into g with every pattern edge preserved?"""
    mapping = e.mapping if isinstance(e, Embedding) else tuple(e)
    if len(mapping) != q.n:
        return False
    for v in mapping:
        if not 0 <= v < g.n:
            return False
    if len(set(mapping)) != q.n:
        return False
    for u, v in q.edges:
        a, b = mapping[u], mapping[v]
        if ((a, b) if a < b else (b, a)) not in g.edge_set:
            return False
    return True
