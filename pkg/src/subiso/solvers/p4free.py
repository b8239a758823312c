"""Near-linear solver for inputs whose components are all singletons,
triangles, or stars (no 4-vertex path anywhere).

Triangles in the pattern must land on host triangles; leftover host
triangles double as 2-leaf stars.  Stars are assigned largest pattern star
first, each to the smallest host star that fits, which an exchange argument
shows loses nothing.  Singletons soak up any leftover host vertices.
"""

from __future__ import annotations

from ..errors import ClassViolation
from ..graphs import Embedding, Graph, classify_component, components, star_center


class _Fenwick:
    """Counting tree over 1..size supporting point updates and the query
    "smallest position >= lo with positive count" in log time."""

    def __init__(self, size: int):
        self.size = size
        self.tree = [0] * (size + 1)

    def add(self, pos: int, delta: int) -> None:
        while pos <= self.size:
            self.tree[pos] += delta
            pos += pos & (-pos)

    def prefix(self, pos: int) -> int:
        s = 0
        while pos > 0:
            s += self.tree[pos]
            pos -= pos & (-pos)
        return s

    def find_at_least(self, lo: int) -> int | None:
        """Smallest position >= lo holding a positive count."""
        skip = self.prefix(lo - 1)
        if self.prefix(self.size) <= skip:
            return None
        # descend to the (skip+1)-th item
        pos = 0
        rem = skip
        mask = 1 << (self.size.bit_length())
        while mask:
            nxt = pos + mask
            if nxt <= self.size and self.tree[nxt] <= rem:
                rem -= self.tree[nxt]
                pos = nxt
            mask >>= 1
        return pos + 1


def _classified(g: Graph, side: str):
    singles: list[list[int]] = []
    triangles: list[list[int]] = []
    stars: list[tuple[int, list[int]]] = []
    for comp in components(g):
        kind = classify_component(g, comp)
        if kind.tag == "singleton":
            singles.append(comp)
        elif kind.tag == "triangle":
            triangles.append(comp)
        elif kind.tag == "star":
            stars.append((kind.leaves, comp))
        else:
            raise ClassViolation(f"{side} graph has a component with a 4-vertex path")
    return singles, triangles, stars


def solve_p4_free(g: Graph, q: Graph) -> Embedding | None:
    """Embed q into g; both must be free of 4-vertex paths.

    Raises ClassViolation when either side has a component that is not a
    singleton, triangle, or star.
    """
    g_singles, g_triangles, g_stars = _classified(g, "host")
    q_singles, q_triangles, q_stars = _classified(q, "pattern")
    if q.n > g.n:
        return None
    if len(q_triangles) > len(g_triangles):
        return None

    image = [-1] * q.n
    for pat, host in zip(q_triangles, g_triangles):
        for pv, hv in zip(pat, host):
            image[pv] = hv

    # surplus host triangles act as stars with 2 leaves
    pool: list[tuple[int, list[int], int]] = []  # (leaves, [center, *leaves], comp id)
    for idx, comp in enumerate(g_triangles[len(q_triangles) :]):
        pool.append((2, comp, idx))
    base = len(pool)
    for idx, (leaves, comp) in enumerate(g_stars):
        center = star_center(g, comp)
        ordered = [center] + [v for v in comp if v != center]
        pool.append((leaves, ordered, base + idx))

    if pool:
        max_leaves = max(p[0] for p in pool)
        fen = _Fenwick(max_leaves)
        buckets: dict[int, list[list[int]]] = {}
        for leaves, ordered, _ in sorted(pool, key=lambda p: p[2], reverse=True):
            fen.add(leaves, 1)
            buckets.setdefault(leaves, []).append(ordered)
    else:
        max_leaves = 0
        fen = _Fenwick(1)
        buckets = {}

    for leaves, comp in sorted(q_stars, key=lambda p: (-p[0], p[1][0])):
        if leaves > max_leaves:
            return None
        hit = fen.find_at_least(leaves)
        if hit is None:
            return None
        fen.add(hit, -1)
        host_comp = buckets[hit].pop()
        center = star_center(q, comp)
        image[center] = host_comp[0]
        spare = host_comp[1:]
        for j, leaf in enumerate(v for v in comp if v != center):
            image[leaf] = spare[j]

    free = sorted(set(range(g.n)) - {v for v in image if v >= 0})
    picks = iter(free)
    for comp in q_singles:
        image[comp[0]] = next(picks)
    return Embedding(tuple(image))
