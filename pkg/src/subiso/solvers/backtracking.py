"""Plain backtracking search, the reference every specialized solver is
checked against.

Exponential in the worst case; a guess budget turns runaway searches into
BudgetExceeded so callers can report "unknown" instead of hanging.
"""

from __future__ import annotations

from ..errors import Budget, as_budget
from ..graphs import Embedding, Graph, components


def _search_order(q: Graph) -> list[int]:
    """Component by component, largest first; inside a component a BFS from
    the highest-degree vertex, expanding high-degree neighbors first.  Every
    vertex after the first of its component has an already-placed neighbor.
    """
    order: list[int] = []
    for comp in sorted(components(q), key=lambda c: (-len(c), c[0])):
        start = min(comp, key=lambda v: (-q.degree(v), v))
        seen = {start}
        queue = [start]
        i = 0
        while i < len(queue):
            u = queue[i]
            i += 1
            for w in sorted(q.adj[u], key=lambda w: (-q.degree(w), w)):
                if w not in seen:
                    seen.add(w)
                    queue.append(w)
        order.extend(queue)
    return order


def _twin_ids(g: Graph) -> list[int]:
    """Host vertices u, v get the same id when N(u)\\{v} = N(v)\\{u}.

    Swapping two such vertices is an automorphism, so a search node never
    needs to try more than one unused vertex per id.
    """
    ids = [-1] * g.n
    nxt = 0
    for u in range(g.n):
        if ids[u] >= 0:
            continue
        ids[u] = nxt
        nu = set(g.adj[u])
        for v in range(u + 1, g.n):
            if ids[v] >= 0:
                continue
            if nu - {v} == set(g.adj[v]) - {u}:
                ids[v] = nxt
        nxt += 1
    return ids


def solve_backtracking(
    g: Graph, q: Graph, budget: Budget | int | None = None
) -> Embedding | None:
    """Injective edge-preserving map of q into g, or None.

    Raises BudgetExceeded once more vertex placements than the budget allows
    have been tried; exhausting the budget means "unknown", not "no".
    """
    bud = as_budget(budget)
    if q.n > g.n or q.m > g.m:
        return None
    if q.n == 0:
        return Embedding(())
    order = _search_order(q)
    twin = _twin_ids(g)
    image = [-1] * q.n
    used = [False] * g.n

    def place(i: int) -> bool:
        if i == len(order):
            return True
        u = order[i]
        mapped = [w for w in q.adj[u] if image[w] >= 0]
        if mapped:
            anchor = min(mapped, key=lambda w: (g.degree(image[w]), w))
            candidates = g.adj[image[anchor]]
        else:
            candidates = range(g.n)
        need = q.degree(u)
        tried: set[int] = set()
        for x in candidates:
            if used[x] or g.degree(x) < need or twin[x] in tried:
                continue
            if any(not g.has_edge(x, image[w]) for w in mapped):
                continue
            bud.spend()
            tried.add(twin[x])
            image[u] = x
            used[x] = True
            if place(i + 1):
                return True
            image[u] = -1
            used[x] = False
        return False

    if place(0):
        return Embedding(tuple(image))
    return None
