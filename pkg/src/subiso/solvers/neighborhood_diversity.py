"""Solver parameterized by neighborhood diversity of the host.

Twins are interchangeable, so only per-class assignment counts matter.  A
cell (i, j) stands for "some vertices of pattern class i land in host class
j".  Two cells clash when a pattern edge between their classes cannot be
carried by the host classes; within a conflict-free set of cells any
nonnegative assignment with the right row and column sums realizes an
embedding.  The search walks pattern classes one at a time, choosing each
class's set of host classes (at most its size, since every used class takes
a vertex), and closes each complete support with a small transportation
feasibility check.
"""

from __future__ import annotations

from ..errors import Budget, as_budget
from ..graphs import Embedding, Graph, verify_embedding
from ..ilp import ILPInstance, feasible
from ..recognizers import TwinPartition, twin_partition


def solve_bounded_diversity(
    g: Graph, q: Graph, budget: Budget | int | None = None
) -> Embedding | None:
    """Embedding of q into g, exact, driven by the twin partitions."""
    bud = as_budget(budget)
    if q.n == 0:
        return Embedding(())
    if q.n > g.n:
        return None
    tp_g = twin_partition(g)
    tp_q = twin_partition(q)
    r, t = tp_q.width, tp_g.width
    p_sizes = [len(c) for c in tp_q.classes]
    h_sizes = [len(c) for c in tp_g.classes]

    def cap(i: int, j: int) -> int:
        if tp_q.adjacency[i][i] and not tp_g.adjacency[j][j]:
            return 1
        return min(p_sizes[i], h_sizes[j])

    # bit j' of adjmask[j]: a vertex in host class j can carry a pattern edge
    # to a vertex in host class j' (the diagonal needs within-class edges)
    adjmask = [
        sum(1 << j2 for j2 in range(t) if tp_g.adjacency[j][j2]) for j in range(t)
    ]
    base_allowed = [
        sum(1 << j for j in range(t) if cap(i, j) > 0) for i in range(r)
    ]

    rows = sorted(range(r), key=lambda i: p_sizes[i])
    support = [0] * r
    commit = [0] * t  # rows already forced to place a vertex in the column

    def row_options(i: int, allowed: int) -> list[int]:
        """Column sets for pattern class i: nonempty subsets of the allowed
        mask with at most p_i columns, enough capacity, free column slots,
        and pairwise-joined columns when the class is a clique."""
        cols = [j for j in range(t) if (allowed >> j) & 1]
        out = []
        budgeted = p_sizes[i]
        for bits in range(1, 1 << len(cols)):
            if bits.bit_count() > budgeted:
                continue
            mask = 0
            total = 0
            ok = True
            for ci, j in enumerate(cols):
                if not (bits >> ci) & 1:
                    continue
                if commit[j] + 1 > h_sizes[j]:
                    ok = False
                    break
                mask |= 1 << j
                total += min(cap(i, j), h_sizes[j])
            if not ok or total < budgeted:
                continue
            if tp_q.adjacency[i][i]:
                for j in range(t):
                    if (mask >> j) & 1 and (mask & ~(1 << j)) & ~adjmask[j]:
                        ok = False
                        break
            if ok:
                out.append(mask)
        return out

    def place(pos: int, allowed: list[int]) -> Embedding | None:
        if pos == len(rows):
            order = [
                (i, j) for i in range(r) for j in range(t) if (support[i] >> j) & 1
            ]
            lower = [1] * len(order)
            upper = [cap(i, j) for i, j in order]
            cons: list[tuple[list[int], str, int]] = []
            for i in range(r):
                coeffs = [1 if ci == i else 0 for ci, _ in order]
                cons.append((coeffs, "==", p_sizes[i]))
            for j in range(t):
                coeffs = [1 if cj == j else 0 for _, cj in order]
                if any(coeffs):
                    cons.append((coeffs, "<=", h_sizes[j]))
            sol = feasible(ILPInstance(len(order), lower, upper, cons))
            if sol is not None:
                return _realize(g, q, tp_g, tp_q, order, sol)
            return None
        i = rows[pos]
        for mask in row_options(i, allowed[i]):
            bud.spend()
            support[i] = mask
            joined = ~0
            for j in range(t):
                if (mask >> j) & 1:
                    commit[j] += 1
                    joined &= adjmask[j]
            narrowed = list(allowed)
            dead = False
            for pos2 in range(pos + 1, len(rows)):
                i2 = rows[pos2]
                if tp_q.adjacency[i][i2]:
                    narrowed[i2] &= joined
                    if not narrowed[i2]:
                        dead = True
                        break
            got = None if dead else place(pos + 1, narrowed)
            for j in range(t):
                if (mask >> j) & 1:
                    commit[j] -= 1
            support[i] = 0
            if got is not None:
                return got
        return None

    return place(0, base_allowed)


def _realize(
    g: Graph,
    q: Graph,
    tp_g: TwinPartition,
    tp_q: TwinPartition,
    order: list[tuple[int, int]],
    sol: list[int],
) -> Embedding:
    taken = [0] * tp_g.width
    cursor = [0] * tp_q.width
    image = [-1] * q.n
    for (i, j), x in zip(order, sol):
        for _ in range(x):
            u = tp_q.classes[i][cursor[i]]
            cursor[i] += 1
            v = tp_g.classes[j][taken[j]]
            taken[j] += 1
            image[u] = v
    emb = Embedding(tuple(image))
    assert verify_embedding(q, g, emb), "diversity witness failed verification"
    return emb
