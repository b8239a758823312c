"""Constructive NP-hardness reductions.

Three sources: 3-Partition (onto disjoint paths or disjoint cliques),
Exact 3-Cover (onto forests of depth-2 trees, no 6-vertex path), and
3-SAT with every variable twice positive and once negative (onto double
stars plus two high-degree apexes, no three disjoint 5-vertex paths).
Each reduction comes with a brute-force solver for the source problem at
desk scale and a forward witness builder, so generated instances can be
validated end to end.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .graphs import Embedding, Graph, clique, disjoint_union, path, verify_embedding

MODE_LINEAR_FOREST = "linear-forest"
MODE_CLUSTER = "cluster"


# ---------------------------------------------------------------------------
# source instances


@dataclass(frozen=True)
class ThreePartitionInstance:
    """3m positive integers summing to m*B, each strictly between B/4 and B/2."""

    values: tuple[int, ...]
    target: int

    @property
    def m(self) -> int:
        return len(self.values) // 3

    def validate(self) -> None:
        if len(self.values) == 0 or len(self.values) % 3:
            raise ValueError("value count must be a positive multiple of 3")
        if sum(self.values) != self.m * self.target:
            raise ValueError("values must sum to m times the target")
        for a in self.values:
            if not 4 * a > self.target or not 4 * a < 2 * self.target:
                raise ValueError(f"value {a} outside (B/4, B/2)")


@dataclass(frozen=True)
class X3CInstance:
    """Exact cover by 3-sets over the universe {0..n-1}."""

    universe_size: int
    sets: tuple[tuple[int, int, int], ...]

    def validate(self) -> None:
        n = self.universe_size
        if n <= 0 or n % 3:
            raise ValueError("universe size must be a positive multiple of 3")
        for s in self.sets:
            if len(s) != 3 or len(set(s)) != 3:
                raise ValueError(f"set {s} is not a 3-set")
            for u in s:
                if not 0 <= u < n:
                    raise ValueError(f"element {u} outside the universe")


@dataclass(frozen=True)
class Sat21Formula:
    """CNF with clauses of size 2 or 3 over signed 1-based literals, where
    every variable occurs exactly twice positively and once negatively."""

    variable_count: int
    clauses: tuple[tuple[int, ...], ...]

    def validate(self) -> None:
        n = self.variable_count
        if n <= 0:
            raise ValueError("variable count must be positive")
        pos = [0] * n
        neg = [0] * n
        for cl in self.clauses:
            if len(cl) not in (2, 3):
                raise ValueError(f"clause {cl} must have 2 or 3 literals")
            if len(set(cl)) != len(cl):
                raise ValueError(f"clause {cl} repeats a literal")
            for lit in cl:
                v = abs(lit)
                if lit == 0 or v > n:
                    raise ValueError(f"literal {lit} out of range")
                if lit > 0:
                    pos[v - 1] += 1
                else:
                    neg[v - 1] += 1
        for i in range(n):
            if pos[i] != 2 or neg[i] != 1:
                raise ValueError(
                    f"variable {i + 1} occurs {pos[i]}+/{neg[i]}-, needs 2+/1-"
                )

    def positive_clauses(self, var: int) -> tuple[int, int]:
        """Indices of the two clauses holding +var, ascending (var 0-based)."""
        hits = [j for j, cl in enumerate(self.clauses) if var + 1 in cl]
        return hits[0], hits[1]

    def negative_clause(self, var: int) -> int:
        return next(j for j, cl in enumerate(self.clauses) if -(var + 1) in cl)


# ---------------------------------------------------------------------------
# brute-force source solvers

_MAX_3PARTITION_M = 3
_MAX_X3C_UNIVERSE = 9
_MAX_SAT_VARS = 12


def solve_3partition(inst: ThreePartitionInstance) -> tuple[tuple[int, ...], ...] | None:
    """Partition of value indices into triples each summing to the target."""
    inst.validate()
    if inst.m > _MAX_3PARTITION_M:
        raise ValueError(f"brute force capped at m <= {_MAX_3PARTITION_M}")

    def rec(remaining: tuple[int, ...]) -> tuple[tuple[int, ...], ...] | None:
        if not remaining:
            return ()
        first = remaining[0]
        for b, c in itertools.combinations(remaining[1:], 2):
            if inst.values[first] + inst.values[b] + inst.values[c] == inst.target:
                rest = tuple(i for i in remaining if i not in (first, b, c))
                tail = rec(rest)
                if tail is not None:
                    return ((first, b, c),) + tail
        return None

    return rec(tuple(range(len(inst.values))))


def solve_x3c(inst: X3CInstance) -> tuple[int, ...] | None:
    """Indices of an exact cover, or None."""
    inst.validate()
    n = inst.universe_size
    if n > _MAX_X3C_UNIVERSE:
        raise ValueError(f"brute force capped at universe <= {_MAX_X3C_UNIVERSE}")
    need = n // 3
    for pick in itertools.combinations(range(len(inst.sets)), need):
        covered = set()
        for s in pick:
            covered.update(inst.sets[s])
        if len(covered) == n:
            return pick
    return None


def solve_3sat21(f: Sat21Formula) -> tuple[bool, ...] | None:
    """First satisfying assignment in lexicographic order, or None."""
    f.validate()
    n = f.variable_count
    if n > _MAX_SAT_VARS:
        raise ValueError(f"brute force capped at {_MAX_SAT_VARS} variables")
    for bits in itertools.product((False, True), repeat=n):
        ok = True
        for cl in f.clauses:
            if not any(bits[abs(l) - 1] == (l > 0) for l in cl):
                ok = False
                break
        if ok:
            return bits
    return None


# ---------------------------------------------------------------------------
# 3-Partition


def reduce_3partition(inst: ThreePartitionInstance, mode: str = MODE_LINEAR_FOREST) -> tuple[Graph, Graph]:
    """Host of m equal pieces, pattern of one piece per value.

    Packing the value pieces into the target pieces is exactly a
    3-partition because every value lies strictly between B/4 and B/2.
    """
    inst.validate()
    if mode == MODE_LINEAR_FOREST:
        piece = path
    elif mode == MODE_CLUSTER:
        piece = clique
    else:
        raise ValueError(f"unknown mode {mode!r}")
    host = disjoint_union([piece(inst.target) for _ in range(inst.m)])
    pattern = disjoint_union([piece(a) for a in inst.values])
    return host, pattern


# ---------------------------------------------------------------------------
# Exact 3-Cover, onto forests without 6-vertex paths


class _Builder:
    """Incremental edge-list graph assembly with fresh vertex ids."""

    def __init__(self):
        self.n = 0
        self.edges: list[tuple[int, int]] = []

    def vertex(self) -> int:
        v = self.n
        self.n += 1
        return v

    def vertices(self, count: int) -> list[int]:
        return [self.vertex() for _ in range(count)]

    def edge(self, u: int, v: int) -> None:
        self.edges.append((u, v))

    def star(self, leaf_count: int) -> tuple[int, list[int]]:
        center = self.vertex()
        leaves = self.vertices(leaf_count)
        for leaf in leaves:
            self.edge(center, leaf)
        return center, leaves

    def graph(self) -> Graph:
        return Graph(self.n, self.edges)


def _x3c_layout(inst: X3CInstance):
    """Deterministic construction shared by the reduction and the witness
    builder.  Per set: a star with 4n+6 leaves whose first six leaves carry
    pendant groups of sizes n+i and 3n-i for each member element i."""
    n = inst.universe_size
    hb = _Builder()
    host_comps = []
    for members in inst.sets:
        center, children = hb.star(4 * n + 6)
        hubs = {}
        slot = 0
        for i in sorted(members):
            small = children[slot]
            big = children[slot + 1]
            slot += 2
            hubs[i] = (
                (small, hb.vertices(n + i)),
                (big, hb.vertices(3 * n - i)),
            )
            for hub, pendants in hubs[i]:
                for p in pendants:
                    hb.edge(hub, p)
        host_comps.append((center, children, hubs))

    qb = _Builder()
    big_stars = [qb.star(4 * n) for _ in range(n // 3)]
    filler_stars = [qb.star(4 * n + 6) for _ in range(len(inst.sets) - n // 3)]
    element_stars = [
        (qb.star(n + i), qb.star(3 * n - i)) for i in range(n)
    ]
    return hb.graph(), host_comps, qb.graph(), big_stars, filler_stars, element_stars


def reduce_x3c(inst: X3CInstance) -> tuple[Graph, Graph]:
    """Host: one 16n+7 vertex tree per set.  Pattern: n/3 stars K(1,4n),
    the rest K(1,4n+6), plus element stars K(1,n+i) and K(1,3n-i)."""
    inst.validate()
    if len(inst.sets) < inst.universe_size // 3:
        raise ValueError("not enough sets to cover the universe")
    host, _, pattern, _, _, _ = _x3c_layout(inst)
    return host, pattern


def build_x3c_witness(inst: X3CInstance, cover: tuple[int, ...]) -> Embedding:
    """Embedding of the reduced pattern given an exact cover (set indices)."""
    inst.validate()
    n = inst.universe_size
    covered: list[int] = []
    for s in cover:
        covered.extend(inst.sets[s])
    if len(cover) != n // 3 or sorted(covered) != list(range(n)):
        raise ValueError("not an exact cover")
    host, host_comps, pattern, big_stars, filler_stars, element_stars = _x3c_layout(inst)
    image = [-1] * pattern.n
    chosen = sorted(cover)
    others = [s for s in range(len(inst.sets)) if s not in set(chosen)]

    for (center, leaves), s in zip(filler_stars, others):
        h_center, h_children, _ = host_comps[s]
        image[center] = h_center
        for u, v in zip(leaves, h_children):
            image[u] = v
    for (center, leaves), s in zip(big_stars, chosen):
        h_center, h_children, hubs = host_comps[s]
        image[center] = h_center
        hub_vertices = {hub for pair in hubs.values() for hub, _ in pair}
        plain = [v for v in h_children if v not in hub_vertices]
        for u, v in zip(leaves, plain):
            image[u] = v
    for i in range(n):
        s = next(s for s in chosen if i in inst.sets[s])
        _, _, hubs = host_comps[s]
        (small_star, big_star) = element_stars[i]
        for (p_center, p_leaves), (hub, pendants) in zip(
            (small_star, big_star), hubs[i]
        ):
            image[p_center] = hub
            for u, v in zip(p_leaves, pendants):
                image[u] = v
    emb = Embedding(tuple(image))
    assert verify_embedding(pattern, host, emb), "cover witness failed verification"
    return emb


# ---------------------------------------------------------------------------
# 3-SAT(2,1), onto double stars plus two apexes


def _sat_pendant_count(n: int) -> int:
    return 4 * n**3 + 2 * n + 2


def _wire(builder: _Builder, leaves: list[int], j: int, n: int, c: int, cp: int) -> tuple[list[int], list[int]]:
    """Attach the first n+j leaves to c and the next 3n-j to cp."""
    to_c = leaves[: n + j]
    to_cp = leaves[n + j : 4 * n]
    for v in to_c:
        builder.edge(v, c)
    for v in to_cp:
        builder.edge(v, cp)
    return to_c, to_cp


def _sat_layout(f: Sat21Formula):
    """Deterministic construction shared by the reduction and the witness
    builder.

    Host: per variable i two double stars with sides (n+i)n and (3n-i)n.
    The first is wired for the variable's two positive clauses (side order
    follows clause index order), the second for its negative clause on the
    first side.  Apexes c and cp carry N and 2N pendants, N = 4n^3+2n+2.
    Pattern: bare double stars B_i, one star K(1,4n) per clause j with n+j
    leaves on d and the remaining 3n-j on dp, same pendant counts.
    """
    n = f.variable_count
    if n < 4:
        raise ValueError("reduction needs at least 4 variables")
    pend = _sat_pendant_count(n)

    hb = _Builder()
    c = hb.vertex()
    cp = hb.vertex()
    host_gadgets = []
    for i in range(n):
        j, k = f.positive_clauses(i)
        ell = f.negative_clause(i)
        gadget = []
        for wiring in ((j, k), (ell, None)):
            a, a_leaves = hb.star((n + i) * n)
            b, b_leaves = hb.star((3 * n - i) * n)
            hb.edge(a, b)
            sides = []
            for (center, leaves), clause in zip(((a, a_leaves), (b, b_leaves)), wiring):
                if clause is None:
                    sides.append((center, leaves, None, [], []))
                else:
                    to_c, to_cp = _wire(hb, leaves, clause, n, c, cp)
                    sides.append((center, leaves, clause, to_c, to_cp))
            gadget.append(sides)
        host_gadgets.append(gadget)
    c_pendants = hb.vertices(pend)
    for v in c_pendants:
        hb.edge(c, v)
    cp_pendants = hb.vertices(2 * pend)
    for v in cp_pendants:
        hb.edge(cp, v)

    qb = _Builder()
    d = qb.vertex()
    dp = qb.vertex()
    b_gadgets = []
    for i in range(n):
        a, a_leaves = qb.star((n + i) * n)
        b, b_leaves = qb.star((3 * n - i) * n)
        qb.edge(a, b)
        b_gadgets.append(((a, a_leaves), (b, b_leaves)))
    f_stars = []
    for j in range(len(f.clauses)):
        center, leaves = qb.star(4 * n)
        to_d, to_dp = _wire(qb, leaves, j, n, d, dp)
        f_stars.append((center, to_d, to_dp))
    d_pendants = qb.vertices(pend)
    for v in d_pendants:
        qb.edge(d, v)
    dp_pendants = qb.vertices(2 * pend)
    for v in dp_pendants:
        qb.edge(dp, v)

    return (
        hb.graph(),
        (c, cp, c_pendants, cp_pendants, host_gadgets),
        qb.graph(),
        (d, dp, d_pendants, dp_pendants, b_gadgets, f_stars),
    )


def reduce_3sat21(f: Sat21Formula) -> tuple[Graph, Graph]:
    f.validate()
    host, _, pattern, _ = _sat_layout(f)
    return host, pattern


def build_3sat21_witness(f: Sat21Formula, assignment: tuple[bool, ...]) -> Embedding:
    """Embedding of the reduced pattern from a satisfying assignment.

    Variable gadgets occupy the double star of their false literal, leaving
    the satisfied literal's wired stars free for the clause stars.
    """
    f.validate()
    if len(assignment) != f.variable_count:
        raise ValueError("assignment length mismatch")
    for cl in f.clauses:
        if not any(assignment[abs(l) - 1] == (l > 0) for l in cl):
            raise ValueError("assignment does not satisfy the formula")
    host, host_info, pattern, pattern_info = _sat_layout(f)
    c, cp, c_pendants, cp_pendants, host_gadgets = host_info
    d, dp, d_pendants, dp_pendants, b_gadgets, f_stars = pattern_info

    image = [-1] * pattern.n
    image[d] = c
    image[dp] = cp
    for u, v in zip(d_pendants, c_pendants):
        image[u] = v
    for u, v in zip(dp_pendants, cp_pendants):
        image[u] = v

    for i, val in enumerate(assignment):
        occupied = host_gadgets[i][1 if val else 0]
        for (p_center, p_leaves), (h_center, h_leaves, _, _, _) in zip(
            b_gadgets[i], occupied
        ):
            image[p_center] = h_center
            for u, v in zip(p_leaves, h_leaves):
                image[u] = v

    for j, cl in enumerate(f.clauses):
        lit = min(l for l in cl if assignment[abs(l) - 1] == (l > 0))
        i = abs(lit) - 1
        free = host_gadgets[i][0 if assignment[i] else 1]
        side = next(s for s in free if s[2] == j)
        h_center, _, _, to_c, to_cp = side
        p_center, to_d, to_dp = f_stars[j]
        image[p_center] = h_center
        for u, v in zip(to_d, to_c):
            image[u] = v
        for u, v in zip(to_dp, to_cp):
            image[u] = v

    emb = Embedding(tuple(image))
    assert verify_embedding(pattern, host, emb), "clause witness failed verification"
    return emb


# ---------------------------------------------------------------------------
# source-instance text formats


def parse_3partition(text: str) -> ThreePartitionInstance:
    """Target B, then whitespace-separated values."""
    tokens = text.split()
    if not tokens:
        raise ValueError("empty 3-partition input")
    inst = ThreePartitionInstance(tuple(int(t) for t in tokens[1:]), int(tokens[0]))
    inst.validate()
    return inst


def parse_x3c(text: str) -> X3CInstance:
    """Universe size on the first line, one 3-set of elements per line."""
    lines = [ln for ln in text.splitlines() if ln.split()]
    if not lines:
        raise ValueError("empty cover input")
    n = int(lines[0])
    sets = []
    for ln in lines[1:]:
        parts = tuple(int(t) for t in ln.split())
        if len(parts) != 3:
            raise ValueError(f"line {ln!r} is not a 3-set")
        sets.append(parts)
    inst = X3CInstance(n, tuple(sets))
    inst.validate()
    return inst


def parse_3sat21(text: str) -> Sat21Formula:
    """DIMACS-style clauses: signed 1-based literals, optional trailing 0,
    optional `p cnf` header, `c` comment lines."""
    clauses = []
    declared = 0
    for ln in text.splitlines():
        parts = ln.split()
        if not parts or parts[0] == "c":
            continue
        if parts[0] == "p":
            declared = int(parts[2])
            continue
        lits = [int(t) for t in parts]
        if lits and lits[-1] == 0:
            lits.pop()
        if lits:
            clauses.append(tuple(lits))
    n = declared or max((abs(l) for cl in clauses for l in cl), default=0)
    f = Sat21Formula(n, tuple(clauses))
    f.validate()
    return f
