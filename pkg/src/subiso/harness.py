"""Routing, instance generation, and benchmarking around the solvers.

The dispatcher turns an excluded-linear-forest descriptor (a multiset of
path sizes) into a solver choice: tiny forests go to the star solver,
forests packable into one 4-path plus 3-paths go through the vertex
integrity route, forests of short paths go to the randomized hitting-set
solver, and descriptors whose exclusion leaves the class NP-hard fall back
to exhaustive search with a warning.  Descriptors with one or two 5-paths
use the dichotomy: such inputs either exclude enough disjoint 4-paths to
route to the hitting solver, or the instance is reported as the open case.
"""

from __future__ import annotations

import itertools
import json
import os
import time
from collections import Counter
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from .errors import Budget, BudgetExceeded, ClassViolation
from .graphs import (
    Embedding,
    Graph,
    contains_disjoint_p5,
    contains_path_subgraph,
    disjoint_union,
    has_disjoint_path_packing,
    verify_embedding,
)
from .io import format_graph, format_witness, read_graph
from .recognizers import find_p4_hitting_set, find_vi_set, twin_partition
from .solvers import (
    solve_backtracking,
    solve_bounded_diversity,
    solve_bounded_hitting,
    solve_bounded_integrity,
    solve_p4_free,
    solve_p4_plus_small_paths,
)

ALGORITHMS = ("p4free", "p4kp3", "vi", "hitting", "nd", "oracle")


@dataclass
class SolveResult:
    answer: str  # "yes" | "no" | "unknown"
    embedding: Embedding | None = None
    algorithm: str = ""
    parameters: dict = field(default_factory=dict)
    seed: int | None = None
    elapsed_millis: float | None = None
    guesses_explored: int = 0
    note: str = ""

    def to_json_dict(self, with_timing: bool = False) -> dict:
        """JSON form; timing is dropped by default so equal seeds give
        byte-identical reports."""
        return {
            "answer": self.answer,
            "embedding": list(self.embedding.mapping) if self.embedding else None,
            "algorithm": self.algorithm,
            "parameters": dict(sorted(self.parameters.items())),
            "seed": self.seed,
            "elapsedMillis": self.elapsed_millis if with_timing else None,
            "guessesExplored": self.guesses_explored,
            "note": self.note,
        }


def run_algorithm(
    name: str,
    g: Graph,
    q: Graph,
    param: int | None = None,
    seed: int | None = None,
    repeats: int = 8,
    budget: int | None = None,
    note: str = "",
) -> SolveResult:
    """One timed solver call, normalized into a SolveResult.

    ClassViolation propagates (the input broke the route's promise);
    a blown budget becomes answer "unknown".
    """
    if name not in ALGORITHMS:
        raise ValueError(f"unknown algorithm {name!r}")
    needs_param = name in ("p4kp3", "vi", "hitting")
    if needs_param and param is None:
        raise ValueError(f"algorithm {name} needs a parameter")
    bud = Budget(budget)
    params: dict = {}
    if needs_param:
        params["k"] = param
    if name == "hitting":
        params["repeats"] = repeats
    start = time.perf_counter()
    answer = "unknown"
    emb = None
    try:
        if name == "p4free":
            emb = solve_p4_free(g, q)
        elif name == "p4kp3":
            emb = solve_p4_plus_small_paths(g, q, param, bud)
        elif name == "vi":
            emb = solve_bounded_integrity(g, q, param, bud)
        elif name == "hitting":
            rng = np.random.default_rng(0 if seed is None else seed)
            emb = solve_bounded_hitting(g, q, param, rng, repeats, bud)
        elif name == "nd":
            emb = solve_bounded_diversity(g, q, bud)
        else:
            emb = solve_backtracking(g, q, bud)
        answer = "yes" if emb is not None else "no"
        if emb is None and name == "hitting":
            note = (note + "; " if note else "") + (
                f"randomized no, false-negative probability <= 2^-{repeats}"
            )
    except BudgetExceeded:
        answer = "unknown"
        note = (note + "; " if note else "") + "guess budget exhausted"
    elapsed = (time.perf_counter() - start) * 1000.0
    if emb is not None:
        assert verify_embedding(q, g, emb)
    return SolveResult(
        answer=answer,
        embedding=emb,
        algorithm=name,
        parameters=params,
        seed=seed,
        elapsed_millis=elapsed,
        guesses_explored=bud.used,
        note=note,
    )


# ---------------------------------------------------------------------------
# descriptor routing


def _pack_p4_kp3(sizes: list[int]) -> int | None:
    """Least k such that the component sizes pack into one bin of 4 plus k
    bins of 3, or None when impossible."""
    c = Counter(sizes)
    if any(s > 4 for s in c) or c[4] > 1:
        return None
    best = None
    for take3 in range(min(c[3], 1) + 1):
        for take2 in range(min(c[2], 2) + 1):
            for take1 in range(min(c[1], 4) + 1):
                if 4 * c[4] + 3 * take3 + 2 * take2 + take1 > 4:
                    continue
                r3 = c[3] - take3
                r2 = c[2] - take2
                r1 = c[1] - take1
                k = r3 + r2 + -(-max(0, r1 - r2) // 3)
                if best is None or k < best:
                    best = k
    return best


@lru_cache(maxsize=None)
def _bins_of_four(c1: int, c2: int, c3: int) -> int:
    """Fewest capacity-4 bins holding c1 ones, c2 twos, c3 threes."""
    if c1 == c2 == c3 == 0:
        return 0
    best = None
    for x3 in range(min(c3, 1) + 1):
        for x2 in range(min(c2, 2) + 1):
            for x1 in range(min(c1, 4) + 1):
                load = 3 * x3 + 2 * x2 + x1
                if not 1 <= load <= 4:
                    continue
                sub = 1 + _bins_of_four(c1 - x1, c2 - x2, c3 - x3)
                if best is None or sub < best:
                    best = sub
    return best


def _pack_p4_bins(sizes: list[int]) -> int:
    c = Counter(sizes)
    return c[4] + _bins_of_four(c[1], c[2], c[3])


def dispatch(
    g: Graph,
    q: Graph,
    forbidden: list[int],
    seed: int | None = None,
    repeats: int = 8,
    budget: int | None = None,
    oracle_fallback: bool = False,
) -> SolveResult:
    """Route an instance by the excluded linear forest it promises.

    `forbidden` lists the path sizes (vertex counts) of the excluded
    forest's components.
    """
    sizes = sorted(forbidden, reverse=True)
    if not sizes or any(not isinstance(s, int) or s < 1 for s in sizes):
        raise ValueError("descriptor must be a nonempty list of positive path sizes")

    def run(name, param=None, note=""):
        return run_algorithm(
            name, g, q, param=param, seed=seed, repeats=repeats, budget=budget, note=note
        )

    if sizes[0] >= 6:
        return run(
            "oracle",
            note="excluded forest has a 6-vertex path; the class stays NP-hard,"
            " falling back to exhaustive search",
        )
    p5 = sum(1 for s in sizes if s == 5)
    if p5 >= 3:
        return run(
            "oracle",
            note="excluded forest has three 5-vertex paths; the class stays"
            " NP-hard, falling back to exhaustive search",
        )
    rest = [s for s in sizes if s <= 4]

    if p5 == 0:
        if sum(rest) <= 4:
            if contains_path_subgraph(q, 4):
                return SolveResult(
                    answer="no",
                    algorithm="p4free",
                    seed=seed,
                    note="pattern contains a 4-vertex path, host cannot",
                )
            return run("p4free")
        k3 = _pack_p4_kp3(rest)
        if k3 is not None:
            return run("p4kp3", param=k3)
        k4 = _pack_p4_bins(rest)
        return run("hitting", param=4 * (k4 - 1))

    # one or two excluded 5-paths: either both inputs exclude enough
    # disjoint 4-paths to use the hitting-set solver, or the case is open
    kk = _pack_p4_bins(rest) + 5 * p5
    g_p4_bound = not has_disjoint_path_packing(g, 4, kk)
    if g_p4_bound:
        if has_disjoint_path_packing(q, 4, kk):
            return SolveResult(
                answer="no",
                algorithm="hitting",
                seed=seed,
                note=f"pattern has {kk} disjoint 4-paths, host does not",
            )
        return run("hitting", param=4 * (kk - 1))
    if not contains_disjoint_p5(g, p5) and contains_disjoint_p5(q, p5):
        return SolveResult(
            answer="no",
            algorithm="none",
            seed=seed,
            note=f"pattern has {p5} disjoint 5-paths, host does not",
        )
    if oracle_fallback:
        return run("oracle", note="open case resolved by exhaustive search")
    return SolveResult(
        answer="unknown",
        algorithm="none",
        seed=seed,
        note="open case: excluding 5-vertex paths is unresolved",
    )


# ---------------------------------------------------------------------------
# instance generation

GENERATOR_CLASSES = ("p4free", "vi", "hitting", "nd")


def _random_star_forest(rng: np.random.Generator, size: int) -> Graph:
    """Disjoint union of singletons, triangles, and stars totaling size."""
    parts: list[Graph] = []
    remaining = size
    while remaining > 0:
        roll = int(rng.integers(0, 10))
        if roll < 2 or remaining == 1:
            parts.append(Graph(1))
            remaining -= 1
        elif roll < 4 and remaining >= 3:
            parts.append(Graph(3, [(0, 1), (1, 2), (0, 2)]))
            remaining -= 3
        else:
            leaves = int(rng.integers(1, min(remaining - 1, 6) + 1))
            edges = [(0, i) for i in range(1, leaves + 1)]
            parts.append(Graph(leaves + 1, edges))
            remaining -= leaves + 1
    return disjoint_union(parts)


def _random_graph(rng: np.random.Generator, n: int, p: float) -> list[tuple[int, int]]:
    return [
        (u, v)
        for u in range(n)
        for v in range(u + 1, n)
        if rng.random() < p
    ]


def _vi_host(rng: np.random.Generator, size: int, k: int) -> Graph:
    """Separator of s < k vertices plus components of at most k - s."""
    s = int(rng.integers(0, k))
    room = k - s
    edges = list(_random_graph(rng, s, 0.5))
    n = s
    while n < size:
        cn = int(rng.integers(1, min(room, size - n) + 1))
        base = n
        comp_edges = _random_graph(rng, cn, 0.6)
        edges.extend((base + u, base + v) for u, v in comp_edges)
        for v in range(cn):
            for t in range(s):
                if rng.random() < 0.4:
                    edges.append((t, base + v))
        n += cn
    return Graph(n, edges)


def _hitting_host(rng: np.random.Generator, size: int, k: int) -> Graph:
    """A hitting set of at most k vertices over a star forest."""
    t = int(rng.integers(0, k + 1))
    t = min(t, size)
    forest = _random_star_forest(rng, size - t) if size > t else Graph(0)
    edges = [(u + t, v + t) for u, v in forest.edges]
    edges.extend(_random_graph(rng, t, 0.5))
    for v in range(t, t + forest.n):
        for u in range(t):
            if rng.random() < 0.25:
                edges.append((u, v))
    return Graph(t + forest.n, edges)


def _nd_host(rng: np.random.Generator, size: int, k: int) -> Graph:
    """At most k twin classes with random kinds and class adjacency."""
    k = min(k, size)
    cuts = sorted(rng.choice(np.arange(1, size), size=k - 1, replace=False).tolist()) if k > 1 else []
    bounds = [0] + cuts + [size]
    classes = [list(range(bounds[i], bounds[i + 1])) for i in range(k)]
    edges = []
    for i, cls in enumerate(classes):
        if rng.random() < 0.5:
            edges.extend(itertools.combinations(cls, 2))
    for i in range(k):
        for j in range(i + 1, k):
            if rng.random() < 0.5:
                edges.extend((u, v) for u in classes[i] for v in classes[j])
    return Graph(size, edges)


def _planted_pattern(rng: np.random.Generator, g: Graph, induced_only: bool) -> Graph:
    keep = [v for v in range(g.n) if rng.random() < 0.7]
    if not keep:
        keep = [0] if g.n else []
    relabel = {v: i for i, v in enumerate(keep)}
    kept = set(keep)
    edges = []
    for u, v in g.edges:
        if u in kept and v in kept:
            if induced_only or rng.random() < 0.8:
                edges.append((relabel[u], relabel[v]))
    return Graph(len(keep), edges)


def generate(
    kind: str,
    size: int,
    rng: np.random.Generator,
    planted: bool = True,
    param: int | None = None,
) -> tuple[Graph, Graph, bool | None]:
    """Sample a host inside the class, and a pattern either carved from the
    host (expected yes) or drawn independently (expected unknown)."""
    if kind not in GENERATOR_CLASSES:
        raise ValueError(f"unknown generator class {kind!r}")
    if size < 1:
        raise ValueError("size must be positive")
    k = param if param is not None else 3
    if kind == "p4free":
        host = _random_star_forest(rng, size)
    elif kind == "vi":
        host = _vi_host(rng, size, max(2, k))
    elif kind == "hitting":
        host = _hitting_host(rng, size, max(1, k))
    else:
        host = _nd_host(rng, size, max(1, k))
    if planted:
        # twin classes survive vertex deletion but not edge deletion
        pattern = _planted_pattern(rng, host, induced_only=(kind == "nd"))
        return host, pattern, True
    size2 = max(1, size // 2)
    if kind == "p4free":
        pattern = _random_star_forest(rng, size2)
    elif kind == "vi":
        pattern = _vi_host(rng, size2, max(2, k))
    elif kind == "hitting":
        pattern = _hitting_host(rng, size2, max(1, k))
    else:
        pattern = _nd_host(rng, size2, max(1, k))
    return host, pattern, None


def check_class(g: Graph, kind: str, param: int | None = None) -> bool:
    """Membership check used by the CLI and the corpus tools."""
    if kind == "p4free":
        return not contains_path_subgraph(g, 4)
    if kind == "vi":
        return find_vi_set(g, param if param is not None else 3) is not None
    if kind == "hitting":
        return find_p4_hitting_set(g, param if param is not None else 3) is not None
    if kind == "nd":
        return twin_partition(g).width <= (param if param is not None else 4)
    raise ValueError(f"unknown class {kind!r}")


# ---------------------------------------------------------------------------
# corpus benchmarking


def write_corpus_instance(
    directory: str,
    name: str,
    host: Graph,
    pattern: Graph,
    meta: dict | None = None,
) -> None:
    os.makedirs(directory, exist_ok=True)
    with open(os.path.join(directory, f"{name}.host.graph"), "w") as fh:
        fh.write(format_graph(host))
    with open(os.path.join(directory, f"{name}.pattern.graph"), "w") as fh:
        fh.write(format_graph(pattern))
    if meta is not None:
        with open(os.path.join(directory, f"{name}.meta.json"), "w") as fh:
            json.dump(meta, fh, sort_keys=True, indent=1)
            fh.write("\n")


def load_corpus(directory: str) -> list[tuple[str, Graph, Graph, dict]]:
    items = []
    for fname in sorted(os.listdir(directory)):
        if not fname.endswith(".host.graph"):
            continue
        name = fname[: -len(".host.graph")]
        host = read_graph(os.path.join(directory, fname))
        pattern = read_graph(os.path.join(directory, f"{name}.pattern.graph"))
        meta_path = os.path.join(directory, f"{name}.meta.json")
        meta = {}
        if os.path.exists(meta_path):
            with open(meta_path) as fh:
                meta = json.load(fh)
        items.append((name, host, pattern, meta))
    return items


def _parse_algo_spec(spec: str) -> tuple[str, int | None]:
    if ":" in spec:
        name, raw = spec.split(":", 1)
        return name, int(raw)
    return spec, None


def bench(
    corpus_dir: str,
    algo_specs: list[str],
    seed: int = 0,
    repeats: int = 8,
    budget: int | None = None,
) -> dict:
    """Run each algorithm over the corpus.

    Rows are keyed (instance, algorithm); a ClassViolation is recorded on
    the row rather than raised, and such rows do not count toward the
    agreement statistics.  The returned report is deterministic for a fixed
    seed: timing is kept out of it.
    """
    instances = load_corpus(corpus_dir)
    rows = []
    answers: dict[tuple[str, str], str] = {}
    for name, host, pattern, meta in instances:
        for spec in algo_specs:
            algo, param = _parse_algo_spec(spec)
            if param is None:
                param = meta.get("param")
            try:
                res = run_algorithm(
                    algo,
                    host,
                    pattern,
                    param=param,
                    seed=seed,
                    repeats=repeats,
                    budget=budget,
                )
                row = res.to_json_dict()
                row["instance"] = name
                row["algorithm"] = spec
                answers[(name, spec)] = res.answer
            except ClassViolation as exc:
                row = {
                    "instance": name,
                    "algorithm": spec,
                    "answer": "class-violation",
                    "note": str(exc),
                    "embedding": None,
                    "parameters": {"k": param} if param is not None else {},
                    "seed": seed,
                    "elapsedMillis": None,
                    "guessesExplored": 0,
                }
                answers[(name, spec)] = "class-violation"
            rows.append(row)

    agreement = {}
    for a, b in itertools.combinations(algo_specs, 2):
        same = 0
        total = 0
        for name, _, _, _ in instances:
            ra, rb = answers.get((name, a)), answers.get((name, b))
            if "class-violation" in (ra, rb) or "unknown" in (ra, rb):
                continue
            total += 1
            same += ra == rb
        agreement[f"{a}|{b}"] = {
            "compared": total,
            "agreed": same,
        }
    counts: dict[str, Counter] = {}
    for spec in algo_specs:
        counts[spec] = Counter(
            answers[(name, spec)] for name, _, _, _ in instances
        )
    return {
        "corpus": sorted(name for name, _, _, _ in instances),
        "algorithms": list(algo_specs),
        "seed": seed,
        "rows": rows,
        "aggregates": {
            "answers": {spec: dict(sorted(c.items())) for spec, c in counts.items()},
            "agreement": agreement,
        },
    }


def bench_text(report: dict) -> str:
    """Aligned text table for a bench report."""
    lines = []
    header = f"{'instance':<28} {'algorithm':<14} {'answer':<16} guesses"
    lines.append(header)
    lines.append("-" * len(header))
    for row in report["rows"]:
        lines.append(
            f"{row['instance']:<28} {row['algorithm']:<14} {row['answer']:<16}"
            f" {row.get('guessesExplored', 0)}"
        )
    lines.append("")
    for pair, st in report["aggregates"]["agreement"].items():
        lines.append(f"agreement {pair}: {st['agreed']}/{st['compared']}")
    for spec, cnt in report["aggregates"]["answers"].items():
        parts = ", ".join(f"{k}={v}" for k, v in sorted(cnt.items()))
        lines.append(f"answers {spec}: {parts}")
    return "\n".join(lines) + "\n"
