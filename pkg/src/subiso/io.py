"""Text formats for graphs and witnesses.

Graph files: a header line "p si <n> <m>", then one "e <u> <v>" line per
edge with 1-based endpoints.  Lines starting with "c" are comments.
Witness files: one "v <patternId> <hostId>" line per pattern vertex,
1-based on both sides.
"""

from __future__ import annotations

from .graphs import Embedding, Graph


def format_graph(g: Graph, comment: str | None = None) -> str:
    lines = []
    if comment:
        for part in comment.splitlines():
            lines.append(f"c {part}")
    lines.append(f"p si {g.n} {g.m}")
    for u, v in g.edges:
        lines.append(f"e {u + 1} {v + 1}")
    return "\n".join(lines) + "\n"


def parse_graph(text: str) -> Graph:
    n = None
    declared_m = None
    edges: list[tuple[int, int]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        parts = line.split()
        if parts[0] == "p":
            if n is not None:
                raise ValueError(f"line {lineno}: duplicate problem line")
            if len(parts) != 4 or parts[1] != "si":
                raise ValueError(f"line {lineno}: malformed problem line")
            n, declared_m = int(parts[2]), int(parts[3])
            if n < 0 or declared_m < 0:
                raise ValueError(f"line {lineno}: negative size")
        elif parts[0] == "e":
            if n is None:
                raise ValueError(f"line {lineno}: edge before problem line")
            if len(parts) != 3:
                raise ValueError(f"line {lineno}: malformed edge line")
            u, v = int(parts[1]) - 1, int(parts[2]) - 1
            if u == v:
                raise ValueError(f"line {lineno}: loop")
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"line {lineno}: endpoint out of range")
            edges.append((u, v))
        else:
            raise ValueError(f"line {lineno}: unknown record {parts[0]!r}")
    if n is None:
        raise ValueError("missing problem line")
    if len(edges) != declared_m:
        raise ValueError(f"declared {declared_m} edges, found {len(edges)}")
    key = {(min(u, v), max(u, v)) for u, v in edges}
    if len(key) != len(edges):
        raise ValueError("duplicate edge")
    return Graph(n, edges)


def read_graph(path: str) -> Graph:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_graph(fh.read())


def write_graph(path: str, g: Graph, comment: str | None = None) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(format_graph(g, comment))


def format_witness(e: Embedding) -> str:
    lines = [f"v {u + 1} {v + 1}" for u, v in enumerate(e.mapping)]
    return "\n".join(lines) + "\n"


def parse_witness(text: str) -> Embedding:
    pairs: dict[int, int] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        parts = line.split()
        if parts[0] != "v" or len(parts) != 3:
            raise ValueError(f"line {lineno}: malformed witness line")
        u, v = int(parts[1]) - 1, int(parts[2]) - 1
        if u in pairs:
            raise ValueError(f"line {lineno}: pattern vertex {u + 1} repeated")
        if u < 0 or v < 0:
            raise ValueError(f"line {lineno}: ids are 1-based")
        pairs[u] = v
    if sorted(pairs) != list(range(len(pairs))):
        raise ValueError("witness must cover pattern vertices 1..n")
    return Embedding(tuple(pairs[u] for u in range(len(pairs))))


def write_witness(path: str, e: Embedding) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(format_witness(e))
