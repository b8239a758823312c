"""Color histograms, bipartite matching, and exact-weight perfect matching.

Weights are color histograms: vectors indexed by subsets of a color set
{1..q}, stored at index = subset bitmask.  The exact-weight matcher decides
whether a perfect matching with a prescribed componentwise weight sum exists
by testing a coefficient of a randomized Tutte-style determinant over a
prime field.  A "no" is always exact; a "yes" is certified by rechecking the
extracted matching, so false positives cannot escape.  False negatives occur
with probability at most size/field per attempt.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, NamedTuple, Sequence

import numpy as np

FIELD_PRIME = 999_983


@dataclass(frozen=True)
class ColorHistogram:
    """Counts per color class; index is the bitmask of the subset of {1..q}."""

    q: int
    counts: tuple[int, ...]

    def __post_init__(self):
        if len(self.counts) != 1 << self.q:
            raise ValueError("histogram length must be 2^q")
        if any(c < 0 for c in self.counts):
            raise ValueError("histogram counts must be nonnegative")

    def total(self) -> int:
        return sum(self.counts)

    def dominates(self, other: "ColorHistogram") -> bool:
        return all(a >= b for a, b in zip(self.counts, other.counts))


def zero_histogram(q: int) -> ColorHistogram:
    return ColorHistogram(q, (0,) * (1 << q))


def histogram_of(q: int, colors: Iterable[int]) -> ColorHistogram:
    counts = [0] * (1 << q)
    for c in colors:
        counts[c] += 1
    return ColorHistogram(q, tuple(counts))


def histogram_add(a: ColorHistogram, b: ColorHistogram) -> ColorHistogram:
    if a.q != b.q:
        raise ValueError("mismatched color set sizes")
    return ColorHistogram(a.q, tuple(x + y for x, y in zip(a.counts, b.counts)))


def histogram_sub(a: ColorHistogram, b: ColorHistogram) -> ColorHistogram:
    if a.q != b.q:
        raise ValueError("mismatched color set sizes")
    out = tuple(x - y for x, y in zip(a.counts, b.counts))
    if any(c < 0 for c in out):
        raise ValueError("histogram difference went negative")
    return ColorHistogram(a.q, out)


# ---------------------------------------------------------------------------
# plain maximum matching


def max_bipartite_matching(adjacency: Sequence[Sequence[int]]) -> dict[int, int]:
    """Maximum matching for left vertex i with neighbor lists adjacency[i].

    Augmenting-path search in deterministic order; returns {left: right}.
    """
    match_right: dict[int, int] = {}

    def augment(u: int, banned: set[int]) -> bool:
        for w in adjacency[u]:
            if w in banned:
                continue
            banned.add(w)
            if w not in match_right or augment(match_right[w], banned):
                match_right[w] = u
                return True
        return False

    for u in range(len(adjacency)):
        augment(u, set())
    return {u: w for w, u in match_right.items()}


# ---------------------------------------------------------------------------
# exact-weight perfect matching


class WeightedEdge(NamedTuple):
    left: int
    right: int
    weight: ColorHistogram
    payload: object = None


@dataclass
class WeightedBipartiteMultigraph:
    """Square bipartite multigraph: left side X, right side Y plus dummies Z.

    Right vertices 0..right_count-1 are real, the rest are dummies; the
    matcher treats both alike.  Requires left_count == right_count + dummy_count.
    """

    left_count: int
    right_count: int
    dummy_count: int
    edges: list[WeightedEdge] = field(default_factory=list)

    def validate(self) -> None:
        if self.left_count != self.right_count + self.dummy_count:
            raise ValueError("left side must equal right side plus dummies")
        q = None
        for e in self.edges:
            if not (0 <= e.left < self.left_count):
                raise ValueError("edge left endpoint out of range")
            if not (0 <= e.right < self.right_count + self.dummy_count):
                raise ValueError("edge right endpoint out of range")
            if q is None:
                q = e.weight.q
            elif e.weight.q != q:
                raise ValueError("mixed color set sizes on edges")

    def add_edge(self, left: int, right: int, weight: ColorHistogram, payload=None) -> None:
        self.edges.append(WeightedEdge(left, right, weight, payload))


def _pow_mod_vec(base: np.ndarray, exponent: int, p: int) -> np.ndarray:
    result = np.ones_like(base)
    acc = base % p
    e = exponent
    while e:
        if e & 1:
            result = result * acc % p
        acc = acc * acc % p
        e >>= 1
    return result


def _batched_det_mod(a: np.ndarray, p: int) -> np.ndarray:
    """Determinants of a batch of square matrices over F_p.

    Destroys a.  Gaussian elimination with per-batch partial pivoting.
    """
    batch, s, _ = a.shape
    det = np.ones(batch, dtype=np.int64)
    rows = np.arange(batch)
    for c in range(s):
        block_nz = a[:, c:, c] != 0
        piv = np.argmax(block_nz, axis=1)
        has = block_nz[rows, piv]
        det = np.where(has, det, 0)
        swap = np.nonzero(piv > 0)[0]
        if swap.size:
            src = c + piv[swap]
            tmp = a[swap, c, :].copy()
            a[swap, c, :] = a[swap, src, :]
            a[swap, src, :] = tmp
            det[swap] = (p - det[swap]) % p
        pivval = a[:, c, c].copy()
        det = det * pivval % p
        if c + 1 < s:
            inv = _pow_mod_vec(pivval, p - 2, p)
            factor = a[:, c + 1 :, c] * inv[:, None] % p
            a[:, c + 1 :, c:] = (a[:, c + 1 :, c:] - factor[:, :, None] * a[:, c : c + 1, c:]) % p
    return det % p


@lru_cache(maxsize=64)
def _vandermonde_inv(d: int, p: int) -> np.ndarray:
    """Inverse of the (d x d) Vandermonde matrix on points 0..d-1 over F_p."""
    pts = np.arange(d, dtype=np.int64)
    v = np.empty((d, d), dtype=np.int64)
    col = np.ones(d, dtype=np.int64)
    for j in range(d):
        v[:, j] = col
        col = col * pts % p
    aug = np.concatenate([v, np.eye(d, dtype=np.int64)], axis=1)
    for c in range(d):
        r = c + int(np.argmax(aug[c:, c] != 0))
        if aug[r, c] == 0:
            raise ValueError("singular Vandermonde block")
        if r != c:
            aug[[c, r]] = aug[[r, c]]
        inv = pow(int(aug[c, c]), p - 2, p)
        aug[c] = aug[c] * inv % p
        others = [i for i in range(d) if i != c and aug[i, c] != 0]
        if others:
            aug[others] = (aug[others] - aug[others, c : c + 1] * aug[c]) % p
    out = aug[:, d:]
    out.flags.writeable = False
    return out


def _degree_bounds(b: WeightedBipartiteMultigraph, edge_idx: Sequence[int]) -> list[int] | None:
    """Per-axis degree bound: sum over rows of the max edge weight per axis.

    None when some row has no edge at all (no perfect matching possible).
    """
    if not edge_idx:
        return None
    q = b.edges[edge_idx[0]].weight.q
    width = 1 << q
    per_row: list[list[int] | None] = [None] * b.left_count
    for i in edge_idx:
        e = b.edges[i]
        row = per_row[e.left]
        if row is None:
            per_row[e.left] = list(e.weight.counts)
        else:
            for c in range(width):
                if e.weight.counts[c] > row[c]:
                    row[c] = e.weight.counts[c]
    bounds = [0] * width
    for row in per_row:
        if row is None:
            return None
        for c in range(width):
            bounds[c] += row[c]
    return bounds


def achievable_weight_tensor(
    b: WeightedBipartiteMultigraph,
    rng: np.random.Generator,
    edge_idx: Sequence[int] | None = None,
) -> np.ndarray | None:
    """Coefficient tensor of the randomized matching determinant.

    Entry [w0, w1, ...] is nonzero only if a perfect matching with weight
    (w0, w1, ...) exists; when one exists the entry is nonzero with high
    probability.  Returns None when no perfect matching exists at all.
    """
    b.validate()
    if edge_idx is None:
        edge_idx = range(len(b.edges))
    edge_idx = list(edge_idx)
    s = b.left_count
    if s == 0:
        out = np.zeros((1,), dtype=np.int64)
        out[0] = 1
        return out
    bounds = _degree_bounds(b, edge_idx)
    if bounds is None:
        return None
    dims = [d + 1 for d in bounds]
    width = len(dims)
    total = 1
    for d in dims:
        total *= d
    coords = [idx.reshape(-1) for idx in np.indices(dims)]
    # power tables per axis, up to the largest single-edge exponent
    max_w = [0] * width
    for i in edge_idx:
        for c, w in enumerate(b.edges[i].weight.counts):
            if w > max_w[c]:
                max_w[c] = w
    pow_tab = []
    for c in range(width):
        tab = np.empty((max_w[c] + 1, total), dtype=np.int64)
        tab[0] = 1
        base = coords[c] % FIELD_PRIME
        for w in range(1, max_w[c] + 1):
            tab[w] = tab[w - 1] * base % FIELD_PRIME
        pow_tab.append(tab)
    rho = rng.integers(1, FIELD_PRIME, size=len(edge_idx), dtype=np.int64)
    a = np.zeros((total, s, s), dtype=np.int64)
    for pos, i in enumerate(edge_idx):
        e = b.edges[i]
        val = np.full(total, int(rho[pos]), dtype=np.int64)
        for c, w in enumerate(e.weight.counts):
            if w:
                val = val * pow_tab[c][w] % FIELD_PRIME
        col = a[:, e.left, e.right]
        np.copyto(col, (col + val) % FIELD_PRIME)
    det = _batched_det_mod(a, FIELD_PRIME)
    tensor = det.reshape(dims)
    for axis, d in enumerate(dims):
        if d == 1:
            continue
        vinv = _vandermonde_inv(d, FIELD_PRIME)
        tensor = np.moveaxis(
            np.tensordot(vinv, tensor, axes=([1], [axis])) % FIELD_PRIME, 0, axis
        )
    return tensor


def _weight_feasible(
    b: WeightedBipartiteMultigraph,
    target: ColorHistogram,
    rng: np.random.Generator,
    edge_idx: list[int],
) -> bool:
    if b.left_count == 0:
        return target.total() == 0
    alive = [i for i in edge_idx if target.dominates(b.edges[i].weight)]
    rows = {b.edges[i].left for i in alive}
    cols = {b.edges[i].right for i in alive}
    if len(rows) < b.left_count or len(cols) < b.left_count:
        return False
    tensor = achievable_weight_tensor(b, rng, alive)
    if tensor is None:
        return False
    idx = target.counts
    if any(i >= d for i, d in zip(idx, tensor.shape)):
        return False
    return bool(tensor[idx] != 0)


def exact_weight_perfect_matching(
    b: WeightedBipartiteMultigraph,
    target: ColorHistogram,
    rng: np.random.Generator,
    repeats: int = 8,
) -> list[int] | None:
    """Edge indices of a perfect matching with weight sum exactly target.

    Randomized one-sided: an existing matching is found with probability at
    least 1 - 2^-repeats; "None" for an infeasible target is always correct.
    Every returned matching is rechecked by summation before returning.
    """
    b.validate()
    if b.left_count == 0:
        return [] if target.total() == 0 else None
    for _ in range(max(1, repeats)):
        if not _weight_feasible(b, target, rng, list(range(len(b.edges)))):
            continue
        got = _extract_matching(b, target, rng)
        if got is not None:
            return got
    return None


def _extract_matching(
    b: WeightedBipartiteMultigraph,
    target: ColorHistogram,
    rng: np.random.Generator,
) -> list[int] | None:
    """Self-reduction: fix one edge per row, retesting the residual instance."""
    s = b.left_count
    chosen: list[int] = []
    used_cols: set[int] = set()
    residual = target
    for row in range(s):
        row_edges = [
            i
            for i, e in enumerate(b.edges)
            if e.left == row and e.right not in used_cols and residual.dominates(e.weight)
        ]
        row_edges.sort(key=lambda i: (b.edges[i].right, i))
        advanced = False
        for i in row_edges:
            e = b.edges[i]
            rest = [
                j
                for j, f in enumerate(b.edges)
                if f.left > row and f.right != e.right and f.right not in used_cols
            ]
            sub_target = histogram_sub(residual, e.weight)
            if _minor_feasible(b, rest, row + 1, sub_target, rng):
                chosen.append(i)
                used_cols.add(e.right)
                residual = sub_target
                advanced = True
                break
        if not advanced:
            return None
    total = zero_histogram(target.q)
    for i in chosen:
        total = histogram_add(total, b.edges[i].weight)
    if total != target:
        return None
    return chosen


def _minor_feasible(
    b: WeightedBipartiteMultigraph,
    edge_idx: list[int],
    first_row: int,
    target: ColorHistogram,
    rng: np.random.Generator,
) -> bool:
    rows = sorted({b.edges[i].left for i in edge_idx} | set(range(first_row, b.left_count)))
    cols = sorted({b.edges[i].right for i in edge_idx})
    if first_row == b.left_count:
        return target.total() == 0
    if len(rows) != len(cols):
        return False
    row_pos = {r: k for k, r in enumerate(rows)}
    col_pos = {c: k for k, c in enumerate(cols)}
    minor = WeightedBipartiteMultigraph(len(rows), len(cols), 0)
    for i in edge_idx:
        e = b.edges[i]
        minor.add_edge(row_pos[e.left], col_pos[e.right], e.weight, None)
    return _weight_feasible(minor, target, rng, list(range(len(minor.edges))))
