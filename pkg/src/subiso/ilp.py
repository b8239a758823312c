"""Bounded integer feasibility by interval propagation and exhaustive branching.

This is a decision procedure, not an optimizer.  Every variable must end up
with a finite box after propagation; instances where a bound cannot be
derived are rejected as malformed.
"""

from __future__ import annotations

from dataclasses import dataclass, field

RELATIONS = ("==", "<=", ">=")

_PROPAGATION_ROUNDS = 200


@dataclass
class ILPInstance:
    """Integer variables with per-variable bounds and linear constraints.

    Constraints are (coeffs, relation, rhs) with relation one of ==, <=, >=.
    Upper bounds may be None when they are derivable from the constraints.
    """

    var_count: int
    lower_bounds: list[int]
    upper_bounds: list[int | None]
    constraints: list[tuple[list[int], str, int]] = field(default_factory=list)

    def validate(self) -> None:
        if len(self.lower_bounds) != self.var_count:
            raise ValueError("lower bound count mismatch")
        if len(self.upper_bounds) != self.var_count:
            raise ValueError("upper bound count mismatch")
        for coeffs, rel, _ in self.constraints:
            if len(coeffs) != self.var_count:
                raise ValueError("coefficient count mismatch")
            if rel not in RELATIONS:
                raise ValueError(f"unknown relation {rel!r}")
        for lo, hi in zip(self.lower_bounds, self.upper_bounds):
            if hi is not None and hi < lo:
                raise ValueError("upper bound below lower bound")


def _expand(constraints):
    """Rewrite every constraint as a <= form; == becomes two rows."""
    rows = []
    for coeffs, rel, rhs in constraints:
        if rel in ("<=", "=="):
            rows.append((coeffs, rhs))
        if rel in (">=", "=="):
            rows.append(([-c for c in coeffs], -rhs))
    return rows


def _propagate(rows, lo, hi):
    """Shrink [lo, hi] boxes against sum(c*x) <= rhs rows.

    Returns False when some box empties.  None in hi means unbounded above.
    """
    for _ in range(_PROPAGATION_ROUNDS):
        changed = False
        for coeffs, rhs in rows:
            minsum = 0
            unbounded = 0
            for c, a, b in zip(coeffs, lo, hi):
                if c > 0:
                    minsum += c * a
                elif c < 0:
                    if b is None:
                        unbounded += 1
                    else:
                        minsum += c * b
            for j, c in enumerate(coeffs):
                if c == 0:
                    continue
                if c > 0:
                    others = minsum - c * lo[j]
                    if unbounded:
                        continue
                    cap = (rhs - others) // c
                    if hi[j] is None or cap < hi[j]:
                        hi[j] = cap
                        changed = True
                else:
                    if hi[j] is None:
                        if unbounded > 1:
                            continue
                        others = minsum
                    else:
                        others = minsum - c * hi[j]
                        if unbounded:
                            continue
                    floor = -((rhs - others) // (-c))
                    if floor > lo[j]:
                        lo[j] = floor
                        changed = True
            for a, b in zip(lo, hi):
                if b is not None and b < a:
                    return False
        if not changed:
            break
    return True


def _check(rows, point) -> bool:
    for coeffs, rhs in rows:
        if sum(c * x for c, x in zip(coeffs, point)) > rhs:
            return False
    return True


def feasible(p: ILPInstance) -> list[int] | None:
    """First feasible assignment in the branching order, or None.

    Branches on the variable with the narrowest remaining box, values in
    ascending order, so the result is deterministic.
    """
    p.validate()
    if p.var_count == 0:
        for coeffs, rel, rhs in p.constraints:
            ok = (0 == rhs) if rel == "==" else (0 <= rhs if rel == "<=" else 0 >= rhs)
            if not ok:
                return None
        return []
    rows = _expand(p.constraints)
    lo = list(p.lower_bounds)
    hi: list[int | None] = list(p.upper_bounds)
    if not _propagate(rows, lo, hi):
        return None
    for j, b in enumerate(hi):
        if b is None:
            raise ValueError(f"variable {j} has no derivable upper bound")

    def search(lo, hi):
        if not _propagate(rows, lo, hi):
            return None
        widths = [(hi[j] - lo[j], j) for j in range(p.var_count)]
        open_vars = [(w, j) for w, j in widths if w > 0]
        if not open_vars:
            point = list(lo)
            return point if _check(rows, point) else None
        _, j = min(open_vars)
        for value in range(lo[j], hi[j] + 1):
            nlo, nhi = list(lo), list(hi)
            nlo[j] = nhi[j] = value
            got = search(nlo, nhi)
            if got is not None:
                return got
        return None

    return search(lo, hi)
