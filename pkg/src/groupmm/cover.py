"""Zero-pattern covers for aliasing pairs and maximization of the fullness
objective.

An instance records the matrix dimensions (m x n times n x p) and the set of
aliasing pairs (left entry, right entry) that must be silenced.  A cover
(I, J) zeroes the entries of I in the left factor and J in the right factor
so that every pair loses at least one side.  The objective

    f(I, J) = sum over inner index i of
              (free entries in left column i) * (free entries in right row i)

counts the surviving scalar products; zeroing entries can only decrease it,
which is what makes branch-and-bound pruning sound.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Any

from .groups import BudgetExceededError
from .indexing import AliasingSet

EntryIndex = tuple[int, int]
AliasPair = tuple[EntryIndex, EntryIndex]

BRUTE_FORCE_ENTRY_LIMIT = 24


@dataclass(frozen=True)
class PartialPatternInstance:
    """Matrix dimensions plus the aliasing pairs a cover must silence.

    Pairs are deduplicated and stored sorted, so instances built from the
    same pair set compare equal regardless of input order.
    """

    m: int
    n: int
    p: int
    pairs: tuple[AliasPair, ...] = ()

    def __post_init__(self):
        for name in ("m", "n", "p"):
            if getattr(self, name) < 1:
                raise ValueError(f"dimension {name} must be positive")
        pairs = sorted({(tuple(l), tuple(r)) for l, r in self.pairs})
        for left, right in pairs:
            i, j = left
            if not (1 <= i <= self.m and 1 <= j <= self.n):
                raise ValueError(f"left entry {left} outside {self.m}x{self.n} matrix")
            j2, k = right
            if not (1 <= j2 <= self.n and 1 <= k <= self.p):
                raise ValueError(f"right entry {right} outside {self.n}x{self.p} matrix")
        object.__setattr__(self, "pairs", tuple(pairs))

    @classmethod
    def from_aliasing(cls, aliasing: AliasingSet) -> "PartialPatternInstance":
        m, n, p = aliasing.dims
        return cls(m, n, p, tuple((t.left, t.right) for t in aliasing))

    def involved_entries(self) -> tuple[tuple[EntryIndex, ...], tuple[EntryIndex, ...]]:
        lefts = sorted({l for l, _ in self.pairs})
        rights = sorted({r for _, r in self.pairs})
        return tuple(lefts), tuple(rights)

    def to_json(self) -> dict:
        return {
            "m": self.m,
            "n": self.n,
            "p": self.p,
            "pairs": [[list(l), list(r)] for l, r in self.pairs],
        }

    @classmethod
    def from_json(cls, obj: Any) -> "PartialPatternInstance":
        if not isinstance(obj, dict):
            raise ValueError(f"instance document must be an object, got {obj!r}")
        if "triples" in obj and "dims" in obj:
            return cls.from_aliasing(AliasingSet.from_json(obj))
        try:
            pairs = tuple((tuple(l), tuple(r)) for l, r in obj.get("pairs", []))
            return cls(int(obj["m"]), int(obj["n"]), int(obj["p"]), pairs)
        except KeyError as exc:
            raise ValueError(f"instance document is missing key {exc}") from exc


@dataclass(frozen=True)
class Cover:
    """Zero patterns for the left (I) and right (J) factor matrices."""

    I: frozenset[EntryIndex]
    J: frozenset[EntryIndex]

    def __post_init__(self):
        object.__setattr__(self, "I", frozenset(tuple(e) for e in self.I))
        object.__setattr__(self, "J", frozenset(tuple(e) for e in self.J))

    @property
    def size(self) -> int:
        return len(self.I) + len(self.J)

    def to_json(self) -> dict:
        return {"I": [list(e) for e in sorted(self.I)], "J": [list(e) for e in sorted(self.J)]}

    @classmethod
    def from_json(cls, obj: Any) -> "Cover":
        return cls(
            frozenset(tuple(e) for e in obj.get("I", [])),
            frozenset(tuple(e) for e in obj.get("J", [])),
        )


@dataclass(frozen=True)
class SolveReport:
    f_value: int
    cover: Cover
    nodes_explored: int
    nodes_pruned: int
    exact: bool
    method: str

    def to_json(self) -> dict:
        out = {"f": self.f_value, "exact": self.exact, "method": self.method}
        out.update(self.cover.to_json())
        out["nodes"] = self.nodes_explored
        out["pruned"] = self.nodes_pruned
        return out


def f_value(inst: PartialPatternInstance, cover: Cover) -> int:
    """Surviving scalar products under the cover; defined for any I, J."""
    col_free, row_free = _free_counts(inst, cover)
    return sum(col_free[i] * row_free[i] for i in range(1, inst.n + 1))


def _free_counts(inst: PartialPatternInstance, cover: Cover) -> tuple[list[int], list[int]]:
    col_free = [inst.m] * (inst.n + 1)
    for i, j in cover.I:
        if not (1 <= i <= inst.m and 1 <= j <= inst.n):
            raise ValueError(f"cover entry {(i, j)} outside {inst.m}x{inst.n} left matrix")
        col_free[j] -= 1
    row_free = [inst.p] * (inst.n + 1)
    for j2, k in cover.J:
        if not (1 <= j2 <= inst.n and 1 <= k <= inst.p):
            raise ValueError(f"cover entry {(j2, k)} outside {inst.n}x{inst.p} right matrix")
        row_free[j2] -= 1
    return col_free, row_free


def is_cover(inst: PartialPatternInstance, cover: Cover) -> bool:
    """True iff every pair has its left entry in I or its right entry in J."""
    return all(l in cover.I or r in cover.J for l, r in inst.pairs)


def exact_max_f(
    inst: PartialPatternInstance,
    node_limit: int | None = None,
    order_seed: int | None = None,
) -> SolveReport:
    """Maximize f over all covers by depth-first branch-and-bound.

    Branches on the first uncovered pair, zeroing its left entry first.  A
    node whose current f is <= the best found is pruned: adding zeros never
    increases f, so no descendant can beat the incumbent.  With the default
    arguments the search order is fixed (pairs in lexicographic order) and
    the returned cover is the first maximizer encountered.  ``order_seed``
    shuffles the pair order; that may change the reported cover but never
    the value.  If ``node_limit`` is exhausted the best cover so far is
    returned with ``exact=False``.
    """
    pairs = list(inst.pairs)
    if order_seed is not None:
        random.Random(order_seed).shuffle(pairs)
    n_pairs = len(pairs)

    root_cols = [inst.m] * (inst.n + 1)
    root_rows = [inst.p] * (inst.n + 1)
    root_f = sum(root_cols[i] * root_rows[i] for i in range(1, inst.n + 1))
    # frame: (next pair pointer, I, J, per-column free counts, per-row free counts, f)
    stack = [(0, frozenset(), frozenset(), root_cols, root_rows, root_f)]
    best_f = -1
    best_cover: Cover | None = None
    explored = 0
    pruned = 0
    limit_hit = False

    while stack:
        if node_limit is not None and explored >= node_limit:
            limit_hit = True
            break
        ptr, I, J, cols, rows, f = stack.pop()
        explored += 1
        while ptr < n_pairs and (pairs[ptr][0] in I or pairs[ptr][1] in J):
            ptr += 1
        if ptr == n_pairs:
            if f > best_f:
                best_f = f
                best_cover = Cover(I, J)
            else:
                pruned += 1
            continue
        if f <= best_f:
            pruned += 1
            continue
        left, right = pairs[ptr]
        # push the right-zero branch first so the left-zero branch pops first
        r = right[0]
        rows2 = rows.copy()
        rows2[r] -= 1
        stack.append((ptr, I, J | {right}, cols, rows2, f - cols[r]))
        c = left[1]
        cols2 = cols.copy()
        cols2[c] -= 1
        stack.append((ptr, I | {left}, J, cols2, rows, f - rows[c]))

    if best_cover is None:
        # only reachable with a node limit too small to finish one descent
        lefts, _ = inst.involved_entries()
        best_cover = Cover(frozenset(lefts), frozenset())
        best_f = f_value(inst, best_cover)
    return SolveReport(
        f_value=best_f,
        cover=best_cover,
        nodes_explored=explored,
        nodes_pruned=pruned,
        exact=not limit_hit,
        method="branch-and-bound",
    )


def heuristic_cover(inst: PartialPatternInstance) -> SolveReport:
    """Polynomial-time cover of minimum total size; not an f-maximizer.

    Views distinct left entries and distinct right entries as the two sides
    of a bipartite conflict graph with one edge per pair.  A minimum vertex
    cover of that graph is a valid (I, J) of the smallest possible size; it
    is found by computing a maximum matching with augmenting paths and then
    applying the alternating-reachability construction behind Koenig's
    theorem.  The result zeroes the fewest entries, which is a good but not
    optimal proxy for maximizing f.
    """
    lefts, rights = inst.involved_entries()
    adjacency: dict[EntryIndex, list[EntryIndex]] = {l: [] for l in lefts}
    for l, r in inst.pairs:
        adjacency[l].append(r)
    for l in adjacency:
        adjacency[l].sort()

    match_left: dict[EntryIndex, EntryIndex] = {}
    match_right: dict[EntryIndex, EntryIndex] = {}

    def augment(u: EntryIndex, seen: set[EntryIndex]) -> bool:
        for v in adjacency[u]:
            if v in seen:
                continue
            seen.add(v)
            if v not in match_right or augment(match_right[v], seen):
                match_left[u] = v
                match_right[v] = u
                return True
        return False

    for u in lefts:
        augment(u, set())

    # alternating reachability from unmatched left vertices: non-matching
    # edges left-to-right, matching edges right-to-left
    reach_left = {u for u in lefts if u not in match_left}
    reach_right: set[EntryIndex] = set()
    frontier = list(reach_left)
    while frontier:
        u = frontier.pop()
        for v in adjacency[u]:
            if v in reach_right:
                continue
            reach_right.add(v)
            w = match_right.get(v)
            if w is not None and w not in reach_left:
                reach_left.add(w)
                frontier.append(w)

    cover = Cover(frozenset(set(lefts) - reach_left), frozenset(reach_right))
    if cover.size != len(match_left):
        raise AssertionError("vertex cover size disagrees with matching size")
    if not is_cover(inst, cover):
        raise AssertionError("matching heuristic produced a non-cover")
    return SolveReport(
        f_value=f_value(inst, cover),
        cover=cover,
        nodes_explored=0,
        nodes_pruned=0,
        exact=False,
        method="matching-heuristic",
    )


def brute_force_max_f(inst: PartialPatternInstance) -> SolveReport:
    """Testing oracle: exhaust all subsets of the aliasing-involved entries.

    Restricting to involved entries is lossless: dropping an uninvolved
    entry from a cover keeps it a cover and never decreases f, so some
    maximizer uses involved entries only.
    """
    lefts, rights = inst.involved_entries()
    entries = list(lefts) + list(rights)
    total = len(entries)
    if total > BRUTE_FORCE_ENTRY_LIMIT:
        raise BudgetExceededError(
            f"{total} involved entries exceed the brute-force limit of "
            f"{BRUTE_FORCE_ENTRY_LIMIT}"
        )
    n_left = len(lefts)
    best_f = -1
    best_cover = Cover(frozenset(), frozenset())
    for mask in range(1 << total):
        I = frozenset(entries[b] for b in range(n_left) if mask >> b & 1)
        J = frozenset(entries[b] for b in range(n_left, total) if mask >> b & 1)
        cover = Cover(I, J)
        if not is_cover(inst, cover):
            continue
        f = f_value(inst, cover)
        if f > best_f:
            best_f = f
            best_cover = cover
    return SolveReport(
        f_value=best_f,
        cover=best_cover,
        nodes_explored=1 << total,
        nodes_pruned=0,
        exact=True,
        method="brute-force",
    )
