"""Reduction from INDEPENDENT-SET to cover maximization, plus the
certificate verifier that places the decision problem in NP.

A graph on |V| vertices maps to an instance with a 1 x |V| left matrix and
a |V| x 1 right matrix.  Inner index i survives with value 1 exactly when
both (1, i) and (i, 1) are free, and each edge {i, j} contributes the pairs
((1, i), (j, 1)) and ((1, j), (i, 1)), which forbid adjacent indices from
both surviving.  The maximum of f over covers therefore equals the maximum
independent set size.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Sequence

from .cover import Cover, PartialPatternInstance, f_value
from .groups import BudgetExceededError

CERTIFICATE_SYMBOLS = ("L", "R", "B")

BRUTE_FORCE_VERTEX_LIMIT = 24


@dataclass(frozen=True)
class SimpleGraph:
    """Undirected simple graph on vertices 1..vertices."""

    vertices: int
    edges: tuple[tuple[int, int], ...] = ()

    def __post_init__(self):
        if self.vertices < 0:
            raise ValueError("vertex count must be non-negative")
        seen = set()
        for a, b in self.edges:
            a, b = int(a), int(b)
            if a == b:
                raise ValueError(f"self-loop at vertex {a}")
            if not (1 <= a <= self.vertices and 1 <= b <= self.vertices):
                raise ValueError(f"edge ({a}, {b}) outside 1..{self.vertices}")
            seen.add((min(a, b), max(a, b)))
        object.__setattr__(self, "edges", tuple(sorted(seen)))

    def to_json(self) -> dict:
        return {"vertices": self.vertices, "edges": [list(e) for e in self.edges]}

    @classmethod
    def from_json(cls, obj: Any) -> "SimpleGraph":
        if not isinstance(obj, dict):
            raise ValueError(f"graph document must be an object, got {obj!r}")
        try:
            return cls(int(obj["vertices"]), tuple(tuple(e) for e in obj.get("edges", [])))
        except KeyError as exc:
            raise ValueError(f"graph document is missing key {exc}") from exc


def reduce_independent_set(graph: SimpleGraph) -> PartialPatternInstance:
    """Polynomial reduction; the output has exactly 2 |E| pairs."""
    if graph.vertices < 1:
        raise ValueError("reduction needs at least one vertex")
    pairs = []
    for a, b in graph.edges:
        pairs.append(((1, a), (b, 1)))
        pairs.append(((1, b), (a, 1)))
    return PartialPatternInstance(1, graph.vertices, 1, tuple(pairs))


def brute_force_alpha(graph: SimpleGraph, vertex_limit: int = BRUTE_FORCE_VERTEX_LIMIT) -> int:
    """Maximum independent set size by subset enumeration."""
    n = graph.vertices
    if n > vertex_limit:
        raise BudgetExceededError(
            f"{n} vertices exceed the brute-force limit of {vertex_limit}"
        )
    adjacency = [0] * n
    for a, b in graph.edges:
        adjacency[a - 1] |= 1 << (b - 1)
        adjacency[b - 1] |= 1 << (a - 1)
    best = 0
    for mask in range(1 << n):
        size = mask.bit_count()
        if size <= best:
            continue
        m = mask
        ok = True
        while m:
            v = (m & -m).bit_length() - 1
            if adjacency[v] & mask:
                ok = False
                break
            m &= m - 1
        if ok:
            best = size
    return best


def verify_certificate(
    inst: PartialPatternInstance, certificate: Sequence[str], k: int
) -> bool:
    """Check a zeroing certificate against a target objective value.

    One symbol per pair, following the instance's sorted pair order: L
    zeroes the left entry and leaves the right one free, R the reverse, B
    zeroes both.  Entries not mentioned by any symbol stay free.  Returns
    True iff the directives are consistent (no entry demanded both free and
    zero) and the induced cover achieves f >= k.  Runs in time polynomial
    in the number of pairs.
    """
    if len(certificate) != len(inst.pairs):
        raise ValueError(
            f"certificate has {len(certificate)} symbols for {len(inst.pairs)} pairs"
        )
    left_zeroed: dict[tuple[int, int], bool] = {}
    right_zeroed: dict[tuple[int, int], bool] = {}

    def assign(state: dict, entry: tuple[int, int], zero: bool) -> bool:
        if state.setdefault(entry, zero) != zero:
            return False
        return True

    for (left, right), symbol in zip(inst.pairs, certificate):
        if symbol not in CERTIFICATE_SYMBOLS:
            raise ValueError(f"certificate symbol must be one of L/R/B, got {symbol!r}")
        zero_left = symbol in ("L", "B")
        zero_right = symbol in ("R", "B")
        if not assign(left_zeroed, left, zero_left):
            return False
        if not assign(right_zeroed, right, zero_right):
            return False
    cover = Cover(
        frozenset(e for e, z in left_zeroed.items() if z),
        frozenset(e for e, z in right_zeroed.items() if z),
    )
    return f_value(inst, cover) >= k
