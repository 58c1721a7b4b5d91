"""Indexing triples, the triple product property, and aliasing enumeration.

An indexing triple (S, T, U) of subsets of a group indexes a |S| x |T| by
|T| x |U| matrix product.  An aliasing triple ((i, j), (j', k), (i', k'))
is a solution of

    s_i^-1 t_j t_j'^-1 u_k = s_i'^-1 u_k'

other than the trivial i = i', j = j', k = k' one; it records that the term
M[i,j] * N[j',k] leaks into product entry (i', k').  The triple product
property holds exactly when no aliasing exists.

All indices here are 1-based, matching the usual matrix-entry convention
used in serialized output.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Iterator, NamedTuple

from .groups import (
    BudgetExceededError,
    Group,
    GroupElement,
    descriptor_to_json,
    element_to_json,
    group_from_json,
    parse_element,
)

DEFAULT_WORK_BUDGET = 10**10


class AliasingTriple(NamedTuple):
    left: tuple[int, int]  # (i, j) in the left factor matrix
    right: tuple[int, int]  # (j', k) in the right factor matrix
    product: tuple[int, int]  # (i', k') in the product matrix


@dataclass(frozen=True)
class IndexingTriple:
    """Ordered subsets S, T, U of a common group."""

    group: Group
    S: tuple[GroupElement, ...]
    T: tuple[GroupElement, ...]
    U: tuple[GroupElement, ...]

    def __post_init__(self):
        for name in ("S", "T", "U"):
            elems = tuple(getattr(self, name))
            object.__setattr__(self, name, elems)
            if not elems:
                raise ValueError(f"{name} must be non-empty")
            for g in elems:
                self.group._require_member(g)
            if len({g.key for g in elems}) != len(elems):
                raise ValueError(f"{name} contains duplicate elements")

    @property
    def sizes(self) -> tuple[int, int, int]:
        return (len(self.S), len(self.T), len(self.U))

    def to_json(self) -> dict:
        return {
            "group": descriptor_to_json(self.group.descriptor),
            "S": [element_to_json(g) for g in self.S],
            "T": [element_to_json(g) for g in self.T],
            "U": [element_to_json(g) for g in self.U],
        }

    @classmethod
    def from_json(cls, obj: Any) -> "IndexingTriple":
        if not isinstance(obj, dict):
            raise ValueError(f"subsets document must be an object, got {obj!r}")
        try:
            group = group_from_json(obj["group"])
            lists = [obj["S"], obj["T"], obj["U"]]
        except KeyError as exc:
            raise ValueError(f"subsets document is missing key {exc}") from exc
        sets = []
        for elems in lists:
            sets.append(
                tuple(
                    parse_element(e, group) if isinstance(e, str) else group.element(e)
                    for e in elems
                )
            )
        return cls(group, *sets)


@dataclass(frozen=True)
class AliasingSet:
    """The full set of aliasing triples for an indexing triple, sorted."""

    dims: tuple[int, int, int]
    triples: tuple[AliasingTriple, ...]

    def __post_init__(self):
        m, n, p = self.dims
        object.__setattr__(self, "dims", (m, n, p))
        triples = tuple(sorted({AliasingTriple(*t) for t in self.triples}))
        object.__setattr__(self, "triples", triples)
        for t in triples:
            (i, j), (j2, k), (i2, k2) = t
            if not (1 <= i <= m and 1 <= j <= n):
                raise ValueError(f"left entry {t.left} outside {m}x{n} matrix")
            if not (1 <= j2 <= n and 1 <= k <= p):
                raise ValueError(f"right entry {t.right} outside {n}x{p} matrix")
            if not (1 <= i2 <= m and 1 <= k2 <= p):
                raise ValueError(f"product entry {t.product} outside {m}x{p} matrix")

    def __len__(self) -> int:
        return len(self.triples)

    def __iter__(self) -> Iterator[AliasingTriple]:
        return iter(self.triples)

    def __bool__(self) -> bool:
        return bool(self.triples)

    def to_json(self) -> dict:
        return {
            "dims": list(self.dims),
            "triples": [[list(t.left), list(t.right), list(t.product)] for t in self.triples],
        }

    @classmethod
    def from_json(cls, obj: Any) -> "AliasingSet":
        dims = tuple(int(x) for x in obj["dims"])
        if len(dims) != 3:
            raise ValueError(f"dims must have 3 entries, got {obj['dims']!r}")
        triples = tuple(
            AliasingTriple(tuple(l), tuple(r), tuple(p)) for l, r, p in obj["triples"]
        )
        return cls(dims, triples)


def check_tpp(triple: IndexingTriple, work_budget: int = DEFAULT_WORK_BUDGET) -> bool:
    """Decide the triple product property by checking every sextuple.

    True iff s s'^-1 t t'^-1 u u'^-1 = e forces s = s', t = t', u = u'.
    The (u, u') dimension of the sextuple scan is resolved through a
    precomputed set of the |U|^2 pair products, which changes the cost but
    not the semantics.  Deliberately independent of enumerate_aliasing so
    the two can cross-check each other.
    """
    m, n, p = triple.sizes
    cost = (m * n * p) ** 2
    if cost > work_budget:
        raise BudgetExceededError(
            f"triple product check needs {cost} sextuples, over the budget of "
            f"{work_budget}"
        )
    u_products = {(u * v.inv()).key for u in triple.U for v in triple.U}
    s_pairs = [
        (a * b.inv(), ia == ib)
        for ia, a in enumerate(triple.S)
        for ib, b in enumerate(triple.S)
    ]
    t_pairs = [
        (a * b.inv(), ia == ib)
        for ia, a in enumerate(triple.T)
        for ib, b in enumerate(triple.T)
    ]
    for q1, diag_s in s_pairs:
        for q2, diag_t in t_pairs:
            if diag_s and diag_t:
                # only diagonal (u, u') can complete the identity here
                continue
            if (q1 * q2).inv().key in u_products:
                return False
    return True


def enumerate_aliasing(
    triple: IndexingTriple, work_budget: int = DEFAULT_WORK_BUDGET
) -> AliasingSet:
    """Enumerate every aliasing triple, sorted lexicographically.

    Builds a map from group element g to all (i', k') with s_i'^-1 u_k' = g,
    then scans the |S||T| x |T||U| grid of ((i, j), (j', k)) pairs, emitting
    one triple per match and skipping only the fully-diagonal case.
    """
    m, n, p = triple.sizes
    cost = (m * n) * (n * p)
    if cost > work_budget:
        raise BudgetExceededError(
            f"aliasing enumeration needs {cost} pair products, over the budget "
            f"of {work_budget}; for the large wreath constructions use the "
            f"closed-form path (formula_f and the degree-spectrum bound) instead"
        )
    targets: dict[Any, list[tuple[int, int]]] = {}
    for i2, s in enumerate(triple.S, 1):
        s_inv = s.inv()
        for k2, u in enumerate(triple.U, 1):
            targets.setdefault((s_inv * u).key, []).append((i2, k2))
    lefts = []
    for i, s in enumerate(triple.S, 1):
        s_inv = s.inv()
        for j, t in enumerate(triple.T, 1):
            lefts.append(((i, j), s_inv * t))
    rights = []
    for j2, t in enumerate(triple.T, 1):
        t_inv = t.inv()
        for k, u in enumerate(triple.U, 1):
            rights.append(((j2, k), t_inv * u))
    found = []
    for (i, j), a in lefts:
        for (j2, k), b in rights:
            bucket = targets.get((a * b).key)
            if not bucket:
                continue
            for i2, k2 in bucket:
                if i == i2 and j == j2 and k == k2:
                    continue
                found.append(AliasingTriple((i, j), (j2, k), (i2, k2)))
    found.sort()
    return AliasingSet((m, n, p), tuple(found))


def aliasing_projections(
    aliasing: AliasingSet,
) -> tuple[frozenset, frozenset, frozenset]:
    """The left, right, and product entry sets touched by aliasing."""
    return (
        frozenset(t.left for t in aliasing),
        frozenset(t.right for t in aliasing),
        frozenset(t.product for t in aliasing),
    )
