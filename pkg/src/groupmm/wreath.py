"""The wreath-product indexing family and its single-element relaxation.

Over H = C_n x C_n x C_n and G = H wr S_2, the three index sets are

    S_i = { (a, b) z^j : a in H_i \\ {e}, b in H_{i+1}, j in {0, 1} }

with coordinate subscripts mod 3, giving |S| = |T| = |U| = 2n(n-1) and a
triple satisfying the triple product property, hence fullness 8 n^3 (n-1)^3.
The relaxed variant appends the identity to each set.  That introduces
aliasing, but all of it is coverable by zeroing entries in the appended
identity column of each factor, and the surviving computation is strictly
larger than the unrelaxed one:

    f >= q^3 + q^2 + q (q - (n-1)^2 + 1),   q = 2n(n-1).
"""

from __future__ import annotations

from dataclasses import dataclass

from .cover import Cover, PartialPatternInstance, f_value, is_cover
from .groups import CyclicPowerDescriptor, WreathS2Descriptor, WreathS2Group, from_descriptor
from .indexing import (
    DEFAULT_WORK_BUDGET,
    AliasingTriple,
    IndexingTriple,
    enumerate_aliasing,
)


class CoverClaimError(RuntimeError):
    """The structured cover's claims failed on an enumerated aliasing set."""


@dataclass(frozen=True)
class WreathConstruction:
    n: int
    relaxed: bool
    group: WreathS2Group
    triple: IndexingTriple

    @property
    def sets_size(self) -> int:
        return len(self.triple.S)

    @property
    def identity_index(self) -> int:
        """1-based position of the identity in each set (relaxed only)."""
        if not self.relaxed:
            raise ValueError("the unrelaxed sets do not contain the identity")
        return self.sets_size


@dataclass(frozen=True)
class AliasingTaxonomy:
    """Partition of a relaxed construction's aliasing set.

    bottom: product entry outside the identity row; all right entries lie
    in the identity column of the right factor.
    top_easy: identity-row triples whose left entry lies in the identity
    column of the left factor.
    top_hard: the remaining identity-row triples; covered by the top_easy
    left entries plus further identity-column entries on the right.
    """

    bottom: tuple[AliasingTriple, ...]
    top_easy: tuple[AliasingTriple, ...]
    top_hard: tuple[AliasingTriple, ...]

    def __len__(self) -> int:
        return len(self.bottom) + len(self.top_easy) + len(self.top_hard)


def build_sets(n: int, relaxed: bool = False) -> WreathConstruction:
    """Materialize the three index sets; the group itself is never enumerated.

    Elements are ordered lexicographically by key, with the identity (when
    relaxed) appended last.
    """
    if n < 2:
        raise ValueError(f"construction needs n >= 2, got {n}")
    group = from_descriptor(WreathS2Descriptor(CyclicPowerDescriptor((n, n, n))))
    assert isinstance(group, WreathS2Group)
    zero = (0, 0, 0)
    sets = []
    for i in range(3):
        keys = []
        for r in range(1, n):
            a = tuple(r if pos == i else 0 for pos in range(3))
            for r2 in range(n):
                b = tuple(r2 if pos == (i + 1) % 3 else 0 for pos in range(3))
                for j in (0, 1):
                    keys.append((a, b, j))
        keys.sort()
        if relaxed:
            keys.append((zero, zero, 0))
        sets.append(tuple(group.element(k) for k in keys))
    triple = IndexingTriple(group, *sets)
    return WreathConstruction(n=n, relaxed=relaxed, group=group, triple=triple)


def formula_f(n: int, relaxed: bool = False) -> int:
    """Closed-form fullness: exact for the unrelaxed sets, a proven lower
    bound for the relaxed ones.  Valid for any n >= 2, enumerable or not."""
    if n < 2:
        raise ValueError(f"construction needs n >= 2, got {n}")
    q = 2 * n * (n - 1)
    if not relaxed:
        return q**3
    return q**3 + q**2 + q * (q - (n - 1) ** 2 + 1)


def classify_aliasing(
    construction: WreathConstruction, work_budget: int = DEFAULT_WORK_BUDGET
) -> AliasingTaxonomy:
    """Partition the relaxed construction's aliasing set and verify the
    structural cover claims behind the closed-form fullness bound."""
    if not construction.relaxed:
        raise ValueError("aliasing taxonomy is defined for the relaxed construction only")
    aliasing = enumerate_aliasing(construction.triple, work_budget)
    n = construction.n
    ident = construction.identity_index
    bottom = []
    top_easy = []
    top_hard = []
    for t in aliasing:
        if t.product[0] != ident:
            bottom.append(t)
        elif t.left[1] == ident:
            top_easy.append(t)
        else:
            top_hard.append(t)

    budget = (n - 1) ** 2
    for t in bottom:
        if t.right[1] != ident:
            raise CoverClaimError(
                f"bottom triple {t} has its right entry outside the identity column"
            )
    bottom_rights = {t.right for t in bottom}
    if len(bottom_rights) > budget:
        raise CoverClaimError(
            f"bottom aliasing needs {len(bottom_rights)} right entries, claimed <= {budget}"
        )
    easy_lefts = {t.left for t in top_easy}
    if len(easy_lefts) > budget:
        raise CoverClaimError(
            f"top-easy aliasing needs {len(easy_lefts)} left entries, claimed <= {budget}"
        )
    hard_rights = set()
    for t in top_hard:
        if t.left in easy_lefts:
            continue
        if t.right[1] != ident:
            raise CoverClaimError(
                f"top-hard triple {t} is covered neither by the top-easy left entries "
                f"nor by the identity column of the right factor"
            )
        hard_rights.add(t.right)
    if len(hard_rights) > 2 * n * (n - 1):
        raise CoverClaimError(
            f"top-hard aliasing needs {len(hard_rights)} extra right entries, "
            f"claimed <= {2 * n * (n - 1)}"
        )
    return AliasingTaxonomy(tuple(bottom), tuple(top_easy), tuple(top_hard))


def identity_column_cover(
    construction: WreathConstruction, work_budget: int = DEFAULT_WORK_BUDGET
) -> Cover:
    """The structured cover: the entire identity column of the right factor,
    plus the minimal set of identity-column entries of the left factor that
    covers the remaining triples.

    Asserts the claimed cardinalities (|I| <= (n-1)^2, |J| = 2n(n-1) + 1),
    that the result covers all aliasing, and that its f meets the
    closed-form lower bound.
    """
    if not construction.relaxed:
        raise ValueError("the structured cover is defined for the relaxed construction only")
    aliasing = enumerate_aliasing(construction.triple, work_budget)
    inst = PartialPatternInstance.from_aliasing(aliasing)
    n = construction.n
    ident = construction.identity_index
    J = frozenset((j2, ident) for j2 in range(1, construction.sets_size + 1))
    remaining = [t for t in aliasing if t.right not in J]
    for t in remaining:
        if t.left[1] != ident:
            raise CoverClaimError(
                f"triple {t} not covered by the identity column of the right factor "
                f"has its left entry outside the identity column of the left factor"
            )
    I = frozenset(t.left for t in remaining)
    if len(I) > (n - 1) ** 2:
        raise CoverClaimError(
            f"left zero pattern needs {len(I)} entries, claimed <= {(n - 1) ** 2}"
        )
    cover = Cover(I, J)
    if not is_cover(inst, cover):
        uncovered = next(p for p in inst.pairs if p[0] not in I and p[1] not in J)
        raise CoverClaimError(f"structured cover misses pair {uncovered}")
    achieved = f_value(inst, cover)
    expected = formula_f(n, relaxed=True)
    if achieved < expected:
        raise CoverClaimError(
            f"structured cover achieves f = {achieved}, below the closed form {expected}"
        )
    return cover
