"""Finite group arithmetic for table-backed and structured group families.

Structured families (cyclic powers, dihedral groups, and the wreath-by-swap
product over an abelian base) do their arithmetic directly on canonical
element keys, so groups of order ~10^7 are usable without ever materializing
an element list.  Enumeration is gated behind an explicit limit.

Canonical keys per family:

* table group:     index in ``0..order-1``
* cyclic power:    tuple of residues ``(r_1, ..., r_k)``, ``0 <= r_i < n_i``
* dihedral(n):     pair ``(r, s)`` denoting ``y^s x^r`` with ``x^n = y^2 = 1``
                   and ``x y = y x^-1``
* wreath-by-swap:  triple ``(a, b, j)`` denoting ``(a, b) z^j`` where ``a, b``
                   are base keys and ``z`` swaps the two coordinates
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from itertools import product as _cartesian
from typing import Any, Iterator, Union

ENUMERATION_LIMIT = 10**6


class BudgetExceededError(RuntimeError):
    """A guarded operation would exceed its configured work budget."""


class GroupMismatchError(ValueError):
    """Elements of two different groups were combined."""


@dataclass(frozen=True)
class TableDescriptor:
    mul: tuple[tuple[int, ...], ...]

    @property
    def order(self) -> int:
        return len(self.mul)


@dataclass(frozen=True)
class CyclicPowerDescriptor:
    moduli: tuple[int, ...]

    @property
    def order(self) -> int:
        out = 1
        for m in self.moduli:
            out *= m
        return out


@dataclass(frozen=True)
class DihedralDescriptor:
    n: int

    @property
    def order(self) -> int:
        return 2 * self.n


@dataclass(frozen=True)
class WreathS2Descriptor:
    base: CyclicPowerDescriptor

    @property
    def order(self) -> int:
        return 2 * self.base.order**2


GroupDescriptor = Union[
    TableDescriptor, CyclicPowerDescriptor, DihedralDescriptor, WreathS2Descriptor
]


def describe(descriptor: GroupDescriptor) -> str:
    if isinstance(descriptor, TableDescriptor):
        return f"table(order={descriptor.order})"
    if isinstance(descriptor, CyclicPowerDescriptor):
        return "C" + "xC".join(str(m) for m in descriptor.moduli)
    if isinstance(descriptor, DihedralDescriptor):
        return f"D{2 * descriptor.n}"
    if isinstance(descriptor, WreathS2Descriptor):
        return f"({describe(descriptor.base)}) wr S2"
    raise TypeError(f"not a group descriptor: {descriptor!r}")


class GroupElement:
    """A group element, identified by its canonical key.

    Two elements are equal iff their groups agree and their keys are
    identical; hashing uses the key only, which is what lets aliasing
    enumeration bucket products in expected O(1).
    """

    __slots__ = ("group", "key")

    def __init__(self, group: "Group", key: Any):
        self.group = group
        self.key = key

    def __mul__(self, other: "GroupElement") -> "GroupElement":
        return self.group.multiply(self, other)

    def inv(self) -> "GroupElement":
        return self.group.inverse(self)

    def is_identity(self) -> bool:
        return self.key == self.group.identity().key

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, GroupElement):
            return NotImplemented
        if self.group is not other.group and self.group.descriptor != other.group.descriptor:
            return False
        return self.key == other.key

    def __ne__(self, other: object) -> bool:
        eq = self.__eq__(other)
        return eq if eq is NotImplemented else not eq

    def __hash__(self) -> int:
        return hash(self.key)

    def __repr__(self) -> str:
        return f"<{format_element(self)} in {describe(self.group.descriptor)}>"


class Group:
    """Base class for finite groups.  Subclasses provide key arithmetic.

    Groups and elements are immutable after construction; every operation
    here is pure and safe for concurrent use.
    """

    def __init__(self, descriptor: GroupDescriptor, order: int):
        self.descriptor = descriptor
        self.order = order
        self._identity = GroupElement(self, self._identity_key())

    # key-level hooks ------------------------------------------------------

    def _identity_key(self) -> Any:
        raise NotImplementedError

    def _mul_keys(self, a: Any, b: Any) -> Any:
        raise NotImplementedError

    def _inv_key(self, a: Any) -> Any:
        raise NotImplementedError

    def _canonical_key(self, key: Any) -> Any:
        raise NotImplementedError

    def _iter_keys(self) -> Iterator[Any]:
        raise NotImplementedError

    # public API -----------------------------------------------------------

    def identity(self) -> GroupElement:
        return self._identity

    def element(self, key: Any) -> GroupElement:
        """Build an element from a key, validating and canonicalizing it."""
        return GroupElement(self, self._canonical_key(key))

    def multiply(self, g: GroupElement, h: GroupElement) -> GroupElement:
        self._require_member(g)
        self._require_member(h)
        return GroupElement(self, self._mul_keys(g.key, h.key))

    def inverse(self, g: GroupElement) -> GroupElement:
        self._require_member(g)
        return GroupElement(self, self._inv_key(g.key))

    def elements(self, limit: int = ENUMERATION_LIMIT) -> list[GroupElement]:
        """All elements in canonical key order.  Guarded by ``limit``."""
        if self.order > limit:
            raise BudgetExceededError(
                f"refusing to enumerate {describe(self.descriptor)} of order "
                f"{self.order} (limit {limit})"
            )
        return [GroupElement(self, k) for k in self._iter_keys()]

    def _require_member(self, g: GroupElement) -> None:
        if g.group is self:
            return
        if g.group.descriptor != self.descriptor:
            raise GroupMismatchError(
                f"element of {describe(g.group.descriptor)} used in "
                f"{describe(self.descriptor)}"
            )

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Group):
            return NotImplemented
        return self.descriptor == other.descriptor

    def __hash__(self) -> int:
        return hash(self.descriptor)

    def __repr__(self) -> str:
        return f"Group({describe(self.descriptor)}, order={self.order})"


class TableGroup(Group):
    """Group given by an explicit multiplication table on ``0..order-1``."""

    def __init__(self, descriptor: TableDescriptor):
        table = tuple(tuple(int(x) for x in row) for row in descriptor.mul)
        n = len(table)
        if n == 0:
            raise ValueError("multiplication table must be non-empty")
        _validate_latin_square(table)
        self._table = table
        self._e = _find_identity(table)
        self._inv_table = _build_inverse_table(table, self._e)
        super().__init__(TableDescriptor(table), n)

    def _identity_key(self) -> int:
        return self._e

    def _mul_keys(self, a: int, b: int) -> int:
        return self._table[a][b]

    def _inv_key(self, a: int) -> int:
        return self._inv_table[a]

    def _canonical_key(self, key: Any) -> int:
        k = _as_int(key)
        if not 0 <= k < self.order:
            raise ValueError(f"table element index {k} out of range 0..{self.order - 1}")
        return k

    def _iter_keys(self) -> Iterator[int]:
        return iter(range(self.order))


def _validate_latin_square(table: tuple[tuple[int, ...], ...]) -> None:
    n = len(table)
    full = frozenset(range(n))
    for i, row in enumerate(table):
        if len(row) != n:
            raise ValueError(f"table row {i} has length {len(row)}, expected {n}")
        if frozenset(row) != full:
            raise ValueError(f"table row {i} is not a permutation of 0..{n - 1}")
    for j in range(n):
        if frozenset(row[j] for row in table) != full:
            raise ValueError(f"table column {j} is not a permutation of 0..{n - 1}")


def _find_identity(table: tuple[tuple[int, ...], ...]) -> int:
    n = len(table)
    ident = tuple(range(n))
    for e in range(n):
        if table[e] == ident and all(table[x][e] == x for x in range(n)):
            return e
    raise ValueError("table has no two-sided identity element")


def _build_inverse_table(table: tuple[tuple[int, ...], ...], e: int) -> tuple[int, ...]:
    n = len(table)
    inv = []
    for g in range(n):
        h = table[g].index(e)
        if table[h][g] != e:
            raise ValueError(f"element {g} has no two-sided inverse")
        inv.append(h)
    return tuple(inv)


class CyclicPowerGroup(Group):
    """Direct product of cyclic groups, written additively on residue tuples."""

    def __init__(self, descriptor: CyclicPowerDescriptor):
        moduli = tuple(int(m) for m in descriptor.moduli)
        if not moduli or any(m < 1 for m in moduli):
            raise ValueError(f"cyclic power moduli must be positive, got {moduli}")
        self._moduli = moduli
        super().__init__(CyclicPowerDescriptor(moduli), CyclicPowerDescriptor(moduli).order)

    def _identity_key(self) -> tuple[int, ...]:
        return (0,) * len(self._moduli)

    def _mul_keys(self, a: tuple[int, ...], b: tuple[int, ...]) -> tuple[int, ...]:
        return tuple((x + y) % m for x, y, m in zip(a, b, self._moduli))

    def _inv_key(self, a: tuple[int, ...]) -> tuple[int, ...]:
        return tuple((-x) % m for x, m in zip(a, self._moduli))

    def _canonical_key(self, key: Any) -> tuple[int, ...]:
        try:
            k = tuple(_as_int(x) for x in key)
        except TypeError:
            raise ValueError(f"cyclic power element must be a residue tuple, got {key!r}")
        if len(k) != len(self._moduli):
            raise ValueError(
                f"expected {len(self._moduli)} residues, got {len(k)}"
            )
        for x, m in zip(k, self._moduli):
            if not 0 <= x < m:
                raise ValueError(f"residue {x} out of range 0..{m - 1}")
        return k

    def _iter_keys(self) -> Iterator[tuple[int, ...]]:
        return _cartesian(*(range(m) for m in self._moduli))


class DihedralGroup(Group):
    """Dihedral group of order 2n, elements in canonical form ``y^s x^r``."""

    def __init__(self, descriptor: DihedralDescriptor):
        n = int(descriptor.n)
        if n < 1:
            raise ValueError(f"dihedral parameter must be >= 1, got {n}")
        self.n = n
        super().__init__(DihedralDescriptor(n), 2 * n)

    def _identity_key(self) -> tuple[int, int]:
        return (0, 0)

    def _mul_keys(self, a: tuple[int, int], b: tuple[int, int]) -> tuple[int, int]:
        # (y^s1 x^r1)(y^s2 x^r2) = y^(s1^s2) x^((-1)^s2 r1 + r2)
        r1, s1 = a
        r2, s2 = b
        r = (r2 - r1) % self.n if s2 else (r1 + r2) % self.n
        return (r, s1 ^ s2)

    def _inv_key(self, a: tuple[int, int]) -> tuple[int, int]:
        r, s = a
        return (r, 1) if s else ((-r) % self.n, 0)

    def _canonical_key(self, key: Any) -> tuple[int, int]:
        try:
            r, s = (_as_int(x) for x in key)
        except (TypeError, ValueError):
            raise ValueError(f"dihedral element must be a pair (r, s), got {key!r}")
        if not 0 <= r < self.n:
            raise ValueError(f"rotation {r} out of range 0..{self.n - 1}")
        if s not in (0, 1):
            raise ValueError(f"reflection bit must be 0 or 1, got {s}")
        return (r, s)

    def _iter_keys(self) -> Iterator[tuple[int, int]]:
        return _cartesian(range(self.n), (0, 1))


class WreathS2Group(Group):
    """Wreath product of an abelian base with the two-element swap group.

    Keys are ``(a, b, j)`` for base keys ``a, b`` and a swap bit ``j``;
    ``(a, b, j) * (c, d, j')`` applies the swap to ``(c, d)`` first when
    ``j = 1``, then adds componentwise.
    """

    def __init__(self, descriptor: WreathS2Descriptor):
        if not isinstance(descriptor.base, CyclicPowerDescriptor):
            raise ValueError("wreath base must be a cyclic power descriptor")
        self.base = CyclicPowerGroup(descriptor.base)
        super().__init__(
            WreathS2Descriptor(self.base.descriptor), 2 * self.base.order**2
        )

    def _identity_key(self) -> tuple:
        e = self.base._identity_key()
        return (e, e, 0)

    def _mul_keys(self, a: tuple, b: tuple) -> tuple:
        x1, y1, j1 = a
        x2, y2, j2 = b
        if j1:
            x2, y2 = y2, x2
        add = self.base._mul_keys
        return (add(x1, x2), add(y1, y2), j1 ^ j2)

    def _inv_key(self, a: tuple) -> tuple:
        x, y, j = a
        neg = self.base._inv_key
        return (neg(y), neg(x), 1) if j else (neg(x), neg(y), 0)

    def _canonical_key(self, key: Any) -> tuple:
        try:
            a, b, j = key
        except (TypeError, ValueError):
            raise ValueError(f"wreath element must be a triple (a, b, j), got {key!r}")
        j = _as_int(j)
        if j not in (0, 1):
            raise ValueError(f"swap bit must be 0 or 1, got {j}")
        return (self.base._canonical_key(a), self.base._canonical_key(b), j)

    def _iter_keys(self) -> Iterator[tuple]:
        base_keys = list(self.base._iter_keys())
        return ((a, b, j) for a in base_keys for b in base_keys for j in (0, 1))


def from_descriptor(descriptor: GroupDescriptor) -> Group:
    """Instantiate the group a descriptor denotes."""
    if isinstance(descriptor, TableDescriptor):
        return TableGroup(descriptor)
    if isinstance(descriptor, CyclicPowerDescriptor):
        return CyclicPowerGroup(descriptor)
    if isinstance(descriptor, DihedralDescriptor):
        return DihedralGroup(descriptor)
    if isinstance(descriptor, WreathS2Descriptor):
        return WreathS2Group(descriptor)
    raise TypeError(f"not a group descriptor: {descriptor!r}")


# JSON wire formats --------------------------------------------------------


def descriptor_to_json(descriptor: GroupDescriptor) -> dict:
    if isinstance(descriptor, TableDescriptor):
        return {
            "kind": "table",
            "order": descriptor.order,
            "mul": [list(row) for row in descriptor.mul],
        }
    if isinstance(descriptor, CyclicPowerDescriptor):
        return {"kind": "cyclic_power", "moduli": list(descriptor.moduli)}
    if isinstance(descriptor, DihedralDescriptor):
        return {"kind": "dihedral", "n": descriptor.n}
    if isinstance(descriptor, WreathS2Descriptor):
        return {"kind": "wreath_s2", "base": descriptor_to_json(descriptor.base)}
    raise TypeError(f"not a group descriptor: {descriptor!r}")


def descriptor_from_json(obj: Any) -> GroupDescriptor:
    if not isinstance(obj, dict) or "kind" not in obj:
        raise ValueError(f"group descriptor must be an object with a 'kind', got {obj!r}")
    kind = obj["kind"]
    if kind == "table":
        mul = tuple(tuple(_as_int(x) for x in row) for row in obj["mul"])
        if "order" in obj and _as_int(obj["order"]) != len(mul):
            raise ValueError(
                f"declared order {obj['order']} does not match table size {len(mul)}"
            )
        return TableDescriptor(mul)
    if kind == "cyclic_power":
        return CyclicPowerDescriptor(tuple(_as_int(m) for m in obj["moduli"]))
    if kind == "dihedral":
        return DihedralDescriptor(_as_int(obj["n"]))
    if kind == "wreath_s2":
        base = descriptor_from_json(obj["base"])
        if not isinstance(base, CyclicPowerDescriptor):
            raise ValueError("wreath base must be a cyclic_power descriptor")
        return WreathS2Descriptor(base)
    raise ValueError(f"unknown group kind {kind!r}")


def group_from_json(obj: Any) -> Group:
    return from_descriptor(descriptor_from_json(obj))


def element_to_json(g: GroupElement) -> Any:
    """Element in wire form: int (table), [r,s] (dihedral), [r...] (cyclic
    power), [[a...],[b...],j] (wreath)."""
    group = g.group
    if isinstance(group, TableGroup):
        return g.key
    if isinstance(group, DihedralGroup) or isinstance(group, CyclicPowerGroup):
        return list(g.key)
    if isinstance(group, WreathS2Group):
        a, b, j = g.key
        return [list(a), list(b), j]
    raise TypeError(f"unsupported group {group!r}")


def element_from_json(obj: Any, group: Group) -> GroupElement:
    return group.element(obj)


# Text grammar -------------------------------------------------------------

_DIHEDRAL_TOKEN = re.compile(r"([xy])(?:\^(-?\d+)|(-?\d+))?")


def parse_element(text: str, group: Group) -> GroupElement:
    """Parse an element from text.

    Dihedral groups use words in the generators, e.g. ``"yx2"``, ``"x^-1"``,
    ``"1"``; a word is normalized to ``y^s x^r`` via ``x y = y x^-1``.  All
    other families use the JSON wire form, e.g. ``"[1,2,3]"``.
    """
    if isinstance(group, DihedralGroup):
        return _parse_dihedral_word(text, group)
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ValueError(f"cannot parse element text {text!r}: {exc}") from exc
    return group.element(obj)


def _parse_dihedral_word(text: str, group: DihedralGroup) -> GroupElement:
    word = text.replace(" ", "").replace("*", "")
    if word in ("1", "e"):
        return group.identity()
    if not word:
        raise ValueError("empty dihedral word")
    acc = group.identity()
    pos = 0
    while pos < len(word):
        m = _DIHEDRAL_TOKEN.match(word, pos)
        if m is None:
            raise ValueError(f"cannot parse dihedral word {text!r} at position {pos}")
        gen, exp = m.group(1), m.group(2) or m.group(3)
        k = 1 if exp is None else int(exp)
        if gen == "x":
            acc = acc * GroupElement(group, (k % group.n, 0))
        else:
            acc = acc * GroupElement(group, (0, k % 2))
        pos = m.end()
    return acc


def format_element(g: GroupElement) -> str:
    """Canonical text form; ``parse_element(format_element(g)) == g``."""
    group = g.group
    if isinstance(group, TableGroup):
        return str(g.key)
    if isinstance(group, DihedralGroup):
        r, s = g.key
        if r == 0 and s == 0:
            return "1"
        y_part = "y" if s else ""
        x_part = "" if r == 0 else ("x" if r == 1 else f"x{r}")
        return y_part + x_part
    if isinstance(group, CyclicPowerGroup):
        return json.dumps(list(g.key), separators=(",", ":"))
    if isinstance(group, WreathS2Group):
        return json.dumps(element_to_json(g), separators=(",", ":"))
    raise TypeError(f"unsupported group {group!r}")


def _as_int(x: Any) -> int:
    if isinstance(x, bool) or not isinstance(x, int):
        raise ValueError(f"expected an integer, got {x!r}")
    return x
