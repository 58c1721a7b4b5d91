"""Group-algebra execution of the embedding-based multiplication.

The left factor M embeds as f_M = sum M[i,j] * (s_i^-1 t_j), the right
factor N as f_N = sum N[j,k] * (t_j^-1 u_k); their convolution is read off
at the elements s_i^-1 u_k to produce the output matrix.  Everything is
exact integer arithmetic: the correctness statements being validated are
exact identities, Python integers never overflow, and the supports involved
are tiny, so there is no floating point and no transform-based fast path.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Any, Mapping, Sequence

from .cover import Cover
from .groups import Group, GroupElement, GroupMismatchError
from .indexing import AliasingSet, IndexingTriple


@dataclass(frozen=True)
class IntMatrix:
    """Dense matrix of exact integers."""

    rows: int
    cols: int
    data: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if self.rows < 1 or self.cols < 1:
            raise ValueError(f"matrix dimensions must be positive, got {self.rows}x{self.cols}")
        data = tuple(tuple(_as_int(x) for x in row) for row in self.data)
        if len(data) != self.rows or any(len(row) != self.cols for row in data):
            raise ValueError(f"data does not have shape {self.rows}x{self.cols}")
        object.__setattr__(self, "data", data)

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "IntMatrix":
        return cls(rows, cols, tuple((0,) * cols for _ in range(rows)))

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]]) -> "IntMatrix":
        return cls(len(rows), len(rows[0]) if rows else 0, tuple(tuple(r) for r in rows))

    def at(self, i: int, j: int) -> int:
        """Entry at 1-based position (i, j)."""
        return self.data[i - 1][j - 1]

    def matmul(self, other: "IntMatrix") -> "IntMatrix":
        if self.cols != other.rows:
            raise ValueError(f"cannot multiply {self.rows}x{self.cols} by {other.rows}x{other.cols}")
        out = []
        for row in self.data:
            out.append(
                tuple(
                    sum(row[j] * other.data[j][k] for j in range(self.cols))
                    for k in range(other.cols)
                )
            )
        return IntMatrix(self.rows, other.cols, tuple(out))

    def add(self, other: "IntMatrix") -> "IntMatrix":
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError("shape mismatch")
        return IntMatrix(
            self.rows,
            self.cols,
            tuple(tuple(a + b for a, b in zip(r1, r2)) for r1, r2 in zip(self.data, other.data)),
        )

    def scaled(self, scalar: int) -> "IntMatrix":
        return IntMatrix(
            self.rows, self.cols, tuple(tuple(scalar * x for x in row) for row in self.data)
        )

    def sub(self, other: "IntMatrix") -> "IntMatrix":
        return self.add(other.scaled(-1))

    def to_json(self) -> dict:
        return {"rows": self.rows, "cols": self.cols, "data": [list(r) for r in self.data]}

    @classmethod
    def from_json(cls, obj: Any) -> "IntMatrix":
        if not isinstance(obj, dict):
            raise ValueError(f"matrix document must be an object, got {obj!r}")
        try:
            return cls(int(obj["rows"]), int(obj["cols"]), tuple(tuple(r) for r in obj["data"]))
        except KeyError as exc:
            raise ValueError(f"matrix document is missing key {exc}") from exc


@dataclass(frozen=True)
class GroupAlgebraElement:
    """Sparse integer combination of group elements; zeros are not stored."""

    group: Group
    coeffs: Mapping[GroupElement, int] = field(default_factory=dict)

    def __post_init__(self):
        cleaned = {}
        for g, c in self.coeffs.items():
            self.group._require_member(g)
            c = _as_int(c)
            if c != 0:
                cleaned[g] = c
        object.__setattr__(self, "coeffs", cleaned)

    def __len__(self) -> int:
        return len(self.coeffs)

    def coefficient(self, g: GroupElement) -> int:
        return self.coeffs.get(g, 0)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, GroupAlgebraElement):
            return NotImplemented
        return self.group == other.group and self.coeffs == other.coeffs


def embed(
    M: IntMatrix, N: IntMatrix, triple: IndexingTriple
) -> tuple[GroupAlgebraElement, GroupAlgebraElement]:
    """Embed the two factors into the group algebra.

    Coefficients of coinciding group elements accumulate.
    """
    m, n, p = triple.sizes
    if (M.rows, M.cols) != (m, n):
        raise ValueError(f"left matrix must be {m}x{n}, got {M.rows}x{M.cols}")
    if (N.rows, N.cols) != (n, p):
        raise ValueError(f"right matrix must be {n}x{p}, got {N.rows}x{N.cols}")
    f_M: dict[GroupElement, int] = {}
    for i, s in enumerate(triple.S):
        s_inv = s.inv()
        row = M.data[i]
        for j, t in enumerate(triple.T):
            if row[j]:
                g = s_inv * t
                f_M[g] = f_M.get(g, 0) + row[j]
    f_N: dict[GroupElement, int] = {}
    for j, t in enumerate(triple.T):
        t_inv = t.inv()
        row = N.data[j]
        for k, u in enumerate(triple.U):
            if row[k]:
                g = t_inv * u
                f_N[g] = f_N.get(g, 0) + row[k]
    group = triple.group
    return GroupAlgebraElement(group, f_M), GroupAlgebraElement(group, f_N)


def convolve(a: GroupAlgebraElement, b: GroupAlgebraElement) -> GroupAlgebraElement:
    """Product in the group algebra, by the double loop over supports."""
    if a.group != b.group:
        raise GroupMismatchError("cannot convolve elements of different group algebras")
    out: dict[GroupElement, int] = {}
    for g, cg in a.coeffs.items():
        for h, ch in b.coeffs.items():
            gh = g * h
            out[gh] = out.get(gh, 0) + cg * ch
    return GroupAlgebraElement(a.group, out)


def cu_multiply(M: IntMatrix, N: IntMatrix, triple: IndexingTriple) -> IntMatrix:
    """Run the embedding algorithm on concrete matrices.

    Output entry (i, k) reads the coefficient of s_i^-1 u_k in the convolved
    algebra element.  Distinct (i, k) may read the same coefficient when the
    products s_i^-1 u_k collide; the readoff is per-entry regardless, which
    is the only reading consistent with the embedding.
    """
    f_M, f_N = embed(M, N, triple)
    f_P = convolve(f_M, f_N)
    out = []
    for s in triple.S:
        s_inv = s.inv()
        out.append(tuple(f_P.coefficient(s_inv * u) for u in triple.U))
    return IntMatrix(len(triple.S), len(triple.U), tuple(out))


def predicted_output(
    M: IntMatrix, N: IntMatrix, triple: IndexingTriple, aliasing: AliasingSet
) -> IntMatrix:
    """Testing oracle: direct product plus one correction term per aliasing
    triple, M[i,j] * N[j',k] added at position (i', k')."""
    m, n, p = triple.sizes
    if aliasing.dims != (m, n, p):
        raise ValueError(f"aliasing dims {aliasing.dims} do not match sets {m, n, p}")
    out = [list(row) for row in M.matmul(N).data]
    for (i, j), (j2, k), (i2, k2) in aliasing:
        out[i2 - 1][k2 - 1] += M.data[i - 1][j - 1] * N.data[j2 - 1][k - 1]
    return IntMatrix(m, p, tuple(tuple(row) for row in out))


def realize_cover(M: IntMatrix, N: IntMatrix, cover: Cover) -> tuple[IntMatrix, IntMatrix]:
    """Zero the covered entries (1-based) of both factors."""
    left = [list(row) for row in M.data]
    for i, j in cover.I:
        left[i - 1][j - 1] = 0
    right = [list(row) for row in N.data]
    for j2, k in cover.J:
        right[j2 - 1][k - 1] = 0
    return (
        IntMatrix(M.rows, M.cols, tuple(tuple(r) for r in left)),
        IntMatrix(N.rows, N.cols, tuple(tuple(r) for r in right)),
    )


def random_matrix(
    rows: int, cols: int, rng: random.Random, low: int = -9, high: int = 9
) -> IntMatrix:
    return IntMatrix(
        rows, cols, tuple(tuple(rng.randint(low, high) for _ in range(cols)) for _ in range(rows))
    )


def _as_int(x: Any) -> int:
    if isinstance(x, bool) or not isinstance(x, int):
        raise ValueError(f"matrix entries must be exact integers, got {x!r}")
    return x
