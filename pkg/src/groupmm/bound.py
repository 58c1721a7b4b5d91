"""Character-degree spectra and the exponent bound solver.

Given a group with character degrees {d_i} (with multiplicities c_i) and a
fullness value f for some indexing of a partial matrix multiplication, the
usable exponent bound is the fixed point of

    omega = 3 * log(sum_i c_i * d_i^omega) / log f,

found as the root of h(omega) = omega * log f - 3 * log(sum c_i d_i^omega).
Spectra are stored as (degree, multiplicity) pairs because the interesting
wreath constructions have ~10^7 degree-2 characters.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Any, Iterable

from .groups import (
    CyclicPowerDescriptor,
    DihedralDescriptor,
    GroupDescriptor,
    WreathS2Descriptor,
    describe,
)
from .indexing import DEFAULT_WORK_BUDGET, IndexingTriple, check_tpp

OMEGA_TOLERANCE = 1e-9
OMEGA_CAP = 64.0


class NonMonotoneObjectiveError(RuntimeError):
    """The root equation is not strictly increasing on the bracket; the
    fixed point is ambiguous and the solver refuses to guess."""


class BracketingError(RuntimeError):
    """No sign change found below the omega cap."""


@dataclass(frozen=True)
class DegreeSpectrum:
    """(degree, multiplicity) pairs summing to the group order by squares."""

    order: int
    degrees: tuple[tuple[int, int], ...]

    def __post_init__(self):
        merged: dict[int, int] = {}
        for d, c in self.degrees:
            d, c = int(d), int(c)
            if d < 1 or c < 1:
                raise ValueError(f"degree and multiplicity must be positive, got ({d}, {c})")
            merged[d] = merged.get(d, 0) + c
        degrees = tuple(sorted(merged.items()))
        object.__setattr__(self, "degrees", degrees)
        total = sum(c * d * d for d, c in degrees)
        if total != self.order:
            raise ValueError(
                f"degree squares sum to {total}, not the group order {self.order} "
                f"(discrepancy {total - self.order})"
            )

    @property
    def character_count(self) -> int:
        return sum(c for _, c in self.degrees)

    def to_json(self) -> dict:
        return {"order": self.order, "degrees": [list(dc) for dc in self.degrees]}

    @classmethod
    def from_json(cls, obj: Any) -> "DegreeSpectrum":
        if not isinstance(obj, dict):
            raise ValueError(f"spectrum document must be an object, got {obj!r}")
        try:
            return cls(int(obj["order"]), tuple(tuple(dc) for dc in obj["degrees"]))
        except KeyError as exc:
            raise ValueError(f"spectrum document is missing key {exc}") from exc


def degrees_for(descriptor: GroupDescriptor) -> DegreeSpectrum:
    """Closed-form spectra for the supported families.

    Abelian groups of order m have m linear characters.  The dihedral group
    of order 2n has 4 linear characters and (n - 2) / 2 degree-2 characters
    for even n, or 2 and (n - 1) / 2 for odd n.  The wreath-by-swap product
    over an abelian base of order m has 2m linear characters (the m diagonal
    character pairs, each extended two ways) and (m^2 - m) / 2 degree-2
    characters (the induced off-diagonal pairs).
    """
    if isinstance(descriptor, CyclicPowerDescriptor):
        return DegreeSpectrum(descriptor.order, ((1, descriptor.order),))
    if isinstance(descriptor, DihedralDescriptor):
        n = descriptor.n
        if n % 2 == 0:
            pairs = [(1, 4), (2, (n - 2) // 2)]
        else:
            pairs = [(1, 2), (2, (n - 1) // 2)]
        return DegreeSpectrum(2 * n, tuple((d, c) for d, c in pairs if c > 0))
    if isinstance(descriptor, WreathS2Descriptor):
        m = descriptor.base.order
        pairs = [(1, 2 * m), (2, (m * m - m) // 2)]
        return DegreeSpectrum(2 * m * m, tuple((d, c) for d, c in pairs if c > 0))
    raise ValueError(
        f"no closed-form character degrees for {describe(descriptor)}; "
        f"validate externally computed degrees with supply_degrees instead"
    )


def supply_degrees(
    order: int,
    degrees: Iterable[tuple[int, int]],
    class_count: int | None = None,
) -> DegreeSpectrum:
    """Validate a user-supplied spectrum.

    Always checks that multiplicity-weighted degree squares sum to the group
    order; when the conjugacy class count is supplied, also checks that the
    multiplicities sum to it.
    """
    spectrum = DegreeSpectrum(order, tuple(degrees))
    if class_count is not None and spectrum.character_count != class_count:
        raise ValueError(
            f"spectrum has {spectrum.character_count} characters but the group "
            f"has {class_count} conjugacy classes "
            f"(discrepancy {spectrum.character_count - class_count})"
        )
    return spectrum


@dataclass(frozen=True)
class BoundResult:
    omega_bound: float
    f_used: int
    spectrum: DegreeSpectrum
    bracket: tuple[float, float]
    iterations: int
    residual: float
    vacuous: bool
    clamped: bool = False

    def to_json(self) -> dict:
        return {
            "omega": self.omega_bound,
            "f": self.f_used,
            "spectrum": self.spectrum.to_json(),
            "bracket": list(self.bracket),
            "iterations": self.iterations,
            "residual": self.residual,
            "vacuous": self.vacuous,
            "clamped": self.clamped,
        }


def solve_omega(
    spectrum: DegreeSpectrum,
    f: int,
    tolerance: float = OMEGA_TOLERANCE,
    omega_cap: float = OMEGA_CAP,
) -> BoundResult:
    """Solve the fixed-point equation for the exponent bound.

    Brackets the root of h starting from [2, 2 + eps], doubling the upper
    offset until h > 0 (capped at ``omega_cap``), then bisects to the
    requested tolerance in omega.  h is required to be strictly increasing
    at both bracket ends; otherwise the fixed point is ambiguous and a
    NonMonotoneObjectiveError is raised.  Roots below 2 are clamped to 2,
    since the exponent is at least 2 unconditionally.
    """
    if f < 2:
        raise ValueError(f"fullness value must be at least 2, got {f}")
    log_f = math.log(f)
    terms = [(math.log(d), math.log(c)) for d, c in spectrum.degrees]

    def log_power_sum(w: float) -> float:
        # log sum c d^w with the largest term factored out, so the huge
        # wreath multiplicities lose no precision
        vals = [lc + w * ld for ld, lc in terms]
        top = max(vals)
        return top + math.log(math.fsum(math.exp(v - top) for v in vals))

    def h(w: float) -> float:
        return w * log_f - 3.0 * log_power_sum(w)

    def slope(w: float) -> float:
        vals = [lc + w * ld for ld, lc in terms]
        top = max(vals)
        weights = [math.exp(v - top) for v in vals]
        mean_log_d = math.fsum(wt * ld for wt, (ld, _) in zip(weights, terms)) / math.fsum(weights)
        return log_f - 3.0 * mean_log_d

    if h(2.0) > 0.0:
        return BoundResult(
            omega_bound=2.0,
            f_used=f,
            spectrum=spectrum,
            bracket=(2.0, 2.0),
            iterations=0,
            residual=h(2.0),
            vacuous=False,
            clamped=True,
        )
    if slope(2.0) <= 0.0:
        raise NonMonotoneObjectiveError(
            "h is not increasing at omega = 2 "
            f"(log f = {log_f:.6f} vs 3 * mean log degree = {log_f - slope(2.0):.6f})"
        )
    offset = 0.0625
    hi = 2.0 + offset
    while h(hi) <= 0.0:
        offset *= 2.0
        hi = 2.0 + offset
        if hi >= omega_cap:
            hi = omega_cap
            if h(hi) <= 0.0:
                raise BracketingError(f"no sign change of h below omega = {omega_cap}")
            break
    if slope(hi) <= 0.0:
        raise NonMonotoneObjectiveError(f"h is not increasing at omega = {hi}")
    lo = 2.0
    iterations = 0
    while hi - lo > tolerance:
        mid = 0.5 * (lo + hi)
        iterations += 1
        if h(mid) <= 0.0:
            lo = mid
        else:
            hi = mid
    omega = 0.5 * (lo + hi)
    return BoundResult(
        omega_bound=omega,
        f_used=f,
        spectrum=spectrum,
        bracket=(lo, hi),
        iterations=iterations,
        residual=h(omega),
        vacuous=h(3.0) <= 0.0,
    )


def tpp_bound(
    triple: IndexingTriple,
    spectrum: DegreeSpectrum,
    work_budget: int = DEFAULT_WORK_BUDGET,
) -> BoundResult:
    """Exponent bound for sets satisfying the triple product property.

    With no aliasing, the maximal fullness is exactly |S| |T| |U|.
    """
    if not check_tpp(triple, work_budget):
        raise ValueError("sets do not satisfy the triple product property")
    m, n, p = triple.sizes
    return solve_omega(spectrum, m * n * p)
