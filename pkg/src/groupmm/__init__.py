"""Group-theoretic partial matrix multiplication.

Index a matrix product by triples of subsets of a finite group, enumerate
the aliasing that appears when the triple product property fails, optimize
zero-pattern covers that silence it, run the embedding algorithm on exact
integer matrices, and turn character-degree spectra into upper bounds on
the exponent of matrix multiplication.
"""

from .bound import (
    BoundResult,
    BracketingError,
    DegreeSpectrum,
    NonMonotoneObjectiveError,
    degrees_for,
    solve_omega,
    supply_degrees,
    tpp_bound,
)
from .cover import (
    Cover,
    PartialPatternInstance,
    SolveReport,
    brute_force_max_f,
    exact_max_f,
    f_value,
    heuristic_cover,
    is_cover,
)
from .engine import (
    GroupAlgebraElement,
    IntMatrix,
    convolve,
    cu_multiply,
    embed,
    predicted_output,
    random_matrix,
    realize_cover,
)
from .groups import (
    BudgetExceededError,
    CyclicPowerDescriptor,
    CyclicPowerGroup,
    DihedralDescriptor,
    DihedralGroup,
    ENUMERATION_LIMIT,
    Group,
    GroupElement,
    GroupMismatchError,
    TableDescriptor,
    TableGroup,
    WreathS2Descriptor,
    WreathS2Group,
    descriptor_from_json,
    descriptor_to_json,
    element_from_json,
    element_to_json,
    format_element,
    from_descriptor,
    group_from_json,
    parse_element,
)
from .hardness import (
    SimpleGraph,
    brute_force_alpha,
    reduce_independent_set,
    verify_certificate,
)
from .indexing import (
    AliasingSet,
    AliasingTriple,
    DEFAULT_WORK_BUDGET,
    IndexingTriple,
    aliasing_projections,
    check_tpp,
    enumerate_aliasing,
)
from .wreath import (
    AliasingTaxonomy,
    CoverClaimError,
    WreathConstruction,
    build_sets,
    classify_aliasing,
    formula_f,
    identity_column_cover,
)

__version__ = "0.1.0"

__all__ = [
    "AliasingSet",
    "AliasingTaxonomy",
    "AliasingTriple",
    "BoundResult",
    "BracketingError",
    "BudgetExceededError",
    "Cover",
    "CoverClaimError",
    "CyclicPowerDescriptor",
    "CyclicPowerGroup",
    "DEFAULT_WORK_BUDGET",
    "DegreeSpectrum",
    "DihedralDescriptor",
    "DihedralGroup",
    "ENUMERATION_LIMIT",
    "Group",
    "GroupAlgebraElement",
    "GroupElement",
    "GroupMismatchError",
    "IndexingTriple",
    "IntMatrix",
    "NonMonotoneObjectiveError",
    "PartialPatternInstance",
    "SimpleGraph",
    "SolveReport",
    "TableDescriptor",
    "TableGroup",
    "WreathConstruction",
    "WreathS2Descriptor",
    "WreathS2Group",
    "aliasing_projections",
    "brute_force_alpha",
    "brute_force_max_f",
    "build_sets",
    "check_tpp",
    "classify_aliasing",
    "convolve",
    "cu_multiply",
    "degrees_for",
    "descriptor_from_json",
    "descriptor_to_json",
    "element_from_json",
    "element_to_json",
    "embed",
    "enumerate_aliasing",
    "exact_max_f",
    "f_value",
    "format_element",
    "formula_f",
    "from_descriptor",
    "group_from_json",
    "heuristic_cover",
    "identity_column_cover",
    "is_cover",
    "parse_element",
    "predicted_output",
    "random_matrix",
    "realize_cover",
    "reduce_independent_set",
    "solve_omega",
    "supply_degrees",
    "tpp_bound",
    "verify_certificate",
]
