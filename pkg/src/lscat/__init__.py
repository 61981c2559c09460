"""Exact Lusternik–Schnirelmann-type invariants of simplicial complexes and finite spaces."""

from .category import (
    CategoryResult,
    InequalityCheck,
    InequalityReport,
    cat,
    check_inequalities,
    gcat,
    gscat,
    is_categorical_open,
    is_categorical_subcomplex,
    scat,
)
from .collapse import (
    BeatPoint,
    CollapseStep,
    CollapseTrace,
    beat_points,
    core_complex,
    core_poset,
    dominated_vertices,
    is_contractible_poset,
    is_strongly_collapsible,
    remove_beat_point,
    same_strong_homotopy_type,
    strong_collapse_step,
)
from .complex import (
    ContiguityCertificate,
    Simplex,
    SimplicialComplex,
    SimplicialMap,
    are_contiguous,
    barycentric_subdivision,
    build_complex,
    complexes_isomorphic,
    constant_map,
    enumerate_simplices,
    generated_subcomplex,
    identity_map,
    inclusion_map,
    same_contiguity_class,
)
from .errors import LSCatError
from .functors import face_poset, face_poset_map, order_complex, order_complex_map
from .poset import (
    DownSet,
    FinitePoset,
    HomotopyCertificate,
    MonotoneMap,
    build_poset,
    connected_components,
    enumerate_open_sets,
    homotopic,
    maximal_elements,
    minimal_open,
    open_from_antichain,
    opposite,
    posets_isomorphic,
    t0_quotient,
)
from .search import DEFAULT_BUDGET, Outcome, SearchBudget, Verdict

__all__ = [
    "CategoryResult",
    "InequalityCheck",
    "InequalityReport",
    "cat",
    "check_inequalities",
    "gcat",
    "gscat",
    "is_categorical_open",
    "is_categorical_subcomplex",
    "scat",
    "BeatPoint",
    "CollapseStep",
    "CollapseTrace",
    "beat_points",
    "core_complex",
    "core_poset",
    "dominated_vertices",
    "is_contractible_poset",
    "is_strongly_collapsible",
    "remove_beat_point",
    "same_strong_homotopy_type",
    "strong_collapse_step",
    "ContiguityCertificate",
    "Simplex",
    "SimplicialComplex",
    "SimplicialMap",
    "are_contiguous",
    "barycentric_subdivision",
    "build_complex",
    "complexes_isomorphic",
    "constant_map",
    "enumerate_simplices",
    "generated_subcomplex",
    "identity_map",
    "inclusion_map",
    "same_contiguity_class",
    "LSCatError",
    "face_poset",
    "face_poset_map",
    "order_complex",
    "order_complex_map",
    "DownSet",
    "FinitePoset",
    "HomotopyCertificate",
    "MonotoneMap",
    "build_poset",
    "connected_components",
    "enumerate_open_sets",
    "homotopic",
    "maximal_elements",
    "minimal_open",
    "open_from_antichain",
    "opposite",
    "posets_isomorphic",
    "t0_quotient",
    "DEFAULT_BUDGET",
    "Outcome",
    "SearchBudget",
    "Verdict",
]

__version__ = "0.1.0"
