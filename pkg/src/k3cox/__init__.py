"""Exact combinatorics of the 24-root hyperbolic Coxeter diagram and the
integral-affine spheres attached to degenerations of degree-2 K3 surfaces."""

from .lattice import (
    AVector,
    DualLattice,
    RootSystem,
    build_gram,
    complete_a,
    default_root_system,
    norm,
)
from .diagrams import (
    DiagramEnumeration,
    ShapeLabel,
    Subdiagram,
    SymmetryAction,
    automorphism_group,
    classify,
    relevant_content,
    shape,
)
from .chamber import (
    Chamber,
    ConeDescriptor,
    count_boundary_divisors,
    default_chamber,
)
from .sl2 import (
    SL2,
    SingularityData,
    charge,
    conjugacy_class,
    monodromy,
    shear_matrix,
    table_profile,
)
from .ias import (
    IASphere,
    SymingtonPolytope,
    ToricFan18,
    build_fan,
    build_sphere,
    circumference,
    dual_decomposition,
    equator_divisor,
    moment_polytope,
    render_svg,
    singular_locus,
    symington,
    volume,
)
from .kulikov import (
    DegenerationLabel,
    Triangulation,
    contraction_plan,
    dsemistable_dimension,
    eigenranks,
    parity_check,
    stable_model_label,
    triangulate,
    typeii_model,
)

__version__ = "0.1.0"

__all__ = [
    "AVector",
    "Chamber",
    "ConeDescriptor",
    "DegenerationLabel",
    "DiagramEnumeration",
    "DualLattice",
    "IASphere",
    "RootSystem",
    "SL2",
    "ShapeLabel",
    "SingularityData",
    "Subdiagram",
    "SymingtonPolytope",
    "SymmetryAction",
    "ToricFan18",
    "Triangulation",
    "automorphism_group",
    "build_fan",
    "build_gram",
    "build_sphere",
    "charge",
    "circumference",
    "classify",
    "complete_a",
    "conjugacy_class",
    "contraction_plan",
    "count_boundary_divisors",
    "default_chamber",
    "default_root_system",
    "dsemistable_dimension",
    "dual_decomposition",
    "eigenranks",
    "equator_divisor",
    "moment_polytope",
    "monodromy",
    "norm",
    "parity_check",
    "relevant_content",
    "render_svg",
    "shape",
    "shear_matrix",
    "singular_locus",
    "stable_model_label",
    "symington",
    "table_profile",
    "triangulate",
    "typeii_model",
    "volume",
]
