"""Exact computer algebra for tangentoids, solid non-unital algebras and their tangent structures."""

from .algebras import (
    AModule,
    Algebra,
    AlgebraMorphism,
    algebra_check,
    algebra_product,
    algebra_pullback,
    algebra_tensor,
    cyclic_algebra,
    derivations,
    dual_numbers,
    hom_enumerate,
    kaehler,
    kaehler_oracle,
    monic_quotient,
    semidirect,
    trivial_algebra,
    zero_algebra,
)
from .errors import (
    AmbientMismatch,
    BudgetExceeded,
    DocumentError,
    ExtractionFailure,
    InfiniteEnumeration,
    InvalidWitness,
    MixedRings,
    NonUnital,
    NotCoexponentiable,
    NotProduct,
    NotWellDefined,
    ShapeMismatch,
    TangentoidError,
    UnsupportedRing,
)
from .functor import (
    FormalTangentAlgebra,
    TangentStructureInstance,
    adjunction_check,
    kaehler_adjoint_hom,
    naturality_check,
    tangent_apply,
    tangent_map,
)
from .matrix import Matrix
from .modules import (
    FPModule,
    ModuleMorphism,
    is_fgp,
    kernel,
    module_direct_sum,
    module_tensor,
    modules_isomorphic,
    smith_normal_form,
)
from .rings import QQ, ZZ, Integers, Modular, Product, Rationals, product
from .solid import (
    NonUnitalAlgebra,
    SolidWitness,
    check_solid,
    classify_free_solids,
    product_ring_solid,
    torsion_solid,
)
from .tangentoid import (
    CALG,
    MOD,
    Tangentoid,
    biproduct_tangentoid,
    build_tangentoid,
    check_morphism,
    check_tangentoid,
    dual_numbers_tangentoid,
    extract_solid,
    induced_monoid,
    is_coexponentiable,
    trivial_tangentoid,
    universality_bruteforce,
)

__version__ = "0.1.0"
