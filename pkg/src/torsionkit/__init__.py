"""torsionkit: exhaustive verification of torsion pairs, rectangularity,
square-monad pseudo-algebras, band decompositions and epimorphism-class
analysis on finite categories given by explicit composition tables."""

__version__ = "0.1.0"

from .bands import (
    BandDecomposition,
    BandTable,
    SetMonadAlgebra,
    algebra_to_band,
    band_to_algebra,
    check_band,
    decompose_band,
    enumerate_rectangular_bands,
)
from .catformat import parse_band, parse_category, parse_functor_map, serialize_band, serialize_category
from .fincat import (
    FinCat,
    FunctorData,
    Limits,
    MorphismClass,
    NatTransData,
    arrow_category,
    check_equivalence,
    classify_morphism,
    find_extremal_objects,
    is_bi_quasi_pointed,
    product_category,
    validate_category,
)
from .exactness import NullIdeal, SesRecord, is_short_exact, kernel_rel, cokernel_rel, null_ideal
from .pretorsion import (
    PretorsionPresentation,
    alpha_compatibility,
    characterize_rectangular,
    check_pretorsion,
    check_pretorsion_morphism,
    gamma,
    induced_parts,
    is_epireflective,
    is_monocoreflective,
    is_rectangular,
    lambda_for_morphism,
    product_pretorsion,
    transfer_along_equivalence,
    two_sided_construct,
)
from .pointed_monad import (
    MonadInstance,
    PseudoAlgebraData,
    algebra_to_pretorsion,
    build_pseudo_algebra,
    check_pseudo_algebra,
    check_pseudo_morphism,
    free_algebra,
    monad_instance,
    pseudo_morphism_from_functor,
    roundtrip_from_algebra,
    roundtrip_from_presentation,
)
from .epiclasses import (
    EpiClassPresentation,
    build_epiclass,
    check_rectangular_class,
    check_torsion_class,
    is_product_projection,
    ses_shape_check,
    standard_class,
)

__all__ = [name for name in dir() if not name.startswith("_")]
