"""Computing with finite algebras: terms, homomorphisms, congruences,
quotients, subalgebras and isomorphisms."""

from .algebra import (
    CodecError,
    FiniteAlgebra,
    Product,
    Signature,
    ValidationError,
    apply_op,
    induced_algebra,
    make_algebra,
    parse_algebra,
    product_algebra,
    serialize_algebra,
    validate_algebra,
)
from .congruences import (
    Congruence,
    NotACongruence,
    check_congruence,
    discrete_congruence,
    kernel_congruence,
    quotient,
    total_congruence,
)
from .homs import (
    Hom,
    MorphismKind,
    NotAHomomorphism,
    check_hom,
    classify,
    compose_hom,
    equalizer,
    factorwise_product_hom,
    identity_hom,
    image_algebra,
    kernel_pairs,
    projection_hom,
    search_homs,
    tuple_hom_into_product,
)
from .isomorphism import Iso, check_iso, compose_iso, find_iso, iso_refl, iso_sym, product_iso
from .kernels import BACKEND
from .subalg import (
    Subuniverse,
    all_subuniverses,
    intersect_subuniverses,
    is_closed,
    is_hom_image_of,
    is_hom_image_of_class,
    is_subalgebra_of,
    is_subalgebra_of_class,
    sg_closure,
    subuniv_algebra,
    term_image_closure,
)
from .terms import Node, Var, enumerate_terms, free_lift, interpret, parse_term, substitute
from .theorems import first_hom_decomposition, first_isomorphism, hom_factor

__version__ = "0.1.0"

__all__ = [
    "CodecError",
    "FiniteAlgebra",
    "Product",
    "Signature",
    "ValidationError",
    "apply_op",
    "induced_algebra",
    "make_algebra",
    "parse_algebra",
    "product_algebra",
    "serialize_algebra",
    "validate_algebra",
    "Congruence",
    "NotACongruence",
    "check_congruence",
    "discrete_congruence",
    "kernel_congruence",
    "quotient",
    "total_congruence",
    "Hom",
    "MorphismKind",
    "NotAHomomorphism",
    "check_hom",
    "classify",
    "compose_hom",
    "equalizer",
    "factorwise_product_hom",
    "identity_hom",
    "image_algebra",
    "kernel_pairs",
    "projection_hom",
    "search_homs",
    "tuple_hom_into_product",
    "Iso",
    "check_iso",
    "compose_iso",
    "find_iso",
    "iso_refl",
    "iso_sym",
    "product_iso",
    "BACKEND",
    "Subuniverse",
    "all_subuniverses",
    "intersect_subuniverses",
    "is_closed",
    "is_hom_image_of",
    "is_hom_image_of_class",
    "is_subalgebra_of",
    "is_subalgebra_of_class",
    "sg_closure",
    "subuniv_algebra",
    "term_image_closure",
    "Node",
    "Var",
    "enumerate_terms",
    "free_lift",
    "interpret",
    "parse_term",
    "substitute",
    "first_hom_decomposition",
    "first_isomorphism",
    "hom_factor",
]

