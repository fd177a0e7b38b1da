"""Exact computer algebra for locally nilpotent derivations on finitely
presented affine domains: field towers, sparse polynomials, Groebner
bases, exponential automorphisms, iterated-exponential embeddings,
injectivity certificates, and a manifest-driven command line.
"""

from ._version import __version__
from .conic import classify_lambda, classify_rational, conic_form
from .derivations import (
    Derivation,
    ExpMap,
    LocalSlice,
    certify_lnd,
    check_derivation,
    dixmier_project,
    exp_map,
    find_local_slice,
)
from .embeddings import (
    Embedding,
    LocusCertificate,
    PointFamily,
    PointSpec,
    certify_open_locus,
    closed_form_image,
    exponential_embedding,
    generic_injectivity,
    generic_specialization,
    injectivity_test,
    reduce_target_vars,
    sample_and_test,
    specialize,
)
from .errors import (
    AssumptionViolation,
    GenericNotInjective,
    InputError,
    LndkitError,
    ManifestError,
)
from .fields import (
    FieldElement,
    FieldTower,
    is_square,
    prime_field,
    rationals,
    square_root,
)
from .fml import (
    DerivationSet,
    PipelineConfig,
    PipelineResult,
    base_change,
    fixed_by_all,
    fml_pipeline,
    kernel_intersection_bounded,
)
from .groebner import (
    Ideal,
    QuotientFractionField,
    RingPresentation,
    algebra_map_kernel,
    buchberger,
    standard_monomials,
)
from .manifest import BuiltManifest, load_manifest, load_manifest_bytes
from .orders import elimination_order, grevlex_order, lex_order
from .polynomials import (
    BoundConstants,
    Poly,
    extend_field,
    jacobian_rank,
    parse_field_element,
    parse_minpoly,
    parse_poly,
)

__all__ = [
    "__version__",
    "AssumptionViolation",
    "BoundConstants",
    "BuiltManifest",
    "Derivation",
    "DerivationSet",
    "Embedding",
    "ExpMap",
    "FieldElement",
    "FieldTower",
    "GenericNotInjective",
    "Ideal",
    "InputError",
    "LndkitError",
    "LocalSlice",
    "LocusCertificate",
    "ManifestError",
    "PipelineConfig",
    "PipelineResult",
    "Poly",
    "PointFamily",
    "PointSpec",
    "QuotientFractionField",
    "RingPresentation",
    "algebra_map_kernel",
    "base_change",
    "buchberger",
    "certify_lnd",
    "certify_open_locus",
    "check_derivation",
    "classify_lambda",
    "classify_rational",
    "closed_form_image",
    "conic_form",
    "dixmier_project",
    "elimination_order",
    "exp_map",
    "exponential_embedding",
    "extend_field",
    "find_local_slice",
    "fixed_by_all",
    "fml_pipeline",
    "generic_injectivity",
    "generic_specialization",
    "grevlex_order",
    "injectivity_test",
    "is_square",
    "jacobian_rank",
    "kernel_intersection_bounded",
    "lex_order",
    "load_manifest",
    "load_manifest_bytes",
    "parse_field_element",
    "parse_minpoly",
    "parse_poly",
    "prime_field",
    "rationals",
    "reduce_target_vars",
    "sample_and_test",
    "specialize",
    "square_root",
    "standard_monomials",
]
