"""Presentations of Hurwitz C-groups and kernels of their degree maps."""

from .abelian import (
    AbelianDescription,
    IntMatrix,
    SnfResult,
    abelianization,
    is_irreducible_c,
    relation_matrix,
    smith_normal_form,
)
from .baumslag import (
    BrittonForm,
    BSParams,
    bs_endomorphism,
    bs_presentation,
    britton_reduce,
    verify_chain_pres,
    verify_degree3_construction,
    verify_non_hopfian,
)
from .kernels import (
    KernelPresentation,
    NormalizedHurwitz,
    derive_kernel,
    hurwitz_normalize,
    normalize_indices,
    schreier_rewrite,
)
from .presentations import (
    CPresentation,
    CRelation,
    HurwitzPresentation,
    Presentation,
    c_graph,
    direct_product,
    free_hurwitz_presentation,
    is_tree,
    pad_presentation,
    parse_presentation,
    parse_presentation_file,
    presentation_to_text,
    validate_c,
    validate_hurwitz,
)
from .projective import (
    FiniteIndexKernelPresentation,
    ProjectivePresentation,
    derive_projective_kernel,
    projective_quotient,
    simplify,
)
from .tietze import (
    AddGenerator,
    AddRelator,
    CertificateEntry,
    RemoveGenerator,
    RemoveRelator,
    apply_tietze,
)
from .words import (
    Word,
    conjugate,
    exponent_sum,
    free_reduce,
    invert,
    multiply,
    parse_word,
    substitute,
    total_degree,
    word_to_text,
)

__version__ = "0.1.0"
