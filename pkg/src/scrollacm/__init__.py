"""Numerical classification of ACM, Ulrich and rigid bundles on rational normal scrolls."""
from .chern import (
    ChernCharacter,
    canonical_slope,
    ch_dual,
    ch_line,
    ch_scale,
    ch_shift,
    ch_sum,
    ch_twist,
    euler_pairing,
    monad_profile,
)
from .descriptors import BundleDescriptor
from .errors import (
    DomainError,
    InconsistentState,
    NoInitializedTwist,
    NonIntegralPairing,
    NotACM,
    NotInKfrak,
    NotIrregular,
    ScrollAcmError,
    ShapeMismatch,
    WrongDegree,
    ZeroRank,
)
from .kronrep import DimensionVector, QuiverRep, fibonacci, psi, rigid_dimension_test, ulrich_character
from .mutation import (
    BraidWord,
    CollectionState,
    TriVector,
    act,
    act_word,
    base_vector,
    duality_check,
    enumerate_rigid,
    h_bundle,
    kfrak_member,
    mutate_collection,
    rigid_bundle,
    split_rigid_extension,
    ulrich_exceptional,
)
from .pencil import (
    KWBlock,
    KWDecomposition,
    MatrixPencil,
    classify_quartic_ulrich,
    is_indecomposable,
    kw_assemble,
    kw_decompose,
    minimal_indices,
    normal_rank,
    quartic_acm_catalog,
    verify_equivalence,
)
from .surface import (
    F,
    H,
    DivisorClass,
    Scroll,
    canonical_class,
    classify_acm_line_bundles,
    cohomology,
    initialized_twist,
    intersect,
    is_acm_line_bundle,
)

__version__ = "0.1.0"
