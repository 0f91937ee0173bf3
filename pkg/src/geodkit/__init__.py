"""geodkit - index theory of closed geodesics on Finsler spheres."""

from .config import (
    Options,
    PrecisionPolicy,
    default_options,
    precision_policy,
    set_precision_policy,
    using_precision,
)
from .errors import (
    BracketError,
    ClassificationError,
    GeodkitError,
    InputFileError,
    JumpSearchError,
    ModelError,
    PreconditionError,
    WindowIntrusionError,
)
from .numerics import (
    CertifiedDecimal,
    ExactReal,
    Order,
    QuadraticIrrational,
    Rational,
    ceil_of,
    compare,
    decimal,
    floor_of,
    floor_of_multiple,
    frac_of,
    quadratic,
    rational,
    varphi_of,
)
from .symplectic import (
    HBlock,
    N1Block,
    N2Block,
    NormalFormData,
    RBlock,
    SymplecticMatrix,
    assemble,
    decompose,
    diamond_sum,
    elliptic_height,
    is_irrationally_elliptic,
)
from .iteration import (
    GeodesicModel,
    IndexSequence,
    SymplecticPathModel,
    index_iterate_elliptic,
    index_iterate_general,
    iterate_bound,
    mean_index,
    parity_gap,
    rotation_model,
)
from .topology import BettiTable, betti, betti_table, betti_window, betti_window_sum
from .morse import (
    MorseTable,
    check_morse_inequalities,
    check_parity_vanishing,
    critical_module_rank,
    morse_counts,
)
from .jump import (
    JumpCertificate,
    check_iterate_gaps,
    find_common_jump,
    sample_certificates,
    verify_certificate,
)
from .verifier import (
    VerificationReport,
    check_initial_indices,
    check_s3_multiplicity,
    conclude_multiplicity,
    verify_model_set,
    window_count,
)
from .synthetic import synthetic_model_set
from .files import load_matrix_file, load_model_file, parse_matrix_file, parse_model_file

__version__ = "0.1.0"

__all__ = [
    "__version__",
    # Configuration
    "Options",
    "PrecisionPolicy",
    "default_options",
    "precision_policy",
    "set_precision_policy",
    "using_precision",
    # Errors
    "GeodkitError",
    "BracketError",
    "ClassificationError",
    "ModelError",
    "PreconditionError",
    "JumpSearchError",
    "WindowIntrusionError",
    "InputFileError",
    # Exact reals
    "ExactReal",
    "Rational",
    "QuadraticIrrational",
    "CertifiedDecimal",
    "Order",
    "rational",
    "quadratic",
    "decimal",
    "floor_of",
    "floor_of_multiple",
    "varphi_of",
    "ceil_of",
    "frac_of",
    "compare",
    # Symplectic normal forms
    "SymplecticMatrix",
    "N1Block",
    "HBlock",
    "RBlock",
    "N2Block",
    "NormalFormData",
    "assemble",
    "decompose",
    "diamond_sum",
    "elliptic_height",
    "is_irrationally_elliptic",
    # Index iteration
    "SymplecticPathModel",
    "GeodesicModel",
    "IndexSequence",
    "index_iterate_general",
    "index_iterate_elliptic",
    "iterate_bound",
    "mean_index",
    "parity_gap",
    "rotation_model",
    # Topology and Morse theory
    "BettiTable",
    "betti",
    "betti_table",
    "betti_window",
    "betti_window_sum",
    "MorseTable",
    "critical_module_rank",
    "morse_counts",
    "check_morse_inequalities",
    "check_parity_vanishing",
    # Common index jumps
    "JumpCertificate",
    "find_common_jump",
    "sample_certificates",
    "verify_certificate",
    "check_iterate_gaps",
    # Verification
    "VerificationReport",
    "check_initial_indices",
    "check_s3_multiplicity",
    "conclude_multiplicity",
    "verify_model_set",
    "window_count",
    "synthetic_model_set",
    # Files
    "load_model_file",
    "load_matrix_file",
    "parse_model_file",
    "parse_matrix_file",
]
