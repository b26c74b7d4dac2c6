"""Third-order tensors as matrices over tubes: t-product algebra, cone
classification, irreducibility, t-spectra and Perron-Frobenius checks."""
from .cone import ConeClass, classify, classify_matrix, classify_scalar, classify_vector, magnitude
from .core import (
    PermutationTensor,
    TubalMatrix,
    TubalScalar,
    TubalVector,
    bcirc,
    fold,
    fold_vector,
    identity,
    permute,
    tprod,
    tprod_fft,
    tprod_vec,
    transpose,
    unfold,
)
from .errors import (
    CapacityError,
    DimensionError,
    DomainError,
    GenerationError,
    ParseError,
    SolverError,
    TubalError,
    VerificationError,
)
from .generate import InstanceSpec, generate
from .io import load, save
from .irreducibility import (
    block_triangularize,
    is_irreducible,
    is_irreducible_cpz,
    is_irreducible_power,
    is_reducible_scc,
    is_reducible_subset,
)
from .pfverify import (
    PFReport,
    Status,
    check_enhanced_pf,
    check_irreducible_pf,
    check_magnitude_lemma,
    check_subinvariance_lemma,
    check_weak_pf,
    delta,
    pf_report,
)
from .spectra import left_t_eigenvector, perron_power_iteration, t_eigenspace, t_eigenvector, t_spectrum

__version__ = "0.1.0"
